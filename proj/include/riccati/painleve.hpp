#ifndef RICCATI_PAINLEVE_HPP
#define RICCATI_PAINLEVE_HPP

#include <vector>

#include "riccati/integrate.hpp"
#include "riccati/jetlift.hpp"
#include "riccati/projective.hpp"

namespace riccati {

struct PiiProblem {
    double alpha = 0.0;
    double u0 = 0.0;
    double w0 = 0.0;   // Hamiltonian momentum IC
    double x0 = 0.0;
    double x1 = 2.0;
    double pole_threshold = 1e6;
};

struct AiryRiccatiResult {
    Trajectory u;        // quotient psi'/psi on the trimmed grid
    ResidualReport report;
    double trimmed_x1 = 0.0;
};

/// Integrates psi'' + sign*x psi = 0, trims the domain to end a margin
/// before the first root of psi, and checks u = psi'/psi against
/// u' + u^2 + sign*x = 0 two ways: pointwise agreement with a direct
/// integration of the quotient equation, and the chain-equation residual
/// along that direct trajectory.
AiryRiccatiResult airy_riccati(double psi0, double dpsi0, double x0, double x1, int sign,
                               double tolerance, double root_margin = 0.05,
                               const IntegrateOptions& opts = {});

struct PiiFromAiryResult {
    Trajectory u_scaled;       // on the stretched grid
    double max_dev = 0.0;      // against direct integration of u'' = 2u^3 + x u - 1/2
    ResidualReport intermediate;  // u'' = (2/lambda^2) u^3 + 2 x u - lambda, unscaled
    double mu = 0.0, lambda = 0.0;
    double mu_defect = 0.0, lambda_mu_defect = 0.0;  // |mu^3 - 2|, |lambda*mu - 1|
};

PiiFromAiryResult pii_from_airy(double psi0, double dpsi0, double x0, double x1,
                                double tolerance, const IntegrateOptions& opts = {});

struct PiiHamResult {
    Trajectory uw;             // (u, w, q) with q the integral of -w/2
    ResidualReport pii;        // max of direct-integration deviation and jet residual
    double energy_drift = 0.0; // |H(x) - H(x0) - int(-w/2)|
    bool hit_pole = false;
    double pole_x = 0.0;
};

/// Integrates u' = w - u^2 - x/2, w' = 2uw + alpha + 1/2, windowing at
/// movable poles via the threshold, and checks u against u'' = 2u^3 + xu + alpha.
PiiHamResult pii_hamiltonian(const PiiProblem& prob, double tolerance,
                             const IntegrateOptions& opts = {});

/// h(x) = H(x, u(x), w(x)) with H = w^2/2 - (u^2 + x/2) w - (alpha + 1/2) u,
/// together with h' = -w/2 and h'' = -(2uw + alpha + 1/2)/2.
struct HFunction {
    std::vector<double> x, h, h1, h2;
    std::vector<double> u, w;  // source trajectory, kept for the back-checks
    double alpha = 0.0;
    double h1_consistency = 0.0;  // max |h' + w/2| by construction (0)
};

/// When quadrature_h is set, h is rebuilt from the trajectory's integral of
/// -w/2 instead of evaluating H algebraically; the relation residual then
/// tracks the integrator tolerance instead of pure roundoff.
HFunction h_function(const Trajectory& uw, double alpha, bool quadrature_h = false);

struct SdPiiResult {
    HFunction hf;
    ResidualReport relation;  // h''^2 + 4h'^3 + 2h'(x h' - h) - (alpha + 1/2)^2/4
};

SdPiiResult sd_pii_check(const Trajectory& uw, double alpha, double tolerance,
                         bool quadrature_h = false);

struct SdPiiRecoverResult {
    std::vector<double> u_rec, w_rec;
    double max_du = 0.0, max_dw = 0.0;
    ResidualReport hamilton_eqs;     // both equations of motion for (u_rec, w_rec)
    double alt_formula_mismatch = 0.0;  // the x/2 variant against the source u
};

/// u = (2h'' + alpha + 1/2)/(4h'), w = -2h'. The variant with x/2 in place
/// of 1/2 is evaluated and its mismatch reported, not asserted.
SdPiiRecoverResult sd_pii_recover(const HFunction& hf, double tolerance);

struct HillFromHResult {
    ResidualReport report;      // max of quotient deviation and the -2h' identity
    double quotient_dev = 0.0;  // sup |y'/y - u_src|
};

/// Integrates y'' + (2h' + x/2 + perturb) y = 0 from y = 1, y' = u(x0) and
/// checks -2h' = u' + u^2 + x/2 for u = y'/y. A nonzero perturbation is the
/// negative control.
HillFromHResult hill_from_h(const HFunction& hf, double tolerance, double perturb = 0.0,
                            const IntegrateOptions& opts = {});

} // namespace riccati

#endif
