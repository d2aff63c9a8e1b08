#ifndef RICCATI_PROJECTIVE_HPP
#define RICCATI_PROJECTIVE_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "riccati/funcspec.hpp"
#include "riccati/integrate.hpp"
#include "riccati/jetlift.hpp"

namespace riccati {

struct ZeroDenominator : std::runtime_error {
    double x;
    explicit ZeroDenominator(double where)
        : std::runtime_error("denominator vanishes near x = " + std::to_string(where)),
          x(where) {}
};

struct SingularSystem : std::runtime_error {
    double x;
    explicit SingularSystem(double where)
        : std::runtime_error("pointwise linear system singular at x = " + std::to_string(where)),
          x(where) {}
};

/// The third-order linear problem y''' + 4k v y' + 2k v' y = 0.
struct PvfProblem {
    FunctionSpec v = FunctionSpec::constant(1.0);
    double k = 1.0;
    double x0 = 0.0;
    double x1 = 6.283185307179586;
};

/// Source of jets of a candidate solution f: either a closed form with
/// true derivatives, or an integrated trajectory whose third derivative is
/// reduced through the equation.
struct FSource {
    static FSource closed_form(FunctionSpec f);
    static FSource from_trajectory(const Trajectory& traj, FunctionSpec v, double k);

    /// f, f', f'', f''' at grid index i (closed form) or from states.
    std::array<double, 4> jets(std::size_t i) const;
    const std::vector<double>& grid() const { return grid_; }

    std::vector<double> grid_;
    std::optional<FunctionSpec> f_;
    std::optional<Trajectory> traj_;
    FunctionSpec v_ = FunctionSpec::constant(1.0);
    double k_ = 1.0;
    void set_grid(std::vector<double> g);
};

Trajectory integrate_pvf(const PvfProblem& prob, const std::array<double, 3>& ics,
                         const IntegrateOptions& opts = {});

struct WronskianReport {
    double max_rel_err = 0.0;
    bool pass = false;
};

struct PvfBasisResult {
    std::vector<Trajectory> hill_pair;
    std::vector<Trajectory> products;  // psi1^2, psi1 psi2, psi2^2 (value + derivative)
    ResidualReport residual;           // max of reduction residual and the deviation
                                       // from directly integrated third-order solutions
    WronskianReport wronskian;
};

/// Builds the product basis of the third-order equation from a Hill pair,
/// checks each product against the equation two ways (exact-jet residual and
/// pointwise agreement with a direct integration of the third-order problem),
/// and verifies W[psi1^2, psi1 psi2, psi2^2] = 2(psi1 psi2' - psi2 psi1')^3.
PvfBasisResult pvf_basis_from_hill(const PvfProblem& prob, double tolerance,
                                   double wronskian_tolerance,
                                   const IntegrateOptions& opts = {});

enum class ConservedKind { PvfPhi, CdisPhi };

struct DriftReport {
    double phi0 = 0.0;
    double max_drift = 0.0;
};

/// Phi series along a trajectory of the matching equation:
/// PvfPhi needs a (y, y', y'') trajectory of the third-order problem and its
/// potential; CdisPhi needs the (y, w, a) system trajectory.
std::pair<std::vector<double>, DriftReport> conserved_series(ConservedKind kind,
                                                             const Trajectory& traj,
                                                             const FunctionSpec* v);

Trajectory integrate_cdis(const std::array<double, 3>& ics, double x0, double x1,
                          const IntegrateOptions& opts = {});

enum class Riccati2Kind { FromF, Doubling, MilnePinney, ModEmden };

struct Riccati2Result {
    Trajectory u;  // value + first derivative
    ResidualReport report;
};

struct Riccati2Params {
    // FromF: closed-form f; Doubling: zeta IC; MilnePinney: (psi, psi') ICs
    // and sigma; ModEmden: (u, u') ICs and alpha (v = alpha/4).
    FunctionSpec f = FunctionSpec::constant(1.0);
    double zeta0 = 0.0;
    double psi0 = 1.0, dpsi0 = 0.0, sigma = 1.0;
    double u0 = 0.0, du0 = 0.0, alpha = 1.0;
};

/// Builds u by the requested reduction and evaluates the residual of
/// u'' + 3k u u' + k^2 u^3 + 4k v u + 2k v'.
Riccati2Result riccati2_residual(Riccati2Kind kind, const PvfProblem& prob,
                                 const Riccati2Params& params, double tolerance,
                                 const IntegrateOptions& opts = {}, double margin = 1e-3);

struct G5Result {
    Trajectory traj;             // (u1, u2)
    ResidualReport pvf_equiv;    // f = exp(int u1) against the third-order equation
    ResidualReport g5;           // p'' = 3/4 p'^2/p - 4vp - sign*2 with p = -1/K
    ResidualReport u1_relation;  // u1 + K'/(2K)
};

G5Result u1u2_g5(const FunctionSpec& v, const FunctionSpec& w, double u10, double u20,
                 double x0, double x1, int sign, double tolerance,
                 const IntegrateOptions& opts = {}, double margin = 1e-3);

/// Symmetry condition of u' = u^2 + v for the generator
/// f d/dx + (-f' u - f''/2) d/du, evaluated over an (x, u) product grid.
/// Vanishes exactly when f solves the third-order equation.
ResidualReport symmetry_residual(const FSource& f, const FunctionSpec& v, double u_lo,
                                 double u_hi, std::size_t nu, double tolerance);

/// Frobenius norm of P' + PQ - QP for
/// P = [[f'/2, -I], [-f, -f'/2]], Q = [[0, v], [-1, 0]],
/// I(x) = int v f' with I(x0) = -(f''(x0) + 2 v(x0) f(x0))/2.
ResidualReport lax_residual(const FSource& f, const FunctionSpec& v, double tolerance,
                            const IntegrateOptions& opts = {});

struct SymmetricPowerResult {
    int n = 0;
    // Monic order-(n+1) coefficients c_0..c_n solved pointwise from the
    // product family, and the displayed closed forms they are compared to.
    std::vector<std::string> labels;
    std::vector<double> max_rel_err;
    bool matches = false;  // all coefficients within tolerance
};

/// Solves pointwise for the monic linear ODE annihilating psi1^a psi2^(n-a)
/// and compares with the closed-form coefficients. n = 3 or 4.
SymmetricPowerResult symmetric_power(int n, const FunctionSpec& v, double x0, double x1,
                                     std::size_t grid_n, double tolerance,
                                     const IntegrateOptions& opts = {});

/// F = -Psi^2/2 from a Pinney solution satisfies
/// F F'' - F'^2/2 + 2 v F^2 - sigma/2 = 0.
ResidualReport gambier22_residual(const FunctionSpec& v, double A, double B, double C,
                                  double x0, double x1, double tolerance,
                                  const IntegrateOptions& opts = {});

} // namespace riccati

#endif
