#ifndef RICCATI_SUPERPOSE_HPP
#define RICCATI_SUPERPOSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "riccati/funcspec.hpp"
#include "riccati/integrate.hpp"
#include "riccati/jetlift.hpp"

namespace riccati {

struct DenominatorVanishes : std::runtime_error {
    double x;
    explicit DenominatorVanishes(double where)
        : std::runtime_error("denominator vanishes near x = " + std::to_string(where)),
          x(where) {}
};

struct ConstraintViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveForm : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroWronskian : std::runtime_error {
    ZeroWronskian() : std::runtime_error("fundamental pair has zero Wronskian") {}
};

/// Pointwise cross-ratio (u-u1)(u3-u2) / ((u-u2)(u3-u1)) of four solutions
/// of one first-order Riccati equation on a shared grid. Constant along x.
std::vector<double> cross_ratio_series(const Trajectory& u, const Trajectory& u1,
                                       const Trajectory& u2, const Trajectory& u3,
                                       double margin = 1e-3);

/// Superposition u = (u1(u3-u2) + kappa u2(u1-u3)) / (u3-u2 + kappa(u1-u3)).
Trajectory lie_scheffers(const Trajectory& u1, const Trajectory& u2, const Trajectory& u3,
                         double kappa, double margin = 1e-3);

/// Residual of the combined solution against u' = u^2 + v, with the
/// derivative taken through the superposition formula (chain rule over the
/// three inputs, each satisfying the same equation).
ResidualReport lie_scheffers_residual(const Trajectory& u1, const Trajectory& u2,
                                      const Trajectory& u3, double kappa,
                                      const FunctionSpec& v, double tolerance,
                                      double margin = 1e-3);

enum class SuperRule { Pinney, KummerSchwarz, Reid1971, Reid1973, Thomas };

std::string rule_name(SuperRule rule);

/// Parameters for one superposition construction. Constraints are checked
/// at construction where self-contained (Reid exponents, Thomas k*l = 1);
/// Wronskian-dependent ones are enforced in build_solution.
struct SuperpositionRule {
    SuperRule rule;
    double A = 0, B = 0, C = 0;       // quadratic-form weights
    double sigma = 0;                 // Pinney / Kummer-Schwarz strength
    double m = 0, c = 0;              // Reid exponent and strength
    double k = 0, l = 0;              // Thomas exponents

    static SuperpositionRule pinney(double A, double B, double C);
    static SuperpositionRule kummer_schwarz(double A, double B, double C);
    static SuperpositionRule reid_1971(double m, double c);
    static SuperpositionRule reid_1973(double A, double B, double m);
    static SuperpositionRule thomas(double k);
};

/// Coefficients of the linear equation the fundamental pair solves:
/// psi'' + r psi' + q psi = 0 (Hill when r is absent).
struct LinearCoeffs {
    FunctionSpec q;                     // or the Hill potential v
    std::optional<FunctionSpec> r;
};

struct BuildResult {
    Trajectory solution;   // components: value, first derivative
    ResidualReport report;
    double sigma_effective = 0.0;
    double wronskian0 = 0.0;
};

/// Constructs the rule's solution from a fundamental pair and evaluates the
/// residual of its target equation. All jets come from exact differentiation
/// with psi'' reduced through the linear equation. The grid is trimmed to the
/// largest prefix where denominators and fractional-power bases stay clear of
/// zero by `margin`.
BuildResult build_solution(const SuperpositionRule& rule, const Trajectory& psi1,
                           const Trajectory& psi2, const LinearCoeffs& coeffs,
                           double tolerance, double margin = 1e-3);

} // namespace riccati

#endif
