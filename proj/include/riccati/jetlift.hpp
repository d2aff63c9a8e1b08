#ifndef RICCATI_JETLIFT_HPP
#define RICCATI_JETLIFT_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riccati/diffpoly.hpp"
#include "riccati/funcspec.hpp"
#include "riccati/integrate.hpp"

namespace riccati {

struct MissingCoefficient : std::runtime_error {
    explicit MissingCoefficient(const std::string& base)
        : std::runtime_error("no FunctionSpec for coefficient '" + base + "'") {}
};

struct ResidualReport {
    double max_abs = 0.0;
    double rms = 0.0;
    long n_samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

ResidualReport make_report(const std::vector<double>& residuals, double tolerance);

/// A monic ODE solved for its top derivative: u_r = rhs(lower jets, x, ...).
/// Derivatives above the state are obtained by repeated total derivation of
/// the solved form followed by back-substitution, never finite differences.
class SolvedOde {
public:
    /// lhs must be monic in base's highest derivative.
    SolvedOde(const DiffPoly& lhs, std::string base);

    const std::string& base() const { return base_; }
    int order() const { return order_; }

    /// Expression for u_{order + extra} in jets of u below `order`.
    const DiffPoly& derivative_expr(int extra) const;

private:
    std::string base_;
    int order_;
    mutable std::vector<DiffPoly> lifted_;  // lifted_[j] is u_{order+j}
};

/// Symbol assignments at a point: jets of the dependent variable from a
/// trajectory state, coefficient jets from FunctionSpecs, named constants.
struct EvalContext {
    std::map<std::string, FunctionSpec> coeff_specs;
    std::map<std::string, double> consts;
};

/// Builds the full jet map needed to evaluate p at grid index i, lifting
/// dependent-variable derivatives through the solved ODE when present.
std::map<DiffSymbol, double> lift_jet_at(const DiffPoly& p, const Trajectory& traj,
                                         std::size_t i, const std::string& base,
                                         const std::optional<SolvedOde>& lift,
                                         const EvalContext& ctx);

/// Evaluates p at every grid point of traj; state components are the jets
/// of `base` in ascending order.
ResidualReport residual(const DiffPoly& p, const Trajectory& traj, const std::string& base,
                        const std::optional<SolvedOde>& lift, const EvalContext& ctx,
                        double tolerance);

} // namespace riccati

#endif
