#ifndef RICCATI_INTEGRATE_HPP
#define RICCATI_INTEGRATE_HPP

#include <functional>
#include <string>
#include <vector>

#include "riccati/funcspec.hpp"

namespace riccati {

/// Numerically integrated solution sampled on a strictly monotone grid.
struct Trajectory {
    std::vector<double> grid;
    std::vector<std::vector<double>> states;  // states[i] has one entry per component
    std::vector<std::string> names;

    struct Meta {
        double rtol = 0.0;
        double atol = 0.0;
        long accepted = 0;
        long rejected = 0;
        bool truncated = false;
        double last_x = 0.0;
    } meta;

    std::size_t size() const { return grid.size(); }
    double x0() const { return grid.front(); }
    double x1() const { return grid.back(); }
    double value(std::size_t i, std::size_t comp) const { return states[i][comp]; }
};

enum class IntegrateStatus { Complete, StepSizeUnderflow, NonFinite, Interrupted };

struct IntegrateResult {
    Trajectory trajectory;
    IntegrateStatus status = IntegrateStatus::Complete;
    double last_x = 0.0;

    bool complete() const { return status == IntegrateStatus::Complete; }
    /// The trajectory, requiring the integration to have reached the end.
    const Trajectory& require_complete() const;
};

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    int grid_n = 512;
    std::vector<double> grid;  // overrides grid_n when nonempty
    std::vector<std::string> names;
    /// Early-out predicate (e.g. a pole threshold); integration stops with
    /// status Interrupted when it returns true.
    std::function<bool(double, const std::vector<double>&)> stop;
};

using Rhs = std::function<void(double, const std::vector<double>&, std::vector<double>&)>;

/// Adaptive Dormand-Prince 5(4) with quartic dense output at the grid.
/// Supports x1 < x0 (backward integration). Local error per component is
/// controlled by atol + rtol*|y|. Step-size underflow and non-finite
/// right-hand sides are non-fatal outcomes carrying the last valid x.
IntegrateResult integrate(const Rhs& rhs, double x0, std::vector<double> y0, double x1,
                          const IntegrateOptions& opts = {});

/// Fundamental system of the monic linear ODE
/// y^(n) + c_{n-1}(x) y^(n-1) + ... + c_0(x) y = 0, coeffs = (c_0..c_n)
/// with c_n == 1. Initial jets at x0 form the identity matrix.
std::vector<Trajectory> linear_basis(const std::vector<FunctionSpec>& coeffs, int order,
                                     double x0, double x1, const IntegrateOptions& opts = {});

} // namespace riccati

#endif
