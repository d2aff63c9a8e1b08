#include "riccati/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace riccati {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// Error coefficients: 5th-order weights minus the embedded 4th-order ones.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

} // namespace

const Trajectory& IntegrateResult::require_complete() const {
    if (status != IntegrateStatus::Complete)
        throw std::runtime_error("integration stopped at x = " + std::to_string(last_x));
    return trajectory;
}

IntegrateResult integrate(const Rhs& rhs, double x0, std::vector<double> y0, double x1,
                          const IntegrateOptions& opts) {
    if (opts.rtol <= 0 || opts.atol <= 0) throw std::invalid_argument("tolerances must be positive");
    if (x1 == x0) throw std::invalid_argument("empty integration interval");
    const std::size_t n = y0.size();
    const double dir = x1 > x0 ? 1.0 : -1.0;

    std::vector<double> grid = opts.grid;
    if (grid.empty()) {
        int m = std::max(2, opts.grid_n);
        grid.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
            grid[static_cast<std::size_t>(i)] = x0 + (x1 - x0) * static_cast<double>(i) / (m - 1);
    }

    IntegrateResult result;
    Trajectory& traj = result.trajectory;
    traj.names = opts.names;
    traj.meta.rtol = opts.rtol;
    traj.meta.atol = opts.atol;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), y1(n), err(n);
    std::vector<double> rc1(n), rc2(n), rc3(n), rc4(n), rc5(n);

    double x = x0;
    std::vector<double> y = std::move(y0);
    rhs(x, y, k1);
    if (!all_finite(y) || !all_finite(k1)) {
        result.status = IntegrateStatus::NonFinite;
        result.last_x = x;
        return result;
    }

    // Initial step size from the scale of the first derivative.
    double span = std::abs(x1 - x0);
    double h = span / 100.0;
    for (std::size_t i = 0; i < n; ++i) {
        double sc = opts.atol + opts.rtol * std::abs(y[i]);
        if (std::abs(k1[i]) > 1e-12)
            h = std::min(h, 0.01 * sc / (opts.rtol * std::abs(k1[i]) + 1e-300));
    }
    h = std::max(h, span * 1e-10) * dir;

    std::size_t next_out = 0;
    auto emit_upto = [&](double xa, double xb, const std::vector<double>& ya, double hstep) {
        // Dense output on grid points inside (xa, xb], plus xa itself first.
        while (next_out < grid.size() && dir * (grid[next_out] - xb) <= 1e-14 * span) {
            double theta = (grid[next_out] - xa) / hstep;
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i) {
                double th1 = 1.0 - theta;
                out[i] = rc1[i] + theta * (rc2[i] + th1 * (rc3[i] + theta * (rc4[i] + th1 * rc5[i])));
            }
            traj.grid.push_back(grid[next_out]);
            traj.states.push_back(std::move(out));
            ++next_out;
        }
        (void)ya;
    };

    // First grid point is the initial condition.
    if (next_out < grid.size() && grid[next_out] == x0) {
        traj.grid.push_back(x0);
        traj.states.push_back(y);
        ++next_out;
    }

    const double hmin = span * 1e-13;
    long guard = 0;
    while (dir * (x1 - x) > 1e-14 * span) {
        if (++guard > 2000000) throw std::runtime_error("integrator exceeded step budget");
        if (dir * (x + h - x1) > 0) h = x1 - x;
        if (std::abs(h) < hmin || x + h == x) {
            result.status = IntegrateStatus::StepSizeUnderflow;
            result.last_x = x;
            traj.meta.truncated = true;
            traj.meta.last_x = x;
            return result;
        }

        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(x + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(x + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(x + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(x + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] +
                                  a65 * k5[i]);
        rhs(x + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            y1[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] +
                                a76 * k6[i]);
        rhs(x + h, y1, k7);

        if (!all_finite(y1) || !all_finite(k7)) {
            h *= 0.5;
            if (std::abs(h) < hmin) {
                result.status = IntegrateStatus::NonFinite;
                result.last_x = x;
                traj.meta.truncated = true;
                traj.meta.last_x = x;
                return result;
            }
            continue;
        }

        double errnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
            double sc = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(y1[i]));
            double q = err[i] / sc;
            errnorm += q * q;
        }
        errnorm = std::sqrt(errnorm / static_cast<double>(n));

        if (errnorm <= 1.0) {
            // Accepted: build the dense-output polynomial for this step.
            for (std::size_t i = 0; i < n; ++i) {
                double ydiff = y1[i] - y[i];
                double bspl = h * k1[i] - ydiff;
                rc1[i] = y[i];
                rc2[i] = ydiff;
                rc3[i] = bspl;
                rc4[i] = ydiff - h * k7[i] - bspl;
                rc5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] +
                              d7 * k7[i]);
            }
            double xnew = x + h;
            emit_upto(x, xnew, y, h);
            traj.meta.accepted++;
            x = xnew;
            y = y1;
            k1 = k7;  // FSAL
            traj.meta.last_x = x;
            if (opts.stop && opts.stop(x, y)) {
                result.status = IntegrateStatus::Interrupted;
                result.last_x = x;
                traj.meta.truncated = true;
                return result;
            }
            double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            traj.meta.rejected++;
            double fac = 0.9 * std::pow(errnorm, -0.2);
            h *= std::clamp(fac, 0.2, 1.0);
        }
    }

    result.status = IntegrateStatus::Complete;
    result.last_x = x;
    traj.meta.last_x = x;
    // Flush any grid points that coincide with the endpoint.
    while (next_out < grid.size()) {
        traj.grid.push_back(grid[next_out]);
        traj.states.push_back(y);
        ++next_out;
    }
    return result;
}

std::vector<Trajectory> linear_basis(const std::vector<FunctionSpec>& coeffs, int order,
                                     double x0, double x1, const IntegrateOptions& opts) {
    if (static_cast<int>(coeffs.size()) != order + 1)
        throw std::invalid_argument("linear_basis needs order+1 coefficients");
    // Leading coefficient must be the literal constant 1.
    const FunctionSpec& lead = coeffs.back();
    if (lead.kind() != FunctionSpec::Kind::Constant || lead.eval(0.0) != 1.0)
        throw std::invalid_argument("leading coefficient must be 1");

    Rhs rhs = [coeffs, order](double x, const std::vector<double>& y, std::vector<double>& dy) {
        for (int j = 0; j + 1 < order; ++j)
            dy[static_cast<std::size_t>(j)] = y[static_cast<std::size_t>(j + 1)];
        double top = 0.0;
        for (int j = 0; j < order; ++j)
            top -= coeffs[static_cast<std::size_t>(j)].eval(x) * y[static_cast<std::size_t>(j)];
        dy[static_cast<std::size_t>(order - 1)] = top;
    };

    std::vector<Trajectory> basis;
    for (int i = 0; i < order; ++i) {
        std::vector<double> y0(static_cast<std::size_t>(order), 0.0);
        y0[static_cast<std::size_t>(i)] = 1.0;
        basis.push_back(integrate(rhs, x0, y0, x1, opts).require_complete());
    }
    return basis;
}

} // namespace riccati
