#include "riccati/painleve.hpp"

#include <algorithm>
#include <cmath>

#include "riccati/chain.hpp"

namespace riccati {

namespace {

IntegrateOptions on_grid(const IntegrateOptions& opts, std::vector<double> grid) {
    IntegrateOptions o = opts;
    o.grid = std::move(grid);
    return o;
}

} // namespace

AiryRiccatiResult airy_riccati(double psi0, double dpsi0, double x0, double x1, int sign,
                               double tolerance, double root_margin,
                               const IntegrateOptions& opts) {
    if (psi0 == 0.0) throw ZeroDenominator(x0);
    const double s = static_cast<double>(sign);
    Rhs psi_rhs = [s](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -s * x * y[0];
    };
    Trajectory scan = integrate(psi_rhs, x0, {psi0, dpsi0}, x1, opts).require_complete();

    // Trim a margin before the first root of psi.
    double end = x1;
    for (std::size_t i = 1; i < scan.size(); ++i) {
        if (scan.value(i, 0) == 0.0 || scan.value(i, 0) * scan.value(i - 1, 0) < 0.0) {
            end = scan.grid[i - 1] - root_margin;
            break;
        }
    }
    if (end <= x0) throw ZeroDenominator(x0);

    Trajectory psi = integrate(psi_rhs, x0, {psi0, dpsi0}, end, opts).require_complete();

    AiryRiccatiResult result;
    result.trimmed_x1 = end;
    result.u.grid = psi.grid;
    result.u.names = {"u"};
    result.u.meta = psi.meta;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        if (psi.value(i, 0) == 0.0) throw ZeroDenominator(psi.grid[i]);
        result.u.states.push_back({psi.value(i, 1) / psi.value(i, 0)});
    }

    // Independent route: integrate the quotient equation directly.
    Rhs u_rhs = [s](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = -y[0] * y[0] - s * x;
    };
    Trajectory direct =
        integrate(u_rhs, x0, {dpsi0 / psi0}, end, on_grid(opts, psi.grid)).require_complete();

    std::vector<double> res;
    for (std::size_t i = 0; i < psi.size(); ++i)
        res.push_back(direct.value(i, 0) - result.u.value(i, 0));
    // Riccati residual along the direct trajectory, evaluated through the
    // chain-equation reduction of the second-order problem.
    DiffPoly riccati =
        chain_equation({sign > 0 ? parse("x") : parse("-x"), DiffPoly(0), DiffPoly(1)},
                       DiffPoly(1))
            .lhs;
    ResidualReport chain_rep =
        residual(riccati, direct, "u", SolvedOde(riccati, "u"), EvalContext{}, tolerance);
    res.push_back(chain_rep.max_abs);
    result.report = make_report(res, tolerance);
    return result;
}

PiiFromAiryResult pii_from_airy(double psi0, double dpsi0, double x0, double x1,
                                double tolerance, const IntegrateOptions& opts) {
    AiryRiccatiResult ar = airy_riccati(psi0, dpsi0, x0, x1, +1, tolerance, 0.05, opts);

    PiiFromAiryResult result;
    result.mu = std::cbrt(2.0);
    result.lambda = 1.0 / result.mu;
    result.mu_defect = std::abs(result.mu * result.mu * result.mu - 2.0);
    result.lambda_mu_defect = std::abs(result.lambda * result.mu - 1.0);
    const double mu = result.mu, lambda = result.lambda;

    // Scaled solution on the stretched grid.
    std::vector<double> xbar(ar.u.size());
    for (std::size_t i = 0; i < ar.u.size(); ++i) xbar[i] = mu * ar.u.grid[i];
    result.u_scaled.grid = xbar;
    result.u_scaled.names = {"u"};
    for (std::size_t i = 0; i < ar.u.size(); ++i)
        result.u_scaled.states.push_back({lambda * ar.u.value(i, 0)});

    // Direct integration of u'' = 2u^3 + x u - 1/2 from matched jets.
    double u10 = ar.u.value(0, 0);
    double du10 = -u10 * u10 - ar.u.grid[0];
    Rhs pii_rhs = [](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = 2.0 * y[0] * y[0] * y[0] + x * y[0] - 0.5;
    };
    Trajectory direct = integrate(pii_rhs, xbar.front(),
                                  {lambda * u10, lambda / mu * du10}, xbar.back(),
                                  on_grid(opts, xbar))
                            .require_complete();
    for (std::size_t i = 0; i < xbar.size(); ++i)
        result.max_dev = std::max(result.max_dev,
                                  std::abs(direct.value(i, 0) - result.u_scaled.value(i, 0)));

    // Intermediate form in unscaled variables: u'' = (2/lambda^2) u^3 + 2xu - lambda.
    std::vector<double> res;
    for (std::size_t i = 0; i < ar.u.size(); ++i) {
        double x = ar.u.grid[i];
        double u1 = ar.u.value(i, 0);
        double du1 = -u1 * u1 - x;
        double ddu1 = -2.0 * u1 * du1 - 1.0;
        double u = lambda * u1, ddu = lambda * ddu1;
        res.push_back(ddu - 2.0 / (lambda * lambda) * u * u * u - 2.0 * x * u + lambda);
    }
    result.intermediate = make_report(res, tolerance);
    return result;
}

PiiHamResult pii_hamiltonian(const PiiProblem& prob, double tolerance,
                             const IntegrateOptions& opts) {
    const double alpha = prob.alpha;
    Rhs rhs = [alpha](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1] - y[0] * y[0] - 0.5 * x;
        dy[1] = 2.0 * y[0] * y[1] + alpha + 0.5;
        dy[2] = -0.5 * y[1];
    };
    PiiHamResult result;
    double thr = prob.pole_threshold;
    IntegrateOptions o = opts;
    o.names = {"u", "w", "q"};
    o.stop = [thr](double, const std::vector<double>& y) {
        return std::abs(y[0]) > thr || std::abs(y[1]) > thr * thr;
    };
    IntegrateResult first = integrate(rhs, prob.x0, {prob.u0, prob.w0, 0.0}, prob.x1, o);
    double end = prob.x1;
    if (!first.complete()) {
        result.hit_pole = true;
        result.pole_x = first.last_x;
        end = first.last_x - 0.2;  // pole-free window
        if (end <= prob.x0)
            throw std::runtime_error("no pole-free window beyond x0 = " +
                                     std::to_string(prob.x0));
        o.stop = nullptr;
        first = integrate(rhs, prob.x0, {prob.u0, prob.w0, 0.0}, end, o);
    }
    result.uw = first.require_complete();
    const Trajectory& t = result.uw;

    // Direct second-order integration from matched jets.
    double du0 = prob.w0 - prob.u0 * prob.u0 - 0.5 * prob.x0;
    Rhs pii_rhs = [alpha](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = 2.0 * std::pow(y[0], 3.0) + x * y[0] + alpha;
    };
    Trajectory direct =
        integrate(pii_rhs, prob.x0, {prob.u0, du0}, end, on_grid(opts, t.grid))
            .require_complete();

    std::vector<double> res;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double x = t.grid[i];
        double u = t.value(i, 0), w = t.value(i, 1);
        double du = w - u * u - 0.5 * x;
        double dw = 2.0 * u * w + alpha + 0.5;
        double ddu = dw - 2.0 * u * du - 0.5;
        res.push_back(ddu - 2.0 * u * u * u - x * u - alpha);
        res.push_back(direct.value(i, 0) - u);
    }
    result.pii = make_report(res, tolerance);

    // Energy bookkeeping: H along the flow changes only through dH/dx = -w/2.
    double h0 = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double x = t.grid[i];
        double u = t.value(i, 0), w = t.value(i, 1), q = t.value(i, 2);
        double h = 0.5 * w * w - (u * u + 0.5 * x) * w - (alpha + 0.5) * u;
        if (i == 0) h0 = h;
        result.energy_drift = std::max(result.energy_drift, std::abs(h - h0 - q));
    }
    return result;
}

HFunction h_function(const Trajectory& uw, double alpha, bool quadrature_h) {
    HFunction hf;
    hf.alpha = alpha;
    hf.x = uw.grid;
    double h0 = 0.0;
    for (std::size_t i = 0; i < uw.size(); ++i) {
        double x = uw.grid[i];
        double u = uw.value(i, 0), w = uw.value(i, 1);
        hf.u.push_back(u);
        hf.w.push_back(w);
        double h = 0.5 * w * w - (u * u + 0.5 * x) * w - (alpha + 0.5) * u;
        if (i == 0) h0 = h;
        if (uw.states[i].size() > 2) {
            hf.h1_consistency =
                std::max(hf.h1_consistency, std::abs(h - h0 - uw.value(i, 2)));
            if (quadrature_h) h = h0 + uw.value(i, 2);
        }
        hf.h.push_back(h);
        hf.h1.push_back(-0.5 * w);
        hf.h2.push_back(-0.5 * (2.0 * u * w + alpha + 0.5));
    }
    return hf;
}

SdPiiResult sd_pii_check(const Trajectory& uw, double alpha, double tolerance,
                         bool quadrature_h) {
    SdPiiResult result;
    result.hf = h_function(uw, alpha, quadrature_h);
    const HFunction& hf = result.hf;
    std::vector<double> res;
    double e = alpha + 0.5;
    for (std::size_t i = 0; i < hf.x.size(); ++i) {
        double h = hf.h[i], h1 = hf.h1[i], h2 = hf.h2[i], x = hf.x[i];
        res.push_back(h2 * h2 + 4.0 * h1 * h1 * h1 + 2.0 * h1 * (x * h1 - h) -
                      0.25 * e * e);
    }
    result.relation = make_report(res, tolerance);
    return result;
}

SdPiiRecoverResult sd_pii_recover(const HFunction& hf, double tolerance) {
    SdPiiRecoverResult result;
    double e = hf.alpha + 0.5;
    std::vector<double> eq_res;
    for (std::size_t i = 0; i < hf.x.size(); ++i) {
        double h1 = hf.h1[i], h2 = hf.h2[i], x = hf.x[i];
        if (h1 == 0.0) throw ZeroDenominator(x);
        double u = (2.0 * h2 + e) / (4.0 * h1);
        double w = -2.0 * h1;
        result.u_rec.push_back(u);
        result.w_rec.push_back(w);
        result.max_du = std::max(result.max_du, std::abs(u - hf.u[i]));
        result.max_dw = std::max(result.max_dw, std::abs(w - hf.w[i]));

        // Equations of motion for the recovered pair; h''' comes from the
        // source states.
        double us = hf.u[i], ws = hf.w[i];
        double dus = ws - us * us - 0.5 * x;
        double dws = 2.0 * us * ws + hf.alpha + 0.5;
        double h3 = -0.5 * (2.0 * dus * ws + 2.0 * us * dws);
        double du = h3 / (2.0 * h1) - u * h2 / h1;
        eq_res.push_back(du - (w - u * u - 0.5 * x));
        eq_res.push_back(-2.0 * h2 - (2.0 * u * w + hf.alpha + 0.5));

        double u_alt = (2.0 * h2 + hf.alpha + 0.5 * x) / (4.0 * h1);
        result.alt_formula_mismatch =
            std::max(result.alt_formula_mismatch, std::abs(u_alt - hf.u[i]));
    }
    result.hamilton_eqs = make_report(eq_res, tolerance);
    return result;
}

HillFromHResult hill_from_h(const HFunction& hf, double tolerance, double perturb,
                            const IntegrateOptions& opts) {
    const double alpha = hf.alpha;
    // Joint system keeps the potential 2h' + x/2 = -w + x/2 exact along the
    // flow instead of interpolating h'.
    Rhs rhs = [alpha, perturb](double x, const std::vector<double>& y,
                               std::vector<double>& dy) {
        dy[0] = y[1] - y[0] * y[0] - 0.5 * x;
        dy[1] = 2.0 * y[0] * y[1] + alpha + 0.5;
        double pot = -y[1] + 0.5 * x + 2.0 * perturb;
        dy[2] = y[3];
        dy[3] = -pot * y[2];
    };
    double u0 = hf.u.front(), w0 = hf.w.front();
    Trajectory t = integrate(rhs, hf.x.front(), {u0, w0, 1.0, u0}, hf.x.back(),
                             on_grid(opts, hf.x))
                       .require_complete();

    HillFromHResult result;
    std::vector<double> res;
    for (std::size_t i = 0; i < t.size(); ++i) {
        double y = t.value(i, 2), y1 = t.value(i, 3);
        if (y == 0.0) throw ZeroDenominator(t.grid[i]);
        double quot = y1 / y;
        result.quotient_dev = std::max(result.quotient_dev, std::abs(quot - hf.u[i]));
        // -2h' = u' + u^2 + x/2 with u = y'/y and u' through the integrated
        // equation.
        double pot = -t.value(i, 1) + 0.5 * t.grid[i] + 2.0 * perturb;
        double du = -pot - quot * quot;
        res.push_back(-2.0 * hf.h1[i] - (du + quot * quot + 0.5 * t.grid[i]));
        res.push_back(quot - hf.u[i]);
    }
    result.report = make_report(res, tolerance);
    return result;
}

} // namespace riccati
