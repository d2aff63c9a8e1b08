#include "riccati/superpose.hpp"

#include <algorithm>
#include <cmath>

#include "riccati/taylor.hpp"

namespace riccati {

namespace {

void check_shared_grid(const Trajectory& a, const Trajectory& b) {
    if (a.grid.size() != b.grid.size() || a.grid != b.grid)
        throw std::invalid_argument("trajectories do not share a grid");
}

} // namespace

std::vector<double> cross_ratio_series(const Trajectory& u, const Trajectory& u1,
                                       const Trajectory& u2, const Trajectory& u3,
                                       double margin) {
    check_shared_grid(u, u1);
    check_shared_grid(u, u2);
    check_shared_grid(u, u3);
    std::vector<double> out;
    out.reserve(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        double a = u.value(i, 0), b = u1.value(i, 0), c = u2.value(i, 0), d = u3.value(i, 0);
        // (u - u2), (u3 - u1) appear in the denominator; u3 - u2 normalizes
        // the family itself, so a coincident (u2, u3) pair is degenerate.
        if (std::abs(a - c) < margin || std::abs(d - b) < margin || std::abs(d - c) < margin)
            throw DenominatorVanishes(u.grid[i]);
        out.push_back((a - b) * (d - c) / ((a - c) * (d - b)));
    }
    return out;
}

Trajectory lie_scheffers(const Trajectory& u1, const Trajectory& u2, const Trajectory& u3,
                         double kappa, double margin) {
    check_shared_grid(u1, u2);
    check_shared_grid(u1, u3);
    Trajectory out;
    out.grid = u1.grid;
    out.names = {"u"};
    out.meta = u1.meta;
    out.states.reserve(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i) {
        double a = u1.value(i, 0), b = u2.value(i, 0), c = u3.value(i, 0);
        double den = c - b + kappa * (a - c);
        // Scale-aware margin: kappa may be huge in the u2 limit.
        double scale = 1.0 + std::abs(kappa);
        if (std::abs(den) < margin * scale) throw DenominatorVanishes(u1.grid[i]);
        out.states.push_back({(a * (c - b) + kappa * b * (a - c)) / den});
    }
    return out;
}

ResidualReport lie_scheffers_residual(const Trajectory& u1, const Trajectory& u2,
                                      const Trajectory& u3, double kappa,
                                      const FunctionSpec& v, double tolerance,
                                      double margin) {
    check_shared_grid(u1, u2);
    check_shared_grid(u1, u3);
    std::vector<double> res;
    res.reserve(u1.size());
    for (std::size_t i = 0; i < u1.size(); ++i) {
        double x = u1.grid[i];
        double vx = v.eval(x);
        double a = u1.value(i, 0), b = u2.value(i, 0), c = u3.value(i, 0);
        double da = a * a + vx, db = b * b + vx, dc = c * c + vx;
        double num = a * (c - b) + kappa * b * (a - c);
        double den = c - b + kappa * (a - c);
        double scale = 1.0 + std::abs(kappa);
        if (std::abs(den) < margin * scale) throw DenominatorVanishes(x);
        double dnum = da * (c - b) + a * (dc - db) + kappa * (db * (a - c) + b * (da - dc));
        double dden = dc - db + kappa * (da - dc);
        double uval = num / den;
        double du = (dnum * den - num * dden) / (den * den);
        res.push_back(du - uval * uval - vx);
    }
    return make_report(res, tolerance);
}

std::string rule_name(SuperRule rule) {
    switch (rule) {
        case SuperRule::Pinney: return "PINNEY";
        case SuperRule::KummerSchwarz: return "KUMMER_SCHWARZ";
        case SuperRule::Reid1971: return "REID_1971";
        case SuperRule::Reid1973: return "REID_1973";
        case SuperRule::Thomas: return "THOMAS";
    }
    throw std::logic_error("unreachable");
}

SuperpositionRule SuperpositionRule::pinney(double A, double B, double C) {
    SuperpositionRule r;
    r.rule = SuperRule::Pinney;
    r.A = A;
    r.B = B;
    r.C = C;
    return r;
}

SuperpositionRule SuperpositionRule::kummer_schwarz(double A, double B, double C) {
    SuperpositionRule r;
    r.rule = SuperRule::KummerSchwarz;
    r.A = A;
    r.B = B;
    r.C = C;
    return r;
}

SuperpositionRule SuperpositionRule::reid_1971(double m, double c) {
    if (m == 0.0 || m == 1.0)
        throw ConstraintViolated("Reid exponent m must avoid 0 and 1");
    SuperpositionRule r;
    r.rule = SuperRule::Reid1971;
    r.m = m;
    r.c = c;
    return r;
}

SuperpositionRule SuperpositionRule::reid_1973(double A, double B, double m) {
    if (m == 0.0 || m == 1.0)
        throw ConstraintViolated("Reid exponent m must avoid 0 and 1");
    SuperpositionRule r;
    r.rule = SuperRule::Reid1973;
    r.A = A;
    r.B = B;
    r.m = m;
    return r;
}

SuperpositionRule SuperpositionRule::thomas(double k) {
    if (k == 0.0) throw ConstraintViolated("Thomas exponent k must be nonzero");
    SuperpositionRule r;
    r.rule = SuperRule::Thomas;
    r.k = k;
    r.l = 1.0 / k;
    return r;
}

namespace {

// Jets of psi to second order with psi'' reduced through the linear equation.
Taylor psi_taylor(const Trajectory& traj, std::size_t i, double rx, double qx) {
    double p0 = traj.value(i, 0), p1 = traj.value(i, 1);
    return Taylor::from_derivs({p0, p1, -rx * p1 - qx * p0});
}

} // namespace

BuildResult build_solution(const SuperpositionRule& rule, const Trajectory& psi1,
                           const Trajectory& psi2, const LinearCoeffs& coeffs,
                           double tolerance, double margin) {
    check_shared_grid(psi1, psi2);
    const bool has_r = coeffs.r.has_value();

    double w0 = psi1.value(0, 0) * psi2.value(0, 1) - psi2.value(0, 0) * psi1.value(0, 1);
    if (w0 == 0.0) throw ZeroWronskian();

    // Wronskian at x0; constant for Hill pairs by Abel's identity.
    double sigma = 0.0;
    double gamma = 0.0;  // Reid 1971 companion weight
    switch (rule.rule) {
        case SuperRule::Pinney:
        case SuperRule::KummerSchwarz:
            sigma = (rule.A * rule.C - rule.B * rule.B) * w0 * w0;
            break;
        case SuperRule::Reid1971:
            gamma = rule.c / ((rule.m - 1.0) * w0 * w0);
            break;
        default: break;
    }

    BuildResult result;
    result.sigma_effective = sigma;
    result.wronskian0 = w0;
    Trajectory& sol = result.solution;
    sol.names = {"y", "y1"};
    sol.meta = psi1.meta;

    std::vector<double> residuals;
    for (std::size_t i = 0; i < psi1.size(); ++i) {
        double x = psi1.grid[i];
        double qx = coeffs.q.eval(x);
        double rx = has_r ? coeffs.r->eval(x) : 0.0;
        Taylor p1 = psi_taylor(psi1, i, rx, qx);
        Taylor p2 = psi_taylor(psi2, i, rx, qx);
        double wx = p1.value() * p2.deriv(1) - p2.value() * p1.deriv(1);

        Taylor y(2);
        double rhs = 0.0;  // forcing side of the target equation
        bool ok = true;
        switch (rule.rule) {
            case SuperRule::Pinney: {
                Taylor s = rule.A * (p1 * p1) + (2.0 * rule.B) * (p1 * p2) + rule.C * (p2 * p2);
                if (s.value() < margin) {
                    ok = false;
                    if (i == 0) throw NonPositiveForm("quadratic form not positive at x0");
                    break;
                }
                y = s.sqrt();
                rhs = sigma / std::pow(y.value(), 3.0);
                residuals.push_back(y.deriv(2) + qx * y.value() - rhs);
                break;
            }
            case SuperRule::KummerSchwarz: {
                Taylor s = rule.A * (p1 * p1) + (2.0 * rule.B) * (p1 * p2) + rule.C * (p2 * p2);
                if (std::abs(s.value()) < margin) {
                    ok = false;
                    if (i == 0) throw NonPositiveForm("quadratic form vanishes at x0");
                    break;
                }
                y = s.pow(-1.0);
                double f = y.value(), f1 = y.deriv(1), f2 = y.deriv(2);
                residuals.push_back(0.5 * f2 / f - 0.75 * (f1 / f) * (f1 / f) +
                                    sigma * f * f - qx);
                break;
            }
            case SuperRule::Reid1971: {
                if (p1.value() < margin || p2.value() < margin) {
                    ok = false;
                    if (i == 0) throw NonPositiveForm("Reid powers need positive psi");
                    break;
                }
                Taylor s = p1.pow(rule.m) + gamma * p2.pow(rule.m);
                if (s.value() < margin) {
                    ok = false;
                    break;
                }
                y = s.pow(1.0 / rule.m);
                rhs = rule.c * std::pow(p1.value() * p2.value(), rule.m - 2.0) /
                      std::pow(y.value(), 2.0 * rule.m - 1.0);
                residuals.push_back(y.deriv(2) + qx * y.value() - rhs);
                break;
            }
            case SuperRule::Reid1973: {
                if (p1.value() < margin || p2.value() < margin) {
                    ok = false;
                    if (i == 0) throw NonPositiveForm("Reid powers need positive psi");
                    break;
                }
                Taylor s = rule.A * p1.pow(rule.m) + rule.B * p2.pow(rule.m);
                if (s.value() < margin) {
                    ok = false;
                    break;
                }
                y = s.pow(1.0 / rule.m);
                rhs = rule.A * rule.B * (rule.m - 1.0) *
                      std::pow(p1.value() * p2.value(), rule.m - 2.0) * wx * wx /
                      std::pow(y.value(), 2.0 * rule.m - 1.0);
                residuals.push_back(y.deriv(2) + rx * y.deriv(1) + qx * y.value() - rhs);
                break;
            }
            case SuperRule::Thomas: {
                Taylor prod = p1 * p2;
                if (prod.value() < margin) {
                    ok = false;
                    if (i == 0) throw NonPositiveForm("Thomas product must stay positive");
                    break;
                }
                y = prod.pow(rule.k / 2.0);
                double f = y.value(), f1 = y.deriv(1), f2 = y.deriv(2);
                rhs = (1.0 - rule.l) * f1 * f1 / f -
                      0.25 * rule.k * wx * wx * std::pow(f, 1.0 - 4.0 * rule.l);
                residuals.push_back(f2 + rx * f1 + rule.k * qx * f - rhs);
                break;
            }
        }
        if (!ok) break;  // domain trimmed at the first bad point
        sol.grid.push_back(x);
        sol.states.push_back({y.value(), y.deriv(1)});
    }
    if (sol.grid.size() < 8)
        throw NonPositiveForm("fewer than 8 usable grid points after trimming");
    result.report = make_report(residuals, tolerance);
    return result;
}

} // namespace riccati
