#include "riccati/jetlift.hpp"

#include <cmath>

namespace riccati {

ResidualReport make_report(const std::vector<double>& residuals, double tolerance) {
    ResidualReport rep;
    rep.tolerance = tolerance;
    rep.n_samples = static_cast<long>(residuals.size());
    double sq = 0.0;
    for (double r : residuals) {
        double a = std::abs(r);
        rep.max_abs = std::max(rep.max_abs, a);
        sq += a * a;
    }
    rep.rms = residuals.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(residuals.size()));
    rep.pass = rep.max_abs <= tolerance;
    return rep;
}

SolvedOde::SolvedOde(const DiffPoly& lhs, std::string base) : base_(std::move(base)) {
    order_ = lhs.max_order(base_);
    if (order_ < 1) throw std::invalid_argument("ODE has no derivative of " + base_);
    DiffSymbol top(base_, order_);
    if (lhs.coefficient(Monomial(top)) != 1)
        throw std::invalid_argument("ODE is not monic in " + top.str());
    DiffPoly rest = lhs - DiffPoly(Monomial(top));
    if (rest.max_order(base_) >= order_)
        throw std::invalid_argument("ODE is not linear in its top derivative");
    lifted_.push_back(-rest);
}

const DiffPoly& SolvedOde::derivative_expr(int extra) const {
    while (static_cast<int>(lifted_.size()) <= extra) {
        DiffPoly next = d_total(lifted_.back());
        // Back-substitute the solved top derivative wherever derivation
        // produced it.
        if (next.max_order(base_) >= order_) {
            DiffSymbol top(base_, order_);
            DiffPoly repl;
            for (const auto& [mono, c] : next.terms()) {
                int e = mono.exponent(top);
                if (e == 0) {
                    repl.add_term(mono, c);
                } else {
                    repl += DiffPoly(mono.with_exponent(top, 0), c) * lifted_[0].pow(e);
                }
            }
            next = repl;
        }
        lifted_.push_back(next);
    }
    return lifted_[static_cast<std::size_t>(extra)];
}

namespace {

void fill_coeff_jets(const DiffPoly& p, double x, const EvalContext& ctx,
                     std::map<DiffSymbol, double>& jet) {
    for (const auto& base : p.jet_bases()) {
        if (kind_of_base(base) != SymbolKind::Coefficient) continue;
        int m = p.max_order(base);
        auto it = ctx.coeff_specs.find(base);
        if (it == ctx.coeff_specs.end()) throw MissingCoefficient(base);
        std::vector<double> vals = it->second.jet(x, m);
        for (int j = 0; j <= m; ++j)
            jet[DiffSymbol(base, j)] = vals[static_cast<std::size_t>(j)];
    }
}

} // namespace

std::map<DiffSymbol, double> lift_jet_at(const DiffPoly& p, const Trajectory& traj,
                                         std::size_t i, const std::string& base,
                                         const std::optional<SolvedOde>& lift,
                                         const EvalContext& ctx) {
    double x = traj.grid[i];
    std::map<DiffSymbol, double> jet;
    jet[DiffSymbol("x", 0)] = x;
    const auto& state = traj.states[i];
    for (std::size_t j = 0; j < state.size(); ++j)
        jet[DiffSymbol(base, static_cast<int>(j))] = state[j];

    int needed = p.max_order(base);
    int have = static_cast<int>(state.size()) - 1;
    if (needed > have) {
        if (!lift) throw MissingSymbol({DiffSymbol(base, have + 1).str()});
        for (int j = lift->order(); j <= needed; ++j) {
            const DiffPoly& expr = lift->derivative_expr(j - lift->order());
            std::map<DiffSymbol, double> sub = jet;
            fill_coeff_jets(expr, x, ctx, sub);
            jet[DiffSymbol(base, j)] = eval_jet(expr, sub, ctx.consts);
        }
    }
    fill_coeff_jets(p, x, ctx, jet);
    return jet;
}

ResidualReport residual(const DiffPoly& p, const Trajectory& traj, const std::string& base,
                        const std::optional<SolvedOde>& lift, const EvalContext& ctx,
                        double tolerance) {
    std::vector<double> vals;
    vals.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i)
        vals.push_back(eval_jet(p, lift_jet_at(p, traj, i, base, lift, ctx), ctx.consts));
    return make_report(vals, tolerance);
}

} // namespace riccati
