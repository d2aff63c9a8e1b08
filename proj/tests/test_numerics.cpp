#include <doctest.h>

#include <cmath>

#include "riccati/funcspec.hpp"
#include "riccati/integrate.hpp"
#include "riccati/jetlift.hpp"
#include "riccati/taylor.hpp"

using namespace riccati;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("numerics") {

TEST_CASE("function spec jets") {
    auto trig = FunctionSpec::parse("trig:1;0.3,0");
    auto j = trig.jet(0.0, 2);
    CHECK(j[0] == doctest::Approx(1.3).epsilon(1e-14));
    CHECK(j[1] == doctest::Approx(0.0));
    CHECK(j[2] == doctest::Approx(-0.3).epsilon(1e-14));

    auto affine = FunctionSpec::affine(1.0, 0.0);
    auto ja = affine.jet(2.0, 3);
    CHECK(ja == std::vector<double>{2.0, 1.0, 0.0, 0.0});

    auto poly = FunctionSpec::parse("poly:0,0,1");
    auto jp = poly.jet(3.0, 2);
    CHECK(jp == std::vector<double>{9.0, 6.0, 2.0});

    // Text round trip and derivative closure.
    CHECK(FunctionSpec::parse(trig.to_text()).eval(0.7) ==
          doctest::Approx(trig.eval(0.7)).epsilon(1e-15));
    auto dtrig = trig.deriv();
    CHECK(dtrig.eval(0.4) == doctest::Approx(trig.jet(0.4, 1)[1]).epsilon(1e-14));
    CHECK(affine.deriv().eval(100.0) == doctest::Approx(1.0));
    CHECK(poly.deriv().eval(3.0) == doctest::Approx(6.0));
    CHECK(trig.scaled(4.0).eval(0.3) == doctest::Approx(4.0 * trig.eval(0.3)));
    CHECK_THROWS_AS(FunctionSpec::parse("bogus:1"), std::invalid_argument);
}

TEST_CASE("taylor arithmetic") {
    // exp(x) / (1 + x) at x = 0.3 against closed-form derivatives.
    Taylor x = Taylor::variable(0.3, 4);
    Taylor num = x.exp();
    Taylor den = x + 1.0;
    Taylor q = num / den;
    double f = std::exp(0.3) / 1.3;
    CHECK(q.value() == doctest::Approx(f).epsilon(1e-14));
    // d/dx [e^x/(1+x)] = e^x x/(1+x)^2
    CHECK(q.deriv(1) == doctest::Approx(std::exp(0.3) * 0.3 / (1.3 * 1.3)).epsilon(1e-13));
    Taylor p = (x + 1.0).pow(2.5);
    CHECK(p.deriv(1) == doctest::Approx(2.5 * std::pow(1.3, 1.5)).epsilon(1e-13));
    CHECK(p.deriv(2) == doctest::Approx(2.5 * 1.5 * std::pow(1.3, 0.5)).epsilon(1e-13));
    CHECK_THROWS_AS(Taylor(2, 0.0).pow(0.5), std::domain_error);
    CHECK_THROWS_AS(num / Taylor(4, 0.0), std::domain_error);
}

TEST_CASE("harmonic oscillator endpoint") {
    Rhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    auto res = integrate(rhs, 0.0, {0.0, 1.0}, kPi / 2);
    REQUIRE(res.complete());
    const Trajectory& t = res.trajectory;
    CHECK(std::abs(t.states.back()[0] - 1.0) <= 1e-9);
}

TEST_CASE("quadratic blow-up reports step-size underflow") {
    Rhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[0] * y[0];
    };
    auto res = integrate(rhs, 0.0, {1.0}, 2.0);
    CHECK(res.status == IntegrateStatus::StepSizeUnderflow);
    CHECK(res.last_x == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(res.trajectory.meta.truncated);
}

TEST_CASE("Hill Wronskian stays constant") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto basis = linear_basis({v, FunctionSpec::constant(0.0), FunctionSpec::constant(1.0)},
                              2, 0.0, 2 * kPi);
    double w0 = 1.0;
    for (std::size_t i = 0; i < basis[0].size(); ++i) {
        double w = basis[0].value(i, 0) * basis[1].value(i, 1) -
                   basis[1].value(i, 0) * basis[0].value(i, 1);
        CHECK(std::abs(w - w0) <= 1e-8);
    }
}

TEST_CASE("tolerance ladder is monotone") {
    Rhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    std::vector<double> errs;
    for (double rtol : {1e-6, 1e-8, 1e-10, 1e-12}) {
        IntegrateOptions o;
        o.rtol = rtol;
        o.atol = rtol * 1e-2;
        auto res = integrate(rhs, 0.0, {0.0, 1.0}, 7.0, o);
        REQUIRE(res.complete());
        errs.push_back(std::abs(res.trajectory.states.back()[0] - std::sin(7.0)));
    }
    for (std::size_t i = 1; i < errs.size(); ++i)
        CHECK(errs[i] <= errs[i - 1] * 1.05 + 1e-15);
}

TEST_CASE("canonical linear bases") {
    auto one = FunctionSpec::constant(1.0), zero = FunctionSpec::constant(0.0);
    auto hill = linear_basis({one, zero, one}, 2, 0.0, 2 * kPi);
    for (std::size_t i = 0; i < hill[0].size(); ++i) {
        double x = hill[0].grid[i];
        CHECK(std::abs(hill[0].value(i, 0) - std::cos(x)) <= 1e-9);
        CHECK(std::abs(hill[1].value(i, 0) - std::sin(x)) <= 1e-9);
    }

    // Airy pair has unit Wronskian everywhere.
    auto airy = linear_basis({FunctionSpec::affine(1.0, 0.0), zero, one}, 2, 0.0, 2.0);
    for (std::size_t i = 0; i < airy[0].size(); ++i) {
        double w = airy[0].value(i, 0) * airy[1].value(i, 1) -
                   airy[1].value(i, 0) * airy[0].value(i, 1);
        CHECK(std::abs(w - 1.0) <= 1e-9);
    }

    // Third-order problem with v = 1: cos 2x lies in the span.
    auto pvf = linear_basis({zero.scaled(0.0), FunctionSpec::constant(4.0), zero, one}, 3,
                            0.0, 2 * kPi);
    for (std::size_t i = 0; i < pvf[0].size(); ++i) {
        double x = pvf[0].grid[i];
        double combo = pvf[0].value(i, 0) - 4.0 * pvf[2].value(i, 0);
        CHECK(std::abs(combo - std::cos(2 * x)) <= 1e-8);
    }

    CHECK_THROWS_AS(linear_basis({one, zero, FunctionSpec::constant(2.0)}, 2, 0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("solved ODE lifts derivatives symbolically") {
    SolvedOde riccati(parse("u1 - u^2 - v"), "u");
    CHECK(riccati.order() == 1);
    CHECK(riccati.derivative_expr(0) == parse("u^2 + v"));
    CHECK(riccati.derivative_expr(1) == parse("2*u^3 + 2*u*v + v1"));

    SolvedOde hill(parse("f2 + v*f"), "f");
    CHECK(hill.derivative_expr(1) == parse("-v1*f - v*f1"));

    SolvedOde pvf(parse("f3 + 4*v*f1 + 2*v1*f"), "f");
    CHECK(pvf.derivative_expr(1) == parse("-4*v*f2 - 6*v1*f1 - 2*v2*f"));

    CHECK_THROWS_AS(SolvedOde(parse("2*u2 + u"), "u"), std::invalid_argument);
    CHECK_THROWS_AS(SolvedOde(parse("u2^2 + u"), "u"), std::invalid_argument);
}

TEST_CASE("residual of the integrated equation is tiny") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto basis = linear_basis({v, FunctionSpec::constant(0.0), FunctionSpec::constant(1.0)},
                              2, 0.0, 2 * kPi);
    EvalContext ctx;
    ctx.coeff_specs["v"] = v;
    DiffPoly p = parse("u2 + v*u");
    ResidualReport rep = residual(p, basis[0], "u", SolvedOde(p, "u"), ctx, 1e-8);
    CHECK(rep.pass);
    CHECK(rep.rms <= rep.max_abs);
    CHECK(rep.n_samples == 512);

    // The zero polynomial evaluates to exactly zero.
    ResidualReport zero = residual(DiffPoly::zero(), basis[0], "u", std::nullopt, ctx, 1e-30);
    CHECK(zero.max_abs == 0.0);
    CHECK(zero.pass);

    // Unresolvable coefficient symbols are reported.
    EvalContext empty;
    CHECK_THROWS_AS(residual(p, basis[0], "u", SolvedOde(p, "u"), empty, 1e-8),
                    MissingCoefficient);
}

TEST_CASE("lifted jets agree with finite differences of the dense output") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto basis = linear_basis({v, FunctionSpec::constant(0.0), FunctionSpec::constant(1.0)},
                              2, 0.0, 2 * kPi);
    const Trajectory& t = basis[0];
    SolvedOde hill(parse("u2 + v*u"), "u");
    EvalContext ctx;
    ctx.coeff_specs["v"] = v;
    double h = t.grid[1] - t.grid[0];
    for (std::size_t i = 1; i + 1 < t.size(); i += 37) {
        DiffPoly u2 = DiffPoly::symbol("u", 2);
        auto jet = lift_jet_at(u2, t, i, "u", hill, ctx);
        double lifted = jet.at(DiffSymbol("u", 2));
        double fd = (t.value(i + 1, 1) - t.value(i - 1, 1)) / (2 * h);
        CHECK(std::abs(lifted - fd) <= 1e-3 * std::max(1.0, std::abs(lifted)));
    }
}


TEST_CASE("trig overtone frequency parses and evaluates") {
    auto f = FunctionSpec::parse("trig:0;0,1@2");  // sin(2x)
    CHECK(f.eval(0.4) == doctest::Approx(std::sin(0.8)).epsilon(1e-14));
    auto j = f.jet(0.4, 1);
    CHECK(j[1] == doctest::Approx(2.0 * std::cos(0.8)).epsilon(1e-13));
    CHECK(FunctionSpec::parse(f.to_text()).eval(0.4) == doctest::Approx(f.eval(0.4)));
}

TEST_CASE("non-finite right-hand side reported at the start") {
    Rhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = 1.0 / (y[0] - 1.0);
    };
    auto res = integrate(rhs, 0.0, {1.0}, 1.0);  // immediately infinite
    CHECK(res.status == IntegrateStatus::NonFinite);
    CHECK(res.trajectory.size() == 0);
}

TEST_CASE("backward integration") {
    Rhs rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[0];
    };
    auto res = integrate(rhs, 0.0, {1.0}, -1.0);
    REQUIRE(res.complete());
    CHECK(std::abs(res.trajectory.states.back()[0] - std::exp(-1.0)) <= 1e-9);
}

} // TEST_SUITE
