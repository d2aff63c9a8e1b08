#include <doctest.h>

#include <cmath>

#include "riccati/rng.hpp"
#include "riccati/superpose.hpp"

using namespace riccati;

namespace {

constexpr double kTwoPi = 6.283185307179586476925287;

std::vector<Trajectory> riccati_solutions(const FunctionSpec& v, std::vector<double> ics,
                                          double x0, double x1) {
    Rhs rhs = [v](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[0] * y[0] + v.eval(x);
    };
    std::vector<Trajectory> out;
    for (double ic : ics) out.push_back(integrate(rhs, x0, {ic}, x1).require_complete());
    return out;
}

std::vector<Trajectory> hill_pair(const FunctionSpec& v, double x0, double x1) {
    return linear_basis({v, FunctionSpec::constant(0.0), FunctionSpec::constant(1.0)}, 2, x0,
                        x1);
}

} // namespace

TEST_SUITE("superpose") {

TEST_CASE("cross-ratio is constant for four distinct solutions") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto sols = riccati_solutions(v, {-1.0, 0.0, 0.5, 1.0}, 0.0, 0.44);
    auto series = cross_ratio_series(sols[0], sols[1], sols[2], sols[3]);
    double mean = 0.0;
    for (double s : series) mean += s;
    mean /= static_cast<double>(series.size());
    double sd = 0.0;
    for (double s : series) sd += (s - mean) * (s - mean);
    sd = std::sqrt(sd / static_cast<double>(series.size()));
    CHECK(sd / std::abs(mean) <= 1e-7);
}

TEST_CASE("degenerate and invalid cross-ratio inputs") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto sols = riccati_solutions(v, {-1.0, 0.0, 0.5}, 0.0, 0.4);
    // u equal to the first input gives the zero series (the k = 0 member).
    auto zero = cross_ratio_series(sols[0], sols[0], sols[1], sols[2]);
    for (double s : zero) CHECK(s == 0.0);
    // Coincident second and third inputs make the family degenerate.
    CHECK_THROWS_AS(cross_ratio_series(sols[0], sols[1], sols[2], sols[2]),
                    DenominatorVanishes);
}

TEST_CASE("superposition formula limits") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto sols = riccati_solutions(v, {-1.0, 0.0, 0.5}, 0.0, 0.8);
    Trajectory at0 = lie_scheffers(sols[0], sols[1], sols[2], 0.0);
    for (std::size_t i = 0; i < at0.size(); ++i)
        CHECK(at0.value(i, 0) == doctest::Approx(sols[0].value(i, 0)).epsilon(1e-12));
    Trajectory big = lie_scheffers(sols[0], sols[1], sols[2], 1e8);
    for (std::size_t i = 0; i < big.size(); ++i)
        CHECK(std::abs(big.value(i, 0) - sols[1].value(i, 0)) <= 1e-6);
}

TEST_CASE("superposed function satisfies the source equation") {
    auto v = FunctionSpec::constant(1.0);
    auto sols = riccati_solutions(v, {-1.0, 0.0, 0.5}, 0.0, 0.8);
    ResidualReport rep = lie_scheffers_residual(sols[0], sols[1], sols[2], 1.0, v, 1e-7);
    CHECK(rep.pass);
    Rng rng(11);
    for (int i = 0; i < 20; ++i) {
        double kappa = rng.uniform(-5.0, -0.01);
        CHECK(lie_scheffers_residual(sols[0], sols[1], sols[2], kappa, v, 1e-6).pass);
    }
}


TEST_CASE("vanishing superposition denominator is reported with its location") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto sols = riccati_solutions(v, {-1.0, 0.0, 0.5}, 0.0, 0.8);
    // kappa at the crossing value (u3-u2)/(u3-u1) at some grid point lands
    // the denominator on zero.
    double a = sols[0].value(100, 0), b = sols[1].value(100, 0), c = sols[2].value(100, 0);
    double kappa = (c - b) / (c - a);
    try {
        lie_scheffers(sols[0], sols[1], sols[2], kappa);
        CHECK(false);
    } catch (const DenominatorVanishes& ex) {
        CHECK(ex.x >= 0.0);
        CHECK(ex.x <= 0.8);
    }
}

TEST_CASE("constant Pinney solution") {
    auto basis = hill_pair(FunctionSpec::constant(1.0), 0.0, kTwoPi);
    BuildResult res = build_solution(SuperpositionRule::pinney(1.0, 0.0, 1.0), basis[0],
                                     basis[1], LinearCoeffs{FunctionSpec::constant(1.0)},
                                     1e-9);
    CHECK(res.sigma_effective == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < res.solution.size(); ++i)
        CHECK(res.solution.value(i, 0) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(res.report.pass);
}

TEST_CASE("Pinney against a periodic potential") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto basis = hill_pair(v, 0.0, kTwoPi);
    BuildResult res = build_solution(SuperpositionRule::pinney(1.3, -0.2, 0.9), basis[0],
                                     basis[1], LinearCoeffs{v}, 1e-6);
    CHECK(res.report.pass);
    CHECK(res.report.max_abs <= 1e-6);
}

TEST_CASE("sigma consistency across weight choices") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    auto basis = hill_pair(v, 0.0, kTwoPi);
    BuildResult a = build_solution(SuperpositionRule::pinney(1.0, 0.0, 2.0), basis[0],
                                   basis[1], LinearCoeffs{v}, 1e-6);
    BuildResult b = build_solution(SuperpositionRule::pinney(2.0, 1.0, 1.5), basis[0],
                                   basis[1], LinearCoeffs{v}, 1e-6);
    CHECK(a.sigma_effective == doctest::Approx(2.0));
    CHECK(b.sigma_effective == doctest::Approx(2.0));
    CHECK(a.report.pass);
    CHECK(b.report.pass);
    double diff = 0.0;
    for (std::size_t i = 0; i < a.solution.size(); ++i)
        diff = std::max(diff, std::abs(a.solution.value(i, 0) - b.solution.value(i, 0)));
    CHECK(diff > 0.01);  // different solutions of the same equation
}

TEST_CASE("Reid 1971 at m = 2 coincides with Pinney") {
    auto v = FunctionSpec::parse("trig:1;0.3,0");
    Rhs rhs = [v](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -v.eval(x) * y[0];
    };
    Trajectory p1 = integrate(rhs, 0.0, {1.0, 0.3}, 1.1).require_complete();
    Trajectory p2 = integrate(rhs, 0.0, {0.2, 1.0}, 1.1).require_complete();
    double w0 = 1.0 * 1.0 - 0.2 * 0.3;
    double cval = 0.7;
    BuildResult reid = build_solution(SuperpositionRule::reid_1971(2.0, cval * w0 * w0), p1,
                                      p2, LinearCoeffs{v}, 1e-6);
    BuildResult pin = build_solution(SuperpositionRule::pinney(1.0, 0.0, cval), p1, p2,
                                     LinearCoeffs{v}, 1e-6);
    REQUIRE(reid.solution.size() == pin.solution.size());
    for (std::size_t i = 0; i < reid.solution.size(); ++i)
        CHECK(std::abs(reid.solution.value(i, 0) - pin.solution.value(i, 0)) <= 1e-8);
    CHECK(reid.report.pass);
}

TEST_CASE("Thomas degenerate exponent drops the slope term") {
    FunctionSpec r = FunctionSpec::constant(0.1);
    FunctionSpec q = FunctionSpec::parse("trig:1;0.2,0");
    Rhs rhs = [r, q](double x, const std::vector<double>& y, std::vector<double>& dy) {
        dy[0] = y[1];
        dy[1] = -r.eval(x) * y[1] - q.eval(x) * y[0];
    };
    Trajectory p1 = integrate(rhs, 0.0, {1.0, 0.3}, 1.1).require_complete();
    Trajectory p2 = integrate(rhs, 0.0, {0.2, 1.0}, 1.1).require_complete();
    BuildResult res = build_solution(SuperpositionRule::thomas(1.0), p1, p2,
                                     LinearCoeffs{q, r}, 1e-6);
    CHECK(res.report.pass);
    // The constructed solution is sqrt(psi1 psi2) when k = 1.
    for (std::size_t i = 0; i < res.solution.size(); ++i)
        CHECK(res.solution.value(i, 0) ==
              doctest::Approx(std::sqrt(p1.value(i, 0) * p2.value(i, 0))).epsilon(1e-12));
}

TEST_CASE("constraint and precondition failures") {
    CHECK_THROWS_AS(SuperpositionRule::reid_1971(1.0, 0.5), ConstraintViolated);
    CHECK_THROWS_AS(SuperpositionRule::reid_1971(0.0, 0.5), ConstraintViolated);
    CHECK_THROWS_AS(SuperpositionRule::thomas(0.0), ConstraintViolated);

    auto v = FunctionSpec::constant(1.0);
    auto basis = hill_pair(v, 0.0, 1.0);
    CHECK_THROWS_AS(build_solution(SuperpositionRule::pinney(1.0, 0.0, 1.0), basis[0],
                                   basis[0], LinearCoeffs{v}, 1e-6),
                    ZeroWronskian);
    // Negative-definite form fails at the left endpoint.
    CHECK_THROWS_AS(build_solution(SuperpositionRule::pinney(-1.0, 0.0, -1.0), basis[0],
                                   basis[1], LinearCoeffs{v}, 1e-6),
                    NonPositiveForm);
}

} // TEST_SUITE
