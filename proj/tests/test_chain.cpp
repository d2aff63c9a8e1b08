#include <doctest.h>

#include <cmath>
#include <map>

#include "riccati/chain.hpp"
#include "riccati/funcspec.hpp"

using namespace riccati;

namespace {

// Transcriptions of the displayed chain members with k = 1.
const char* kR1 = "u1 + u^2";
const char* kR2 = "u2 + 3*u*u1 + u^3";
const char* kR3 = "u3 + 4*u*u2 + 3*u1^2 + 6*u^2*u1 + u^4";
const char* kR4 = "u4 + 5*u*u3 + 10*u1*u2 + 15*u*u1^2 + 10*u^2*u2 + 10*u^3*u1 + u^5";

} // namespace

TEST_SUITE("chain") {

TEST_CASE("first members match the displayed polynomials") {
    CHECK(chain(0, 1) == parse("u"));
    CHECK(chain(1) == parse("u1 + k*u^2"));
    CHECK(chain(1, 1) == parse(kR1));
    CHECK(chain(2) == parse("u2 + 3*k*u*u1 + k^2*u^3"));
    CHECK(chain(2, 1) == parse(kR2));
    CHECK(chain(3, 1) == parse(kR3));
    CHECK(chain(4, 1) == parse(kR4));
}

TEST_CASE("recursion consistency up to order 8, symbolic k") {
    DiffPoly u = DiffPoly::symbol("u");
    DiffPoly k = DiffPoly::symbol("k");
    for (int n = 1; n <= 8; ++n)
        CHECK(chain(n) == d_total(chain(n - 1)) + k * u * chain(n - 1));
}

TEST_CASE("chain_equation reductions") {
    // Quotient reduction of psi'' + x psi = 0.
    ChainEquation airy = chain_equation({parse("x"), DiffPoly(0), DiffPoly(1)}, DiffPoly(1));
    CHECK(airy.order == 2);
    CHECK(airy.lhs == parse("u1 + u^2 + x"));

    // Quotient reduction of the third-order projective equation.
    ChainEquation pvf = chain_equation(
        {parse("2*v1"), parse("4*v"), DiffPoly(0), DiffPoly(1)}, DiffPoly(1));
    CHECK(pvf.lhs == parse("u2 + 3*u*u1 + u^3 + 4*v*u + 2*v1"));
    CHECK(pvf.coefficient_bases == std::vector<std::string>{"v"});

    CHECK(chain_equation({DiffPoly(0), DiffPoly(1)}, DiffPoly(1)).lhs == parse("u"));
    CHECK_THROWS_AS(chain_equation({}, DiffPoly(1)), EmptyCoefficients);
    CHECK_THROWS_AS(chain_equation({parse("x"), DiffPoly(2)}, DiffPoly(1)),
                    std::invalid_argument);
}

TEST_CASE("every identity is the zero polynomial") {
    for (Identity id : all_identities()) {
        INFO(identity_name(id));
        CHECK(check_identity(id).is_zero());
    }
}

TEST_CASE("reflection grading") {
    CHECK(reflect(parse("u1")) == parse("-u1"));
    CHECK(reflect(parse("u*u2")) == parse("u*u2"));
    CHECK(reflect(parse("x*u")) == parse("-x*u"));
    CHECK(reflect(parse("u1^2 + u3")) == parse("u1^2 - u3"));
    // Doubling then reflecting the generalized third-order form lands on
    // -2 times the third chain member.
    DiffPoly t = parse("u3 - 2*u*u2 + 3*u1^2") - rational(1, 8) * parse("(6*u1 - u^2)^2");
    CHECK(reflect(substitute(t, "u", parse("2*u"))) == DiffPoly(-2) * chain(3, 1));
}

TEST_CASE("quotients of vanishing-derivative solutions solve the chain") {
    // y with y^(n+1) = 0 is a polynomial of degree <= n; u = y'/(k y)
    // satisfies the n-th chain equation wherever y is clear of zero.
    const double k = 2.0;
    for (int n = 1; n <= 4; ++n) {
        std::vector<double> coeffs = {1.0, 0.4, -0.3, 0.15, 0.05};
        coeffs.resize(static_cast<std::size_t>(n) + 1);
        FunctionSpec y = FunctionSpec::polynomial(coeffs);
        DiffPoly cn = chain(n, DiffPoly::symbol("k"));
        for (double x : {0.1, 0.5, 1.0, 1.7}) {
            auto yj = y.jet(x, n + 1);
            // u-jets from k u y = y' by repeated Leibniz inversion.
            std::vector<double> uj(static_cast<std::size_t>(n) + 1);
            for (int j = 0; j <= n; ++j) {
                double rhs = yj[static_cast<std::size_t>(j + 1)] / k;
                double binom = 1.0;
                for (int i = 0; i < j; ++i) {
                    rhs -= binom * uj[static_cast<std::size_t>(i)] *
                           yj[static_cast<std::size_t>(j - i)];
                    binom = binom * (j - i) / (i + 1.0);
                }
                uj[static_cast<std::size_t>(j)] = rhs / yj[0];
            }
            std::map<DiffSymbol, double> jet;
            jet[DiffSymbol("x", 0)] = x;
            for (int j = 0; j <= n; ++j)
                jet[DiffSymbol("u", j)] = uj[static_cast<std::size_t>(j)];
            CHECK(std::abs(eval_jet(cn, jet, {{"k", k}})) <= 1e-10);
        }
    }
}

TEST_CASE("fourth-order template carries the full ladder") {
    DiffPoly t = f_xvi_template();
    CHECK(t.coefficient(Monomial(DiffSymbol("u", 4))) == 1);
    CHECK(t.contains_base("A"));
    CHECK(t.contains_base("E"));
    // The A-part is exactly the third chain member.
    DiffPoly a_part;
    for (const auto& [mono, c] : t.terms())
        if (mono.exponent(DiffSymbol("A", 0)) == 1)
            a_part.add_term(mono.without(DiffSymbol("A", 0)), c);
    CHECK(a_part == chain(3, 1));
}

} // TEST_SUITE
