#include <doctest.h>

#include "property_support.hpp"
#include "riccati/diffpoly.hpp"

using namespace riccati;
using riccati::testing::random_poly;

TEST_SUITE("diffpoly") {

TEST_CASE("total derivative basics") {
    CHECK(d_total(parse("1/2*u^2")) == parse("u*u1"));
    CHECK(d_total(parse("k")).is_zero());
    CHECK(d_total(parse("x*u")) == parse("u + x*u1"));
    CHECK(d_total(parse("x^3")) == parse("3*x^2"));
    CHECK(d_total(parse("v*u")) == parse("v1*u + v*u1"));
}

TEST_CASE("substitute") {
    CHECK(substitute(parse("v1"), "v", parse("u^2")) == parse("2*u*u1"));
    CHECK(substitute(parse("u2"), "u", parse("v1 - v^2")) ==
          parse("v3 - 2*v1^2 - 2*v*v2"));
    // Simultaneous pass: q may mention the substituted base.
    CHECK(substitute(parse("u1 + u"), "u", parse("u^2")) == parse("2*u*u1 + u^2"));
    CHECK(substitute(parse("f3 + 4*v*f1 + 2*v1*f"), "v", parse("3/2*f*f1 + 1/4*f^4")) ==
          parse("f3 + 3*f^2*f2 + 9*f*f1^2 + 3*f^4*f1"));
}

TEST_CASE("euler operator") {
    CHECK(euler(parse("1/6*u^3 - 1/2*u1^2"), "u") == parse("1/2*u^2 + u2"));
    CHECK(euler(parse("u*u1"), "u").is_zero());
    CHECK(euler(parse("u"), "u") == parse("1"));
    CHECK(euler(parse("u1^2"), "u") == parse("-2*u2"));
}

TEST_CASE("anti_d examples") {
    CHECK(anti_d(parse("u*u1")) == parse("1/2*u^2"));
    CHECK(anti_d(parse("u3 + 6*u*u1")) == parse("u2 + 3*u^2"));
    CHECK(d_total(anti_d(parse("u3 + 6*u*u1"))) == parse("u3 + 6*u*u1"));
    CHECK_THROWS_AS(anti_d(parse("u1^2")), NotExact);
    CHECK(anti_d(parse("x*u1 + u")) == parse("x*u"));
    CHECK(anti_d(parse("x^2")) == parse("1/3*x^3"));
}

TEST_CASE("eval_jet examples") {
    std::map<DiffSymbol, double> jet = {{DiffSymbol("u", 0), 2.0}, {DiffSymbol("v", 0), 3.0}};
    CHECK(eval_jet(parse("u^2 + v"), jet) == doctest::Approx(7.0));
    std::map<DiffSymbol, double> jet2 = {{DiffSymbol("x", 0), 0.0}, {DiffSymbol("u", 1), 5.0}};
    CHECK(eval_jet(parse("x*u1"), jet2) == doctest::Approx(0.0));
    std::map<DiffSymbol, double> jet3 = {{DiffSymbol("u", 0), 2.0}};
    CHECK(eval_jet(parse("k^2*u^3"), jet3, {{"k", 0.5}}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(eval_jet(parse("u*w"), jet3, {}), MissingSymbol);
}

TEST_CASE("parse and print") {
    CHECK(print(parse("u1+u^2+x")) == "u1 + u^2 + x");
    CHECK(print(parse("u2 + 3*k*u*u1 + k^2*u^3")) == "u2 + 3*k*u*u1 + k^2*u^3");
    CHECK(print(DiffPoly::zero()) == "0");
    CHECK(print(parse("-2*u2")) == "-2*u2");
    CHECK(parse("(u1 + u)^2") == parse("u1^2 + 2*u*u1 + u^2"));
    CHECK_THROWS_AS(parse("u1 + + u"), ParseError);
    CHECK_THROWS_AS(parse("u1 +"), ParseError);
    CHECK_THROWS_AS(parse("k2"), ParseError);
    CHECK_THROWS_AS(parse("x1"), ParseError);
    try {
        parse("u1 + + u");
    } catch (const ParseError& pe) {
        CHECK(pe.position == 5);
    }
}

TEST_CASE("ring axioms, derivation, exactness, round trip: 1000 cases each") {
    Rng rng(2024);
    int exact_seen = 0, inexact_seen = 0;
    for (int i = 0; i < 1000; ++i) {
        DiffPoly p = random_poly(rng);
        DiffPoly q = random_poly(rng);
        DiffPoly r = random_poly(rng);

        CHECK(p + q - q == p);
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);

        CHECK(d_total(p * q) == d_total(p) * q + p * d_total(q));

        // Euler annihilates derivatives of u-jet polynomials.
        riccati::testing::PolyGenOptions ujets;
        ujets.allow_x = false;
        ujets.allow_constants = false;
        DiffPoly s = random_poly(rng, ujets);
        CHECK(euler(d_total(s), "u").is_zero());

        // anti_d succeeds exactly when every Euler image vanishes.
        DiffPoly candidate = (i % 2 == 0) ? d_total(random_poly(rng)) : random_poly(rng);
        bool euler_zero = true;
        for (const auto& base : candidate.jet_bases())
            if (!euler(candidate, base).is_zero()) euler_zero = false;
        bool succeeded = true;
        DiffPoly integral;
        try {
            integral = anti_d(candidate);
        } catch (const NotExact&) {
            succeeded = false;
        }
        CHECK(succeeded == euler_zero);
        if (succeeded) {
            CHECK(d_total(integral) == candidate);
            ++exact_seen;
        } else {
            ++inexact_seen;
        }

        // Canonical text round trip.
        CHECK(parse(print(p)) == p);
        CHECK(print(parse(print(p))) == print(p));
    }
    CHECK(exact_seen > 100);
    CHECK(inexact_seen > 100);
}

TEST_CASE("canonical ordering is total") {
    // Equal-weight monomials order by exponents from the highest symbol down.
    DiffPoly p = parse("u*u2 + u1^2 + u^2*u1 + u^4 + x");
    CHECK(print(p) == "u*u2 + u1^2 + u^2*u1 + u^4 + x");
}

} // TEST_SUITE
