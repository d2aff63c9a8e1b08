#include <doctest.h>

#include <cmath>

#include "riccati/painleve.hpp"

using namespace riccati;

TEST_SUITE("painleve") {

TEST_CASE("Airy quotient solves the first-order equation") {
    AiryRiccatiResult res = airy_riccati(1.0, 0.0, 0.0, 2.5, +1, 1e-7);
    CHECK(res.report.pass);
    CHECK(res.trimmed_x1 < 2.5);  // the seed has a root before 2.5
    CHECK(res.u.value(0, 0) == 0.0);
    CHECK_THROWS_AS(airy_riccati(0.0, 1.0, 0.0, 2.0, +1, 1e-7), ZeroDenominator);

    // Sign-flipped seed.
    AiryRiccatiResult flip = airy_riccati(1.0, 0.0, 0.0, 1.5, -1, 1e-7);
    CHECK(flip.report.pass);
}

TEST_CASE("quotient is scale invariant") {
    AiryRiccatiResult a = airy_riccati(1.0, 0.0, 0.0, 2.5, +1, 1e-7);
    AiryRiccatiResult b = airy_riccati(3.0, 0.0, 0.0, 2.5, +1, 1e-7);
    REQUIRE(a.u.size() == b.u.size());
    for (std::size_t i = 0; i < a.u.size(); ++i)
        CHECK(std::abs(a.u.value(i, 0) - b.u.value(i, 0)) <= 1e-9);
}

TEST_CASE("scaling to the normalized second Painleve equation") {
    PiiFromAiryResult res = pii_from_airy(1.0, 0.0, 0.0, 2.5, 1e-6);
    CHECK(res.max_dev <= 1e-6);
    CHECK(res.intermediate.pass);
    CHECK(res.mu_defect <= 1e-12);
    CHECK(res.lambda_mu_defect <= 1e-12);
    CHECK(res.mu == doctest::Approx(std::cbrt(2.0)));
}

TEST_CASE("Hamiltonian flow reproduces the second Painleve equation") {
    PiiProblem prob;
    prob.alpha = 0.0;
    prob.u0 = 0.0;
    prob.w0 = 1.0;
    prob.x1 = 2.0;
    PiiHamResult res = pii_hamiltonian(prob, 1e-6);
    CHECK(res.pii.pass);
    CHECK(res.energy_drift <= 1e-7);
    CHECK(res.hit_pole);  // movable pole near x = 1.7376
    CHECK(res.pole_x == doctest::Approx(1.7376).epsilon(1e-3));
}

TEST_CASE("momentum stays zero on the special branch") {
    PiiProblem prob;
    prob.alpha = -0.5;
    prob.u0 = 0.3;
    prob.w0 = 0.0;
    prob.x1 = 2.0;
    PiiHamResult res = pii_hamiltonian(prob, 1e-6);
    CHECK(res.pii.pass);
    for (std::size_t i = 0; i < res.uw.size(); ++i)
        CHECK(std::abs(res.uw.value(i, 1)) <= 1e-12);
}

TEST_CASE("second-degree relation for h") {
    PiiProblem prob;
    prob.alpha = 0.0;
    prob.u0 = 0.0;
    prob.w0 = 1.0;
    prob.x1 = 2.0;
    PiiHamResult ham = pii_hamiltonian(prob, 1e-6);
    SdPiiResult sd = sd_pii_check(ham.uw, 0.0, 1e-6);
    CHECK(sd.relation.pass);
    CHECK(sd.hf.h1_consistency <= 1e-7);

    // Degenerate branch: alpha = -1/2, w = 0 makes every term vanish.
    PiiProblem deg;
    deg.alpha = -0.5;
    deg.u0 = 0.3;
    deg.w0 = 0.0;
    deg.x1 = 2.0;
    PiiHamResult dham = pii_hamiltonian(deg, 1e-6);
    SdPiiResult dsd = sd_pii_check(dham.uw, -0.5, 1e-12);
    CHECK(dsd.relation.max_abs <= 1e-12);
}

TEST_CASE("recovery from h inverts the pipeline") {
    PiiProblem prob;
    prob.alpha = 0.0;
    prob.u0 = 0.0;
    prob.w0 = 1.0;
    prob.x1 = 2.0;
    PiiHamResult ham = pii_hamiltonian(prob, 1e-6);
    SdPiiResult sd = sd_pii_check(ham.uw, 0.0, 1e-6);
    SdPiiRecoverResult rec = sd_pii_recover(sd.hf, 1e-6);
    CHECK(rec.max_du <= 1e-6);
    CHECK(rec.max_dw <= 1e-9);  // w = -2h' is definitional
    CHECK(rec.hamilton_eqs.pass);
    // The x/2 variant of the recovery formula disagrees away from x = 1.
    CHECK(rec.alt_formula_mismatch > 1e-3);
}

TEST_CASE("Hill equation built from h") {
    PiiProblem prob;
    prob.alpha = 0.0;
    prob.u0 = 0.0;
    prob.w0 = 1.0;
    prob.x1 = 2.0;
    PiiHamResult ham = pii_hamiltonian(prob, 1e-6);
    HFunction hf = h_function(ham.uw, 0.0);
    HillFromHResult pos = hill_from_h(hf, 1e-6);
    CHECK(pos.report.pass);
    CHECK(pos.quotient_dev <= 1e-7);

    HillFromHResult neg = hill_from_h(hf, 1e-6, 0.1);
    CHECK(neg.report.max_abs > 1e-2);

    // Degenerate branch: h' = 0 and the potential reduces to x/2.
    PiiProblem deg;
    deg.alpha = -0.5;
    deg.u0 = 0.3;
    deg.w0 = 0.0;
    deg.x1 = 2.0;
    PiiHamResult dham = pii_hamiltonian(deg, 1e-6);
    HFunction dhf = h_function(dham.uw, -0.5);
    HillFromHResult dres = hill_from_h(dhf, 1e-7);
    CHECK(dres.report.pass);
}

TEST_CASE("residual shrinks with the tolerance ladder") {
    PiiProblem prob;
    prob.alpha = 0.0;
    prob.u0 = 0.0;
    prob.w0 = 1.0;
    prob.x1 = 1.4;
    std::vector<double> residuals;
    for (double rtol : {1e-6, 1e-8, 1e-10}) {
        IntegrateOptions o;
        o.rtol = rtol;
        o.atol = rtol * 1e-2;
        PiiHamResult res = pii_hamiltonian(prob, 1.0, o);
        SdPiiResult sd = sd_pii_check(res.uw, 0.0, 1.0, /*quadrature_h=*/true);
        residuals.push_back(sd.relation.max_abs);
    }
    CHECK(residuals[1] < residuals[0]);
    CHECK(residuals[2] < residuals[1]);
}

} // TEST_SUITE
