#include "riccati/chain.hpp"

#include <set>

namespace riccati {

DiffPoly chain(int n, const DiffPoly& k) {
    if (n < 0) throw std::invalid_argument("chain order must be nonnegative");
    DiffPoly u = DiffPoly::symbol("u");
    DiffPoly r = u;
    for (int i = 0; i < n; ++i) r = d_total(r) + k * u * r;
    return r;
}

DiffPoly chain(int n, long k) { return chain(n, DiffPoly(k)); }

DiffPoly chain(int n) { return chain(n, DiffPoly::symbol("k")); }

ChainEquation chain_equation(const std::vector<DiffPoly>& coeffs, const DiffPoly& k) {
    if (coeffs.empty()) throw EmptyCoefficients();
    if (coeffs.back() != DiffPoly(1))
        throw std::invalid_argument("the leading coefficient must be the literal 1");
    int n = static_cast<int>(coeffs.size()) - 1;
    ChainEquation eq;
    eq.order = n;
    eq.lhs = coeffs[0];
    for (int j = 1; j <= n; ++j) eq.lhs += coeffs[static_cast<std::size_t>(j)] * chain(j - 1, k);
    std::set<std::string> bases;
    for (const auto& c : coeffs)
        for (const auto& b : c.jet_bases())
            if (b != "u") bases.insert(b);
    eq.coefficient_bases.assign(bases.begin(), bases.end());
    return eq;
}

const std::vector<Identity>& all_identities() {
    static const std::vector<Identity> ids = {Identity::ChazyIV, Identity::ChazyXIISub,
                                              Identity::GenChazyReflect, Identity::FXII,
                                              Identity::CdisAsPvf};
    return ids;
}

std::string identity_name(Identity id) {
    switch (id) {
        case Identity::ChazyIV: return "CHAZY_IV";
        case Identity::ChazyXIISub: return "CHAZY_XII_SUB";
        case Identity::GenChazyReflect: return "GEN_CHAZY_REFLECT";
        case Identity::FXII: return "F_XII";
        case Identity::CdisAsPvf: return "CDIS_AS_PVF";
    }
    throw std::logic_error("unreachable");
}

DiffPoly reflect(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [mono, c] : p.terms()) {
        int parity = mono.weight() + mono.exponent(DiffSymbol("x", 0));
        out.add_term(mono, parity % 2 == 0 ? c : -c);
    }
    return out;
}

DiffPoly third_order_riccati_lhs() {
    DiffPoly u = DiffPoly::symbol("u"), u1 = DiffPoly::symbol("u", 1);
    DiffPoly v = DiffPoly::symbol("v"), v1 = DiffPoly::symbol("v", 1),
             v2 = DiffPoly::symbol("v", 2);
    return chain(3, 1) + DiffPoly(10) * v * u1 + DiffPoly(10) * v * u * u +
           DiffPoly(10) * v1 * u + DiffPoly(9) * v * v + DiffPoly(3) * v2;
}

DiffPoly check_identity(Identity id) {
    switch (id) {
        case Identity::ChazyIV:
            return d_total(chain(2, 1)) - parse("u3 + 3*u*u2 + 3*u1^2 + 3*u^2*u1");
        case Identity::ChazyXIISub: {
            DiffPoly sub = substitute(third_order_riccati_lhs(), "v", parse("u^2"));
            return sub - parse("u3 + 10*u*u2 + 9*u1^2 + 36*u^2*u1 + 20*u^4");
        }
        case Identity::GenChazyReflect: {
            DiffPoly t = parse("u3 - 2*u*u2 + 3*u1^2") -
                         rational(1, 8) * parse("(6*u1 - u^2)^2");
            DiffPoly doubled = substitute(t, "u", parse("2*u"));
            return reflect(doubled) + DiffPoly(2) * chain(3, 1);
        }
        case Identity::FXII:
            return chain(4, 1) - DiffPoly::symbol("u") * chain(3, 1) -
                   parse("u4 + 4*u*u3 + 6*u^2*u2 + 4*u^3*u1 + 12*u*u1^2 + 10*u1*u2");
        case Identity::CdisAsPvf: {
            DiffPoly lhs = parse("f3 + 4*v*f1 + 2*v1*f");
            DiffPoly sub = substitute(lhs, "v", parse("3/2*f*f1 + 1/4*f^4"));
            return sub - parse("f3 + 3*f^2*f2 + 9*f*f1^2 + 3*f^4*f1");
        }
    }
    throw std::logic_error("unreachable");
}

DiffPoly f_xvi_template() {
    DiffPoly out = chain(4, 1);
    const char* names[] = {"A", "B", "C", "D"};
    for (int j = 0; j < 4; ++j)
        out += DiffPoly::symbol(names[j]) * chain(3 - j, 1);
    out += DiffPoly::symbol("E");
    return out;
}

} // namespace riccati
