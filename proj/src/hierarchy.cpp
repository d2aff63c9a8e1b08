#include "riccati/hierarchy.hpp"

namespace riccati {

const DiffPoly& GradientSequence::g(int n) const {
    if (n < 2 || n - 2 >= static_cast<int>(gradients.size()))
        throw std::out_of_range("gradient index");
    return gradients[static_cast<std::size_t>(n - 2)];
}

const DiffPoly& JSequence::j(int n) const {
    if (n < 1 || n - 1 >= static_cast<int>(members.size()))
        throw std::out_of_range("J index");
    return members[static_cast<std::size_t>(n - 1)];
}

DiffPoly gradient_operator(const DiffPoly& p) {
    DiffPoly u = DiffPoly::symbol("u"), u1 = DiffPoly::symbol("u", 1);
    return d_total(p, 3) + rational(2, 3) * u * d_total(p) + rational(1, 3) * u1 * p;
}

DiffPoly j_operator(const DiffPoly& p) {
    DiffPoly u = DiffPoly::symbol("u"), u1 = DiffPoly::symbol("u", 1);
    return d_total(p, 3) + DiffPoly(4) * u * d_total(p) + DiffPoly(2) * u1 * p;
}

GradientSequence kdv_gradients(int n) {
    if (n < 2) throw std::invalid_argument("need n >= 2");
    GradientSequence seq;
    seq.gradients.push_back(DiffPoly::symbol("u"));
    while (static_cast<int>(seq.gradients.size()) < n - 1)
        seq.gradients.push_back(anti_d(gradient_operator(seq.gradients.back())));
    return seq;
}

JSequence lenard_j(int n) {
    if (n < 1) throw std::invalid_argument("need n >= 1");
    JSequence seq;
    seq.members.push_back(DiffPoly::symbol("u"));
    while (static_cast<int>(seq.members.size()) < n)
        seq.members.push_back(anti_d(j_operator(seq.members.back())));
    return seq;
}

DiffPoly miura(const DiffPoly& p) {
    return substitute(p, "u", parse("v1 - v^2"));
}

DiffPoly pii_n(int n, const std::string& beta) {
    DiffPoly jn = miura(lenard_j(n).j(n));
    DiffPoly v = DiffPoly::symbol("v");
    return d_total(jn) + DiffPoly(2) * v * jn - DiffPoly::symbol("x") * v -
           DiffPoly::symbol(beta);
}

DiffPoly kdv_flow_rhs(int n) {
    return d_total(kdv_gradients(n + 1).g(n + 1));
}

} // namespace riccati
