#ifndef RICCATI_HIERARCHY_HPP
#define RICCATI_HIERARCHY_HPP

#include <vector>

#include "riccati/diffpoly.hpp"

namespace riccati {

/// Gradients g2 = u, g3, ... of the KdV conserved densities, linked by
/// d/dx g_{n+1} = (D^3 + (2/3) u D + (1/3) u1) g_n. Every step is an
/// exact formal integration.
struct GradientSequence {
    std::vector<DiffPoly> gradients;  // gradients[i] is g_{i+2}
    const DiffPoly& g(int n) const;   // n >= 2
};

/// J_1 = u, J_2, ... linked by d/dx J_{n+1} = (D^3 + 4u D + 2u1) J_n.
struct JSequence {
    std::vector<DiffPoly> members;    // members[i] is J_{i+1}
    const DiffPoly& j(int n) const;   // n >= 1
};

/// (D^3 + (2/3) u D + (1/3) u1) applied to p.
DiffPoly gradient_operator(const DiffPoly& p);
/// (D^3 + 4u D + 2u1) applied to p.
DiffPoly j_operator(const DiffPoly& p);

GradientSequence kdv_gradients(int n);
JSequence lenard_j(int n);

/// Substitutes u = v1 - v^2.
DiffPoly miura(const DiffPoly& p);

/// (D + 2v) J_n(v1 - v^2) - x v - beta, expanded in the single variable v.
DiffPoly pii_n(int n, const std::string& beta = "beta");

/// d/dx g_{n+1}: the n-th KdV flow right-hand side.
DiffPoly kdv_flow_rhs(int n);

} // namespace riccati

#endif
