#ifndef RICCATI_CHAIN_HPP
#define RICCATI_CHAIN_HPP

#include <string>
#include <vector>

#include "riccati/diffpoly.hpp"

namespace riccati {

struct EmptyCoefficients : std::runtime_error {
    EmptyCoefficients() : std::runtime_error("chain_equation needs at least one coefficient") {}
};

/// Left-hand side of the order reduction of a monic linear ODE: monic in
/// the highest derivative of u.
struct ChainEquation {
    int order = 0;
    DiffPoly lhs;
    std::vector<std::string> coefficient_bases;
};

/// n-th member of the Riccati chain: R^0(u) = u,
/// R^n(u) = D(R^{n-1}(u)) + k*u*R^{n-1}(u).
DiffPoly chain(int n, const DiffPoly& k);
DiffPoly chain(int n, long k);
/// Symbolic k.
DiffPoly chain(int n);

/// a0 + sum_{j=1..n} aj * R^{j-1}(u) for a monic source equation.
/// `coeffs` is a0..an; the last entry must be the literal 1.
ChainEquation chain_equation(const std::vector<DiffPoly>& coeffs, const DiffPoly& k);

enum class Identity { ChazyIV, ChazyXIISub, GenChazyReflect, FXII, CdisAsPvf };

const std::vector<Identity>& all_identities();
std::string identity_name(Identity id);

/// Exact difference polynomial for the named identity; zero when it holds.
DiffPoly check_identity(Identity id);

/// Image under x -> -x: each monomial picks up (-1)^(total derivative
/// order plus the exponent of x).
DiffPoly reflect(const DiffPoly& p);

/// LHS of the cubic-in-u third-order equation obtained by reducing the
/// fourth-order symmetric-power equation with potential v:
/// R^3(u) + 10v(u' + u^2) + 10v'u + 9v^2 + 3v''.
DiffPoly third_order_riccati_lhs();

/// Printable template of the fourth-order family
/// R^4(u) + A*R^3(u) + B*R^2(u) + C*R^1(u) + D*u + E with free A..E.
DiffPoly f_xvi_template();

} // namespace riccati

#endif
