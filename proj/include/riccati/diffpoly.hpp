#ifndef RICCATI_DIFFPOLY_HPP
#define RICCATI_DIFFPOLY_HPP

#include <gmpxx.h>

#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "riccati/symbol.hpp"

namespace riccati {

using Rational = mpq_class;

/// num/den with automatic canonicalization.
Rational rational(long num, long den = 1);

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(std::size_t pos, const std::string& what)
        : std::runtime_error(what), position(pos) {}
};

struct NotExact : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingSymbol : std::runtime_error {
    std::vector<std::string> missing;
    explicit MissingSymbol(std::vector<std::string> syms);
};

/// Product of jet symbols with positive integer exponents.
/// Zero exponents are never stored; the empty monomial is 1.
class Monomial {
public:
    using Map = std::map<DiffSymbol, int>;

    Monomial() = default;
    explicit Monomial(const DiffSymbol& s, int exp = 1);

    const Map& factors() const { return factors_; }
    bool empty() const { return factors_.empty(); }
    int exponent(const DiffSymbol& s) const;

    /// Sum of derivative orders, counted with exponent multiplicity.
    int weight() const;
    /// Sum of exponents.
    int degree() const;
    int max_order() const;

    Monomial times(const Monomial& other) const;
    /// Removes one power of s; throws if absent.
    Monomial without(const DiffSymbol& s) const;
    Monomial with_exponent(const DiffSymbol& s, int exp) const;

    bool operator==(const Monomial& other) const { return factors_ == other.factors_; }

    /// Term precedence used for canonical printing and map ordering:
    /// higher weight first, ties broken by comparing exponents from the
    /// highest symbol downward (larger exponent on a higher symbol wins).
    bool operator<(const Monomial& other) const;

private:
    Map factors_;
};

/// Exact differential polynomial: finite sum of rational-coefficient
/// monomials in jet variables, kept in canonical form at all times, so
/// structural equality is mathematical equality.
class DiffPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    DiffPoly() = default;
    DiffPoly(const Rational& c);                   // NOLINT(google-explicit-constructor)
    DiffPoly(long c) : DiffPoly(rational(c)) {}    // NOLINT(google-explicit-constructor)
    explicit DiffPoly(const Monomial& m, const Rational& c = 1);

    static DiffPoly symbol(const std::string& base, int order = 0);
    static DiffPoly zero() { return DiffPoly(); }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    Rational coefficient(const Monomial& m) const;

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& other);
    DiffPoly& operator-=(const DiffPoly& other);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly& operator*=(const DiffPoly& other) { return *this = *this * other; }
    DiffPoly pow(int n) const;

    bool operator==(const DiffPoly& other) const { return terms_ == other.terms_; }

    /// Largest derivative order of any jet of `base` present, or -1.
    int max_order(const std::string& base) const;
    /// Largest derivative order over all jet symbols, or -1 if jet-free.
    int max_jet_order() const;
    bool contains_base(const std::string& base) const;
    std::vector<std::string> jet_bases() const;

    void add_term(const Monomial& m, const Rational& c);

private:
    TermMap terms_;
};

/// Total derivative: Leibniz rule with D(u_j) = u_{j+1}, D(v_j) = v_{j+1},
/// D(x) = 1, D(constant) = 0.
DiffPoly d_total(const DiffPoly& p);
DiffPoly d_total(const DiffPoly& p, int times);

/// Partial derivative with respect to a single jet symbol.
DiffPoly partial(const DiffPoly& p, const DiffSymbol& s);

/// Replaces every jet base_j in p by d_total^j(q). The pass is
/// simultaneous: q is fixed before substitution, so q may mention base.
DiffPoly substitute(const DiffPoly& p, const std::string& base, const DiffPoly& q);

/// Variational derivative sum_j (-D)^j (dp/d base_j).
DiffPoly euler(const DiffPoly& p, const std::string& base);

/// Formal integral: q with d_total(q) = p, no additive constant.
/// Succeeds iff the Euler image of p vanishes for every jet base
/// (that equivalence is the correctness oracle); throws NotExact otherwise.
DiffPoly anti_d(const DiffPoly& p);

/// Floating evaluation; exact coefficients are converted to double last.
/// Jets (and x) are looked up in `jet`, constants in `consts`.
double eval_jet(const DiffPoly& p, const std::map<DiffSymbol, double>& jet,
                const std::map<std::string, double>& consts = {});

/// Grammar:
///   poly   := '-'? term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' NAT)?
///   atom   := RATIONAL | SYMBOL | '(' poly ')'
///   SYMBOL := NAME DIGITS?   (trailing digits are the derivative order)
///   RATIONAL := NAT ('/' POSNAT)?
DiffPoly parse(const std::string& text);
std::string print(const DiffPoly& p);

} // namespace riccati

#endif
