#ifndef RICCATI_SYMBOL_HPP
#define RICCATI_SYMBOL_HPP

#include <compare>
#include <stdexcept>
#include <string>

namespace riccati {

/// Classification of a jet-space symbol. The total derivative acts
/// differently on each kind: D(x) = 1, D(constant) = 0, and jets of
/// dependent/coefficient symbols shift up one order.
enum class SymbolKind { Independent, Constant, Coefficient, Dependent };

/// Kind assigned to a base name. "x" is the independent variable;
/// k, alpha, beta, sigma and A..E are constants; v and w are coefficient
/// functions; every other name is a dependent variable.
SymbolKind kind_of_base(const std::string& base);

/// A single jet variable: base name plus derivative order.
/// Constants and the independent variable always have order 0.
struct DiffSymbol {
    std::string base;
    int order = 0;
    SymbolKind kind = SymbolKind::Dependent;

    DiffSymbol() = default;
    DiffSymbol(std::string b, int ord);

    bool is_jet() const {
        return kind == SymbolKind::Dependent || kind == SymbolKind::Coefficient;
    }

    /// Canonical symbol order: independent < constants < coefficients
    /// < dependents, then base name, then derivative order.
    friend std::strong_ordering operator<=>(const DiffSymbol& a, const DiffSymbol& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) <=> static_cast<int>(b.kind);
        if (int c = a.base.compare(b.base); c != 0) return c <=> 0;
        return a.order <=> b.order;
    }
    friend bool operator==(const DiffSymbol& a, const DiffSymbol& b) {
        return a.kind == b.kind && a.order == b.order && a.base == b.base;
    }

    std::string str() const;
};

} // namespace riccati

#endif
