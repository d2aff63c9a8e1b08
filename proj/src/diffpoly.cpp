#include "riccati/diffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace riccati {

SymbolKind kind_of_base(const std::string& base) {
    if (base == "x") return SymbolKind::Independent;
    static const std::set<std::string> constants = {"k",     "alpha", "beta", "sigma",
                                                    "kappa", "A",     "B",    "C",
                                                    "D",     "E"};
    if (constants.count(base)) return SymbolKind::Constant;
    if (base == "v" || base == "w") return SymbolKind::Coefficient;
    return SymbolKind::Dependent;
}

DiffSymbol::DiffSymbol(std::string b, int ord)
    : base(std::move(b)), order(ord), kind(kind_of_base(base)) {
    if (order < 0) throw std::invalid_argument("negative derivative order");
    if (!is_jet() && order != 0)
        throw std::invalid_argument("symbol '" + base + "' cannot carry a derivative order");
}

std::string DiffSymbol::str() const {
    return order == 0 ? base : base + std::to_string(order);
}

Rational rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

MissingSymbol::MissingSymbol(std::vector<std::string> syms)
    : std::runtime_error("unassigned symbols: " + [&] {
          std::string s;
          for (const auto& m : syms) s += (s.empty() ? "" : ", ") + m;
          return s;
      }()),
      missing(std::move(syms)) {}

Monomial::Monomial(const DiffSymbol& s, int exp) {
    if (exp <= 0) throw std::invalid_argument("monomial exponent must be positive");
    factors_[s] = exp;
}

int Monomial::exponent(const DiffSymbol& s) const {
    auto it = factors_.find(s);
    return it == factors_.end() ? 0 : it->second;
}

int Monomial::weight() const {
    int w = 0;
    for (const auto& [s, e] : factors_) w += s.order * e;
    return w;
}

int Monomial::degree() const {
    int d = 0;
    for (const auto& [s, e] : factors_) d += e;
    return d;
}

int Monomial::max_order() const {
    int m = 0;
    for (const auto& [s, e] : factors_)
        if (s.is_jet()) m = std::max(m, s.order);
    return m;
}

Monomial Monomial::times(const Monomial& other) const {
    Monomial out = *this;
    for (const auto& [s, e] : other.factors_) out.factors_[s] += e;
    return out;
}

Monomial Monomial::without(const DiffSymbol& s) const {
    Monomial out = *this;
    auto it = out.factors_.find(s);
    if (it == out.factors_.end()) throw std::logic_error("factor not present");
    if (--it->second == 0) out.factors_.erase(it);
    return out;
}

Monomial Monomial::with_exponent(const DiffSymbol& s, int exp) const {
    Monomial out = *this;
    if (exp == 0)
        out.factors_.erase(s);
    else
        out.factors_[s] = exp;
    return out;
}

bool Monomial::operator<(const Monomial& other) const {
    int wa = weight(), wb = other.weight();
    if (wa != wb) return wa > wb;
    // Walk both factor maps from the highest symbol downward.
    auto ia = factors_.rbegin(), ib = other.factors_.rbegin();
    while (ia != factors_.rend() && ib != other.factors_.rend()) {
        if (ia->first == ib->first) {
            if (ia->second != ib->second) return ia->second > ib->second;
            ++ia, ++ib;
        } else if (ib->first < ia->first) {
            return true;  // this has the higher symbol
        } else {
            return false;
        }
    }
    if (ia != factors_.rend()) return true;
    if (ib != other.factors_.rend()) return false;
    return false;
}

DiffPoly::DiffPoly(const Rational& c) {
    if (c != 0) terms_[Monomial()] = c;
}

DiffPoly::DiffPoly(const Monomial& m, const Rational& c) {
    if (c != 0) terms_[m] = c;
}

DiffPoly DiffPoly::symbol(const std::string& base, int order) {
    return DiffPoly(Monomial(DiffSymbol(base, order)));
}

Rational DiffPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void DiffPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly out;
    for (const auto& [m, c] : terms_) out.terms_[m] = -c;
    return out;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
    return out;
}

DiffPoly DiffPoly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("negative power");
    DiffPoly out = Rational(1);
    for (int i = 0; i < n; ++i) out *= *this;
    return out;
}

int DiffPoly::max_order(const std::string& base) const {
    int m = -1;
    for (const auto& [mono, c] : terms_)
        for (const auto& [s, e] : mono.factors())
            if (s.base == base) m = std::max(m, s.order);
    return m;
}

int DiffPoly::max_jet_order() const {
    int m = -1;
    for (const auto& [mono, c] : terms_)
        for (const auto& [s, e] : mono.factors())
            if (s.is_jet()) m = std::max(m, s.order);
    return m;
}

bool DiffPoly::contains_base(const std::string& base) const {
    return max_order(base) >= 0;
}

std::vector<std::string> DiffPoly::jet_bases() const {
    std::set<std::string> bases;
    for (const auto& [mono, c] : terms_)
        for (const auto& [s, e] : mono.factors())
            if (s.is_jet()) bases.insert(s.base);
    return {bases.begin(), bases.end()};
}

DiffPoly d_total(const DiffPoly& p) {
    DiffPoly out;
    for (const auto& [mono, c] : p.terms()) {
        for (const auto& [s, e] : mono.factors()) {
            if (s.kind == SymbolKind::Constant) continue;
            Monomial rest = mono.with_exponent(s, e - 1);
            Rational coef = c * e;
            if (s.kind == SymbolKind::Independent) {
                out.add_term(rest, coef);
            } else {
                out.add_term(rest.times(Monomial(DiffSymbol(s.base, s.order + 1))), coef);
            }
        }
    }
    return out;
}

DiffPoly d_total(const DiffPoly& p, int times) {
    DiffPoly out = p;
    for (int i = 0; i < times; ++i) out = d_total(out);
    return out;
}

DiffPoly partial(const DiffPoly& p, const DiffSymbol& s) {
    DiffPoly out;
    for (const auto& [mono, c] : p.terms()) {
        int e = mono.exponent(s);
        if (e == 0) continue;
        out.add_term(mono.with_exponent(s, e - 1), c * e);
    }
    return out;
}

DiffPoly substitute(const DiffPoly& p, const std::string& base, const DiffPoly& q) {
    int top = p.max_order(base);
    std::vector<DiffPoly> lifted;
    lifted.reserve(top + 1);
    if (top >= 0) {
        lifted.push_back(q);
        for (int j = 1; j <= top; ++j) lifted.push_back(d_total(lifted.back()));
    }
    DiffPoly out;
    for (const auto& [mono, c] : p.terms()) {
        DiffPoly term(rational(1));
        Monomial untouched;
        for (const auto& [s, e] : mono.factors()) {
            if (s.base == base && s.is_jet()) {
                term *= lifted[static_cast<std::size_t>(s.order)].pow(e);
            } else {
                untouched = untouched.times(Monomial(s, e));
            }
        }
        out += DiffPoly(untouched, c) * term;
    }
    return out;
}

DiffPoly euler(const DiffPoly& p, const std::string& base) {
    int top = p.max_order(base);
    DiffPoly out;
    for (int j = 0; j <= top; ++j) {
        DiffPoly dd = d_total(partial(p, DiffSymbol(base, j)), j);
        if (j % 2 == 0)
            out += dd;
        else
            out -= dd;
    }
    return out;
}

namespace {

// One integration-by-parts step: removes the given term c*M*s_N from p,
// crediting the primitive to q. The term must be linear in s_N.
void strip_leading(DiffPoly& p, DiffPoly& q, const Monomial& mono, const Rational& c,
                   const DiffSymbol& top) {
    Monomial rest = mono.without(top);
    DiffSymbol below(top.base, top.order - 1);
    int e = rest.exponent(below);
    Monomial cand = rest.with_exponent(below, e + 1);
    DiffPoly primitive(cand, c / (e + 1));
    q += primitive;
    p -= d_total(primitive);
}

} // namespace

DiffPoly anti_d(const DiffPoly& p) {
    for (const auto& base : p.jet_bases())
        if (!euler(p, base).is_zero())
            throw NotExact("nonzero Euler image with respect to " + base);

    DiffPoly rem = p, q;
    long guard = 0;
    while (!rem.is_zero()) {
        if (++guard > 200000) throw std::logic_error("anti_d failed to terminate");
        int top_order = rem.max_jet_order();
        if (top_order < 0) {
            // Pure polynomial in x and constants.
            DiffSymbol x("x", 0);
            for (const auto& [mono, c] : rem.terms()) {
                int e = mono.exponent(x);
                q.add_term(mono.with_exponent(x, e + 1), c / (e + 1));
            }
            break;
        }
        if (top_order == 0) throw NotExact("undifferentiated jet terms remain");
        // Highest-ranked jet symbol of maximal order.
        DiffSymbol top;
        bool found = false;
        for (const auto& [mono, c] : rem.terms())
            for (const auto& [s, e] : mono.factors())
                if (s.is_jet() && s.order == top_order && (!found || top < s)) {
                    top = s;
                    found = true;
                }
        // Strip every term containing it.
        bool stripped = false;
        for (const auto& [mono, c] : rem.terms()) {
            if (mono.exponent(top) == 0) continue;
            if (mono.exponent(top) > 1) throw NotExact("nonlinear leading jet");
            if (mono.without(top).max_order() >= top.order)
                throw NotExact("leading jet multiplies another top-order jet");
            strip_leading(rem, q, mono, c, top);
            stripped = true;
            break;  // rem changed; restart the scan
        }
        if (!stripped) throw std::logic_error("anti_d lost its leading symbol");
    }
    return q;
}

double eval_jet(const DiffPoly& p, const std::map<DiffSymbol, double>& jet,
                const std::map<std::string, double>& consts) {
    std::set<std::string> missing;
    double sum = 0.0;
    for (const auto& [mono, c] : p.terms()) {
        double prod = 1.0;
        for (const auto& [s, e] : mono.factors()) {
            double val = 0.0;
            if (s.kind == SymbolKind::Constant) {
                auto it = consts.find(s.base);
                if (it == consts.end()) {
                    auto jt = jet.find(s);
                    if (jt == jet.end()) {
                        missing.insert(s.str());
                        continue;
                    }
                    val = jt->second;
                } else {
                    val = it->second;
                }
            } else {
                auto it = jet.find(s);
                if (it == jet.end()) {
                    missing.insert(s.str());
                    continue;
                }
                val = it->second;
            }
            for (int i = 0; i < e; ++i) prod *= val;
        }
        if (missing.empty()) sum += c.get_d() * prod;
    }
    if (!missing.empty()) throw MissingSymbol({missing.begin(), missing.end()});
    return sum;
}

// ---------------------------------------------------------------------------
// Parsing and printing
// ---------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) { skip_ws(); }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError(pos, "parse error at position " + std::to_string(pos) + ": expected " +
                                  expected);
    }

    bool peek(char c) const { return pos < text.size() && text[pos] == c; }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos;
        skip_ws();
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("'") + c + "'");
    }

    bool at_end() const { return pos >= text.size(); }

    Rational parse_nat() {
        if (at_end() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail("a number");
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        Rational r(mpz_class(text.substr(start, pos - start)));
        skip_ws();
        return r;
    }

    int parse_small_nat() {
        Rational r = parse_nat();
        if (r.get_den() != 1 || !r.get_num().fits_sint_p()) fail("a small natural number");
        return static_cast<int>(r.get_num().get_si());
    }

    DiffPoly parse_atom() {
        if (accept('(')) {
            DiffPoly p = parse_poly();
            expect(')');
            return p;
        }
        if (!at_end() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            Rational num = parse_nat();
            if (accept('/')) {
                Rational den = parse_nat();
                if (den == 0) fail("a nonzero denominator");
                num /= den;
            }
            return DiffPoly(num);
        }
        if (!at_end() && std::isalpha(static_cast<unsigned char>(text[pos]))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
            std::string name = text.substr(start, pos - start);
            int order = 0;
            if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                std::size_t dstart = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
                    ++pos;
                order = std::stoi(text.substr(dstart, pos - dstart));
            }
            skip_ws();
            if (kind_of_base(name) == SymbolKind::Constant && order != 0)
                throw ParseError(start, "constant symbol '" + name +
                                            "' cannot carry a derivative order");
            if (kind_of_base(name) == SymbolKind::Independent && order != 0)
                throw ParseError(start, "the independent variable has no jets");
            return DiffPoly::symbol(name, order);
        }
        fail("a rational, a symbol, or '('");
    }

    DiffPoly parse_factor() {
        DiffPoly base = parse_atom();
        if (accept('^')) return base.pow(parse_small_nat());
        return base;
    }

    DiffPoly parse_term() {
        DiffPoly p = parse_factor();
        while (accept('*')) p *= parse_factor();
        return p;
    }

    DiffPoly parse_poly() {
        bool negate = accept('-');
        DiffPoly p = parse_term();
        if (negate) p = -p;
        while (true) {
            if (accept('+'))
                p += parse_term();
            else if (accept('-'))
                p -= parse_term();
            else
                break;
        }
        return p;
    }
};

std::string rational_str(const Rational& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

std::string monomial_str(const Monomial& m) {
    std::string s;
    for (const auto& [sym, e] : m.factors()) {
        if (!s.empty()) s += "*";
        s += sym.str();
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

} // namespace

DiffPoly parse(const std::string& text) {
    Parser parser(text);
    DiffPoly p = parser.parse_poly();
    if (!parser.at_end()) parser.fail("end of input");
    return p;
}

std::string print(const DiffPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, c] : p.terms()) {
        Rational a = abs(c);
        bool neg = c < 0;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string ms = monomial_str(mono);
        if (ms.empty()) {
            out += rational_str(a);
        } else if (a == 1) {
            out += ms;
        } else {
            out += rational_str(a) + "*" + ms;
        }
    }
    return out;
}

} // namespace riccati
