#include "riccati/funcspec.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace riccati {

namespace {

std::vector<double> split_doubles(const std::string& s, char sep) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string piece;
    while (std::getline(ss, piece, sep)) {
        if (piece.empty()) throw std::invalid_argument("empty number in FunctionSpec: " + s);
        std::size_t used = 0;
        out.push_back(std::stod(piece, &used));
        if (used != piece.size()) throw std::invalid_argument("bad number '" + piece + "'");
    }
    return out;
}

std::string join_doubles(const std::vector<double>& v, char sep) {
    std::ostringstream ss;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) ss << sep;
        ss << v[i];
    }
    return ss.str();
}

} // namespace

FunctionSpec FunctionSpec::constant(double c) {
    FunctionSpec f;
    f.kind_ = Kind::Constant;
    f.coeffs_ = {c};
    return f;
}

FunctionSpec FunctionSpec::affine(double a, double b) {
    FunctionSpec f;
    f.kind_ = Kind::Affine;
    f.coeffs_ = {a, b};
    return f;
}

FunctionSpec FunctionSpec::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) coeffs.push_back(0.0);
    FunctionSpec f;
    f.kind_ = Kind::Polynomial;
    f.coeffs_ = std::move(coeffs);
    return f;
}

FunctionSpec FunctionSpec::trig(double a0, std::vector<std::pair<double, double>> harmonics,
                                double omega) {
    FunctionSpec f;
    f.kind_ = Kind::Trig;
    f.a0_ = a0;
    f.harmonics_ = std::move(harmonics);
    f.omega_ = omega;
    return f;
}

FunctionSpec FunctionSpec::parse(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("FunctionSpec needs a 'kind:' prefix: " + text);
    std::string kind = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    if (kind == "const") {
        auto v = split_doubles(rest, ',');
        if (v.size() != 1) throw std::invalid_argument("const:c takes one value");
        return constant(v[0]);
    }
    if (kind == "affine") {
        auto v = split_doubles(rest, ',');
        if (v.size() != 2) throw std::invalid_argument("affine:a,b takes two values");
        return affine(v[0], v[1]);
    }
    if (kind == "poly") return polynomial(split_doubles(rest, ','));
    if (kind == "trig") {
        double omega = 1.0;
        auto at = rest.find('@');
        if (at != std::string::npos) {
            omega = std::stod(rest.substr(at + 1));
            rest = rest.substr(0, at);
        }
        std::stringstream ss(rest);
        std::string piece;
        std::vector<std::string> groups;
        while (std::getline(ss, piece, ';')) groups.push_back(piece);
        if (groups.empty()) throw std::invalid_argument("trig needs at least a0");
        double a0 = std::stod(groups[0]);
        std::vector<std::pair<double, double>> harm;
        for (std::size_t i = 1; i < groups.size(); ++i) {
            auto pair = split_doubles(groups[i], ',');
            if (pair.size() != 2)
                throw std::invalid_argument("trig harmonics are 'aj,bj' pairs");
            harm.emplace_back(pair[0], pair[1]);
        }
        return trig(a0, std::move(harm), omega);
    }
    throw std::invalid_argument("unknown FunctionSpec kind '" + kind + "'");
}

std::string FunctionSpec::to_text() const {
    std::ostringstream ss;
    switch (kind_) {
        case Kind::Constant: ss << "const:" << coeffs_[0]; break;
        case Kind::Affine: ss << "affine:" << coeffs_[0] << "," << coeffs_[1]; break;
        case Kind::Polynomial: ss << "poly:" << join_doubles(coeffs_, ','); break;
        case Kind::Trig:
            ss << "trig:" << a0_;
            for (const auto& [a, b] : harmonics_) ss << ";" << a << "," << b;
            if (omega_ != 1.0) ss << "@" << omega_;
            break;
    }
    return ss.str();
}

double FunctionSpec::eval(double x) const { return jet(x, 0)[0]; }

std::vector<double> FunctionSpec::jet(double x, int m) const {
    std::vector<double> out(static_cast<std::size_t>(m) + 1, 0.0);
    switch (kind_) {
        case Kind::Constant: out[0] = coeffs_[0]; break;
        case Kind::Affine:
            out[0] = coeffs_[0] * x + coeffs_[1];
            if (m >= 1) out[1] = coeffs_[0];
            break;
        case Kind::Polynomial: {
            // Horner for each derivative order.
            int d = static_cast<int>(coeffs_.size()) - 1;
            for (int j = 0; j <= m && j <= d; ++j) {
                double acc = 0.0;
                for (int i = d; i >= j; --i) {
                    double fall = 1.0;
                    for (int t = 0; t < j; ++t) fall *= i - t;
                    acc = acc * x + coeffs_[static_cast<std::size_t>(i)] * fall;
                }
                out[static_cast<std::size_t>(j)] = acc;
            }
            break;
        }
        case Kind::Trig: {
            out[0] = a0_;
            for (std::size_t h = 0; h < harmonics_.size(); ++h) {
                double w = (static_cast<double>(h) + 1.0) * omega_;
                double c = harmonics_[h].first, s = harmonics_[h].second;
                double cx = std::cos(w * x), sx = std::sin(w * x);
                for (int j = 0; j <= m; ++j) {
                    out[static_cast<std::size_t>(j)] += c * cx + s * sx;
                    // d/dx (c cos + s sin) = (s w) cos + (-c w) sin
                    double cn = s * w, sn = -c * w;
                    c = cn;
                    s = sn;
                }
            }
            break;
        }
    }
    return out;
}

FunctionSpec FunctionSpec::deriv() const {
    switch (kind_) {
        case Kind::Constant: return constant(0.0);
        case Kind::Affine: return constant(coeffs_[0]);
        case Kind::Polynomial: {
            std::vector<double> d;
            for (std::size_t i = 1; i < coeffs_.size(); ++i)
                d.push_back(coeffs_[i] * static_cast<double>(i));
            return polynomial(std::move(d));
        }
        case Kind::Trig: {
            std::vector<std::pair<double, double>> harm;
            for (std::size_t h = 0; h < harmonics_.size(); ++h) {
                double w = (static_cast<double>(h) + 1.0) * omega_;
                harm.emplace_back(harmonics_[h].second * w, -harmonics_[h].first * w);
            }
            return trig(0.0, std::move(harm), omega_);
        }
    }
    throw std::logic_error("unreachable");
}

FunctionSpec FunctionSpec::scaled(double s) const {
    switch (kind_) {
        case Kind::Constant: return constant(s * coeffs_[0]);
        case Kind::Affine: return affine(s * coeffs_[0], s * coeffs_[1]);
        case Kind::Polynomial: {
            std::vector<double> c = coeffs_;
            for (double& v : c) v *= s;
            return polynomial(std::move(c));
        }
        case Kind::Trig: {
            auto harm = harmonics_;
            for (auto& [a, b] : harm) {
                a *= s;
                b *= s;
            }
            return trig(s * a0_, std::move(harm), omega_);
        }
    }
    throw std::logic_error("unreachable");
}

} // namespace riccati
