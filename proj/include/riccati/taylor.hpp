#ifndef RICCATI_TAYLOR_HPP
#define RICCATI_TAYLOR_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

namespace riccati {

/// Truncated Taylor series at a point, stored as normalized coefficients
/// a_k = f^(k)/k!. Used to push exact jets through algebraic formulas
/// (quotients, real powers, exp) without finite differences.
class Taylor {
public:
    Taylor(int order, double value = 0.0) : a_(static_cast<std::size_t>(order) + 1, 0.0) {
        a_[0] = value;
    }

    static Taylor from_derivs(const std::vector<double>& derivs) {
        Taylor t(static_cast<int>(derivs.size()) - 1);
        double fact = 1.0;
        for (std::size_t k = 0; k < derivs.size(); ++k) {
            if (k > 1) fact *= static_cast<double>(k);
            t.a_[k] = derivs[k] / (k <= 1 ? 1.0 : fact);
        }
        return t;
    }

    /// The independent variable itself.
    static Taylor variable(double x0, int order) {
        Taylor t(order, x0);
        if (order >= 1) t.a_[1] = 1.0;
        return t;
    }

    int order() const { return static_cast<int>(a_.size()) - 1; }
    double value() const { return a_[0]; }

    /// k-th derivative value.
    double deriv(int k) const {
        double fact = 1.0;
        for (int i = 2; i <= k; ++i) fact *= i;
        return a_[static_cast<std::size_t>(k)] * fact;
    }

    std::vector<double> derivs() const {
        std::vector<double> d(a_.size());
        for (int k = 0; k <= order(); ++k) d[static_cast<std::size_t>(k)] = deriv(k);
        return d;
    }

    friend Taylor operator+(const Taylor& u, const Taylor& v) {
        check_orders(u, v);
        Taylor r = u;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] += v.a_[k];
        return r;
    }
    friend Taylor operator-(const Taylor& u, const Taylor& v) {
        check_orders(u, v);
        Taylor r = u;
        for (std::size_t k = 0; k < r.a_.size(); ++k) r.a_[k] -= v.a_[k];
        return r;
    }
    Taylor operator-() const {
        Taylor r = *this;
        for (double& c : r.a_) c = -c;
        return r;
    }
    friend Taylor operator*(const Taylor& u, const Taylor& v) {
        check_orders(u, v);
        Taylor r(u.order());
        for (int k = 0; k <= r.order(); ++k) {
            double s = 0.0;
            for (int i = 0; i <= k; ++i)
                s += u.a_[static_cast<std::size_t>(i)] * v.a_[static_cast<std::size_t>(k - i)];
            r.a_[static_cast<std::size_t>(k)] = s;
        }
        return r;
    }
    friend Taylor operator*(double s, const Taylor& u) {
        Taylor r = u;
        for (double& c : r.a_) c *= s;
        return r;
    }
    friend Taylor operator+(const Taylor& u, double c) {
        Taylor r = u;
        r.a_[0] += c;
        return r;
    }
    friend Taylor operator-(const Taylor& u, double c) { return u + (-c); }

    friend Taylor operator/(const Taylor& u, const Taylor& v) {
        check_orders(u, v);
        if (v.a_[0] == 0.0) throw std::domain_error("Taylor division by zero value");
        Taylor r(u.order());
        for (int k = 0; k <= r.order(); ++k) {
            double s = u.a_[static_cast<std::size_t>(k)];
            for (int i = 0; i < k; ++i)
                s -= r.a_[static_cast<std::size_t>(i)] * v.a_[static_cast<std::size_t>(k - i)];
            r.a_[static_cast<std::size_t>(k)] = s / v.a_[0];
        }
        return r;
    }

    /// u^alpha for real alpha; requires u(x0) > 0 unless alpha is a
    /// nonnegative integer.
    Taylor pow(double alpha) const {
        double u0 = a_[0];
        bool integer = alpha == std::floor(alpha) && alpha >= 0 && alpha <= 64;
        if (integer) {
            // Repeated multiplication: stable even when the value is near 0.
            Taylor r(order(), 1.0);
            for (int i = 0; i < static_cast<int>(alpha); ++i) r = r * (*this);
            return r;
        }
        if (u0 <= 0.0)
            throw std::domain_error("Taylor power of a nonpositive value");
        Taylor r(order());
        r.a_[0] = std::pow(u0, alpha);
        for (int k = 1; k <= order(); ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j)
                s += (alpha * j - (k - j)) * a_[static_cast<std::size_t>(j)] *
                     r.a_[static_cast<std::size_t>(k - j)];
            r.a_[static_cast<std::size_t>(k)] = s / (static_cast<double>(k) * u0);
        }
        return r;
    }

    Taylor sqrt() const { return pow(0.5); }

    Taylor exp() const {
        Taylor r(order());
        r.a_[0] = std::exp(a_[0]);
        for (int k = 1; k <= order(); ++k) {
            double s = 0.0;
            for (int j = 1; j <= k; ++j)
                s += static_cast<double>(j) * a_[static_cast<std::size_t>(j)] *
                     r.a_[static_cast<std::size_t>(k - j)];
            r.a_[static_cast<std::size_t>(k)] = s / static_cast<double>(k);
        }
        return r;
    }

private:
    static void check_orders(const Taylor& u, const Taylor& v) {
        if (u.a_.size() != v.a_.size())
            throw std::invalid_argument("Taylor operands have different truncation orders");
    }

    std::vector<double> a_;
};

} // namespace riccati

#endif
