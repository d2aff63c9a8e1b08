#ifndef RICCATI_FUNCSPEC_HPP
#define RICCATI_FUNCSPEC_HPP

#include <string>
#include <utility>
#include <vector>

namespace riccati {

/// Closed-form coefficient function with exact derivatives of any order.
/// Text forms: "const:c", "affine:a,b" (a*x+b), "poly:c0,c1,...",
/// "trig:a0;a1,b1;a2,b2@omega" (omega optional, default 1), meaning
/// a0 + sum_j aj*cos(j*omega*x) + bj*sin(j*omega*x).
class FunctionSpec {
public:
    enum class Kind { Constant, Affine, Polynomial, Trig };

    FunctionSpec() = default;  // the zero function

    static FunctionSpec constant(double c);
    static FunctionSpec affine(double a, double b);
    static FunctionSpec polynomial(std::vector<double> coeffs);
    static FunctionSpec trig(double a0, std::vector<std::pair<double, double>> harmonics,
                             double omega = 1.0);

    static FunctionSpec parse(const std::string& text);
    std::string to_text() const;

    Kind kind() const { return kind_; }

    double operator()(double x) const { return eval(x); }
    double eval(double x) const;

    /// Derivatives f(x), f'(x), ..., f^(m)(x); exact closed forms.
    std::vector<double> jet(double x, int m) const;

    /// The derivative as a new spec; every kind is closed under d/dx.
    FunctionSpec deriv() const;
    FunctionSpec scaled(double s) const;

private:
    Kind kind_ = Kind::Constant;
    std::vector<double> coeffs_ = {0.0};                 // Constant/Affine/Polynomial
    double a0_ = 0.0;                                    // Trig
    std::vector<std::pair<double, double>> harmonics_;   // Trig (cos, sin) per overtone
    double omega_ = 1.0;
};

} // namespace riccati

#endif
