#pragma once

#include <complex>
#include <limits>
#include <vector>

#include "json.hpp"
#include "nevlab/error.hpp"

namespace nevlab::analytic {

using Complex = std::complex<double>;

struct Root {
    Complex location;
    int multiplicity = 1;
};

struct LogValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    double phase = 0.0;
};

// f = exp(s) * value, f' = exp(s) * derivative with s real; s is chosen so that
// |value| stays moderate even when exp(p(z)) would overflow.
struct ScaledSample {
    double log_scale = 0.0;
    Complex value;
    Complex derivative;
};

/// c · Π (z − α_k)^{m_k} · exp(p(z)).
class ExpPolyFunction {
public:
    ExpPolyFunction() = default;
    ExpPolyFunction(Complex scale, std::vector<Root> roots, std::vector<Complex> exp_poly);

    static ExpPolyFunction constant(Complex c) { return {c, {}, {}}; }
    /// exp(a0 + a1 z + ...).
    static ExpPolyFunction exponential(std::vector<Complex> exp_poly) { return {1.0, {}, std::move(exp_poly)}; }
    /// Monic polynomial with the given roots, times c.
    static ExpPolyFunction polynomial(Complex c, std::vector<Root> roots) { return {c, std::move(roots), {}}; }

    Complex scale() const { return scale_; }
    const std::vector<Root>& roots() const { return roots_; }
    const std::vector<Complex>& exp_poly() const { return exp_poly_; }
    bool is_zero() const { return scale_ == Complex(0.0); }
    int root_degree() const;

    /// log|f(z)| and arg f(z) without forming exp(p(z)); −∞ at listed roots.
    LogValue eval_log(Complex z) const;
    /// f(z); overflows for large Re p(z).
    Complex value(Complex z) const;
    ScaledSample sample(Complex z) const;
    /// f'/f = Σ m_k/(z − α_k) + p'(z).
    Complex log_derivative(Complex z) const;
    Complex exponent_at(Complex z) const;
    Complex exponent_derivative_at(Complex z) const;

    /// Power-basis coefficients of c·Π(z − α)^m (ignores the exponential factor).
    std::vector<Complex> polynomial_part() const;

    friend ExpPolyFunction operator*(const ExpPolyFunction& a, const ExpPolyFunction& b);

private:
    Complex scale_{1.0};
    std::vector<Root> roots_;
    std::vector<Complex> exp_poly_;
};

LogValue eval_log_scale(const ExpPolyFunction& fn, Complex z);

Complex complex_from_json(const nlohmann::json& j);
nlohmann::json complex_to_json(Complex z);
ExpPolyFunction exppoly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExpPolyFunction& f);

} // namespace nevlab::analytic
