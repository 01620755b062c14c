#include "nevlab/analytic/exppoly.hpp"

#include <cmath>

namespace nevlab::analytic {

namespace {

Complex horner(const std::vector<Complex>& c, Complex z)
{
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

} // namespace

ExpPolyFunction::ExpPolyFunction(Complex scale, std::vector<Root> roots, std::vector<Complex> exp_poly)
    : scale_(scale), roots_(std::move(roots)), exp_poly_(std::move(exp_poly))
{
    if (!std::isfinite(scale_.real()) || !std::isfinite(scale_.imag()))
        fail(ErrorKind::Precondition, "non-finite scale");
    for (const auto& r : roots_)
        if (r.multiplicity < 1)
            fail(ErrorKind::Precondition, "root multiplicity must be positive");
    while (!exp_poly_.empty() && exp_poly_.back() == Complex(0.0))
        exp_poly_.pop_back();
}

int ExpPolyFunction::root_degree() const
{
    int d = 0;
    for (const auto& r : roots_)
        d += r.multiplicity;
    return d;
}

Complex ExpPolyFunction::exponent_at(Complex z) const { return horner(exp_poly_, z); }

Complex ExpPolyFunction::exponent_derivative_at(Complex z) const
{
    Complex acc = 0.0;
    for (std::size_t k = exp_poly_.size(); k-- > 1;)
        acc = acc * z + exp_poly_[k] * double(k);
    return acc;
}

LogValue ExpPolyFunction::eval_log(Complex z) const
{
    LogValue v;
    if (is_zero())
        return v;
    const Complex p = exponent_at(z);
    double mag = std::log(std::abs(scale_)) + p.real();
    double ph = std::arg(scale_) + p.imag();
    for (const auto& r : roots_) {
        const Complex w = z - r.location;
        if (w == Complex(0.0))
            return LogValue{};
        mag += r.multiplicity * std::log(std::abs(w));
        ph += r.multiplicity * std::arg(w);
    }
    v.log_magnitude = mag;
    v.phase = std::remainder(ph, 2 * M_PI);
    return v;
}

LogValue eval_log_scale(const ExpPolyFunction& fn, Complex z) { return fn.eval_log(z); }

Complex ExpPolyFunction::value(Complex z) const
{
    const ScaledSample s = sample(z);
    return std::exp(s.log_scale) * s.value;
}

// The root factors are divided by max(1, |z − α|) so the product stays bounded.
ScaledSample ExpPolyFunction::sample(Complex z) const
{
    ScaledSample s;
    if (is_zero()) {
        s.log_scale = 0.0;
        return s;
    }
    const Complex p = exponent_at(z);
    s.log_scale = std::log(std::abs(scale_)) + p.real();
    const Complex unit = std::polar(1.0, std::arg(scale_) + p.imag());
    std::vector<Complex> w(roots_.size());
    Complex prod = 1.0;
    for (std::size_t k = 0; k < roots_.size(); ++k) {
        const Complex d = z - roots_[k].location;
        const double rho = std::max(1.0, std::abs(d));
        s.log_scale += roots_[k].multiplicity * std::log(rho);
        w[k] = d / rho;
        prod *= std::pow(w[k], roots_[k].multiplicity);
    }
    // d/dz Π w_k^{m_k} where w_k = (z − α_k)/ρ_k with ρ_k frozen.
    Complex dprod = 0.0;
    for (std::size_t k = 0; k < roots_.size(); ++k) {
        const int m = roots_[k].multiplicity;
        const double rho = std::max(1.0, std::abs(z - roots_[k].location));
        Complex t = double(m) * std::pow(w[k], m - 1) / rho;
        for (std::size_t l = 0; l < roots_.size(); ++l)
            if (l != k)
                t *= std::pow(w[l], roots_[l].multiplicity);
        dprod += t;
    }
    s.value = unit * prod;
    s.derivative = unit * (dprod + prod * exponent_derivative_at(z));
    return s;
}

Complex ExpPolyFunction::log_derivative(Complex z) const
{
    Complex acc = exponent_derivative_at(z);
    for (const auto& r : roots_)
        acc += double(r.multiplicity) / (z - r.location);
    return acc;
}

std::vector<Complex> ExpPolyFunction::polynomial_part() const
{
    std::vector<Complex> c{scale_};
    for (const auto& r : roots_)
        for (int k = 0; k < r.multiplicity; ++k) {
            std::vector<Complex> next(c.size() + 1, 0.0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] -= c[i] * r.location;
            }
            c = std::move(next);
        }
    return c;
}

ExpPolyFunction operator*(const ExpPolyFunction& a, const ExpPolyFunction& b)
{
    std::vector<Root> roots = a.roots_;
    for (const auto& r : b.roots_) {
        bool merged = false;
        for (auto& q : roots)
            if (q.location == r.location) {
                q.multiplicity += r.multiplicity;
                merged = true;
            }
        if (!merged)
            roots.push_back(r);
    }
    std::vector<Complex> e(std::max(a.exp_poly_.size(), b.exp_poly_.size()), 0.0);
    for (std::size_t k = 0; k < a.exp_poly_.size(); ++k)
        e[k] += a.exp_poly_[k];
    for (std::size_t k = 0; k < b.exp_poly_.size(); ++k)
        e[k] += b.exp_poly_[k];
    return {a.scale_ * b.scale_, std::move(roots), std::move(e)};
}

Complex complex_from_json(const nlohmann::json& j)
{
    if (j.is_number())
        return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2)
        return {j[0].get<double>(), j[1].get<double>()};
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            if (k != "re" && k != "im" && k != "mult")
                fail(ErrorKind::Schema, "unexpected key '" + k + "' in complex number");
        return {j.value("re", 0.0), j.value("im", 0.0)};
    }
    fail(ErrorKind::Schema, "complex number must be a number, [re, im] or {re, im}");
}

nlohmann::json complex_to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ExpPolyFunction exppoly_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        fail(ErrorKind::Schema, "curve component must be an object");
    for (const auto& [k, v] : j.items())
        if (k != "scale" && k != "roots" && k != "exp_poly")
            fail(ErrorKind::Schema, "unexpected key '" + k + "' in curve component");
    const Complex scale = j.contains("scale") ? complex_from_json(j.at("scale")) : Complex(1.0);
    std::vector<Root> roots;
    if (j.contains("roots"))
        for (const auto& r : j.at("roots"))
            roots.push_back({complex_from_json(r), r.is_object() ? r.value("mult", 1) : 1});
    std::vector<Complex> e;
    if (j.contains("exp_poly"))
        for (const auto& c : j.at("exp_poly"))
            e.push_back(complex_from_json(c));
    return {scale, std::move(roots), std::move(e)};
}

nlohmann::json to_json(const ExpPolyFunction& f)
{
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : f.roots())
        roots.push_back({{"re", r.location.real()}, {"im", r.location.imag()}, {"mult", r.multiplicity}});
    nlohmann::json e = nlohmann::json::array();
    for (const auto& c : f.exp_poly())
        e.push_back(complex_to_json(c));
    return {{"scale", complex_to_json(f.scale())}, {"roots", roots}, {"exp_poly", e}};
}

} // namespace nevlab::analytic
