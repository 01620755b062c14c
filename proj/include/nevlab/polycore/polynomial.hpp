#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nevlab/error.hpp"
#include "nevlab/polycore/scalar.hpp"

namespace nevlab::poly {

using Exponent = std::vector<int>;

inline int exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

namespace detail {

// Neumaier summation on one real component.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x)
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            carry += (sum - t) + x;
        else
            carry += (x - t) + sum;
        sum = t;
    }
    double value() const { return sum + carry; }
};

} // namespace detail

/// Sparse multivariate polynomial; terms are kept in lexicographic exponent order and
/// zero coefficients are never stored.
template <class S>
class Polynomial {
public:
    using Scalar = S;
    using Traits = ScalarTraits<S>;
    using TermMap = std::map<Exponent, S>;

    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const S& c)
    {
        Polynomial p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    static Polynomial variable(int nvars, int i)
    {
        Exponent e(nvars, 0);
        e.at(i) = 1;
        Polynomial p(nvars);
        p.add_term(e, Traits::one());
        return p;
    }

    static Polynomial monomial(const Exponent& e, const S& c)
    {
        Polynomial p(static_cast<int>(e.size()));
        p.add_term(e, c);
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    /// -1 for the zero polynomial.
    int total_degree() const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, exponent_degree(e));
        return d;
    }

    int degree_in(int var) const
    {
        int d = -1;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[var]);
        return d;
    }

    bool is_homogeneous() const
    {
        if (terms_.empty())
            return true;
        const int d = exponent_degree(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& t) { return exponent_degree(t.first) == d; });
    }

    void add_term(const Exponent& e, const S& c)
    {
        if (static_cast<int>(e.size()) != nvars_)
            fail(ErrorKind::DimensionMismatch, "exponent length does not match variable count");
        if (Traits::is_zero(c))
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (Traits::is_zero(it->second))
                terms_.erase(it);
        }
    }

    S coefficient(const Exponent& e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Traits::zero() : it->second;
    }

    /// Lexicographically largest term; precondition: nonzero.
    const std::pair<const Exponent, S>& leading_term() const { return *terms_.rbegin(); }

    Polynomial& operator+=(const Polynomial& o)
    {
        check_vars(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o)
    {
        check_vars(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    Polynomial& operator*=(const S& s)
    {
        if (Traits::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
    friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& [e, c] : r.terms_)
            c = -c;
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        a.check_vars(b);
        Polynomial r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b)
    {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial derivative(int var) const
    {
        if (var < 0 || var >= nvars_)
            fail(ErrorKind::DimensionMismatch, "derivative variable out of range");
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0)
                continue;
            Exponent de = e;
            de[var] -= 1;
            r.add_term(de, c * Traits::from_int(e[var]));
        }
        return r;
    }

    /// Σ c_α x^α. Exact for Gaussian rationals; Neumaier-compensated for doubles.
    S evaluate(std::span<const S> point) const
    {
        if (static_cast<int>(point.size()) != nvars_)
            fail(ErrorKind::DimensionMismatch, "point has " + std::to_string(point.size()) +
                                                   " coordinates, polynomial has " +
                                                   std::to_string(nvars_) + " variables");
        const auto powers = power_table(point);
        if constexpr (Traits::exact) {
            S acc = Traits::zero();
            for (const auto& [e, c] : terms_)
                acc += c * monomial_value(powers, e);
            return acc;
        } else {
            detail::CompensatedSum re, im;
            for (const auto& [e, c] : terms_) {
                const S t = c * monomial_value(powers, e);
                re.add(t.real());
                im.add(t.imag());
            }
            return {re.value(), im.value()};
        }
    }

    double max_coefficient_magnitude() const
    {
        double m = 0.0;
        for (const auto& [e, c] : terms_)
            m = std::max(m, Traits::magnitude(c));
        return m;
    }

    template <class T, class F>
    Polynomial<T> map_coefficients(F&& f) const
    {
        Polynomial<T> r(nvars_);
        for (const auto& [e, c] : terms_)
            r.add_term(e, f(c));
        return r;
    }

private:
    void check_vars(const Polynomial& o) const
    {
        if (o.nvars_ != nvars_)
            fail(ErrorKind::DimensionMismatch, "polynomials live in different variable counts");
    }

    std::vector<std::vector<S>> power_table(std::span<const S> point) const
    {
        std::vector<std::vector<S>> powers(nvars_);
        for (int i = 0; i < nvars_; ++i) {
            const int d = std::max(degree_in(i), 0);
            powers[i].reserve(d + 1);
            powers[i].push_back(Traits::one());
            for (int k = 1; k <= d; ++k)
                powers[i].push_back(powers[i].back() * point[i]);
        }
        return powers;
    }

    static S monomial_value(const std::vector<std::vector<S>>& powers, const Exponent& e)
    {
        S v = Traits::one();
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                v *= powers[i][e[i]];
        return v;
    }

    int nvars_;
    TermMap terms_;
};

/// Form of fixed degree in n+1 variables. The zero form is a valid value (the "zero
/// sentinel") and keeps its nominal degree; hypersurface constructors reject it.
template <class S>
class HomogeneousPolynomial {
public:
    using Scalar = S;

    HomogeneousPolynomial() : poly_(0), degree_(0) {}
    HomogeneousPolynomial(int nvars, int degree) : poly_(nvars), degree_(degree) {}

    /// Throws if `p` mixes degrees. A zero `p` needs an explicit nominal degree.
    explicit HomogeneousPolynomial(Polynomial<S> p, int nominal_degree = -1)
        : poly_(std::move(p)), degree_(nominal_degree)
    {
        if (!poly_.is_zero()) {
            if (!poly_.is_homogeneous())
                fail(ErrorKind::Precondition, "polynomial is not homogeneous");
            const int d = poly_.total_degree();
            if (nominal_degree >= 0 && nominal_degree != d)
                fail(ErrorKind::Precondition, "declared degree " + std::to_string(nominal_degree) +
                                                  " differs from actual degree " +
                                                  std::to_string(d));
            degree_ = d;
        } else if (degree_ < 0) {
            degree_ = 0;
        }
    }

    static HomogeneousPolynomial variable(int nvars, int i)
    {
        return HomogeneousPolynomial(Polynomial<S>::variable(nvars, i));
    }

    int nvars() const { return poly_.nvars(); }
    int degree() const { return degree_; }
    bool is_zero() const { return poly_.is_zero(); }
    const Polynomial<S>& poly() const { return poly_; }
    const typename Polynomial<S>::TermMap& terms() const { return poly_.terms(); }

    S evaluate(std::span<const S> point) const { return poly_.evaluate(point); }

    friend bool operator==(const HomogeneousPolynomial& a, const HomogeneousPolynomial& b)
    {
        return a.degree_ == b.degree_ && a.poly_ == b.poly_;
    }

private:
    Polynomial<S> poly_;
    int degree_;
};

using ExactForm = HomogeneousPolynomial<GaussianRational>;
using FloatForm = HomogeneousPolynomial<Complex>;

// ---------------------------------------------------------------------------
// Operations on forms.

template <class S>
S evaluate(const HomogeneousPolynomial<S>& p, std::span<const S> point)
{
    return p.evaluate(point);
}

/// Degree drops by one; the zero sentinel (nominal degree deg-1) when `var` is absent.
template <class S>
HomogeneousPolynomial<S> partial_derivative(const HomogeneousPolynomial<S>& p, int var)
{
    auto d = p.poly().derivative(var);
    return HomogeneousPolynomial<S>(std::move(d), std::max(p.degree() - 1, 0));
}

template <class S>
HomogeneousPolynomial<S> multiply(const HomogeneousPolynomial<S>& a, const HomogeneousPolynomial<S>& b)
{
    return HomogeneousPolynomial<S>(a.poly() * b.poly(), a.degree() + b.degree());
}

template <class S>
HomogeneousPolynomial<S> power(const HomogeneousPolynomial<S>& p, int k)
{
    Polynomial<S> r = Polynomial<S>::constant(p.nvars(), ScalarTraits<S>::one());
    for (int i = 0; i < k; ++i)
        r = r * p.poly();
    return HomogeneousPolynomial<S>(std::move(r), p.degree() * k);
}

template <class S>
HomogeneousPolynomial<S> scale(const HomogeneousPolynomial<S>& p, const S& s)
{
    return HomogeneousPolynomial<S>(p.poly() * s, p.degree());
}

/// ⟨∇p(x), x⟩ − deg(p)·p(x); vanishes identically by Euler's identity.
template <class S>
S euler_residual(const HomogeneousPolynomial<S>& p, std::span<const S> point)
{
    if (static_cast<int>(point.size()) != p.nvars())
        fail(ErrorKind::DimensionMismatch, "euler_residual: point dimension mismatch");
    S acc = ScalarTraits<S>::zero();
    for (int i = 0; i < p.nvars(); ++i)
        acc += partial_derivative(p, i).evaluate(point) * point[i];
    acc -= ScalarTraits<S>::from_int(p.degree()) * p.evaluate(point);
    return acc;
}

/// Substitutes forms into `outer`: outer(inner_0, …, inner_n).
template <class S>
HomogeneousPolynomial<S> compose(const HomogeneousPolynomial<S>& outer,
                                 std::span<const HomogeneousPolynomial<S>> inner)
{
    if (static_cast<int>(inner.size()) != outer.nvars())
        fail(ErrorKind::DimensionMismatch, "compose: need one inner form per variable");
    const int nv = inner.empty() ? 0 : inner.front().nvars();
    const int d = inner.empty() ? 0 : inner.front().degree();
    for (const auto& q : inner)
        if (q.nvars() != nv || q.degree() != d)
            fail(ErrorKind::DimensionMismatch, "compose: inner forms must share variables and degree");
    std::vector<std::vector<Polynomial<S>>> powers(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const int top = std::max(outer.poly().degree_in(static_cast<int>(i)), 0);
        powers[i].push_back(Polynomial<S>::constant(nv, ScalarTraits<S>::one()));
        for (int k = 1; k <= top; ++k)
            powers[i].push_back(powers[i].back() * inner[i].poly());
    }
    Polynomial<S> r(nv);
    for (const auto& [e, c] : outer.terms()) {
        Polynomial<S> t = Polynomial<S>::constant(nv, c);
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                t = t * powers[i][e[i]];
        r += t;
    }
    return HomogeneousPolynomial<S>(std::move(r), outer.degree() * d);
}

inline FloatForm to_float(const ExactForm& p)
{
    return FloatForm(p.poly().map_coefficients<Complex>([](const GaussianRational& c) { return c.to_complex(); }),
                     p.degree());
}

/// Exact image of a floating form (doubles are dyadic rationals).
inline ExactForm to_exact(const FloatForm& p)
{
    return ExactForm(p.poly().map_coefficients<GaussianRational>(
                         [](const Complex& c) { return GaussianRational::from_complex(c); }),
                     p.degree());
}

/// All exponent vectors of total degree `degree` in `nvars` variables, lexicographic order.
std::vector<Exponent> monomials_of_degree(int nvars, int degree);

} // namespace nevlab::poly
