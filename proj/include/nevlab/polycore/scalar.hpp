#pragma once

#include <complex>
#include <string>

#include <gmpxx.h>

namespace nevlab::poly {

using Complex = std::complex<double>;
using Rational = mpq_class;

/// Exact element of Q(i). Both parts are kept in canonical (reduced) form.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}
    GaussianRational(Rational re, Rational im = 0);

    /// Exact conversion: every finite double is a dyadic rational.
    static GaussianRational from_complex(Complex z);
    /// Parses "p/q" or "p" for each part.
    static GaussianRational parse(const std::string& re, const std::string& im);

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    Complex to_complex() const { return {re_.get_d(), im_.get_d()}; }
    GaussianRational conj() const { return {re_, -im_}; }
    Rational norm() const { return re_ * re_ + im_ * im_; }

    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

/// Uniform access to the two coefficient fields used by the polynomial code.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static bool is_zero(const Complex& z) { return z == Complex{0.0, 0.0}; }
    static double magnitude(const Complex& z) { return std::abs(z); }
    static Complex to_complex(const Complex& z) { return z; }
    static Complex from_int(long v) { return {static_cast<double>(v), 0.0}; }
};

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;
    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return {1}; }
    static bool is_zero(const GaussianRational& z) { return z.is_zero(); }
    static double magnitude(const GaussianRational& z) { return std::abs(z.to_complex()); }
    static Complex to_complex(const GaussianRational& z) { return z.to_complex(); }
    static GaussianRational from_int(long v) { return {v}; }
};

/// Best rational approximation of x with denominator at most max_den (continued fractions).
Rational rationalize(double x, long max_den);

} // namespace nevlab::poly
