#include "nevlab/polycore/scalar.hpp"

#include <cmath>

#include "nevlab/error.hpp"

namespace nevlab::poly {

namespace {

Rational parse_rational(const std::string& s)
{
    const auto dot = s.find('.');
    if (dot != std::string::npos && s.find_first_of("eE/") == std::string::npos) {
        // Plain decimal: read exactly as digits / 10^k.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+")
            fail(ErrorKind::Schema, "malformed number '" + s + "'");
        if (digits[0] == '+')
            digits.erase(0, 1);
        mpz_class num, den;
        if (num.set_str(digits, 10) != 0)
            fail(ErrorKind::Schema, "malformed number '" + s + "'");
        mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (s.find_first_of(".eE") != std::string::npos) {
        std::size_t used = 0;
        const double d = std::stod(s, &used);
        if (used != s.size() || !std::isfinite(d))
            fail(ErrorKind::Schema, "malformed number '" + s + "'");
        return Rational(d);
    }
    Rational q;
    if (q.set_str(s, 10) != 0)
        fail(ErrorKind::Schema, "malformed rational '" + s + "'");
    if (q.get_den() == 0)
        fail(ErrorKind::Schema, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

} // namespace

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
}

GaussianRational GaussianRational::from_complex(Complex z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        fail(ErrorKind::Precondition, "non-finite value cannot be made exact");
    return {Rational(z.real()), Rational(z.imag())};
}

GaussianRational GaussianRational::parse(const std::string& re, const std::string& im)
{
    return {parse_rational(re), parse_rational(im)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o)
{
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o)
{
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o)
{
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o)
{
    const Rational n = o.norm();
    if (sgn(n) == 0)
        fail(ErrorKind::Precondition, "division by zero in Q(i)");
    Rational re = (re_ * o.re_ + im_ * o.im_) / n;
    Rational im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

std::string GaussianRational::to_string() const
{
    std::string s = re_.get_str();
    if (sgn(im_) >= 0)
        s += "+";
    s += im_.get_str() + "*i";
    return s;
}

Rational rationalize(double x, long max_den)
{
    const bool neg = x < 0;
    double v = std::abs(x);
    // Convergents h/k of the continued fraction of v.
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double a = std::floor(v);
        const mpz_class ai(a);
        const mpz_class h2 = ai * h1 + h0;
        const mpz_class k2 = ai * k1 + k0;
        if (k2 > max_den)
            break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = v - a;
        if (frac < 1e-15)
            break;
        v = 1.0 / frac;
    }
    if (k1 == 0)
        return Rational(0);
    Rational q(h1, k1);
    q.canonicalize();
    return neg ? Rational(-q) : q;
}

} // namespace nevlab::poly
