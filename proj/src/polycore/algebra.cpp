#include "nevlab/polycore/algebra.hpp"

#include <random>

namespace nevlab::poly {

std::vector<Exponent> monomials_of_degree(int nvars, int degree)
{
    std::vector<Exponent> out;
    if (nvars <= 0)
        return out;
    Exponent e(nvars, 0);
    // Enumerate compositions in lexicographic order (first variable varies slowest).
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == nvars - 1) {
            e[var] = remaining;
            out.push_back(e);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[var] = k;
            self(self, var + 1, remaining - k);
        }
    };
    rec(rec, 0, degree);
    return out;
}

namespace {

int main_variable(const ExactPoly& a, const ExactPoly& b)
{
    for (int v = a.nvars() - 1; v >= 0; --v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0)
            return v;
    return -1;
}

// Coefficients of p viewed as a polynomial in x_v; the x_v exponent is zeroed.
std::vector<ExactPoly> coefficients_in(const ExactPoly& p, int v)
{
    std::vector<ExactPoly> out(std::max(p.degree_in(v), 0) + 1, ExactPoly(p.nvars()));
    for (const auto& [e, c] : p.terms()) {
        Exponent f = e;
        f[v] = 0;
        out[e[v]].add_term(f, c);
    }
    return out;
}

ExactPoly leading_coefficient_in(const ExactPoly& p, int v)
{
    const int d = p.degree_in(v);
    ExactPoly out(p.nvars());
    for (const auto& [e, c] : p.terms())
        if (e[v] == d) {
            Exponent f = e;
            f[v] = 0;
            out.add_term(f, c);
        }
    return out;
}

ExactPoly content_in(const ExactPoly& p, int v)
{
    ExactPoly g(p.nvars());
    for (const auto& c : coefficients_in(p, v)) {
        if (c.is_zero())
            continue;
        g = g.is_zero() ? make_monic(c) : gcd(g, c);
        if (g.total_degree() == 0)
            break;
    }
    return g;
}

ExactPoly divide_or_throw(const ExactPoly& a, const ExactPoly& b)
{
    auto q = divide_exact(a, b);
    if (!q)
        fail(ErrorKind::Precondition, "internal: expected exact division");
    return *std::move(q);
}

ExactPoly primitive_part(const ExactPoly& p, int v) { return divide_or_throw(p, content_in(p, v)); }

ExactPoly pseudo_remainder(ExactPoly r, const ExactPoly& b, int v)
{
    const int db = b.degree_in(v);
    const ExactPoly lb = leading_coefficient_in(b, v);
    while (!r.is_zero() && r.degree_in(v) >= db) {
        const int k = r.degree_in(v) - db;
        Exponent shift(r.nvars(), 0);
        shift[v] = k;
        const ExactPoly lr = leading_coefficient_in(r, v) * ExactPoly::monomial(shift, GaussianRational(1));
        r = lb * r - lr * b;
    }
    return r;
}

} // namespace

ExactPoly make_monic(const ExactPoly& p)
{
    if (p.is_zero())
        return p;
    const GaussianRational inv = GaussianRational(1) / p.leading_term().second;
    return p * inv;
}

std::optional<ExactPoly> divide_exact(const ExactPoly& a, const ExactPoly& b)
{
    if (b.is_zero())
        fail(ErrorKind::Precondition, "division by the zero polynomial");
    ExactPoly q(a.nvars());
    ExactPoly r = a;
    const auto& [eb, cb] = b.leading_term();
    while (!r.is_zero()) {
        const auto& [er, cr] = r.leading_term();
        Exponent shift(er.size());
        for (std::size_t i = 0; i < er.size(); ++i) {
            shift[i] = er[i] - eb[i];
            if (shift[i] < 0)
                return std::nullopt;
        }
        const ExactPoly t = ExactPoly::monomial(shift, cr / cb);
        q += t;
        r -= t * b;
    }
    return q;
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b)
{
    if (a.is_zero())
        return make_monic(b);
    if (b.is_zero())
        return make_monic(a);
    const int v = main_variable(a, b);
    if (v < 0)
        return ExactPoly::constant(a.nvars(), GaussianRational(1));
    if (a.degree_in(v) <= 0)
        return gcd(a, content_in(b, v));
    if (b.degree_in(v) <= 0)
        return gcd(content_in(a, v), b);

    const ExactPoly ca = content_in(a, v);
    const ExactPoly cb = content_in(b, v);
    const ExactPoly c = gcd(ca, cb);
    ExactPoly p = divide_or_throw(a, ca);
    ExactPoly q = divide_or_throw(b, cb);
    if (p.degree_in(v) < q.degree_in(v))
        std::swap(p, q);
    for (;;) {
        ExactPoly r = pseudo_remainder(p, q, v);
        if (r.is_zero())
            break;
        if (r.degree_in(v) <= 0) {
            q = ExactPoly::constant(a.nvars(), GaussianRational(1));
            break;
        }
        p = std::move(q);
        q = primitive_part(r, v);
    }
    return make_monic(c * primitive_part(q, v));
}

ExactPoly square_free_part(const ExactPoly& p)
{
    if (p.is_zero() || p.total_degree() <= 0)
        return p;
    ExactPoly g = p;
    for (int v = 0; v < p.nvars(); ++v) {
        g = gcd(g, p.derivative(v));
        if (g.total_degree() == 0)
            break;
    }
    return divide_or_throw(p, g);
}

bool is_square_free(const ExactPoly& p, std::uint64_t seed)
{
    if (p.is_zero())
        return false;
    if (p.total_degree() <= 1)
        return true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> coef(1, 97);
    ExactPoly d(p.nvars());
    for (int v = 0; v < p.nvars(); ++v)
        d += p.derivative(v) * GaussianRational(coef(rng));
    return gcd(p, d).total_degree() == 0;
}

std::vector<ExactPoly> square_free_decomposition(const ExactPoly& p)
{
    if (p.nvars() != 1)
        fail(ErrorKind::DimensionMismatch, "square_free_decomposition expects a univariate polynomial");
    std::vector<ExactPoly> out;
    if (p.is_zero() || p.total_degree() <= 0)
        return out;
    const ExactPoly dp = p.derivative(0);
    const ExactPoly a0 = gcd(p, dp);
    ExactPoly b = divide_or_throw(p, a0);
    ExactPoly c = divide_or_throw(dp, a0);
    ExactPoly d = c - b.derivative(0);
    while (b.total_degree() > 0) {
        const ExactPoly a = gcd(b, d);
        out.push_back(a);
        b = divide_or_throw(b, a);
        c = divide_or_throw(d, a);
        d = c - b.derivative(0);
    }
    return out;
}

namespace {

template <class S>
Polynomial<S> cofactor_det(const std::vector<std::vector<Polynomial<S>>>& m, std::vector<int>& cols, int row,
                           int nvars)
{
    const int n = static_cast<int>(m.size());
    if (row == n)
        return Polynomial<S>::constant(nvars, ScalarTraits<S>::one());
    Polynomial<S> acc(nvars);
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        if (cols[j] < 0)
            continue;
        if (!m[row][j].is_zero()) {
            cols[j] = -1;
            Polynomial<S> minor = cofactor_det(m, cols, row + 1, nvars);
            cols[j] = j;
            Polynomial<S> term = m[row][j] * minor;
            if (sign > 0)
                acc += term;
            else
                acc -= term;
        }
        sign = -sign;
    }
    return acc;
}

} // namespace

template <class S>
HomogeneousPolynomial<S> jacobian_determinant(std::span<const HomogeneousPolynomial<S>> ps)
{
    const int n = static_cast<int>(ps.size());
    int expected = 0;
    for (const auto& p : ps) {
        if (p.nvars() != n)
            fail(ErrorKind::DimensionMismatch, "jacobian_determinant needs n+1 forms in n+1 variables");
        if (p.degree() < 1 || p.is_zero())
            fail(ErrorKind::Precondition, "jacobian_determinant needs nonzero forms of degree >= 1");
        expected += p.degree() - 1;
    }
    std::vector<std::vector<Polynomial<S>>> m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m[i].push_back(ps[i].poly().derivative(j));
    std::vector<int> cols(n);
    for (int j = 0; j < n; ++j)
        cols[j] = j;
    Polynomial<S> det = cofactor_det(m, cols, 0, n);
    HomogeneousPolynomial<S> out(std::move(det), expected);
    if constexpr (!ScalarTraits<S>::exact) {
        if (!out.is_zero() && is_numerically_zero(out))
            return HomogeneousPolynomial<S>(n, expected);
    }
    return out;
}

template HomogeneousPolynomial<GaussianRational>
jacobian_determinant(std::span<const HomogeneousPolynomial<GaussianRational>>);
template HomogeneousPolynomial<Complex> jacobian_determinant(std::span<const HomogeneousPolynomial<Complex>>);

bool is_numerically_zero(const FloatForm& p, std::uint64_t seed, double rel_tol)
{
    if (p.is_zero())
        return true;
    double scale = 0.0;
    for (const auto& [e, c] : p.terms())
        scale += std::abs(c);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    const int count = 2 * p.nvars();
    for (int k = 0; k < count; ++k) {
        std::vector<Complex> x(p.nvars());
        double norm = 0.0;
        for (auto& xi : x) {
            xi = {g(rng), g(rng)};
            norm += std::norm(xi);
        }
        norm = std::sqrt(norm);
        for (auto& xi : x)
            xi /= norm;
        if (std::abs(p.evaluate(x)) > rel_tol * scale)
            return false;
    }
    return true;
}

template <class S>
Hypersurface<S>::Hypersurface(HomogeneousPolynomial<S> poly) : poly_(std::move(poly))
{
    if (poly_.is_zero())
        fail(ErrorKind::Precondition, "the zero form does not define a hypersurface");
    if (poly_.degree() < 1)
        fail(ErrorKind::Precondition, "a nonzero constant form defines the empty set");
    if constexpr (ScalarTraits<S>::exact) {
        if (!is_square_free(poly_.poly()))
            fail(ErrorKind::Precondition, "hypersurface form is not square-free");
    }
}

template class Hypersurface<GaussianRational>;
template class Hypersurface<Complex>;

} // namespace nevlab::poly
