#include <Eigen/Dense>

#include "doctest.h"
#include "nevlab/polycore/algebra.hpp"
#include "nevlab/polycore/io.hpp"
#include "nevlab/polycore/resultant.hpp"
#include "support.hpp"

using namespace nevlab::poly;
using namespace testsupport;

namespace {

// Term-by-term evaluation in exact arithmetic, rounded at the end.
Complex exact_oracle(const FloatForm& p, const std::vector<Complex>& x)
{
    GaussianRational acc;
    for (const auto& [e, c] : p.terms()) {
        GaussianRational t = GaussianRational::from_complex(c);
        for (std::size_t i = 0; i < e.size(); ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= GaussianRational::from_complex(x[i]);
        acc += t;
    }
    return acc.to_complex();
}

std::vector<Complex> roots_of(std::vector<Complex> c) // c[k] x^k
{
    while (c.size() > 1 && std::abs(c.back()) < 1e-14)
        c.pop_back();
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1)
        return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i)
        comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i)
        comp(i, n - 1) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

// Coefficients in y of p(x, y, 1).
std::vector<Complex> coeffs_in_y(const FloatForm& p, Complex x)
{
    std::vector<Complex> c(p.degree() + 1);
    for (const auto& [e, v] : p.terms())
        c[e[1]] += v * std::pow(x, e[0]);
    return c;
}

Complex sylvester(const std::vector<Complex>& a, const std::vector<Complex>& b)
{
    const int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k)
            s(r, r + k) = a[m - k];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s(n + r, r + k) = b[n - k];
    return s.determinant();
}

// Smallest normalized |F2| over the affine common zeros of F0, F1 after a random
// change of coordinates; elimination by a univariate Sylvester resultant.
double elimination_oracle(const std::vector<FloatForm>& fs, std::mt19937_64& rng)
{
    std::vector<FloatForm> lin;
    for (int i = 0; i < 3; ++i)
        lin.push_back(random_float_form(rng, 3, 1));
    std::vector<FloatForm> g;
    for (const auto& f : fs)
        g.push_back(compose<Complex>(f, lin));
    const int K = g[0].degree() * g[1].degree() + 1;
    std::vector<Complex> vals(K);
    for (int k = 0; k < K; ++k) {
        const Complex x = std::polar(1.0, 2 * M_PI * k / K);
        vals[k] = sylvester(coeffs_in_y(g[0], x), coeffs_in_y(g[1], x));
    }
    std::vector<Complex> rc(K);
    for (int j = 0; j < K; ++j) {
        for (int k = 0; k < K; ++k)
            rc[j] += vals[k] * std::polar(1.0, -2 * M_PI * j * k / K);
        rc[j] /= double(K);
    }
    double best = 1e300;
    for (const Complex x : roots_of(rc)) {
        for (const Complex y : roots_of(coeffs_in_y(g[0], x))) {
            const std::vector<Complex> pt{x, y, 1.0};
            const double nrm = std::sqrt(std::norm(x) + std::norm(y) + 1.0);
            const double r1 = std::abs(g[1].evaluate(pt)) / std::pow(nrm, g[1].degree()) /
                              g[1].poly().max_coefficient_magnitude();
            if (r1 > 1e-6)
                continue;
            const double r2 = std::abs(g[2].evaluate(pt)) / std::pow(nrm, g[2].degree()) /
                              g[2].poly().max_coefficient_magnitude();
            best = std::min(best, r2);
        }
    }
    return best;
}

// Random exact form with a planted zero at the integer point p (p[2] != 0).
ExactForm planted(std::mt19937_64& rng, int degree, const std::vector<GaussianRational>& p)
{
    ExactForm q = random_exact_form(rng, 3, degree);
    const GaussianRational v = q.evaluate(p);
    Exponent e(3, 0);
    e[2] = degree;
    GaussianRational pz(1);
    for (int k = 0; k < degree; ++k)
        pz *= p[2];
    Polynomial<GaussianRational> r = q.poly();
    r.add_term(e, -(v / pz));
    return ExactForm(std::move(r), degree);
}

} // namespace

TEST_CASE("evaluate: simple monomials")
{
    const auto p = form(3, {{{1, 1, 0}, 1.0}});
    const std::vector<Complex> x{2.0, 3.0, 1.0};
    CHECK(p.evaluate(x) == Complex(6.0));
    const auto q = form(3, {{{2, 0, 0}, 1.0}, {{0, 2, 0}, 1.0}});
    const std::vector<Complex> y{1.0, Complex(0, 1), 0.0};
    CHECK(std::abs(q.evaluate(y)) == 0.0);
}

TEST_CASE("evaluate: compensated sum agrees with exact oracle")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = random_float_form(rng, 3, 3);
        const auto x = random_point(rng, 3);
        const Complex a = p.evaluate(x);
        const Complex b = exact_oracle(p, x);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)));
    }
}

TEST_CASE("evaluate: homogeneity under scaling")
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const auto p = random_float_form(rng, 3, 4);
        auto x = random_point(rng, 3);
        const Complex lam(0.7, -1.3);
        const Complex base = p.evaluate(x);
        for (auto& v : x)
            v *= lam;
        CHECK(std::abs(p.evaluate(x) - std::pow(lam, 4) * base) < 1e-10 * std::abs(std::pow(lam, 4) * base) + 1e-12);
    }
}

TEST_CASE("evaluate: dimension mismatch throws")
{
    const auto p = form(3, {{{1, 1, 0}, 1.0}});
    const std::vector<Complex> x{1.0, 2.0};
    CHECK_THROWS_AS(p.evaluate(x), nevlab::Error);
}

TEST_CASE("partial_derivative examples and finite differences")
{
    const auto p = form(3, {{{2, 1, 0}, 1.0}});
    const auto d = partial_derivative(p, 0);
    CHECK(d.degree() == 2);
    CHECK(d.poly().coefficient({1, 1, 0}) == Complex(2.0));
    const auto q = form(3, {{{0, 3, 0}, 1.0}});
    const auto dq = partial_derivative(q, 0);
    CHECK(dq.is_zero());
    CHECK(dq.degree() == 2);

    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_float_form(rng, 3, 4);
        const auto x = random_point(rng, 3);
        for (int v = 0; v < 3; ++v) {
            const double h = 1e-5;
            auto xp = x, xm = x;
            xp[v] += h;
            xm[v] -= h;
            const Complex fd = (f.evaluate(xp) - f.evaluate(xm)) / (2 * h);
            const Complex an = partial_derivative(f, v).evaluate(x);
            CHECK(std::abs(fd - an) < 1e-6 * std::max(1.0, std::abs(an)));
        }
    }
}

TEST_CASE("jacobian: linear forms give a constant")
{
    std::mt19937_64 rng(14);
    std::vector<ExactForm> ls;
    for (int i = 0; i < 3; ++i)
        ls.push_back(random_exact_form(rng, 3, 1));
    const auto j = jacobian_determinant<GaussianRational>(ls);
    CHECK(j.degree() == 0);
    CHECK(!j.is_zero());
    // Oracle: 3x3 coefficient determinant.
    std::vector<std::vector<GaussianRational>> m(3, std::vector<GaussianRational>(3));
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) {
            Exponent e(3, 0);
            e[k] = 1;
            m[i][k] = ls[i].poly().coefficient(e);
        }
    CHECK(j.poly().coefficient({0, 0, 0}) == determinant(m));
}

TEST_CASE("jacobian: squares give 8 z0 z1 z2")
{
    std::vector<ExactForm> sq{exact(3, {{{2, 0, 0}, 1}}), exact(3, {{{0, 2, 0}, 1}}), exact(3, {{{0, 0, 2}, 1}})};
    const auto j = jacobian_determinant<GaussianRational>(sq);
    CHECK(j.degree() == 3);
    CHECK(j.poly().size() == 1);
    CHECK(j.poly().coefficient({1, 1, 1}) == GaussianRational(8));
}

TEST_CASE("jacobian: random conics give a cubic in both modes")
{
    std::mt19937_64 rng(15);
    std::vector<ExactForm> qs;
    for (int i = 0; i < 3; ++i)
        qs.push_back(random_exact_form(rng, 3, 2));
    const auto je = jacobian_determinant<GaussianRational>(qs);
    CHECK(je.degree() == 3);
    CHECK(je.poly().total_degree() == 3);
    std::vector<FloatForm> fq;
    for (const auto& q : qs)
        fq.push_back(to_float(q));
    const auto jf = jacobian_determinant<Complex>(fq);
    CHECK(jf.degree() == 3);
    const auto x = random_point(rng, 3);
    CHECK(std::abs(jf.evaluate(x) - to_float(je).evaluate(x)) < 1e-9 * std::abs(jf.evaluate(x)));
}

TEST_CASE("jacobian: dependent forms collapse to the zero sentinel")
{
    const auto a = form(3, {{{1, 0, 0}, 1.0}, {{0, 1, 0}, 2.0}});
    const auto b = form(3, {{{1, 0, 0}, 2.0}, {{0, 1, 0}, 4.0}});
    const auto c = form(3, {{{0, 0, 1}, 1.0}});
    std::vector<FloatForm> v{a, b, c};
    const auto j = jacobian_determinant<Complex>(v);
    CHECK(j.is_zero());
}

TEST_CASE("euler_residual vanishes")
{
    const auto p = exact(3, {{{2, 1, 0}, 1}});
    const std::vector<GaussianRational> pt{1, 2, 5};
    CHECK(euler_residual(p, std::span<const GaussianRational>(pt)).is_zero());
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 20; ++trial) {
        const auto f = random_float_form(rng, 3, 4);
        const auto x = random_point(rng, 3);
        double scale = 0.0;
        for (int v = 0; v < 3; ++v)
            scale += std::abs(partial_derivative(f, v).evaluate(x) * x[v]);
        CHECK(std::abs(euler_residual(f, std::span<const Complex>(x))) < 1e-10 * scale);
        const auto fe = random_exact_form(rng, 3, 3);
        const std::vector<GaussianRational> xe{GaussianRational(trial, 1), GaussianRational(-2), GaussianRational(3, trial)};
        CHECK(euler_residual(fe, std::span<const GaussianRational>(xe)).is_zero());
    }
}

TEST_CASE("gcd, square-free part and Yun decomposition")
{
    std::mt19937_64 rng(17);
    const auto a = random_exact_form(rng, 3, 2).poly();
    const auto b = random_exact_form(rng, 3, 1).poly();
    const auto c = random_exact_form(rng, 3, 1).poly();
    const auto g = gcd(a * b, a * c);
    CHECK(g == make_monic(a));
    CHECK(gcd(b, c).total_degree() == 0);
    CHECK(square_free_part(a * a * b) == make_monic(square_free_part(a * b)) * (square_free_part(a * a * b).leading_term().second));
    CHECK(is_square_free(a * b));
    CHECK_FALSE(is_square_free(a * b * b));
    CHECK(divide_exact(a * b, b).value() == a);
    CHECK_FALSE(divide_exact(a, b).has_value());

    // (x - 1)^3 (x + 2)
    Polynomial<GaussianRational> x1 = Polynomial<GaussianRational>::variable(1, 0) -
                                      Polynomial<GaussianRational>::constant(1, GaussianRational(1));
    Polynomial<GaussianRational> x2 = Polynomial<GaussianRational>::variable(1, 0) +
                                      Polynomial<GaussianRational>::constant(1, GaussianRational(2));
    const auto parts = square_free_decomposition(x1 * x1 * x1 * x2);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == x2);
    CHECK(parts[1].total_degree() == 0);
    CHECK(parts[2] == x1);
}

TEST_CASE("hypersurface rejects the zero form and non-reduced forms")
{
    CHECK_THROWS_AS(ExactHypersurface(ExactForm(3, 2)), nevlab::Error);
    const auto l = exact(3, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}});
    CHECK_THROWS_AS(ExactHypersurface(multiply(l, l)), nevlab::Error);
    CHECK_NOTHROW(ExactHypersurface(exact(3, {{{1, 1, 1}, 1}})));
}

TEST_CASE("resultant: linear forms give the coefficient determinant")
{
    std::mt19937_64 rng(18);
    for (int n1 = 2; n1 <= 4; ++n1) {
        std::vector<ExactForm> ls;
        std::vector<std::vector<GaussianRational>> m(n1, std::vector<GaussianRational>(n1));
        for (int i = 0; i < n1; ++i) {
            ls.push_back(random_exact_form(rng, n1, 1));
            for (int k = 0; k < n1; ++k) {
                Exponent e(n1, 0);
                e[k] = 1;
                m[i][k] = ls[i].poly().coefficient(e);
            }
        }
        CHECK(macaulay_resultant(ls) == determinant(m));
    }
}

TEST_CASE("resultant: trivial zero and squares")
{
    std::vector<ExactForm> dep{exact(3, {{{1, 0, 0}, 1}}), exact(3, {{{0, 1, 0}, 1}}),
                               exact(3, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}})};
    CHECK(macaulay_resultant(dep).is_zero());
    std::vector<ExactForm> sq{exact(3, {{{2, 0, 0}, 1}}), exact(3, {{{0, 2, 0}, 1}}), exact(3, {{{0, 0, 2}, 1}})};
    CHECK_FALSE(macaulay_resultant(sq).is_zero());
    std::vector<FloatForm> fsq;
    for (const auto& q : sq)
        fsq.push_back(to_float(q));
    CHECK(macaulay_resultant_float(fsq).nonzero);
}

TEST_CASE("resultant: binary forms agree with Sylvester up to sign")
{
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const int da = 1 + trial % 3, db = 1 + (trial / 3) % 3;
        const auto a = random_exact_form(rng, 2, da);
        const auto b = random_exact_form(rng, 2, db);
        // Sylvester matrix in coefficients of x0^{d-k} x1^k.
        const int N = da + db;
        std::vector<std::vector<GaussianRational>> s(N, std::vector<GaussianRational>(N));
        for (int r = 0; r < db; ++r)
            for (int k = 0; k <= da; ++k)
                s[r][r + k] = a.poly().coefficient({da - k, k});
        for (int r = 0; r < da; ++r)
            for (int k = 0; k <= db; ++k)
                s[db + r][r + k] = b.poly().coefficient({db - k, k});
        const auto syl = determinant(s);
        std::vector<ExactForm> ab{a, b};
        const auto res = macaulay_resultant(ab);
        CHECK((res == syl || res == -syl));
    }
}

TEST_CASE("resultant: planted common zeros vs elimination oracle")
{
    std::mt19937_64 rng(20);
    int planted_count = 0, generic_count = 0;
    for (int trial = 0; trial < 24; ++trial) {
        std::vector<int> deg{1 + trial % 2, 1 + (trial / 2) % 2, 1 + (trial / 4) % 2};
        const bool plant = trial % 3 == 0;
        std::vector<ExactForm> fs;
        const std::vector<GaussianRational> p{GaussianRational(1 + trial % 3, -1), GaussianRational(2), GaussianRational(1)};
        for (int d : deg)
            fs.push_back(plant ? planted(rng, d, p) : random_exact_form(rng, 3, d));
        const auto res = macaulay_resultant(fs);
        std::vector<FloatForm> ff;
        for (const auto& f : fs)
            ff.push_back(to_float(f));
        const double oracle = elimination_oracle(ff, rng);
        const bool has_zero = oracle < 1e-6;
        CHECK(res.is_zero() == has_zero);
        CHECK(has_zero == plant);
        CHECK(macaulay_resultant_float(ff).nonzero == !plant);
        (plant ? planted_count : generic_count)++;
    }
    CHECK(planted_count > 0);
    CHECK(generic_count > 0);
}

TEST_CASE("resultant: degenerate extraneous minor uses the perturbation path")
{
    // Squares plus the Jacobian of the squares: D_0, D_1, V share [0:0:1].
    std::vector<ExactForm> fs{exact(3, {{{2, 0, 0}, 1}}), exact(3, {{{0, 2, 0}, 1}}), exact(3, {{{1, 1, 1}, 1}})};
    CHECK(macaulay_resultant(fs).is_zero());
    // Sparse but zero-free: x^2, y^2, z^3 + xyz.
    std::vector<ExactForm> gs{exact(3, {{{2, 0, 0}, 1}}), exact(3, {{{0, 2, 0}, 1}}),
                              exact(3, {{{0, 0, 3}, 1}, {{1, 1, 1}, 1}})};
    CHECK_FALSE(macaulay_resultant(gs).is_zero());
}

TEST_CASE("resultant: size cap")
{
    std::vector<ExactForm> big;
    for (int i = 0; i < 3; ++i)
        big.push_back(exact(3, {{{7, 0, 0}, 1}}));
    CHECK_THROWS_AS(macaulay_resultant(big), nevlab::Error);
    std::vector<int> d5(5, 6);
    CHECK_THROWS_AS(macaulay_size(d5), nevlab::Error);
}

TEST_CASE("text and JSON round trips")
{
    std::mt19937_64 rng(21);
    const auto f = random_float_form(rng, 3, 2);
    const auto g = parse_float_form(to_text(f));
    CHECK(g == f);
    CHECK(float_form_from_json(to_json(f)) == f);
    const auto e = random_exact_form(rng, 3, 3);
    CHECK(parse_exact_form(to_text(e)) == e);
    CHECK(exact_form_from_json(to_json(e)) == e);
    const auto h = parse_exact_form("3; 2; [2,0,0]:1/2-3*i; [0,1,1]:0.1");
    CHECK(h.poly().coefficient({2, 0, 0}) == GaussianRational::parse("1/2", "-3"));
    CHECK(h.poly().coefficient({0, 1, 1}) == GaussianRational::parse("1/10", "0"));
    CHECK_THROWS_AS(parse_exact_form("3; 2; [2,0]:1"), nevlab::Error);
}
