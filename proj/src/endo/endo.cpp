#include "nevlab/endo/endo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "nevlab/analytic/zeros.hpp"

namespace nevlab::endo {

using poly::GaussianRational;
using poly::Polynomial;

namespace {

double one_norm(const FloatForm& p)
{
    double s = 0.0;
    for (const auto& [e, c] : p.terms())
        s += std::abs(c);
    return s;
}

double two_norm(const Point& p)
{
    double s = 0.0;
    for (const auto& x : p)
        s += std::norm(x);
    return std::sqrt(s);
}

// sqrt(Σ |c_α|² α!/d!): bounds |p(x)| for unit x and is unitarily invariant.
double bombieri_norm(const FloatForm& p)
{
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) {
        double w = std::lgamma(p.degree() + 1.0);
        for (int k : e)
            w -= std::lgamma(k + 1.0);
        s += std::norm(c) * std::exp(-w);
    }
    return std::sqrt(s);
}

Point normalized(Point p)
{
    const double n = two_norm(p);
    if (n == 0.0)
        fail(ErrorKind::Precondition, "the zero vector is not a projective point");
    for (auto& x : p)
        x /= n;
    return p;
}

Point gradient(const FloatForm& p, const Point& x)
{
    Point g(x.size());
    for (int i = 0; i < p.nvars(); ++i)
        g[i] = poly::partial_derivative(p, i).evaluate(x);
    return g;
}

std::vector<std::vector<int>> subsets(int n, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        out.push_back(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

template <class S>
void check_forms(const std::vector<poly::HomogeneousPolynomial<S>>& qs)
{
    const int n1 = static_cast<int>(qs.size());
    if (n1 < 2)
        fail(ErrorKind::Precondition, "an endomorphism needs at least two forms");
    for (const auto& q : qs) {
        if (q.nvars() != n1)
            fail(ErrorKind::DimensionMismatch, "need n+1 forms in n+1 variables");
        if (q.is_zero() || q.degree() < 1)
            fail(ErrorKind::Precondition, "forms must be nonzero of positive degree");
    }
}

void fill_degrees(const std::vector<int>& degs, std::vector<int>& exps, int& d)
{
    d = 1;
    for (int di : degs)
        d = std::lcm(d, di);
    exps.clear();
    for (int di : degs)
        exps.push_back(d / di);
}

} // namespace

Point Endomorphism::apply(const Point& p) const
{
    Point w(powered_.size());
    for (std::size_t i = 0; i < powered_.size(); ++i) {
        const Complex q = forms_[i].evaluate(p);
        w[i] = std::pow(q, exponents_[i]);
    }
    return w;
}

Endomorphism build_endomorphism(std::vector<ExactForm> qs, const poly::ResultantCaps& caps)
{
    check_forms(qs);
    Endomorphism F;
    for (const auto& q : qs) {
        F.degrees_.push_back(q.degree());
        F.forms_.push_back(poly::to_float(q));
    }
    fill_degrees(F.degrees_, F.exponents_, F.d_);
    // Powering does not change the zero set, so the unpowered forms are certified.
    const auto res = poly::macaulay_resultant(std::span<const ExactForm>(qs), caps);
    if (res.is_zero())
        fail(ErrorKind::GeneralPosition, "forms {" + join([&] {
                                             std::vector<int> v(qs.size());
                                             std::iota(v.begin(), v.end(), 0);
                                             return v;
                                         }()) + "} have a common zero (resultant = 0)");
    for (std::size_t i = 0; i < qs.size(); ++i)
        F.powered_.push_back(poly::to_float(poly::power(qs[i], F.exponents_[i])));
    F.exact_ = std::move(qs);
    return F;
}

Endomorphism build_endomorphism(std::vector<FloatForm> qs, const poly::ResultantCaps& caps)
{
    check_forms(qs);
    Endomorphism F;
    for (const auto& q : qs)
        F.degrees_.push_back(q.degree());
    fill_degrees(F.degrees_, F.exponents_, F.d_);
    const auto res = poly::macaulay_resultant_float(std::span<const FloatForm>(qs), 1e-10, caps);
    if (!res.nonzero) {
        std::ostringstream os;
        os << "forms have a numerically common zero (relative sigma_min = " << res.relative << ")";
        fail(ErrorKind::GeneralPosition, os.str());
    }
    for (std::size_t i = 0; i < qs.size(); ++i)
        F.powered_.push_back(poly::power(qs[i], F.exponents_[i]));
    F.forms_ = std::move(qs);
    return F;
}

CriticalLocus critical_locus(const Endomorphism& F)
{
    const auto& degs = F.degrees();
    if (std::all_of(degs.begin(), degs.end(), [](int d) { return d == 1; }))
        fail(ErrorKind::DegenerateFamily, "all forms are linear: the Jacobian determinant is constant");
    const int expected = std::accumulate(degs.begin(), degs.end(), 0) - F.nvars();
    if (F.exact_forms()) {
        const auto& qs = *F.exact_forms();
        const auto J = poly::jacobian_determinant(std::span<const ExactForm>(qs));
        if (J.is_zero())
            fail(ErrorKind::DegenerateFamily, "Jacobian determinant vanishes identically");
        ExactForm red = J;
        if (!poly::is_square_free(J.poly()))
            red = ExactForm(poly::square_free_part(J.poly()));
        poly::ExactHypersurface h(red);
        return {poly::FloatHypersurface(poly::to_float(red)), h, expected};
    }
    const auto J = poly::jacobian_determinant(std::span<const FloatForm>(F.forms()));
    if (J.is_zero())
        fail(ErrorKind::DegenerateFamily, "Jacobian determinant vanishes identically");
    return {poly::FloatHypersurface(J), std::nullopt, expected};
}

const SubsetVerdict* GeneralPositionCertificate::first_failure() const
{
    for (const auto& s : subsets)
        if (!s.positive)
            return &s;
    return nullptr;
}

template <class S>
static void check_family(const std::vector<poly::HomogeneousPolynomial<S>>& hyps)
{
    if (hyps.empty())
        fail(ErrorKind::Precondition, "empty hypersurface list");
    const int nv = hyps.front().nvars();
    if (static_cast<int>(hyps.size()) < nv)
        fail(ErrorKind::Precondition, "need at least n+1 hypersurfaces in P^n");
    for (const auto& h : hyps)
        if (h.nvars() != nv)
            fail(ErrorKind::DimensionMismatch, "hypersurfaces live in different projective spaces");
}

GeneralPositionCertificate general_position(const std::vector<ExactForm>& hyps, const poly::ResultantCaps& caps)
{
    check_family(hyps);
    GeneralPositionCertificate cert;
    const int nv = hyps.front().nvars();
    for (const auto& idx : subsets(static_cast<int>(hyps.size()), nv)) {
        std::vector<ExactForm> sub;
        for (int i : idx)
            sub.push_back(hyps[i]);
        const auto r = poly::macaulay_resultant(std::span<const ExactForm>(sub), caps);
        SubsetVerdict v{idx, !r.is_zero(), r.to_string(), std::abs(r.to_complex())};
        cert.positive = cert.positive && v.positive;
        cert.subsets.push_back(std::move(v));
    }
    return cert;
}

GeneralPositionCertificate general_position(const std::vector<FloatForm>& hyps, double threshold,
                                            const poly::ResultantCaps& caps)
{
    check_family(hyps);
    GeneralPositionCertificate cert;
    cert.exact = false;
    const int nv = hyps.front().nvars();
    for (const auto& idx : subsets(static_cast<int>(hyps.size()), nv)) {
        std::vector<FloatForm> sub;
        for (int i : idx)
            sub.push_back(hyps[i]);
        const auto r = poly::macaulay_resultant_float(std::span<const FloatForm>(sub), threshold, caps);
        std::ostringstream os;
        os.precision(6);
        os << r.relative;
        SubsetVerdict v{idx, r.nonzero, os.str(), r.relative};
        cert.positive = cert.positive && v.positive;
        cert.subsets.push_back(std::move(v));
    }
    return cert;
}

nlohmann::json to_json(const GeneralPositionCertificate& c)
{
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : c.subsets)
        subs.push_back({{"indices", s.indices},
                        {"positive", s.positive},
                        {"witness", s.witness},
                        {"witness_kind", c.exact ? "resultant" : "relative_sigma_min"}});
    return {{"positive", c.positive}, {"exact", c.exact}, {"subsets", subs}};
}

GenericFamily construct_generic_family(int n, const std::vector<int>& degrees, std::uint64_t seed, int max_seeds,
                                       int coeff_range)
{
    if (n < 1)
        fail(ErrorKind::Precondition, "n must be at least 1");
    if (static_cast<int>(degrees.size()) != n + 1)
        fail(ErrorKind::Precondition, "need n+1 degrees");
    int total = 0;
    for (int d : degrees) {
        if (d < 1)
            fail(ErrorKind::Precondition, "degrees must be positive");
        total += d;
    }
    if (total < n + 2)
        fail(ErrorKind::Precondition, "total degree " + std::to_string(total) + " is below n+2 = " +
                                          std::to_string(n + 2));
    GenericFamily fam;
    std::string why;
    for (int k = 0; k < max_seeds; ++k) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(k);
        fam.tried.push_back(s);
        std::mt19937_64 rng(s);
        std::uniform_int_distribution<long> coef(-coeff_range, coeff_range);
        std::vector<ExactForm> qs;
        for (int d : degrees) {
            Polynomial<GaussianRational> prod = Polynomial<GaussianRational>::constant(n + 1, 1);
            for (int j = 0; j < d; ++j) {
                Polynomial<GaussianRational> l(n + 1);
                while (l.is_zero())
                    for (int v = 0; v < n + 1; ++v) {
                        poly::Exponent e(n + 1, 0);
                        e[v] = 1;
                        l.add_term(e, GaussianRational(coef(rng)));
                    }
                prod = prod * l;
            }
            qs.emplace_back(std::move(prod), d);
        }
        try {
            for (const auto& q : qs)
                poly::ExactHypersurface check(q);
            const auto F = build_endomorphism(qs);
            const auto V = critical_locus(F);
            if (V.exact->degree() != V.expected_degree) {
                why = "critical locus is not reduced";
                continue;
            }
            auto all = qs;
            all.push_back(V.exact->poly());
            auto cert = general_position(all);
            if (!cert.positive) {
                why = "subset {" + join(cert.first_failure()->indices) + "} meets";
                continue;
            }
            fam.forms = std::move(qs);
            fam.seed = s;
            fam.certificate = std::move(cert);
            return fam;
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SizeCap)
                throw;
            why = e.what();
        }
    }
    std::string tried;
    for (auto s : fam.tried)
        tried += (tried.empty() ? "" : ",") + std::to_string(s);
    fail(ErrorKind::RetryExhausted, "no generic family found for seeds {" + tried + "}; last failure: " + why);
}

std::vector<Point> sample_locus(const FloatForm& V, int count, std::uint64_t seed)
{
    if (V.is_zero() || V.degree() < 1)
        fail(ErrorKind::Precondition, "sample_locus needs a nonzero form of positive degree");
    const int nv = V.nvars();
    const int e = V.degree();
    const double scale = one_norm(V);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<FloatForm> grad;
    for (int i = 0; i < nv; ++i)
        grad.push_back(poly::partial_derivative(V, i));

    std::vector<Point> out;
    const int max_lines = 20 * count + 20;
    for (int line = 0; line < max_lines && static_cast<int>(out.size()) < count; ++line) {
        Point p(nv), q(nv);
        for (int i = 0; i < nv; ++i) {
            p[i] = {g(rng), g(rng)};
            q[i] = {g(rng), g(rng)};
        }
        auto at = [&](Complex t) {
            Point x(nv);
            for (int i = 0; i < nv; ++i)
                x[i] = p[i] + t * q[i];
            return x;
        };
        // Coefficients of t ↦ V(p + t q) by interpolation at roots of unity.
        std::vector<Complex> vals(e + 1), coeffs(e + 1);
        for (int k = 0; k <= e; ++k)
            vals[k] = V.evaluate(at(std::polar(1.0, 2 * M_PI * k / (e + 1))));
        for (int j = 0; j <= e; ++j) {
            Complex s = 0.0;
            for (int k = 0; k <= e; ++k)
                s += vals[k] * std::polar(1.0, -2 * M_PI * j * k / (e + 1));
            coeffs[j] = s / double(e + 1);
        }
        while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-12 * scale)
            coeffs.pop_back();
        if (coeffs.size() < 2)
            continue;
        const auto roots = analytic::aberth_roots(coeffs);
        for (std::size_t a = 0; a < roots.size() && static_cast<int>(out.size()) < count; ++a) {
            Complex t = roots[a];
            if (!std::isfinite(t.real()) || std::abs(t) > 1e6)
                continue;
            bool simple = true;
            for (std::size_t b = 0; b < roots.size(); ++b)
                if (b != a && std::abs(roots[b] - t) < 1e-6 * (1 + std::abs(t)))
                    simple = false;
            if (!simple)
                continue;
            for (int it = 0; it < 3; ++it) {
                const Point x = at(t);
                Complex dv = 0.0;
                for (int i = 0; i < nv; ++i)
                    dv += grad[i].evaluate(x) * q[i];
                if (dv == 0.0)
                    break;
                t -= V.evaluate(x) / dv;
            }
            const Point x = normalized(at(t));
            if (std::abs(V.evaluate(x)) <= 1e-10 * scale)
                out.push_back(x);
        }
    }
    if (static_cast<int>(out.size()) < count)
        fail(ErrorKind::InsufficientPoints, "found only " + std::to_string(out.size()) + " of " +
                                                std::to_string(count) + " simple points");
    return out;
}

namespace {

double multinomial(const poly::Exponent& a)
{
    double r = std::tgamma(poly::exponent_degree(a) + 1.0);
    for (int k : a)
        r /= std::tgamma(k + 1.0);
    return r;
}

Complex monomial(const Point& w, const poly::Exponent& a)
{
    Complex v = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (int k = 0; k < a[i]; ++k)
            v *= w[i];
    return v;
}

// Exact reduced form when every coefficient rationalises within 1e-6.
std::optional<ExactForm> rationalised(const FloatForm& W)
{
    Polynomial<GaussianRational> p(W.nvars());
    for (const auto& [e, c] : W.terms()) {
        const auto re = poly::rationalize(c.real(), 1000);
        const auto im = poly::rationalize(c.imag(), 1000);
        if (std::abs(re.get_d() - c.real()) > 1e-6 || std::abs(im.get_d() - c.imag()) > 1e-6)
            return std::nullopt;
        p.add_term(e, GaussianRational(re, im));
    }
    if (p.is_zero() || !p.is_homogeneous())
        return std::nullopt;
    return ExactForm(std::move(p), W.degree());
}

} // namespace

ImageLocus implicitize_image(const Endomorphism& F, const FloatForm& V, int degree_cap, const ImplicitOptions& opt)
{
    if (F.nvars() != 3)
        fail(ErrorKind::Precondition, "implicitisation is available for plane curves only (n = 2)");
    if (degree_cap < 1)
        fail(ErrorKind::Precondition, "degree cap must be at least 1");
    if (V.nvars() != 3)
        fail(ErrorKind::DimensionMismatch, "critical form must live in P^2");

    auto image = [&](const std::vector<Point>& ps) {
        std::vector<Point> ws;
        for (const auto& p : ps)
            ws.push_back(normalized(F.apply(p)));
        return ws;
    };

    for (int e = 1; e <= degree_cap; ++e) {
        const auto mons = poly::monomials_of_degree(3, e);
        const int M = static_cast<int>(mons.size());
        std::vector<double> weight(M);
        for (int j = 0; j < M; ++j)
            weight[j] = std::sqrt(multinomial(mons[j]));
        const auto ws = image(sample_locus(V, 2 * M + 8, opt.seed + 7919 * e));
        // Bombieri-weighted monomials: every row of a unit point has unit norm.
        Eigen::MatrixXcd A(ws.size(), M);
        for (std::size_t k = 0; k < ws.size(); ++k)
            for (int j = 0; j < M; ++j)
                A(k, j) = monomial(ws[k], mons[j]) * weight[j];
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeFullV);
        const auto& s = svd.singularValues();
        // The spectrum of these matrices decays steadily, so a value only counts as null
        // when it also sits within 1e4 of the smallest one.
        int nullity = 0;
        for (int j = 0; j < M; ++j)
            if (s(j) < opt.null_tol * s(0) && s(j) <= 1e4 * s(M - 1))
                ++nullity;
        if (nullity != 1)
            continue;
        const Eigen::VectorXcd v = svd.matrixV().col(M - 1);
        Polynomial<Complex> w(3);
        int big = 0;
        for (int j = 0; j < M; ++j)
            if (std::abs(v(j) * weight[j]) > std::abs(v(big) * weight[big]))
                big = j;
        const Complex lead = v(big) * weight[big];
        for (int j = 0; j < M; ++j) {
            Complex c = v(j) * weight[j] / lead;
            if (std::abs(c) < 1e-13)
                continue;
            w.add_term(mons[j], c);
        }
        FloatForm W(std::move(w), e);
        const double scale = one_norm(W);
        double worst = 0.0;
        for (const auto& x : image(sample_locus(V, M + 8, opt.seed + 104729 * e + 1)))
            worst = std::max(worst, std::abs(W.evaluate(x)) / scale);
        if (worst >= opt.validate_tol)
            continue;

        ImageLocus out{poly::FloatHypersurface(W), s(M - 1) / s(0), e, false, worst};
        if (const auto ex = rationalised(W)) {
            if (poly::is_square_free(ex->poly())) {
                out.reduced = true;
            } else {
                const ExactForm red(poly::square_free_part(ex->poly()));
                out.dub = poly::FloatHypersurface(poly::to_float(red));
                out.degree_found = red.degree();
                out.reduced = true;
            }
        }
        return out;
    }
    const int natural = V.degree() * F.common_degree();
    fail(ErrorKind::DegreeCap, "no curve of degree <= " + std::to_string(degree_cap) +
                                   " contains F(V); deg V * d = " + std::to_string(natural) +
                                   " is the natural cap to raise to");
}

bool exceptional_locus_test(const FloatForm& V, const std::vector<FloatForm>& hyps, const FloatForm& W,
                            const Endomorphism& F, const Point& p0, const ExceptionalTolerances& tol)
{
    const Point p = normalized(p0);
    for (const auto& h : hyps)
        if (std::abs(h.evaluate(p)) <= tol.on_divisor * bombieri_norm(h))
            return true;
    auto flat = [&](const FloatForm& q, const Point& x) {
        return two_norm(gradient(q, x)) <= tol.gradient * q.degree() * bombieri_norm(q);
    };
    if (flat(V, p))
        return true;
    return flat(W, normalized(F.apply(p)));
}

namespace {

double slope(const std::vector<double>& x, const std::vector<double>& y)
{
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

void require_on(const FloatForm& V, const Point& p, double tol, const char* what)
{
    if (std::abs(V.evaluate(p)) > tol * one_norm(V))
        fail(ErrorKind::Precondition, what);
}

} // namespace

OrderEstimate local_multiplicity(const Endomorphism& F, const FloatForm& V, const FloatForm& W, const Point& p0,
                                 const LocalOptions& opt)
{
    const Point p = normalized(p0);
    require_on(V, p, 1e-8, "point is not on the critical locus");
    if (opt.check_exceptional && exceptional_locus_test(V, F.forms(), W, F, p))
        fail(ErrorKind::Precondition, "point lies on the exceptional set");
    const int nv = static_cast<int>(p.size());
    const Point gV = gradient(V, p);
    const double gn = two_norm(gV);

    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> g;
    Point v(nv);
    for (int attempt = 0; attempt < 8; ++attempt) {
        for (auto& x : v)
            x = {g(rng), g(rng)};
        Complex dot = 0.0;
        for (int i = 0; i < nv; ++i)
            dot += std::conj(p[i]) * v[i];
        for (int i = 0; i < nv; ++i)
            v[i] -= dot * p[i];
        v = normalized(v);
        Complex dv = 0.0;
        for (int i = 0; i < nv; ++i)
            dv += gV[i] * v[i];
        if (std::abs(dv) > 1e-2 * gn)
            break;
    }

    // Base values are subtracted so that the fitting error of 𝒲 does not flatten the slope.
    const double fscale = two_norm(F.apply(p));
    auto WF = [&](const Point& x) {
        Point w = F.apply(x);
        for (auto& c : w)
            c /= fscale;
        return W.evaluate(w);
    };
    const Complex V0 = V.evaluate(p), W0 = WF(p);
    std::vector<double> lt, lv, lw;
    for (int k = 0; k < opt.steps; ++k) {
        const double t = std::exp(std::log(opt.t_min) + (std::log(opt.t_max) - std::log(opt.t_min)) * k / (opt.steps - 1));
        Point x(nv);
        for (int i = 0; i < nv; ++i)
            x[i] = p[i] + t * v[i];
        lt.push_back(std::log(t));
        lv.push_back(std::log(std::abs(V.evaluate(x) - V0)));
        lw.push_back(std::log(std::abs(WF(x) - W0)));
    }
    // Smallest steps can sit on the rounding floor of 𝒲∘F; drop them while at least 4 points remain.
    OrderEstimate est;
    for (std::size_t drop = 0; drop + 4 <= lt.size(); ++drop) {
        const std::vector<double> t(lt.begin() + drop, lt.end()), a(lv.begin() + drop, lv.end()),
            b(lw.begin() + drop, lw.end());
        est.ratio = slope(t, b) / slope(t, a);
        est.order = static_cast<int>(std::lround(est.ratio));
        est.residual = std::abs(est.ratio - est.order);
        if (std::isfinite(est.ratio) && est.residual < 0.1)
            break;
    }
    if (!std::isfinite(est.ratio) || est.residual >= 0.1)
        fail(ErrorKind::NonConvergent, "ill-conditioned slope ratio " + std::to_string(est.ratio));
    return est;
}

JumpResult multiplicity_jump_check(const std::shared_ptr<const analytic::CurveMap>& f, const Endomorphism& F,
                                   const FloatForm& V, const FloatForm& W, Complex z0, const JumpOptions& opt)
{
    const auto cp = f->eval(z0);
    const Point u = normalized(cp.u);
    require_on(V, u, opt.on_tol, "f(z0) is not on the critical locus");
    if (opt.check_exceptional && exceptional_locus_test(V, F.forms(), W, F, u))
        fail(ErrorKind::Precondition, "f(z0) lies on the exceptional set");
    const analytic::Pullback fv(V, f);
    const auto g = std::make_shared<analytic::ComposedCurve>(f, F.powered());
    const analytic::Pullback gw(W, g);
    JumpResult r;
    r.ord_f_V = analytic::winding_number(fv, z0, opt.radius, opt.winding);
    r.ord_g_W = analytic::winding_number(gw, z0, opt.radius, opt.winding);
    r.pass = r.ord_g_W >= r.ord_f_V + 1;
    return r;
}

} // namespace nevlab::endo
