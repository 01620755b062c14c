#include "nevlab/analytic/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nevlab/polycore/algebra.hpp"

namespace nevlab::analytic {

using poly::GaussianRational;
using UPoly = std::vector<GaussianRational>; // increasing degree

namespace {

UPoly umul(const UPoly& a, const UPoly& b)
{
    UPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

void uadd(UPoly& a, const UPoly& b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
}

void trim(UPoly& a)
{
    while (!a.empty() && a.back().is_zero())
        a.pop_back();
}

UPoly exact_component(const ExpPolyFunction& f)
{
    UPoly c{GaussianRational::from_complex(f.scale())};
    for (const auto& r : f.roots()) {
        const UPoly lin{-GaussianRational::from_complex(r.location), GaussianRational(1)};
        for (int k = 0; k < r.multiplicity; ++k)
            c = umul(c, lin);
    }
    return c;
}

poly::Polynomial<GaussianRational> to_multi(const UPoly& c)
{
    poly::Polynomial<GaussianRational> p(1);
    for (std::size_t k = 0; k < c.size(); ++k)
        p.add_term({static_cast<int>(k)}, c[k]);
    return p;
}

UPoly from_multi(const poly::Polynomial<GaussianRational>& p)
{
    UPoly c(std::max(p.total_degree(), 0) + 1);
    for (const auto& [e, v] : p.terms())
        c[e[0]] = v;
    return c;
}

Complex horner(const std::vector<Complex>& c, Complex z)
{
    Complex acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * z + *it;
    return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& c)
{
    std::vector<Complex> d;
    for (std::size_t k = 1; k < c.size(); ++k)
        d.push_back(c[k] * double(k));
    return d;
}

// Phase samples along a closed path; doubles the count until two successive
// windings agree with every step below π/2.
int winding_on_path(const HoloFunction& fn, const std::function<Complex(double)>& path, const WindingOptions& opt)
{
    auto value_at = [&](double s) {
        const HoloSample h = fn.sample(path(s));
        const double a = std::abs(h.value);
        if (!(a > opt.floor * h.term_scale) || !std::isfinite(a))
            fail(ErrorKind::ZeroOnContour, "function is numerically zero on the contour");
        return h.value / a;
    };
    int n = opt.initial_samples;
    std::vector<Complex> vals(n);
    for (int k = 0; k < n; ++k)
        vals[k] = value_at(double(k) / n);
    long previous = std::numeric_limits<long>::min();
    for (;;) {
        double total = 0.0, worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = std::arg(vals[(k + 1) % n] / vals[k]);
            total += d;
            worst = std::max(worst, std::abs(d));
        }
        const long w = std::lround(total / (2 * M_PI));
        if (worst < M_PI / 2 && w == previous)
            return static_cast<int>(w);
        if (worst < M_PI / 2)
            previous = w;
        if (2 * n > opt.max_samples)
            fail(ErrorKind::NonConvergent, "winding number did not stabilise at " + std::to_string(n) + " samples");
        std::vector<Complex> next(2 * n);
        for (int k = 0; k < n; ++k) {
            next[2 * k] = vals[k];
            next[2 * k + 1] = value_at((2.0 * k + 1) / (2.0 * n));
        }
        vals = std::move(next);
        n *= 2;
    }
}

struct Rect {
    double x0, x1, y0, y1;
    int depth;
    double diameter() const { return std::hypot(x1 - x0, y1 - y0); }
    Complex center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
    bool contains(Complex z, double slack) const
    {
        return z.real() >= x0 - slack && z.real() <= x1 + slack && z.imag() >= y0 - slack && z.imag() <= y1 + slack;
    }
};

std::optional<Complex> newton(const HoloFunction& fn, Complex z, const Rect& cell, double tol)
{
    for (int it = 0; it < 80; ++it) {
        const HoloSample h = fn.sample(z);
        if (h.value == Complex(0.0))
            return z;
        if (h.derivative == Complex(0.0))
            return std::nullopt;
        const Complex step = h.value / h.derivative;
        z -= step;
        if (!cell.contains(z, 0.25 * cell.diameter()))
            return std::nullopt;
        if (std::abs(step) < std::max(1e-3 * tol, 4e-16 * std::abs(z)))
            return cell.contains(z, 1e-12 * cell.diameter()) ? std::optional<Complex>(z) : std::nullopt;
    }
    return std::nullopt;
}

// Centroid (1/w)(1/2πi)∮ z h'/h dz on a circle by the trapezoid rule.
Complex centroid(const HoloFunction& fn, Complex c, double R, int w, int n)
{
    Complex acc = 0.0;
    for (int k = 0; k < n; ++k) {
        const Complex e = std::polar(1.0, 2 * M_PI * k / n);
        const Complex z = c + R * e;
        const HoloSample h = fn.sample(z);
        acc += z * (h.derivative / h.value) * R * e;
    }
    return acc / double(n) / double(w);
}

// Tries to certify a w-fold cluster around the cell; grows the test radius from
// tol/2 until the contour clears the magnitude floor.
std::optional<ZeroRecord> cluster(const HoloFunction& fn, const Rect& cell, int w, const ZeroOptions& opt)
{
    const Complex c = cell.center();
    const double R = 0.5 * cell.diameter() * 1.001;
    try {
        if (winding_number(fn, c, R, opt.winding) != w)
            return std::nullopt;
        const Complex zbar = centroid(fn, c, R, w, 256);
        for (double r = opt.tol / 2; r < 0.5 * R; r *= 4) {
            try {
                const int k = winding_number(fn, zbar, r, opt.winding);
                if (k == w)
                    return ZeroRecord{zbar, w, r};
                if (k > 0)
                    return std::nullopt;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ZeroOnContour)
                    throw;
            }
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnContour)
            throw;
    }
    return std::nullopt;
}

double split_ratio(int depth, int attempt)
{
    static const double offsets[] = {0.0, 0.031, -0.027, 0.043, -0.039, 0.017, -0.013, 0.061, -0.057, 0.009};
    return 0.5 + 0.5 * offsets[(depth * 3 + attempt * 7 + attempt) % 10] + 0.001 * attempt;
}

struct CellWork {
    Rect rect;
    int winding;
};

std::vector<ZeroRecord> subdivide(const HoloFunction& fn, Rect root, int root_winding, const ZeroOptions& opt)
{
    std::vector<ZeroRecord> out;
    std::vector<CellWork> stack{{root, root_winding}};
    long cells = 0;
    while (!stack.empty()) {
        const CellWork cw = stack.back();
        stack.pop_back();
        if (++cells > opt.max_cells)
            fail(ErrorKind::NonConvergent, "zero search exceeded the cell budget");
        const Rect& r = cw.rect;
        if (cw.winding == 0)
            continue;
        if (r.diameter() < opt.tol) {
            out.push_back({r.center(), cw.winding, r.diameter()});
            continue;
        }
        if (cw.winding == 1) {
            if (auto z = newton(fn, r.center(), r, opt.tol)) {
                out.push_back({*z, 1, opt.tol});
                continue;
            }
        } else if (r.diameter() < 1e-2 * std::max(1.0, std::abs(r.center()))) {
            if (auto z = cluster(fn, r, cw.winding, opt)) {
                out.push_back(*z);
                continue;
            }
        }
        bool done = false;
        for (int attempt = 0; attempt <= opt.max_retries && !done; ++attempt) {
            const double s = split_ratio(r.depth, attempt);
            const double t = split_ratio(r.depth + 1, attempt);
            const double xm = r.x0 + s * (r.x1 - r.x0);
            const double ym = r.y0 + t * (r.y1 - r.y0);
            const Rect kids[4] = {{r.x0, xm, r.y0, ym, r.depth + 1},
                                  {xm, r.x1, r.y0, ym, r.depth + 1},
                                  {r.x0, xm, ym, r.y1, r.depth + 1},
                                  {xm, r.x1, ym, r.y1, r.depth + 1}};
            try {
                int ws[4];
                int sum = 0;
                for (int k = 0; k < 4; ++k) {
                    ws[k] = winding_number_rect(fn, kids[k].x0, kids[k].x1, kids[k].y0, kids[k].y1, opt.winding);
                    sum += ws[k];
                }
                if (sum != cw.winding)
                    continue;
                for (int k = 0; k < 4; ++k)
                    if (ws[k] != 0)
                        stack.push_back({kids[k], ws[k]});
                done = true;
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::ZeroOnContour)
                    throw;
            }
        }
        if (!done) {
            // Cannot separate further: report the cell as a cluster.
            if (r.diameter() < 1e-4 * std::max(1.0, std::abs(r.center()))) {
                out.push_back({r.center(), cw.winding, r.diameter()});
                continue;
            }
            fail(ErrorKind::ZeroOnContour, "subdivision failed after " + std::to_string(opt.max_retries) + " jitters");
        }
    }
    return out;
}

std::vector<ZeroRecord> in_disc(std::vector<ZeroRecord> zs, Complex center, double radius)
{
    std::vector<ZeroRecord> out;
    for (const auto& z : zs)
        if (std::abs(z.location - center) < radius)
            out.push_back(z);
    std::sort(out.begin(), out.end(), [](const ZeroRecord& a, const ZeroRecord& b) {
        if (std::abs(a.location) != std::abs(b.location))
            return std::abs(a.location) < std::abs(b.location);
        return std::arg(a.location) < std::arg(b.location);
    });
    return out;
}

} // namespace

HoloSample ExpPolyHolo::sample(Complex z) const
{
    const ScaledSample s = f_.sample(z);
    return {s.value, s.derivative, 1.0};
}

std::optional<PolynomialData> ExpPolyHolo::polynomial() const
{
    PolynomialData d;
    d.coeffs = f_.polynomial_part();
    for (const auto& c : exact_component(f_))
        d.exact.push_back(c);
    return d;
}

std::optional<std::vector<ZeroRecord>> ExpPolyHolo::known_zeros() const
{
    std::vector<ZeroRecord> out;
    for (const auto& r : f_.roots()) {
        bool merged = false;
        for (auto& z : out)
            if (z.location == r.location) {
                z.multiplicity += r.multiplicity;
                merged = true;
            }
        if (!merged)
            out.push_back({r.location, r.multiplicity, 0.0});
    }
    return out;
}

Pullback::Pullback(poly::FloatForm q, std::shared_ptr<const CurveMap> curve) : q_(std::move(q)), curve_(std::move(curve))
{
    if (q_.nvars() != curve_->dim())
        fail(ErrorKind::DimensionMismatch, "form and curve live in different projective spaces");
    if (q_.is_zero())
        fail(ErrorKind::Precondition, "pullback of the zero form");
    for (int v = 0; v < q_.nvars(); ++v)
        grad_.push_back(poly::partial_derivative(q_, v));
}

Pullback::Pullback(poly::ExactForm q, std::shared_ptr<const CurveMap> curve) : Pullback(poly::to_float(q), std::move(curve))
{
    exact_ = std::move(q);
}

HoloSample Pullback::sample(Complex z) const
{
    const CurvePoint p = curve_->eval(z);
    HoloSample h;
    h.value = q_.evaluate(p.u);
    for (std::size_t j = 0; j < p.u.size(); ++j)
        h.derivative += grad_[j].evaluate(p.u) * p.du[j];
    double scale = 0.0;
    for (const auto& [e, c] : q_.terms()) {
        double t = std::abs(c);
        for (std::size_t j = 0; j < e.size(); ++j)
            t *= std::pow(std::abs(p.u[j]), e[j]);
        scale += t;
    }
    h.term_scale = scale;
    return h;
}

std::optional<PolynomialData> Pullback::polynomial() const
{
    const auto* pc = dynamic_cast<const ProjectiveCurve*>(curve_.get());
    if (!pc || !pc->common_exponent())
        return std::nullopt;
    std::vector<UPoly> comps;
    for (const auto& f : pc->components())
        comps.push_back(f.is_zero() ? UPoly{GaussianRational(0)} : exact_component(f));
    const poly::ExactForm q = exact_ ? *exact_ : poly::to_exact(q_);
    UPoly total{GaussianRational(0)};
    for (const auto& [e, c] : q.terms()) {
        UPoly t{c};
        for (std::size_t j = 0; j < e.size(); ++j)
            for (int k = 0; k < e[j]; ++k)
                t = umul(t, comps[j]);
        uadd(total, t);
    }
    trim(total);
    PolynomialData d;
    d.exact = total;
    for (const auto& c : total)
        d.coeffs.push_back(c.to_complex());
    return d;
}

bool Pullback::identically_zero(std::uint64_t seed) const
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int k = 0; k < 8; ++k) {
        const HoloSample h = sample({g(rng), g(rng)});
        if (std::abs(h.value) > 1e-12 * h.term_scale)
            return false;
    }
    return true;
}

int winding_number(const HoloFunction& fn, Complex center, double radius, const WindingOptions& opt)
{
    if (!(radius > 0))
        fail(ErrorKind::Precondition, "winding number needs a positive radius");
    return winding_on_path(fn, [&](double s) { return center + std::polar(radius, 2 * M_PI * s); }, opt);
}

int winding_number_rect(const HoloFunction& fn, double x0, double x1, double y0, double y1, const WindingOptions& opt)
{
    const Complex c[4] = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    return winding_on_path(
        fn,
        [&](double s) {
            const double t = 4 * s;
            const int k = std::min(3, static_cast<int>(t));
            return c[k] + (t - k) * (c[(k + 1) % 4] - c[k]);
        },
        opt);
}

std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs_in, int max_iter)
{
    std::vector<Complex> c = coeffs_in;
    while (!c.empty() && c.back() == Complex(0.0))
        c.pop_back();
    std::vector<Complex> roots;
    // Zero roots are split off exactly.
    std::size_t lead = 0;
    while (lead < c.size() && c[lead] == Complex(0.0))
        ++lead;
    for (std::size_t k = 0; k < lead; ++k)
        roots.push_back(0.0);
    c.erase(c.begin(), c.begin() + lead);
    const int n = static_cast<int>(c.size()) - 1;
    if (n < 1)
        return roots;
    if (n == 1) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    const auto dc = derivative(c);
    // Fujiwara-type bound for the initial circle.
    double bound = 0.0;
    for (int k = 0; k < n; ++k)
        bound = std::max(bound, std::pow(std::abs(c[k] / c[n]), 1.0 / (n - k)));
    bound = std::max(bound, 1e-3);
    std::vector<Complex> z(n);
    for (int k = 0; k < n; ++k)
        z[k] = std::polar(bound, 2 * M_PI * k / n + 0.4);
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
            const Complex pv = horner(c, z[k]);
            if (pv == Complex(0.0))
                continue;
            const Complex ratio = pv / horner(dc, z[k]);
            Complex s = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k)
                    s += 1.0 / (z[k] - z[j]);
            const Complex w = ratio / (1.0 - ratio * s);
            if (std::isfinite(w.real()) && std::isfinite(w.imag())) {
                z[k] -= w;
                worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[k])));
            }
        }
        if (worst < 1e-15)
            break;
    }
    for (auto& r : z) {
        for (int it = 0; it < 3; ++it) {
            const Complex d = horner(dc, r);
            if (d == Complex(0.0))
                break;
            const Complex step = horner(c, r) / d;
            if (!std::isfinite(step.real()) || std::abs(step) > 1e-6 * std::max(1.0, std::abs(r)))
                break;
            r -= step;
        }
        roots.push_back(r);
    }
    return roots;
}

std::vector<ZeroRecord> polynomial_zeros(const PolynomialData& p, double cluster_tol)
{
    std::vector<ZeroRecord> out;
    if (!p.exact.empty()) {
        UPoly e = p.exact;
        trim(e);
        if (e.empty())
            fail(ErrorKind::Precondition, "polynomial is identically zero");
        const auto parts = poly::square_free_decomposition(to_multi(e));
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const UPoly f = from_multi(parts[k]);
            std::vector<Complex> fc;
            for (const auto& c : f)
                fc.push_back(c.to_complex());
            for (const auto& r : aberth_roots(fc))
                out.push_back({r, static_cast<int>(k) + 1, 0.0});
        }
        return out;
    }
    std::vector<Complex> c = p.coeffs;
    while (!c.empty() && c.back() == Complex(0.0))
        c.pop_back();
    if (c.empty())
        fail(ErrorKind::Precondition, "polynomial is identically zero");
    for (const auto& r : aberth_roots(c)) {
        bool merged = false;
        for (auto& z : out)
            if (std::abs(z.location - r) < cluster_tol * std::max(1.0, std::abs(r))) {
                z.location = (z.location * double(z.multiplicity) + r) / double(z.multiplicity + 1);
                z.multiplicity += 1;
                z.resolution = cluster_tol;
                merged = true;
                break;
            }
        if (!merged)
            out.push_back({r, 1, 0.0});
    }
    return out;
}

std::vector<ZeroRecord> zeros_in_disc(const HoloFunction& fn, Complex center, double radius, const ZeroOptions& opt)
{
    if (!(radius > 0))
        fail(ErrorKind::Precondition, "zeros_in_disc needs a positive radius");
    if (opt.shortcuts) {
        if (auto known = fn.known_zeros())
            return in_disc(*known, center, radius);
        if (auto p = fn.polynomial())
            return in_disc(polynomial_zeros(*p), center, radius);
    }
    // Asymmetric root square so symmetric zero sets do not land on its edges.
    const Complex shift = radius * Complex(0.0123, 0.0071);
    for (int k = 0; k <= opt.max_retries; ++k) {
        const double half = radius * 1.03 * (1 + 1e-6 * k) + std::abs(shift);
        const Complex c = center + shift * (1 + 1e-3 * k);
        Rect root{c.real() - half, c.real() + half, c.imag() - half, c.imag() + half, 0};
        try {
            const int w = winding_number_rect(fn, root.x0, root.x1, root.y0, root.y1, opt.winding);
            if (w < 0)
                fail(ErrorKind::Precondition, "negative winding: function is not holomorphic in the disc");
            return in_disc(subdivide(fn, root, w, opt), center, radius);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ZeroOnContour)
                throw;
        }
    }
    fail(ErrorKind::ZeroOnContour, "zero search failed after " + std::to_string(opt.max_retries) + " jittered retries");
}

} // namespace nevlab::analytic
