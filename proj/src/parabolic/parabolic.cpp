#include "nevlab/parabolic/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace nevlab::parabolic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

struct GaussRule {
    std::vector<double> x, w; // on [-1, 1]
};

GaussRule gauss_legendre(int n)
{
    GaussRule g{std::vector<double>(n), std::vector<double>(n)};
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        g.x[i] = x;
        g.w[i] = 2.0 / ((1 - x * x) * dp * dp);
    }
    return g;
}

const GaussRule& gauss(int n)
{
    static std::vector<std::unique_ptr<GaussRule>> cache(65);
    if (n < 1 || n > 64)
        fail(ErrorKind::Precondition, "Gauss rule order must be in [1, 64]");
    if (!cache[n])
        cache[n] = std::make_unique<GaussRule>(gauss_legendre(n));
    return *cache[n];
}

// Cumulative integrals of f and of its product with the abscissa, sampled on a uniform
// grid; composite Gauss on each cell.
void cumulative(const std::function<double(double)>& f, double lo, double hi, int n, std::vector<double>& F,
                std::vector<double>& G)
{
    const auto& g = gauss(8);
    const double h = (hi - lo) / n;
    F.assign(n + 1, 0.0);
    G.assign(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        const double a = lo + i * h;
        double sf = 0.0, sg = 0.0;
        for (int k = 0; k < 8; ++k) {
            const double x = a + 0.5 * h * (g.x[k] + 1);
            const double v = f(x);
            sf += g.w[k] * v;
            sg += g.w[k] * v * x;
        }
        F[i + 1] = F[i] + 0.5 * h * sf;
        G[i + 1] = G[i] + 0.5 * h * sg;
    }
}

// Cubic Hermite interpolation of a tabulated primitive with known derivative.
double hermite(const std::vector<double>& T, double lo, double hi, double x, const std::function<double(double)>& d)
{
    const int n = static_cast<int>(T.size()) - 1;
    const double h = (hi - lo) / n;
    const double u = (x - lo) / h;
    const int i = std::clamp(static_cast<int>(std::floor(u)), 0, n - 1);
    const double t = u - i;
    const double x0 = lo + i * h, x1 = x0 + h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    return h00 * T[i] + h10 * h * d(x0) + h01 * T[i + 1] + h11 * h * d(x1);
}

double bump(double u, double eps)
{
    const double v = u / eps;
    return std::abs(v) < 1.0 ? std::exp(-1.0 / (1.0 - v * v)) : 0.0;
}

double paper_h(double r)
{
    if (r <= 0.75)
        return 0.0;
    if (r >= 1.25)
        return 1.0 / (4 * M_PI);
    const double x = r - 1.0;
    const double a = x / (x * x - 1.0 / 16);
    return a > 700 ? 0.0 : 1.0 / (4 * M_PI * (1.0 + std::exp(a)));
}

// H_c(3/2) − log(3/2) by composite Gauss.
double paper_kappa(double c)
{
    const double lo = 0.75 + c, top = 1.25 + c;
    const double hi = std::min(1.5, top);
    double v = 0.0;
    if (hi > lo) {
        const auto& g = gauss(16);
        const int panels = 64;
        const double h = (hi - lo) / panels;
        for (int i = 0; i < panels; ++i)
            for (int k = 0; k < 16; ++k) {
                const double s = lo + i * h + 0.5 * h * (g.x[k] + 1);
                v += 0.5 * h * g.w[k] * 4 * M_PI * paper_h(s - c) / s;
            }
    }
    if (1.5 > top)
        v += std::log(1.5 / top);
    return v - std::log(1.5);
}

} // namespace

// ---------------------------------------------------------------------------

PuncturedPlane::PuncturedPlane(std::vector<Complex> punctures, std::vector<double> radii)
{
    if (punctures.size() != radii.size())
        fail(ErrorKind::DimensionMismatch, "need one radius per puncture");
    std::vector<std::size_t> order(punctures.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return std::abs(punctures[i]) < std::abs(punctures[j]);
    });
    for (auto i : order) {
        const double r = radii[i];
        if (!(r > 0.0 && r < 1.0))
            fail(ErrorKind::Precondition, "puncture radii must lie in (0, 1)");
        if (!std::isfinite(punctures[i].real()) || !std::isfinite(punctures[i].imag()))
            fail(ErrorKind::Precondition, "punctures must be finite");
        a_.push_back(punctures[i]);
        r_.push_back(r);
        mod_.push_back(std::abs(punctures[i]));
    }
    // Discs D(a_j, 2 r_j) pairwise disjoint; since r_j < 1 only moduli within 4 can clash.
    for (std::size_t i = 0; i < a_.size(); ++i)
        for (std::size_t j = i + 1; j < a_.size() && mod_[j] - mod_[i] < 4.0; ++j)
            if (std::abs(a_[i] - a_[j]) < 2 * (r_[i] + r_[j]))
                fail(ErrorKind::Precondition, "discs D(a_j, 2 r_j) overlap for punctures " + std::to_string(i) +
                                                  " and " + std::to_string(j));
}

double PuncturedPlane::radius_sum() const { return std::accumulate(r_.begin(), r_.end(), 0.0); }

std::vector<std::size_t> PuncturedPlane::near(Complex z, double factor) const
{
    std::vector<std::size_t> out;
    const double m = std::abs(z);
    auto it = std::lower_bound(mod_.begin(), mod_.end(), m - factor);
    for (; it != mod_.end() && *it <= m + factor; ++it) {
        const auto j = static_cast<std::size_t>(it - mod_.begin());
        if (std::abs(z - a_[j]) < factor * r_[j])
            out.push_back(j);
    }
    return out;
}

// ---------------------------------------------------------------------------

Smoothing::Smoothing(const SmoothingProfile& p) : p_(p)
{
    if (p_.table_size < 64)
        fail(ErrorKind::Precondition, "smoothing table too small");
    switch (p_.mode) {
    case SmoothingMode::Hat:
        return;
    case SmoothingMode::Mollified: {
        const double eps = p_.epsilon;
        if (!(eps > 0.0) || std::exp(-eps) < 0.5 || std::exp(eps) > 1.5 + 1e-12)
            fail(ErrorKind::Precondition, "mollifier width must satisfy exp(-eps) >= 1/2 and exp(eps) <= 3/2");
        lo_ = -eps;
        hi_ = eps;
        cumulative([eps](double u) { return bump(u, eps); }, lo_, hi_, p_.table_size, phi_, psi_);
        norm_ = phi_.back();
        for (auto& v : phi_)
            v /= norm_;
        for (auto& v : psi_)
            v /= norm_;
        return;
    }
    case SmoothingMode::PaperH: {
        c_ = p_.shift_c;
        if (std::isnan(c_)) {
            double a = -0.25 + 1e-9, b = 0.5 - 1e-9;
            double ka = paper_kappa(a);
            for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
                const double m = 0.5 * (a + b);
                const double km = paper_kappa(m);
                if ((km > 0) == (ka > 0)) {
                    a = m;
                    ka = km;
                } else {
                    b = m;
                }
            }
            c_ = 0.5 * (a + b);
        }
        if (!(c_ > -0.25 && c_ < 0.5))
            fail(ErrorKind::Precondition, "paper_h shift must lie in (-1/4, 1/2)");
        kappa_ = paper_kappa(c_);
        lo_ = 0.75 + c_;
        hi_ = 1.25 + c_;
        const double c = c_;
        cumulative([c](double s) { return 4 * M_PI * paper_h(s - c) / s; }, lo_, hi_, p_.table_size, phi_, psi_);
        return;
    }
    }
}

double Smoothing::H(double r) const
{
    if (!(r > 0.0))
        return 0.0;
    switch (p_.mode) {
    case SmoothingMode::Hat:
        return log_plus(r);
    case SmoothingMode::Mollified: {
        const double s = std::log(r);
        if (s <= lo_)
            return 0.0;
        if (s >= hi_)
            return s;
        const double eps = p_.epsilon;
        const double scale = 1.0 / norm_;
        const double Phi = hermite(phi_, lo_, hi_, s, [&](double u) { return bump(u, eps) * scale; });
        const double Psi = hermite(psi_, lo_, hi_, s, [&](double u) { return u * bump(u, eps) * scale; });
        // Convexity of max(0, ·) gives H ≥ log⁺ exactly; the clamp only removes rounding.
        return std::max(s * Phi - Psi, std::max(s, 0.0));
    }
    case SmoothingMode::PaperH: {
        if (r <= lo_)
            return 0.0;
        const double c = c_;
        if (r >= hi_)
            return phi_.back() + std::log(r / hi_);
        return hermite(phi_, lo_, hi_, r, [c](double s) { return 4 * M_PI * paper_h(s - c) / s; });
    }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------

double sigma_hat(const PuncturedPlane& plane, Complex z)
{
    double t = log_plus(std::abs(z));
    for (auto j : plane.near(z, 1.0)) {
        const double d = std::abs(z - plane.punctures()[j]);
        if (d == 0.0)
            return kInf;
        t += plane.radii()[j] * std::log(plane.radii()[j] / d);
    }
    return std::exp(t);
}

double tau(const Exhaustion& ex, Complex z)
{
    const auto& s = *ex.smoothing;
    double t = s.H(std::abs(z));
    for (auto j : ex.plane.near(z, 2.0)) {
        const double d = std::abs(z - ex.plane.punctures()[j]);
        if (d == 0.0)
            return kInf;
        const double rj = ex.plane.radii()[j];
        t += rj * s.H(rj / d);
    }
    return t;
}

double sigma(const Exhaustion& ex, Complex z) { return std::exp(tau(ex, z)); }

bool ball_membership(const Exhaustion& ex, Complex z, double r) { return sigma(ex, z) < r; }

bool in_support(const PuncturedPlane& plane, Complex z)
{
    const double m = std::abs(z);
    if (m >= 0.5 && m <= 1.5)
        return true;
    for (auto j : plane.near(z, 1.5)) {
        const double d = std::abs(z - plane.punctures()[j]);
        if (d >= 0.5 * plane.radii()[j])
            return true;
    }
    return false;
}

// ---------------------------------------------------------------------------

double annulus_integral(const std::function<double(Complex)>& g, Complex c, double rho0, double rho1,
                        const PolarRule& rule)
{
    if (!(rho1 > rho0) || rho0 < 0)
        return 0.0;
    const long evals = static_cast<long>(rule.panels) * rule.nodes * rule.angular;
    if (evals > rule.budget)
        fail(ErrorKind::NonConvergent, "polar grid of " + std::to_string(evals) + " points exceeds the budget");
    const auto& gr = gauss(rule.nodes);
    const double h = (rho1 - rho0) / rule.panels;
    const double dth = 2 * M_PI / rule.angular;
    double total = 0.0;
    for (int p = 0; p < rule.panels; ++p)
        for (int k = 0; k < rule.nodes; ++k) {
            const double s = rho0 + p * h + 0.5 * h * (gr.x[k] + 1);
            double ring = 0.0;
            for (int a = 0; a < rule.angular; ++a)
                ring += g(c + std::polar(s, (a + 0.5) * dth));
            total += 0.5 * h * gr.w[k] * s * ring * dth;
        }
    return total;
}

RadiiChoice choose_radii(std::vector<Complex> punctures, const analytic::CurveMap& f)
{
    std::stable_sort(punctures.begin(), punctures.end(),
                     [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    RadiiChoice out;
    const std::size_t n = punctures.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (punctures[i] == punctures[j])
                fail(ErrorKind::Precondition, "punctures must be distinct");
    const PolarRule rule{4, 8, 32};
    auto density = [&](Complex z) { return analytic::fs_density(f, z); };
    for (std::size_t j = 0; j < n; ++j) {
        double sep = kInf;
        for (std::size_t i = 0; i < n; ++i)
            if (i != j)
                sep = std::min(sep, std::abs(punctures[i] - punctures[j]));
        double r = std::min(sep / 4, 0.5);
        const double bound = std::ldexp(1.0, -static_cast<int>(j + 1));
        double mass = annulus_integral(density, punctures[j], 0.0, 1.5 * r, rule);
        while (mass >= bound && r > 1e-6) {
            r = std::max(r / 2, 1e-6);
            mass = annulus_integral(density, punctures[j], 0.0, 1.5 * r, rule);
        }
        if (mass >= bound)
        {
            char buf[128];
            std::snprintf(buf, sizeof buf, "puncture %zu: radius floor 1e-6 reached, mass %.3e >= 2^-%zu", j, mass,
                          j + 1);
            out.warnings.emplace_back(buf);
        }
        out.radii.push_back(r);
        out.masses.push_back(mass);
    }
    out.punctures = std::move(punctures);
    return out;
}

// ---------------------------------------------------------------------------

double order_gap(const analytic::CurveMap& f, const Exhaustion& ex, double r, const PolarRule& rule)
{
    if (!(r > 1.0))
        fail(ErrorKind::Precondition, "functionals are defined for r > 1");
    const auto& S = *ex.smoothing;
    auto L = [r](double x) { return x < r ? std::log(r / x) : 0.0; };
    double gap = 0.0;
    // Telescoping: central smoothing against max(1,|z|), then each puncture against the
    // central σ alone (the discs D(a_j, 2 r_j) are disjoint, so at most one term is active).
    if (S.profile().mode != SmoothingMode::Hat) {
        auto g = [&](Complex z) {
            const double m = std::abs(z);
            const double d = L(std::max(1.0, m)) - L(std::exp(S.H(m)));
            return d > 0 ? analytic::fs_density(f, z) * d : 0.0;
        };
        gap += annulus_integral(g, 0.0, 0.5, 1.0, rule) + annulus_integral(g, 0.0, 1.0, 1.5, rule);
    }
    const bool hat = S.profile().mode == SmoothingMode::Hat;
    for (std::size_t j = 0; j < ex.plane.size(); ++j) {
        const Complex a = ex.plane.punctures()[j];
        const double rj = ex.plane.radii()[j];
        if (std::abs(a) - 1.5 * rj >= r)
            break;
        auto g = [&](Complex z) {
            const double t0 = S.H(std::abs(z));
            const double d = std::abs(z - a);
            const double tj = rj * S.H(rj / d);
            const double v = L(std::exp(t0)) - (d == 0.0 ? 0.0 : L(std::exp(t0 + tj)));
            return v > 0 ? analytic::fs_density(f, z) * v : 0.0;
        };
        const double split = hat ? rj : rj / 1.5;
        gap += annulus_integral(g, a, 0.0, split, rule) + annulus_integral(g, a, split, 1.5 * rj, rule);
    }
    return gap;
}

double parabolic_order(const analytic::CurveMap& f, const Exhaustion& ex, double r, const PolarRule& rule)
{
    return nev::order_function_area(f, r) - order_gap(f, ex, r, rule);
}

double parabolic_counting(const std::vector<analytic::ZeroRecord>& zeros, const Exhaustion& ex, double r, int level)
{
    if (!(r > 1.0))
        fail(ErrorKind::Precondition, "functionals are defined for r > 1");
    double n = 0.0;
    for (const auto& z : zeros) {
        const double s = sigma(ex, z.location);
        if (s < r)
            n += std::min(level, z.multiplicity) * std::log(r / std::max(s, 1.0));
    }
    return n;
}

std::vector<double> hole_thresholds(const Exhaustion& ex, int samples)
{
    std::vector<double> t;
    for (std::size_t j = 0; j < ex.plane.size(); ++j) {
        double m = 0.0;
        for (int k = 0; k < samples; ++k)
            m = std::max(m, sigma(ex, ex.plane.punctures()[j] +
                                          std::polar(1.5 * ex.plane.radii()[j], 2 * M_PI * k / samples)));
        t.push_back(m);
    }
    std::sort(t.begin(), t.end());
    return t;
}

int euler_characteristic(const std::vector<double>& thresholds, double t)
{
    return 1 - static_cast<int>(std::count_if(thresholds.begin(), thresholds.end(), [t](double x) { return x < t; }));
}

double weighted_euler(const std::vector<double>& thresholds, double r)
{
    double x = 0.0;
    for (double t : thresholds)
        if (t < r)
            x += std::log(r / std::max(1.0, t));
    return x;
}

double weighted_euler_countform(const PuncturedPlane& plane, double r)
{
    double x = 0.0;
    for (const auto& a : plane.punctures())
        if (std::abs(a) < r)
            x += std::log(r / std::max(1.0, std::abs(a)));
    return x;
}

int boundary_components(const PuncturedPlane& plane, double r)
{
    int c = 1;
    for (std::size_t j = 0; j < plane.size(); ++j)
        if (std::abs(plane.punctures()[j]) + plane.radii()[j] < r)
            ++c;
    return c;
}

DecaySeries tangency_deficit(const analytic::CurveMap& g, const std::vector<analytic::ZeroRecord>& zeros,
                             const Exhaustion& ex, const nev::RadialGrid& grid, double window_fraction,
                             const PolarRule& rule, double min_T)
{
    DecaySeries out;
    for (double r : grid.radii()) {
        const double T = parabolic_order(g, ex, r, rule);
        if (T < min_T)
            fail(ErrorKind::CurveTooSmall, "parabolic order " + std::to_string(T) + " below threshold at r = " +
                                               std::to_string(r));
        const double d = parabolic_counting(zeros, ex, r) - parabolic_counting(zeros, ex, r, 1);
        out.values.push_back(d / T);
    }
    for (std::size_t i = grid.tail_start(window_fraction) + 1; i < out.values.size(); ++i)
        if (out.values[i] > out.values[i - 1] + 1e-12)
            out.decreasing = false;
    return out;
}

MarginSeries euler_vs_counting(const PuncturedPlane& plane, const std::vector<analytic::ZeroRecord>& zeros,
                               const nev::RadialGrid& grid)
{
    MarginSeries out;
    const auto& rs = grid.radii();
    const std::size_t head = std::max<std::size_t>(1, (rs.size() + 3) / 4);
    for (std::size_t i = 0; i < head && i < rs.size(); ++i) {
        const double d = weighted_euler_countform(plane, rs[i]) - nev::counting_from_zeros(zeros, rs[i], 1);
        out.C = std::max(out.C, d / std::log(rs[i]));
    }
    for (double r : rs)
        out.margin.push_back(nev::counting_from_zeros(zeros, r, 1) + out.C * std::log(r) -
                             weighted_euler_countform(plane, r));
    return out;
}

namespace {

double stencil_laplacian(const std::function<double(Complex)>& f, Complex z, double h)
{
    return (f(z + h) + f(z - h) + f(z + Complex(0, h)) + f(z - Complex(0, h)) - 4 * f(z)) / (h * h);
}

double piece_mass(const std::function<double(Complex)>& f, Complex c, double rho0, double rho1, const PolarRule& rule)
{
    const double h = (rho1 - rho0) / (rule.panels * rule.nodes * 8.0);
    auto g = [&](Complex z) { return std::abs(stencil_laplacian(f, z, h)) / (4 * M_PI); };
    return annulus_integral(g, c, rho0, rho1, rule);
}

} // namespace

double ddc_mass(const Exhaustion& ex, double window, const PolarRule& rule)
{
    const auto& S = *ex.smoothing;
    double mass = 0.0;
    const bool hat = S.profile().mode == SmoothingMode::Hat;
    // σ̂ carries circle measures: ½ν(0,1) and (r_j/2)ν(a_j, r_j).
    if (window > 0.5)
        mass += hat ? 0.5 : piece_mass([&](Complex z) { return S.H(std::abs(z)); }, 0.0, 0.5, 1.5, rule);
    for (std::size_t j = 0; j < ex.plane.size(); ++j) {
        const Complex a = ex.plane.punctures()[j];
        const double rj = ex.plane.radii()[j];
        if (std::abs(a) - 1.5 * rj >= window)
            break;
        if (hat) {
            mass += 0.5 * rj;
            continue;
        }
        mass += piece_mass([&](Complex z) { return rj * S.H(rj / std::abs(z - a)); }, a, 0.5 * rj, 1.5 * rj, rule);
    }
    return mass;
}

// ---------------------------------------------------------------------------

std::string exhaustion_csv(const std::vector<ExhaustionRow>& rows)
{
    std::ostringstream os;
    os.precision(17);
    auto num = [&os](double v) {
        if (std::isfinite(v))
            os << v;
    };
    os << "r,chi,X_weighted,X_countform,boundary_components,T_parab,N_parab_inf,N_parab_1,gap,margin\n";
    for (const auto& r : rows) {
        os << r.r << ',' << r.chi << ',' << r.X_weighted << ',' << r.X_countform << ',' << r.boundary_components
           << ',';
        num(r.T_parab);
        os << ',';
        num(r.N_parab_inf);
        os << ',';
        num(r.N_parab_1);
        os << ',';
        num(r.gap);
        os << ',';
        num(r.margin);
        os << '\n';
    }
    return os.str();
}

PuncturedPlane plane_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        fail(ErrorKind::Schema, "plane must be an object");
    std::vector<Complex> a;
    std::vector<double> r;
    if (j.contains("punctures")) {
        if (!j["punctures"].is_array())
            fail(ErrorKind::Schema, "/punctures must be an array");
        for (const auto& p : j["punctures"])
            a.push_back(analytic::complex_from_json(p));
    }
    if (j.contains("radii")) {
        if (!j["radii"].is_array())
            fail(ErrorKind::Schema, "/radii must be an array");
        for (const auto& x : j["radii"]) {
            if (!x.is_number())
                fail(ErrorKind::Schema, "/radii entries must be numbers");
            r.push_back(x.get<double>());
        }
    }
    return PuncturedPlane(std::move(a), std::move(r));
}

SmoothingProfile profile_from_json(const nlohmann::json& j)
{
    SmoothingProfile p;
    if (j.is_null())
        return p;
    if (!j.is_object())
        fail(ErrorKind::Schema, "/profile must be an object");
    for (const auto& [k, v] : j.items()) {
        if (k == "mode") {
            const auto m = v.get<std::string>();
            if (m == "mollified")
                p.mode = SmoothingMode::Mollified;
            else if (m == "paper_h")
                p.mode = SmoothingMode::PaperH;
            else if (m == "hat")
                p.mode = SmoothingMode::Hat;
            else
                fail(ErrorKind::Schema, "/profile/mode: unknown mode '" + m + "'");
        } else if (k == "epsilon") {
            p.epsilon = v.get<double>();
        } else if (k == "shift_c") {
            p.shift_c = v.get<double>();
        } else if (k == "table_size") {
            p.table_size = v.get<int>();
        } else {
            fail(ErrorKind::Schema, "/profile/" + k + ": unknown key");
        }
    }
    return p;
}

nlohmann::json to_json(const PuncturedPlane& p, const SmoothingProfile& prof)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& z : p.punctures())
        a.push_back({{"re", z.real()}, {"im", z.imag()}});
    nlohmann::json pr{{"mode", prof.mode == SmoothingMode::Mollified ? "mollified"
                               : prof.mode == SmoothingMode::PaperH  ? "paper_h"
                                                                     : "hat"}};
    if (prof.mode == SmoothingMode::Mollified)
        pr["epsilon"] = prof.epsilon;
    if (prof.mode == SmoothingMode::PaperH && !std::isnan(prof.shift_c))
        pr["shift_c"] = prof.shift_c;
    return {{"punctures", a}, {"radii", p.radii()}, {"profile", pr}};
}

} // namespace nevlab::parabolic
