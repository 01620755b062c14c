#include "nevlab/nevanlinna/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nevlab/polycore/resultant.hpp"

namespace nevlab::nev {

namespace {

// Offset of the first trapezoid node; keeps nodes off the coordinate axes.
constexpr double kTheta0 = 0.1234;

poly::FloatForm normalized(const poly::FloatForm& q)
{
    const double m = q.poly().max_coefficient_magnitude();
    if (!(m > 0))
        fail(ErrorKind::Precondition, "divisor form is zero");
    return poly::scale(q, Complex(1.0 / m));
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void check_radius(double r)
{
    if (!(r > 1.0))
        fail(ErrorKind::Precondition, "functionals are defined for r > 1");
}

} // namespace

double circle_mean(const std::function<double(Complex)>& g, Complex center, double r, const QuadOptions& q)
{
    int n = q.initial_samples;
    double sum = 0.0;
    for (int k = 0; k < n; ++k)
        sum += g(center + std::polar(r, kTheta0 + 2 * M_PI * k / n));
    double prev = sum / n;
    while (2 * n <= q.max_samples) {
        for (int k = 0; k < n; ++k)
            sum += g(center + std::polar(r, kTheta0 + 2 * M_PI * (k + 0.5) / n));
        n *= 2;
        const double cur = sum / n;
        if (!std::isfinite(cur))
            fail(ErrorKind::NonConvergent, "circle mean is not finite at r = " + fmt(r));
        if (std::abs(cur - prev) <= q.abs_tol + q.rel_tol * std::abs(cur))
            return cur;
        prev = cur;
    }
    fail(ErrorKind::NonConvergent, "circle quadrature did not converge at r = " + fmt(r) + " (last iterates " +
                                       fmt(prev) + ", " + fmt(sum / n) + ")");
}

RadialGrid::RadialGrid(std::vector<double> radii) : radii_(std::move(radii))
{
    if (radii_.empty())
        fail(ErrorKind::Precondition, "radial grid is empty");
    if (!(radii_.front() > 1.0))
        fail(ErrorKind::Precondition, "radial grid must start above 1");
    for (std::size_t k = 1; k < radii_.size(); ++k)
        if (!(radii_[k] > radii_[k - 1]))
            fail(ErrorKind::Precondition, "radial grid must be strictly increasing");
}

RadialGrid RadialGrid::logspace(double r0, double r1, int steps)
{
    if (steps < 1 || !(r1 >= r0))
        fail(ErrorKind::Precondition, "bad grid specification");
    std::vector<double> r;
    if (steps == 1)
        return RadialGrid({r0});
    for (int k = 0; k < steps; ++k)
        r.push_back(std::exp(std::log(r0) + (std::log(r1) - std::log(r0)) * k / (steps - 1)));
    r.back() = r1;
    return RadialGrid(std::move(r));
}

std::size_t RadialGrid::tail_start(double fraction) const
{
    const auto n = radii_.size();
    const auto keep = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * n)));
    return n - std::min(n, keep);
}

double order_function(const analytic::CurveMap& f, double r, const QuadOptions& q, Complex base)
{
    check_radius(r);
    const double m = circle_mean([&](Complex z) { return analytic::curve_log_norm(f, z); }, 0.0, r, q);
    return m - analytic::curve_log_norm(f, base);
}

double order_function_area(const analytic::CurveMap& f, double r, const QuadOptions& q)
{
    check_radius(r);
    auto g = [&](Complex z) { return analytic::curve_log_norm(f, z); };
    return circle_mean(g, 0.0, r, q) - circle_mean(g, 0.0, 1.0, q);
}

DivisorZeros divisor_zeros(const CurvePtr& f, const poly::FloatForm& q, double radius, const analytic::ZeroOptions& opt)
{
    const analytic::Pullback h(normalized(q), f);
    if (auto p = h.polynomial()) {
        bool zero = true;
        for (const auto& c : p->exact)
            zero = zero && c.is_zero();
        if (zero)
            fail(ErrorKind::CurveInsideDivisor, "the curve lies inside the divisor");
    } else if (h.identically_zero()) {
        fail(ErrorKind::CurveInsideDivisor, "the curve lies inside the divisor");
    }
    DivisorZeros d;
    d.zeros = analytic::zeros_in_disc(h, 0.0, radius, opt);
    d.radius = radius;
    d.degree = q.degree();
    return d;
}

double counting_from_zeros(const std::vector<ZeroRecord>& zeros, double r, int level)
{
    double n = 0.0;
    for (const auto& z : zeros) {
        const double a = std::abs(z.location);
        if (a < r)
            n += std::min(level, z.multiplicity) * std::log(r / std::max(a, 1.0));
    }
    return n;
}

double counting_function(const CurvePtr& f, const poly::FloatForm& q, double r, int level,
                         const analytic::ZeroOptions& opt)
{
    check_radius(r);
    return counting_from_zeros(divisor_zeros(f, q, r, opt).zeros, r, level);
}

double proximity_function(const CurvePtr& f, const poly::FloatForm& q, double r, const DivisorZeros& zeros,
                          const QuadOptions& quad)
{
    check_radius(r);
    constexpr double band = 1.5;
    if (zeros.radius < r + band)
        fail(ErrorKind::Precondition, "zero list does not cover the proximity band around r");
    const poly::FloatForm qn = normalized(q);
    const int d = q.degree();
    std::vector<ZeroRecord> near;
    double correction = 0.0;
    for (const auto& z : zeros.zeros) {
        const double a = std::abs(z.location);
        if (std::abs(a - r) < band) {
            near.push_back(z);
            correction += z.multiplicity * std::log(std::max(r, a));
        }
    }
    for (const auto& z : near)
        if (std::abs(std::abs(z.location) - r) < 1e-12 * r)
            fail(ErrorKind::ZeroOnContour, "a zero of the divisor lies on the circle |z| = " + fmt(r));
    auto g = [&](Complex z) {
        const analytic::CurvePoint p = f->eval(z);
        double nu = 0.0;
        for (const auto& v : p.u)
            nu += std::norm(v);
        double v = 0.5 * d * std::log(nu) - std::log(std::abs(qn.evaluate(p.u)));
        for (const auto& a : near)
            v += a.multiplicity * std::log(std::abs(z - a.location));
        return v;
    };
    return circle_mean(g, 0.0, r, quad) - correction;
}

double proximity_function(const CurvePtr& f, const poly::FloatForm& q, double r, const QuadOptions& quad)
{
    return proximity_function(f, q, r, divisor_zeros(f, q, r + 2.0), quad);
}

double fmt_residual(const CurvePtr& f, const poly::FloatForm& q, double r, const DivisorZeros& zeros,
                    const QuadOptions& quad)
{
    const double m = proximity_function(f, q, r, zeros, quad);
    const double n = counting_from_zeros(zeros.zeros, r, kFull);
    return m + n - q.degree() * order_function(*f, r, quad);
}

DefectEstimate defect_estimate(const CurvePtr& f, const poly::FloatForm& q, const RadialGrid& grid, int level,
                               const DivisorZeros& zeros, double window_fraction, const QuadOptions& quad,
                               double min_T)
{
    if (zeros.radius < grid.back())
        fail(ErrorKind::Precondition, "zero list does not cover the grid");
    DefectEstimate e;
    const std::size_t start = grid.tail_start(window_fraction);
    e.window_start = grid.radii()[start];
    e.window_end = grid.back();
    e.unclamped = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double r = grid.radii()[k];
        const double T = order_function(*f, r, quad);
        const double N = counting_from_zeros(zeros.zeros, r, level);
        const double v = T > 0 ? 1.0 - N / (q.degree() * T) : std::numeric_limits<double>::quiet_NaN();
        e.running.push_back(v);
        if (k >= start) {
            if (!(T >= min_T))
                fail(ErrorKind::CurveTooSmall, "order function " + fmt(T) + " below threshold at r = " + fmt(r));
            e.unclamped = std::min(e.unclamped, v);
        }
    }
    e.value = std::clamp(e.unclamped, 0.0, 1.0);
    return e;
}

DefectEstimate defect_estimate(const CurvePtr& f, const poly::FloatForm& q, const RadialGrid& grid, int level,
                               double window_fraction, const QuadOptions& quad)
{
    return defect_estimate(f, q, grid, level, divisor_zeros(f, q, grid.back()), window_fraction, quad);
}

namespace {

void require_general_position(const std::vector<poly::FloatForm>& hyps, int nvars)
{
    const int q = static_cast<int>(hyps.size());
    std::vector<int> idx(nvars);
    // Enumerate (n+1)-subsets in lexicographic order.
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == nvars) {
            std::vector<poly::FloatForm> sub;
            for (int i : idx)
                sub.push_back(normalized(hyps[i]));
            if (!poly::macaulay_resultant_float(sub).nonzero) {
                std::string s;
                for (int i : idx)
                    s += (s.empty() ? "" : ",") + std::to_string(i);
                fail(ErrorKind::GeneralPosition, "divisors {" + s + "} share a common zero");
            }
            return;
        }
        for (int i = start; i < q; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

} // namespace

double smt_margin(const CurvePtr& f, const std::vector<poly::FloatForm>& hyps, double r, SmtMode mode,
                  const std::vector<DivisorZeros>& zeros, const QuadOptions& quad)
{
    const int nvars = f->dim();
    const int n = nvars - 1;
    const int q = static_cast<int>(hyps.size());
    if (zeros.size() != hyps.size())
        fail(ErrorKind::DimensionMismatch, "one zero list per divisor is required");
    if (mode == SmtMode::Ru && q < n + 2)
        fail(ErrorKind::Precondition, "the Ru form needs q >= n + 2 divisors");
    if (mode == SmtMode::Cartan) {
        if (q < n + 1)
            fail(ErrorKind::Precondition, "Cartan's form needs q >= n + 1 hyperplanes");
        for (const auto& h : hyps)
            if (h.degree() != 1)
                fail(ErrorKind::Precondition, "Cartan's form needs hyperplanes");
    }
    for (const auto& h : hyps)
        if (h.nvars() != nvars)
            fail(ErrorKind::DimensionMismatch, "divisor and curve live in different projective spaces");
    require_general_position(hyps, nvars);
    double rhs = 0.0;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
        if (mode == SmtMode::Cartan)
            rhs += counting_from_zeros(zeros[i].zeros, r, n);
        else
            rhs += counting_from_zeros(zeros[i].zeros, r, kFull) / hyps[i].degree();
    }
    return rhs - (q - n - 1) * order_function(*f, r, quad);
}

double smt_margin(const CurvePtr& f, const std::vector<poly::FloatForm>& hyps, double r, SmtMode mode,
                  const QuadOptions& quad)
{
    std::vector<DivisorZeros> zs;
    for (const auto& h : hyps)
        zs.push_back(divisor_zeros(f, h, r));
    return smt_margin(f, hyps, r, mode, zs, quad);
}

std::vector<FunctionalRow> functional_table(const CurvePtr& f, const poly::FloatForm& q, const RadialGrid& grid,
                                            const DivisorZeros& zeros, const QuadOptions& quad)
{
    std::vector<FunctionalRow> rows;
    const int n = f->dim() - 1;
    for (double r : grid.radii()) {
        FunctionalRow row;
        row.r = r;
        row.T = order_function(*f, r, quad);
        row.N_inf = counting_from_zeros(zeros.zeros, r, kFull);
        row.N_1 = counting_from_zeros(zeros.zeros, r, 1);
        row.N_n = counting_from_zeros(zeros.zeros, r, n);
        row.m = proximity_function(f, q, r, zeros, quad);
        row.fmt_residual = row.m + row.N_inf - q.degree() * row.T;
        row.defect_running = row.T > 0 ? 1.0 - row.N_inf / (q.degree() * row.T) : 0.0;
        rows.push_back(row);
    }
    return rows;
}

std::string functional_csv(const std::vector<FunctionalRow>& rows)
{
    std::ostringstream os;
    os.precision(17);
    os << "r,T,N_inf,N_1,N_n,m,fmt_residual,defect_running\n";
    for (const auto& r : rows)
        os << r.r << ',' << r.T << ',' << r.N_inf << ',' << r.N_1 << ',' << r.N_n << ',' << r.m << ','
           << r.fmt_residual << ',' << r.defect_running << '\n';
    return os.str();
}

} // namespace nevlab::nev
