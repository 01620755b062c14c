// One line per criterion: "[PASS] n name: detail" or "[FAIL] ...". Exit status 1 if any fails.
// Optional arguments select criteria by number.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "nevlab/lab/lab.hpp"
#include "nevlab/polycore/algebra.hpp"
#include "../unit/support.hpp"

using namespace nevlab;
using analytic::Complex;
using analytic::ExpPolyFunction;
using analytic::ProjectiveCurve;
using nev::CurvePtr;
using nev::RadialGrid;
using nlohmann::json;
using endo::Point;
using poly::FloatForm;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

CurvePtr curve(std::vector<ExpPolyFunction> c) { return std::make_shared<ProjectiveCurve>(std::move(c)); }
CurvePtr line() { return curve({ExpPolyFunction::constant(1.0), ExpPolyFunction::polynomial(1.0, {{0.0, 1}})}); }
CurvePtr expc() { return curve({ExpPolyFunction::constant(1.0), ExpPolyFunction::exponential({0.0, 1.0})}); }
CurvePtr exp3()
{
    return curve({ExpPolyFunction::constant(1.0), ExpPolyFunction::exponential({0.0, 1.0}),
                  ExpPolyFunction::exponential({0.0, Complex(0, 1)})});
}
CurvePtr poly3()
{
    return curve({ExpPolyFunction::constant(1.0),
                  ExpPolyFunction::polynomial(1.0, {{Complex(0.5, 0.5), 1}, {-1.0, 1}}),
                  ExpPolyFunction::polynomial(2.0, {{Complex(0, 2), 1}})});
}
CurvePtr twisted()
{
    return curve({ExpPolyFunction::polynomial(1.0, {{Complex(2, -1), 1}}),
                  ExpPolyFunction::polynomial(1.0, {{0.0, 2}}),
                  ExpPolyFunction::polynomial(0.5, {{1.0, 1}, {Complex(-1, 1), 1}, {Complex(0, -3), 1}})});
}

FloatForm f2(std::vector<std::pair<std::vector<int>, Complex>> t) { return testsupport::form(2, std::move(t)); }
FloatForm f3(std::vector<std::pair<std::vector<int>, Complex>> t) { return testsupport::form(3, std::move(t)); }

struct Pair {
    const char* name;
    CurvePtr f;
    FloatForm q;
};

// The curve/divisor pairs shared by criteria 2 and 3.
std::vector<Pair> bundled_pairs()
{
    return {{"[1:z] vs {z1=0}", line(), f2({{{0, 1}, 1.0}})},
            {"[1:e^z] vs {z1=0}", expc(), f2({{{0, 1}, 1.0}})},
            {"[1:e^z] vs {z0=z1}", expc(), f2({{{1, 0}, 1.0}, {{0, 1}, -1.0}})},
            {"quadric vs conic", poly3(), f3({{{2, 0, 0}, 1.0}, {{0, 1, 1}, -1.0}, {{0, 0, 2}, 0.5}})},
            {"cubic vs line", twisted(), f3({{{1, 0, 0}, 1.0}, {{0, 1, 0}, 2.0}, {{0, 0, 1}, Complex(0, -3)}})},
            {"[1:e^z:e^iz] vs line", exp3(), f3({{{1, 0, 0}, 1.0}, {{0, 1, 0}, 2.0}, {{0, 0, 1}, Complex(-1, 1)}})}};
}

// ---------------------------------------------------------------------------

Outcome c1()
{
    const auto f = line();
    const auto grid = RadialGrid::logspace(2, 1000, 30);
    std::vector<double> d;
    for (double r : grid.radii())
        d.push_back(nev::order_function(*f, r) - 0.5 * std::log1p(r * r));
    double mean = 0.0;
    for (double x : d)
        mean += x / d.size();
    double worst = 0.0;
    for (double x : d)
        worst = std::max(worst, std::abs(x - mean));
    return {worst < 1e-6, fmt("max |T - log(1+r^2)/2 - c| = %.2e over 30 radii in [2, 1000]", worst)};
}

Outcome c2()
{
    const auto grid = RadialGrid::logspace(2, 200, 10);
    double worst = 0.0;
    std::string which;
    for (const auto& p : bundled_pairs()) {
        const auto zs = nev::divisor_zeros(p.f, p.q, 220.0);
        double lo = 1e300, hi = -1e300;
        for (double r : grid.radii()) {
            const double v = nev::fmt_residual(p.f, p.q, r, zs);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo >= worst) {
            worst = hi - lo;
            which = p.name;
        }
    }
    return {worst < 0.5, fmt("largest spread %.2e (%s), 6 pairs, r in [2, 200]", worst, which.c_str())};
}

// Radii 25 to 400 with the window from r = 100, where the O(1)/T term of 1 - N/(dT) is small.
Outcome c3(const json* report)
{
    const auto grid = RadialGrid::logspace(25, 400, 17);
    double lo = 1e300, hi = -1e300;
    std::string at;
    auto take = [&](double u, const char* name) {
        if (u < lo)
            at = name;
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    };
    for (const auto& p : bundled_pairs())
        take(nev::defect_estimate(p.f, p.q, grid).unclamped, p.name);
    take(nev::defect_estimate(expc(), f2({{{1, 0}, 1.0}}), grid).unclamped, "[1:e^z] vs {z0=0}");
    std::string extra;
    if (report && report->contains("tables")) {
        double plo = 1e300;
        for (const auto& row : (*report)["tables"]["defects"]["rows"])
            plo = std::min(plo, row[3].get<double>());
        extra = fmt("; three-conics pipeline (r <= 16, reported only) min %.4f", plo);
    }
    return {lo >= -0.02 && hi <= 1.02,
            fmt("unclamped defects in [%.4f, %.4f] over 7 pairs, lowest %s%s", lo, hi, at.c_str(), extra.c_str())};
}

Outcome c4()
{
    const auto grid = RadialGrid::logspace(25, 400, 17);
    const auto f = expc();
    const double a = nev::defect_estimate(f, f2({{{0, 1}, 1.0}}), grid).value;
    const double b = nev::defect_estimate(f, f2({{{1, 0}, 1.0}}), grid).value;
    const double c = nev::defect_estimate(f, f2({{{1, 0}, 1.0}, {{0, 1}, -1.0}}), grid).value;
    const double s = a + b + c;
    const bool ok = std::abs(a - 1) <= 0.05 && std::abs(b - 1) <= 0.05 && c <= 0.05 && std::abs(s - 2) <= 0.05;
    return {ok, fmt("defects (%.4f, %.4f, %.4f), sum %.4f, window r in [100, 400]", a, b, c, s)};
}

Outcome c5()
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 3);
    int nonzero = 0, match = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<poly::ExactForm> qs;
        int total = 0;
        for (int i = 0; i < 3; ++i) {
            const int d = deg(rng);
            total += d;
            qs.push_back(testsupport::random_exact_form(rng, 3, d));
        }
        const auto J = poly::jacobian_determinant<poly::GaussianRational>(qs);
        if (J.is_zero())
            continue;
        ++nonzero;
        bool homogeneous = true;
        for (const auto& [e, c] : J.poly().terms())
            homogeneous = homogeneous && std::accumulate(e.begin(), e.end(), 0) == total - 3;
        match += homogeneous && J.degree() == total - 3;
    }
    return {nonzero > 0 && match == nonzero, fmt("%d of %d nonzero Jacobians have degree sum(d_i) - 3", match, nonzero)};
}

Outcome c6()
{
    int ok = 0;
    std::set<std::size_t> tries;
    for (std::uint64_t master = 1; master <= 20; ++master) {
        try {
            const auto fam = endo::construct_generic_family(2, {2, 2, 2}, master * 1000, 5);
            const bool full = fam.certificate.positive && fam.certificate.exact && fam.certificate.subsets.size() == 4;
            ok += full;
            tries.insert(fam.tried.size());
        } catch (const Error&) {
        }
    }
    return {ok == 20, fmt("%d of 20 master seeds certified within 5 seeds (max tries %zu)", ok,
                          tries.empty() ? std::size_t(0) : *tries.rbegin())};
}

Outcome c7()
{
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> deg(1, 5);
    std::uniform_int_distribution<long> c(-9, 9);
    int exact_ok = 0;
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + t % 3;
        const auto p = testsupport::random_exact_form(rng, n, deg(rng));
        std::vector<poly::GaussianRational> x;
        for (int i = 0; i < n; ++i)
            x.emplace_back(poly::GaussianRational(c(rng), c(rng)));
        exact_ok += poly::euler_residual(p, std::span<const poly::GaussianRational>(x)).is_zero();

        const auto q = testsupport::random_float_form(rng, n, deg(rng));
        const auto y = testsupport::random_point(rng, n);
        double scale = 0.0;
        for (int v = 0; v < n; ++v)
            scale += std::abs(poly::partial_derivative(q, v).evaluate(y) * y[v]);
        worst = std::max(worst, std::abs(poly::euler_residual(q, std::span<const Complex>(y))) / scale);
    }
    return {exact_ok == 100 && worst < 1e-10,
            fmt("exact residual zero in %d of 100, worst floating residual %.2e", exact_ok, worst)};
}

Outcome c8(const json& rep)
{
    const auto& s = rep["summary"];
    const int acc = s["jump"]["accepted"], passed = s["jump"]["passed"];
    const double frac = s["local_multiplicity"]["fraction_order_two"];
    const int generic = s["local_multiplicity"]["samples"].get<int>() - s["local_multiplicity"]["exceptional"].get<int>();
    return {acc >= 20 && passed == acc && frac >= 0.95,
            fmt("jump verdict pass on %d of %d accepted events; order 2 at %.1f%% of %d generic samples", passed, acc,
                100 * frac, generic)};
}

Point unit(Point x)
{
    double n = 0.0;
    for (const auto& c : x)
        n += std::norm(c);
    for (auto& c : x)
        c /= std::sqrt(n);
    return x;
}

Outcome c9()
{
    const auto fam = endo::construct_generic_family(2, {2, 2, 2}, 7, 5);
    const auto F = endo::build_endomorphism(fam.forms);
    const auto V = endo::critical_locus(F).vee.poly();
    endo::ImplicitOptions io;
    io.seed = 11;
    const auto img = endo::implicitize_image(F, V, 6, io);
    const auto& W = img.dub.poly();
    double wscale = 0.0;
    for (const auto& [e, c] : W.terms())
        wscale += std::abs(c);
    std::vector<FloatForm> dV;
    for (int v = 0; v < 3; ++v)
        dV.push_back(poly::partial_derivative(V, v));
    auto grad = [&](const Point& x) {
        Point g(3);
        for (int v = 0; v < 3; ++v)
            g[v] = dV[v].evaluate(x);
        return g;
    };
    // Walk along 𝒱: step in a tangent direction, then Newton back onto 𝒱.
    std::mt19937_64 rng(909);
    std::normal_distribution<double> nd;
    double worst = 0.0;
    const auto starts = endo::sample_locus(V, 10, 404);
    for (const auto& p0 : starts) {
        Point p = p0;
        for (int step = 0; step < 40; ++step) {
            Point g = grad(p), v(3);
            for (auto& c : v)
                c = {nd(rng), nd(rng)};
            Complex gv = 0.0, pv = 0.0;
            double gg = 0.0;
            for (int i = 0; i < 3; ++i) {
                gv += g[i] * v[i];
                gg += std::norm(g[i]);
            }
            for (int i = 0; i < 3; ++i)
                v[i] -= gv * std::conj(g[i]) / gg;
            for (int i = 0; i < 3; ++i)
                pv += std::conj(p[i]) * v[i];
            for (int i = 0; i < 3; ++i)
                v[i] -= pv * p[i];
            v = unit(v);
            for (int i = 0; i < 3; ++i)
                p[i] += 0.01 * v[i];
            for (int it = 0; it < 8; ++it) {
                const Complex val = V.evaluate(p);
                g = grad(p);
                gg = 0.0;
                for (const auto& c : g)
                    gg += std::norm(c);
                for (int i = 0; i < 3; ++i)
                    p[i] -= val * std::conj(g[i]) / gg;
            }
            p = unit(p);
            worst = std::max(worst, std::abs(W.evaluate(unit(F.apply(p)))) / wscale);
        }
    }
    const bool ok = img.validation < 1e-6 && worst < 1e-6 && img.degree_found <= 6;
    return {ok, fmt("degree %d, fresh-sample residual %.2e, worst |W(F(p))|/scale %.2e on 10 arcs of 40 steps",
                    img.degree_found, img.validation, worst)};
}

Outcome c10()
{
    std::ifstream in(std::string(NEVLAB_SOURCE_DIR) + "/scenarios/plane.json");
    const auto pj = json::parse(in);
    parabolic::Exhaustion ex{parabolic::plane_from_json(pj), std::make_shared<parabolic::Smoothing>()};
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(-7, 7);
    int below = 0, off = 0, off_bad = 0;
    for (int i = 0; i < 10000; ++i) {
        const Complex z(u(rng), u(rng));
        const double s = parabolic::sigma(ex, z), sh = parabolic::sigma_hat(ex.plane, z);
        below += s < sh * (1 - 1e-13);
        if (!parabolic::in_support(ex.plane, z)) {
            ++off;
            off_bad += std::abs(s - sh) > 1e-12 * sh;
        }
    }
    // Probes concentrated near the punctures, where σ and σ̂ differ.
    int near_below = 0;
    std::uniform_real_distribution<double> ang(0, 2 * M_PI), rad(0, 1);
    for (int i = 0; i < 10000; ++i) {
        const std::size_t j = i % ex.plane.size();
        const Complex z = ex.plane.punctures()[j] + std::polar(2 * ex.plane.radii()[j] * rad(rng), ang(rng));
        if (z == ex.plane.punctures()[j])
            continue;
        near_below += parabolic::sigma(ex, z) < parabolic::sigma_hat(ex.plane, z) * (1 - 1e-13);
    }
    const parabolic::Smoothing H;
    double exact_dev = 0.0, lo = 1e300, hi = -1e300;
    for (int k = 0; k <= 2000; ++k) {
        const double r = 1.5 * std::pow(1e6, k / 2000.0);
        exact_dev = std::max(exact_dev, std::abs(H.H(r) - std::log(r)));
    }
    for (int k = 1; k <= 10000; ++k) {
        const double r = 3.0 * k / 10000;
        const double d = H.H(r) - std::max(0.0, std::log(r));
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    const bool ok = below == 0 && near_below == 0 && off_bad == 0 && off > 0 && exact_dev <= 1e-12 && lo >= 0 &&
                    hi <= std::log(1.5);
    return {ok, fmt("sigma < sigma_hat at %d + %d of 2x10^4 probes; sigma != sigma_hat at %d of %d probes off U; "
                    "|H - log r| <= %.1e on [1.5, 1.5e6]; H - log+ in [%.2e, %.4f]",
                    below, near_below, off_bad, off, exact_dev, lo, hi)};
}

Outcome c11()
{
    std::ifstream in(std::string(NEVLAB_SOURCE_DIR) + "/scenarios/plane.json");
    const auto pj = json::parse(in);
    std::vector<parabolic::PuncturedPlane> planes{parabolic::plane_from_json(pj),
                                                  parabolic::PuncturedPlane({Complex(2, 0), Complex(0, 4)}, {0.25, 0.25})};
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-9, 9), rr(0.05, 0.45);
    std::vector<Complex> a;
    std::vector<double> r;
    while (a.size() < 6) {
        const Complex z(u(rng), u(rng));
        const double s = rr(rng);
        bool clear = std::abs(z) > 2;
        for (std::size_t j = 0; j < a.size(); ++j)
            clear = clear && std::abs(z - a[j]) > 2 * (s + r[j]) + 0.1;
        if (clear) {
            a.push_back(z);
            r.push_back(s);
        }
    }
    planes.emplace_back(a, r);
    double C = 0.0, worst_inc = 0.0, worst_ratio = 0.0;
    for (std::size_t k = 0; k < planes.size(); ++k) {
        const parabolic::Exhaustion ex{planes[k], std::make_shared<parabolic::Smoothing>()};
        double reach = 1.0;
        for (std::size_t j = 0; j < planes[k].size(); ++j)
            reach = std::max(reach, std::abs(planes[k].punctures()[j]) + 2 * planes[k].radii()[j]);
        const double m1 = parabolic::ddc_mass(ex, reach + 1), m2 = parabolic::ddc_mass(ex, 2 * reach + 5);
        worst_inc = std::max(worst_inc, std::abs(m2 - m1));
        const double ratio = m2 / (1 + planes[k].radius_sum());
        if (k == 0)
            C = 1.01 * ratio; // fitted here, frozen for the rest
        else
            worst_ratio = std::max(worst_ratio, ratio);
    }
    return {worst_inc < 1e-6 && worst_ratio < C,
            fmt("increments <= %.1e past the last annulus; mass/(1+sum r_j) <= %.4f < C = %.4f (fitted on the first "
                "plane)",
                worst_inc, worst_ratio, C)};
}

Outcome c12()
{
    parabolic::SmoothingProfile hat;
    hat.mode = parabolic::SmoothingMode::Hat;
    const parabolic::Exhaustion ex{parabolic::PuncturedPlane(), std::make_shared<parabolic::Smoothing>(hat)};
    double worst = 0.0;
    // Order function and counting functions on three curves.
    struct Case {
        CurvePtr f;
        FloatForm q;
    };
    const std::vector<Case> cases{{line(), f2({{{1, 0}, 1.0}, {{0, 1}, 2.0}})},
                                  {expc(), f2({{{1, 0}, 1.0}, {{0, 1}, -1.0}})},
                                  {exp3(), f3({{{1, 0, 0}, 1.0}, {{0, 1, 0}, 2.0}, {{0, 0, 1}, Complex(-1, 1)}})}};
    const auto grid = RadialGrid::logspace(2, 30, 6);
    for (const auto& c : cases) {
        const auto zs = nev::divisor_zeros(c.f, c.q, 31.0).zeros;
        for (double r : grid.radii()) {
            worst = std::max(worst, std::abs(parabolic::parabolic_order(*c.f, ex, r) - nev::order_function_area(*c.f, r)));
            worst = std::max(worst, std::abs(parabolic::parabolic_counting(zs, ex, r) - nev::counting_from_zeros(zs, r)));
            worst = std::max(worst,
                             std::abs(parabolic::parabolic_counting(zs, ex, r, 1) - nev::counting_from_zeros(zs, r, 1)));
        }
    }
    return {worst < 1e-9, fmt("max |parabolic - plane| = %.2e for T, N and N^[1], 3 curves, r in [2, 30]", worst)};
}

Outcome c13(const json& rep)
{
    const auto& rows = rep["tables"]["order_gap"]["rows"];
    const double r0 = rows[0][0], g0 = rows[0][1];
    const double C = std::max(0.0, g0 - std::log(r0));
    double lo = 1e300, slack = 1e300;
    for (const auto& row : rows) {
        const double r = row[0], g = row[1];
        lo = std::min(lo, g);
        slack = std::min(slack, std::log(r) + C - g);
    }
    return {lo >= 0 && slack >= 0,
            fmt("min gap %.4e, min (log r + C - gap) %.4f with C = %.4f frozen at r = %.2f", lo, slack, C, r0)};
}

Outcome c14(const json& rep)
{
    const auto& t = rep["tables"]["exhaustion"];
    std::size_t col = 0;
    for (std::size_t i = 0; i < t["columns"].size(); ++i)
        if (t["columns"][i] == "margin")
            col = i;
    double lo = 1e300;
    for (const auto& row : t["rows"])
        lo = std::min(lo, row[col].get<double>());
    const int punct = rep["summary"]["punctures"]["count"];
    return {lo >= 0, fmt("min margin %.3e over %zu radii, %d punctures = preimages of the D_i", lo, t["rows"].size(), punct)};
}

// Numbers agree to 1e-9 relative, everything else exactly.
void compare(const json& a, const json& b, const std::string& path, double& worst, std::vector<std::string>& diffs)
{
    if (a.is_number() && b.is_number()) {
        const double x = a.get<double>(), y = b.get<double>();
        const double rel = x == y ? 0.0 : std::abs(x - y) / std::max(std::abs(x), std::abs(y));
        worst = std::max(worst, rel);
        if (rel > 1e-9)
            diffs.push_back(path);
    } else if (a.is_object() && b.is_object()) {
        if (a.size() != b.size())
            diffs.push_back(path);
        for (const auto& [k, v] : a.items())
            if (b.contains(k))
                compare(v, b[k], path + "/" + k, worst, diffs);
            else
                diffs.push_back(path + "/" + k);
    } else if (a.is_array() && b.is_array()) {
        if (a.size() != b.size())
            diffs.push_back(path);
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
            compare(a[i], b[i], path + "/" + std::to_string(i), worst, diffs);
    } else if (a != b) {
        diffs.push_back(path);
    }
}

Outcome c15(const json& first, const json& second)
{
    double worst = 0.0;
    std::vector<std::string> diffs;
    compare(first, second, "", worst, diffs);
    return {diffs.empty(), fmt("%zu differing entries (first: %s), worst relative difference %.1e", diffs.size(),
                               diffs.empty() ? "none" : diffs.front().c_str(), worst)};
}

Outcome c16(const json& rep)
{
    const auto& d = rep["summary"]["defect_sum"];
    const double v = d["value"];
    const bool trend = d["running_nonincreasing_on_window"];
    return {v < 3.0, fmt("sum of defects %.4f < 3 on r in [%.2f, %.2f]; running sum nonincreasing there: %s", v,
                         d["window_start"].get<double>(), d["window_end"].get<double>(), trend ? "yes" : "no")};
}

// Runs the CLI and returns its report, or null with the reason in `why`.
json pipeline_report(const std::string& dir, std::string& why)
{
    std::filesystem::remove_all(dir);
    const std::string cmd = std::string("\"") + NEVLAB_CLI + "\" pipeline \"" + NEVLAB_SOURCE_DIR +
                            "/scenarios/three_conics.json\" --out \"" + dir + "\" --format json > \"" + dir +
                            ".log\" 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(dir + "/report.json");
    if (!in) {
        why = fmt("nevlab exited with status %d and wrote no report (log %s.log)", rc, dir.c_str());
        return nullptr;
    }
    json j = json::parse(in);
    if (!j["complete"].get<bool>()) {
        why = "pipeline stopped at stage " + j["stage"].get<std::string>();
        if (j.contains("error"))
            why += ": " + j["error"]["message"].get<std::string>();
    }
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));
    auto wanted = [&](int k) { return only.empty() || only.count(k) > 0; };

    const auto tmp = std::filesystem::temp_directory_path() / ("nevlab_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(tmp);
    json rep1, rep2;
    std::string why1, why2;
    bool have1 = false;
    auto first_run = [&]() -> const json* {
        if (!have1) {
            rep1 = pipeline_report((tmp / "run1").string(), why1);
            have1 = true;
        }
        return rep1.is_null() || !why1.empty() ? nullptr : &rep1;
    };

    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"order function of [1:z]", c1},
        {"first main theorem residual bounded", c2},
        {"unclamped defect bounds", [&] { return c3(wanted(8) || wanted(15) ? first_run() : nullptr); }},
        {"classical defect triple for [1:e^z]", c4},
        {"Jacobian degree law", c5},
        {"generic conic families certified", c6},
        {"Euler identity", c7},
        {"multiplicity jump on three conics",
         [&] {
             const json* r = first_run();
             return r ? c8(*r) : Outcome{false, why1};
         }},
        {"implicitization self-validation", c9},
        {"exhaustion properties", c10},
        {"finite ddc mass", c11},
        {"parabolic reduction without punctures", c12},
        {"order gap bound",
         [&] {
             const json* r = first_run();
             return r ? c13(*r) : Outcome{false, why1};
         }},
        {"mean Euler characteristic vs N^[1]",
         [&] {
             const json* r = first_run();
             return r ? c14(*r) : Outcome{false, why1};
         }},
        {"pipeline determinism",
         [&] {
             const json* r = first_run();
             if (!r)
                 return Outcome{false, why1};
             rep2 = pipeline_report((tmp / "run2").string(), why2);
             if (rep2.is_null() || !why2.empty())
                 return Outcome{false, "second run: " + why2};
             return c15(*r, rep2);
         }},
        {"defect sum report",
         [&] {
             const json* r = first_run();
             return r ? c16(*r) : Outcome{false, why1};
         }},
    };

    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k + 1);
        if (!wanted(id))
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ' ' << criteria[k].first << ": " << o.detail
                  << fmt(" (%.1fs)", secs) << std::endl;
    }
    std::filesystem::remove_all(tmp);
    return failed == 0 ? 0 : 1;
}
