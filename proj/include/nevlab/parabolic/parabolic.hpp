#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "nevlab/nevanlinna/functionals.hpp"

namespace nevlab::parabolic {

using analytic::Complex;
using nev::CurvePtr;

/// C minus finitely many punctures a_j, with radii r_j ∈ (0, 1) such that the discs
/// D(a_j, 2 r_j) are pairwise disjoint. Punctures are kept sorted by modulus.
class PuncturedPlane {
public:
    PuncturedPlane() = default;
    PuncturedPlane(std::vector<Complex> punctures, std::vector<double> radii);

    const std::vector<Complex>& punctures() const { return a_; }
    const std::vector<double>& radii() const { return r_; }
    std::size_t size() const { return a_.size(); }
    bool empty() const { return a_.empty(); }
    double radius_sum() const;

    /// Indices j with |z − a_j| < factor·r_j (at most one, by disjointness, for factor ≤ 2).
    std::vector<std::size_t> near(Complex z, double factor) const;

private:
    std::vector<Complex> a_;
    std::vector<double> r_;
    std::vector<double> mod_;
};

enum class SmoothingMode { Mollified, PaperH, Hat };

struct SmoothingProfile {
    SmoothingMode mode = SmoothingMode::Mollified;
    double epsilon = 0.4054651081081644; // log(3/2)
    /// PaperH shift; NaN means "solve the matching equation".
    double shift_c = std::numeric_limits<double>::quiet_NaN();
    int table_size = 1 << 14;
};

/// The smoothing H of log⁺ (tables built once).
class Smoothing {
public:
    explicit Smoothing(const SmoothingProfile& p = {});

    double H(double r) const;
    const SmoothingProfile& profile() const { return p_; }
    /// PaperH: the shift used and the matching residual H(3/2) − log(3/2).
    double shift() const { return c_; }
    double residual() const { return kappa_; }

private:
    double table_H(double s) const;

    SmoothingProfile p_;
    double c_ = 0.0;
    double kappa_ = 0.0;
    double lo_ = 0.0, hi_ = 0.0; // table range (log r for mollified, r for paper_h)
    double norm_ = 1.0;
    std::vector<double> phi_, psi_;
};

/// Shared smoothing plus plane, the object every σ-quadrature works against.
struct Exhaustion {
    PuncturedPlane plane;
    std::shared_ptr<const Smoothing> smoothing = std::make_shared<Smoothing>();
};

double sigma_hat(const PuncturedPlane& plane, Complex z);
double sigma(const Exhaustion& ex, Complex z);
/// log σ, finite away from punctures.
double tau(const Exhaustion& ex, Complex z);
bool ball_membership(const Exhaustion& ex, Complex z, double r);

/// Whether z lies in the support U of σ − σ̂.
bool in_support(const PuncturedPlane& plane, Complex z);

struct RadiiChoice {
    std::vector<double> radii;        // aligned with the sorted punctures
    std::vector<Complex> punctures;   // sorted by modulus
    std::vector<double> masses;       // FS area of D(a_j, 1.5 r_j)
    std::vector<std::string> warnings;
};

/// r_j = min(separation/4, 1/2), halved until the f*ω-mass of D(a_j, 1.5 r_j) is below 2^{-j}
/// (j from 1); floor 1e-6 with a warning.
RadiiChoice choose_radii(std::vector<Complex> punctures, const analytic::CurveMap& f);

struct PolarRule {
    int panels = 8;      // radial Gauss–Legendre panels
    int nodes = 8;       // nodes per panel
    int angular = 64;    // trapezoid nodes in θ
    long budget = 50'000'000; // density evaluations per call
};

/// ∫_{ρ0<|z−c|<ρ1} g(z) dA.
double annulus_integral(const std::function<double(Complex)>& g, Complex c, double rho0, double rho1,
                        const PolarRule& rule = {});

/// T_{f,σ}(r) = T_area(r) − gap(r).
double parabolic_order(const analytic::CurveMap& f, const Exhaustion& ex, double r, const PolarRule& rule = {});
/// T_area(r) − T_{f,σ}(r) = ∫ f*ω · (log⁺(r/max(1,|z|)) − log⁺(r/σ)) ≥ 0.
double order_gap(const analytic::CurveMap& f, const Exhaustion& ex, double r, const PolarRule& rule = {});

/// Σ_{σ(z)<r} min(k, mult)·log(r/σ(z)); zeros at punctures are skipped.
double parabolic_counting(const std::vector<analytic::ZeroRecord>& zeros, const Exhaustion& ex, double r,
                          int level = nev::kFull);

/// Circle |z − a_j| = 1.5 r_j enters B_t^σ at t = max σ over 64 samples.
std::vector<double> hole_thresholds(const Exhaustion& ex, int samples = 64);
int euler_characteristic(const std::vector<double>& thresholds, double t);
/// ∫_1^r h(t) dt/t from the hole thresholds.
double weighted_euler(const std::vector<double>& thresholds, double r);
/// ∫_1^r #{j : |a_j| < t} dt/t.
double weighted_euler_countform(const PuncturedPlane& plane, double r);
int boundary_components(const PuncturedPlane& plane, double r);

struct DecaySeries {
    std::vector<double> values;
    bool decreasing = true; // nonincreasing over the tail window
};

/// (N − N^{[1]})/T_{g,σ} per radius.
DecaySeries tangency_deficit(const analytic::CurveMap& g, const std::vector<analytic::ZeroRecord>& zeros,
                             const Exhaustion& ex, const nev::RadialGrid& grid, double window_fraction = 0.5,
                             const PolarRule& rule = {}, double min_T = 1e-3);

struct MarginSeries {
    std::vector<double> margin;
    double C = 0.0; // frozen at the first quartile
};

/// N^{[1]}_f(r, D) + C·log r − 𝔛(r) with the count-form 𝔛.
MarginSeries euler_vs_counting(const PuncturedPlane& plane, const std::vector<analytic::ZeroRecord>& zeros,
                               const nev::RadialGrid& grid);

/// Total variation of dd^c log σ over the support pieces that meet |z| < window,
/// from a five-point stencil on polar grids.
double ddc_mass(const Exhaustion& ex, double window, const PolarRule& rule = {});

struct ExhaustionRow {
    double r = 0.0;
    int chi = 1;
    double X_weighted = 0.0;
    double X_countform = 0.0;
    int boundary_components = 1;
    double T_parab = std::numeric_limits<double>::quiet_NaN();
    double N_parab_inf = std::numeric_limits<double>::quiet_NaN();
    double N_parab_1 = std::numeric_limits<double>::quiet_NaN();
    double gap = std::numeric_limits<double>::quiet_NaN();
    double margin = std::numeric_limits<double>::quiet_NaN();
};

std::string exhaustion_csv(const std::vector<ExhaustionRow>& rows);

PuncturedPlane plane_from_json(const nlohmann::json& j);
SmoothingProfile profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PuncturedPlane& p, const SmoothingProfile& prof);

} // namespace nevlab::parabolic
