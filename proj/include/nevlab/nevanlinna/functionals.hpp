#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "nevlab/analytic/zeros.hpp"

namespace nevlab::nev {

using analytic::Complex;
using analytic::ZeroRecord;
using CurvePtr = std::shared_ptr<const analytic::CurveMap>;

/// Truncation level meaning "no truncation".
inline constexpr int kFull = std::numeric_limits<int>::max();

struct QuadOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-12;
    int initial_samples = 256;
    int max_samples = 1 << 21;
};

/// Circle mean (1/2π)∫ g(c + r e^{iθ}) dθ by the trapezoid rule with sample doubling.
double circle_mean(const std::function<double(Complex)>& g, Complex center, double r, const QuadOptions& q = {});

/// Strictly increasing radii, all > 1.
class RadialGrid {
public:
    explicit RadialGrid(std::vector<double> radii);
    /// `steps` radii spaced evenly in log r over [r0, r1].
    static RadialGrid logspace(double r0, double r1, int steps);

    const std::vector<double>& radii() const { return radii_; }
    std::size_t size() const { return radii_.size(); }
    double back() const { return radii_.back(); }
    /// Index of the first radius in the top `fraction` of the grid.
    std::size_t tail_start(double fraction = 0.5) const;

private:
    std::vector<double> radii_;
};

/// Cartan order function: circle mean of log‖f‖ over |z| = r minus log‖f(base)‖.
double order_function(const analytic::CurveMap& f, double r, const QuadOptions& q = {}, Complex base = 0.0);
/// Area form ∫_1^r dt/t ∫_{|z|<t} f*ω = mean_r log‖f‖ − mean_1 log‖f‖.
double order_function_area(const analytic::CurveMap& f, double r, const QuadOptions& q = {});

/// Zeros of Q∘f found once on |z| < radius and shared by every radius below it.
struct DivisorZeros {
    std::vector<ZeroRecord> zeros;
    double radius = 0.0;
    int degree = 0;
};

/// Throws CurveInsideDivisor when Q∘f vanishes identically.
DivisorZeros divisor_zeros(const CurvePtr& f, const poly::FloatForm& q, double radius,
                           const analytic::ZeroOptions& opt = {});

/// Σ_{|a|<r} min(k, mult)·log(r / max(|a|, 1)).
double counting_from_zeros(const std::vector<ZeroRecord>& zeros, double r, int level = kFull);
double counting_function(const CurvePtr& f, const poly::FloatForm& q, double r, int level = kFull,
                         const analytic::ZeroOptions& opt = {});

/// Circle mean of d·log‖f‖ − log|Q̂(f)| with Q̂ = Q / max|coefficient|. Zeros of Q∘f
/// close to the circle are subtracted analytically before quadrature.
double proximity_function(const CurvePtr& f, const poly::FloatForm& q, double r, const DivisorZeros& zeros,
                          const QuadOptions& quad = {});
double proximity_function(const CurvePtr& f, const poly::FloatForm& q, double r, const QuadOptions& quad = {});

/// m + N − deg(D)·T.
double fmt_residual(const CurvePtr& f, const poly::FloatForm& q, double r, const DivisorZeros& zeros,
                    const QuadOptions& quad = {});

struct DefectEstimate {
    double value = 0.0;     // clamped to [0, 1]
    double unclamped = 0.0; // min over the window of 1 − N/(d·T)
    double window_start = 0.0;
    double window_end = 0.0;
    std::vector<double> running; // 1 − N/(d·T) at every grid radius
};

DefectEstimate defect_estimate(const CurvePtr& f, const poly::FloatForm& q, const RadialGrid& grid, int level,
                               const DivisorZeros& zeros, double window_fraction = 0.5, const QuadOptions& quad = {},
                               double min_T = 1e-3);
DefectEstimate defect_estimate(const CurvePtr& f, const poly::FloatForm& q, const RadialGrid& grid, int level = kFull,
                               double window_fraction = 0.5, const QuadOptions& quad = {});

enum class SmtMode { Cartan, Ru };

/// RHS − LHS of the second-main-theorem inequality at radius r:
/// cartan: Σ N^{[n]}(H_j) − (q − n − 1)·T for hyperplanes;
/// ru: Σ N(D_j)/deg D_j − (q − n − 1)·T, requiring q ≥ n + 2.
double smt_margin(const CurvePtr& f, const std::vector<poly::FloatForm>& hyps, double r, SmtMode mode,
                  const std::vector<DivisorZeros>& zeros, const QuadOptions& quad = {});
double smt_margin(const CurvePtr& f, const std::vector<poly::FloatForm>& hyps, double r, SmtMode mode,
                  const QuadOptions& quad = {});

struct FunctionalRow {
    double r = 0.0;
    double T = 0.0;
    double N_inf = 0.0;
    double N_1 = 0.0;
    double N_n = 0.0;
    double m = 0.0;
    double fmt_residual = 0.0;
    double defect_running = 0.0;
};

/// One row per grid radius for the pair (f, D).
std::vector<FunctionalRow> functional_table(const CurvePtr& f, const poly::FloatForm& q, const RadialGrid& grid,
                                            const DivisorZeros& zeros, const QuadOptions& quad = {});
std::string functional_csv(const std::vector<FunctionalRow>& rows);

} // namespace nevlab::nev
