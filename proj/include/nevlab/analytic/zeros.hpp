#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "nevlab/analytic/curve.hpp"
#include "nevlab/polycore/scalar.hpp"

namespace nevlab::analytic {

struct ZeroRecord {
    Complex location;
    int multiplicity = 1;
    double resolution = 0.0; // radius within which the zero (or cluster) is located
};

/// h(z) = P(z) · value, h'(z) = P(z) · derivative for some unknown P(z) > 0.
/// term_scale bounds the size of the terms summed into `value`; a value below
/// 1e-11 of it is treated as numerically zero.
struct HoloSample {
    Complex value;
    Complex derivative;
    double term_scale = 1.0;
};

/// Univariate polynomial in power basis; `exact` is filled when the data are exact.
struct PolynomialData {
    std::vector<Complex> coeffs;
    std::vector<poly::GaussianRational> exact;
};

class HoloFunction {
public:
    virtual ~HoloFunction() = default;
    virtual HoloSample sample(Complex z) const = 0;
    /// h(z) = e^{q(z)} · polynomial when such a form is known.
    virtual std::optional<PolynomialData> polynomial() const { return std::nullopt; }
    /// Zeros known in closed form (all of them, anywhere).
    virtual std::optional<std::vector<ZeroRecord>> known_zeros() const { return std::nullopt; }
};

class ExpPolyHolo : public HoloFunction {
public:
    explicit ExpPolyHolo(ExpPolyFunction f) : f_(std::move(f)) {}
    HoloSample sample(Complex z) const override;
    std::optional<PolynomialData> polynomial() const override;
    std::optional<std::vector<ZeroRecord>> known_zeros() const override;

private:
    ExpPolyFunction f_;
};

/// Q∘f for a form Q and a curve lift f.
class Pullback : public HoloFunction {
public:
    Pullback(poly::FloatForm q, std::shared_ptr<const CurveMap> curve);
    /// Same, keeping the exact form for the polynomial shortcut.
    Pullback(poly::ExactForm q, std::shared_ptr<const CurveMap> curve);

    HoloSample sample(Complex z) const override;
    std::optional<PolynomialData> polynomial() const override;

    /// Numerical identically-zero test at seeded random points (|value| ≤ 1e-12 · scale).
    bool identically_zero(std::uint64_t seed = 0x5a11) const;
    const poly::FloatForm& form() const { return q_; }

private:
    poly::FloatForm q_;
    std::optional<poly::ExactForm> exact_;
    std::vector<poly::FloatForm> grad_;
    std::shared_ptr<const CurveMap> curve_;
};

class LambdaFunction : public HoloFunction {
public:
    LambdaFunction(std::function<Complex(Complex)> f, std::function<Complex(Complex)> df, double term_scale = 1.0)
        : f_(std::move(f)), df_(std::move(df)), scale_(term_scale)
    {
    }
    HoloSample sample(Complex z) const override { return {f_(z), df_(z), scale_}; }

private:
    std::function<Complex(Complex)> f_, df_;
    double scale_;
};

struct WindingOptions {
    int initial_samples = 1024;
    int max_samples = 1 << 20;
    double floor = 1e-11;
};

/// (1/2π)Δarg h around the circle; raises ZeroOnContour at the magnitude floor.
int winding_number(const HoloFunction& fn, Complex center, double radius, const WindingOptions& opt = {});
/// Same around the boundary of the axis-parallel rectangle [x0,x1]×[y0,y1].
int winding_number_rect(const HoloFunction& fn, double x0, double x1, double y0, double y1,
                        const WindingOptions& opt = {});

struct ZeroOptions {
    double tol = 1e-9;
    bool shortcuts = true;
    int max_retries = 20;
    long max_cells = 400000;
    WindingOptions winding;
};

/// Zeros of h in the open disc |z − center| < radius, with multiplicities.
std::vector<ZeroRecord> zeros_in_disc(const HoloFunction& fn, Complex center, double radius,
                                      const ZeroOptions& opt = {});

/// Aberth–Ehrlich simultaneous iteration; coefficients in increasing degree.
std::vector<Complex> aberth_roots(const std::vector<Complex>& coeffs, int max_iter = 2000);
/// Roots with multiplicities; exact coefficients enable Yun square-free splitting,
/// otherwise roots closer than `cluster_tol` are merged.
std::vector<ZeroRecord> polynomial_zeros(const PolynomialData& p, double cluster_tol = 1e-7);

} // namespace nevlab::analytic
