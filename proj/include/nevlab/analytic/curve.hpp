#pragma once

#include <memory>
#include <vector>

#include "nevlab/analytic/exppoly.hpp"
#include "nevlab/polycore/polynomial.hpp"

namespace nevlab::analytic {

/// f(z) = exp(log_scale) · u, f'(z) = exp(log_scale) · du, with max_j |u_j| = 1.
struct CurvePoint {
    double log_scale = 0.0;
    std::vector<Complex> u;
    std::vector<Complex> du;

    double log_norm() const;
};

/// Holomorphic map C → P^n given by a lift.
class CurveMap {
public:
    virtual ~CurveMap() = default;
    virtual int dim() const = 0; // n + 1 components
    virtual CurvePoint eval(Complex z) const = 0;
};

/// Tuple of n+1 exp-polynomials without common zeros.
class ProjectiveCurve : public CurveMap {
public:
    explicit ProjectiveCurve(std::vector<ExpPolyFunction> components);

    int dim() const override { return static_cast<int>(components_.size()); }
    CurvePoint eval(Complex z) const override;
    const std::vector<ExpPolyFunction>& components() const { return components_; }
    /// True when every component shares one exponent polynomial (so Q∘f is a
    /// polynomial times that exponential).
    bool common_exponent() const;

private:
    std::vector<ExpPolyFunction> components_;
};

/// z ↦ [P_0(f(z)) : … : P_n(f(z))] for forms P_i of a common degree.
class ComposedCurve : public CurveMap {
public:
    ComposedCurve(std::shared_ptr<const CurveMap> inner, std::vector<poly::FloatForm> forms);

    int dim() const override { return static_cast<int>(forms_.size()); }
    CurvePoint eval(Complex z) const override;
    const CurveMap& inner() const { return *inner_; }
    const std::vector<poly::FloatForm>& forms() const { return forms_; }

private:
    std::shared_ptr<const CurveMap> inner_;
    std::vector<poly::FloatForm> forms_;
    std::vector<std::vector<poly::FloatForm>> grads_;
    int degree_;
};

/// log‖(f_0(z), …, f_n(z))‖.
double curve_log_norm(const CurveMap& curve, Complex z);

/// Density of f*ω_FS against Lebesgue measure dA, normalised so that the
/// line [1 : z] has total mass 1: (1/π)(‖f‖²‖f'‖² − |⟨f', f⟩|²)/‖f‖⁴.
double fs_density(const CurveMap& curve, Complex z);
double fs_density(const CurvePoint& p);

/// Five-point Laplacian of log‖f‖ divided by 2π; an independent check of fs_density.
double fs_density_stencil(const CurveMap& curve, Complex z, double h);

ProjectiveCurve curve_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProjectiveCurve& c);

} // namespace nevlab::analytic
