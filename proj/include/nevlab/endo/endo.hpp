#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nevlab/analytic/curve.hpp"
#include "nevlab/analytic/zeros.hpp"
#include "nevlab/polycore/algebra.hpp"
#include "nevlab/polycore/resultant.hpp"

namespace nevlab::endo {

using poly::Complex;
using poly::ExactForm;
using poly::FloatForm;
using Point = std::vector<Complex>;

/// F = [Q_0^{m_0} : … : Q_n^{m_n}] with m_i = d / d_i, d = lcm(d_i).
class Endomorphism {
public:
    const std::vector<FloatForm>& forms() const { return forms_; }
    /// Exact defining forms when the input was exact.
    const std::optional<std::vector<ExactForm>>& exact_forms() const { return exact_; }
    const std::vector<FloatForm>& powered() const { return powered_; }
    const std::vector<int>& degrees() const { return degrees_; }
    const std::vector<int>& exponents() const { return exponents_; }
    int common_degree() const { return d_; }
    int nvars() const { return static_cast<int>(forms_.size()); }

    /// F(p), not normalised.
    Point apply(const Point& p) const;

private:
    friend Endomorphism build_endomorphism(std::vector<ExactForm>, const poly::ResultantCaps&);
    friend Endomorphism build_endomorphism(std::vector<FloatForm>, const poly::ResultantCaps&);

    std::vector<FloatForm> forms_;
    std::optional<std::vector<ExactForm>> exact_;
    std::vector<FloatForm> powered_;
    std::vector<int> degrees_;
    std::vector<int> exponents_;
    int d_ = 0;
};

/// Throws GeneralPosition when the forms have a common zero (certified by the exact
/// resultant, or by the floating Macaulay test for floating input).
Endomorphism build_endomorphism(std::vector<ExactForm> qs, const poly::ResultantCaps& caps = {});
Endomorphism build_endomorphism(std::vector<FloatForm> qs, const poly::ResultantCaps& caps = {});

struct CriticalLocus {
    poly::FloatHypersurface vee;
    std::optional<poly::ExactHypersurface> exact;
    int expected_degree = 0; // Σd_i − (n+1)
};

/// Jacobian hypersurface of the unpowered forms (square-free part in exact mode).
CriticalLocus critical_locus(const Endomorphism& F);

struct SubsetVerdict {
    std::vector<int> indices;
    bool positive = false;
    std::string witness; // exact resultant, or relative σ_min
    double witness_value = 0.0;
};

struct GeneralPositionCertificate {
    std::vector<SubsetVerdict> subsets;
    bool positive = true;
    bool exact = true;

    /// First failing subset, if any.
    const SubsetVerdict* first_failure() const;
};

GeneralPositionCertificate general_position(const std::vector<ExactForm>& hyps, const poly::ResultantCaps& caps = {});
GeneralPositionCertificate general_position(const std::vector<FloatForm>& hyps, double threshold = 1e-10,
                                            const poly::ResultantCaps& caps = {});

nlohmann::json to_json(const GeneralPositionCertificate& c);

struct GenericFamily {
    std::vector<ExactForm> forms;
    std::uint64_t seed = 0;           // seed that produced the accepted family
    std::vector<std::uint64_t> tried; // every seed attempted, in order
    GeneralPositionCertificate certificate; // {D_0, …, D_n, 𝒱}
};

/// Products of seeded random integer linear forms; the seed is advanced until
/// {D_i} ∪ {𝒱} is certified in general position.
GenericFamily construct_generic_family(int n, const std::vector<int>& degrees, std::uint64_t seed,
                                       int max_seeds = 5, int coeff_range = 5);

/// Simple points of {V = 0} on seeded random lines, normalised to unit 2-norm.
std::vector<Point> sample_locus(const FloatForm& V, int count, std::uint64_t seed);

struct ImageLocus {
    poly::FloatHypersurface dub;
    double fit_residual = 0.0; // σ_min / σ_max of the accepted fit
    int degree_found = 0;
    bool reduced = false;      // square-freeness confirmed on a rationalised fit
    double validation = 0.0;   // max |𝒲(F(p))| / scale on the fresh batch
};

struct ImplicitOptions {
    std::uint64_t seed = 11;
    double null_tol = 1e-8;
    double validate_tol = 1e-6;
};

/// Plane curve 𝒲 ⊃ F(𝒱) of least degree ≤ degree_cap, by nullspace interpolation.
ImageLocus implicitize_image(const Endomorphism& F, const FloatForm& V, int degree_cap,
                             const ImplicitOptions& opt = {});

struct ExceptionalTolerances {
    double on_divisor = 1e-6;
    double gradient = 1e-7;
};

/// p ∈ 𝒵: some D_i vanishes at p, or ∇𝒱(p) ≈ 0, or ∇𝒲(F(p)) ≈ 0, each relative to the
/// Bombieri norm of the form (the sharp bound for unit points).
bool exceptional_locus_test(const FloatForm& V, const std::vector<FloatForm>& hyps, const FloatForm& W,
                            const Endomorphism& F, const Point& p, const ExceptionalTolerances& tol = {});

struct OrderEstimate {
    int order = 0;
    double ratio = 0.0;
    double residual = 0.0;
};

struct LocalOptions {
    bool check_exceptional = true; // against D_i = {Q_i = 0}
    std::uint64_t seed = 3;
    double t_min = 1e-6;
    double t_max = 1e-3;
    int steps = 7;
};

/// Vanishing order of 𝒲∘F relative to 𝒱 along a transverse arc through p.
OrderEstimate local_multiplicity(const Endomorphism& F, const FloatForm& V, const FloatForm& W, const Point& p,
                                 const LocalOptions& opt = {});

struct JumpResult {
    int ord_f_V = 0;
    int ord_g_W = 0;
    bool pass = false;
};

struct JumpOptions {
    bool check_exceptional = true;
    double radius = 1e-4;
    double on_tol = 1e-8;
    analytic::WindingOptions winding; // used for both pullbacks
};

/// ord_{z0} f*𝒱 and ord_{z0} (F∘f)*𝒲 by winding numbers on a small circle.
JumpResult multiplicity_jump_check(const std::shared_ptr<const analytic::CurveMap>& f, const Endomorphism& F,
                                   const FloatForm& V, const FloatForm& W, Complex z0, const JumpOptions& opt = {});

} // namespace nevlab::endo
