#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nevlab/polycore/polynomial.hpp"

namespace nevlab::poly {

using ExactPoly = Polynomial<GaussianRational>;

/// Exact quotient a/b when b divides a, std::nullopt otherwise.
std::optional<ExactPoly> divide_exact(const ExactPoly& a, const ExactPoly& b);

/// Monic (in lex-leading coefficient) gcd over Q(i), by recursive primitive
/// remainder sequences. gcd(0, 0) = 0.
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);

/// Makes the lex-leading coefficient 1.
ExactPoly make_monic(const ExactPoly& p);

/// p / gcd(p, ∂_0 p, …, ∂_n p).
ExactPoly square_free_part(const ExactPoly& p);

/// gcd(p, Σ c_i ∂_i p) for pseudo-random small integers c_i is constant.
bool is_square_free(const ExactPoly& p, std::uint64_t seed = 0x5eed);

/// Yun decomposition of a univariate polynomial (nvars == 1): factors[k] has
/// multiplicity k+1 in p; p = c · Π factors[k]^(k+1).
std::vector<ExactPoly> square_free_decomposition(const ExactPoly& p);

/// det ∂(p_0,…,p_n)/∂(z_0,…,z_n). Cofactor expansion in both arithmetic modes.
/// Floating results are tested for identical vanishing at random points and
/// collapsed to the zero sentinel when they vanish to 1e-10 of the coefficient scale.
template <class S>
HomogeneousPolynomial<S> jacobian_determinant(std::span<const HomogeneousPolynomial<S>> ps);

/// Probabilistic identically-zero test: 2·nvars random unit points, threshold
/// 1e-10 × coefficient scale.
bool is_numerically_zero(const FloatForm& p, std::uint64_t seed = 0x2e70, double rel_tol = 1e-10);

/// Defining form of a reduced hypersurface in P^n.
template <class S>
class Hypersurface {
public:
    /// Rejects the zero form; exact forms must be square-free.
    explicit Hypersurface(HomogeneousPolynomial<S> poly);

    const HomogeneousPolynomial<S>& poly() const { return poly_; }
    int degree() const { return poly_.degree(); }
    int nvars() const { return poly_.nvars(); }

private:
    HomogeneousPolynomial<S> poly_;
};

using ExactHypersurface = Hypersurface<GaussianRational>;
using FloatHypersurface = Hypersurface<Complex>;

inline FloatHypersurface to_float(const ExactHypersurface& h) { return FloatHypersurface(to_float(h.poly())); }

} // namespace nevlab::poly
