#pragma once

#include <span>
#include <vector>

#include "nevlab/polycore/polynomial.hpp"

namespace nevlab::poly {

struct ResultantCaps {
    int max_vars = 5;    // n <= 4
    int max_degree = 6;
    long max_rows = 10000;
};

/// Outcome of the floating Macaulay test.
struct FloatResultant {
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double relative = 0.0; // sigma_min / sigma_max
    bool nonzero = false;
    long rows = 0;
    long cols = 0;
};

/// Macaulay critical degree Σ(d_i − 1) + 1.
int macaulay_degree(std::span<const int> degrees);

/// Number of monomials of degree ν (= size of the square Macaulay matrix); throws SizeCap
/// if any cap is exceeded.
long macaulay_size(std::span<const int> degrees, const ResultantCaps& caps = {});

/// Exact resultant of n+1 forms in n+1 variables; zero iff a common projective zero exists.
GaussianRational macaulay_resultant(std::span<const ExactForm> ps, const ResultantCaps& caps = {});

/// Floating verdict from the smallest singular value of the full degree-ν Macaulay matrix.
FloatResultant macaulay_resultant_float(std::span<const FloatForm> ps, double threshold = 1e-10,
                                        const ResultantCaps& caps = {});

/// Determinant by Gaussian elimination; exact over Q(i).
GaussianRational determinant(std::vector<std::vector<GaussianRational>> m);

} // namespace nevlab::poly
