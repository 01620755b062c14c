#pragma once

#include <random>
#include <vector>

#include "nevlab/polycore/polynomial.hpp"

namespace testsupport {

using nevlab::poly::Complex;
using nevlab::poly::ExactForm;
using nevlab::poly::FloatForm;
using nevlab::poly::GaussianRational;

inline ExactForm random_exact_form(std::mt19937_64& rng, int nvars, int degree, int range = 5)
{
    std::uniform_int_distribution<long> c(-range, range);
    nevlab::poly::Polynomial<GaussianRational> p(nvars);
    for (const auto& e : nevlab::poly::monomials_of_degree(nvars, degree))
        p.add_term(e, GaussianRational(c(rng), c(rng)));
    if (p.is_zero())
        p.add_term(nevlab::poly::monomials_of_degree(nvars, degree).front(), GaussianRational(1));
    return ExactForm(std::move(p), degree);
}

inline FloatForm random_float_form(std::mt19937_64& rng, int nvars, int degree)
{
    std::normal_distribution<double> g;
    nevlab::poly::Polynomial<Complex> p(nvars);
    for (const auto& e : nevlab::poly::monomials_of_degree(nvars, degree))
        p.add_term(e, {g(rng), g(rng)});
    return FloatForm(std::move(p), degree);
}

inline std::vector<Complex> random_point(std::mt19937_64& rng, int nvars)
{
    std::normal_distribution<double> g;
    std::vector<Complex> x(nvars);
    for (auto& v : x)
        v = {g(rng), g(rng)};
    return x;
}

inline FloatForm form(int nvars, std::vector<std::pair<std::vector<int>, Complex>> terms)
{
    nevlab::poly::Polynomial<Complex> p(nvars);
    for (auto& [e, c] : terms)
        p.add_term(e, c);
    return FloatForm(std::move(p));
}

inline ExactForm exact(int nvars, std::vector<std::pair<std::vector<int>, long>> terms)
{
    nevlab::poly::Polynomial<GaussianRational> p(nvars);
    for (auto& [e, c] : terms)
        p.add_term(e, GaussianRational(c));
    return ExactForm(std::move(p));
}

} // namespace testsupport
