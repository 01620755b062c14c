#include "nevlab/polycore/resultant.hpp"

#include <map>

#include <Eigen/Dense>

namespace nevlab::poly {

namespace {

template <class S>
std::vector<int> check_system(std::span<const HomogeneousPolynomial<S>> ps, const ResultantCaps& caps)
{
    const int n1 = static_cast<int>(ps.size());
    if (n1 == 0)
        fail(ErrorKind::DimensionMismatch, "resultant of an empty system");
    if (n1 > caps.max_vars)
        fail(ErrorKind::SizeCap, "resultant size cap: at most " + std::to_string(caps.max_vars) + " variables");
    std::vector<int> degrees;
    for (const auto& p : ps) {
        if (p.nvars() != n1)
            fail(ErrorKind::DimensionMismatch, "resultant needs n+1 forms in n+1 variables");
        if (p.degree() < 1)
            fail(ErrorKind::Precondition, "resultant needs positive degrees");
        if (p.degree() > caps.max_degree)
            fail(ErrorKind::SizeCap,
                 "resultant size cap: degree " + std::to_string(p.degree()) + " exceeds " +
                     std::to_string(caps.max_degree));
        degrees.push_back(p.degree());
    }
    return degrees;
}

// Descending lex order, so the linear case reproduces the coefficient matrix.
std::vector<Exponent> basis(int nvars, int degree)
{
    auto b = monomials_of_degree(nvars, degree);
    std::reverse(b.begin(), b.end());
    return b;
}

int divisor_index(const Exponent& a, std::span<const int> degrees)
{
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (a[i] >= degrees[i])
            return static_cast<int>(i);
    return -1;
}

bool is_reduced(const Exponent& a, std::span<const int> degrees)
{
    int k = 0;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (a[i] >= degrees[i])
            ++k;
    return k <= 1;
}

struct MacaulayLayout {
    std::vector<Exponent> monos;
    std::map<Exponent, int> index;
    std::vector<int> row_form;     // which F_i builds row k
    std::vector<int> extraneous;   // indices of non-reduced monomials
};

MacaulayLayout layout(int nvars, std::span<const int> degrees)
{
    MacaulayLayout L;
    L.monos = basis(nvars, macaulay_degree(degrees));
    for (std::size_t k = 0; k < L.monos.size(); ++k) {
        L.index[L.monos[k]] = static_cast<int>(k);
        L.row_form.push_back(divisor_index(L.monos[k], degrees));
        if (!is_reduced(L.monos[k], degrees))
            L.extraneous.push_back(static_cast<int>(k));
    }
    return L;
}

using ExactMatrix = std::vector<std::vector<GaussianRational>>;

ExactMatrix build_exact(const MacaulayLayout& L, std::span<const ExactForm> ps, std::span<const int> degrees,
                        const GaussianRational& t)
{
    const std::size_t N = L.monos.size();
    ExactMatrix m(N, std::vector<GaussianRational>(N));
    for (std::size_t k = 0; k < N; ++k) {
        const int i = L.row_form[k];
        Exponent shift = L.monos[k];
        shift[i] -= degrees[i];
        for (const auto& [e, c] : ps[i].terms()) {
            Exponent col = e;
            for (std::size_t v = 0; v < col.size(); ++v)
                col[v] += shift[v];
            m[k][L.index.at(col)] += c;
        }
        // Perturbation F_i - t x_i^{d_i}: its row image is the diagonal entry.
        if (!t.is_zero())
            m[k][k] -= t;
    }
    return m;
}

ExactMatrix submatrix(const ExactMatrix& m, const std::vector<int>& idx)
{
    ExactMatrix s(idx.size(), std::vector<GaussianRational>(idx.size()));
    for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = 0; b < idx.size(); ++b)
            s[a][b] = m[idx[a]][idx[b]];
    return s;
}

} // namespace

int macaulay_degree(std::span<const int> degrees)
{
    int nu = 1;
    for (int d : degrees)
        nu += d - 1;
    return nu;
}

long macaulay_size(std::span<const int> degrees, const ResultantCaps& caps)
{
    const long nvars = static_cast<long>(degrees.size());
    const long nu = macaulay_degree(degrees);
    // C(nu + nvars - 1, nvars - 1)
    long size = 1;
    for (long k = 1; k < nvars; ++k) {
        size = size * (nu + k) / k;
        if (size > caps.max_rows * 1000)
            break;
    }
    if (size > caps.max_rows)
        fail(ErrorKind::SizeCap, "Macaulay matrix would have " + std::to_string(size) + " rows; cap is " +
                                     std::to_string(caps.max_rows));
    return size;
}

GaussianRational determinant(ExactMatrix m)
{
    const std::size_t n = m.size();
    GaussianRational det(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && m[piv][col].is_zero())
            ++piv;
        if (piv == n)
            return GaussianRational(0);
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        const GaussianRational p = m[col][col];
        det *= p;
        const GaussianRational inv = GaussianRational(1) / p;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (m[r][col].is_zero())
                continue;
            const GaussianRational f = m[r][col] * inv;
            for (std::size_t c = col; c < n; ++c)
                if (!m[col][c].is_zero())
                    m[r][c] -= f * m[col][c];
        }
    }
    return det;
}

GaussianRational macaulay_resultant(std::span<const ExactForm> ps, const ResultantCaps& caps)
{
    const auto degrees = check_system(ps, caps);
    macaulay_size(degrees, caps);
    const int nvars = static_cast<int>(ps.size());
    for (const auto& p : ps)
        if (p.is_zero())
            return GaussianRational(0);
    const MacaulayLayout L = layout(nvars, degrees);

    const ExactMatrix m = build_exact(L, ps, degrees, GaussianRational(0));
    const GaussianRational den = determinant(submatrix(m, L.extraneous));
    if (!den.is_zero())
        return determinant(m) / den;

    // Extraneous minor vanishes: interpolate Res(F - t x^d) at t = 0.
    const long reduced = static_cast<long>(L.monos.size() - L.extraneous.size());
    std::vector<GaussianRational> ts, ys;
    for (long t = 1; static_cast<long>(ts.size()) <= reduced; ++t) {
        const GaussianRational tt(t);
        const ExactMatrix mt = build_exact(L, ps, degrees, tt);
        const GaussianRational dt = determinant(submatrix(mt, L.extraneous));
        if (dt.is_zero())
            continue;
        ts.push_back(tt);
        ys.push_back(determinant(mt) / dt);
    }
    GaussianRational value(0);
    for (std::size_t k = 0; k < ts.size(); ++k) {
        GaussianRational w(1);
        for (std::size_t j = 0; j < ts.size(); ++j)
            if (j != k)
                w *= (-ts[j]) / (ts[k] - ts[j]);
        value += ys[k] * w;
    }
    return value;
}

FloatResultant macaulay_resultant_float(std::span<const FloatForm> ps, double threshold, const ResultantCaps& caps)
{
    const auto degrees = check_system(ps, caps);
    macaulay_size(degrees, caps);
    const int nvars = static_cast<int>(ps.size());
    const int nu = macaulay_degree(degrees);
    const auto monos = basis(nvars, nu);
    std::map<Exponent, int> index;
    for (std::size_t k = 0; k < monos.size(); ++k)
        index[monos[k]] = static_cast<int>(k);

    std::vector<std::vector<std::pair<int, Complex>>> rows;
    for (int i = 0; i < nvars; ++i) {
        if (ps[i].is_zero())
            continue;
        for (const auto& beta : monomials_of_degree(nvars, nu - degrees[i])) {
            std::vector<std::pair<int, Complex>> row;
            for (const auto& [e, c] : ps[i].terms()) {
                Exponent col = e;
                for (int v = 0; v < nvars; ++v)
                    col[v] += beta[v];
                row.emplace_back(index.at(col), c);
            }
            rows.push_back(std::move(row));
        }
    }
    if (static_cast<long>(rows.size()) > 4 * caps.max_rows)
        fail(ErrorKind::SizeCap, "stacked Macaulay matrix exceeds the row cap");

    FloatResultant out;
    out.rows = static_cast<long>(rows.size());
    out.cols = static_cast<long>(monos.size());
    if (out.rows < out.cols)
        return out;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(out.rows, out.cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        double norm = 0.0;
        for (const auto& [c, v] : rows[r])
            norm += std::norm(v);
        norm = std::sqrt(norm);
        for (const auto& [c, v] : rows[r])
            m(static_cast<long>(r), c) += v / norm;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    const auto& s = svd.singularValues();
    out.sigma_max = s(0);
    out.sigma_min = s(s.size() - 1);
    out.relative = out.sigma_max > 0 ? out.sigma_min / out.sigma_max : 0.0;
    out.nonzero = out.relative > threshold;
    return out;
}

} // namespace nevlab::poly
