#include "nevlab/analytic/curve.hpp"

#include <cmath>

namespace nevlab::analytic {

double CurvePoint::log_norm() const
{
    double s = 0.0;
    for (const auto& v : u)
        s += std::norm(v);
    return log_scale + 0.5 * std::log(s);
}

ProjectiveCurve::ProjectiveCurve(std::vector<ExpPolyFunction> components) : components_(std::move(components))
{
    if (components_.size() < 2)
        fail(ErrorKind::DimensionMismatch, "a curve in P^n needs at least two components");
    bool any = false;
    for (const auto& c : components_)
        any = any || !c.is_zero();
    if (!any)
        fail(ErrorKind::Precondition, "all curve components vanish identically");
    for (const auto& c : components_)
        for (const auto& r : c.roots()) {
            bool other = false;
            for (const auto& d : components_) {
                if (d.is_zero())
                    continue;
                bool vanishes = false;
                for (const auto& s : d.roots())
                    vanishes = vanishes || std::abs(s.location - r.location) < 1e-10;
                other = other || !vanishes;
            }
            if (!other)
                fail(ErrorKind::Precondition, "curve components share a zero");
        }
}

bool ProjectiveCurve::common_exponent() const
{
    for (const auto& c : components_)
        if (!c.is_zero() && c.exp_poly() != components_.front().exp_poly())
            return false;
    return true;
}

CurvePoint ProjectiveCurve::eval(Complex z) const
{
    const std::size_t n = components_.size();
    std::vector<ScaledSample> s(n);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        s[j] = components_[j].sample(z);
        if (s[j].value != Complex(0.0))
            top = std::max(top, s[j].log_scale + std::log(std::abs(s[j].value)));
    }
    if (!std::isfinite(top))
        fail(ErrorKind::Precondition, "curve lift vanishes at a point");
    CurvePoint p;
    p.log_scale = top;
    p.u.resize(n);
    p.du.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (components_[j].is_zero())
            continue;
        const double w = std::exp(s[j].log_scale - top);
        p.u[j] = w * s[j].value;
        p.du[j] = w * s[j].derivative;
    }
    return p;
}

ComposedCurve::ComposedCurve(std::shared_ptr<const CurveMap> inner, std::vector<poly::FloatForm> forms)
    : inner_(std::move(inner)), forms_(std::move(forms))
{
    if (forms_.empty())
        fail(ErrorKind::DimensionMismatch, "composition needs at least one form");
    degree_ = forms_.front().degree();
    for (const auto& f : forms_) {
        if (f.nvars() != inner_->dim())
            fail(ErrorKind::DimensionMismatch, "form variable count differs from curve dimension");
        if (f.degree() != degree_)
            fail(ErrorKind::DimensionMismatch, "composition forms must share one degree");
        std::vector<poly::FloatForm> g;
        for (int v = 0; v < f.nvars(); ++v)
            g.push_back(poly::partial_derivative(f, v));
        grads_.push_back(std::move(g));
    }
}

CurvePoint ComposedCurve::eval(Complex z) const
{
    const CurvePoint p = inner_->eval(z);
    const std::size_t n = forms_.size();
    std::vector<Complex> val(n), der(n);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        val[i] = forms_[i].evaluate(p.u);
        for (std::size_t j = 0; j < p.u.size(); ++j)
            der[i] += grads_[i][j].evaluate(p.u) * p.du[j];
        if (val[i] != Complex(0.0))
            top = std::max(top, std::log(std::abs(val[i])));
    }
    if (!std::isfinite(top))
        fail(ErrorKind::Precondition, "composed lift vanishes: the forms share a zero on the curve");
    CurvePoint q;
    q.log_scale = degree_ * p.log_scale + top;
    const double w = std::exp(-top);
    for (std::size_t i = 0; i < n; ++i) {
        q.u.push_back(w * val[i]);
        q.du.push_back(w * der[i]);
    }
    return q;
}

double curve_log_norm(const CurveMap& curve, Complex z) { return curve.eval(z).log_norm(); }

double fs_density(const CurvePoint& p)
{
    double nu = 0.0, ndu = 0.0;
    Complex inner = 0.0;
    for (std::size_t j = 0; j < p.u.size(); ++j) {
        nu += std::norm(p.u[j]);
        ndu += std::norm(p.du[j]);
        inner += p.du[j] * std::conj(p.u[j]);
    }
    const double num = std::max(0.0, nu * ndu - std::norm(inner));
    return num / (M_PI * nu * nu);
}

double fs_density(const CurveMap& curve, Complex z) { return fs_density(curve.eval(z)); }

double fs_density_stencil(const CurveMap& curve, Complex z, double h)
{
    const double c = curve_log_norm(curve, z);
    const double lap = (curve_log_norm(curve, z + h) + curve_log_norm(curve, z - h) +
                        curve_log_norm(curve, z + Complex(0, h)) + curve_log_norm(curve, z - Complex(0, h)) - 4 * c) /
                       (h * h);
    return lap / (2 * M_PI);
}

ProjectiveCurve curve_from_json(const nlohmann::json& j)
{
    const nlohmann::json* comps = &j;
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            if (k != "components")
                fail(ErrorKind::Schema, "unexpected key '" + k + "' in curve");
        if (!j.contains("components"))
            fail(ErrorKind::Schema, "curve needs 'components'");
        comps = &j.at("components");
    }
    if (!comps->is_array())
        fail(ErrorKind::Schema, "curve components must be an array");
    std::vector<ExpPolyFunction> fs;
    for (const auto& c : *comps)
        fs.push_back(exppoly_from_json(c));
    return ProjectiveCurve(std::move(fs));
}

nlohmann::json to_json(const ProjectiveCurve& c)
{
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& f : c.components())
        comps.push_back(to_json(f));
    return {{"components", comps}};
}

} // namespace nevlab::analytic
