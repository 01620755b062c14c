#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "nevlab/lab/lab.hpp"
#include "nevlab/polycore/io.hpp"

namespace nevlab::lab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Preimages of different D_i closer than this are one puncture.
constexpr double kClusterTol = 1e-3;
// 𝒲∘g is cancellation-heavy near F(𝒱); rounding sits near 1e-16 of the term scale.
constexpr double kImageFloor = 1e-14;

struct Stage {
    Report& rep;
    void operator()(const char* name) const { rep.stage = name; }
};

Table make_table(std::string name, std::vector<std::string> cols, const std::string& module, std::uint64_t seed,
                 Budget b, bool series = false)
{
    Table t;
    t.name = std::move(name);
    t.columns = std::move(cols);
    t.module = module;
    t.seed = seed;
    t.budget = to_string(b);
    t.series = series;
    return t;
}

nlohmann::json zero_list(const std::vector<analytic::ZeroRecord>& zs)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& z : zs)
        a.push_back({{"re", z.location.real()}, {"im", z.location.imag()}, {"mult", z.multiplicity},
                     {"resolution", z.resolution}});
    return a;
}

std::string subset_text(const std::vector<int>& idx, int nforms)
{
    std::string s;
    for (int i : idx)
        s += (s.empty() ? "" : ", ") + (i < nforms ? "D" + std::to_string(i + 1) : std::string("V"));
    return "{" + s + "}";
}

// Family, endomorphism, critical locus and certificate, shared by every command.
struct Front {
    std::vector<poly::ExactForm> forms;
    std::uint64_t seed = 0;
    std::optional<endo::Endomorphism> F;
    std::optional<endo::CriticalLocus> crit;
    endo::GeneralPositionCertificate cert;
};

Front front(const Scenario& s, Report& rep)
{
    const Stage stage{rep};
    Front out;
    stage("family");
    auto& fam = rep.summary["family"];
    if (s.forms.empty()) {
        try {
            auto g = endo::construct_generic_family(s.n, s.degrees, s.family_seed, s.max_seeds, s.coeff_range);
            out.forms = std::move(g.forms);
            out.seed = g.seed;
            fam["seeds_tried"] = g.tried;
        } catch (const Error& e) {
            fam["seeds_tried"] = nlohmann::json::array();
            for (int k = 0; k < s.max_seeds; ++k)
                fam["seeds_tried"].push_back(s.family_seed + k);
            if (e.kind() == ErrorKind::RetryExhausted)
                stage("certificate");
            throw;
        }
        fam["source"] = "generated";
    } else {
        out.forms = s.forms;
        out.seed = s.family_seed;
        fam["source"] = "explicit";
    }
    fam["seed"] = out.seed;
    fam["forms"] = nlohmann::json::array();
    for (const auto& q : out.forms)
        fam["forms"].push_back(poly::to_text(q));
    fam["degrees"] = s.degrees;

    stage("certificate");
    const int nf = static_cast<int>(out.forms.size());
    std::vector<poly::FloatForm> fl;
    for (const auto& q : out.forms)
        fl.push_back(poly::to_float(q));
    auto certify = [&](bool with_v) {
        if (s.mode == CertMode::Exact) {
            auto all = out.forms;
            if (with_v)
                all.push_back(out.crit->exact->poly());
            return endo::general_position(all);
        }
        auto all = fl;
        if (with_v)
            all.push_back(out.crit->vee.poly());
        return endo::general_position(all);
    };
    try {
        out.F = endo::build_endomorphism(out.forms);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::GeneralPosition) {
            out.cert = certify(false);
            rep.summary["certificate"] = endo::to_json(out.cert);
            if (const auto* bad = out.cert.first_failure())
                fail(ErrorKind::GeneralPosition, "subset " + subset_text(bad->indices, nf) + " has a common zero");
        }
        throw;
    }
    out.crit = endo::critical_locus(*out.F);
    if (s.mode == CertMode::Exact && !out.crit->exact)
        fail(ErrorKind::Precondition, "exact critical locus unavailable");
    rep.summary["critical_locus"] = {{"degree", out.crit->vee.degree()},
                                     {"expected_degree", out.crit->expected_degree},
                                     {"form", poly::to_text(out.crit->vee.poly())}};
    rep.summary["endomorphism"] = {{"d", out.F->common_degree()}, {"exponents", out.F->exponents()}};
    out.cert = certify(true);
    rep.summary["certificate"] = endo::to_json(out.cert);
    rep.summary["certificate"]["mode"] = to_string(s.mode);
    if (const auto* bad = out.cert.first_failure())
        fail(ErrorKind::GeneralPosition, "subset " + subset_text(bad->indices, nf) + " is not in general position");
    return out;
}

struct PlaneData {
    std::vector<nev::DivisorZeros> zD; // one per D_i
    nev::DivisorZeros zV;
    std::vector<nev::DefectEstimate> defects;
};

PlaneData plane_functionals(const Scenario& s, const Front& fr, const nev::RadialGrid& grid, Report& rep)
{
    const Stage stage{rep};
    stage("plane_functionals");
    const auto set = settings_for(s.budget);
    const nev::CurvePtr f = s.curve;
    const double R = grid.back() + 1.5;
    PlaneData pd;
    const std::vector<std::string> cols{"r", "T", "N_inf", "N_1", "N_n", "m", "fmt_residual", "defect_running"};
    auto table_for = [&](const std::string& name, const poly::FloatForm& q, const nev::DivisorZeros& z) {
        auto t = make_table("functionals_" + name, cols, "nevanlinna", fr.seed, s.budget);
        for (const auto& row : nev::functional_table(f, q, grid, z, set.quad))
            t.rows.push_back({row.r, row.T, row.N_inf, row.N_1, row.N_n, row.m, row.fmt_residual,
                              row.defect_running});
        rep.tables.push_back(std::move(t));
    };
    auto defects = make_table("defects", {"divisor", "degree", "defect", "unclamped", "window_start", "window_end"},
                              "nevanlinna", fr.seed, s.budget);
    for (std::size_t i = 0; i < fr.F->forms().size(); ++i) {
        const auto& q = fr.F->forms()[i];
        pd.zD.push_back(nev::divisor_zeros(f, q, R));
        table_for("D" + std::to_string(i + 1), q, pd.zD.back());
        pd.defects.push_back(nev::defect_estimate(f, q, grid, nev::kFull, pd.zD.back(), 0.5, set.quad));
        const auto& d = pd.defects.back();
        defects.rows.push_back({double(i + 1), double(q.degree()), d.value, d.unclamped, d.window_start, d.window_end});
    }
    pd.zV = nev::divisor_zeros(f, fr.crit->vee.poly(), R);
    table_for("V", fr.crit->vee.poly(), pd.zV);
    rep.tables.push_back(std::move(defects));

    // Σ δ̂ over the tail window, and the running sum per radius.
    auto sum = make_table("defect_sum", {"r", "running_sum"}, "nevanlinna", fr.seed, s.budget, true);
    const std::size_t start = grid.tail_start();
    bool trend = true;
    double prev = kNaN;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double v = 0.0;
        for (const auto& d : pd.defects)
            v += d.running[k];
        sum.rows.push_back({grid.radii()[k], v});
        if (k > start && v > prev + 1e-12)
            trend = false;
        prev = v;
    }
    rep.tables.push_back(std::move(sum));
    double total = 0.0, unclamped = 0.0;
    for (const auto& d : pd.defects) {
        total += d.value;
        unclamped += d.unclamped;
    }
    const int bound = s.n + 1;
    rep.summary["defect_sum"] = {{"value", total},
                                 {"unclamped", unclamped},
                                 {"bound", bound},
                                 {"below_bound", total < bound},
                                 {"window_start", grid.radii()[start]},
                                 {"window_end", grid.back()},
                                 {"running_nonincreasing_on_window", trend}};
    rep.summary["zero_counts"] = nlohmann::json::object();
    for (std::size_t i = 0; i < pd.zD.size(); ++i)
        rep.summary["zero_counts"]["D" + std::to_string(i + 1)] = pd.zD[i].zeros.size();
    rep.summary["zero_counts"]["V"] = pd.zV.zeros.size();
    rep.summary["zero_radius"] = R;
    return pd;
}

// Preimages of all D_i merged into distinct punctures.
std::vector<analytic::Complex> merge_punctures(const std::vector<nev::DivisorZeros>& zD)
{
    std::vector<analytic::Complex> pts;
    for (const auto& z : zD)
        for (const auto& r : z.zeros) {
            bool dup = false;
            for (const auto& p : pts)
                if (std::abs(p - r.location) < kClusterTol) {
                    dup = true;
                    break;
                }
            if (!dup)
                pts.push_back(r.location);
        }
    return pts;
}

} // namespace

const Table* Report::table(const std::string& name) const
{
    for (const auto& t : tables)
        if (t.name == name)
            return &t;
    return nullptr;
}

Report run_certify(const Scenario& s)
{
    Report rep;
    rep.summary["budget"] = to_string(s.budget);
    try {
        front(s, rep);
        rep.stage = "done";
        rep.complete = true;
    } catch (const Error& e) {
        rep.error_kind = std::string(to_string(e.kind()));
        rep.error = e.what();
    }
    return rep;
}

Report run_functionals(const Scenario& s)
{
    Report rep;
    rep.summary["budget"] = to_string(s.budget);
    try {
        const auto grid = resolve_grid(s);
        rep.summary["grid"] = grid.radii();
        const Front fr = front(s, rep);
        plane_functionals(s, fr, grid, rep);
        rep.stage = "done";
        rep.complete = true;
    } catch (const Error& e) {
        rep.error_kind = std::string(to_string(e.kind()));
        rep.error = e.what();
    }
    return rep;
}

Report run_pipeline(const Scenario& s)
{
    Report rep;
    const Stage stage{rep};
    const auto set = settings_for(s.budget);
    rep.summary["budget"] = to_string(s.budget);
    rep.summary["mode"] = to_string(s.mode);
    rep.summary["seeds"] = {{"family", s.family_seed}, {"implicit", s.implicit_seed}, {"samples", s.sample_seed}};
    rep.summary["quadrature"] = {{"panels", set.rule.panels},
                                 {"nodes", set.rule.nodes},
                                 {"angular", set.rule.angular},
                                 {"circle_rel_tol", set.quad.rel_tol},
                                 {"circle_max_samples", set.quad.max_samples}};
    try {
        stage("scenario");
        const auto grid = resolve_grid(s);
        rep.summary["grid"] = grid.radii();
        if (s.n != 2)
            fail(ErrorKind::Precondition, "the pipeline needs n = 2 (plane-curve images)");
        const Front fr = front(s, rep);
        const auto& F = *fr.F;
        const poly::FloatForm V = fr.crit->vee.poly();

        stage("image");
        endo::ImplicitOptions io;
        io.seed = s.implicit_seed;
        const int cap = s.degree_cap > 0 ? s.degree_cap : V.degree() * F.common_degree();
        const auto image = endo::implicitize_image(F, V, cap, io);
        const poly::FloatForm W = image.dub.poly();
        rep.summary["image"] = {{"degree", image.degree_found},  {"degree_cap", cap},
                                {"fit_residual", image.fit_residual}, {"validation", image.validation},
                                {"reduced", image.reduced},       {"seed", s.implicit_seed}};

        stage("local_multiplicity");
        {
            const auto pts = endo::sample_locus(V, s.local_samples, s.sample_seed);
            int exceptional = 0, order2 = 0, failed = 0;
            nlohmann::json orders = nlohmann::json::array();
            for (std::size_t k = 0; k < pts.size(); ++k) {
                if (endo::exceptional_locus_test(V, F.forms(), W, F, pts[k])) {
                    ++exceptional;
                    orders.push_back(nullptr);
                    continue;
                }
                endo::LocalOptions lo;
                lo.seed = s.sample_seed + k;
                try {
                    const auto est = endo::local_multiplicity(F, V, W, pts[k], lo);
                    orders.push_back(est.order);
                    order2 += est.order == 2;
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::NonConvergent)
                        throw;
                    ++failed;
                    orders.push_back(-1);
                }
            }
            const int generic = static_cast<int>(pts.size()) - exceptional;
            rep.summary["local_multiplicity"] = {
                {"samples", pts.size()},     {"exceptional", exceptional}, {"non_convergent", failed},
                {"order_two", order2},       {"orders", orders},
                {"fraction_order_two", generic > 0 ? double(order2) / generic : kNaN},
                {"seed", s.sample_seed}};
        }

        const PlaneData pd = plane_functionals(s, fr, grid, rep);
        const nev::CurvePtr f = s.curve;
        const double R = pd.zV.radius;

        stage("punctures");
        const auto pts = merge_punctures(pd.zD);
        const auto choice = parabolic::choose_radii(pts, *f);
        parabolic::Exhaustion ex{parabolic::PuncturedPlane(choice.punctures, choice.radii),
                                 std::make_shared<parabolic::Smoothing>(s.profile)};
        {
            double rmin = choice.radii.empty() ? kNaN : *std::min_element(choice.radii.begin(), choice.radii.end());
            rep.summary["punctures"] = {{"count", choice.punctures.size()},
                                        {"radius_sum", ex.plane.radius_sum()},
                                        {"min_radius", rmin},
                                        {"cluster_tol", kClusterTol},
                                        {"warnings", choice.warnings},
                                        {"plane", parabolic::to_json(ex.plane, s.profile)}};
            auto t = make_table("radii", {"re", "im", "radius", "mass"}, "parabolic", fr.seed, s.budget);
            for (std::size_t j = 0; j < choice.punctures.size(); ++j)
                t.rows.push_back({choice.punctures[j].real(), choice.punctures[j].imag(), choice.radii[j],
                                  choice.masses[j]});
            rep.tables.push_back(std::move(t));
        }

        stage("image_zeros");
        const auto g = std::make_shared<const analytic::ComposedCurve>(f, F.powered());
        analytic::ZeroOptions zo;
        zo.winding.floor = kImageFloor;
        const auto zW = nev::divisor_zeros(g, W, R, zo);
        {
            int multiple = 0;
            for (const auto& z : zW.zeros)
                multiple += z.multiplicity > 1;
            rep.summary["zero_counts"]["W_of_g"] = zW.zeros.size();
            rep.summary["zero_counts"]["W_of_g_multiple"] = multiple;
            rep.summary["zeros"] = {{"V", zero_list(pd.zV.zeros)}};
        }

        stage("jump");
        {
            nlohmann::json events = nlohmann::json::array();
            int accepted = 0, passed = 0, exceptional = 0;
            for (const auto& z : pd.zV.zeros) {
                if (std::abs(z.location) >= grid.back())
                    continue;
                nlohmann::json ev{{"re", z.location.real()}, {"im", z.location.imag()}, {"mult", z.multiplicity}};
                const auto u = f->eval(z.location).u;
                if (endo::exceptional_locus_test(V, F.forms(), W, F, u)) {
                    ev["accepted"] = false;
                    ev["reason"] = "exceptional";
                    ++exceptional;
                } else {
                    endo::JumpOptions jo;
                    jo.check_exceptional = false;
                    jo.winding.floor = kImageFloor;
                    // the circle must enclose the matching 𝒲∘g cluster
                    double near = std::numeric_limits<double>::infinity(), res = 0.0;
                    for (const auto& w : zW.zeros)
                        if (std::abs(w.location - z.location) < near) {
                            near = std::abs(w.location - z.location);
                            res = w.resolution;
                        }
                    if (near < 1e-2)
                        jo.radius = std::max(jo.radius, 2 * (near + res));
                    jo.radius = std::max(jo.radius, 4 * z.resolution);
                    std::optional<endo::JumpResult> j;
                    for (int attempt = 0; attempt < 4 && !j; ++attempt) {
                        try {
                            j = endo::multiplicity_jump_check(f, F, V, W, z.location, jo);
                        } catch (const Error& e) {
                            if (e.kind() != ErrorKind::ZeroOnContour)
                                throw;
                            jo.radius *= 1.7;
                        }
                    }
                    ev["radius"] = jo.radius;
                    if (!j) {
                        ev["accepted"] = false;
                        ev["reason"] = "zero-on-contour";
                    } else {
                        ev["accepted"] = true;
                        ev["ord_f_V"] = j->ord_f_V;
                        ev["ord_g_W"] = j->ord_g_W;
                        ev["pass"] = j->pass;
                        ++accepted;
                        passed += j->pass;
                    }
                }
                events.push_back(std::move(ev));
            }
            rep.summary["jump"] = {{"events", events},
                                   {"accepted", accepted},
                                   {"passed", passed},
                                   {"exceptional", exceptional},
                                   {"all_pass", accepted > 0 && passed == accepted}};
        }

        stage("parabolic");
        {
            const auto& rs = grid.radii();
            const double degV = V.degree();
            const auto thresholds = parabolic::hole_thresholds(ex);
            // f^{-1}(D) straight from the zero lists, not from the merged punctures
            std::vector<analytic::ZeroRecord> preimages;
            for (const auto& z : pd.zD)
                preimages.insert(preimages.end(), z.zeros.begin(), z.zeros.end());
            const auto euler = parabolic::euler_vs_counting(ex.plane, preimages, grid);

            auto par = make_table("parabolic",
                                  {"r", "T_f", "T_f_parab", "gap_f", "T_g", "T_g_parab", "gap_g", "N_f_V", "N1_f_V",
                                   "N_g_W", "N1_g_W"},
                                  "parabolic", fr.seed, s.budget);
            auto ru = make_table("min_ru_smt_application", {"r", "T_f_parab", "N_f_V_over_deg", "margin"},
                                 "parabolic", fr.seed, s.budget, true);
            auto tan = make_table("counting_tangent_point_for_g", {"r", "N_g_W_minus_N1", "T_g_parab", "ratio"},
                                  "parabolic", fr.seed, s.budget, true);
            auto cmp = make_table("counting_function_tilde_f_and_tilde_g",
                                  {"r", "N_f_V", "N_g_W_minus_N1", "margin"}, "parabolic", fr.seed, s.budget, true);
            auto gapt = make_table("order_gap", {"r", "gap", "log_r", "bound_margin"}, "parabolic", fr.seed, s.budget,
                                   true);
            auto exh = make_table("exhaustion",
                                  {"r", "chi", "X_weighted", "X_countform", "boundary_components", "T_parab",
                                   "N_parab_inf", "N_parab_1", "gap", "margin"},
                                  "parabolic", fr.seed, s.budget);
            std::vector<double> gaps, ratios;
            for (std::size_t k = 0; k < rs.size(); ++k) {
                const double r = rs[k];
                const double Tf = nev::order_function_area(*f, r, set.quad);
                const double gf = parabolic::order_gap(*f, ex, r, set.rule);
                const double Tg = nev::order_function_area(*g, r, set.quad);
                const double gg = parabolic::order_gap(*g, ex, r, set.rule);
                const double NfV = parabolic::parabolic_counting(pd.zV.zeros, ex, r);
                const double N1fV = parabolic::parabolic_counting(pd.zV.zeros, ex, r, 1);
                const double NgW = parabolic::parabolic_counting(zW.zeros, ex, r);
                const double N1gW = parabolic::parabolic_counting(zW.zeros, ex, r, 1);
                const double Tfp = Tf - gf, Tgp = Tg - gg;
                par.rows.push_back({r, Tf, Tfp, gf, Tg, Tgp, gg, NfV, N1fV, NgW, N1gW});
                ru.rows.push_back({r, Tfp, NfV / degV, NfV / degV - Tfp});
                const double ratio = Tgp > 0 ? (NgW - N1gW) / Tgp : kNaN;
                ratios.push_back(ratio);
                tan.rows.push_back({r, NgW - N1gW, Tgp, ratio});
                cmp.rows.push_back({r, NfV, NgW - N1gW, NgW - N1gW - NfV});
                gaps.push_back(gf);
                exh.rows.push_back({r, double(parabolic::euler_characteristic(thresholds, r)),
                                    parabolic::weighted_euler(thresholds, r),
                                    parabolic::weighted_euler_countform(ex.plane, r),
                                    double(parabolic::boundary_components(ex.plane, r)), Tfp, NfV, N1fV, gf,
                                    euler.margin[k]});
            }
            // C frozen on the first quartile.
            const std::size_t head = std::max<std::size_t>(1, (rs.size() + 3) / 4);
            double C = 0.0;
            for (std::size_t k = 0; k < head; ++k)
                C = std::max(C, gaps[k] - std::log(rs[k]));
            bool gap_ok = true;
            double gap_min = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < rs.size(); ++k) {
                const double m = std::log(rs[k]) + C - gaps[k];
                gapt.rows.push_back({rs[k], gaps[k], std::log(rs[k]), m});
                gap_ok = gap_ok && gaps[k] >= -1e-12 && m >= -1e-9;
                gap_min = std::min(gap_min, gaps[k]);
            }
            const std::size_t start = grid.tail_start();
            bool decreasing = true;
            for (std::size_t k = start + 1; k < ratios.size(); ++k)
                if (ratios[k] > ratios[k - 1] + 1e-12)
                    decreasing = false;
            double euler_min = std::numeric_limits<double>::infinity();
            for (double m : euler.margin)
                euler_min = std::min(euler_min, m);
            double ru_min = std::numeric_limits<double>::infinity(), cmp_min = ru_min;
            for (std::size_t k = start; k < rs.size(); ++k) {
                ru_min = std::min(ru_min, ru.rows[k][3]);
                cmp_min = std::min(cmp_min, cmp.rows[k][3]);
            }
            rep.summary["order_gap"] = {{"C", C}, {"min_gap", gap_min}, {"within_bound", gap_ok}};
            rep.summary["euler_vs_counting"] = {{"C", euler.C}, {"min_margin", euler_min}};
            rep.summary["margins"] = {
                {"min_ru_smt_application", {{"tail_min", ru_min}}},
                {"counting_tangent_point_for_g",
                 {{"tail_last", ratios.back()}, {"decreasing_on_window", decreasing}}},
                {"counting_function_tilde_f_and_tilde_g", {{"tail_min", cmp_min}}}};
            for (auto* t : {&par, &ru, &tan, &cmp, &gapt, &exh})
                rep.tables.push_back(std::move(*t));
        }
        rep.stage = "done";
        rep.complete = true;
    } catch (const Error& e) {
        rep.error_kind = std::string(to_string(e.kind()));
        rep.error = e.what();
    }
    return rep;
}

Report run_exhaustion(const nlohmann::json& j, const nev::RadialGrid& grid, Budget budget)
{
    Report rep;
    const auto set = settings_for(budget);
    rep.summary["budget"] = to_string(budget);
    try {
        rep.stage = "plane";
        if (!j.is_object())
            fail(ErrorKind::Schema, "/: expected an object");
        for (const auto& [k, v] : j.items())
            if (k != "punctures" && k != "radii" && k != "profile" && k != "curve")
                fail(ErrorKind::Schema, "/" + k + ": unknown key");
        // Malformed planes are input errors, whatever the parser calls them.
        auto input = [](const char* where, auto&& fn) {
            try {
                return fn();
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::Precondition || e.kind() == ErrorKind::DimensionMismatch)
                    fail(ErrorKind::Schema, std::string(where) + ": " + e.what());
                throw;
            }
        };
        parabolic::Exhaustion ex;
        ex.plane = input("/", [&] { return parabolic::plane_from_json(j); });
        const auto prof = input("/profile", [&] {
            return parabolic::profile_from_json(j.contains("profile") ? j["profile"] : nlohmann::json());
        });
        ex.smoothing = std::make_shared<parabolic::Smoothing>(prof);
        std::shared_ptr<const analytic::ProjectiveCurve> f;
        if (j.contains("curve"))
            f = input("/curve", [&] {
                return std::make_shared<const analytic::ProjectiveCurve>(analytic::curve_from_json(j["curve"]));
            });
        rep.summary["grid"] = grid.radii();
        rep.summary["plane"] = parabolic::to_json(ex.plane, prof);
        if (prof.mode == parabolic::SmoothingMode::PaperH)
            rep.summary["h_shift"] = {{"c", ex.smoothing->shift()}, {"residual", ex.smoothing->residual()}};

        rep.stage = "exhaustion";
        const auto th = parabolic::hole_thresholds(ex);
        std::vector<parabolic::ExhaustionRow> rows;
        auto t = make_table("exhaustion",
                            {"r", "chi", "X_weighted", "X_countform", "boundary_components", "T_parab", "N_parab_inf",
                             "N_parab_1", "gap", "margin"},
                            "parabolic", 0, budget);
        for (double r : grid.radii()) {
            double T = kNaN, gap = kNaN;
            if (f) {
                gap = parabolic::order_gap(*f, ex, r, set.rule);
                T = nev::order_function_area(*f, r, set.quad) - gap;
            }
            t.rows.push_back({r, double(parabolic::euler_characteristic(th, r)), parabolic::weighted_euler(th, r),
                              parabolic::weighted_euler_countform(ex.plane, r),
                              double(parabolic::boundary_components(ex.plane, r)), T, kNaN, kNaN, gap, kNaN});
        }
        rep.tables.push_back(std::move(t));
        rep.summary["ddc_mass"] = parabolic::ddc_mass(ex, grid.back(), set.rule);
        rep.stage = "done";
        rep.complete = true;
    } catch (const Error& e) {
        rep.error_kind = std::string(to_string(e.kind()));
        rep.error = e.what();
    } catch (const nlohmann::json::exception& e) {
        rep.error_kind = std::string(to_string(ErrorKind::Schema));
        rep.error = e.what();
    }
    return rep;
}

} // namespace nevlab::lab
