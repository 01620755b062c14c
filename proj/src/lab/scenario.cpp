#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "nevlab/lab/lab.hpp"
#include "nevlab/polycore/io.hpp"

namespace nevlab::lab {

namespace {

std::string join_path(const std::string& base, const std::string& key)
{
    // RFC 6901 escaping
    std::string k;
    for (char c : key) {
        if (c == '~')
            k += "~0";
        else if (c == '/')
            k += "~1";
        else
            k += c;
    }
    return base + "/" + k;
}

[[noreturn]] void schema(const std::string& path, const std::string& msg)
{
    fail(ErrorKind::Schema, (path.empty() ? std::string("/") : path) + ": " + msg);
}

void only_keys(const nlohmann::json& j, const std::string& path, std::initializer_list<const char*> keys)
{
    if (!j.is_object())
        schema(path, "expected an object");
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k))
            schema(join_path(path, k), "unknown key");
}

long integer(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_number_integer())
        schema(path, "expected an integer");
    return j.get<long>();
}

std::uint64_t seed_value(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_number_integer() || j.get<long long>() < 0)
        schema(path, "expected a non-negative integer seed");
    return j.get<std::uint64_t>();
}

double number(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_number())
        schema(path, "expected a number");
    return j.get<double>();
}

std::string text(const nlohmann::json& j, const std::string& path)
{
    if (!j.is_string())
        schema(path, "expected a string");
    return j.get<std::string>();
}

// Library errors raised while parsing a nested value are re-tagged with its path.
template <class F>
auto at_path(const std::string& path, F&& f)
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::Precondition ||
            e.kind() == ErrorKind::DimensionMismatch)
            schema(path, e.what());
        throw;
    } catch (const nlohmann::json::exception& e) {
        schema(path, e.what());
    }
}

GridSpec grid_from_json(const nlohmann::json& j, const std::string& path)
{
    if (j.is_string())
        return at_path(path, [&] { return parse_grid(j.get<std::string>()); });
    only_keys(j, path, {"r0", "r1", "steps"});
    GridSpec g;
    if (j.contains("r0"))
        g.r0 = number(j["r0"], path + "/r0");
    if (j.contains("r1"))
        g.r1 = number(j["r1"], path + "/r1");
    if (j.contains("steps"))
        g.steps = static_cast<int>(integer(j["steps"], path + "/steps"));
    return g;
}

void check_grid(const GridSpec& g, const std::string& path, const Caps& caps)
{
    if (!(g.r0 > 1.0))
        schema(path + "/r0", "grid must start above r = 1");
    if (!(g.r1 > g.r0))
        schema(path + "/r1", "grid end must exceed its start");
    if (g.r1 > caps.max_radius)
        schema(path + "/r1", "radius " + std::to_string(g.r1) + " exceeds the cap " +
                                 std::to_string(caps.max_radius));
    if (g.steps < 2 || g.steps > caps.max_steps)
        schema(path + "/steps", "steps must lie in [2, " + std::to_string(caps.max_steps) + "]");
}

} // namespace

GridSpec parse_grid(const std::string& s)
{
    GridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> g.r0 >> c1 >> g.r1 >> c2 >> g.steps) || c1 != ':' || c2 != ':' || !is.eof())
        fail(ErrorKind::Schema, "grid '" + s + "' is not of the form r0:r1:steps");
    return g;
}

Budget parse_budget(const std::string& s)
{
    if (s == "low")
        return Budget::Low;
    if (s == "default")
        return Budget::Default;
    if (s == "high")
        return Budget::High;
    fail(ErrorKind::Schema, "budget must be low, default or high, not '" + s + "'");
}

CertMode parse_mode(const std::string& s)
{
    if (s == "exact")
        return CertMode::Exact;
    if (s == "float")
        return CertMode::Float;
    fail(ErrorKind::Schema, "mode must be exact or float, not '" + s + "'");
}

std::string to_string(Budget b)
{
    switch (b) {
    case Budget::Low:
        return "low";
    case Budget::High:
        return "high";
    default:
        return "default";
    }
}

std::string to_string(CertMode m) { return m == CertMode::Exact ? "exact" : "float"; }

BudgetSettings settings_for(Budget b)
{
    BudgetSettings s;
    switch (b) {
    case Budget::Low:
        s.grid = {3.0, 10.0, 4};
        s.rule = {4, 8, 32};
        s.quad.max_samples = 1 << 18;
        break;
    case Budget::Default:
        s.grid = {3.0, 16.0, 6};
        s.rule = {8, 8, 64};
        break;
    case Budget::High:
        s.grid = {3.0, 30.0, 10};
        s.rule = {12, 8, 96};
        s.quad.rel_tol = 1e-13;
        s.quad.max_samples = 1 << 22;
        break;
    }
    return s;
}

Scenario scenario_from_json(const nlohmann::json& j, const Caps& caps)
{
    only_keys(j, "", {"n", "degrees", "family", "forms", "curve", "grid", "budget", "mode", "implicit", "samples",
                      "profile", "output"});
    Scenario s;
    if (!j.contains("n"))
        schema("/n", "required");
    s.n = static_cast<int>(integer(j["n"], "/n"));
    if (s.n < 1 || s.n > caps.max_n)
        schema("/n", "n must lie in [1, " + std::to_string(caps.max_n) + "]");

    if (j.contains("forms")) {
        const auto& fs = j["forms"];
        if (!fs.is_array())
            schema("/forms", "expected an array");
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const std::string p = "/forms/" + std::to_string(i);
            auto q = at_path(p, [&] {
                return fs[i].is_string() ? poly::parse_exact_form(fs[i].get<std::string>())
                                         : poly::exact_form_from_json(fs[i]);
            });
            if (q.nvars() != s.n + 1)
                schema(p, "form has " + std::to_string(q.nvars()) + " variables, expected " + std::to_string(s.n + 1));
            s.degrees.push_back(q.degree());
            s.forms.push_back(std::move(q));
        }
        if (j.contains("degrees")) {
            const auto& d = j["degrees"];
            if (!d.is_array() || d.size() != s.forms.size())
                schema("/degrees", "must match the explicit forms");
            for (std::size_t i = 0; i < d.size(); ++i)
                if (integer(d[i], "/degrees/" + std::to_string(i)) != s.degrees[i])
                    schema("/degrees/" + std::to_string(i), "disagrees with the degree of /forms/" + std::to_string(i));
        }
    } else {
        if (!j.contains("degrees"))
            schema("/degrees", "required when no explicit forms are given");
        const auto& d = j["degrees"];
        if (!d.is_array())
            schema("/degrees", "expected an array");
        for (std::size_t i = 0; i < d.size(); ++i)
            s.degrees.push_back(static_cast<int>(integer(d[i], "/degrees/" + std::to_string(i))));
    }
    if (static_cast<int>(s.degrees.size()) != s.n + 1)
        schema("/degrees", "expected n + 1 = " + std::to_string(s.n + 1) + " divisors, got " +
                               std::to_string(s.degrees.size()));
    for (std::size_t i = 0; i < s.degrees.size(); ++i) {
        const std::string p = "/degrees/" + std::to_string(i);
        if (s.degrees[i] < 1)
            schema(p, "degrees must be positive");
        if (s.degrees[i] > caps.max_degree)
            schema(p, "degree " + std::to_string(s.degrees[i]) + " exceeds the cap max_degree = " +
                          std::to_string(caps.max_degree));
    }
    const int total = std::accumulate(s.degrees.begin(), s.degrees.end(), 0);
    if (total < s.n + 2)
        schema("/degrees", "total degree " + std::to_string(total) + " is below n + 2 = " + std::to_string(s.n + 2));

    if (j.contains("family")) {
        const auto& f = j["family"];
        only_keys(f, "/family", {"seed", "max_seeds", "coeff_range"});
        if (f.contains("seed"))
            s.family_seed = seed_value(f["seed"], "/family/seed");
        if (f.contains("max_seeds"))
            s.max_seeds = static_cast<int>(integer(f["max_seeds"], "/family/max_seeds"));
        if (f.contains("coeff_range"))
            s.coeff_range = static_cast<int>(integer(f["coeff_range"], "/family/coeff_range"));
        if (s.max_seeds < 1 || s.max_seeds > 100)
            schema("/family/max_seeds", "must lie in [1, 100]");
        if (s.coeff_range < 1 || s.coeff_range > 1000)
            schema("/family/coeff_range", "must lie in [1, 1000]");
    }

    if (!j.contains("curve"))
        schema("/curve", "required");
    s.curve = at_path("/curve", [&] {
        return std::make_shared<const analytic::ProjectiveCurve>(analytic::curve_from_json(j["curve"]));
    });
    if (s.curve->dim() != s.n + 1)
        schema("/curve", "curve has " + std::to_string(s.curve->dim()) + " components, expected " +
                             std::to_string(s.n + 1));

    if (j.contains("budget"))
        s.budget = at_path("/budget", [&] { return parse_budget(text(j["budget"], "/budget")); });
    if (j.contains("mode"))
        s.mode = at_path("/mode", [&] { return parse_mode(text(j["mode"], "/mode")); });
    if (j.contains("grid")) {
        s.grid = grid_from_json(j["grid"], "/grid");
        check_grid(*s.grid, "/grid", caps);
    }
    if (j.contains("implicit")) {
        const auto& im = j["implicit"];
        only_keys(im, "/implicit", {"degree_cap", "seed"});
        if (im.contains("degree_cap")) {
            s.degree_cap = static_cast<int>(integer(im["degree_cap"], "/implicit/degree_cap"));
            if (s.degree_cap < 1 || s.degree_cap > 12)
                schema("/implicit/degree_cap", "must lie in [1, 12]");
        }
        if (im.contains("seed"))
            s.implicit_seed = seed_value(im["seed"], "/implicit/seed");
    }
    if (j.contains("samples")) {
        const auto& sm = j["samples"];
        only_keys(sm, "/samples", {"seed", "count"});
        if (sm.contains("seed"))
            s.sample_seed = seed_value(sm["seed"], "/samples/seed");
        if (sm.contains("count")) {
            s.local_samples = static_cast<int>(integer(sm["count"], "/samples/count"));
            if (s.local_samples < 1 || s.local_samples > caps.max_samples)
                schema("/samples/count", "must lie in [1, " + std::to_string(caps.max_samples) + "]");
        }
    }
    if (j.contains("profile"))
        s.profile = at_path("/profile", [&] { return parabolic::profile_from_json(j["profile"]); });
    if (j.contains("output")) {
        const auto& o = j["output"];
        only_keys(o, "/output", {"dir"});
        if (o.contains("dir"))
            s.out_dir = text(o["dir"], "/output/dir");
    }
    return s;
}

Scenario load_scenario(const std::string& path, const Caps& caps)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::Io, "cannot open scenario '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorKind::Schema, "/: " + std::string(e.what()));
    }
    return scenario_from_json(j, caps);
}

nev::RadialGrid resolve_grid(const Scenario& s)
{
    const GridSpec g = s.grid ? *s.grid : settings_for(s.budget).grid;
    return nev::RadialGrid::logspace(g.r0, g.r1, g.steps);
}

} // namespace nevlab::lab
