#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "nevlab/lab/lab.hpp"

using namespace nevlab;

namespace {

struct Flags {
    std::string grid;
    std::string budget;
    std::string mode;
    std::string out;
    std::vector<std::string> formats{"json", "csv", "plotdata"};
};

lab::Format parse_format(const std::string& s)
{
    if (s == "json")
        return lab::Format::Json;
    if (s == "csv")
        return lab::Format::Csv;
    if (s == "plotdata")
        return lab::Format::Plotdata;
    fail(ErrorKind::Schema, "unknown format '" + s + "'");
}

lab::Scenario scenario(const std::string& path, const Flags& fl)
{
    auto s = lab::load_scenario(path);
    if (!fl.grid.empty())
        s.grid = lab::parse_grid(fl.grid);
    if (!fl.budget.empty())
        s.budget = lab::parse_budget(fl.budget);
    if (!fl.mode.empty())
        s.mode = lab::parse_mode(fl.mode);
    if (!fl.out.empty())
        s.out_dir = fl.out;
    if (s.grid) {
        // same checks as the scenario file
        nlohmann::json g{{"r0", s.grid->r0}, {"r1", s.grid->r1}, {"steps", s.grid->steps}};
        auto j = nlohmann::json::parse(std::ifstream(path));
        j["grid"] = g;
        lab::scenario_from_json(j);
    }
    return s;
}

int finish(const lab::Report& rep, const std::string& dir, const Flags& fl)
{
    for (const auto& f : fl.formats)
        for (const auto& p : lab::emit_report(rep, parse_format(f), dir))
            std::cerr << "wrote " << p << '\n';
    std::cout << nlohmann::json{{"stage", rep.stage}, {"complete", rep.complete}}.dump();
    std::cout << '\n';
    if (!rep.complete)
        std::cerr << "nevlab: stage '" << rep.stage << "' failed: " << rep.error << '\n';
    return lab::exit_code(rep);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"nevlab: numerical value-distribution experiments"};
    app.require_subcommand(1);
    Flags fl;
    std::string input;

    auto common = [&](CLI::App* sub, const char* what) {
        sub->add_option("input", input, what)->required();
        sub->add_option("--grid", fl.grid, "radial grid r0:r1:steps (log spaced)");
        sub->add_option("--budget", fl.budget, "low|default|high")->check(CLI::IsMember({"low", "default", "high"}));
        sub->add_option("--out", fl.out, "output directory");
        sub->add_option("--format", fl.formats, "json, csv, plotdata (repeatable)")
            ->check(CLI::IsMember({"json", "csv", "plotdata"}));
    };
    auto* certify = app.add_subcommand("certify", "build the family and its general-position certificate");
    auto* functionals = app.add_subcommand("functionals", "plane functionals of f against every D_i and V");
    auto* pipeline = app.add_subcommand("pipeline", "full chain with parabolic margins and defect sum");
    auto* exhaustion = app.add_subcommand("exhaustion", "exhaustion table for a punctured plane");
    for (auto* s : {certify, functionals, pipeline})
        common(s, "scenario JSON");
    common(exhaustion, "plane JSON");
    for (auto* s : {certify, functionals, pipeline})
        s->add_option("--mode", fl.mode, "exact|float")->check(CLI::IsMember({"exact", "float"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 4;
    }

    try {
        if (exhaustion->parsed()) {
            std::ifstream in(input);
            if (!in)
                fail(ErrorKind::Io, "cannot open plane file '" + input + "'");
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error& e) {
                fail(ErrorKind::Schema, "/: " + std::string(e.what()));
            }
            const auto budget = fl.budget.empty() ? lab::Budget::Default : lab::parse_budget(fl.budget);
            const auto g = fl.grid.empty() ? lab::settings_for(budget).grid : lab::parse_grid(fl.grid);
            if (!(g.r0 > 1.0) || !(g.r1 > g.r0) || g.steps < 2)
                fail(ErrorKind::Schema, "--grid: need 1 < r0 < r1 and steps >= 2");
            const auto rep = lab::run_exhaustion(j, nev::RadialGrid::logspace(g.r0, g.r1, g.steps), budget);
            return finish(rep, fl.out.empty() ? "nevlab_out" : fl.out, fl);
        }
        const auto s = scenario(input, fl);
        lab::Report rep;
        if (certify->parsed())
            rep = lab::run_certify(s);
        else if (functionals->parsed())
            rep = lab::run_functionals(s);
        else
            rep = lab::run_pipeline(s);
        return finish(rep, s.out_dir, fl);
    } catch (const Error& e) {
        std::cerr << "nevlab: " << e.what() << '\n';
        return lab::exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "nevlab: " << e.what() << '\n';
        return 1;
    }
}
