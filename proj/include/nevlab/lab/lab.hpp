#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "nevlab/endo/endo.hpp"
#include "nevlab/nevanlinna/functionals.hpp"
#include "nevlab/parabolic/parabolic.hpp"

namespace nevlab::lab {

struct GridSpec {
    double r0 = 3.0;
    double r1 = 16.0;
    int steps = 6;
};

/// "r0:r1:steps", log-spaced.
GridSpec parse_grid(const std::string& text);

enum class Budget { Low, Default, High };
enum class CertMode { Exact, Float };

Budget parse_budget(const std::string& s);
CertMode parse_mode(const std::string& s);
std::string to_string(Budget b);
std::string to_string(CertMode m);

struct BudgetSettings {
    GridSpec grid;
    parabolic::PolarRule rule;
    nev::QuadOptions quad;
};

BudgetSettings settings_for(Budget b);

struct Caps {
    int max_n = 4;
    int max_degree = 6;
    double max_radius = 200.0;
    int max_steps = 64;
    int max_samples = 200;
};

struct Scenario {
    int n = 2;
    std::vector<int> degrees;
    std::uint64_t family_seed = 7;
    int max_seeds = 5;
    int coeff_range = 5;
    std::vector<poly::ExactForm> forms; // explicit family; empty → generated from family_seed
    std::shared_ptr<const analytic::ProjectiveCurve> curve;
    std::optional<GridSpec> grid;
    Budget budget = Budget::Default;
    CertMode mode = CertMode::Exact;
    int degree_cap = 0;             // 0 → deg 𝒱 · d
    std::uint64_t implicit_seed = 11;
    std::uint64_t sample_seed = 3;
    int local_samples = 20;
    parabolic::SmoothingProfile profile;
    std::string out_dir = "nevlab_out";
};

/// Throws Schema with a JSON-pointer path on any violation; unknown keys are rejected.
Scenario scenario_from_json(const nlohmann::json& j, const Caps& caps = {});
Scenario load_scenario(const std::string& path, const Caps& caps = {});

/// The grid actually used: explicit scenario grid, else the budget default.
nev::RadialGrid resolve_grid(const Scenario& s);

/// Numeric table with provenance; rendered as CSV, plotdata and JSON.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string module;
    std::uint64_t seed = 0;
    std::string budget;
    bool series = false; // also written as a plotdata file
};

struct Report {
    std::string stage;    // stage reached (the failing one after an abort)
    bool complete = false;
    std::string error_kind;
    std::string error;
    nlohmann::json summary = nlohmann::json::object();
    std::vector<Table> tables;

    const Table* table(const std::string& name) const;
};

/// Family and certificate only.
Report run_certify(const Scenario& s);
/// Family, 𝒱 and the plane functionals of f against every D_i and 𝒱.
Report run_functionals(const Scenario& s);
/// The full chain; stage failures end in a partial report instead of an exception.
Report run_pipeline(const Scenario& s);

/// Exhaustion table for a plane file: {"punctures", "radii", "profile", optional "curve"}.
Report run_exhaustion(const nlohmann::json& plane, const nev::RadialGrid& grid, Budget budget);

enum class Format { Json, Csv, Plotdata };

/// Writes report.json / <table>.csv / <series>.dat into dir; returns the paths written.
std::vector<std::string> emit_report(const Report& r, Format f, const std::string& dir);

nlohmann::json to_json(const Report& r);
std::string to_csv(const Table& t);
std::string to_plotdata(const Table& t);

/// 0 ok, 2 certificate failure, 3 numeric budget exhausted, 4 schema or input error, 1 otherwise.
int exit_code(const Report& r);
int exit_code(ErrorKind k);

} // namespace nevlab::lab
