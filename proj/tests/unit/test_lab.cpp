#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nevlab/lab/lab.hpp"

using namespace nevlab::lab;
using nlohmann::json;

namespace {

json three_conics()
{
    std::ifstream in(std::string(NEVLAB_SOURCE_DIR) + "/scenarios/three_conics.json");
    return json::parse(in);
}

std::string schema_message(const json& j)
{
    try {
        scenario_from_json(j);
    } catch (const nevlab::Error& e) {
        CHECK(e.kind() == nevlab::ErrorKind::Schema);
        return e.what();
    }
    FAIL("scenario was accepted");
    return {};
}

// Quadric curve against two lines and a conic: small enough for a unit test.
json small_scenario()
{
    return {{"n", 2},
            {"degrees", {1, 1, 2}},
            {"family", {{"seed", 3}}},
            {"curve", {{"components", {{{"scale", 1}}, {{"roots", {1}}}, {{"roots", {-2, 3}}}}}}},
            {"grid", "2:8:4"},
            {"budget", "low"},
            {"mode", "exact"}};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("bundled scenario loads")
{
    const auto s = load_scenario(std::string(NEVLAB_SOURCE_DIR) + "/scenarios/three_conics.json");
    CHECK(s.n == 2);
    CHECK(s.degrees == std::vector<int>{2, 2, 2});
    CHECK(s.family_seed == 7);
    REQUIRE(s.grid);
    CHECK(s.grid->r1 == 16.0);
    CHECK(s.curve->dim() == 3);
    CHECK(resolve_grid(s).size() == 6);
}

TEST_CASE("scenario schema errors carry a JSON pointer")
{
    auto j = three_conics();
    j["degrees"] = {1, 1, 1};
    CHECK(schema_message(j).find("/degrees") != std::string::npos);

    j = three_conics();
    j["degrees"] = {2, 7, 2};
    const auto cap = schema_message(j);
    CHECK(cap.find("/degrees/1") != std::string::npos);
    CHECK(cap.find("max_degree = 6") != std::string::npos);

    j = three_conics();
    j["family"]["sed"] = 3;
    CHECK(schema_message(j).find("/family/sed") != std::string::npos);

    j = three_conics();
    j["grid"] = "3:2:4";
    CHECK(schema_message(j).find("/grid/r1") != std::string::npos);

    j = three_conics();
    j["curve"]["components"].erase(2);
    CHECK(schema_message(j).find("/curve") != std::string::npos);

    j = three_conics();
    j.erase("n");
    CHECK(schema_message(j).find("/n") != std::string::npos);

    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), nevlab::Error);
}

TEST_CASE("grid, budget and mode parsing")
{
    const auto g = parse_grid("3:10:4");
    CHECK(g.r0 == 3.0);
    CHECK(g.r1 == 10.0);
    CHECK(g.steps == 4);
    CHECK_THROWS_AS(parse_grid("3-10-4"), nevlab::Error);
    CHECK_THROWS_AS(parse_grid("3:10:4:1"), nevlab::Error);
    CHECK(parse_budget("high") == Budget::High);
    CHECK_THROWS_AS(parse_budget("huge"), nevlab::Error);
    CHECK(parse_mode("float") == CertMode::Float);
    CHECK(settings_for(Budget::Low).grid.r1 < settings_for(Budget::High).grid.r1);
}

TEST_CASE("exit codes")
{
    using nevlab::ErrorKind;
    CHECK(exit_code(ErrorKind::GeneralPosition) == 2);
    CHECK(exit_code(ErrorKind::RetryExhausted) == 2);
    CHECK(exit_code(ErrorKind::NonConvergent) == 3);
    CHECK(exit_code(ErrorKind::ZeroOnContour) == 3);
    CHECK(exit_code(ErrorKind::DegreeCap) == 3);
    CHECK(exit_code(ErrorKind::Schema) == 4);
    CHECK(exit_code(ErrorKind::Io) == 4);
    CHECK(exit_code(ErrorKind::Precondition) == 1);
    Report r;
    r.complete = true;
    CHECK(exit_code(r) == 0);
    r.complete = false;
    r.error_kind = std::string(nevlab::to_string(ErrorKind::SizeCap));
    CHECK(exit_code(r) == 3);
}

TEST_CASE("certificate failure gives a partial report")
{
    auto j = small_scenario();
    // All three forms vanish at [0:0:1].
    j.erase("degrees");
    j.erase("family");
    j["forms"] = {"3; 1; [1,0,0]:1+0*i", "3; 1; [0,1,0]:1+0*i", "3; 2; [1,1,0]:1+0*i"};
    const auto rep = run_certify(scenario_from_json(j));
    CHECK_FALSE(rep.complete);
    CHECK(rep.stage == "certificate");
    CHECK(exit_code(rep) == 2);
    CHECK(rep.error.find("D1") != std::string::npos);
    CHECK(rep.summary.contains("certificate"));
    CHECK(to_json(rep)["error"]["kind"] == rep.error_kind);
}

TEST_CASE("functionals report and its renderings")
{
    const auto s = scenario_from_json(small_scenario());
    const auto rep = run_functionals(s);
    REQUIRE(rep.complete);
    CHECK(rep.summary["certificate"]["positive"] == true);
    CHECK(rep.summary["critical_locus"]["degree"] == 1);

    const auto* d = rep.table("defects");
    REQUIRE(d != nullptr);
    CHECK(d->rows.size() == 3);
    for (const auto& row : d->rows)
        CHECK((row[2] >= 0.0 && row[2] <= 1.0));
    REQUIRE(rep.table("functionals_V") != nullptr);
    CHECK(rep.table("functionals_V")->rows.size() == 4);

    const auto csv = to_csv(*d);
    CHECK(csv.rfind("divisor,degree,defect,unclamped,window_start,window_end,module,seed,budget\n", 0) == 0);
    CHECK(csv.find(",nevanlinna,3,low\n") != std::string::npos);
    const auto dat = to_plotdata(*rep.table("defect_sum"));
    CHECK(dat.rfind("# defect_sum", 0) == 0);

    const auto dir = std::filesystem::temp_directory_path() / "nevlab_test_lab";
    std::filesystem::remove_all(dir);
    for (auto f : {Format::Json, Format::Csv, Format::Plotdata})
        emit_report(rep, f, dir.string());
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "defects.csv"));
    CHECK(std::filesystem::exists(dir / "defect_sum.dat"));
    CHECK_FALSE(std::filesystem::exists(dir / "defects.dat"));
    const auto back = json::parse(slurp(dir / "report.json"));
    CHECK(back["complete"] == true);
    CHECK(back["tables"]["defects"]["provenance"]["module"] == "nevanlinna");
    std::filesystem::remove_all(dir);
}

TEST_CASE("exhaustion command input")
{
    std::ifstream in(std::string(NEVLAB_SOURCE_DIR) + "/scenarios/plane.json");
    const auto plane = json::parse(in);
    const auto rep = run_exhaustion(plane, nevlab::nev::RadialGrid::logspace(8, 20, 3), Budget::Low);
    REQUIRE(rep.complete);
    const auto* t = rep.table("exhaustion");
    REQUIRE(t != nullptr);
    CHECK(t->rows.size() == 3);
    auto bad = plane;
    bad["radii"] = {0.25};
    const auto r2 = run_exhaustion(bad, nevlab::nev::RadialGrid::logspace(8, 20, 3), Budget::Low);
    CHECK_FALSE(r2.complete);
    CHECK(exit_code(r2) == 4);
}
