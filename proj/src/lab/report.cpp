#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nevlab/lab/lab.hpp"

namespace nevlab::lab {

namespace {

void put(std::ostream& os, double v)
{
    if (std::isfinite(v))
        os << v;
}

void write_file(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream out(p);
    if (!out)
        fail(ErrorKind::Io, "cannot write '" + p.string() + "'");
    out << text;
    if (!out)
        fail(ErrorKind::Io, "write to '" + p.string() + "' failed");
}

} // namespace

nlohmann::json to_json(const Report& r)
{
    nlohmann::json j;
    j["stage"] = r.stage;
    j["complete"] = r.complete;
    if (!r.error.empty())
        j["error"] = {{"kind", r.error_kind}, {"message", r.error}};
    j["summary"] = r.summary;
    nlohmann::json tables = nlohmann::json::object();
    for (const auto& t : r.tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json a = nlohmann::json::array();
            for (double v : row)
                a.push_back(std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr));
            rows.push_back(std::move(a));
        }
        tables[t.name] = {{"columns", t.columns},
                          {"rows", rows},
                          {"provenance", {{"module", t.module}, {"seed", t.seed}, {"budget", t.budget}}}};
    }
    j["tables"] = std::move(tables);
    return j;
}

std::string to_csv(const Table& t)
{
    std::ostringstream os;
    os.precision(17);
    for (const auto& c : t.columns)
        os << c << ',';
    os << "module,seed,budget\n";
    for (const auto& row : t.rows) {
        for (double v : row) {
            put(os, v);
            os << ',';
        }
        os << t.module << ',' << t.seed << ',' << t.budget << '\n';
    }
    return os.str();
}

std::string to_plotdata(const Table& t)
{
    std::ostringstream os;
    os.precision(17);
    os << "# " << t.name << " (" << t.module << ", seed " << t.seed << ", budget " << t.budget << ")\n# ";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? " " : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                os << ' ';
            if (std::isfinite(row[i]))
                os << row[i];
            else
                os << "nan";
        }
        os << '\n';
    }
    return os.str();
}

std::vector<std::string> emit_report(const Report& r, Format f, const std::string& dir)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        fail(ErrorKind::Io, "cannot create '" + dir + "': " + ec.message());
    std::vector<std::string> written;
    auto emit = [&](const std::string& name, const std::string& text) {
        const fs::path p = fs::path(dir) / name;
        write_file(p, text);
        written.push_back(p.string());
    };
    switch (f) {
    case Format::Json:
        emit("report.json", to_json(r).dump(2) + "\n");
        break;
    case Format::Csv:
        for (const auto& t : r.tables)
            emit(t.name + ".csv", to_csv(t));
        break;
    case Format::Plotdata:
        for (const auto& t : r.tables)
            if (t.series)
                emit(t.name + ".dat", to_plotdata(t));
        break;
    }
    return written;
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::GeneralPosition:
    case ErrorKind::RetryExhausted:
        return 2;
    case ErrorKind::NonConvergent:
    case ErrorKind::ZeroOnContour:
    case ErrorKind::SizeCap:
    case ErrorKind::DegreeCap:
    case ErrorKind::InsufficientPoints:
    case ErrorKind::CurveTooSmall:
        return 3;
    case ErrorKind::Schema:
    case ErrorKind::Io:
        return 4;
    default:
        return 1;
    }
}

int exit_code(const Report& r)
{
    if (r.complete)
        return 0;
    for (int k = 0; k <= static_cast<int>(ErrorKind::Io); ++k)
        if (r.error_kind == to_string(static_cast<ErrorKind>(k)))
            return exit_code(static_cast<ErrorKind>(k));
    return 1;
}

} // namespace nevlab::lab
