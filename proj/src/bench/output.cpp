#include <fmt/format.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "svcmig/bench.hpp"

namespace svcmig::bench {

namespace {

// Number as printed, so JSON and CSV carry identical values.
double printed(double x) { return std::stod(format_double(x)); }

nlohmann::json optional_int(const std::optional<int>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.9g}", x); }

std::string resolve_output_path(const std::string& path) {
    if (path.empty()) {
        return path;
    }
    const std::filesystem::path p(path);
    const char* dir = std::getenv(kOutputDirEnv);
    if (p.is_relative() && dir != nullptr && *dir != '\0') {
        return (std::filesystem::path(dir) / p).string();
    }
    return path;
}

void emit_results(const std::vector<SweepRecord>& records, OutputFormat format, std::ostream& out) {
    if (records.empty()) {
        throw Error(Errc::Usage, "no records to emit");
    }
    if (format == OutputFormat::Csv) {
        out << kCsvHeader << '\n';
        for (const auto& rec : records) {
            for (const auto& o : rec.outcomes) {
                out << format_double(rec.beta) << ',' << format_double(rec.gamma) << ','
                    << format_double(rec.p) << ',' << format_double(rec.q) << ',' << rec.seed << ','
                    << solver_name(o.solver) << ',' << format_double(o.v_s0) << ','
                    << (o.k1 ? std::to_string(*o.k1) : "") << ','
                    << (o.k2 ? std::to_string(*o.k2) : "") << ',' << format_double(o.wall_time_s)
                    << ',' << o.iterations << ',' << o.linear_solves << '\n';
            }
        }
        return;
    }
    auto rows = nlohmann::json::array();
    for (const auto& rec : records) {
        for (const auto& o : rec.outcomes) {
            rows.push_back({{"beta", printed(rec.beta)},
                            {"gamma", printed(rec.gamma)},
                            {"p", printed(rec.p)},
                            {"q", printed(rec.q)},
                            {"seed", rec.seed},
                            {"solver", std::string(solver_name(o.solver))},
                            {"v_s0", printed(o.v_s0)},
                            {"k1", optional_int(o.k1)},
                            {"k2", optional_int(o.k2)},
                            {"wall_time_s", printed(o.wall_time_s)},
                            {"iterations", o.iterations},
                            {"linear_solves", o.linear_solves}});
        }
    }
    out << rows.dump(2) << '\n';
}

void emit_results(const std::vector<SweepRecord>& records, OutputFormat format,
                  const std::string& path) {
    if (path.empty()) {
        emit_results(records, format, std::cout);
        return;
    }
    const std::string resolved = resolve_output_path(path);
    std::ofstream out(resolved, std::ios::binary);
    if (!out) {
        throw Error(Errc::Io, "cannot open '" + resolved + "' for writing");
    }
    emit_results(records, format, out);
    if (!out.flush()) {
        throw Error(Errc::Io, "write failed for '" + resolved + "'");
    }
}

void emit_summary(const std::vector<SummaryRow>& rows, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::Csv) {
        out << "gamma,beta,solver,mean_v_s0,mean_wall_time_s,mean_iterations,mean_linear_solves,"
               "time_ratio_vs_threshold\n";
        for (const auto& r : rows) {
            out << format_double(r.gamma) << ',' << format_double(r.beta) << ','
                << solver_name(r.solver) << ',' << format_double(r.mean_v_s0) << ','
                << format_double(r.mean_wall_time_s) << ',' << format_double(r.mean_iterations)
                << ',' << format_double(r.mean_linear_solves) << ','
                << format_double(r.time_ratio_vs_threshold) << '\n';
        }
        return;
    }
    auto doc = nlohmann::json::array();
    for (const auto& r : rows) {
        doc.push_back({{"gamma", printed(r.gamma)},
                       {"beta", printed(r.beta)},
                       {"solver", std::string(solver_name(r.solver))},
                       {"mean_v_s0", printed(r.mean_v_s0)},
                       {"mean_wall_time_s", printed(r.mean_wall_time_s)},
                       {"mean_iterations", printed(r.mean_iterations)},
                       {"mean_linear_solves", printed(r.mean_linear_solves)},
                       {"time_ratio_vs_threshold", printed(r.time_ratio_vs_threshold)}});
    }
    out << doc.dump(2) << '\n';
}

}  // namespace svcmig::bench
