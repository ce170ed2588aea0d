#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "svcmig/bench.hpp"

using namespace svcmig;
using namespace svcmig::bench;

namespace {

Errc error_code(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected svcmig::Error");
    return Errc::Io;
}

std::string error_message(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(text);
    while (std::getline(in, cell, sep)) {
        out.push_back(cell);
    }
    if (sep == ',' && !text.empty() && text.back() == sep) {
        out.emplace_back();  // trailing empty cell
    }
    return out;
}

std::string drop_wall_time(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        auto cells = split(line, ',');
        cells.erase(cells.begin() + 9);
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += (i ? "," : "") + cells[i];
        }
        out += '\n';
    }
    return out;
}

ExperimentConfig small_compare(std::size_t instances, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.command = Command::Compare;
    cfg.betas = {0.5, 2.0};
    cfg.gammas = {0.9};
    cfg.instances = instances;
    cfg.seed = seed;
    return cfg;
}

std::filesystem::path temp_dir() {
    auto dir = std::filesystem::temp_directory_path() / "svcmig_test_bench";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("parse_config: solve command with negative bounds") {
    const auto cfg = parse_config({"solve", "--p", "0.3", "--q", "0.2", "-M", "-10", "-N", "10",
                                   "--beta", "0.5", "--gamma", "0.9"});
    CHECK(cfg.command == Command::Solve);
    CHECK(cfg.p == 0.3);
    CHECK(cfg.q == 0.2);
    CHECK(cfg.min_state == -10);
    CHECK(cfg.max_state == 10);
    CHECK(cfg.betas == std::vector<double>{0.5});
    CHECK(cfg.gammas == std::vector<double>{0.9});
}

TEST_CASE("parse_config: sweep with ranges and lists") {
    const auto cfg = parse_config({"sweep", "--betas", "0.1:0.1:0.5", "--gamma", "0.5,0.9,0.99",
                                   "--instances", "10", "--seed", "7", "--format", "json"});
    CHECK(cfg.command == Command::Sweep);
    REQUIRE(cfg.betas.size() == 5);
    CHECK(cfg.betas[0] == doctest::Approx(0.1));
    CHECK(cfg.betas[4] == doctest::Approx(0.5));
    CHECK(cfg.gammas == std::vector<double>{0.5, 0.9, 0.99});
    CHECK(cfg.instances == 10);
    CHECK(cfg.seed == 7);
    CHECK(cfg.format == OutputFormat::Json);
}

TEST_CASE("parse_config: usage errors name the flag") {
    const auto missing = [] {
        parse_config({"solve", "--q", "0.2", "--beta", "0.5", "--gamma", "0.9"});
    };
    CHECK(error_code(missing) == Errc::Usage);
    CHECK(error_message(missing).find("--p") != std::string::npos);

    CHECK(error_code([] { parse_config({"compare", "--betas", "1", "--solvers", ""}); }) ==
          Errc::Usage);
    CHECK(error_code([] { parse_config({"compare", "--betas", "1", "--solvers", "bogus"}); }) ==
          Errc::Usage);
    CHECK(error_code([] {
              parse_config({"solve", "--p", "0.7", "--q", "0.7", "--beta", "1", "--gamma", "0.9"});
          }) == Errc::Usage);
    CHECK(error_code([] { parse_config({"frobnicate"}); }) == Errc::Usage);
    CHECK(error_code([] { parse_config({"compare"}); }) == Errc::Usage);
}

TEST_CASE("parse_config: config files with flag override") {
    const auto dir = temp_dir();
    const auto kv = dir / "run.conf";
    std::ofstream(kv) << "# comment\nbetas=0.5,2\ngamma=0.5\ninstances=3\nM=-4\nN=4\n";
    auto cfg = parse_config({"compare", "--config", kv.string(), "--instances", "5"});
    CHECK(cfg.betas == std::vector<double>{0.5, 2.0});
    CHECK(cfg.gammas == std::vector<double>{0.5});
    CHECK(cfg.instances == 5);
    CHECK(cfg.min_state == -4);
    CHECK(cfg.max_state == 4);

    const auto js = dir / "run.json";
    std::ofstream(js) << R"({"betas": "1,10", "seed": 9, "N": 6})";
    cfg = parse_config({"compare", "--config=" + js.string()});
    CHECK(cfg.betas == std::vector<double>{1.0, 10.0});
    CHECK(cfg.seed == 9);
    CHECK(cfg.max_state == 6);
}

TEST_CASE("parse_number_list") {
    CHECK(parse_number_list("1,2.5") == std::vector<double>{1.0, 2.5});
    CHECK(parse_number_list("0:0.25:1").size() == 5);
    CHECK_THROWS_AS(parse_number_list("1,x"), Error);
}

TEST_CASE("solver names round-trip") {
    for (SolverKind k : {SolverKind::Threshold, SolverKind::ValueIteration, SolverKind::PolicyIteration,
                         SolverKind::NeverMigrate, SolverKind::AlwaysMigrate}) {
        CHECK(parse_solver(solver_name(k)) == k);
    }
    CHECK(parse_solver("vi") == SolverKind::ValueIteration);
    CHECK(parse_solver("pi") == SolverKind::PolicyIteration);
}

TEST_CASE("random_instance: uniform on the triangle") {
    RngStream rng(123);
    double sum_p = 0.0;
    double sum_q = 0.0;
    constexpr int n = 100000;
    for (int i = 0; i < n; ++i) {
        const auto [p, q] = random_instance("uniform-simplex", rng);
        CHECK(p >= 0.0);
        CHECK(q >= 0.0);
        CHECK(p + q <= 1.0);
        sum_p += p;
        sum_q += q;
    }
    CHECK(std::abs(sum_p / n - 1.0 / 3.0) <= 0.01);
    CHECK(std::abs(sum_q / n - 1.0 / 3.0) <= 0.01);

    RngStream a(5);
    RngStream b(5);
    CHECK(random_instance("uniform-simplex", a) == random_instance("uniform-simplex", b));
    CHECK(error_code([&] { random_instance("gaussian", a); }) == Errc::UnknownRule);
}

TEST_CASE("run_compare produces one consistent record per instance") {
    ExperimentConfig cfg = small_compare(1, 0);
    cfg.betas = {1.0};
    const auto records = run_compare(cfg);
    REQUIRE(records.size() == 1);
    const auto& rec = records.front();
    CHECK(rec.outcomes.size() == 5);
    const auto* th = rec.find(SolverKind::Threshold);
    const auto* pi = rec.find(SolverKind::PolicyIteration);
    REQUIRE(th);
    REQUIRE(pi);
    CHECK(std::abs(th->v_s0 - pi->v_s0) <= 1e-9);
    CHECK(th->k1.has_value());
    CHECK_FALSE(pi->k1.has_value());

    cfg.solvers.clear();
    CHECK(error_code([&] { run_compare(cfg); }) == Errc::Usage);
}

TEST_CASE("CSV output: header, shape and round trip") {
    ExperimentConfig cfg = small_compare(1, 3);
    cfg.betas = {1.0};
    cfg.solvers = {SolverKind::Threshold};
    const auto records = run_compare(cfg);
    std::ostringstream out;
    emit_results(records, OutputFormat::Csv, out);
    const auto lines = split(out.str(), '\n');
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == kCsvHeader);
    const auto cells = split(lines[1], ',');
    REQUIRE(cells.size() == 12);
    CHECK(cells[5] == "threshold");
    CHECK(std::abs(std::stod(cells[6]) - records[0].outcomes[0].v_s0) <=
          1e-8 * std::max(1.0, records[0].outcomes[0].v_s0));
    CHECK(std::stoi(cells[7]) == *records[0].outcomes[0].k1);
    CHECK(std::stoull(cells[4]) == 3);
}

TEST_CASE("CSV output is reproducible apart from timings") {
    const ExperimentConfig cfg = small_compare(5, 11);
    std::ostringstream a;
    std::ostringstream b;
    emit_results(run_compare(cfg), OutputFormat::Csv, a);
    emit_results(run_compare(cfg), OutputFormat::Csv, b);
    CHECK(drop_wall_time(a.str()) == drop_wall_time(b.str()));
    CHECK(split(a.str(), '\n').size() == 1 + 5 * 2 * 5);
}

TEST_CASE("JSON output fields") {
    ExperimentConfig cfg = small_compare(2, 0);
    cfg.solvers = {SolverKind::Threshold, SolverKind::ValueIteration};
    std::ostringstream out;
    emit_results(run_compare(cfg), OutputFormat::Json, out);
    const auto doc = nlohmann::json::parse(out.str());
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 8);
    for (const char* key : {"beta", "gamma", "p", "q", "seed", "solver", "v_s0", "k1", "k2",
                            "wall_time_s", "iterations", "linear_solves"}) {
        CHECK(doc[0].contains(key));
    }
    CHECK(doc[1]["solver"] == "value_iteration");
    CHECK(doc[1]["k1"].is_null());
}

TEST_CASE("output paths") {
    ExperimentConfig cfg = small_compare(1, 0);
    cfg.betas = {1.0};
    const auto records = run_compare(cfg);
    CHECK(error_code([&] {
              emit_results(records, OutputFormat::Csv, std::string("/nonexistent/dir/out.csv"));
          }) == Errc::Io);

    const auto dir = temp_dir();
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    CHECK(resolve_output_path("x.csv") == (dir / "x.csv").string());
    CHECK(resolve_output_path("/abs/x.csv") == "/abs/x.csv");
    emit_results(records, OutputFormat::Csv, resolve_output_path("records.csv"));
    CHECK(std::filesystem::exists(dir / "records.csv"));
    ::unsetenv(kOutputDirEnv);
    CHECK(resolve_output_path("x.csv") == "x.csv");
}

TEST_CASE("beta sweep summary reflects the asymptotic regimes") {
    ExperimentConfig cfg;
    cfg.command = Command::Sweep;
    cfg.betas = {0.01, 100.0};
    cfg.gammas = {0.9};
    cfg.instances = 50;
    const auto result = run_beta_sweep(cfg);
    CHECK(result.records.size() == 100);
    const auto mean = [&](double beta, SolverKind kind) {
        for (const auto& row : result.summary) {
            if (row.beta == beta && row.solver == kind) {
                return row.mean_v_s0;
            }
        }
        FAIL("missing summary row");
        return 0.0;
    };
    const double cheap = mean(0.01, SolverKind::Threshold);
    const double dear = mean(100.0, SolverKind::Threshold);
    CHECK(std::abs(mean(0.01, SolverKind::NeverMigrate) - cheap) <= 0.01 * cheap);
    CHECK(std::abs(mean(100.0, SolverKind::AlwaysMigrate) - dear) <= 0.01 * dear);
    for (const auto& row : result.summary) {
        if (row.solver == SolverKind::Threshold) {
            CHECK(row.time_ratio_vs_threshold == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("oracle check passes its exact comparisons") {
    ExperimentConfig cfg;
    cfg.command = Command::OracleCheck;
    cfg.betas = {0.5, 2.0};
    cfg.gammas = {0.5, 0.9};
    cfg.instances = 10;
    const auto report = run_oracle_check(cfg);
    CHECK(report.instances == 40);
    CHECK(report.threshold_matches_exhaustive == report.instances);
    CHECK(report.policy_iteration_matches == report.instances);
    CHECK(report.value_iteration_within_epsilon == report.instances);
    CHECK(report.policy_is_threshold == report.instances);
    CHECK(report.iteration_bound_held == report.instances);
    CHECK(report.extended_action_instances == 10);
}
