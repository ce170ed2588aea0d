#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "svcmig/bench.hpp"

namespace svcmig::bench {

namespace {

std::string trim(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

double parse_double(std::string_view text) {
    const std::string s = trim(text);
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used == s.size()) {
            return x;
        }
    } catch (const std::exception&) {
    }
    throw Error(Errc::Usage, "not a number: '" + s + "'");
}

std::string flag_for_key(const std::string& key) {
    return key.size() == 1 ? "-" + key : "--" + key;
}

// Flattens a config file into command-line tokens.
std::vector<std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(Errc::Usage, "--config: cannot open '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::vector<std::string> tokens;
    if (trim(text).starts_with('{')) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw Error(Errc::Usage, "--config: invalid JSON in '" + path + "': " + e.what());
        }
        if (!doc.is_object()) {
            throw Error(Errc::Usage, "--config: JSON config must be a flat object");
        }
        for (const auto& [key, value] : doc.items()) {
            std::string rendered;
            if (value.is_string()) {
                rendered = value.get<std::string>();
            } else if (value.is_array()) {
                for (const auto& item : value) {
                    if (!rendered.empty()) {
                        rendered += ',';
                    }
                    rendered += item.is_string() ? item.get<std::string>() : item.dump();
                }
            } else if (value.is_primitive()) {
                rendered = value.dump();
            } else {
                throw Error(Errc::Usage, "--config: nested value for key '" + key + "'");
            }
            tokens.push_back(flag_for_key(key));
            tokens.push_back(rendered);
        }
        return tokens;
    }

    std::istringstream lines(text);
    std::string line;
    int number = 0;
    while (std::getline(lines, line)) {
        ++number;
        const std::string content = trim(line.substr(0, line.find('#')));
        if (content.empty()) {
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) {
            throw Error(Errc::Usage, "--config: line " + std::to_string(number) +
                                         " is not key=value: '" + content + "'");
        }
        tokens.push_back(flag_for_key(trim(content.substr(0, eq))));
        tokens.push_back(trim(content.substr(eq + 1)));
    }
    return tokens;
}

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "json") {
        return OutputFormat::Json;
    }
    throw Error(Errc::Usage, "--format: expected csv or json, got '" + text + "'");
}

}  // namespace

std::vector<double> parse_number_list(std::string_view text) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        if (trim(item).empty()) {
            continue;
        }
        if (item.find(':') == std::string::npos) {
            out.push_back(parse_double(item));
            continue;
        }
        std::vector<double> parts;
        std::string piece;
        std::stringstream range(item);
        while (std::getline(range, piece, ':')) {
            parts.push_back(parse_double(piece));
        }
        if (parts.size() != 3 || !(parts[1] > 0.0) || parts[2] < parts[0]) {
            throw Error(Errc::Usage, "bad range '" + trim(item) + "', expected start:step:stop");
        }
        // Index-based so that rounding does not accumulate or drop the endpoint.
        const auto count =
            static_cast<long>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9)) + 1;
        for (long i = 0; i < count; ++i) {
            out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
        }
    }
    if (out.empty()) {
        throw Error(Errc::Usage, "empty number list '" + std::string(text) + "'");
    }
    return out;
}

ExperimentConfig parse_config(const std::vector<std::string>& raw_args) {
    std::vector<std::string> args;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
        const std::string& a = raw_args[i];
        std::string path;
        if (a == "--config") {
            if (i + 1 == raw_args.size()) {
                throw Error(Errc::Usage, "--config requires a file argument");
            }
            path = raw_args[++i];
        } else if (a.starts_with("--config=")) {
            path = a.substr(9);
        } else {
            continue;
        }
        // File tokens go first so that later command-line flags win.
        const auto file_tokens = load_config_file(path);
        args.insert(args.begin(), file_tokens.begin(), file_tokens.end());
    }
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
        if (raw_args[i] == "--config") {
            ++i;
        } else if (!raw_args[i].starts_with("--config=")) {
            args.push_back(raw_args[i]);
        }
    }

    ExperimentConfig cfg;
    CLI::App app{"Threshold-policy solver and benchmarks for the service-migration MDP",
                 "svcmig_bench"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    app.fallthrough();

    std::string p_text;
    std::string q_text;
    std::string gamma_text;
    std::string beta_text;
    std::string solvers_text;
    std::string format_text = "csv";
    std::string config_unused;
    std::string pi_start = "always";

    app.add_option("--config", config_unused, "key=value or JSON config file; flags override it");
    app.add_option("--p", p_text, "probability the offset increases by 1 per slot");
    app.add_option("--q", q_text, "probability the offset decreases by 1 per slot");
    app.add_option("-M", cfg.min_state, "most negative offset (forced migration)");
    app.add_option("-N", cfg.max_state, "most positive offset (forced migration)");
    app.add_option("--gamma", gamma_text, "discount factor(s), e.g. 0.5,0.9,0.99");
    app.add_option("--beta,--betas", beta_text, "transmission cost(s): list or start:step:stop");
    app.add_option("--epsilon", cfg.epsilon, "value-iteration error bound");
    app.add_option("--instances", cfg.instances, "random instances per (gamma, beta)");
    app.add_option("--seed", cfg.seed, "master seed");
    app.add_option("--rule", cfg.rule, "random (p, q) rule");
    auto* solvers_opt = app.add_option("--solvers", solvers_text, "threshold,vi,pi,never,always");
    app.add_option("--s0", cfg.s0, "reported start state");
    app.add_option("--pi-start", pi_start, "policy iteration start: always or never");
    app.add_option("--format", format_text, "csv or json");
    app.add_option("--out", cfg.output, "results file (default: standard output)");
    app.add_option("--summary", cfg.summary_output, "sweep summary file (default: standard error)");
    app.add_option("--policy", cfg.policy, "simulate: never, always, threshold:K1,K2 or optimal");
    app.add_option("--runs", cfg.runs, "simulate: Monte-Carlo runs");
    app.add_option("--tol", cfg.truncation_tol, "simulate: horizon truncation tolerance");

    auto* solve = app.add_subcommand("solve", "solve one instance and print thresholds and values");
    auto* compare = app.add_subcommand("compare", "compare solvers on random instances");
    auto* sweep = app.add_subcommand("sweep", "beta sweep with per-beta summary");
    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo check of a policy's value");
    auto* oracle = app.add_subcommand("oracle-check", "run the brute-force oracle checks");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        std::string help = app.help();
        for (auto* sub : {solve, compare, sweep, simulate, oracle}) {
            if (sub->parsed()) {
                help = sub->help();
            }
        }
        cfg.help = help;
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw Error(Errc::Usage, e.what());
    }

    if (solve->parsed()) {
        cfg.command = Command::Solve;
    } else if (compare->parsed()) {
        cfg.command = Command::Compare;
    } else if (sweep->parsed()) {
        cfg.command = Command::Sweep;
    } else if (simulate->parsed()) {
        cfg.command = Command::Simulate;
    } else {
        cfg.command = Command::OracleCheck;
    }

    const bool single_instance = cfg.command == Command::Solve || cfg.command == Command::Simulate;
    auto require = [&](const char* flag, const std::string& value) {
        if (value.empty()) {
            throw Error(Errc::Usage, std::string(flag) + " is required");
        }
    };
    if (single_instance) {
        require("--p", p_text);
        require("--q", q_text);
        require("--beta", beta_text);
        require("--gamma", gamma_text);
        cfg.p = parse_double(p_text);
        cfg.q = parse_double(q_text);
    } else if (cfg.command == Command::OracleCheck) {
        if (beta_text.empty()) {
            beta_text = "0.1,0.5,1,2,10";
        }
        if (gamma_text.empty()) {
            gamma_text = "0.5,0.9,0.99";
        }
    } else {
        require("--betas", beta_text);
    }
    if (!gamma_text.empty()) {
        cfg.gammas = parse_number_list(gamma_text);
    }
    cfg.betas = parse_number_list(beta_text);
    if (single_instance && (cfg.betas.size() != 1 || cfg.gammas.size() != 1)) {
        throw Error(Errc::Usage, "--beta and --gamma take a single value for this command");
    }

    if (solvers_opt->count() > 0) {
        cfg.solvers.clear();
        std::stringstream ss(solvers_text);
        std::string name;
        while (std::getline(ss, name, ',')) {
            if (!trim(name).empty()) {
                cfg.solvers.push_back(parse_solver(trim(name)));
            }
        }
        if (cfg.solvers.empty()) {
            throw Error(Errc::Usage, "--solvers: empty solver selection");
        }
    }
    cfg.format = parse_format(format_text);
    if (pi_start != "always" && pi_start != "never") {
        throw Error(Errc::Usage, "--pi-start: expected always or never, got '" + pi_start + "'");
    }
    cfg.pi_start_never = pi_start == "never";

    if (cfg.instances < 1) {
        throw Error(Errc::Usage, "--instances must be at least 1");
    }
    if (!(cfg.epsilon > 0.0)) {
        throw Error(Errc::Usage, "--epsilon must be positive");
    }
    if (cfg.s0 < cfg.min_state || cfg.s0 > cfg.max_state) {
        throw Error(Errc::Usage, "--s0 must lie in [M, N]");
    }
    // Surface invalid model parameters as usage errors, naming the bad value.
    try {
        for (double gamma : cfg.gammas) {
            for (double beta : cfg.betas) {
                MigrationMdp(cfg.p.value_or(0.0), cfg.q.value_or(0.0), cfg.min_state, cfg.max_state,
                             beta, gamma);
            }
        }
    } catch (const Error& e) {
        throw Error(Errc::Usage, e.what());
    }
    return cfg;
}

SolverKind parse_solver(std::string_view name) {
    if (name == "threshold") return SolverKind::Threshold;
    if (name == "vi" || name == "value_iteration") return SolverKind::ValueIteration;
    if (name == "pi" || name == "policy_iteration") return SolverKind::PolicyIteration;
    if (name == "never" || name == "never_migrate") return SolverKind::NeverMigrate;
    if (name == "always" || name == "always_migrate") return SolverKind::AlwaysMigrate;
    throw Error(Errc::Usage, "--solvers: unknown solver '" + std::string(name) + "'");
}

std::string_view solver_name(SolverKind kind) noexcept {
    switch (kind) {
        case SolverKind::Threshold: return "threshold";
        case SolverKind::ValueIteration: return "value_iteration";
        case SolverKind::PolicyIteration: return "policy_iteration";
        case SolverKind::NeverMigrate: return "never_migrate";
        case SolverKind::AlwaysMigrate: return "always_migrate";
    }
    return "unknown";
}

}  // namespace svcmig::bench
