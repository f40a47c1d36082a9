// boredom-sched: command-line front end for the consumption-scheduling library.
//
// Exit codes: 0 success, 1 domain/validation error, 2 I/O, schema or usage
// error. Set BOREDOM_SCHED_LOG=info|debug for progress on stderr.

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bsched/equilibrium.hpp"
#include "bsched/errors.hpp"
#include "bsched/estimation.hpp"
#include "bsched/hardness.hpp"
#include "bsched/io.hpp"
#include "bsched/periodic.hpp"
#include "bsched/simulate.hpp"
#include "bsched/social.hpp"
#include "bsched/version.hpp"

namespace {

using nlohmann::json;
using namespace bsched;

int log_verbosity() {
    const char* env = std::getenv("BOREDOM_SCHED_LOG");
    if (env == nullptr) {
        return 0;
    }
    const std::string level(env);
    if (level == "debug") {
        return 2;
    }
    if (level == "info") {
        return 1;
    }
    return 0;
}

void log_info(const std::string& message) {
    if (log_verbosity() >= 1) {
        std::cerr << "[info] " << message << "\n";
    }
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(value));
    return buffer;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buffer;
}

struct Meta {
    std::string subcommand;
    std::string config; // canonical flag=value list; reruns reproduce the run
    bool with_timestamp = true;

    json to_json() const {
        json meta;
        meta["tool"] = "boredom-sched";
        meta["version"] = kVersion;
        meta["subcommand"] = subcommand;
        meta["config"] = config;
        meta["config_hash"] = hex64(fnv1a(subcommand + " " + config));
        if (with_timestamp) {
            meta["timestamp"] = timestamp_now();
        }
        return meta;
    }

    std::string to_csv_header() const {
        std::ostringstream out;
        out << "# tool=boredom-sched version=" << kVersion << "\n";
        out << "# subcommand=" << subcommand << "\n";
        out << "# config=" << config << "\n";
        out << "# config_hash=" << hex64(fnv1a(subcommand + " " + config)) << "\n";
        if (with_timestamp) {
            out << "# timestamp=" << timestamp_now() << "\n";
        }
        return out.str();
    }
};

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        if (text.empty() || text.back() != '\n') {
            std::cout << '\n';
        }
    } else {
        write_file(out_path, text);
        log_info("wrote " + out_path);
    }
}

Policy parse_policy(const std::string& name) {
    if (name == "greedy") {
        return Policy::greedy();
    }
    if (name == "double-greedy") {
        return Policy::double_greedy();
    }
    if (name == "baseline") {
        return Policy::baseline();
    }
    if (name.rfind("periodic:", 0) == 0) {
        const std::string path = name.substr(9);
        return Policy::periodic(parse_schedule_json(read_file(path)));
    }
    throw domain_error("unknown policy '" + name + "' (greedy|double-greedy|baseline|periodic:<file>)");
}

Convention parse_convention(const std::string& name) {
    if (name == "definition") {
        return Convention::definition;
    }
    if (name == "lemma") {
        return Convention::lemma;
    }
    throw domain_error("unknown convention '" + name + "' (definition|lemma)");
}

json schedule_json(const PeriodicSchedule& schedule) {
    json out;
    out["period"] = schedule.period();
    out["choices"] = schedule.choices;
    return out;
}

// ---- subcommand bodies ----------------------------------------------------

struct CommonArgs {
    std::string out;
    bool no_timestamp = false;
    unsigned seed = kSpectralSeed;
};

int run_simulate(const std::string& items_path, const std::string& policy_name, long horizon,
                 const std::string& convention_name, const std::string& trace_out,
                 const std::string& memory_out, const CommonArgs& common) {
    const ItemList items = parse_items_json(read_file(items_path));
    log_info("loaded " + std::to_string(items.size()) + " items");
    const Policy policy = parse_policy(policy_name);

    SimulateOptions options;
    options.convention = parse_convention(convention_name);
    options.record_steps = !trace_out.empty();
    options.record_memory = !memory_out.empty();
    const SimulationTrace trace = simulate(items, policy, horizon, options);

    Meta meta{"simulate",
              "items=" + items_path + " policy=" + policy_name + " horizon=" + std::to_string(horizon) +
                  " convention=" + convention_name,
              !common.no_timestamp};

    json out;
    out["meta"] = meta.to_json();
    out["policy"] = policy_name;
    out["convention"] = convention_name;
    out["horizon"] = horizon;
    out["average_utility"] = trace.average_utility;
    out["idle_frequency"] = trace.idle_frequency;
    json rows = json::array();
    for (const TraceRow& row : trace_statistics(trace, items)) {
        rows.push_back({{"label", row.label}, {"avg_utility", row.avg_utility}, {"frequency", row.frequency}});
    }
    out["items"] = rows;
    emit(common.out, out.dump(2));

    if (!trace_out.empty()) {
        std::ostringstream csv;
        csv << meta.to_csv_header() << "t,choice,utility,max_utility\n";
        for (std::size_t t = 0; t < trace.choices.size(); ++t) {
            csv << t << ',' << trace.choices[t] << ',' << format_double(trace.realized_utilities[t]) << ','
                << format_double(trace.max_utilities[t]) << '\n';
        }
        write_file(trace_out, csv.str());
        log_info("wrote " + trace_out);
    }
    if (!memory_out.empty()) {
        std::ostringstream csv;
        csv << meta.to_csv_header() << "t";
        for (std::size_t i = 0; i < items.size(); ++i) {
            csv << ",M_" << i;
        }
        csv << '\n';
        for (std::size_t t = 0; t < trace.memory_rows.size(); ++t) {
            csv << t;
            for (const double m : trace.memory_rows[t]) {
                csv << ',' << format_double(m);
            }
            csv << '\n';
        }
        write_file(memory_out, csv.str());
        log_info("wrote " + memory_out);
    }
    return 0;
}

int run_equilibrium(const std::string& items_path, int multiplier, const CommonArgs& common) {
    const ItemList items = parse_items_json(read_file(items_path));
    const EquilibriumSolution solution = solve_level_system(items, multiplier);
    Meta meta{"equilibrium", "items=" + items_path + " multiplier=" + std::to_string(multiplier),
              !common.no_timestamp};
    json out;
    out["meta"] = meta.to_json();
    out["level"] = solution.level;
    out["multiplier"] = solution.multiplier;
    out["frequencies"] = solution.frequencies;
    emit(common.out, out.dump(2));
    return 0;
}

int run_optimum(const std::string& items_path, const CommonArgs& common) {
    const ItemList items = parse_items_json(read_file(items_path));
    const EquilibriumSolution solution = solve_continuous_optimum(items);
    Meta meta{"optimum", "items=" + items_path, !common.no_timestamp};
    json out;
    out["meta"] = meta.to_json();
    out["level"] = solution.level;
    out["frequencies"] = solution.frequencies;
    out["objective"] = *solution.objective;
    out["upper_bound"] = opt_upper_bound(items);
    emit(common.out, out.dump(2));
    return 0;
}

int run_bruteforce(const std::string& items_path, int period, bool allow_idle, const CommonArgs& common) {
    const ItemList items = parse_items_json(read_file(items_path));
    const BruteForceResult best = brute_force_optimal(items, period, allow_idle);
    Meta meta{"bruteforce",
              "items=" + items_path + " period=" + std::to_string(period) +
                  " allow_idle=" + (allow_idle ? "1" : "0"),
              !common.no_timestamp};
    json out;
    out["meta"] = meta.to_json();
    out["schedule"] = schedule_json(best.schedule);
    out["total"] = best.total;
    out["average"] = best.average;
    emit(common.out, out.dump(2));
    return 0;
}

int run_hardness_gen(const std::vector<std::int64_t>& periods, const CommonArgs& common) {
    const ReducedInstance reduced = reduce_rap({periods});
    if (reduced.degenerate) {
        std::cerr << "warning: cycle length 1 forces decay rate 1, outside the usual (0,1) range\n";
    }
    std::string period_list;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        period_list += (i > 0 ? "," : "") + std::to_string(periods[i]);
    }
    Meta meta{"hardness-gen", "periods=" + period_list, !common.no_timestamp};
    json out;
    out["meta"] = meta.to_json();
    out["periods"] = periods;
    out["cycle_length"] = reduced.cycle_length;
    out["threshold"] = reduced.threshold;
    out["degenerate"] = reduced.degenerate;
    out["items"] = json::parse(items_to_json(reduced.items));
    emit(common.out, out.dump(2));
    return 0;
}

int run_rap_check(const std::vector<std::int64_t>& periods, const CommonArgs& common) {
    const RapFeasibility result = rap_feasible({periods});
    std::string period_list;
    for (std::size_t i = 0; i < periods.size(); ++i) {
        period_list += (i > 0 ? "," : "") + std::to_string(periods[i]);
    }
    Meta meta{"rap-check", "periods=" + period_list, !common.no_timestamp};
    json out;
    out["meta"] = meta.to_json();
    out["feasible"] = result.feasible;
    out["witness"] = result.witness ? schedule_json(*result.witness) : json{};
    emit(common.out, out.dump(2));
    return 0;
}

int run_society(const std::string& society_path, const std::string& policy_name, long horizon,
                const CommonArgs& common) {
    const Society society = parse_society_json(read_file(society_path));
    SocietySimOptions options;
    options.horizon = horizon;
    options.policy = parse_policy(policy_name);
    options.seed = common.seed;
    const SocietyTrace trace = simulate_society(society, options);

    Meta meta{"society",
              "society=" + society_path + " policy=" + policy_name + " horizon=" + std::to_string(horizon) +
                  " seed=" + std::to_string(common.seed),
              !common.no_timestamp};
    std::ostringstream csv;
    csv << meta.to_csv_header();
    csv << "# spectral_gap=" << format_double(trace.spectral.gap)
        << " second_magnitude=" << format_double(trace.spectral.second_magnitude)
        << " probe_constant=" << format_double(trace.spectral.probe_constant) << "\n";
    const int people = society.influence.n;
    csv << "t,item,W,W_over_n,u_reduced,gap\n";
    for (long t = 0; t < trace.horizon; ++t) {
        for (std::size_t i = 0; i < society.items.size(); ++i) {
            const double welfare = trace.welfare[i][static_cast<std::size_t>(t)];
            csv << t << ',' << i << ',' << format_double(welfare) << ','
                << format_double(welfare / people) << ','
                << format_double(trace.reduced_utility[i][static_cast<std::size_t>(t)]) << ','
                << format_double(trace.gap[i][static_cast<std::size_t>(t)]) << '\n';
        }
    }
    emit(common.out, csv.str());
    return 0;
}

int run_reduce(const std::string& society_path, const CommonArgs& common) {
    const Society society = parse_society_json(read_file(society_path));
    const SpectralData spectral = analyze_influence(society.influence, 1e-8, common.seed);
    bool negative = false;
    const ItemList reduced = reduce_society(society, spectral, &negative);
    if (negative) {
        std::cerr << "warning: social vector has negative entries; reduced coefficients may flip sign\n";
    }
    Meta meta{"reduce", "society=" + society_path + " seed=" + std::to_string(common.seed),
              !common.no_timestamp};
    json out;
    out["meta"] = meta.to_json();
    out["spectral_gap"] = spectral.gap;
    out["social_vector"] = spectral.social_vector;
    out["items"] = json::parse(items_to_json(reduced));
    emit(common.out, out.dump(2));
    return 0;
}

int run_fit(const std::string& trace_path, const std::string& mode_name, const CommonArgs& common) {
    FloorMode mode;
    if (mode_name == "final") {
        mode = FloorMode::final_count;
    } else if (mode_name == "min") {
        mode = FloorMode::min_count;
    } else {
        throw domain_error("unknown floor mode '" + mode_name + "' (final|min)");
    }
    const std::vector<PopularityTrace> traces = parse_traces_csv(read_file(trace_path));
    Meta meta{"fit", "trace=" + trace_path + " mode=" + mode_name, !common.no_timestamp};
    std::ostringstream csv;
    csv << meta.to_csv_header() << "label,v,alpha,r,residual,points_used\n";
    for (const PopularityTrace& trace : traces) {
        const FitResult fit = fit_parameters(trace, mode);
        csv << fit.label << ',' << format_double(fit.v) << ',' << format_double(fit.alpha) << ','
            << format_double(fit.r) << ',' << format_double(fit.residual) << ',' << fit.points_used << '\n';
    }
    emit(common.out, csv.str());
    return 0;
}

int run_forecast(const std::string& trace_path, long horizon, const std::string& mode_name,
                 const CommonArgs& common) {
    FloorMode mode = mode_name == "min" ? FloorMode::min_count : FloorMode::final_count;
    const std::vector<PopularityTrace> traces = parse_traces_csv(read_file(trace_path));
    Meta meta{"forecast",
              "trace=" + trace_path + " horizon=" + std::to_string(horizon) + " mode=" + mode_name,
              !common.no_timestamp};
    std::ostringstream csv;
    csv << meta.to_csv_header() << "label,t,count\n";
    for (const PopularityTrace& trace : traces) {
        const FitResult fit = fit_parameters(trace, mode);
        const std::vector<double> counts = forecast(fit, static_cast<int>(horizon));
        for (std::size_t t = 0; t < counts.size(); ++t) {
            csv << fit.label << ',' << t << ',' << format_double(counts[t]) << '\n';
        }
    }
    emit(common.out, csv.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"boredom-driven consumption scheduling toolkit"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    CommonArgs common;
    std::string items_path;
    std::string society_path;
    std::string trace_path;
    std::string policy_name = "greedy";
    std::string convention_name = "definition";
    std::string mode_name = "final";
    std::string trace_out;
    std::string memory_out;
    long horizon = 100000;
    int multiplier = 1;
    int period = 1;
    bool allow_idle = false;
    std::vector<std::int64_t> periods;

    const auto add_common = [&common](CLI::App* cmd) {
        cmd->add_option("--out", common.out, "output path (default: stdout)");
        cmd->add_flag("--no-timestamp", common.no_timestamp, "omit the timestamp from metadata");
        cmd->add_option("--seed", common.seed, "seed for spectral iteration starts");
    };

    CLI::App* simulate_cmd = app.add_subcommand("simulate", "run a policy over a horizon");
    simulate_cmd->add_option("--items", items_path, "items JSON")->required();
    simulate_cmd->add_option("--policy", policy_name, "greedy|double-greedy|baseline|periodic:<file>");
    simulate_cmd->add_option("--horizon", horizon, "steps to simulate");
    simulate_cmd->add_option("--convention", convention_name, "definition|lemma");
    simulate_cmd->add_option("--trace-out", trace_out, "per-step CSV (t,choice,utility,max_utility)");
    simulate_cmd->add_option("--memory-out", memory_out, "per-step memory CSV (t,M_0..M_n)");
    add_common(simulate_cmd);

    CLI::App* equilibrium_cmd = app.add_subcommand("equilibrium", "water-filling level and shares");
    equilibrium_cmd->add_option("--items", items_path, "items JSON")->required();
    equilibrium_cmd->add_option("--multiplier", multiplier, "1 (plain) or 2 (doubled)");
    add_common(equilibrium_cmd);

    CLI::App* optimum_cmd = app.add_subcommand("optimum", "continuous frequency optimum");
    optimum_cmd->add_option("--items", items_path, "items JSON")->required();
    add_common(optimum_cmd);

    CLI::App* bruteforce_cmd = app.add_subcommand("bruteforce", "exhaustive best periodic schedule");
    bruteforce_cmd->add_option("--items", items_path, "items JSON")->required();
    bruteforce_cmd->add_option("--period", period, "cycle length")->required();
    bruteforce_cmd->add_flag("--allow-idle", allow_idle, "allow empty slots");
    add_common(bruteforce_cmd);

    CLI::App* hardness_cmd = app.add_subcommand("hardness-gen", "emit the item instance a period list maps to");
    hardness_cmd->add_option("--periods", periods, "comma-separated positive integers")
        ->required()
        ->delimiter(',');
    add_common(hardness_cmd);

    CLI::App* rap_cmd = app.add_subcommand("rap-check", "regular-assignment feasibility and witness");
    rap_cmd->add_option("--periods", periods, "comma-separated positive integers")
        ->required()
        ->delimiter(',');
    add_common(rap_cmd);

    CLI::App* society_cmd = app.add_subcommand("society", "simulate influence-coupled consumption");
    society_cmd->add_option("--society", society_path, "society JSON")->required();
    society_cmd->add_option("--policy", policy_name, "policy applied to the reduced individual");
    society_cmd->add_option("--horizon", horizon, "steps to simulate");
    add_common(society_cmd);

    CLI::App* reduce_cmd = app.add_subcommand("reduce", "collapse a society to a single individual");
    reduce_cmd->add_option("--society", society_path, "society JSON")->required();
    add_common(reduce_cmd);

    CLI::App* fit_cmd = app.add_subcommand("fit", "recover (v, alpha, r) from popularity counts");
    fit_cmd->add_option("--trace", trace_path, "counts CSV: 'label,t,count' or two columns")->required();
    fit_cmd->add_option("--mode", mode_name, "regression floor: final|min");
    add_common(fit_cmd);

    CLI::App* forecast_cmd = app.add_subcommand("forecast", "fit a trace and extrapolate it");
    forecast_cmd->add_option("--trace", trace_path, "counts CSV")->required();
    forecast_cmd->add_option("--horizon", horizon, "weeks to predict");
    forecast_cmd->add_option("--mode", mode_name, "regression floor: final|min");
    add_common(forecast_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (simulate_cmd->parsed()) {
            return run_simulate(items_path, policy_name, horizon, convention_name, trace_out, memory_out, common);
        }
        if (equilibrium_cmd->parsed()) {
            return run_equilibrium(items_path, multiplier, common);
        }
        if (optimum_cmd->parsed()) {
            return run_optimum(items_path, common);
        }
        if (bruteforce_cmd->parsed()) {
            return run_bruteforce(items_path, period, allow_idle, common);
        }
        if (hardness_cmd->parsed()) {
            return run_hardness_gen(periods, common);
        }
        if (rap_cmd->parsed()) {
            return run_rap_check(periods, common);
        }
        if (society_cmd->parsed()) {
            return run_society(society_path, policy_name, horizon, common);
        }
        if (reduce_cmd->parsed()) {
            return run_reduce(society_path, common);
        }
        if (fit_cmd->parsed()) {
            return run_fit(trace_path, mode_name, common);
        }
        if (forecast_cmd->parsed()) {
            return run_forecast(trace_path, horizon, mode_name, common);
        }
        std::cerr << "usage error: no subcommand\n";
        return 2;
    } catch (const schema_error& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    } catch (const bsched::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return 2;
    }
}
