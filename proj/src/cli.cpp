#include "maxmedian/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "maxmedian/config_json.hpp"
#include "maxmedian/error.hpp"
#include "maxmedian/report.hpp"
#include "maxmedian/simulator.hpp"
#include "maxmedian/verify.hpp"

#ifndef MAXMEDIAN_VERSION
#define MAXMEDIAN_VERSION "dev"
#endif

namespace maxmedian::cli {

namespace fs = std::filesystem;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    writer(os);
    os.flush();
    if (!os) throw IoError("write to '" + path.string() + "' failed");
}

void apply_overrides(ExperimentConfig& c, const RunManifest& m) {
    if (m.seed) c.master_seed = *m.seed;
    if (m.trajectories) c.trajectories = *m.trajectories;
    if (m.horizon) {
        c.horizon = *m.horizon;
        std::vector<std::uint64_t> kept;
        for (auto t : c.checkpoints) {
            if (t < c.horizon) kept.push_back(t);
        }
        kept.push_back(c.horizon);
        c.checkpoints = std::move(kept);
    }
    c.validate();
}

std::string meta_json(const ExperimentConfig& c, const MetricsSummary& s, std::string_view command) {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = nlohmann::json::parse(config_to_json(c));
    j["master_seed"] = c.master_seed;
    j["version"] = MAXMEDIAN_VERSION;
    j["heavy_tail_se_unreliable"] = s.heavy_tail;
    j["csv_header"] = kAggregateCsvHeader;
    return j.dump(2) + "\n";
}

// Runs one config and writes <stem>.csv, <stem>.meta.json and optionally <stem>.traj.csv.
void run_and_write(const ExperimentConfig& c, const fs::path& dir, const std::string& stem,
                   unsigned workers, bool per_trajectory, std::string_view command,
                   std::ostream& out) {
    const auto records = run_trajectories(c, workers);
    std::vector<std::vector<double>> oracle(c.trajectories);
    parallel_for(c.trajectories, workers,
                 [&](std::uint64_t r) { oracle[r] = oracle_running_max(c, r); });
    const auto summary = summarize(c, records, oracle);

    const fs::path csv = dir / (stem + ".csv");
    write_file(csv, [&](std::ostream& os) { write_aggregate_csv(os, summary); });
    write_file(dir / (stem + ".meta.json"),
               [&](std::ostream& os) { os << meta_json(c, summary, command); });
    if (per_trajectory) {
        write_file(dir / (stem + ".traj.csv"),
                   [&](std::ostream& os) { write_trajectory_csv(os, c, records); });
    }
    const auto& last = summary.rows.back();
    out << csv.string() << ": t=" << last.t << " best_arm_frac=" << format_number(last.best_arm_frac)
        << " strong_regret=" << format_number(last.strong_regret) << '\n';
}

std::string file_stem(const ExperimentConfig& c) {
    std::string label = c.policy.label();
    for (char& ch : label) {
        if (ch == ':') ch = '-';
    }
    return c.name + "__" + label;
}

int cmd_run(const RunManifest& m, std::ostream& out) {
    if (m.config_path.has_value() == m.preset.has_value()) {
        throw ConfigError("preset", "give exactly one of --preset or --config");
    }
    ExperimentConfig c = m.preset ? preset(*m.preset) : parse_config(read_file(*m.config_path));
    apply_overrides(c, m);
    ensure_dir(m.out_dir);
    run_and_write(c, m.out_dir, c.name, m.workers, m.per_trajectory, "run", out);
    return kOk;
}

int cmd_bench(const RunManifest& m, std::ostream& out) {
    ensure_dir(m.out_dir);
    for (auto name : preset_names()) {
        const ExperimentConfig base = preset(name);
        for (const PolicySpec& p :
             {base.policy, PolicySpec::uniform(), PolicySpec::fixed(base.best_arm)}) {
            ExperimentConfig c = base;
            c.policy = p;
            apply_overrides(c, m);
            run_and_write(c, m.out_dir, file_stem(c), m.workers, m.per_trajectory, "bench", out);
        }
    }
    return kOk;
}

int cmd_verify(const std::vector<std::string>& only, std::uint64_t seed, std::ostream& out) {
    VerifyOptions opt;
    opt.seed = seed;
    const auto results = run_verification(only, opt);
    int failed = 0;
    for (const auto& r : results) {
        out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
        if (!r.passed) ++failed;
    }
    out << results.size() - failed << "/" << results.size() << " checks passed\n";
    return failed == 0 ? kOk : kVerifyFailed;
}

}  // namespace

int main(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Max-Median extreme bandit simulator", "maxmedian"};
    app.require_subcommand(1);

    RunManifest manifest;
    std::string preset_name, config_path;
    std::uint64_t seed = 0, trajectories = 0, horizon = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", manifest.out_dir, "Output directory");
        sub->add_option("--seed", seed, "Master seed override");
        sub->add_option("--trajectories", trajectories, "Trajectory count override");
        sub->add_option("--horizon", horizon, "Horizon override");
        sub->add_option("--workers", manifest.workers, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--per-trajectory", manifest.per_trajectory, "Also write per-trajectory CSV");
    };

    auto* run = app.add_subcommand("run", "Run one preset or config file");
    run->add_option("--preset", preset_name, "Preset name");
    run->add_option("--config", config_path, "JSON config file");
    add_common(run);

    auto* bench = app.add_subcommand("bench", "Run every preset against the baselines");
    add_common(bench);

    std::vector<std::string> only;
    std::uint64_t verify_seed = VerifyOptions{}.seed;
    bool list = false;
    auto* verify = app.add_subcommand("verify", "Run the invariant suites");
    verify->add_option("--only", only, "Run only the named checks");
    verify->add_option("--seed", verify_seed, "Seed of the statistical checks");
    verify->add_flag("--list", list, "List check names and exit");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    auto set_overrides = [&](const CLI::App* sub) {
        if (sub->count("--seed")) manifest.seed = seed;
        if (sub->count("--trajectories")) manifest.trajectories = trajectories;
        if (sub->count("--horizon")) manifest.horizon = horizon;
    };

    try {
        if (run->parsed()) {
            if (run->count("--preset")) manifest.preset = preset_name;
            if (run->count("--config")) manifest.config_path = config_path;
            set_overrides(run);
            return cmd_run(manifest, out);
        }
        if (bench->parsed()) {
            set_overrides(bench);
            return cmd_bench(manifest, out);
        }
        if (verify->parsed()) {
            if (list) {
                for (auto name : verification_check_names()) out << name << '\n';
                return kOk;
            }
            return cmd_verify(only, verify_seed, out);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const PreconditionError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace maxmedian::cli
