// evacsim: command-line front end. Three subcommands:
//   run        one simulation, result line on stdout, optional snapshot dumps
//   sweep      execute an experiment plan into a CSV results table
//   summarize  group a results table and print summary statistics

#include "evac/engine.hpp"
#include "evac/harness.hpp"
#include "evac/summary.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

struct FlagSpec {
    const char* flag;
    const char* field;
    const char* help;
};

constexpr FlagSpec kConfigFlags[] = {
    {"--pattern", "moving_pattern", "Moving pattern: SR, RF, BNE+SR or BNE+RF (default BNE+SR)"},
    {"--number-persons", "number_persons", "Total number of agents (default 2000)"},
    {"--pct-bne", "pct_bne", "Percentage of agents using the BNE rule in mixed patterns (default 100)"},
    {"--probability-competing", "probability_competing", "Percent chance an agent enters a candidate patch (default 16.7)"},
    {"--door-width", "door_width", "Exit band height in patches (default 6)"},
    {"--move-speed", "move_speed", "Free walking speed in m/s (default 2)"},
    {"--step-length", "step_length", "Distance covered per tick at free speed, m (default 0.7)"},
    {"--follow-radius", "follow_radius", "Random Follow sight radius in patches (default 3)"},
    {"--weight-ud", "weight_ud", "Distance-utility weight in the BNE score (default 1)"},
    {"--seed", "seed", "Run seed (default 0)"},
    {"--max-ticks", "max_ticks", "Stall cap in ticks (default 50000)"},
};

void apply_config_file(evac::SimConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected 'key = value'");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        };
        evac::apply_config_field(config, trim(line.substr(0, eq)),
                                 trim(line.substr(eq + 1)));
    }
}

std::string desk_variant_path(const std::string& path) {
    const std::filesystem::path p(path);
    std::filesystem::path sibling = p.parent_path() / (p.stem().string() + "_desk");
    sibling += p.extension();
    return sibling.string();
}

int cmd_run(const std::string& config_path,
            const std::vector<std::pair<std::string, std::string>>& overrides,
            long snapshot_every, const std::string& snapshot_dir) {
    evac::SimConfig config;
    if (!config_path.empty()) apply_config_file(config, config_path);
    for (const auto& [field, value] : overrides)
        evac::apply_config_field(config, field, value);
    config.validate();

    evac::RunRecord rec;
    if (snapshot_every > 0) {
        std::filesystem::create_directories(snapshot_dir);
        evac::WorldState world = evac::initialize(config);
        while (!world.agents.empty() && world.tick < config.max_ticks) {
            if (world.tick % snapshot_every == 0) {
                char name[32];
                std::snprintf(name, sizeof name, "snapshot_%06ld.txt", world.tick);
                std::ofstream out(std::filesystem::path(snapshot_dir) / name);
                out << evac::snapshot(world);
            }
            evac::advance_tick(world);
        }
        rec.evac_ticks = world.tick;
        rec.evac_seconds = static_cast<double>(world.tick) * config.tick_seconds();
        rec.mean_uec = world.uec_acc.run_mean();
        rec.stalled = !world.agents.empty();
        rec.seed = config.seed;
        rec.config = config;
    } else {
        rec = evac::run_to_completion(config);
    }

    if (rec.stalled)
        std::cerr << "warning: run stalled, " << config.max_ticks
                  << " ticks reached with agents remaining\n";

    char seconds[48], uec[48];
    std::snprintf(seconds, sizeof seconds, "%.6g", rec.evac_seconds);
    std::snprintf(uec, sizeof uec, "%.6g", rec.mean_uec);
    std::cout << "pattern=" << evac::to_string(config.moving_pattern)
              << " number_persons=" << config.number_persons
              << " pct_bne=" << config.pct_bne << " seed=" << rec.seed
              << " evac_ticks=" << rec.evac_ticks << " evac_seconds=" << seconds
              << " mean_uec=" << uec
              << " stalled=" << (rec.stalled ? "true" : "false") << "\n";
    return 0;
}

int cmd_sweep(const std::string& plan_path, bool desk_scale, int parallelism,
              const std::string& output_override) {
    std::string path = plan_path;
    if (desk_scale) {
        path = desk_variant_path(plan_path);
        if (!std::filesystem::exists(path))
            throw std::invalid_argument("no desk-scale variant next to '" +
                                        plan_path + "' (expected " + path + ")");
    }
    const evac::ExperimentPlan plan = evac::parse_plan_file(path);

    std::string out_path = output_override;
    if (out_path.empty()) out_path = plan.output_path;
    if (out_path.empty()) out_path = plan.name + ".csv";

    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot open output file '" + out_path + "'");

    const std::size_t total = evac::expand(plan).size();
    const std::size_t stride = total > 100 ? total / 100 : 1;
    evac::execute(plan, parallelism, out,
                  [&](std::size_t done, std::size_t all) {
                      if (done % stride == 0 || done == all)
                          std::cerr << "\r" << plan.name << ": " << done << "/"
                                    << all << " runs" << std::flush;
                  });
    std::cerr << "\n" << plan.name << ": wrote " << out_path << "\n";
    if (!out)
        throw std::runtime_error("write failure on '" + out_path + "'");
    return 0;
}

int cmd_summarize(const std::string& csv_path, const std::string& group_by,
                  const std::string& format) {
    std::ifstream in(csv_path);
    if (!in)
        throw std::invalid_argument("cannot open results file '" + csv_path + "'");
    const evac::CsvTable table = evac::read_csv(in);

    std::vector<std::string> keys;
    std::istringstream split(group_by);
    std::string key;
    while (std::getline(split, key, ','))
        if (!key.empty()) keys.push_back(key);

    const evac::SummaryResult summary = evac::summarize(table, keys);
    evac::print_summary(std::cout, summary, format);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based two-exit evacuation simulator"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Run one simulation");
    std::string config_path;
    run->add_option("--config", config_path, "Config file of key = value lines");
    std::vector<std::pair<CLI::Option*, const FlagSpec*>> run_flags;
    std::vector<std::string> run_values(std::size(kConfigFlags));
    for (std::size_t i = 0; i < std::size(kConfigFlags); ++i) {
        CLI::Option* opt = run->add_option(kConfigFlags[i].flag, run_values[i],
                                           kConfigFlags[i].help);
        run_flags.push_back({opt, &kConfigFlags[i]});
    }
    long snapshot_every = 0;
    std::string snapshot_dir = "snapshots";
    run->add_option("--snapshot-every", snapshot_every,
                    "Write an occupancy snapshot every N ticks (0 = off; 20 matches the usual reporting cadence)");
    run->add_option("--snapshot-dir", snapshot_dir,
                    "Directory for snapshot files (default snapshots/)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "Execute an experiment plan");
    std::string plan_path;
    sweep->add_option("plan", plan_path, "Plan file")->required();
    bool desk_scale = false;
    sweep->add_flag("--desk-scale", desk_scale,
                    "Use the <plan>_desk.plan variant sitting next to the plan file");
    int parallelism = static_cast<int>(std::thread::hardware_concurrency());
    if (parallelism < 1) parallelism = 1;
    sweep->add_option("--parallelism", parallelism,
                      "Maximum concurrent runs (default: hardware threads)");
    std::string output_override;
    sweep->add_option("--output", output_override,
                      "Results CSV path (default: plan's output setting)");

    // summarize
    auto* summarize = app.add_subcommand("summarize", "Summarize a results CSV");
    std::string csv_path;
    summarize->add_option("csv", csv_path, "Results CSV from sweep")->required();
    std::string group_by = "pattern";
    summarize->add_option("--group-by", group_by,
                          "Comma-separated key columns (default: pattern)");
    std::string format = "table";
    summarize->add_option("--format", format, "Output format: table or csv")
        ->check(CLI::IsMember({"table", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::vector<std::pair<std::string, std::string>> overrides;
            for (std::size_t i = 0; i < run_flags.size(); ++i)
                if (run_flags[i].first->count() > 0)
                    overrides.push_back({run_flags[i].second->field, run_values[i]});
            return cmd_run(config_path, overrides, snapshot_every, snapshot_dir);
        }
        if (sweep->parsed())
            return cmd_sweep(plan_path, desk_scale, parallelism, output_override);
        if (summarize->parsed())
            return cmd_summarize(csv_path, group_by, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
