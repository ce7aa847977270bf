#include "evac/harness.hpp"

#include "evac/rng.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace evac {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

long parse_long(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument(key + ": expected an integer, got '" + value + "'");
    return v;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
    }
    if (used != value.size())
        throw std::invalid_argument(key + ": expected a number, got '" + value + "'");
    return v;
}

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

/// "a, b, c" or "start:stop:step" (inclusive, numeric).
std::vector<std::string> parse_sweep_values(const std::string& key,
                                            const std::string& text) {
    std::vector<std::string> values;
    if (text.find(':') != std::string::npos) {
        std::istringstream in(text);
        std::string a, b, c;
        if (!std::getline(in, a, ':') || !std::getline(in, b, ':') ||
            !std::getline(in, c))
            throw std::invalid_argument(key + ": malformed range '" + text + "'");
        const double start = parse_double(key, trim(a));
        const double stop = parse_double(key, trim(b));
        const double step = parse_double(key, trim(c));
        if (step <= 0.0 || stop < start)
            throw std::invalid_argument(key + ": range must run upward, '" + text + "'");
        for (int i = 0;; ++i) {
            const double v = start + step * i;
            if (v > stop + step * 1e-9) break;
            values.push_back(format_value(v));
        }
    } else {
        std::istringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (!item.empty()) values.push_back(item);
        }
    }
    if (values.empty())
        throw std::invalid_argument(key + ": empty sweep value list");
    return values;
}

} // namespace

void apply_config_field(SimConfig& config, const std::string& key,
                        const std::string& value) {
    if (key == "number_persons")
        config.number_persons = static_cast<int>(parse_long(key, value));
    else if (key == "pct_bne")
        config.pct_bne = parse_double(key, value);
    else if (key == "probability_competing")
        config.probability_competing = parse_double(key, value);
    else if (key == "door_width")
        config.door_width = static_cast<int>(parse_long(key, value));
    else if (key == "move_speed")
        config.move_speed = parse_double(key, value);
    else if (key == "step_length")
        config.step_length = parse_double(key, value);
    else if (key == "follow_radius")
        config.follow_radius = parse_double(key, value);
    else if (key == "weight_ud")
        config.weight_ud = parse_double(key, value);
    else if (key == "moving_pattern")
        config.moving_pattern = parse_pattern(value);
    else if (key == "seed")
        config.seed = std::stoull(value);
    else if (key == "max_ticks")
        config.max_ticks = parse_long(key, value);
    else
        throw std::invalid_argument("unknown configuration field '" + key + "'");
}

ExperimentPlan parse_plan(std::istream& in, const std::string& source_name) {
    ExperimentPlan plan;
    plan.name = source_name;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(source_name + ":" + std::to_string(line_no) +
                                        ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        try {
            if (key.rfind("sweep ", 0) == 0 || key.rfind("sweep\t", 0) == 0) {
                const std::string param = trim(key.substr(6));
                std::vector<std::string> values = parse_sweep_values(param, value);
                // Probing every value rejects unknown parameters and type
                // mismatches at parse time rather than mid-batch.
                SimConfig probe = plan.base;
                for (const std::string& v : values) apply_config_field(probe, param, v);
                plan.sweeps.push_back({param, std::move(values)});
            } else if (key == "name") {
                plan.name = value;
            } else if (key == "replications") {
                plan.replications = static_cast<int>(parse_long(key, value));
            } else if (key == "master_seed") {
                plan.master_seed = std::stoull(value);
            } else if (key == "output") {
                plan.output_path = value;
            } else {
                apply_config_field(plan.base, key, value);
            }
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(source_name + ":" + std::to_string(line_no) +
                                        ": " + e.what());
        }
    }
    if (plan.replications < 1)
        throw std::invalid_argument(source_name + ": replications must be at least 1");
    return plan;
}

ExperimentPlan parse_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open plan file '" + path + "'");
    return parse_plan(in, path);
}

std::vector<PlannedRun> expand(const ExperimentPlan& plan) {
    if (plan.replications < 1)
        throw std::invalid_argument("plan replications must be at least 1");
    long cells = 1;
    for (const SweepAxis& axis : plan.sweeps)
        cells *= static_cast<long>(axis.values.size());

    std::vector<PlannedRun> runs;
    runs.reserve(static_cast<std::size_t>(cells) * plan.replications);
    for (long cell = 0; cell < cells; ++cell) {
        SimConfig config = plan.base;
        // First axis slowest.
        long rem = cell;
        for (std::size_t a = plan.sweeps.size(); a-- > 0;) {
            const SweepAxis& axis = plan.sweeps[a];
            const long idx = rem % static_cast<long>(axis.values.size());
            rem /= static_cast<long>(axis.values.size());
            apply_config_field(config, axis.param,
                               axis.values[static_cast<std::size_t>(idx)]);
        }
        config.validate();
        for (int rep = 0; rep < plan.replications; ++rep) {
            PlannedRun run;
            run.config = config;
            run.config.seed = derive_run_seed(plan.master_seed,
                                              static_cast<std::uint64_t>(cell),
                                              static_cast<std::uint64_t>(rep));
            run.cell = cell;
            run.replicate = rep;
            runs.push_back(run);
        }
    }
    return runs;
}

namespace {

// Config columns come from the record's own echo.
void write_csv_row(std::ostream& out, const ExperimentPlan& plan,
                   const PlannedRun& run, const RunRecord& rec) {
    char buf[64];
    out << plan.name << ',' << to_string(rec.config.moving_pattern) << ','
        << rec.config.number_persons << ',';
    std::snprintf(buf, sizeof buf, "%g", rec.config.pct_bne);
    out << buf << ',' << run.replicate << ',' << rec.seed << ','
        << rec.evac_ticks << ',';
    std::snprintf(buf, sizeof buf, "%.17g", rec.evac_seconds);
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", rec.mean_uec);
    out << buf << ',' << (rec.stalled ? "true" : "false") << '\n';
}

} // namespace

void execute(const ExperimentPlan& plan, int parallelism, std::ostream& out,
             const ProgressFn& progress) {
    const std::vector<PlannedRun> runs = expand(plan);
    std::vector<RunRecord> results(runs.size());

    std::atomic<std::size_t> cursor{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const std::size_t workers =
        std::min<std::size_t>(std::max(parallelism, 1), std::max<std::size_t>(runs.size(), 1));

    auto worker = [&] {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= runs.size()) return;
            try {
                results[i] = run_to_completion(runs[i].config);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
            const std::size_t d = done.fetch_add(1) + 1;
            if (progress) {
                std::lock_guard<std::mutex> lock(progress_mutex);
                progress(d, runs.size());
            }
        }
    };

    std::vector<std::thread> pool;
    for (std::size_t i = 1; i < workers; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    out << "name,pattern,number_persons,pct_bne,replicate,seed,evac_ticks,"
           "evac_seconds,mean_uec,stalled\n";
    for (std::size_t i = 0; i < runs.size(); ++i)
        write_csv_row(out, plan, runs[i], results[i]);
}

} // namespace evac
