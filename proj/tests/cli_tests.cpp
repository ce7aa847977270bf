// End-to-end checks of the evacsim binary: flag surface, exit codes, stream
// hygiene, snapshot files, and byte-stable sweep output.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "evac/harness.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CmdResult run_cmd(const std::string& command) {
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path();
    const fs::path out = dir / ("evacsim_out_" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("evacsim_err_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = command + " >" + out.string() + " 2>" + err.string();
    const int rc = std::system(cmd.c_str());
    CmdResult result;
    result.status = rc == -1 ? -1 : WEXITSTATUS(rc);
    result.out = slurp(out);
    result.err = slurp(err);
    fs::remove(out);
    fs::remove(err);
    return result;
}

CmdResult run_cli(const std::string& args) {
    return run_cmd(std::string(EVACSIM_BIN) + " " + args);
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "evacsim_cli_scratch";
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

const char* kTinyPlan = R"(
name = cli_tiny
number_persons = 6
max_ticks = 300
master_seed = 5
replications = 2
sweep moving_pattern = SR, BNE+SR
)";

const char* kTinyDeskPlan = R"(
name = cli_tiny_desk
number_persons = 6
max_ticks = 300
master_seed = 5
replications = 1
sweep moving_pattern = SR
)";

} // namespace

TEST_CASE("help surfaces every configuration flag") {
    const CmdResult top = run_cli("--help");
    CHECK(top.status == 0);
    for (const char* sub : {"run", "sweep", "summarize"})
        CHECK(top.out.find(sub) != std::string::npos);

    const CmdResult help = run_cli("run --help");
    CHECK(help.status == 0);
    for (const char* flag :
         {"--pattern", "--number-persons", "--pct-bne", "--probability-competing",
          "--door-width", "--move-speed", "--step-length", "--follow-radius",
          "--weight-ud", "--seed", "--max-ticks", "--snapshot-every"})
        CHECK(help.out.find(flag) != std::string::npos);
    for (const char* preset : {"2000", "16.7", "0.7"})
        CHECK(help.out.find(preset) != std::string::npos);

    const CmdResult sweep_help = run_cli("sweep --help");
    for (const char* flag : {"--parallelism", "--desk-scale", "--output"})
        CHECK(sweep_help.out.find(flag) != std::string::npos);
    const CmdResult sum_help = run_cli("summarize --help");
    for (const char* flag : {"--group-by", "--format"})
        CHECK(sum_help.out.find(flag) != std::string::npos);
}

TEST_CASE("run is deterministic and reports one result line") {
    const std::string args = "run --pattern SR --number-persons 10 --seed 1";
    const CmdResult first = run_cli(args);
    CHECK(first.status == 0);
    CHECK(first.out.find("evac_ticks=") != std::string::npos);
    CHECK(first.out.find("stalled=false") != std::string::npos);
    CHECK(std::count(first.out.begin(), first.out.end(), '\n') == 1);

    const CmdResult second = run_cli(args);
    CHECK(second.out == first.out);
}

TEST_CASE("kernel selection never changes results") {
    const std::string args =
        " run --pattern BNE+RF --pct-bne 50 --number-persons 120 --seed 9";
    const CmdResult scalar =
        run_cmd("env EVACSIM_KERNELS=scalar " EVACSIM_BIN + args);
    const CmdResult simd = run_cmd("env EVACSIM_KERNELS=avx2 " EVACSIM_BIN + args);
    CHECK(scalar.status == 0);
    CHECK(simd.status == 0);
    CHECK(scalar.out == simd.out);
    CHECK(scalar.out.find("evac_ticks=") != std::string::npos);
}

TEST_CASE("run validates flags and config files") {
    const CmdResult bad = run_cli("run --pct-bne 150 --number-persons 5");
    CHECK(bad.status != 0);
    CHECK(bad.err.find("pct_bne") != std::string::npos);

    const CmdResult unknown = run_cli("run --definitely-not-a-flag 3");
    CHECK(unknown.status != 0);

    // Config file < flag precedence.
    const fs::path dir = scratch_dir();
    write_file(dir / "base.cfg", "number_persons = 7\nseed = 9\n");
    const CmdResult from_file =
        run_cli("run --config " + (dir / "base.cfg").string() + " --pattern SR");
    CHECK(from_file.status == 0);
    CHECK(from_file.out.find("number_persons=7") != std::string::npos);
    CHECK(from_file.out.find("seed=9") != std::string::npos);

    const CmdResult overridden =
        run_cli("run --config " + (dir / "base.cfg").string() +
                " --pattern SR --number-persons 4");
    CHECK(overridden.out.find("number_persons=4") != std::string::npos);
}

TEST_CASE("run writes snapshots at the requested cadence") {
    const fs::path dir = scratch_dir() / "snaps";
    fs::remove_all(dir);
    const CmdResult r = run_cli(
        "run --pattern SR --number-persons 12 --seed 3 --snapshot-every 20 "
        "--snapshot-dir " + dir.string());
    CHECK(r.status == 0);
    REQUIRE(fs::exists(dir / "snapshot_000000.txt"));
    CHECK(fs::exists(dir / "snapshot_000020.txt"));

    const std::string snap = slurp(dir / "snapshot_000000.txt");
    std::istringstream in(snap);
    std::string header;
    std::getline(in, header);
    CHECK(header == "tick 0");
    long total = 0, rows = 0, value = 0;
    std::string line;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream cells(line);
        while (cells >> value) total += value;
    }
    CHECK(rows == 20);
    CHECK(total == 12);
}

TEST_CASE("sweep keeps stdout clean and its bytes stable across parallelism") {
    const fs::path dir = scratch_dir();
    write_file(dir / "tiny.plan", kTinyPlan);
    write_file(dir / "tiny_desk.plan", kTinyDeskPlan);

    const fs::path csv1 = dir / "out1.csv";
    const fs::path csv2 = dir / "out2.csv";
    const CmdResult r1 = run_cli("sweep " + (dir / "tiny.plan").string() +
                                 " --parallelism 1 --output " + csv1.string());
    CHECK(r1.status == 0);
    CHECK(r1.out.empty());
    CHECK(!r1.err.empty());

    const CmdResult r2 = run_cli("sweep " + (dir / "tiny.plan").string() +
                                 " --parallelism 4 --output " + csv2.string());
    CHECK(r2.status == 0);
    CHECK(slurp(csv1) == slurp(csv2));

    std::istringstream in(slurp(csv1));
    std::string line;
    long lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 1 + 4); // header + 2 patterns x 2 replicates

    SUBCASE("desk-scale swaps in the sibling plan") {
        const fs::path csv3 = dir / "out3.csv";
        const CmdResult desk =
            run_cli("sweep " + (dir / "tiny.plan").string() +
                    " --desk-scale --output " + csv3.string());
        CHECK(desk.status == 0);
        std::istringstream desk_in(slurp(csv3));
        long desk_lines = 0;
        while (std::getline(desk_in, line)) ++desk_lines;
        CHECK(desk_lines == 1 + 1);
        CHECK(slurp(csv3).find("cli_tiny_desk") != std::string::npos);
    }

    SUBCASE("summarize consumes the sweep output") {
        const CmdResult sum =
            run_cli("summarize " + csv1.string() + " --group-by pattern");
        CHECK(sum.status == 0);
        CHECK(sum.out.find("pattern") != std::string::npos);
        CHECK(sum.out.find("SR") != std::string::npos);
        CHECK(sum.out.find("BNE+SR") != std::string::npos);

        const CmdResult csv_fmt = run_cli("summarize " + csv1.string() +
                                          " --group-by pattern --format csv");
        CHECK(csv_fmt.status == 0);
        CHECK(csv_fmt.out.rfind("pattern,n,", 0) == 0);
    }
}

TEST_CASE("sweep and summarize fail loudly on bad input") {
    CHECK(run_cli("sweep /nonexistent.plan").status != 0);

    const fs::path dir = scratch_dir();
    write_file(dir / "broken.plan", "sweep what = 1,2\n");
    CHECK(run_cli("sweep " + (dir / "broken.plan").string()).status != 0);

    write_file(dir / "empty.csv",
               "name,pattern,number_persons,pct_bne,replicate,seed,evac_ticks,"
               "evac_seconds,mean_uec,stalled\n");
    CHECK(run_cli("summarize " + (dir / "empty.csv").string()).status != 0);
    CHECK(run_cli("summarize /nonexistent.csv").status != 0);

    write_file(dir / "tiny2.plan", kTinyPlan);
    const fs::path nowhere = dir / "no_dir_here" / "x.csv";
    CHECK(run_cli("sweep " + (dir / "tiny2.plan").string() + " --output " +
                  nowhere.string())
              .status != 0);
}

TEST_CASE("bundled campaign plans parse and expand to the documented sizes") {
    const fs::path plans = EVACSIM_PLANS_DIR;
    struct Expect {
        const char* file;
        std::size_t runs;
    };
    const Expect expected[] = {
        {"experiment1.plan", 3u * 2u * 50u},
        {"experiment1_desk.plan", 3u * 2u * 10u},
        {"experiment2.plan", 2u * 2u * 51u * 50u},
        {"experiment2_desk.plan", 2u * 2u * 11u * 5u},
        {"experiment3.plan", 2u * 20u * 51u * 30u},
        {"experiment3_desk.plan", 2u * 3u * 6u * 3u},
    };
    for (const Expect& e : expected) {
        const evac::ExperimentPlan plan =
            evac::parse_plan_file((plans / e.file).string());
        CHECK(evac::expand(plan).size() == e.runs);
        CHECK(plan.base.probability_competing == 16.7);
        CHECK(plan.base.door_width == 6);
        CHECK(plan.base.move_speed == 2.0);
        CHECK(plan.base.step_length == 0.7);
        CHECK(plan.base.follow_radius == 3.0);
        CHECK(plan.base.weight_ud == 1.0);
    }
}
