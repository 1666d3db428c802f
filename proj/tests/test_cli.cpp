#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adgraph/commands.hpp"
#include "testutil.hpp"

using namespace adgraph;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "adgraph_cli_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

SynthSpec tiny_spec(std::uint64_t seed = 1) {
    SynthSpec spec;
    spec.n_nodes = 12;
    spec.n_communities = 3;
    spec.intra_rate = 1.0;
    spec.inter_rate = 0.05;
    spec.association_prob = 0.08;
    spec.horizon = 300.0 / synth_total_rate(spec);
    spec.seed = seed;
    return spec;
}

RunConfig tiny_run(const fs::path& out, std::uint64_t seed = 1) {
    RunConfig rc;
    rc.synth = tiny_spec(seed);
    rc.d = 6;
    rc.seed = seed;
    rc.train.epochs = 2;
    rc.train.batch_size = 64;
    rc.out_dir = out.string();
    return rc;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("synth round-trips through the CSV pipeline") {
    fs::path dir = fresh_dir("synth_roundtrip");
    std::ostringstream log;
    SynthSpec spec = tiny_spec(5);
    cmd_synth(spec, dir.string(), log);

    Dataset direct = synthesize_stream(spec);
    ParseReport report;
    auto events = parse_events((dir / "events.csv").string(), {}, report);
    REQUIRE(events.size() == direct.train.size());
    for (std::size_t i = 0; i < events.size(); ++i) CHECK(events[i] == direct.train[i]);

    auto edges = parse_edges((dir / "initial_edges.csv").string(), {}, report);
    CHECK(edges.empty());
}

TEST_CASE("synth: different seeds give different streams") {
    Dataset a = synthesize_stream(tiny_spec(1));
    Dataset b = synthesize_stream(tiny_spec(2));
    CHECK(!(a.train == b.train));
}

TEST_CASE("train writes a self-describing, reproducible run directory") {
    fs::path dir_a = fresh_dir("train_a");
    fs::path dir_b = fresh_dir("train_b");
    std::ostringstream log;

    std::string ckpt_a = cmd_train(tiny_run(dir_a), log);
    std::string ckpt_b = cmd_train(tiny_run(dir_b), log);

    CHECK(fs::exists(dir_a / "run.json"));
    CHECK(fs::exists(dir_a / "training_curve.csv"));
    CHECK(fs::exists(dir_a / "checkpoint.bin"));
    // Same config, same seed: identical checkpoints byte for byte.
    CHECK(slurp(ckpt_a) == slurp(ckpt_b));

    // Re-running from the echoed run.json reproduces the checkpoint exactly.
    RunConfig echoed = load_run_config((dir_a / "run.json").string());
    fs::path dir_c = fresh_dir("train_c");
    echoed.out_dir = dir_c.string();
    std::string ckpt_c = cmd_train(echoed, log);
    CHECK(slurp(ckpt_a) == slurp(ckpt_c));
}

TEST_CASE("train then eval produces reports with finite metrics") {
    fs::path dir = fresh_dir("train_eval");
    std::ostringstream log;
    RunConfig rc = tiny_run(dir);
    std::string ckpt = cmd_train(rc, log);
    EvalReport report = cmd_eval(ckpt, rc, log);
    CHECK(std::isfinite(report.mar));
    CHECK(report.mar >= 1.0);
    CHECK(fs::exists(dir / "eval_report.json"));
    CHECK(fs::exists(dir / "ranks.csv"));

    auto j = nlohmann::json::parse(slurp(dir / "eval_report.json"));
    CHECK(j["mar"].get<double>() == report.mar);
    CHECK(!j["config_fingerprint"].get<std::string>().empty());
}

TEST_CASE("eval: node-count mismatch names both sizes") {
    fs::path dir = fresh_dir("eval_mismatch");
    std::ostringstream log;
    RunConfig rc = tiny_run(dir);
    std::string ckpt = cmd_train(rc, log);

    RunConfig other = rc;
    other.synth->n_nodes = 16;  // dataset no longer matches the checkpoint
    try {
        cmd_eval(ckpt, other, log);
        FAIL("expected a data error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
        CHECK(std::string(e.what()).find("12") != std::string::npos);
        CHECK(std::string(e.what()).find("16") != std::string::npos);
    }
}

TEST_CASE("eval: missing checkpoint is a data error") {
    fs::path dir = fresh_dir("eval_missing");
    std::ostringstream log;
    RunConfig rc = tiny_run(dir);
    CHECK_THROWS_AS(cmd_eval((dir / "nope.bin").string(), rc, log), Error);
}

TEST_CASE("ablate: selection axis alone gives six cells per seed") {
    fs::path dir = fresh_dir("ablate_sel");
    std::ostringstream log;
    RunConfig rc = tiny_run(dir);
    rc.train.epochs = 1;

    AblationAxes axes;
    axes.selections = {Selection::Base,
                       Selection::IncludePartner,
                       Selection::MaskAggregation,
                       Selection::MaskDiffusion,
                       Selection::MaskBoth,
                       Selection::MaskEarliest};
    auto cells = cmd_ablate(rc, axes, 2, log);
    CHECK(cells.size() == 6);
    for (const AblationCell& c : cells) {
        CHECK(c.ok);
        CHECK(std::isfinite(c.mar));
    }
    CHECK(fs::exists(dir / "summary.csv"));

    // Empty axes collapse to a single base run.
    fs::path dir2 = fresh_dir("ablate_base");
    RunConfig rc2 = tiny_run(dir2);
    rc2.train.epochs = 1;
    auto single = cmd_ablate(rc2, {}, 1, log);
    CHECK(single.size() == 1);
}

TEST_CASE("cli binary: usage and data errors exit with distinct codes") {
    CHECK(run_cli("definitely-not-a-command") == 1);
    CHECK(run_cli("train") != 0);  // no data source -> usage error (1)
    CHECK(run_cli("train --events /nonexistent.csv --out /tmp/adgraph_cli_x") == 2);
    CHECK(run_cli("--help") == 0);
}

TEST_CASE("cli binary: synth then train then eval end to end") {
    fs::path dir = fresh_dir("cli_e2e");
    save_synth_spec((dir / "spec.json").string(), tiny_spec(3));
    CHECK(run_cli("synth --spec " + (dir / "spec.json").string() + " --out " + dir.string()) == 0);
    CHECK(fs::exists(dir / "events.csv"));

    const std::string train_args = "train --synth " + (dir / "spec.json").string() +
                                   " --dim 6 --epochs 1 --batch-size 64 --seed 2 --out " +
                                   (dir / "run").string();
    CHECK(run_cli(train_args) == 0);
    CHECK(fs::exists(dir / "run" / "checkpoint.bin"));

    const std::string eval_args = "eval --checkpoint " + (dir / "run" / "checkpoint.bin").string() +
                                  " --synth " + (dir / "spec.json").string() +
                                  " --dim 6 --seed 2 --out " + (dir / "run").string();
    CHECK(run_cli(eval_args) == 0);
    CHECK(fs::exists(dir / "run" / "eval_report.json"));
}
