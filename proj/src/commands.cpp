#include "adgraph/commands.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "adgraph/checkpoint.hpp"
#include "adgraph/common.hpp"

namespace adgraph {

namespace fs = std::filesystem;

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) fail_data("cannot create output directory " + dir + ": " + ec.message());
}

void print_report(const ParseReport& report, std::ostream& log) {
    for (const auto& w : report.warnings) log << "warning: " << w << '\n';
    if (!report.rejected.empty()) {
        log << "rejected " << report.rejected.size() << " rows:";
        for (const auto& [line, why] : report.rejected) log << " line " << line << " (" << why << ")";
        log << '\n';
    }
    if (report.filtered > 0) log << "filtered " << report.filtered << " rows below min-prob\n";
}

void write_training_curve(const std::string& path, const TrainReport& report) {
    std::ofstream out(path);
    if (!out) fail_data("cannot write training curve: " + path);
    out << "epoch,mean_loss,seconds\n";
    out.precision(17);
    for (const EpochRow& row : report.epochs)
        out << row.epoch << ',' << row.mean_loss << ',' << row.seconds << '\n';
}

}  // namespace

void cmd_synth(const SynthSpec& spec, const std::string& out_dir, std::ostream& log) {
    ensure_dir(out_dir);
    Dataset ds = synthesize_stream(spec);
    const std::string events = (fs::path(out_dir) / "events.csv").string();
    const std::string edges = (fs::path(out_dir) / "initial_edges.csv").string();
    write_events_csv(events, ds.train);
    write_edges_csv(edges, ds.initial_associations);
    log << "wrote " << ds.train.size() << " events to " << events << '\n';
}

std::string cmd_train(const RunConfig& rc, std::ostream& log) {
    rc.validate();
    if (rc.out_dir.empty()) fail_usage("train: output directory required");
    ensure_dir(rc.out_dir);

    ParseReport report;
    Dataset ds = rc.load_dataset(report);
    print_report(report, log);

    DatasetStats stats = dataset_stats(ds);
    log << "dataset: " << stats.n_nodes << " nodes, " << stats.n_initial_associations
        << " initial associations, " << stats.n_final_associations << " final associations, "
        << stats.n_train << " train events, " << stats.n_test << " test events\n";

    save_run_config((fs::path(rc.out_dir) / "run.json").string(), rc);

    ModelParams params = ModelParams::init(rc.d, rc.seed, rc.nonlin);
    AdamState adam;
    {
        auto views = params.tensors();
        adam = AdamState::init(views);
    }
    TrainConfig tcfg = rc.train;
    tcfg.seed = rc.seed;
    TrainOutcome outcome = train(ds, params, adam, tcfg, rc.diffusion);

    for (const EpochRow& row : outcome.report.epochs)
        log << "epoch " << row.epoch << ": mean loss " << row.mean_loss << " (" << row.seconds
            << "s)\n";
    write_training_curve((fs::path(rc.out_dir) / "training_curve.csv").string(), outcome.report);

    Checkpoint ckpt;
    ckpt.params = std::move(params);
    ckpt.adam = std::move(adam);
    ckpt.state = std::move(outcome.final_state);
    ckpt.diffusion = rc.diffusion;
    ckpt.seed = rc.seed;
    ckpt.survival_rng_state = outcome.survival_rng_state;
    ckpt.agg_mask_rng_state = outcome.agg_mask_rng_state;
    ckpt.diff_mask_rng_state = outcome.diff_mask_rng_state;
    const std::string ckpt_path = (fs::path(rc.out_dir) / "checkpoint.bin").string();
    save_checkpoint(ckpt_path, ckpt);
    log << "checkpoint: " << ckpt_path << '\n';
    return ckpt_path;
}

EvalReport cmd_eval(const std::string& checkpoint_path, const RunConfig& rc, std::ostream& log) {
    rc.validate();
    if (rc.out_dir.empty()) fail_usage("eval: output directory required");
    ensure_dir(rc.out_dir);

    Checkpoint ckpt = load_checkpoint(checkpoint_path);

    ParseReport report;
    Dataset ds = rc.load_dataset(report);
    print_report(report, log);
    if (ds.n_nodes != ckpt.state.n_nodes()) {
        std::ostringstream msg;
        msg << "eval: node count mismatch: checkpoint has " << ckpt.state.n_nodes()
            << ", dataset has " << ds.n_nodes;
        fail_data(msg.str());
    }
    if (rc.d != ckpt.params.d) {
        std::ostringstream msg;
        msg << "eval: embedding dim mismatch: checkpoint has " << ckpt.params.d
            << ", config requests " << rc.d;
        fail_data(msg.str());
    }
    if (ds.test.empty()) fail_data("empty evaluation");

    EvalReport eval =
        evaluate_stream(ckpt.state, ckpt.params, ds.test, ckpt.diffusion, rc.seed);
    eval.config_fingerprint = config_fingerprint(rc);
    write_eval_report_json((fs::path(rc.out_dir) / "eval_report.json").string(), eval);
    write_ranks_csv((fs::path(rc.out_dir) / "ranks.csv").string(), eval);
    log << "MAR " << eval.mar << ", HIT@10 " << eval.hit10 << " over " << eval.ranks.size()
        << " ranks\n";
    return eval;
}

std::vector<AblationCell> cmd_ablate(const RunConfig& base, const AblationAxes& axes, int jobs,
                                     std::ostream& log) {
    base.validate();
    if (base.out_dir.empty()) fail_usage("ablate: output directory required");
    ensure_dir(base.out_dir);
    if (jobs < 1) jobs = 1;

    const auto messages =
        axes.messages.empty() ? std::vector{base.diffusion.message} : axes.messages;
    const auto selections =
        axes.selections.empty() ? std::vector{base.diffusion.selection} : axes.selections;
    const auto strengths =
        axes.strengths.empty() ? std::vector{base.diffusion.strength} : axes.strengths;
    const auto hops = axes.hops.empty() ? std::vector{base.diffusion.hops} : axes.hops;
    const auto seeds = axes.seeds.empty() ? std::vector{base.seed} : axes.seeds;

    struct Job {
        RunConfig rc;
        std::string variant;
        std::uint64_t seed;
    };
    std::vector<Job> todo;
    for (MessageKind m : messages)
        for (Selection s : selections)
            for (Strength st : strengths)
                for (int h : hops)
                    for (std::uint64_t seed : seeds) {
                        RunConfig rc = base;
                        rc.diffusion.message = m;
                        rc.diffusion.selection = s;
                        rc.diffusion.strength = st;
                        rc.diffusion.hops = h;
                        rc.seed = seed;
                        std::ostringstream name;
                        name << "msg-" << to_string(m) << "_sel-" << to_string(s) << "_str-"
                             << to_string(st) << "_hops-" << h;
                        std::ostringstream dir;
                        dir << name.str() << "_seed-" << seed;
                        rc.out_dir = (fs::path(base.out_dir) / dir.str()).string();
                        todo.push_back({std::move(rc), name.str(), seed});
                    }

    std::vector<AblationCell> cells(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex log_mu;

    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const Job& job = todo[i];
            AblationCell& cell = cells[i];
            cell.variant = job.variant;
            cell.seed = job.seed;
            try {
                std::ostringstream local_log;
                const std::string ckpt = cmd_train(job.rc, local_log);
                EvalReport eval = cmd_eval(ckpt, job.rc, local_log);
                cell.mar = eval.mar;
                cell.hit10 = eval.hit10;
                cell.ok = true;
            } catch (const std::exception& e) {
                cell.ok = false;
                cell.error = e.what();
            }
            std::lock_guard lock(log_mu);
            log << cell.variant << " seed " << cell.seed << ": "
                << (cell.ok ? "ok" : std::string("FAILED: ") + cell.error);
            if (cell.ok) log << " MAR " << cell.mar << " HIT@10 " << cell.hit10;
            log << '\n';
        }
    };

    std::vector<std::thread> pool;
    const int n_workers = std::min<std::size_t>(jobs, todo.size());
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();

    write_ablation_summary((fs::path(base.out_dir) / "summary.csv").string(), cells);
    return cells;
}

void write_ablation_summary(const std::string& path, const std::vector<AblationCell>& cells) {
    std::ofstream out(path);
    if (!out) fail_data("cannot write summary: " + path);
    out << "variant,seed,MAR,HIT10,status\n";
    out.precision(17);
    for (const AblationCell& c : cells) {
        out << c.variant << ',' << c.seed << ',';
        if (c.ok)
            out << c.mar << ',' << c.hit10 << ",ok\n";
        else
            out << ",,failed\n";
    }
}

}  // namespace adgraph
