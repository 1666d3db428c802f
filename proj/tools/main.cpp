// adgraph command-line interface: synth | train | eval | ablate.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "adgraph/commands.hpp"
#include "adgraph/common.hpp"

namespace {

using namespace adgraph;

/// Option bundle shared by train/eval/ablate. Values land in a RunConfig;
/// when --config is given the file is loaded first and explicit flags win.
struct RunOpts {
    std::string config_path;
    std::string events, edges, synth_path;
    double split_t = 0.0;
    double split_frac = 0.8;
    std::string message = "node", selection = "base", strength = "uniform";
    int hops = 1;
    double mask_p = 0.2;
    std::string aggregation = "on", diffusion = "on";
    bool skip_zero_message = false;
    int dim = 32;
    std::string nonlin = "sigmoid";
    double lr = 0.0002;
    int epochs = 5;
    int batch_size = 200;
    double clip = 100.0;
    int survival_samples = 5;
    std::uint64_t seed = 1;
    std::string out;
    double min_prob = 0.0;
    std::string assoc_token = "assoc", comm_token = "comm";
    int n_nodes = 0;

    CLI::Option* o_events = nullptr;
    CLI::Option* o_edges = nullptr;
    CLI::Option* o_synth = nullptr;
    CLI::Option* o_split_t = nullptr;
    CLI::Option* o_split_frac = nullptr;
    CLI::Option* o_message = nullptr;
    CLI::Option* o_selection = nullptr;
    CLI::Option* o_strength = nullptr;
    CLI::Option* o_hops = nullptr;
    CLI::Option* o_mask_p = nullptr;
    CLI::Option* o_aggregation = nullptr;
    CLI::Option* o_diffusion = nullptr;
    CLI::Option* o_skip_zero = nullptr;
    CLI::Option* o_dim = nullptr;
    CLI::Option* o_nonlin = nullptr;
    CLI::Option* o_lr = nullptr;
    CLI::Option* o_epochs = nullptr;
    CLI::Option* o_batch = nullptr;
    CLI::Option* o_clip = nullptr;
    CLI::Option* o_survival = nullptr;
    CLI::Option* o_seed = nullptr;
    CLI::Option* o_out = nullptr;
    CLI::Option* o_min_prob = nullptr;
    CLI::Option* o_assoc_token = nullptr;
    CLI::Option* o_comm_token = nullptr;
    CLI::Option* o_n_nodes = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run config JSON; flags override file values");
        o_events = cmd->add_option("--events", events, "events CSV (u,v,t,kind[,prob])");
        o_edges = cmd->add_option("--edges", edges, "initial association edge list CSV (u,v)");
        o_synth = cmd->add_option("--synth", synth_path, "synthetic stream spec JSON");
        o_split_t = cmd->add_option("--split-t", split_t, "chronological split boundary");
        o_split_frac = cmd->add_option("--split-frac", split_frac,
                                       "train fraction of the time span (default 0.8)");
        o_message = cmd->add_option("--message", message, "diffusion message: node|delta|edge");
        o_hops = cmd->add_option("--hops", hops, "diffusion radius (default 1)");
        o_selection = cmd->add_option("--selection", selection,
                                      "target selection: base|v|alpha|beta|gamma|omega");
        o_mask_p = cmd->add_option("--mask-p", mask_p, "mask fraction for masked selections");
        o_strength = cmd->add_option("--strength", strength, "diffusion strength: uniform|attn");
        o_aggregation = cmd->add_option("--aggregation", aggregation, "aggregation step: on|off");
        o_diffusion = cmd->add_option("--diffusion", diffusion, "diffusion step: on|off");
        o_skip_zero = cmd->add_flag("--skip-zero-message", skip_zero_message,
                                    "skip receivers when the message is exactly zero");
        o_dim = cmd->add_option("--dim", dim, "embedding dimension (default 32)");
        o_nonlin = cmd->add_option("--nonlin", nonlin, "nonlinearity: sigmoid|tanh");
        o_lr = cmd->add_option("--lr", lr, "learning rate (default 0.0002)");
        o_epochs = cmd->add_option("--epochs", epochs, "training epochs (default 5)");
        o_batch = cmd->add_option("--batch-size", batch_size, "events per step (default 200)");
        o_clip = cmd->add_option("--clip", clip, "gradient clip norm (default 100)");
        o_survival = cmd->add_option("--survival-samples", survival_samples,
                                     "sampled no-event pairs per event (default 5)");
        o_seed = cmd->add_option("--seed", seed, "master seed");
        o_out = cmd->add_option("--out", out, "output directory");
        o_min_prob = cmd->add_option("--min-prob", min_prob, "drop rows with prob below this");
        o_assoc_token = cmd->add_option("--assoc-token", assoc_token, "association kind token");
        o_comm_token = cmd->add_option("--comm-token", comm_token, "communication kind token");
        o_n_nodes = cmd->add_option("--nodes", n_nodes, "declared node count (default inferred)");
    }

    static bool given(const CLI::Option* o) { return o && o->count() > 0; }

    RunConfig to_config() const {
        RunConfig rc;
        if (!config_path.empty()) rc = load_run_config(config_path);
        if (given(o_events)) rc.events_path = events;
        if (given(o_edges)) rc.edges_path = edges;
        if (given(o_synth)) rc.synth = load_synth_spec(synth_path);
        if (given(o_split_t)) rc.split_t = split_t;
        if (given(o_split_frac)) rc.split_frac = split_frac;
        if (given(o_message)) rc.diffusion.message = message_kind_from_string(message);
        if (given(o_selection)) rc.diffusion.selection = selection_from_string(selection);
        if (given(o_strength)) rc.diffusion.strength = strength_from_string(strength);
        if (given(o_hops)) rc.diffusion.hops = hops;
        if (given(o_mask_p)) rc.diffusion.mask_fraction = mask_p;
        if (given(o_aggregation)) rc.diffusion.aggregation_enabled = parse_switch(aggregation);
        if (given(o_diffusion)) rc.diffusion.diffusion_enabled = parse_switch(diffusion);
        if (given(o_skip_zero)) rc.diffusion.skip_zero_message = skip_zero_message;
        if (given(o_dim)) rc.d = dim;
        if (given(o_nonlin)) rc.nonlin = parse_nonlin(nonlin);
        if (given(o_lr)) rc.train.lr = lr;
        if (given(o_epochs)) rc.train.epochs = epochs;
        if (given(o_batch)) rc.train.batch_size = batch_size;
        if (given(o_clip)) rc.train.clip_norm = clip;
        if (given(o_survival)) rc.train.survival_samples = survival_samples;
        if (given(o_seed)) rc.seed = seed;
        if (given(o_out)) rc.out_dir = out;
        if (given(o_min_prob)) rc.parse.min_prob = min_prob;
        if (given(o_assoc_token)) rc.parse.assoc_token = assoc_token;
        if (given(o_comm_token)) rc.parse.comm_token = comm_token;
        if (given(o_n_nodes)) rc.parse.n_nodes = n_nodes;
        return rc;
    }

    static bool parse_switch(const std::string& s) {
        if (s == "on") return true;
        if (s == "off") return false;
        fail_usage("expected on|off, got '" + s + "'");
    }

    static Nonlin parse_nonlin(const std::string& s) {
        if (s == "sigmoid") return Nonlin::Sigmoid;
        if (s == "tanh") return Nonlin::Tanh;
        fail_usage("expected sigmoid|tanh, got '" + s + "'");
    }
};

template <typename T, typename Fn>
std::vector<T> map_tokens(const std::vector<std::string>& tokens, Fn fn) {
    std::vector<T> out;
    for (const std::string& t : tokens) out.push_back(fn(t));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamic-graph embeddings with aggregation-diffusion updates"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "generate a planted-community event stream");
    std::string synth_spec_path, synth_out;
    synth_cmd->add_option("--spec", synth_spec_path, "synth spec JSON")->required();
    synth_cmd->add_option("--out", synth_out, "output directory")->required();

    // train
    auto* train_cmd = app.add_subcommand("train", "train a model and write a checkpoint");
    RunOpts train_opts;
    train_opts.attach(train_cmd);

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a checkpoint on the test split");
    RunOpts eval_opts;
    eval_opts.attach(eval_cmd);
    std::string checkpoint_path;
    eval_cmd->add_option("--checkpoint", checkpoint_path, "checkpoint.bin from train")->required();

    // ablate
    auto* ablate_cmd = app.add_subcommand("ablate", "run a factorial ablation matrix");
    RunOpts ablate_opts;
    ablate_opts.attach(ablate_cmd);
    std::vector<std::string> ax_messages, ax_selections, ax_strengths;
    std::vector<int> ax_hops;
    std::vector<std::uint64_t> ax_seeds;
    int jobs = 1;
    ablate_cmd->add_option("--ablate-messages", ax_messages, "message axis values")
        ->delimiter(',');
    ablate_cmd->add_option("--ablate-selections", ax_selections, "selection axis values")
        ->delimiter(',');
    ablate_cmd->add_option("--ablate-strengths", ax_strengths, "strength axis values")
        ->delimiter(',');
    ablate_cmd->add_option("--ablate-hops", ax_hops, "hops axis values")->delimiter(',');
    ablate_cmd->add_option("--seeds", ax_seeds, "seeds, one full matrix each")->delimiter(',');
    ablate_cmd->add_option("--jobs", jobs, "parallel cells (default 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*synth_cmd) {
            cmd_synth(load_synth_spec(synth_spec_path), synth_out, std::cout);
        } else if (*train_cmd) {
            cmd_train(train_opts.to_config(), std::cout);
        } else if (*eval_cmd) {
            cmd_eval(checkpoint_path, eval_opts.to_config(), std::cout);
        } else if (*ablate_cmd) {
            AblationAxes axes;
            axes.messages = map_tokens<MessageKind>(ax_messages, message_kind_from_string);
            axes.selections = map_tokens<Selection>(ax_selections, selection_from_string);
            axes.strengths = map_tokens<Strength>(ax_strengths, strength_from_string);
            axes.hops = ax_hops;
            axes.seeds = ax_seeds;
            cmd_ablate(ablate_opts.to_config(), axes, jobs, std::cout);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
