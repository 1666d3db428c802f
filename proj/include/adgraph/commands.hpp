#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "adgraph/evaluate.hpp"
#include "adgraph/run_config.hpp"

namespace adgraph {

/// Writes events.csv and initial_edges.csv generated from a synth spec.
void cmd_synth(const SynthSpec& spec, const std::string& out_dir, std::ostream& log);

/// Trains per the run config; writes run.json, training_curve.csv and
/// checkpoint.bin into the output directory. Returns the checkpoint path.
std::string cmd_train(const RunConfig& rc, std::ostream& log);

/// Evaluates a checkpoint against the test split of the configured dataset;
/// writes eval_report.json and ranks.csv. Returns the report.
EvalReport cmd_eval(const std::string& checkpoint_path, const RunConfig& rc, std::ostream& log);

struct AblationAxes {
    std::vector<MessageKind> messages;
    std::vector<Selection> selections;
    std::vector<Strength> strengths;
    std::vector<int> hops;
    std::vector<std::uint64_t> seeds;
};

struct AblationCell {
    std::string variant;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string error;
    double mar = 0.0;
    double hit10 = 0.0;
};

/// Full factorial over the given axes (empty axes collapse to the base
/// config's value). Each cell trains and evaluates independently; failures
/// mark the cell and the matrix continues. Writes summary.csv plus one
/// subdirectory per cell. `jobs` caps worker threads.
std::vector<AblationCell> cmd_ablate(const RunConfig& base, const AblationAxes& axes, int jobs,
                                     std::ostream& log);

void write_ablation_summary(const std::string& path, const std::vector<AblationCell>& cells);

}  // namespace adgraph
