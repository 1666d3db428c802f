#pragma once

#include <optional>
#include <string>

#include "adgraph/diffusion.hpp"
#include "adgraph/parse.hpp"
#include "adgraph/synth.hpp"
#include "adgraph/trainer.hpp"

namespace adgraph {

/// Complete description of one run. Serialized to run.json next to every
/// artifact so that re-running from that file reproduces the outputs exactly.
struct RunConfig {
    // Exactly one source: CSV paths or a synthetic spec.
    std::optional<std::string> events_path;
    std::optional<std::string> edges_path;
    std::optional<SynthSpec> synth;

    // Chronological split: explicit boundary wins over fraction.
    std::optional<double> split_t;
    double split_frac = 0.8;

    ParseOptions parse;
    TrainConfig train;
    DiffusionConfig diffusion;
    int d = 32;
    Nonlin nonlin = Nonlin::Sigmoid;
    std::uint64_t seed = 1;
    std::string out_dir;

    void validate() const;
    /// Builds the dataset from whichever source is configured.
    Dataset load_dataset(ParseReport& report) const;
};

std::string run_config_to_json(const RunConfig& rc);
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::string& path);
void save_run_config(const std::string& path, const RunConfig& rc);

/// FNV-1a hash of the canonical JSON form, hex-encoded. Seed and output
/// directory are excluded so one fingerprint names one model configuration.
std::string config_fingerprint(const RunConfig& rc);

}  // namespace adgraph
