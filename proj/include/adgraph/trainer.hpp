#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adgraph/dataset.hpp"
#include "adgraph/diffusion.hpp"
#include "adgraph/optimizer.hpp"

namespace adgraph {

struct TrainConfig {
    double lr = 0.0002;
    int epochs = 5;
    int batch_size = 200;
    double clip_norm = 100.0;
    int survival_samples = 5;
    std::uint64_t seed = 1;

    void validate() const;
};

struct EpochRow {
    int epoch = 0;
    double mean_loss = 0.0;
    double seconds = 0.0;
};

struct TrainReport {
    std::vector<EpochRow> epochs;
    std::string checkpoint_path; // filled by the CLI after saving
};

/// One sampled no-event pair for the survival estimate.
struct SurvivalSample {
    int a = 0;
    int b = 0;
};

/// Draws `count` uniform ordered pairs distinct from (u, v) with a != b.
std::vector<SurvivalSample> draw_survival_samples(Rng& rng, int n_nodes, int u, int v, int count);

/// Event negative log-likelihood with a sampled survival estimate, computed
/// from the pre-event state:
///   -log lambda(u, v, k) + dt/time_scale * mean over samples and kinds of
///   lambda(a, b, k').
/// With no samples the loss is exactly -log lambda.
Handle event_loss(Tape& tape, const GraphState& state, const BoundParams& params,
                  LiveEmbeddings& emb, const EventRecord& ev,
                  std::span<const SurvivalSample> samples);

/// Convenience wrapper that draws the samples from `rng`.
Handle event_loss(Tape& tape, const GraphState& state, const BoundParams& params,
                  LiveEmbeddings& emb, const EventRecord& ev, Rng& rng, int survival_samples);

/// Replays the stream once, accumulating gradients over each batch and taking
/// one clipped adaptive step per batch. Embeddings entering a batch are
/// constants (truncated backprop at batch boundaries) and are carried across
/// batches. Returns the epoch's mean per-event loss.
double train_epoch(GraphState& state, ModelParams& params, AdamState& adam,
                   const std::vector<EventRecord>& train_events, const TrainConfig& tcfg,
                   const DiffusionConfig& dcfg, Rng& survival_rng, MaskRng& mask_rng,
                   int epoch_index);

/// Full training run: the graph state is rebuilt from the initial
/// associations at each epoch start, parameters persist across epochs. The
/// returned state is the post-replay state of the final epoch, ready for
/// evaluation.
struct TrainOutcome {
    GraphState final_state;
    TrainReport report;
    // Saved generator states, so a checkpoint can resume the exact streams.
    std::string survival_rng_state;
    std::string agg_mask_rng_state;
    std::string diff_mask_rng_state;
};
TrainOutcome train(const Dataset& ds, ModelParams& params, AdamState& adam,
                   const TrainConfig& tcfg, const DiffusionConfig& dcfg);

}  // namespace adgraph
