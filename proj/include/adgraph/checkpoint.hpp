#pragma once

#include <string>

#include "adgraph/diffusion.hpp"
#include "adgraph/graph_state.hpp"
#include "adgraph/optimizer.hpp"
#include "adgraph/params.hpp"

namespace adgraph {

/// Everything needed to evaluate or resume a run: trained parameters with
/// optimizer moments, the post-training graph state, the mechanism
/// configuration and the generator states. Stored as a little-endian binary
/// blob with a magic tag and version; round-trips exactly.
struct Checkpoint {
    ModelParams params;
    AdamState adam;
    GraphState state;
    DiffusionConfig diffusion;
    std::uint64_t seed = 0;
    std::string survival_rng_state;
    std::string agg_mask_rng_state;
    std::string diff_mask_rng_state;
};

void save_checkpoint(const std::string& path, Checkpoint& ckpt);
Checkpoint load_checkpoint(const std::string& path);

/// Direct access to GraphState internals for serialization.
struct CheckpointIo;

}  // namespace adgraph
