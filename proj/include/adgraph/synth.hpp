#pragma once

#include <string>
#include <vector>

#include "adgraph/dataset.hpp"

namespace adgraph {

/// Generates a planted-community Poisson event stream. All events come back
/// in the train slot (callers split chronologically as needed); the initial
/// association list is empty — structure emerges from association events.
/// Deterministic given spec.seed.
Dataset synthesize_stream(const SynthSpec& spec);

/// Community of a node under the generator's contiguous-block assignment.
int synth_community(const SynthSpec& spec, int node);

/// Aggregate event rate (all pairs combined) of the homogeneous process,
/// ignoring any session focus.
double synth_total_rate(const SynthSpec& spec);

/// Long-run mean event rate, averaging over the focus rotation; equals
/// synth_total_rate for homogeneous specs.
double synth_mean_rate(const SynthSpec& spec);

SynthSpec load_synth_spec(const std::string& path);
void save_synth_spec(const std::string& path, const SynthSpec& spec);

}  // namespace adgraph
