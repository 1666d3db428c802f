#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adgraph/diffusion.hpp"

namespace adgraph {

struct RankEntry {
    int event_index = 0;
    int known = 0;        // the given endpoint
    int true_partner = 0; // the endpoint being ranked
    double rank = 0.0;    // tie groups share the average of their span
};

struct EvalReport {
    std::vector<RankEntry> ranks;
    double mar = 0.0;   // mean rank, in [1, N-1]
    double hit10 = 0.0; // fraction of ranks <= 10
    std::string config_fingerprint;
    std::uint64_t seed = 0;
};

/// Rank of `truth` among all candidates w != known, ordered by descending
/// intensity of a kind-k event between known and w (slot order preserved:
/// `known_first` says whether the known node occupies the first slot). Ties
/// share the average of their rank span.
double rank_candidates(const GraphState& state, const ModelParams& params, int known, int truth,
                       EventKind k, bool known_first);

/// Ranks both directions of one test event against the current state.
std::pair<RankEntry, RankEntry> rank_event(const GraphState& state, const ModelParams& params,
                                           const EventRecord& ev, int event_index);

/// Walks the test stream: each event is ranked in both directions against the
/// pre-event state, then applied with the configured mechanism (no gradient
/// recording). Deterministic given `seed`, which feeds the mask streams.
EvalReport evaluate_stream(GraphState state, ModelParams& params,
                           const std::vector<EventRecord>& test_events,
                           const DiffusionConfig& dcfg, std::uint64_t seed);

void write_eval_report_json(const std::string& path, const EvalReport& report);
void write_ranks_csv(const std::string& path, const EvalReport& report);

}  // namespace adgraph
