#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "adgraph/graph_state.hpp"
#include "adgraph/params.hpp"
#include "adgraph/tape.hpp"

namespace adgraph {

/// Bridges GraphState embeddings and tape values during a recording scope.
/// Nodes updated inside the scope keep their handle here so later reads flow
/// gradients through the within-batch chain; untouched nodes enter as
/// constant leaves (truncated backprop at scope boundaries). Must be cleared
/// together with every Tape::reset().
class LiveEmbeddings {
public:
    Handle read(Tape& tape, const GraphState& state, int u);
    /// Copies the handle's value into the state row and remembers the handle.
    void write(Tape& tape, GraphState& state, int u, Handle z);
    void clear() { live_.clear(); }

private:
    std::unordered_map<int, Handle> live_;
};

/// Attention-weighted neighbor aggregation. `neighbor_ids` is the (possibly
/// masked) neighbor set to aggregate over; the weights are the softmax of the
/// state's attention row restricted to exactly that set. Empty set gives the
/// zero vector.
Handle aggregate_neighbors(Tape& tape, const GraphState& state, const BoundParams& params,
                           LiveEmbeddings& emb, int u, std::span<const int> neighbor_ids);

/// Interacting-node update from a pre-event snapshot:
///   sigma(w_agg * h + w_self * z_u + w_time * dt_scaled)
/// where dt_scaled = (t - last_event(u)) / time_scale. Pass an invalid
/// `aggregated` handle to drop the aggregation term (self-only variants and
/// isolated nodes). Returns the new embedding without writing it back.
Handle update_interacting_node(Tape& tape, const GraphState& state, const BoundParams& params,
                               LiveEmbeddings& emb, int u, double t, Handle aggregated);

/// Conditional intensity of a kind-k event between u and v, from current
/// embeddings: softplus of the pair compatibility, scaled per kind. Positive
/// for all finite inputs.
Handle conditional_intensity(Tape& tape, const GraphState& state, const BoundParams& params,
                             LiveEmbeddings& emb, int u, int v, EventKind k);

/// Plain-value intensity for ranking loops; identical arithmetic to the tape
/// form but with no arena traffic.
double intensity_value(const GraphState& state, const ModelParams& params, int u, int v,
                       EventKind k);

/// Post-event temporal-attention update. For association events the new
/// neighbor enters both rows with weight 1/deg + lambda and old mass is
/// shifted to the new uniform share; for communication events between
/// associated nodes the mutual entries grow by lambda. Affected rows are then
/// renormalized to sum to one over current neighbors (entries floored at
/// zero). Communication between non-neighbors changes nothing. Call after
/// adjacency has been updated, passing pre-event degrees.
void update_attention(GraphState& state, int u, int v, EventKind kind, double lambda_value,
                      int prev_degree_u, int prev_degree_v);

/// sigma or tanh per the model's configuration.
Handle apply_nonlin(Tape& tape, const BoundParams& params, Handle x);

}  // namespace adgraph
