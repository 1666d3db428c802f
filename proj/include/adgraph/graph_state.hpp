#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adgraph/dataset.hpp"

namespace adgraph {

/// Mutable state of the evolving graph: node embeddings, symmetric adjacency,
/// temporal attention rows, per-node last-interaction times and the current
/// stream time. Exactly one event-processing loop mutates an instance;
/// read-only snapshots may be copied for parallel ranking.
///
/// Attention entries are stored densely and are zero wherever there is no
/// edge; consumers mask by adjacency.
class GraphState {
public:
    GraphState() = default;

    /// Builds state from a dataset's initial associations: embeddings drawn
    /// uniform in [-0.5/d, 0.5/d] from the seed, attention rows uniform
    /// 1/deg over neighbors, clocks at zero.
    static GraphState init(const Dataset& ds, int d, std::uint64_t seed);

    int n_nodes() const { return n_; }
    int dim() const { return d_; }
    double now() const { return now_; }
    double time_scale() const { return time_scale_; }
    double last_event_time(int u) const { return last_event_[u]; }

    std::span<double> embedding(int u) { return {emb_.data() + static_cast<std::size_t>(u) * d_, static_cast<std::size_t>(d_)}; }
    std::span<const double> embedding(int u) const { return {emb_.data() + static_cast<std::size_t>(u) * d_, static_cast<std::size_t>(d_)}; }

    bool adjacent(int u, int v) const { return adj_[idx(u, v)] != 0; }
    int degree(int u) const { return degree_[u]; }
    double attention(int u, int v) const { return attn_[idx(u, v)]; }
    void set_attention(int u, int v, double s) { attn_[idx(u, v)] = s; }
    /// Time the u-v edge first appeared; negative when the nodes were never
    /// associated.
    double edge_time(int u, int v) const { return edge_time_[idx(u, v)]; }

    /// Ascending list of r with an edge to u.
    std::vector<int> neighbors(int u) const;

    /// BFS ball of radius k around u, minus u itself and `exclude`; ascending.
    std::vector<int> khop_neighbors(int u, int k, std::span<const int> exclude = {}) const;

    /// Adds the undirected edge (topology only; the attention rule is applied
    /// by the event pipeline right after). Returns false if the edge already
    /// existed; the call is then a no-op.
    bool apply_association(int u, int v, double t);

    void set_last_event_time(int u, double t) { last_event_[u] = t; }
    void advance_clock(double t) { now_ = t; }

    bool operator==(const GraphState&) const = default;

    // Serialized in the run checkpoint; see checkpoint.hpp.
    friend struct CheckpointIo;

private:
    std::size_t idx(int u, int v) const { return static_cast<std::size_t>(u) * n_ + v; }

    int n_ = 0;
    int d_ = 0;
    std::vector<double> emb_;       // n x d row-major
    std::vector<std::uint8_t> adj_; // n x n symmetric, zero diagonal
    std::vector<double> attn_;      // n x n, nonzero only on edges
    std::vector<double> edge_time_; // n x n, -1 where no edge ever existed
    std::vector<int> degree_;
    std::vector<double> last_event_;
    double now_ = 0.0;
    double time_scale_ = 1.0;
};

}  // namespace adgraph
