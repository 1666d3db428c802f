#include "adgraph/graph_state.hpp"

#include <algorithm>
#include <deque>

#include "adgraph/common.hpp"
#include "adgraph/rng.hpp"

namespace adgraph {

GraphState GraphState::init(const Dataset& ds, int d, std::uint64_t seed) {
    if (ds.n_nodes <= 0) fail_data("GraphState::init: dataset has no nodes");
    if (d < 1) fail_usage("GraphState::init: embedding dim must be >= 1");

    GraphState st;
    st.n_ = ds.n_nodes;
    st.d_ = d;
    st.emb_.resize(static_cast<std::size_t>(st.n_) * d);
    st.adj_.assign(static_cast<std::size_t>(st.n_) * st.n_, 0);
    st.attn_.assign(static_cast<std::size_t>(st.n_) * st.n_, 0.0);
    st.edge_time_.assign(static_cast<std::size_t>(st.n_) * st.n_, -1.0);
    st.degree_.assign(st.n_, 0);
    st.last_event_.assign(st.n_, 0.0);
    st.time_scale_ = ds.time_scale;

    Rng rng(derive_seed(seed, kSeedEmbedding));
    const double half = 0.5 / static_cast<double>(d);
    for (double& x : st.emb_) x = rng.uniform(-half, half);

    for (auto [a, b] : ds.initial_associations) st.apply_association(a, b, 0.0);
    for (int u = 0; u < st.n_; ++u) {
        if (st.degree_[u] == 0) continue;
        const double share = 1.0 / static_cast<double>(st.degree_[u]);
        for (int v = 0; v < st.n_; ++v)
            if (st.adjacent(u, v)) st.attn_[st.idx(u, v)] = share;
    }
    return st;
}

std::vector<int> GraphState::neighbors(int u) const {
    std::vector<int> out;
    out.reserve(degree_[u]);
    for (int v = 0; v < n_; ++v)
        if (adj_[idx(u, v)]) out.push_back(v);
    return out;
}

std::vector<int> GraphState::khop_neighbors(int u, int k, std::span<const int> exclude) const {
    if (k < 1) fail_usage("khop_neighbors: k must be >= 1");
    std::vector<std::uint8_t> seen(n_, 0);
    seen[u] = 1;
    std::deque<std::pair<int, int>> frontier{{u, 0}};
    std::vector<int> out;
    while (!frontier.empty()) {
        auto [node, depth] = frontier.front();
        frontier.pop_front();
        if (depth == k) continue;
        for (int v = 0; v < n_; ++v) {
            if (!adj_[idx(node, v)] || seen[v]) continue;
            seen[v] = 1;
            out.push_back(v);
            frontier.emplace_back(v, depth + 1);
        }
    }
    for (int x : exclude) std::erase(out, x);
    std::sort(out.begin(), out.end());
    return out;
}

bool GraphState::apply_association(int u, int v, double t) {
    if (u == v) fail_data("apply_association: self-loop");
    if (adj_[idx(u, v)]) return false;
    adj_[idx(u, v)] = adj_[idx(v, u)] = 1;
    edge_time_[idx(u, v)] = edge_time_[idx(v, u)] = t;
    ++degree_[u];
    ++degree_[v];
    return true;
}

}  // namespace adgraph
