#include "adgraph/backbone.hpp"

#include <cmath>

#include "adgraph/common.hpp"

namespace adgraph {

Handle LiveEmbeddings::read(Tape& tape, const GraphState& state, int u) {
    auto it = live_.find(u);
    if (it != live_.end()) return it->second;
    Handle h = tape.constant(state.embedding(u));
    live_.emplace(u, h);
    return h;
}

void LiveEmbeddings::write(Tape& tape, GraphState& state, int u, Handle z) {
    auto vals = tape.val(z);
    auto row = state.embedding(u);
    std::copy(vals.begin(), vals.end(), row.begin());
    live_[u] = z;
}

Handle apply_nonlin(Tape& tape, const BoundParams& params, Handle x) {
    return params.nonlin == Nonlin::Sigmoid ? tape.sigmoid(x) : tape.tanh_act(x);
}

Handle aggregate_neighbors(Tape& tape, const GraphState& state, const BoundParams& params,
                           LiveEmbeddings& emb, int u, std::span<const int> neighbor_ids) {
    if (neighbor_ids.empty()) {
        std::vector<double> zeros(params.d, 0.0);
        return tape.constant(zeros);
    }
    std::vector<double> scores(neighbor_ids.size());
    for (std::size_t i = 0; i < neighbor_ids.size(); ++i)
        scores[i] = state.attention(u, neighbor_ids[i]);
    std::vector<double> weights = softmax(scores);

    std::vector<Handle> terms;
    terms.reserve(neighbor_ids.size());
    for (int r : neighbor_ids)
        terms.push_back(tape.affine(params.w_neighbor, emb.read(tape, state, r)));
    return tape.weighted_sum(terms, weights);
}

Handle update_interacting_node(Tape& tape, const GraphState& state, const BoundParams& params,
                               LiveEmbeddings& emb, int u, double t, Handle aggregated) {
    const double last = state.last_event_time(u);
    if (t < last) fail_numeric("update_interacting_node: event time precedes node clock");
    const double dt_scaled = (t - last) / state.time_scale();

    Handle self_term = tape.affine(params.w_self, emb.read(tape, state, u));
    Handle drift = tape.scale(params.w_time, dt_scaled);
    Handle pre = tape.add(self_term, drift);
    if (aggregated.valid()) pre = tape.add(pre, tape.affine(params.w_agg, aggregated));
    return apply_nonlin(tape, params, pre);
}

Handle conditional_intensity(Tape& tape, const GraphState& state, const BoundParams& params,
                             LiveEmbeddings& emb, int u, int v, EventKind k) {
    if (u == v) fail_numeric("conditional_intensity: u == v");
    const int ki = ModelParams::kind_index(k);
    Handle zu = emb.read(tape, state, u);
    Handle zv = emb.read(tape, state, v);
    Handle s = tape.add(tape.dot_slice(params.compat[ki], 0, zu),
                        tape.dot_slice(params.compat[ki], params.d, zv));
    return tape.softplus_scaled(s, params.rate_scale[ki]);
}

double intensity_value(const GraphState& state, const ModelParams& params, int u, int v,
                       EventKind k) {
    if (u == v) fail_numeric("intensity_value: u == v");
    const int ki = ModelParams::kind_index(k);
    const Vec& c = params.compat[ki];
    auto zu = state.embedding(u);
    auto zv = state.embedding(v);
    const int d = params.d;
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += c[i] * zu[i];
    for (int i = 0; i < d; ++i) s += c[d + i] * zv[i];
    return softplus_scaled(s, params.rate_scale(k));
}

namespace {

// Renormalizes row j over its current neighbors to sum to one, flooring
// negative intermediates at zero. Non-neighbor entries stay zero.
void renormalize_row(GraphState& state, int j) {
    auto nbrs = state.neighbors(j);
    if (nbrs.empty()) return;
    double sum = 0.0;
    for (int r : nbrs) {
        double s = state.attention(j, r);
        if (s < 0.0) {
            s = 0.0;
            state.set_attention(j, r, 0.0);
        }
        sum += s;
    }
    if (sum <= 0.0) {
        const double share = 1.0 / static_cast<double>(nbrs.size());
        for (int r : nbrs) state.set_attention(j, r, share);
        return;
    }
    for (int r : nbrs) state.set_attention(j, r, state.attention(j, r) / sum);
}

}  // namespace

void update_attention(GraphState& state, int u, int v, EventKind kind, double lambda_value,
                      int prev_degree_u, int prev_degree_v) {
    if (kind == EventKind::Communication && !state.adjacent(u, v)) return;

    const int prev_deg[2] = {prev_degree_u, prev_degree_v};
    const int pair[2][2] = {{u, v}, {v, u}};
    for (int side = 0; side < 2; ++side) {
        const int j = pair[side][0];
        const int i = pair[side][1];
        if (kind == EventKind::Association) {
            const int deg_new = state.degree(j);
            const int deg_old = prev_deg[side];
            const double share_new = 1.0 / static_cast<double>(deg_new);
            const double share_old = deg_old > 0 ? 1.0 / static_cast<double>(deg_old) : 0.0;
            const double shift = share_old - share_new;
            for (int r : state.neighbors(j))
                if (r != i) state.set_attention(j, r, state.attention(j, r) - shift);
            state.set_attention(j, i, share_new + lambda_value);
        } else {
            state.set_attention(j, i, state.attention(j, i) + lambda_value);
        }
        renormalize_row(state, j);
    }
}

}  // namespace adgraph
