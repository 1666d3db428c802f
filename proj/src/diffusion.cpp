#include "adgraph/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "adgraph/common.hpp"

namespace adgraph {

void DiffusionConfig::validate() const {
    if (hops < 1) fail_usage("diffusion config: hops must be >= 1");
    if (mask_fraction < 0.0 || mask_fraction > 1.0)
        fail_usage("diffusion config: mask fraction must be in [0,1]");
}

std::string to_string(MessageKind k) {
    switch (k) {
    case MessageKind::Node: return "node";
    case MessageKind::Delta: return "delta";
    case MessageKind::Edge: return "edge";
    }
    return "?";
}

std::string to_string(Selection s) {
    switch (s) {
    case Selection::Base: return "base";
    case Selection::IncludePartner: return "v";
    case Selection::MaskAggregation: return "alpha";
    case Selection::MaskDiffusion: return "beta";
    case Selection::MaskBoth: return "gamma";
    case Selection::MaskEarliest: return "omega";
    }
    return "?";
}

std::string to_string(Strength s) { return s == Strength::Uniform ? "uniform" : "attn"; }

MessageKind message_kind_from_string(const std::string& s) {
    if (s == "node") return MessageKind::Node;
    if (s == "delta") return MessageKind::Delta;
    if (s == "edge") return MessageKind::Edge;
    fail_usage("unknown message kind '" + s + "' (expected node|delta|edge)");
}

Selection selection_from_string(const std::string& s) {
    if (s == "base") return Selection::Base;
    if (s == "v") return Selection::IncludePartner;
    if (s == "alpha") return Selection::MaskAggregation;
    if (s == "beta") return Selection::MaskDiffusion;
    if (s == "gamma") return Selection::MaskBoth;
    if (s == "omega") return Selection::MaskEarliest;
    fail_usage("unknown selection '" + s + "' (expected base|v|alpha|beta|gamma|omega)");
}

Strength strength_from_string(const std::string& s) {
    if (s == "uniform") return Strength::Uniform;
    if (s == "attn") return Strength::Attention;
    fail_usage("unknown strength '" + s + "' (expected uniform|attn)");
}

std::string diffusion_config_to_json(const DiffusionConfig& cfg) {
    nlohmann::json j{{"message", to_string(cfg.message)},
                     {"hops", cfg.hops},
                     {"selection", to_string(cfg.selection)},
                     {"strength", to_string(cfg.strength)},
                     {"mask_fraction", cfg.mask_fraction},
                     {"aggregation", cfg.aggregation_enabled},
                     {"diffusion", cfg.diffusion_enabled},
                     {"skip_zero_message", cfg.skip_zero_message}};
    return j.dump();
}

DiffusionConfig diffusion_config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail_data(std::string("bad diffusion config JSON: ") + e.what());
    }
    DiffusionConfig cfg;
    cfg.message = message_kind_from_string(j.value("message", to_string(cfg.message)));
    cfg.hops = j.value("hops", cfg.hops);
    cfg.selection = selection_from_string(j.value("selection", to_string(cfg.selection)));
    cfg.strength = strength_from_string(j.value("strength", to_string(cfg.strength)));
    cfg.mask_fraction = j.value("mask_fraction", cfg.mask_fraction);
    cfg.aggregation_enabled = j.value("aggregation", cfg.aggregation_enabled);
    cfg.diffusion_enabled = j.value("diffusion", cfg.diffusion_enabled);
    cfg.skip_zero_message = j.value("skip_zero_message", cfg.skip_zero_message);
    cfg.validate();
    return cfg;
}

MaskRng MaskRng::for_training(std::uint64_t master_seed) {
    return {Rng(derive_seed(master_seed, kSeedAggMask)),
            Rng(derive_seed(master_seed, kSeedDiffMask))};
}

MaskRng MaskRng::for_evaluation(std::uint64_t master_seed) {
    return {Rng(derive_seed(master_seed, kSeedEvalAggMask)),
            Rng(derive_seed(master_seed, kSeedEvalDiffMask))};
}

DiffusionMessage make_message(Tape& tape, const BoundParams& params, MessageKind kind, int u,
                              int v, Handle z_now, Handle z_prev, Handle partner_now) {
    DiffusionMessage msg;
    msg.origin = u;
    msg.partner = v;
    switch (kind) {
    case MessageKind::Node:
        msg.m = z_now;
        break;
    case MessageKind::Delta:
        msg.m = tape.sub(z_now, z_prev);
        break;
    case MessageKind::Edge: {
        Handle pre = tape.add(tape.affine(params.w_edge_self, z_now),
                              tape.affine(params.w_edge_partner, partner_now));
        msg.m = apply_nonlin(tape, params, pre);
        break;
    }
    }
    return msg;
}

namespace {

// Removes the floor(p * n) entries whose first association with j is oldest.
// Candidates that were never directly associated with j (multi-hop targets)
// are treated as newest and survive longest. Ties break on node id.
void drop_earliest(const GraphState& state, int j, double p, std::vector<int>& candidates) {
    const int n_drop = static_cast<int>(std::floor(p * static_cast<double>(candidates.size())));
    if (n_drop <= 0) return;
    std::vector<std::pair<double, int>> aged;
    aged.reserve(candidates.size());
    for (int r : candidates) {
        double t = state.edge_time(j, r);
        aged.emplace_back(t < 0.0 ? std::numeric_limits<double>::max() : t, r);
    }
    std::sort(aged.begin(), aged.end());
    for (int i = 0; i < n_drop; ++i) std::erase(candidates, aged[i].second);
}

void drop_bernoulli(Rng& rng, double p, std::vector<int>& candidates) {
    std::vector<int> kept;
    kept.reserve(candidates.size());
    for (int r : candidates)
        if (!rng.bernoulli(p)) kept.push_back(r);
    candidates = std::move(kept);
}

}  // namespace

std::vector<int> select_targets(const GraphState& state, int u, int v,
                                const DiffusionConfig& config, MaskRng& rng) {
    if (u == v) fail_numeric("select_targets: u == v");
    std::vector<int> targets;
    if (config.selection == Selection::IncludePartner) {
        targets = state.khop_neighbors(u, config.hops);
    } else {
        const int exclude[1] = {v};
        targets = state.khop_neighbors(u, config.hops, exclude);
    }
    switch (config.selection) {
    case Selection::MaskDiffusion:
    case Selection::MaskBoth:
        drop_bernoulli(rng.diffusion, config.mask_fraction, targets);
        break;
    case Selection::MaskEarliest:
        drop_earliest(state, u, config.mask_fraction, targets);
        break;
    default:
        break;
    }
    return targets;
}

std::vector<int> select_aggregation_neighbors(const GraphState& state, int j,
                                              const DiffusionConfig& config, MaskRng& rng) {
    std::vector<int> nbrs = state.neighbors(j);
    switch (config.selection) {
    case Selection::MaskAggregation:
    case Selection::MaskBoth:
        drop_bernoulli(rng.aggregation, config.mask_fraction, nbrs);
        break;
    case Selection::MaskEarliest:
        drop_earliest(state, j, config.mask_fraction, nbrs);
        break;
    default:
        break;
    }
    return nbrs;
}

std::map<int, double> strength(const GraphState& state, int u, std::span<const int> targets,
                               Strength rule) {
    std::map<int, double> q;
    if (targets.empty()) return q;
    if (rule == Strength::Uniform) {
        for (int r : targets) q[r] = 1.0;
        return q;
    }
    // Attention entries exist only on edges; softmax over the 1-hop targets,
    // multi-hop targets fall back to uniform strength.
    std::vector<int> one_hop;
    for (int r : targets) {
        if (state.adjacent(u, r))
            one_hop.push_back(r);
        else
            q[r] = 1.0;
    }
    if (!one_hop.empty()) {
        std::vector<double> scores(one_hop.size());
        for (std::size_t i = 0; i < one_hop.size(); ++i) scores[i] = state.attention(u, one_hop[i]);
        std::vector<double> w = softmax(scores);
        for (std::size_t i = 0; i < one_hop.size(); ++i) q[one_hop[i]] = w[i];
    }
    return q;
}

void apply_diffusion(Tape& tape, GraphState& state, const BoundParams& params,
                     LiveEmbeddings& emb, const DiffusionMessage& msg,
                     std::span<const int> targets, const std::map<int, double>& strengths,
                     bool skip_zero_message) {
    if (targets.empty()) return;
    for (int r : targets)
        if (r == msg.origin) fail_numeric("apply_diffusion: origin among targets");
    if (skip_zero_message) {
        auto mv = tape.val(msg.m);
        if (std::all_of(mv.begin(), mv.end(), [](double x) { return x == 0.0; })) return;
    }
    Handle carried = tape.affine(params.w_diffusion, msg.m);
    for (int r : targets) {
        Handle z_r = emb.read(tape, state, r);
        Handle updated = apply_nonlin(tape, params, tape.axpy(z_r, carried, strengths.at(r)));
        emb.write(tape, state, r, updated);
    }
}

ProcessResult process_event(Tape& tape, GraphState& state, const BoundParams& params,
                            LiveEmbeddings& emb, const EventRecord& ev,
                            const DiffusionConfig& config, MaskRng& rng) {
    if (ev.t < state.now()) fail_numeric("process_event: out-of-order event");
    if (ev.u == ev.v) fail_data("process_event: self-event");
    config.validate();

    // Intensity of the observed event, from pre-event embeddings.
    Handle lambda = conditional_intensity(tape, state, params, emb, ev.u, ev.v, ev.kind);
    const double lambda_value = tape.scalar(lambda);

    // Aggregation step: both interacting nodes computed from the same
    // pre-event snapshot, then written together.
    const int nodes[2] = {ev.u, ev.v};
    Handle z_prev[2], z_post[2];
    for (int s = 0; s < 2; ++s) z_prev[s] = emb.read(tape, state, nodes[s]);
    for (int s = 0; s < 2; ++s) {
        Handle aggregated; // invalid = no aggregation term
        if (config.aggregation_enabled) {
            std::vector<int> nbrs = select_aggregation_neighbors(state, nodes[s], config, rng);
            if (!nbrs.empty())
                aggregated = aggregate_neighbors(tape, state, params, emb, nodes[s], nbrs);
        }
        z_post[s] = update_interacting_node(tape, state, params, emb, nodes[s], ev.t, aggregated);
    }
    for (int s = 0; s < 2; ++s) emb.write(tape, state, nodes[s], z_post[s]);

    // Diffusion step: each interacting node pushes its message outward,
    // sequentially (u first), so overlapping targets see u's update.
    if (config.diffusion_enabled) {
        for (int s = 0; s < 2; ++s) {
            const int j = nodes[s];
            const int partner = nodes[1 - s];
            DiffusionMessage msg = make_message(tape, params, config.message, j, partner,
                                                z_post[s], z_prev[s], z_post[1 - s]);
            std::vector<int> targets = select_targets(state, j, partner, config, rng);
            std::map<int, double> q = strength(state, j, targets, config.strength);
            apply_diffusion(tape, state, params, emb, msg, targets, q, config.skip_zero_message);
        }
    }

    const int prev_deg_u = state.degree(ev.u);
    const int prev_deg_v = state.degree(ev.v);
    if (ev.kind == EventKind::Association) state.apply_association(ev.u, ev.v, ev.t);
    update_attention(state, ev.u, ev.v, ev.kind, lambda_value, prev_deg_u, prev_deg_v);

    state.set_last_event_time(ev.u, ev.t);
    state.set_last_event_time(ev.v, ev.t);
    state.advance_clock(ev.t);
    return {lambda, lambda_value};
}

}  // namespace adgraph
