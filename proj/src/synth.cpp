#include "adgraph/synth.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "adgraph/common.hpp"
#include "adgraph/rng.hpp"

namespace adgraph {

namespace {

void validate_spec(const SynthSpec& spec) {
    if (spec.n_nodes < 2) fail_usage("synth: n_nodes must be >= 2");
    if (spec.n_communities < 1 || spec.n_communities > spec.n_nodes)
        fail_usage("synth: n_communities must be in [1, n_nodes]");
    if (spec.intra_rate < 0.0 || spec.inter_rate < 0.0) fail_usage("synth: rates must be >= 0");
    if (spec.association_prob < 0.0 || spec.association_prob > 1.0)
        fail_usage("synth: association_prob must be in [0,1]");
    if (spec.horizon <= 0.0) fail_usage("synth: horizon must be positive");
    if (spec.focus_factor < 1.0) fail_usage("synth: focus_factor must be >= 1");
    if (spec.focus_factor > 1.0 && spec.session_length <= 0.0)
        fail_usage("synth: focus_factor > 1 requires a positive session_length");
}

}  // namespace

int synth_community(const SynthSpec& spec, int node) {
    // Contiguous blocks; the first (n_nodes % n_communities) blocks get one
    // extra node.
    int base = spec.n_nodes / spec.n_communities;
    int extra = spec.n_nodes % spec.n_communities;
    int threshold = (base + 1) * extra;
    if (node < threshold) return node / (base + 1);
    return extra + (node - threshold) / base;
}

double synth_total_rate(const SynthSpec& spec) {
    long intra_pairs = 0, inter_pairs = 0;
    for (int a = 0; a < spec.n_nodes; ++a)
        for (int b = a + 1; b < spec.n_nodes; ++b)
            (synth_community(spec, a) == synth_community(spec, b) ? intra_pairs : inter_pairs)++;
    return static_cast<double>(intra_pairs) * spec.intra_rate +
           static_cast<double>(inter_pairs) * spec.inter_rate;
}

double synth_mean_rate(const SynthSpec& spec) {
    if (spec.focus_factor <= 1.0) return synth_total_rate(spec);
    double sum = 0.0;
    for (int hot = 0; hot < spec.n_communities; ++hot) {
        double rate = 0.0;
        for (int a = 0; a < spec.n_nodes; ++a)
            for (int b = a + 1; b < spec.n_nodes; ++b) {
                const int ca = synth_community(spec, a), cb = synth_community(spec, b);
                if (ca != cb)
                    rate += spec.inter_rate;
                else
                    rate += ca == hot ? spec.intra_rate * spec.focus_factor : spec.intra_rate;
            }
        sum += rate;
    }
    return sum / static_cast<double>(spec.n_communities);
}

Dataset synthesize_stream(const SynthSpec& spec) {
    validate_spec(spec);

    std::vector<std::pair<int, int>> inter_pairs;
    // Intra pairs bucketed by community, so a session can re-weight one
    // community without rescanning all pairs.
    std::vector<std::vector<std::pair<int, int>>> intra_by_comm(spec.n_communities);
    for (int a = 0; a < spec.n_nodes; ++a)
        for (int b = a + 1; b < spec.n_nodes; ++b) {
            const int ca = synth_community(spec, a), cb = synth_community(spec, b);
            if (ca == cb)
                intra_by_comm[ca].emplace_back(a, b);
            else
                inter_pairs.emplace_back(a, b);
        }

    std::size_t n_intra = 0;
    for (const auto& bucket : intra_by_comm) n_intra += bucket.size();
    const double inter_total = static_cast<double>(inter_pairs.size()) * spec.inter_rate;
    if (static_cast<double>(n_intra) * spec.intra_rate + inter_total <= 0.0)
        fail_usage("synth: total event rate is zero");

    const bool bursty = spec.focus_factor > 1.0;
    // Per-community intra totals for a given hot community.
    const auto intra_totals = [&](int hot) {
        std::vector<double> totals(spec.n_communities);
        for (int c = 0; c < spec.n_communities; ++c) {
            totals[c] = static_cast<double>(intra_by_comm[c].size()) * spec.intra_rate;
            if (bursty && c == hot) totals[c] *= spec.focus_factor;
        }
        return totals;
    };

    Rng rng(derive_seed(spec.seed, kSeedSynth));
    Dataset ds;
    ds.n_nodes = spec.n_nodes;

    // The session counter is integral; deriving it from t by division would
    // re-round at boundaries.
    long session_idx = 0;
    double t = 0.0;
    while (true) {
        const int hot = bursty ? static_cast<int>(session_idx % spec.n_communities) : 0;
        std::vector<double> totals = intra_totals(hot);
        double total_rate = inter_total;
        for (double x : totals) total_rate += x;

        double gap = rng.exponential(total_rate);
        if (bursty) {
            // Piecewise-constant rate: a draw that crosses the session
            // boundary is discarded and the clock restarts at the boundary
            // (valid by memorylessness of the exponential).
            const double session_end = static_cast<double>(session_idx + 1) * spec.session_length;
            if (t + gap > session_end && session_end <= spec.horizon) {
                t = session_end;
                ++session_idx;
                continue;
            }
        }
        t += gap;
        if (t > spec.horizon) break;

        double pick = rng.uniform() * total_rate;
        int community = -1;  // -1 means an inter-community event
        for (int c = 0; c < spec.n_communities; ++c) {
            if (pick < totals[c]) {
                community = c;
                break;
            }
            pick -= totals[c];
        }
        const auto& pool = community >= 0 ? intra_by_comm[community] : inter_pairs;
        auto [a, b] = pool[rng.uniform_int(0, static_cast<int>(pool.size()) - 1)];
        if (rng.bernoulli(0.5)) std::swap(a, b);
        EventRecord ev;
        ev.u = a;
        ev.v = b;
        ev.t = t;
        ev.kind = (community >= 0 && rng.bernoulli(spec.association_prob))
                      ? EventKind::Association
                      : EventKind::Communication;
        ds.train.push_back(ev);
    }
    // Streams are epoch-normalized like parsed files, so synth -> write ->
    // parse round-trips exactly.
    if (!ds.train.empty()) {
        const double epoch = ds.train.front().t;
        for (EventRecord& ev : ds.train) ev.t -= epoch;
    }
    ds.time_scale = mean_inter_event_interval(ds.train);
    return ds;
}

SynthSpec load_synth_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_data("cannot open synth spec: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail_data("bad synth spec JSON in " + path + ": " + e.what());
    }
    SynthSpec spec;
    spec.n_nodes = j.value("n_nodes", spec.n_nodes);
    spec.n_communities = j.value("n_communities", spec.n_communities);
    spec.intra_rate = j.value("intra_rate", spec.intra_rate);
    spec.inter_rate = j.value("inter_rate", spec.inter_rate);
    spec.association_prob = j.value("association_prob", spec.association_prob);
    spec.horizon = j.value("horizon", spec.horizon);
    spec.seed = j.value("seed", spec.seed);
    spec.focus_factor = j.value("focus_factor", spec.focus_factor);
    spec.session_length = j.value("session_length", spec.session_length);
    validate_spec(spec);
    return spec;
}

void save_synth_spec(const std::string& path, const SynthSpec& spec) {
    nlohmann::json j{{"n_nodes", spec.n_nodes},
                     {"n_communities", spec.n_communities},
                     {"intra_rate", spec.intra_rate},
                     {"inter_rate", spec.inter_rate},
                     {"association_prob", spec.association_prob},
                     {"horizon", spec.horizon},
                     {"seed", spec.seed},
                     {"focus_factor", spec.focus_factor},
                     {"session_length", spec.session_length}};
    std::ofstream out(path);
    if (!out) fail_data("cannot write synth spec: " + path);
    out << j.dump(2) << '\n';
}

}  // namespace adgraph
