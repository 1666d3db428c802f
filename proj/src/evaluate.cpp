#include "adgraph/evaluate.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "adgraph/common.hpp"

namespace adgraph {

double rank_candidates(const GraphState& state, const ModelParams& params, int known, int truth,
                       EventKind k, bool known_first) {
    const int n = state.n_nodes();
    if (n < 2) fail_data("rank_candidates: need at least two nodes");

    const double lam_true = known_first ? intensity_value(state, params, known, truth, k)
                                        : intensity_value(state, params, truth, known, k);
    int greater = 0, tied = 0;
    for (int w = 0; w < n; ++w) {
        if (w == known || w == truth) continue;
        const double lam = known_first ? intensity_value(state, params, known, w, k)
                                       : intensity_value(state, params, w, known, k);
        if (lam > lam_true)
            ++greater;
        else if (lam == lam_true)
            ++tied;
    }
    // truth occupies one of the tied positions greater+1 .. greater+tied+1.
    return static_cast<double>(greater) + 1.0 + static_cast<double>(tied) / 2.0;
}

std::pair<RankEntry, RankEntry> rank_event(const GraphState& state, const ModelParams& params,
                                           const EventRecord& ev, int event_index) {
    RankEntry a{event_index, ev.u, ev.v,
                rank_candidates(state, params, ev.u, ev.v, ev.kind, /*known_first=*/true)};
    RankEntry b{event_index, ev.v, ev.u,
                rank_candidates(state, params, ev.v, ev.u, ev.kind, /*known_first=*/false)};
    return {a, b};
}

EvalReport evaluate_stream(GraphState state, ModelParams& params,
                           const std::vector<EventRecord>& test_events,
                           const DiffusionConfig& dcfg, std::uint64_t seed) {
    if (test_events.empty()) fail_data("empty evaluation");
    if (state.n_nodes() < 2) fail_data("evaluate_stream: need at least two nodes");

    EvalReport report;
    report.seed = seed;
    Tape tape;
    tape.set_recording(false);
    LiveEmbeddings emb;
    MaskRng mask_rng = MaskRng::for_evaluation(seed);

    int index = 0;
    for (const EventRecord& ev : test_events) {
        auto [ru, rv] = rank_event(state, params, ev, index);
        report.ranks.push_back(ru);
        report.ranks.push_back(rv);
        process_event(tape, state, BoundParams::bind(tape, params), emb, ev, dcfg, mask_rng);
        tape.reset();
        emb.clear();
        ++index;
    }

    double sum = 0.0;
    int hits = 0;
    for (const RankEntry& r : report.ranks) {
        sum += r.rank;
        if (r.rank <= 10.0) ++hits;
    }
    report.mar = sum / static_cast<double>(report.ranks.size());
    report.hit10 = static_cast<double>(hits) / static_cast<double>(report.ranks.size());
    return report;
}

void write_eval_report_json(const std::string& path, const EvalReport& report) {
    nlohmann::json j{{"mar", report.mar},
                     {"hit10", report.hit10},
                     {"n_ranks", report.ranks.size()},
                     {"config_fingerprint", report.config_fingerprint},
                     {"seed", report.seed}};
    std::ofstream out(path);
    if (!out) fail_data("cannot write eval report: " + path);
    out << j.dump(2) << '\n';
}

void write_ranks_csv(const std::string& path, const EvalReport& report) {
    std::ofstream out(path);
    if (!out) fail_data("cannot write ranks csv: " + path);
    out << "event_index,known,true_partner,rank\n";
    out.precision(17);
    for (const RankEntry& r : report.ranks)
        out << r.event_index << ',' << r.known << ',' << r.true_partner << ',' << r.rank << '\n';
    if (!out) fail_data("write failed: " + path);
}

}  // namespace adgraph
