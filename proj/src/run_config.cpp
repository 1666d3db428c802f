#include "adgraph/run_config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "adgraph/common.hpp"

namespace adgraph {

namespace {

using nlohmann::json;

json synth_to_json(const SynthSpec& s) {
    return json{{"n_nodes", s.n_nodes},
                {"n_communities", s.n_communities},
                {"intra_rate", s.intra_rate},
                {"inter_rate", s.inter_rate},
                {"association_prob", s.association_prob},
                {"horizon", s.horizon},
                {"seed", s.seed},
                {"focus_factor", s.focus_factor},
                {"session_length", s.session_length}};
}

SynthSpec synth_from_json(const json& j) {
    SynthSpec s;
    s.n_nodes = j.value("n_nodes", s.n_nodes);
    s.n_communities = j.value("n_communities", s.n_communities);
    s.intra_rate = j.value("intra_rate", s.intra_rate);
    s.inter_rate = j.value("inter_rate", s.inter_rate);
    s.association_prob = j.value("association_prob", s.association_prob);
    s.horizon = j.value("horizon", s.horizon);
    s.seed = j.value("seed", s.seed);
    s.focus_factor = j.value("focus_factor", s.focus_factor);
    s.session_length = j.value("session_length", s.session_length);
    return s;
}

}  // namespace

void RunConfig::validate() const {
    const bool has_files = events_path.has_value();
    const bool has_synth = synth.has_value();
    if (has_files == has_synth)
        fail_usage("run config: exactly one of events file or synth spec must be given");
    if (d < 1) fail_usage("run config: embedding dim must be >= 1");
    if ((split_frac <= 0.0 || split_frac >= 1.0) && !split_t)
        fail_usage("run config: split fraction must be in (0,1)");
    train.validate();
    diffusion.validate();
}

Dataset RunConfig::load_dataset(ParseReport& report) const {
    validate();
    if (synth) {
        Dataset all = synthesize_stream(*synth);
        if (all.train.empty()) fail_data("synth spec produced an empty stream");
        const double boundary = split_t ? *split_t : split_frac * synth->horizon;
        Dataset ds;
        ds.n_nodes = all.n_nodes;
        auto [train_evs, test_evs] = split_chronological(all.train, boundary, &report.warnings);
        ds.train = std::move(train_evs);
        ds.test = std::move(test_evs);
        ds.time_scale = mean_inter_event_interval(ds.train);
        validate_dataset(ds);
        return ds;
    }

    auto events = parse_events(*events_path, parse, report);
    std::vector<std::pair<int, int>> edges;
    if (edges_path) edges = parse_edges(*edges_path, parse, report);
    if (events.empty()) fail_data("no events parsed from " + *events_path);
    const double boundary =
        split_t ? *split_t
                : events.front().t + split_frac * (events.back().t - events.front().t);
    return assemble_dataset(std::move(events), std::move(edges), boundary, parse, report);
}

std::string run_config_to_json(const RunConfig& rc) {
    json j;
    if (rc.events_path) j["events"] = *rc.events_path;
    if (rc.edges_path) j["edges"] = *rc.edges_path;
    if (rc.synth) j["synth"] = synth_to_json(*rc.synth);
    if (rc.split_t) j["split_t"] = *rc.split_t;
    j["split_frac"] = rc.split_frac;
    j["parse"] = {{"assoc_token", rc.parse.assoc_token},
                  {"comm_token", rc.parse.comm_token},
                  {"min_prob", rc.parse.min_prob}};
    if (rc.parse.n_nodes) j["parse"]["n_nodes"] = *rc.parse.n_nodes;
    j["train"] = {{"lr", rc.train.lr},
                  {"epochs", rc.train.epochs},
                  {"batch_size", rc.train.batch_size},
                  {"clip_norm", rc.train.clip_norm},
                  {"survival_samples", rc.train.survival_samples}};
    j["diffusion"] = json::parse(diffusion_config_to_json(rc.diffusion));
    j["d"] = rc.d;
    j["nonlin"] = rc.nonlin == Nonlin::Sigmoid ? "sigmoid" : "tanh";
    j["seed"] = rc.seed;
    j["out"] = rc.out_dir;
    return j.dump(2);
}

RunConfig run_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail_data(std::string("bad run config JSON: ") + e.what());
    }
    RunConfig rc;
    if (j.contains("events")) rc.events_path = j["events"].get<std::string>();
    if (j.contains("edges")) rc.edges_path = j["edges"].get<std::string>();
    if (j.contains("synth")) rc.synth = synth_from_json(j["synth"]);
    if (j.contains("split_t")) rc.split_t = j["split_t"].get<double>();
    rc.split_frac = j.value("split_frac", rc.split_frac);
    if (j.contains("parse")) {
        const json& p = j["parse"];
        rc.parse.assoc_token = p.value("assoc_token", rc.parse.assoc_token);
        rc.parse.comm_token = p.value("comm_token", rc.parse.comm_token);
        rc.parse.min_prob = p.value("min_prob", rc.parse.min_prob);
        if (p.contains("n_nodes")) rc.parse.n_nodes = p["n_nodes"].get<int>();
    }
    if (j.contains("train")) {
        const json& t = j["train"];
        rc.train.lr = t.value("lr", rc.train.lr);
        rc.train.epochs = t.value("epochs", rc.train.epochs);
        rc.train.batch_size = t.value("batch_size", rc.train.batch_size);
        rc.train.clip_norm = t.value("clip_norm", rc.train.clip_norm);
        rc.train.survival_samples = t.value("survival_samples", rc.train.survival_samples);
    }
    if (j.contains("diffusion")) rc.diffusion = diffusion_config_from_json(j["diffusion"].dump());
    rc.d = j.value("d", rc.d);
    if (j.value("nonlin", "sigmoid") == std::string("tanh")) rc.nonlin = Nonlin::Tanh;
    rc.seed = j.value("seed", rc.seed);
    rc.out_dir = j.value("out", rc.out_dir);
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_data("cannot open run config: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return run_config_from_json(ss.str());
}

void save_run_config(const std::string& path, const RunConfig& rc) {
    std::ofstream out(path);
    if (!out) fail_data("cannot write run config: " + path);
    out << run_config_to_json(rc) << '\n';
}

std::string config_fingerprint(const RunConfig& rc) {
    RunConfig canon = rc;
    canon.seed = 0;
    canon.out_dir.clear();
    const std::string text = run_config_to_json(canon);
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace adgraph
