#include "adgraph/dataset.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "adgraph/common.hpp"

namespace adgraph {

DatasetStats dataset_stats(const Dataset& ds) {
    DatasetStats st;
    st.n_nodes = ds.n_nodes;
    st.n_initial_associations = static_cast<int>(ds.initial_associations.size());
    st.n_train = static_cast<int>(ds.train.size());
    st.n_test = static_cast<int>(ds.test.size());

    std::set<std::pair<int, int>> edges;
    auto canon = [](int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
    for (auto [a, b] : ds.initial_associations) edges.insert(canon(a, b));
    for (const EventRecord& ev : ds.train)
        if (ev.kind == EventKind::Association) edges.insert(canon(ev.u, ev.v));
    st.n_final_associations = static_cast<int>(edges.size());
    return st;
}

double mean_inter_event_interval(const std::vector<EventRecord>& events) {
    if (events.size() < 2) return 1.0;
    double span = events.back().t - events.front().t;
    if (span <= 0.0) return 1.0;
    return span / static_cast<double>(events.size() - 1);
}

void validate_dataset(const Dataset& ds) {
    if (ds.n_nodes <= 0) fail_data("dataset: n_nodes must be positive");
    auto check_events = [&](const std::vector<EventRecord>& evs, const std::string& which) {
        double prev = 0.0;
        bool first = true;
        for (const EventRecord& ev : evs) {
            if (ev.u == ev.v) fail_data("dataset: self-event in " + which);
            if (ev.u < 0 || ev.v < 0 || ev.u >= ds.n_nodes || ev.v >= ds.n_nodes)
                fail_data("dataset: node id out of range in " + which);
            if (ev.t < 0.0) fail_data("dataset: negative timestamp in " + which);
            if (!first && ev.t < prev) fail_data("dataset: " + which + " not time-sorted");
            prev = ev.t;
            first = false;
        }
    };
    check_events(ds.train, "train");
    check_events(ds.test, "test");
    if (!ds.train.empty() && !ds.test.empty() && ds.train.back().t > ds.test.front().t)
        fail_data("dataset: train events overlap test events in time");
    for (auto [a, b] : ds.initial_associations) {
        if (a == b) fail_data("dataset: self-loop in initial associations");
        if (a < 0 || b < 0 || a >= ds.n_nodes || b >= ds.n_nodes)
            fail_data("dataset: initial association endpoint out of range");
    }
}

}  // namespace adgraph
