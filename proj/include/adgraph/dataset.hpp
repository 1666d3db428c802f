#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "adgraph/event.hpp"

namespace adgraph {

/// An event stream split chronologically, plus the associations that exist
/// before the stream starts.
struct Dataset {
    int n_nodes = 0;
    std::vector<std::pair<int, int>> initial_associations;
    std::vector<EventRecord> train;
    std::vector<EventRecord> test;
    /// Mean inter-event interval of the train stream; used to normalize the
    /// elapsed-time drive so raw time units never saturate the nonlinearity.
    double time_scale = 1.0;
};

/// Parameters of the planted-community Poisson stream generator. Node pairs
/// inside a community emit events at intra_rate, pairs straddling communities
/// at inter_rate (both per pair per unit time). Intra-community events become
/// associations with probability association_prob; cross-community events are
/// always communications.
///
/// With focus_factor > 1 the stream is bursty: communities take turns being
/// "hot" in round-robin sessions of session_length time units, and the hot
/// community's intra rate is multiplied by focus_factor. This plants a
/// time-varying activity signal on top of the community structure; at the
/// default focus_factor = 1 the stream is the plain homogeneous process.
struct SynthSpec {
    int n_nodes = 30;
    int n_communities = 3;
    double intra_rate = 1.0;
    double inter_rate = 0.025;
    double association_prob = 0.05;
    double horizon = 10.0;
    std::uint64_t seed = 1;
    double focus_factor = 1.0;
    double session_length = 0.0;
};

struct DatasetStats {
    int n_nodes = 0;
    int n_initial_associations = 0;
    int n_final_associations = 0;
    int n_train = 0;
    int n_test = 0;
};

DatasetStats dataset_stats(const Dataset& ds);

/// Mean gap between consecutive events; 1.0 when fewer than two events or a
/// zero time span.
double mean_inter_event_interval(const std::vector<EventRecord>& events);

/// Validates Dataset invariants, throwing Error(Data) on violation.
void validate_dataset(const Dataset& ds);

}  // namespace adgraph
