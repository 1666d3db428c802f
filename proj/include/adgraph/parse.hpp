#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "adgraph/dataset.hpp"

namespace adgraph {

/// Ingestion knobs for events.csv (header `u,v,t,kind[,prob]`).
struct ParseOptions {
    /// Tokens mapped to each kind. Datasets that encode kinds as integers can
    /// remap here (e.g. assoc_token="0", comm_token="1").
    std::string assoc_token = "assoc";
    std::string comm_token = "comm";
    /// Rows whose optional `prob` column is below this are silently filtered
    /// (a preprocessing knob, not a parse error).
    double min_prob = 0.0;
    /// When set, node ids must be < n_nodes; otherwise N is inferred as
    /// 1 + max id seen across events and initial edges.
    std::optional<int> n_nodes;
};

struct ParseReport {
    std::vector<std::pair<int, std::string>> rejected; // (line number, reason)
    std::vector<std::string> warnings;
    int accepted = 0;
    int filtered = 0; // dropped by min_prob, not counted as rejected
};

/// Reads and validates an event CSV. Events come back stably sorted by time
/// (ties keep file order) and with timestamps normalized to seconds since the
/// first event. Throws Error(Data) if the file is unreadable, the header is
/// malformed, or more than 10% of data rows are rejected.
std::vector<EventRecord> parse_events(const std::string& path, const ParseOptions& opts,
                                      ParseReport& report);

/// Reads an initial-association edge list CSV (header `u,v`).
std::vector<std::pair<int, int>> parse_edges(const std::string& path, const ParseOptions& opts,
                                             ParseReport& report);

/// train = events with t < boundary, test = the rest; nothing is dropped.
std::pair<std::vector<EventRecord>, std::vector<EventRecord>>
split_chronological(const std::vector<EventRecord>& events, double boundary_t,
                    std::vector<std::string>* warnings = nullptr);

/// Assembles a Dataset from parsed pieces: infers or checks N, splits at
/// boundary_t, and computes the train time scale.
Dataset assemble_dataset(std::vector<EventRecord> events,
                         std::vector<std::pair<int, int>> initial_edges, double boundary_t,
                         const ParseOptions& opts, ParseReport& report);

void write_events_csv(const std::string& path, const std::vector<EventRecord>& events,
                      const ParseOptions& opts = {});
void write_edges_csv(const std::string& path, const std::vector<std::pair<int, int>>& edges);

}  // namespace adgraph
