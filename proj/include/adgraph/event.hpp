#pragma once

#include <cstdint>

namespace adgraph {

/// Long-term association events change the graph topology; short-term
/// communication events only move information along it.
enum class EventKind : std::uint8_t { Association = 0, Communication = 1 };

/// One timestamped interaction between two distinct nodes.
struct EventRecord {
    int u = 0;
    int v = 0;
    double t = 0.0;
    EventKind kind = EventKind::Communication;

    bool operator==(const EventRecord&) const = default;
};

}  // namespace adgraph
