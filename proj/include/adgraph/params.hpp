#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "adgraph/event.hpp"
#include "adgraph/tape.hpp"
#include "adgraph/vec.hpp"

namespace adgraph {

enum class Nonlin : std::uint8_t { Sigmoid = 0, Tanh = 1 };

/// Trainable tensors of the model, with gradient slots of matching shape.
///
/// The per-kind intensity scale is stored as its logarithm so that positivity
/// survives unconstrained gradient steps; rate_scale() exponentiates.
struct ModelParams {
    int d = 0;
    Nonlin nonlin = Nonlin::Sigmoid;

    Mat w_agg;           // scales the aggregated neighborhood term
    Mat w_self;          // scales the node's own previous embedding
    Mat w_neighbor;      // applied to each neighbor embedding before attention
    Mat w_diffusion;     // applied to diffusion messages at the receiver
    Mat w_edge_self;     // edge-message weight on the sender's embedding
    Mat w_edge_partner;  // edge-message weight on the partner's embedding
    Vec w_time;          // elapsed-time drive direction
    std::array<double, 2> log_rate_scale{};  // per event kind
    std::array<Vec, 2> compat;               // per-kind pair compatibility, dim 2d

    // Gradient slots, same shapes.
    Mat g_w_agg, g_w_self, g_w_neighbor, g_w_diffusion, g_w_edge_self, g_w_edge_partner;
    Vec g_w_time;
    std::array<double, 2> g_log_rate_scale{};
    std::array<Vec, 2> g_compat;

    /// Allocates all tensors for embedding dim d and draws initial values
    /// uniform in +-1/sqrt(d) (log rate scales start at zero).
    static ModelParams init(int d, std::uint64_t seed, Nonlin nonlin = Nonlin::Sigmoid);

    double rate_scale(EventKind k) const;
    void zero_grads();
    std::size_t total_size() const;
    bool finite() const;

    /// Flat views over every tensor, in a fixed documented order. The
    /// optimizer, checkpoint writer and finite-difference oracle all walk
    /// parameters through this.
    std::vector<ParamView> tensors();

    static int kind_index(EventKind k) { return k == EventKind::Association ? 0 : 1; }
};

/// Tape leaves for one recording scope (one training batch or one value-mode
/// evaluation pass). Rebind after every Tape::reset().
struct BoundParams {
    Handle w_agg, w_self, w_neighbor, w_diffusion, w_edge_self, w_edge_partner, w_time;
    std::array<Handle, 2> rate_scale;  // exp(log scale), gradient flows to the log
    std::array<Handle, 2> compat;
    Nonlin nonlin = Nonlin::Sigmoid;
    int d = 0;

    static BoundParams bind(Tape& tape, ModelParams& params);
};

}  // namespace adgraph
