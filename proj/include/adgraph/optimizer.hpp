#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "adgraph/tape.hpp"

namespace adgraph {

/// First/second-moment accumulators for the adaptive update, flat over the
/// concatenation of all parameter tensors.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::int64_t step = 0;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;

    static AdamState init(std::span<const ParamView> params);
};

/// Global L2 norm of all gradients.
double gradient_norm(std::span<const ParamView> params);

/// Scales the global gradient norm down to clip_norm if it exceeds it, then
/// applies one bias-corrected adaptive-moment step. Throws Error(Numeric) on
/// non-finite gradients.
void clip_and_step(std::span<const ParamView> params, AdamState& adam, double lr,
                   double clip_norm);

}  // namespace adgraph
