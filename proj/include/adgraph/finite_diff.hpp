#pragma once

#include <functional>
#include <span>

#include "adgraph/tape.hpp"

namespace adgraph {

/// Builds one deterministic forward pass on the given tape and returns the
/// scalar loss handle. The function must bind any parameters it uses onto
/// the tape itself, so that perturbed parameter values are picked up.
using ScalarFn = std::function<Handle(Tape&)>;

/// Compares reverse-accumulated gradients against central finite differences.
///
/// Returns max over all parameter components of
///   |analytic - central| / (|central| + 1e-8).
/// Throws if two evaluations of `f` at the base point disagree (the check is
/// meaningless for a non-deterministic function). Parameter values are
/// restored bit-exactly before returning.
double finite_diff_check(const ScalarFn& f, std::span<const ParamView> params, double step);

}  // namespace adgraph
