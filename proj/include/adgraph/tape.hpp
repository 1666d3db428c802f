#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adgraph/common.hpp"
#include "adgraph/vec.hpp"

namespace adgraph {

/// Reference to one value produced on a Tape. Scalars are dim-1 handles.
/// `node` is -1 when the value was computed with recording off; such handles
/// carry values but no replayable history. Handles die on Tape::reset().
struct Handle {
    int node = -1;
    int off = -1;
    int dim = 0;
    std::uint32_t gen = 0;

    bool valid() const { return off >= 0; }
};

/// Flat view of one trainable tensor: contiguous values plus a gradient slot
/// of the same length. ModelParams exposes its tensors this way so that the
/// optimizer, checkpointing and the finite-difference oracle stay generic.
struct ParamView {
    std::string name;
    double* value = nullptr;
    double* grad = nullptr;
    int size = 0;
};

/// Eager reverse-accumulation tape over small dense vectors.
///
/// Every operation computes its value immediately through the kernels in
/// vec.hpp. With recording on, the operation is also appended to an op list
/// that backward() replays in reverse exactly once; with recording off, only
/// the value is kept. One training stream owns one tape; pure value-mode use
/// is safe from parallel workers as long as each worker owns its own tape.
class Tape {
public:
    Tape() = default;
    Tape(const Tape&) = delete;
    Tape& operator=(const Tape&) = delete;

    /// Recording may only be toggled on an empty tape.
    void set_recording(bool on);
    bool recording() const { return recording_; }

    /// Drops all values and recorded ops, invalidating outstanding handles.
    void reset();

    bool empty() const { return values_.empty(); }
    std::size_t node_count() const { return nodes_.size(); }

    // -- leaves ------------------------------------------------------------
    Handle constant(std::span<const double> values);
    Handle constant_scalar(double x);
    /// Leaf whose gradient is accumulated into `view.grad` on backward().
    Handle param(const ParamView& view);

    // -- vector ops ----------------------------------------------------------
    /// W x where `w` holds rows*cols entries row-major and rows = w.dim / x.dim.
    Handle affine(Handle w, Handle x);
    /// a + c * b (elementwise; dims must match).
    Handle axpy(Handle a, Handle b, double c);
    Handle add(Handle a, Handle b) { return axpy(a, b, 1.0); }
    Handle sub(Handle a, Handle b) { return axpy(a, b, -1.0); }
    /// c * a.
    Handle scale(Handle a, double c);
    /// sum_i coeff[i] * inputs[i]; all inputs share one dim.
    Handle weighted_sum(std::span<const Handle> inputs, std::span<const double> coeffs);
    Handle sigmoid(Handle a);
    Handle tanh_act(Handle a);

    // -- reductions / scalar ops ---------------------------------------------
    /// sum_i w[off + i] * x[i]; lets a long parameter vector act on a slice.
    Handle dot_slice(Handle w, int off, Handle x);
    Handle dot(Handle w, Handle x) { return dot_slice(w, 0, x); }
    Handle sum(Handle a);
    Handle log_scalar(Handle a);
    Handle exp_scalar(Handle a);
    /// psi * log(1 + exp(s / psi)); both inputs are scalars, psi > 0.
    Handle softplus_scaled(Handle s, Handle psi);

    // -- access ----------------------------------------------------------------
    /// View into the value arena; valid only until the next op on this tape.
    std::span<const double> val(Handle h) const;
    double scalar(Handle h) const;

    /// Reverse pass from a scalar loss. Accumulates into every ParamView
    /// gradient touched by the recorded ops. Callable exactly once per
    /// recorded forward pass; reset() re-arms it.
    void backward(Handle loss);

private:
    enum class Op : std::uint8_t {
        ConstLeaf,
        ParamLeaf,
        Affine,
        Axpy,
        Scale,
        WeightedSum,
        Sigmoid,
        Tanh,
        DotSlice,
        Sum,
        Log,
        Exp,
        SoftplusScaled,
    };

    struct Node {
        Op op;
        int a = -1;
        int b = -1;
        int off = 0;
        int dim = 0;
        int aux_i = 0;    // DotSlice: slice offset; WeightedSum: pool offset
        int aux_j = 0;    // WeightedSum: input count
        double aux_d = 0; // Axpy/Scale coefficient
        double* grad_sink = nullptr;
    };

    void check(Handle h) const;
    int alloc(int dim);
    Handle push(Op op, int dim, int off, Handle a, Handle b, int aux_i, int aux_j, double aux_d,
                double* sink);

    std::vector<Node> nodes_;
    std::vector<double> values_;
    std::vector<double> grads_;
    std::vector<int> input_pool_;    // WeightedSum fan-in node ids
    std::vector<double> coeff_pool_; // WeightedSum coefficients
    std::uint32_t gen_ = 1;
    bool recording_ = true;
    bool backward_done_ = false;
};

}  // namespace adgraph
