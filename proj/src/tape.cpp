#include "adgraph/tape.hpp"

#include <cmath>

namespace adgraph {

void Tape::set_recording(bool on) {
    if (!values_.empty())
        throw std::logic_error("Tape::set_recording: tape not empty; reset() first");
    recording_ = on;
}

void Tape::reset() {
    nodes_.clear();
    values_.clear();
    grads_.clear();
    input_pool_.clear();
    coeff_pool_.clear();
    ++gen_;
    backward_done_ = false;
}

void Tape::check(Handle h) const {
    if (!h.valid()) throw std::logic_error("Tape: invalid handle");
    if (h.gen != gen_) throw std::logic_error("Tape: stale handle used after reset()");
}

int Tape::alloc(int dim) {
    int off = static_cast<int>(values_.size());
    values_.resize(values_.size() + static_cast<std::size_t>(dim));
    return off;
}

Handle Tape::push(Op op, int dim, int off, Handle a, Handle b, int aux_i, int aux_j, double aux_d,
                  double* sink) {
    if (!recording_) return Handle{-1, off, dim, gen_};
    Node n;
    n.op = op;
    n.a = a.valid() ? a.node : -1;
    n.b = b.valid() ? b.node : -1;
    n.off = off;
    n.dim = dim;
    n.aux_i = aux_i;
    n.aux_j = aux_j;
    n.aux_d = aux_d;
    n.grad_sink = sink;
    nodes_.push_back(n);
    return Handle{static_cast<int>(nodes_.size()) - 1, off, dim, gen_};
}

Handle Tape::constant(std::span<const double> values) {
    int dim = static_cast<int>(values.size());
    int off = alloc(dim);
    std::copy(values.begin(), values.end(), values_.begin() + off);
    return push(Op::ConstLeaf, dim, off, {}, {}, 0, 0, 0.0, nullptr);
}

Handle Tape::constant_scalar(double x) { return constant(std::span<const double>(&x, 1)); }

Handle Tape::param(const ParamView& view) {
    int off = alloc(view.size);
    std::copy(view.value, view.value + view.size, values_.begin() + off);
    return push(Op::ParamLeaf, view.size, off, {}, {}, 0, 0, 0.0, view.grad);
}

Handle Tape::affine(Handle w, Handle x) {
    check(w);
    check(x);
    if (x.dim <= 0 || w.dim % x.dim != 0)
        throw std::invalid_argument("affine: matrix size not divisible by input dim");
    int rows = w.dim / x.dim;
    int off = alloc(rows);
    affine_kernel(values_.data() + off, values_.data() + w.off, rows, x.dim,
                  values_.data() + x.off);
    return push(Op::Affine, rows, off, w, x, 0, 0, 0.0, nullptr);
}

Handle Tape::axpy(Handle a, Handle b, double c) {
    check(a);
    check(b);
    if (a.dim != b.dim) throw std::invalid_argument("axpy: dimension mismatch");
    int off = alloc(a.dim);
    const double* pa = values_.data() + a.off;
    const double* pb = values_.data() + b.off;
    double* out = values_.data() + off;
    for (int i = 0; i < a.dim; ++i) out[i] = pa[i] + c * pb[i];
    return push(Op::Axpy, a.dim, off, a, b, 0, 0, c, nullptr);
}

Handle Tape::scale(Handle a, double c) {
    check(a);
    int off = alloc(a.dim);
    const double* pa = values_.data() + a.off;
    double* out = values_.data() + off;
    for (int i = 0; i < a.dim; ++i) out[i] = c * pa[i];
    return push(Op::Scale, a.dim, off, a, {}, 0, 0, c, nullptr);
}

Handle Tape::weighted_sum(std::span<const Handle> inputs, std::span<const double> coeffs) {
    if (inputs.empty() || inputs.size() != coeffs.size())
        throw std::invalid_argument("weighted_sum: empty or mismatched inputs");
    int dim = inputs[0].dim;
    for (const Handle& h : inputs) {
        check(h);
        if (h.dim != dim) throw std::invalid_argument("weighted_sum: dimension mismatch");
    }
    int off = alloc(dim);
    double* out = values_.data() + off;
    for (int i = 0; i < dim; ++i) out[i] = 0.0;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const double* p = values_.data() + inputs[k].off;
        for (int i = 0; i < dim; ++i) out[i] += coeffs[k] * p[i];
    }
    int pool_off = static_cast<int>(input_pool_.size());
    if (recording_) {
        for (const Handle& h : inputs) input_pool_.push_back(h.node);
        for (double c : coeffs) coeff_pool_.push_back(c);
    }
    return push(Op::WeightedSum, dim, off, {}, {}, pool_off, static_cast<int>(inputs.size()), 0.0,
                nullptr);
}

Handle Tape::sigmoid(Handle a) {
    check(a);
    int off = alloc(a.dim);
    const double* pa = values_.data() + a.off;
    double* out = values_.data() + off;
    for (int i = 0; i < a.dim; ++i) out[i] = sigmoid_scalar(pa[i]);
    return push(Op::Sigmoid, a.dim, off, a, {}, 0, 0, 0.0, nullptr);
}

Handle Tape::tanh_act(Handle a) {
    check(a);
    int off = alloc(a.dim);
    const double* pa = values_.data() + a.off;
    double* out = values_.data() + off;
    for (int i = 0; i < a.dim; ++i) out[i] = tanh_scalar(pa[i]);
    return push(Op::Tanh, a.dim, off, a, {}, 0, 0, 0.0, nullptr);
}

Handle Tape::dot_slice(Handle w, int slice_off, Handle x) {
    check(w);
    check(x);
    if (slice_off < 0 || slice_off + x.dim > w.dim)
        throw std::invalid_argument("dot_slice: slice out of range");
    int off = alloc(1);
    const double* pw = values_.data() + w.off + slice_off;
    const double* px = values_.data() + x.off;
    double acc = 0.0;
    for (int i = 0; i < x.dim; ++i) acc += pw[i] * px[i];
    values_[off] = acc;
    return push(Op::DotSlice, 1, off, w, x, slice_off, 0, 0.0, nullptr);
}

Handle Tape::sum(Handle a) {
    check(a);
    int off = alloc(1);
    const double* pa = values_.data() + a.off;
    double acc = 0.0;
    for (int i = 0; i < a.dim; ++i) acc += pa[i];
    values_[off] = acc;
    return push(Op::Sum, 1, off, a, {}, 0, 0, 0.0, nullptr);
}

Handle Tape::log_scalar(Handle a) {
    check(a);
    if (a.dim != 1) throw std::invalid_argument("log_scalar: scalar input required");
    int off = alloc(1);
    values_[off] = std::log(values_[a.off]);
    return push(Op::Log, 1, off, a, {}, 0, 0, 0.0, nullptr);
}

Handle Tape::exp_scalar(Handle a) {
    check(a);
    if (a.dim != 1) throw std::invalid_argument("exp_scalar: scalar input required");
    int off = alloc(1);
    values_[off] = std::exp(values_[a.off]);
    return push(Op::Exp, 1, off, a, {}, 0, 0, 0.0, nullptr);
}

Handle Tape::softplus_scaled(Handle s, Handle psi) {
    check(s);
    check(psi);
    if (s.dim != 1 || psi.dim != 1)
        throw std::invalid_argument("softplus_scaled: scalar inputs required");
    int off = alloc(1);
    values_[off] = adgraph::softplus_scaled(values_[s.off], values_[psi.off]);
    return push(Op::SoftplusScaled, 1, off, s, psi, 0, 0, 0.0, nullptr);
}

std::span<const double> Tape::val(Handle h) const {
    check(h);
    return {values_.data() + h.off, static_cast<std::size_t>(h.dim)};
}

double Tape::scalar(Handle h) const {
    check(h);
    if (h.dim != 1) throw std::logic_error("Tape::scalar: handle is not scalar");
    return values_[h.off];
}

void Tape::backward(Handle loss) {
    check(loss);
    if (!recording_ || loss.node < 0)
        throw std::logic_error("Tape::backward: no recorded forward pass");
    if (backward_done_)
        throw std::logic_error("Tape::backward: already replayed; reset() between steps");
    if (loss.dim != 1) throw std::logic_error("Tape::backward: loss must be scalar");
    backward_done_ = true;

    grads_.assign(values_.size(), 0.0);
    grads_[loss.off] = 1.0;

    for (int id = static_cast<int>(nodes_.size()) - 1; id >= 0; --id) {
        const Node& n = nodes_[id];
        const double* g = grads_.data() + n.off;
        switch (n.op) {
        case Op::ConstLeaf:
            break;
        case Op::ParamLeaf:
            if (n.grad_sink)
                for (int i = 0; i < n.dim; ++i) n.grad_sink[i] += g[i];
            break;
        case Op::Affine: {
            const Node& wn = nodes_[n.a];
            const Node& xn = nodes_[n.b];
            int rows = n.dim, cols = xn.dim;
            double* gw = grads_.data() + wn.off;
            double* gx = grads_.data() + xn.off;
            const double* w = values_.data() + wn.off;
            const double* x = values_.data() + xn.off;
            for (int r = 0; r < rows; ++r) {
                const double gr = g[r];
                if (gr == 0.0) continue;
                double* gw_row = gw + static_cast<std::size_t>(r) * cols;
                const double* w_row = w + static_cast<std::size_t>(r) * cols;
                for (int c = 0; c < cols; ++c) {
                    gw_row[c] += gr * x[c];
                    gx[c] += gr * w_row[c];
                }
            }
            break;
        }
        case Op::Axpy: {
            double* ga = grads_.data() + nodes_[n.a].off;
            double* gb = grads_.data() + nodes_[n.b].off;
            for (int i = 0; i < n.dim; ++i) {
                ga[i] += g[i];
                gb[i] += n.aux_d * g[i];
            }
            break;
        }
        case Op::Scale: {
            double* ga = grads_.data() + nodes_[n.a].off;
            for (int i = 0; i < n.dim; ++i) ga[i] += n.aux_d * g[i];
            break;
        }
        case Op::WeightedSum: {
            for (int k = 0; k < n.aux_j; ++k) {
                int in = input_pool_[n.aux_i + k];
                double c = coeff_pool_[n.aux_i + k];
                double* gi = grads_.data() + nodes_[in].off;
                for (int i = 0; i < n.dim; ++i) gi[i] += c * g[i];
            }
            break;
        }
        case Op::Sigmoid: {
            double* ga = grads_.data() + nodes_[n.a].off;
            const double* y = values_.data() + n.off;
            for (int i = 0; i < n.dim; ++i) ga[i] += g[i] * y[i] * (1.0 - y[i]);
            break;
        }
        case Op::Tanh: {
            double* ga = grads_.data() + nodes_[n.a].off;
            const double* y = values_.data() + n.off;
            for (int i = 0; i < n.dim; ++i) ga[i] += g[i] * (1.0 - y[i] * y[i]);
            break;
        }
        case Op::DotSlice: {
            const Node& wn = nodes_[n.a];
            const Node& xn = nodes_[n.b];
            double* gw = grads_.data() + wn.off + n.aux_i;
            double* gx = grads_.data() + xn.off;
            const double* w = values_.data() + wn.off + n.aux_i;
            const double* x = values_.data() + xn.off;
            const double g0 = g[0];
            for (int i = 0; i < xn.dim; ++i) {
                gw[i] += g0 * x[i];
                gx[i] += g0 * w[i];
            }
            break;
        }
        case Op::Sum: {
            double* ga = grads_.data() + nodes_[n.a].off;
            const double g0 = g[0];
            for (int i = 0; i < nodes_[n.a].dim; ++i) ga[i] += g0;
            break;
        }
        case Op::Log: {
            double* ga = grads_.data() + nodes_[n.a].off;
            ga[0] += g[0] / values_[nodes_[n.a].off];
            break;
        }
        case Op::Exp: {
            double* ga = grads_.data() + nodes_[n.a].off;
            ga[0] += g[0] * values_[n.off];
            break;
        }
        case Op::SoftplusScaled: {
            double* gs = grads_.data() + nodes_[n.a].off;
            double* gp = grads_.data() + nodes_[n.b].off;
            const double s = values_[nodes_[n.a].off];
            const double psi = values_[nodes_[n.b].off];
            const double r = s / psi;
            const double sig = sigmoid_scalar(r);
            gs[0] += g[0] * sig;
            gp[0] += g[0] * (softplus_stable(r) - r * sig);
            break;
        }
        }
    }
}

}  // namespace adgraph
