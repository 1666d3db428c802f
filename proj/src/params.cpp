#include "adgraph/params.hpp"

#include <cmath>

#include "adgraph/rng.hpp"

namespace adgraph {

ModelParams ModelParams::init(int d, std::uint64_t seed, Nonlin nonlin) {
    ModelParams p;
    p.d = d;
    p.nonlin = nonlin;
    Rng rng(derive_seed(seed, kSeedParams));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));

    auto draw_mat = [&](Mat& m) {
        m = Mat(d, d);
        for (double& x : m.a) x = rng.uniform(-scale, scale);
    };
    draw_mat(p.w_agg);
    draw_mat(p.w_self);
    draw_mat(p.w_neighbor);
    draw_mat(p.w_diffusion);
    draw_mat(p.w_edge_self);
    draw_mat(p.w_edge_partner);
    p.w_time = Vec(d);
    for (std::size_t i = 0; i < p.w_time.size(); ++i) p.w_time[i] = rng.uniform(-scale, scale);
    const double pair_scale = 1.0 / std::sqrt(2.0 * d);
    for (auto& c : p.compat) {
        c = Vec(2 * d);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = rng.uniform(-pair_scale, pair_scale);
    }
    p.log_rate_scale = {0.0, 0.0};

    p.g_w_agg = Mat(d, d);
    p.g_w_self = Mat(d, d);
    p.g_w_neighbor = Mat(d, d);
    p.g_w_diffusion = Mat(d, d);
    p.g_w_edge_self = Mat(d, d);
    p.g_w_edge_partner = Mat(d, d);
    p.g_w_time = Vec(d);
    p.g_compat = {Vec(2 * d), Vec(2 * d)};
    return p;
}

double ModelParams::rate_scale(EventKind k) const {
    return std::exp(log_rate_scale[kind_index(k)]);
}

void ModelParams::zero_grads() {
    for (ParamView& v : tensors())
        for (int i = 0; i < v.size; ++i) v.grad[i] = 0.0;
}

std::size_t ModelParams::total_size() const {
    std::size_t n = 6 * static_cast<std::size_t>(d) * d + d + 2;
    n += 2 * static_cast<std::size_t>(2 * d);
    return n;
}

bool ModelParams::finite() const {
    auto ok = [](std::span<const double> xs) { return all_finite(xs); };
    return ok(w_agg.span()) && ok(w_self.span()) && ok(w_neighbor.span()) &&
           ok(w_diffusion.span()) && ok(w_edge_self.span()) && ok(w_edge_partner.span()) &&
           ok(w_time.span()) && ok(std::span<const double>(log_rate_scale)) &&
           ok(compat[0].span()) && ok(compat[1].span());
}

std::vector<ParamView> ModelParams::tensors() {
    std::vector<ParamView> out;
    auto mat = [&](const char* name, Mat& m, Mat& g) {
        out.push_back({name, m.data(), g.data(), static_cast<int>(m.size())});
    };
    mat("w_agg", w_agg, g_w_agg);
    mat("w_self", w_self, g_w_self);
    mat("w_neighbor", w_neighbor, g_w_neighbor);
    mat("w_diffusion", w_diffusion, g_w_diffusion);
    mat("w_edge_self", w_edge_self, g_w_edge_self);
    mat("w_edge_partner", w_edge_partner, g_w_edge_partner);
    out.push_back({"w_time", w_time.data(), g_w_time.data(), static_cast<int>(w_time.size())});
    out.push_back({"log_rate_scale", log_rate_scale.data(), g_log_rate_scale.data(), 2});
    out.push_back({"compat_assoc", compat[0].data(), g_compat[0].data(),
                   static_cast<int>(compat[0].size())});
    out.push_back({"compat_comm", compat[1].data(), g_compat[1].data(),
                   static_cast<int>(compat[1].size())});
    return out;
}

BoundParams BoundParams::bind(Tape& tape, ModelParams& params) {
    BoundParams bp;
    bp.nonlin = params.nonlin;
    bp.d = params.d;
    auto views = params.tensors();
    bp.w_agg = tape.param(views[0]);
    bp.w_self = tape.param(views[1]);
    bp.w_neighbor = tape.param(views[2]);
    bp.w_diffusion = tape.param(views[3]);
    bp.w_edge_self = tape.param(views[4]);
    bp.w_edge_partner = tape.param(views[5]);
    bp.w_time = tape.param(views[6]);
    Handle log_scale = tape.param(views[7]);
    // Per-kind scalar views into the length-2 leaf: log_scale[k] * 1.
    Handle unit = tape.constant_scalar(1.0);
    for (int k = 0; k < 2; ++k)
        bp.rate_scale[k] = tape.exp_scalar(tape.dot_slice(log_scale, k, unit));
    bp.compat[0] = tape.param(views[8]);
    bp.compat[1] = tape.param(views[9]);
    return bp;
}

}  // namespace adgraph
