#include "adgraph/optimizer.hpp"

#include <cmath>

#include "adgraph/common.hpp"

namespace adgraph {

AdamState AdamState::init(std::span<const ParamView> params) {
    AdamState st;
    std::size_t total = 0;
    for (const ParamView& p : params) total += static_cast<std::size_t>(p.size);
    st.m.assign(total, 0.0);
    st.v.assign(total, 0.0);
    return st;
}

double gradient_norm(std::span<const ParamView> params) {
    double sq = 0.0;
    for (const ParamView& p : params)
        for (int i = 0; i < p.size; ++i) sq += p.grad[i] * p.grad[i];
    return std::sqrt(sq);
}

void clip_and_step(std::span<const ParamView> params, AdamState& adam, double lr,
                   double clip_norm) {
    if (!(lr >= 0.0)) fail_usage("clip_and_step: negative learning rate");
    if (!(clip_norm > 0.0)) fail_usage("clip_and_step: clip norm must be positive");

    const double norm = gradient_norm(params);
    if (!std::isfinite(norm)) fail_numeric("clip_and_step: non-finite gradient norm");
    const double rescale = norm > clip_norm ? clip_norm / norm : 1.0;

    adam.step += 1;
    const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
    const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));

    std::size_t k = 0;
    for (const ParamView& p : params) {
        for (int i = 0; i < p.size; ++i, ++k) {
            const double g = p.grad[i] * rescale;
            adam.m[k] = adam.beta1 * adam.m[k] + (1.0 - adam.beta1) * g;
            adam.v[k] = adam.beta2 * adam.v[k] + (1.0 - adam.beta2) * g * g;
            const double m_hat = adam.m[k] / bc1;
            const double v_hat = adam.v[k] / bc2;
            p.value[i] -= lr * m_hat / (std::sqrt(v_hat) + adam.eps);
        }
    }
}

}  // namespace adgraph
