#include "adgraph/finite_diff.hpp"

#include <cmath>
#include <cstring>
#include <vector>

namespace adgraph {

namespace {

double eval_value(const ScalarFn& f, Tape& tape) {
    tape.reset();
    tape.set_recording(false);
    Handle out = f(tape);
    double v = tape.scalar(out);
    tape.reset();
    tape.set_recording(true);
    return v;
}

}  // namespace

double finite_diff_check(const ScalarFn& f, std::span<const ParamView> params, double step) {
    Tape tape;

    const double base0 = eval_value(f, tape);
    const double base1 = eval_value(f, tape);
    if (std::memcmp(&base0, &base1, sizeof(double)) != 0)
        fail_numeric("finite_diff_check: function is not deterministic");

    // Analytic gradients via one recorded pass.
    for (const ParamView& p : params)
        for (int i = 0; i < p.size; ++i) p.grad[i] = 0.0;
    tape.reset();
    Handle loss = f(tape);
    tape.backward(loss);
    tape.reset();

    double worst = 0.0;
    for (const ParamView& p : params) {
        for (int i = 0; i < p.size; ++i) {
            const double saved = p.value[i];
            p.value[i] = saved + step;
            const double up = eval_value(f, tape);
            p.value[i] = saved - step;
            const double down = eval_value(f, tape);
            p.value[i] = saved;
            const double central = (up - down) / (2.0 * step);
            const double err = std::abs(p.grad[i] - central) / (std::abs(central) + 1e-8);
            if (err > worst) worst = err;
        }
    }
    return worst;
}

}  // namespace adgraph
