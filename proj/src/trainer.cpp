#include "adgraph/trainer.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "adgraph/common.hpp"

namespace adgraph {

void TrainConfig::validate() const {
    if (!(lr >= 0.0)) fail_usage("train config: lr must be >= 0");
    if (epochs < 1) fail_usage("train config: epochs must be >= 1");
    if (batch_size < 1) fail_usage("train config: batch size must be >= 1");
    if (!(clip_norm > 0.0)) fail_usage("train config: clip norm must be positive");
    if (survival_samples < 0) fail_usage("train config: survival samples must be >= 0");
}

std::vector<SurvivalSample> draw_survival_samples(Rng& rng, int n_nodes, int u, int v, int count) {
    std::vector<SurvivalSample> samples;
    if (n_nodes < 3 || count <= 0) return samples;
    samples.reserve(count);
    while (static_cast<int>(samples.size()) < count) {
        int a = rng.uniform_int(0, n_nodes - 1);
        int b = rng.uniform_int(0, n_nodes - 1);
        if (a == b) continue;
        if ((a == u && b == v) || (a == v && b == u)) continue;
        samples.push_back({a, b});
    }
    return samples;
}

Handle event_loss(Tape& tape, const GraphState& state, const BoundParams& params,
                  LiveEmbeddings& emb, const EventRecord& ev,
                  std::span<const SurvivalSample> samples) {
    Handle lambda = conditional_intensity(tape, state, params, emb, ev.u, ev.v, ev.kind);
    Handle loss = tape.scale(tape.log_scalar(lambda), -1.0);
    if (samples.empty()) return loss;

    const double dt = (ev.t - state.now()) / state.time_scale();
    if (dt == 0.0) return loss;
    Handle total;
    for (const SurvivalSample& s : samples) {
        for (EventKind k : {EventKind::Association, EventKind::Communication}) {
            Handle lam = conditional_intensity(tape, state, params, emb, s.a, s.b, k);
            total = total.valid() ? tape.add(total, lam) : lam;
        }
    }
    const double weight = dt / (2.0 * static_cast<double>(samples.size()));
    return tape.axpy(loss, total, weight);
}

Handle event_loss(Tape& tape, const GraphState& state, const BoundParams& params,
                  LiveEmbeddings& emb, const EventRecord& ev, Rng& rng, int survival_samples) {
    auto samples = draw_survival_samples(rng, state.n_nodes(), ev.u, ev.v, survival_samples);
    return event_loss(tape, state, params, emb, ev, samples);
}

double train_epoch(GraphState& state, ModelParams& params, AdamState& adam,
                   const std::vector<EventRecord>& train_events, const TrainConfig& tcfg,
                   const DiffusionConfig& dcfg, Rng& survival_rng, MaskRng& mask_rng,
                   int epoch_index) {
    tcfg.validate();
    dcfg.validate();

    Tape tape;
    LiveEmbeddings emb;
    double loss_sum = 0.0;
    std::size_t i = 0;
    const std::size_t n = train_events.size();

    while (i < n) {
        tape.reset();
        emb.clear();
        BoundParams bp = BoundParams::bind(tape, params);
        Handle batch_loss;
        const std::size_t end = std::min(n, i + static_cast<std::size_t>(tcfg.batch_size));
        for (; i < end; ++i) {
            const EventRecord& ev = train_events[i];
            Handle loss =
                event_loss(tape, state, bp, emb, ev, survival_rng, tcfg.survival_samples);
            const double loss_value = tape.scalar(loss);
            if (!std::isfinite(loss_value)) {
                std::ostringstream msg;
                msg << "epoch " << epoch_index << ", event " << i
                    << ": non-finite loss; aborting epoch";
                fail_numeric(msg.str());
            }
            loss_sum += loss_value;
            batch_loss = batch_loss.valid() ? tape.add(batch_loss, loss) : loss;
            process_event(tape, state, bp, emb, ev, dcfg, mask_rng);
        }
        params.zero_grads();
        tape.backward(batch_loss);
        auto views = params.tensors();
        clip_and_step(views, adam, tcfg.lr, tcfg.clip_norm);
        if (!params.finite()) fail_numeric("train_epoch: parameters became non-finite");
    }
    return n > 0 ? loss_sum / static_cast<double>(n) : 0.0;
}

TrainOutcome train(const Dataset& ds, ModelParams& params, AdamState& adam,
                   const TrainConfig& tcfg, const DiffusionConfig& dcfg) {
    tcfg.validate();
    if (ds.train.empty()) fail_data("train: empty training stream");

    TrainOutcome out;
    Rng survival_rng(derive_seed(tcfg.seed, kSeedSurvival));
    MaskRng mask_rng = MaskRng::for_training(tcfg.seed);

    for (int epoch = 1; epoch <= tcfg.epochs; ++epoch) {
        auto t0 = std::chrono::steady_clock::now();
        out.final_state = GraphState::init(ds, params.d, tcfg.seed);
        double mean_loss = train_epoch(out.final_state, params, adam, ds.train, tcfg, dcfg,
                                       survival_rng, mask_rng, epoch);
        auto t1 = std::chrono::steady_clock::now();
        out.report.epochs.push_back(
            {epoch, mean_loss, std::chrono::duration<double>(t1 - t0).count()});
    }
    out.survival_rng_state = survival_rng.save();
    out.agg_mask_rng_state = mask_rng.aggregation.save();
    out.diff_mask_rng_state = mask_rng.diffusion.save();
    return out;
}

}  // namespace adgraph
