#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "adgraph/backbone.hpp"
#include "adgraph/event.hpp"
#include "adgraph/rng.hpp"

namespace adgraph {

/// What an interacting node pushes to its neighborhood after updating.
enum class MessageKind : std::uint8_t {
    Node,   // its fresh embedding
    Delta,  // the change in its embedding
    Edge,   // a learned blend of both interacting nodes' fresh embeddings
};

/// How diffusion targets (and, for some strategies, aggregation neighbors)
/// are chosen. CLI tokens: base, v, alpha, beta, gamma, omega.
enum class Selection : std::uint8_t {
    Base,            // k-hop ball minus the event partner
    IncludePartner,  // k-hop ball, partner kept ("v" variant)
    MaskAggregation, // base targets; aggregation neighbors dropped at rate p ("alpha")
    MaskDiffusion,   // base targets dropped at rate p; full aggregation ("beta")
    MaskBoth,        // independent masks on both steps ("gamma")
    MaskEarliest,    // floor(p * count) oldest-associated dropped on both steps ("omega")
};

enum class Strength : std::uint8_t { Uniform, Attention };

struct DiffusionConfig {
    MessageKind message = MessageKind::Node;
    int hops = 1;
    Selection selection = Selection::Base;
    Strength strength = Strength::Uniform;
    double mask_fraction = 0.2;
    bool aggregation_enabled = true;
    bool diffusion_enabled = true;
    /// When on, a bitwise-zero message skips the receiver update instead of
    /// squashing the receiver through the nonlinearity.
    bool skip_zero_message = false;

    void validate() const;
    bool operator==(const DiffusionConfig&) const = default;
};

std::string to_string(MessageKind k);
std::string to_string(Selection s);
std::string to_string(Strength s);
MessageKind message_kind_from_string(const std::string& s);
Selection selection_from_string(const std::string& s);
Strength strength_from_string(const std::string& s);

std::string diffusion_config_to_json(const DiffusionConfig& cfg);
DiffusionConfig diffusion_config_from_json(const std::string& text);

/// Independent random streams for the two masking sites, so that toggling one
/// mask never shifts the other's draws.
struct MaskRng {
    Rng aggregation;
    Rng diffusion;

    static MaskRng for_training(std::uint64_t master_seed);
    static MaskRng for_evaluation(std::uint64_t master_seed);
};

struct DiffusionMessage {
    Handle m;
    int origin = -1;
    int partner = -1;
};

/// Builds the diffusion message for origin u with event partner v.
/// `z_now` / `z_prev` are u's post-aggregation and pre-event embeddings;
/// `partner_now` is v's post-aggregation embedding (used by Edge).
DiffusionMessage make_message(Tape& tape, const BoundParams& params, MessageKind kind, int u,
                              int v, Handle z_now, Handle z_prev, Handle partner_now);

/// Diffusion-target selection around u for an event with partner v.
/// Strategies that mask the aggregation step only (alpha) select exactly the
/// base set here. Draws come from `rng.diffusion` only.
std::vector<int> select_targets(const GraphState& state, int u, int v,
                                const DiffusionConfig& config, MaskRng& rng);

/// Aggregation-neighbor set for node j under the configured selection
/// strategy (full neighbors unless alpha/gamma/omega mask them). Draws come
/// from `rng.aggregation` only.
std::vector<int> select_aggregation_neighbors(const GraphState& state, int j,
                                              const DiffusionConfig& config, MaskRng& rng);

/// Per-target diffusion strength. Uniform gives every target 1; Attention
/// softmax-normalizes the attention row over the 1-hop targets and leaves
/// targets beyond one hop (where no attention entry exists) at 1.
std::map<int, double> strength(const GraphState& state, int u, std::span<const int> targets,
                               Strength rule);

/// Receiver update: z_r <- sigma(z_r + q_r * w_diffusion * message) for every
/// target, applied sequentially in ascending node order. The origin must not
/// be among the targets.
void apply_diffusion(Tape& tape, GraphState& state, const BoundParams& params,
                     LiveEmbeddings& emb, const DiffusionMessage& msg,
                     std::span<const int> targets, const std::map<int, double>& strengths,
                     bool skip_zero_message);

struct ProcessResult {
    Handle lambda;        // intensity of the observed event, pre-event state
    double lambda_value;  // same, as a plain number
};

/// One full event step: intensity, aggregation update of both interacting
/// nodes from the same pre-event snapshot, diffusion from each of them,
/// topology and attention maintenance, clock advance.
ProcessResult process_event(Tape& tape, GraphState& state, const BoundParams& params,
                            LiveEmbeddings& emb, const EventRecord& ev,
                            const DiffusionConfig& config, MaskRng& rng);

}  // namespace adgraph
