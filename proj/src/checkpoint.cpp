#include "adgraph/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "adgraph/common.hpp"

namespace adgraph {

struct CheckpointIo {
    static void write_state(std::ostream& out, const GraphState& st);
    static GraphState read_state(std::istream& in);
};

namespace {

constexpr char kMagic[4] = {'A', 'D', 'G', 'C'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, const T& x) {
    out.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    T x{};
    in.read(reinterpret_cast<char*>(&x), sizeof(T));
    if (!in) fail_data("checkpoint: truncated file");
    return x;
}

void put_doubles(std::ostream& out, std::span<const double> xs) {
    put<std::uint64_t>(out, xs.size());
    out.write(reinterpret_cast<const char*>(xs.data()),
              static_cast<std::streamsize>(xs.size() * sizeof(double)));
}

void get_doubles(std::istream& in, std::span<double> xs) {
    auto n = get<std::uint64_t>(in);
    if (n != xs.size()) fail_data("checkpoint: tensor size mismatch");
    in.read(reinterpret_cast<char*>(xs.data()),
            static_cast<std::streamsize>(xs.size() * sizeof(double)));
    if (!in) fail_data("checkpoint: truncated tensor");
}

void put_string(std::ostream& out, const std::string& s) {
    put<std::uint64_t>(out, s.size());
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string get_string(std::istream& in) {
    auto n = get<std::uint64_t>(in);
    std::string s(n, '\0');
    in.read(s.data(), static_cast<std::streamsize>(n));
    if (!in) fail_data("checkpoint: truncated string");
    return s;
}

}  // namespace

void CheckpointIo::write_state(std::ostream& out, const GraphState& st) {
    put<std::int32_t>(out, st.n_);
    put<std::int32_t>(out, st.d_);
    put_doubles(out, st.emb_);
    put<std::uint64_t>(out, st.adj_.size());
    out.write(reinterpret_cast<const char*>(st.adj_.data()),
              static_cast<std::streamsize>(st.adj_.size()));
    put_doubles(out, st.attn_);
    put_doubles(out, st.edge_time_);
    put_doubles(out, st.last_event_);
    put<double>(out, st.now_);
    put<double>(out, st.time_scale_);
}

GraphState CheckpointIo::read_state(std::istream& in) {
    GraphState st;
    st.n_ = get<std::int32_t>(in);
    st.d_ = get<std::int32_t>(in);
    const auto n2 = static_cast<std::size_t>(st.n_) * st.n_;
    st.emb_.resize(static_cast<std::size_t>(st.n_) * st.d_);
    get_doubles(in, st.emb_);
    auto adj_size = get<std::uint64_t>(in);
    if (adj_size != n2) fail_data("checkpoint: adjacency size mismatch");
    st.adj_.resize(n2);
    in.read(reinterpret_cast<char*>(st.adj_.data()), static_cast<std::streamsize>(n2));
    st.attn_.resize(n2);
    get_doubles(in, st.attn_);
    st.edge_time_.resize(n2);
    get_doubles(in, st.edge_time_);
    st.last_event_.resize(st.n_);
    get_doubles(in, st.last_event_);
    st.now_ = get<double>(in);
    st.time_scale_ = get<double>(in);
    st.degree_.assign(st.n_, 0);
    for (int u = 0; u < st.n_; ++u)
        for (int v = 0; v < st.n_; ++v)
            if (st.adj_[static_cast<std::size_t>(u) * st.n_ + v]) ++st.degree_[u];
    return st;
}

void save_checkpoint(const std::string& path, Checkpoint& ckpt) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_data("cannot write checkpoint: " + path);

    out.write(kMagic, 4);
    put(out, kVersion);
    put<std::int32_t>(out, ckpt.params.d);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(ckpt.params.nonlin));
    put<std::uint64_t>(out, ckpt.seed);

    for (const ParamView& v : ckpt.params.tensors())
        put_doubles(out, std::span<const double>(v.value, static_cast<std::size_t>(v.size)));

    put<std::int64_t>(out, ckpt.adam.step);
    put_doubles(out, ckpt.adam.m);
    put_doubles(out, ckpt.adam.v);

    CheckpointIo::write_state(out, ckpt.state);
    put_string(out, diffusion_config_to_json(ckpt.diffusion));
    put_string(out, ckpt.survival_rng_state);
    put_string(out, ckpt.agg_mask_rng_state);
    put_string(out, ckpt.diff_mask_rng_state);
    if (!out) fail_data("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_data("cannot open checkpoint: " + path);

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        fail_data("not a checkpoint file: " + path);
    if (get<std::uint32_t>(in) != kVersion) fail_data("unsupported checkpoint version");

    Checkpoint ckpt;
    const int d = get<std::int32_t>(in);
    const auto nonlin = static_cast<Nonlin>(get<std::uint8_t>(in));
    ckpt.seed = get<std::uint64_t>(in);

    ckpt.params = ModelParams::init(d, 0, nonlin);
    for (ParamView& v : ckpt.params.tensors())
        get_doubles(in, std::span<double>(v.value, static_cast<std::size_t>(v.size)));

    ckpt.adam = AdamState::init(ckpt.params.tensors());
    ckpt.adam.step = get<std::int64_t>(in);
    get_doubles(in, ckpt.adam.m);
    get_doubles(in, ckpt.adam.v);

    ckpt.state = CheckpointIo::read_state(in);
    ckpt.diffusion = diffusion_config_from_json(get_string(in));
    ckpt.survival_rng_state = get_string(in);
    ckpt.agg_mask_rng_state = get_string(in);
    ckpt.diff_mask_rng_state = get_string(in);
    return ckpt;
}

}  // namespace adgraph
