#include "ddm/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "ddm/kernels.hpp"
#include "ddm/linalg.hpp"

namespace ddm {

namespace {

struct LayerRef {
    std::size_t w, b;  // tensor indices
    bool silu;
};

struct Net {
    std::vector<LayerRef> trunk, head_a, head_b;
};

void push_layer(std::vector<NamedTensor>* tensors, std::vector<LayerRef>* refs,
                const std::string& name, std::size_t in, std::size_t out, bool silu) {
    if (refs) refs->push_back({tensors->size(), tensors->size() + 1, silu});
    tensors->push_back({name + ".weight", Matrix(in, out)});
    tensors->push_back({name + ".bias", Matrix(1, out)});
}

void build_head(std::vector<NamedTensor>* tensors, std::vector<LayerRef>* refs,
                const MlpArch& arch, const std::string& name, std::size_t out_dim) {
    if (arch.head_variant == HeadVariant::SharedTrunkLinearHeads) {
        push_layer(tensors, refs, name, arch.hidden_width, out_dim, false);
    } else {
        push_layer(tensors, refs, name + ".0", arch.hidden_width, arch.head_hidden, true);
        push_layer(tensors, refs, name + ".1", arch.head_hidden, arch.head_hidden, true);
        push_layer(tensors, refs, name + ".2", arch.head_hidden, out_dim, false);
    }
}

// Tensor order: trunk layers, then the parameter head (if present), then the
// noise head. Must stay stable; checkpoints serialize in this order.
Net build_net(const MlpArch& arch, std::vector<NamedTensor>* tensors) {
    if (arch.depth < 1) throw std::invalid_argument("mlp: depth must be >= 1");
    if (arch.head_b_dim < 1) throw std::invalid_argument("mlp: noise head dimension must be >= 1");
    Net net;
    for (std::size_t l = 0; l < arch.depth; ++l) {
        const std::size_t in = l == 0 ? arch.input_dim() : arch.hidden_width;
        push_layer(tensors, &net.trunk, "trunk." + std::to_string(l), in, arch.hidden_width, true);
    }
    if (arch.head_a_dim > 0) build_head(tensors, &net.head_a, arch, "param_head", arch.head_a_dim);
    build_head(tensors, &net.head_b, arch, "noise_head", arch.head_b_dim);
    return net;
}

Net net_for(const MlpParams& params) {
    std::vector<NamedTensor> scratch;
    Net net = build_net(params.arch, &scratch);
    if (scratch.size() != params.tensors.size())
        throw std::invalid_argument("mlp: tensor list does not match architecture");
    for (std::size_t i = 0; i < scratch.size(); ++i)
        if (!scratch[i].value.same_shape(params.tensors[i].value))
            throw std::invalid_argument("mlp: tensor shape mismatch at " + scratch[i].name);
    return net;
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void silu_forward(const Matrix& pre, Matrix& act) {
    act = Matrix(pre.rows, pre.cols);
    for (std::size_t i = 0; i < pre.size(); ++i) {
        const double z = pre.data[i];
        act.data[i] = z * sigmoid(z);
    }
}

// d silu/dz = sig(z) * (1 + z (1 - sig(z)))
void silu_backward(const Matrix& pre, Matrix& grad) {
    for (std::size_t i = 0; i < pre.size(); ++i) {
        const double z = pre.data[i];
        const double s = sigmoid(z);
        grad.data[i] *= s * (1.0 + z * (1.0 - s));
    }
}

void add_bias(Matrix& y, const Matrix& bias) {
    for (std::size_t i = 0; i < y.rows; ++i)
        kernels::active().vadd(y.row(i), bias.row(0), y.cols);
}

struct SegmentCache {
    std::vector<Matrix> pre;  // z_l = in_l W + b
    std::vector<Matrix> act;  // silu(z_l) or z_l
};

const Matrix& layer_input(const Matrix& input, const SegmentCache& cache, std::size_t l) {
    return l == 0 ? input : cache.act[l - 1];
}

Matrix run_segment(const MlpParams& params, const std::vector<LayerRef>& refs,
                   const Matrix& input, SegmentCache& cache, bool check_finite) {
    cache.pre.resize(refs.size());
    cache.act.resize(refs.size());
    for (std::size_t l = 0; l < refs.size(); ++l) {
        const LayerRef& ref = refs[l];
        const Matrix& in = layer_input(input, cache, l);
        linalg::matmul(cache.pre[l], in, params.tensors[ref.w].value);
        add_bias(cache.pre[l], params.tensors[ref.b].value);
        if (check_finite && !cache.pre[l].all_finite())
            throw std::runtime_error("mlp: non-finite activation in layer " +
                                     params.tensors[ref.w].name);
        if (ref.silu)
            silu_forward(cache.pre[l], cache.act[l]);
        else
            cache.act[l] = cache.pre[l];
    }
    return cache.act.empty() ? input : cache.act.back();
}

// Returns the gradient w.r.t. the segment input.
Matrix backward_segment(const MlpParams& params, const std::vector<LayerRef>& refs,
                        const Matrix& input, const SegmentCache& cache, Matrix d_out,
                        std::vector<Matrix>& grads) {
    for (std::size_t li = refs.size(); li-- > 0;) {
        const LayerRef& ref = refs[li];
        if (ref.silu) silu_backward(cache.pre[li], d_out);
        const Matrix& in = layer_input(input, cache, li);
        linalg::matmul(grads[ref.w], linalg::transpose(in), d_out);
        linalg::col_sum(d_out, grads[ref.b]);
        Matrix d_in = linalg::matmul(d_out, linalg::transpose(params.tensors[ref.w].value));
        d_out = std::move(d_in);
    }
    return d_out;
}

Matrix assemble_input(const Matrix& x_t, double t, const MlpArch& arch) {
    if (x_t.cols != arch.data_dim)
        throw std::invalid_argument("mlp: input dimension disagrees with architecture");
    const std::vector<double> emb = time_embed(t, arch.time_embed_dim);
    Matrix in(x_t.rows, arch.input_dim());
    for (std::size_t i = 0; i < x_t.rows; ++i) {
        double* dst = in.row(i);
        const double* src = x_t.row(i);
        for (std::size_t j = 0; j < arch.data_dim; ++j) dst[j] = src[j];
        for (std::size_t j = 0; j < emb.size(); ++j) dst[arch.data_dim + j] = emb[j];
    }
    return in;
}

// dLoss/dout for the elementwise-mean distance, scaled by lambda.
Matrix loss_grad(const Matrix& out, const Matrix& target, LossType type, double lambda) {
    Matrix g(out.rows, out.cols);
    const double scale = lambda / static_cast<double>(out.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.data[i] - target.data[i];
        double v = 0.0;
        if (type != LossType::L2) v += (d > 0.0) - (d < 0.0);
        if (type != LossType::L1) v += 2.0 * d;
        g.data[i] = scale * v;
    }
    return g;
}

struct ForwardState {
    Matrix input;
    SegmentCache trunk, head_a, head_b;
    Matrix trunk_out, out_a, out_b;
};

ForwardState run_forward(const MlpParams& params, const Net& net, const Matrix& x_t,
                         double t, bool check_finite) {
    ForwardState st;
    st.input = assemble_input(x_t, t, params.arch);
    st.trunk_out = run_segment(params, net.trunk, st.input, st.trunk, check_finite);
    if (!net.head_a.empty())
        st.out_a = run_segment(params, net.head_a, st.trunk_out, st.head_a, check_finite);
    st.out_b = run_segment(params, net.head_b, st.trunk_out, st.head_b, check_finite);
    return st;
}

}  // namespace

HeadVariant head_variant_from_string(const std::string& s) {
    if (s == "linear") return HeadVariant::SharedTrunkLinearHeads;
    if (s == "deep") return HeadVariant::SharedTrunkDeepHeads;
    throw std::invalid_argument("unknown head variant: " + s);
}

std::string head_variant_to_string(HeadVariant v) {
    return v == HeadVariant::SharedTrunkLinearHeads ? "linear" : "deep";
}

std::vector<double> time_embed(double t, std::size_t dim) {
    if (dim == 0 || dim % 2 != 0) throw std::invalid_argument("time_embed: dim must be even");
    const std::size_t half = dim / 2;
    std::vector<double> out(dim);
    for (std::size_t k = 0; k < half; ++k) {
        const double w =
            half == 1 ? 1.0
                      : std::pow(1000.0, static_cast<double>(k) / static_cast<double>(half - 1));
        out[2 * k] = std::sin(t * w);
        out[2 * k + 1] = std::cos(t * w);
    }
    return out;
}

MlpParams init_params(const MlpArch& arch, RngStream& rng) {
    MlpParams params;
    params.arch = arch;
    Net net = build_net(arch, &params.tensors);
    auto init_segment = [&](const std::vector<LayerRef>& refs) {
        for (std::size_t l = 0; l < refs.size(); ++l) {
            Matrix& w = params.tensors[refs[l].w].value;
            rng.fill_gaussian(w.data.data(), w.size());
            // He-style for silu layers, smaller for the output maps
            const double gain = refs[l].silu ? 2.0 : 1.0;
            linalg::scale_inplace(w, std::sqrt(gain / static_cast<double>(w.rows)));
        }
    };
    init_segment(net.trunk);
    init_segment(net.head_a);
    init_segment(net.head_b);
    return params;
}

MlpOutput predict(const MlpParams& params, const Matrix& x_t, double t) {
    const Net net = net_for(params);
    ForwardState st = run_forward(params, net, x_t, t, true);
    return {std::move(st.out_a), std::move(st.out_b)};
}

LossGrads backprop(const MlpParams& params, const TrainBatch& batch,
                   double lambda_a, double lambda_b, LossType loss_type) {
    const Net net = net_for(params);
    const bool has_a = !net.head_a.empty();
    ForwardState st = run_forward(params, net, batch.x_t, batch.t, false);

    LossGrads lg;
    lg.grads.resize(params.tensors.size());
    if (has_a) lg.loss_a = lambda_a * pair_loss(st.out_a, batch.target_a, loss_type);
    lg.loss_b = lambda_b * pair_loss(st.out_b, batch.target_b, loss_type);
    lg.loss = lg.loss_a + lg.loss_b;

    Matrix d_trunk = backward_segment(params, net.head_b, st.trunk_out, st.head_b,
                                      loss_grad(st.out_b, batch.target_b, loss_type, lambda_b),
                                      lg.grads);
    if (has_a) {
        Matrix d_a = backward_segment(params, net.head_a, st.trunk_out, st.head_a,
                                      loss_grad(st.out_a, batch.target_a, loss_type, lambda_a),
                                      lg.grads);
        linalg::add_inplace(d_trunk, d_a);
    }
    backward_segment(params, net.trunk, st.input, st.trunk, std::move(d_trunk), lg.grads);
    return lg;
}

double loss_value(const MlpParams& params, const TrainBatch& batch,
                  double lambda_a, double lambda_b, LossType loss_type) {
    const Net net = net_for(params);
    ForwardState st = run_forward(params, net, batch.x_t, batch.t, false);
    double loss = lambda_b * pair_loss(st.out_b, batch.target_b, loss_type);
    if (!net.head_a.empty()) loss += lambda_a * pair_loss(st.out_a, batch.target_a, loss_type);
    return loss;
}

AdamState AdamState::init(const MlpParams& params) {
    AdamState st;
    st.m.reserve(params.tensors.size());
    st.v.reserve(params.tensors.size());
    for (const auto& t : params.tensors) {
        st.m.emplace_back(t.value.rows, t.value.cols);
        st.v.emplace_back(t.value.rows, t.value.cols);
    }
    return st;
}

void adam_step(MlpParams& params, const std::vector<Matrix>& grads, AdamState& state,
               double lr, const AdamConfig& cfg) {
    if (grads.size() != params.tensors.size() || state.m.size() != params.tensors.size())
        throw std::invalid_argument("adam_step: gradient/state sizes disagree");
    state.step += 1;
    const double c1 = 1.0 / (1.0 - std::pow(cfg.beta1, static_cast<double>(state.step)));
    const double c2 = 1.0 / (1.0 - std::pow(cfg.beta2, static_cast<double>(state.step)));
    const auto& ops = kernels::active();
    for (std::size_t i = 0; i < params.tensors.size(); ++i) {
        Matrix& p = params.tensors[i].value;
        ops.adam_update(p.data.data(), state.m[i].data.data(), state.v[i].data.data(),
                        grads[i].data.data(), p.size(), lr, cfg.beta1, cfg.beta2, cfg.eps,
                        c1, c2, cfg.weight_decay);
    }
}

double lr_at(std::uint64_t iter, const LrSchedule& sched) {
    if (sched.total < 1) throw std::invalid_argument("lr_at: total must be >= 1");
    if (iter > sched.total) throw std::invalid_argument("lr_at: iter must be <= total");
    const double frac = 1.0 - static_cast<double>(iter) / static_cast<double>(sched.total);
    return std::max(sched.lr0 * std::pow(frac, sched.power), sched.lr_min);
}

EmaState EmaState::init(const MlpParams& params, double decay) {
    if (!(decay >= 0.0) || decay >= 1.0)
        throw std::invalid_argument("ema: decay must lie in [0, 1)");
    EmaState st;
    st.decay = decay;
    st.shadow.reserve(params.tensors.size());
    for (const auto& t : params.tensors) st.shadow.push_back(t.value);
    return st;
}

void ema_update(EmaState& ema, const MlpParams& params) {
    if (ema.shadow.size() != params.tensors.size())
        throw std::invalid_argument("ema_update: shadow/params sizes disagree");
    const auto& ops = kernels::active();
    for (std::size_t i = 0; i < ema.shadow.size(); ++i)
        ops.ema_update(ema.shadow[i].data.data(), params.tensors[i].value.data.data(),
                       ema.shadow[i].size(), ema.decay);
}

MlpParams with_weights(const MlpParams& params, const std::vector<Matrix>& weights) {
    if (weights.size() != params.tensors.size())
        throw std::invalid_argument("with_weights: size mismatch");
    MlpParams out = params;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!weights[i].same_shape(out.tensors[i].value))
            throw std::invalid_argument("with_weights: shape mismatch at " + out.tensors[i].name);
        out.tensors[i].value = weights[i];
    }
    return out;
}

}  // namespace ddm
