#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ddm/matrix.hpp"
#include "ddm/objective.hpp"
#include "ddm/rng.hpp"

namespace ddm {

// Two-head fully connected denoiser: trunk(concat(x_t, time_embed(t)))
// feeding a parameter head (phi / x0) and a noise head (eps).
//
// SharedTrunkLinearHeads: each head is a single linear map off the trunk.
// SharedTrunkDeepHeads:   each head gets its own two-hidden-layer subnetwork.
enum class HeadVariant { SharedTrunkLinearHeads, SharedTrunkDeepHeads };

HeadVariant head_variant_from_string(const std::string& s);
std::string head_variant_to_string(HeadVariant v);

struct MlpArch {
    std::size_t data_dim = 2;
    std::size_t hidden_width = 256;
    std::size_t depth = 4;  // trunk hidden layers
    std::size_t time_embed_dim = 64;
    std::size_t head_hidden = 128;
    HeadVariant head_variant = HeadVariant::SharedTrunkDeepHeads;
    std::size_t head_a_dim = 0;  // 0 = head absent (noise-only model)
    std::size_t head_b_dim = 2;

    std::size_t input_dim() const { return data_dim + time_embed_dim; }
    bool operator==(const MlpArch&) const = default;
};

struct NamedTensor {
    std::string name;
    Matrix value;
};

// Weights and biases in fixed declaration order (trunk, head a, head b);
// that order is also the checkpoint blob order.
struct MlpParams {
    MlpArch arch;
    std::vector<NamedTensor> tensors;
};

// Sinusoidal conditioning [sin(t w_1), cos(t w_1), ...] with dim/2 geometric
// frequencies spanning 1 to 1000. dim must be even.
std::vector<double> time_embed(double t, std::size_t dim);

MlpParams init_params(const MlpArch& arch, RngStream& rng);

struct MlpOutput {
    Matrix head_a;  // n x head_a_dim, empty when the head is absent
    Matrix head_b;  // n x head_b_dim
};

// Deterministic forward pass. Throws (naming the layer) on non-finite
// activations.
MlpOutput predict(const MlpParams& params, const Matrix& x_t, double t);

struct TrainBatch {
    Matrix x_t;
    double t = 0.0;
    Matrix target_a;  // ignored when head a is absent
    Matrix target_b;
};

struct LossGrads {
    double loss = 0.0;
    double loss_a = 0.0;  // weighted head-a term
    double loss_b = 0.0;  // weighted head-b term
    std::vector<Matrix> grads;  // same order as params.tensors
};

// Analytic gradients of lambda_a * d(out_a, target_a) + lambda_b *
// d(out_b, target_b) with d the configured elementwise-mean distance.
LossGrads backprop(const MlpParams& params, const TrainBatch& batch,
                   double lambda_a, double lambda_b, LossType loss_type);

// Loss only (the primal the finite-difference check differentiates).
double loss_value(const MlpParams& params, const TrainBatch& batch,
                  double lambda_a, double lambda_b, LossType loss_type);

struct AdamConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 0.0;  // decoupled
};

struct AdamState {
    std::vector<Matrix> m, v;
    std::uint64_t step = 0;
    static AdamState init(const MlpParams& params);
};

void adam_step(MlpParams& params, const std::vector<Matrix>& grads, AdamState& state,
               double lr, const AdamConfig& cfg = {});

// Polynomial decay: lr = max(lr0 * (1 - iter/total)^power, lr_min).
struct LrSchedule {
    double lr0 = 1e-4;
    double lr_min = 1e-5;
    double power = 0.96;
    std::uint64_t total = 1;
};

double lr_at(std::uint64_t iter, const LrSchedule& sched);

struct EmaState {
    std::vector<Matrix> shadow;
    double decay = 0.999;
    static EmaState init(const MlpParams& params, double decay);
};

// shadow <- decay * shadow + (1 - decay) * params
void ema_update(EmaState& ema, const MlpParams& params);

MlpParams with_weights(const MlpParams& params, const std::vector<Matrix>& weights);

}  // namespace ddm
