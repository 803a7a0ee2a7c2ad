#pragma once

#include <string>
#include <utility>

#include "ddm/matrix.hpp"

namespace ddm {

// Time-dependent weights (lambda1, lambda2) on the two loss terms.
// Unit        (1, 1)
// Reciprocal  (1/t, 1/(1-t))
// Exponential (e^t, e^{1-t})
// Adaptive    ((t^2-t+1)/t, (t^2-t+1)/(1-t)^2)
// lambda1 blows up as t->0 and lambda2 as t->1 for the non-unit schemes,
// balancing the two terms; t is clipped before evaluation to keep both finite.
enum class WeightScheme { Unit, Reciprocal, Exponential, Adaptive };

enum class LossType { L1, L2, L1plusL2 };

struct LossConfig {
    WeightScheme scheme = WeightScheme::Adaptive;
    LossType loss_type = LossType::L2;
    double t_clip = 1e-3;  // in (0, 0.05]
};

WeightScheme weight_scheme_from_string(const std::string& s);
std::string weight_scheme_to_string(WeightScheme s);
LossType loss_type_from_string(const std::string& s);
std::string loss_type_to_string(LossType t);

// (lambda1, lambda2) at time t; the caller clips t into [t_clip, 1 - t_clip].
std::pair<double, double> loss_weights(WeightScheme scheme, double t);

double clip_time(double t, double t_clip);

// Elementwise-mean distance between prediction and target: mean |.|, mean
// squared, or their sum.
double pair_loss(const Matrix& out, const Matrix& target, LossType type);

// Full two-term loss: lambda1 * d(phi_hat, phi) + lambda2 * d(eps_hat, eps)
// with weights evaluated at the clipped t.
double ddm_loss(const Matrix& phi_hat, const Matrix& eps_hat, const Matrix& phi,
                const Matrix& eps, double t, const LossConfig& cfg);

}  // namespace ddm
