#include "ddm/objective.hpp"

#include <cmath>
#include <stdexcept>

#include "ddm/linalg.hpp"

namespace ddm {

WeightScheme weight_scheme_from_string(const std::string& s) {
    if (s == "unit") return WeightScheme::Unit;
    if (s == "reciprocal") return WeightScheme::Reciprocal;
    if (s == "exponential") return WeightScheme::Exponential;
    if (s == "adaptive") return WeightScheme::Adaptive;
    throw std::invalid_argument("unknown weight scheme: " + s);
}

std::string weight_scheme_to_string(WeightScheme s) {
    switch (s) {
        case WeightScheme::Unit: return "unit";
        case WeightScheme::Reciprocal: return "reciprocal";
        case WeightScheme::Exponential: return "exponential";
        case WeightScheme::Adaptive: return "adaptive";
    }
    throw std::logic_error("bad weight scheme");
}

LossType loss_type_from_string(const std::string& t) {
    if (t == "l1") return LossType::L1;
    if (t == "l2") return LossType::L2;
    if (t == "l1+l2") return LossType::L1plusL2;
    throw std::invalid_argument("unknown loss type: " + t);
}

std::string loss_type_to_string(LossType t) {
    switch (t) {
        case LossType::L1: return "l1";
        case LossType::L2: return "l2";
        case LossType::L1plusL2: return "l1+l2";
    }
    throw std::logic_error("bad loss type");
}

std::pair<double, double> loss_weights(WeightScheme scheme, double t) {
    switch (scheme) {
        case WeightScheme::Unit:
            return {1.0, 1.0};
        case WeightScheme::Reciprocal:
            return {1.0 / t, 1.0 / (1.0 - t)};
        case WeightScheme::Exponential:
            return {std::exp(t), std::exp(1.0 - t)};
        case WeightScheme::Adaptive: {
            const double q = t * t - t + 1.0;
            return {q / t, q / ((1.0 - t) * (1.0 - t))};
        }
    }
    throw std::logic_error("bad weight scheme");
}

double clip_time(double t, double t_clip) {
    if (!(t_clip > 0.0) || t_clip > 0.05)
        throw std::invalid_argument("t_clip must lie in (0, 0.05]");
    return std::min(std::max(t, t_clip), 1.0 - t_clip);
}

double pair_loss(const Matrix& out, const Matrix& target, LossType type) {
    require_same_shape(out, target, "pair_loss");
    const double inv_n = 1.0 / static_cast<double>(out.size());
    double l1 = 0.0, l2 = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out.data[i] - target.data[i];
        if (type != LossType::L2) l1 += std::fabs(d);
        if (type != LossType::L1) l2 += d * d;
    }
    switch (type) {
        case LossType::L1: return l1 * inv_n;
        case LossType::L2: return l2 * inv_n;
        case LossType::L1plusL2: return (l1 + l2) * inv_n;
    }
    throw std::logic_error("bad loss type");
}

double ddm_loss(const Matrix& phi_hat, const Matrix& eps_hat, const Matrix& phi,
                const Matrix& eps, double t, const LossConfig& cfg) {
    const auto [l1w, l2w] = loss_weights(cfg.scheme, clip_time(t, cfg.t_clip));
    return l1w * pair_loss(phi_hat, phi, cfg.loss_type) +
           l2w * pair_loss(eps_hat, eps, cfg.loss_type);
}

}  // namespace ddm
