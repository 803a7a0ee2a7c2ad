#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "ddm/attenuation.hpp"
#include "ddm/matrix.hpp"
#include "ddm/rng.hpp"

namespace ddm {

// Predicted attenuation parameters and noise at (x_t, t).
struct DenoiserOutput {
    Phi phi;
    Matrix eps;
};

using Denoiser = std::function<DenoiserOutput(const Matrix& x_t, double t)>;

// Uniform evaluation times t_1 = 1 > ... > t_K = smallest_t. Each evaluation
// powers one transition; the last one (smallest_t -> 0) is mean-only, so the
// denoiser is queried exactly n_steps times per sample.
struct StepSchedule {
    std::size_t n_steps = 0;
    double smallest_t = 1e-3;
    std::vector<double> times;

    static StepSchedule uniform(std::size_t n_steps, double smallest_t = 1e-3);
};

struct PosteriorParams {
    Matrix mean;
    double var = 0.0;
};

// Gaussian transition q(x_{t-s} | x_t, x0) for an arbitrary step size s:
// mean = x_t + H_{t-s} - H_t - (s/sqrt(t)) eps, var = s(t-s)/t.
// Requires 0 < s <= t <= 1; var is exactly zero at s = t.
PosteriorParams posterior_params(const Matrix& x_t, double t, double s,
                                 const Phi& phi_hat, const Matrix& eps_hat);

struct SampleTrace {
    Matrix final;
    std::vector<std::pair<double, Matrix>> x0_estimates;  // (t, -H_1(phi_hat)) per step
};

// Generates n_samples points of the given dimension: starts at x ~ N(0, I),
// walks the schedule drawing x <- mean + sigma * xi, finishing with the
// mean-only step to zero. Aborts on non-finite denoiser output.
SampleTrace sample(const Denoiser& denoiser, const StepSchedule& schedule,
                   std::size_t n_samples, std::size_t dim, RngStream& rng);

// Per-step MSE between the recorded x0 estimates and a reference (usually
// the final sample of the same trace).
std::vector<std::pair<double, double>> x0_trajectory_error(const SampleTrace& trace,
                                                           const Matrix& reference);

}  // namespace ddm
