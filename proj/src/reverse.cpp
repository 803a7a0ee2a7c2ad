#include "ddm/reverse.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ddm/linalg.hpp"

namespace ddm {

StepSchedule StepSchedule::uniform(std::size_t n_steps, double smallest_t) {
    if (n_steps < 1) throw std::invalid_argument("StepSchedule: n_steps must be >= 1");
    if (smallest_t <= 0.0 || smallest_t >= 1.0)
        throw std::invalid_argument("StepSchedule: smallest_t must lie in (0, 1)");
    StepSchedule sched;
    sched.n_steps = n_steps;
    sched.smallest_t = smallest_t;
    sched.times.resize(n_steps);
    if (n_steps == 1) {
        sched.times[0] = 1.0;
        return sched;
    }
    const double s = (1.0 - smallest_t) / static_cast<double>(n_steps - 1);
    for (std::size_t k = 0; k < n_steps; ++k)
        sched.times[k] = 1.0 - s * static_cast<double>(k);
    sched.times.back() = smallest_t;  // pin the endpoint exactly
    return sched;
}

PosteriorParams posterior_params(const Matrix& x_t, double t, double s,
                                 const Phi& phi_hat, const Matrix& eps_hat) {
    if (!(s > 0.0) || s > t || t > 1.0)
        throw std::invalid_argument("posterior_params: need 0 < s <= t <= 1");
    require_same_shape(x_t, eps_hat, "posterior_params");

    PosteriorParams post;
    post.var = s * (t - s) / t;
    post.mean = x_t;
    Matrix h_prev = big_h(phi_hat, t - s);
    Matrix h_cur = big_h(phi_hat, t);
    linalg::add_inplace(post.mean, h_prev);
    linalg::sub_inplace(post.mean, h_cur);
    linalg::axpy_inplace(post.mean, -s / std::sqrt(t), eps_hat);
    return post;
}

SampleTrace sample(const Denoiser& denoiser, const StepSchedule& schedule,
                   std::size_t n_samples, std::size_t dim, RngStream& rng) {
    if (schedule.times.empty()) throw std::invalid_argument("sample: empty schedule");
    if (schedule.n_steps == 1)
        std::fprintf(stderr,
                     "warning: one-step generation (s = t = 1) has zero posterior "
                     "variance; expect blurred, low-diversity output\n");

    SampleTrace trace;
    trace.x0_estimates.reserve(schedule.n_steps);
    Matrix x = gaussian(rng, n_samples, dim);
    Matrix noise(n_samples, dim);

    for (std::size_t k = 0; k < schedule.times.size(); ++k) {
        const double t = schedule.times[k];
        const bool last = k + 1 == schedule.times.size();
        const double t_next = last ? 0.0 : schedule.times[k + 1];
        const double s = t - t_next;

        DenoiserOutput out = denoiser(x, t);
        if (!out.eps.all_finite() || !out.phi.params.all_finite()) {
            char msg[96];
            std::snprintf(msg, sizeof msg, "sample: non-finite denoiser output at t=%.6f (step %zu)", t, k);
            throw std::runtime_error(msg);
        }

        trace.x0_estimates.emplace_back(t, x0_from_phi(out.phi));

        PosteriorParams post = posterior_params(x, t, s, out.phi, out.eps);
        x = std::move(post.mean);
        if (!last && post.var > 0.0) {
            rng.fill_gaussian(noise.data.data(), noise.size());
            linalg::axpy_inplace(x, std::sqrt(post.var), noise);
        }
        // last transition (smallest_t -> 0) is mean-only by construction
    }
    trace.final = std::move(x);
    return trace;
}

std::vector<std::pair<double, double>> x0_trajectory_error(const SampleTrace& trace,
                                                           const Matrix& reference) {
    std::vector<std::pair<double, double>> out;
    out.reserve(trace.x0_estimates.size());
    for (const auto& [t, est] : trace.x0_estimates)
        out.emplace_back(t, linalg::mse(est, reference));
    return out;
}

}  // namespace ddm
