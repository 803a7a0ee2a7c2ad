#include "ddm/forward.hpp"

#include <cmath>
#include <stdexcept>

#include "ddm/linalg.hpp"

namespace ddm {

Matrix sample_xt(const Matrix& x0, const Phi& phi, double t, const Matrix& eps) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("sample_xt: t must lie in [0, 1]");
    require_same_shape(x0, eps, "sample_xt");
    if (phi.n() != x0.rows || phi.dim() != x0.cols)
        throw std::invalid_argument("sample_xt: phi shape disagrees with x0");
    Matrix x_t = big_h(phi, t);
    linalg::add_inplace(x_t, x0);
    linalg::axpy_inplace(x_t, std::sqrt(t), eps);
    return x_t;
}

ForwardSample draw_forward(const Matrix& x0, const AttenuationFamily& family,
                           double t, RngStream& rng) {
    ForwardSample s;
    s.t = t;
    s.phi = solve_phi(family, x0, rng);
    s.eps = gaussian(rng, x0.rows, x0.cols);
    s.x_t = sample_xt(x0, s.phi, t, s.eps);
    return s;
}

Matrix forward_sde_simulate(const Matrix& x0, const Phi& phi, std::size_t n_steps,
                            RngStream& rng) {
    if (n_steps < 10) throw std::invalid_argument("forward_sde_simulate: n_steps must be >= 10");
    const double dt = 1.0 / static_cast<double>(n_steps);
    const double sqrt_dt = std::sqrt(dt);
    Matrix x = x0;
    Matrix noise(x0.rows, x0.cols);
    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        const Matrix h = h_at(phi, t);
        linalg::axpy_inplace(x, dt, h);
        rng.fill_gaussian(noise.data.data(), noise.size());
        linalg::axpy_inplace(x, sqrt_dt, noise);
    }
    return x;
}

}  // namespace ddm
