#pragma once

#include "ddm/attenuation.hpp"
#include "ddm/matrix.hpp"
#include "ddm/rng.hpp"

namespace ddm {

// One forward draw with everything needed to reconstruct it exactly:
// x_t = x0 + H_t(phi) + sqrt(t) * eps.
struct ForwardSample {
    Matrix x_t;
    double t = 0.0;
    Matrix eps;
    Phi phi;
};

// Closed-form marginal draw: x0 + H_t + sqrt(t) * eps.
Matrix sample_xt(const Matrix& x0, const Phi& phi, double t, const Matrix& eps);

// Convenience: solves phi, draws eps, returns the full sample.
ForwardSample draw_forward(const Matrix& x0, const AttenuationFamily& family,
                           double t, RngStream& rng);

// Euler-Maruyama simulation of dx = h_t dt + dw from 0 to 1; returns the
// endpoint. Exists as a test oracle for the closed-form marginal --
// production sampling always uses sample_xt.
Matrix forward_sde_simulate(const Matrix& x0, const Phi& phi, std::size_t n_steps,
                            RngStream& rng);

}  // namespace ddm
