#pragma once

#include <vector>

#include "ddm/matrix.hpp"
#include "ddm/reverse.hpp"
#include "ddm/rng.hpp"

namespace ddm {

// Diagonal-covariance Gaussian mixture; the test-data model for which the
// Bayes-optimal denoiser has a closed form under the Constant family.
struct GaussianMixture {
    std::vector<double> weights;  // simplex
    Matrix means;                 // K x d
    Matrix vars;                  // K x d, diagonal entries, > 0

    std::size_t components() const { return weights.size(); }
    std::size_t dim() const { return means.cols; }
    void validate() const;
};

Matrix sample_gmm(const GaussianMixture& gmm, std::size_t n, RngStream& rng);

// Exact posterior mean E[x0 | x_t] under x_t = (1-t) x0 + sqrt(t) eps.
Matrix gmm_posterior_mean_x0(const GaussianMixture& gmm, const Matrix& x_t, double t);

// Bayes-optimal prediction for the Constant family:
// phi* = -E[x0|x_t], eps* = (x_t - (1-t) E[x0|x_t]) / sqrt(t).
// t must lie in [1e-6, 1]; below that the eps* division is unstable.
DenoiserOutput oracle_predict(const GaussianMixture& gmm, const Matrix& x_t, double t);

Denoiser make_oracle_denoiser(GaussianMixture gmm);

}  // namespace ddm
