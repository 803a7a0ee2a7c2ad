#include "ddm/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddm {

void GaussianMixture::validate() const {
    const std::size_t k = weights.size();
    if (k == 0) throw std::invalid_argument("gmm: no components");
    if (means.rows != k || vars.rows != k || means.cols != vars.cols)
        throw std::invalid_argument("gmm: weights/means/vars shapes disagree");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw std::invalid_argument("gmm: negative weight");
        wsum += w;
    }
    if (std::fabs(wsum - 1.0) > 1e-12) throw std::invalid_argument("gmm: weights must sum to 1");
    for (double v : vars.data)
        if (!(v > 0.0)) throw std::invalid_argument("gmm: variances must be positive");
}

Matrix sample_gmm(const GaussianMixture& gmm, std::size_t n, RngStream& rng) {
    gmm.validate();
    const std::size_t d = gmm.dim();
    Matrix out(n, d);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        std::size_t k = 0;
        double acc = 0.0;
        for (; k + 1 < gmm.components(); ++k) {
            acc += gmm.weights[k];
            if (u < acc) break;
        }
        for (std::size_t j = 0; j < d; ++j)
            out(i, j) = gmm.means(k, j) + std::sqrt(gmm.vars(k, j)) * rng.next_gaussian();
    }
    return out;
}

Matrix gmm_posterior_mean_x0(const GaussianMixture& gmm, const Matrix& x_t, double t) {
    gmm.validate();
    const std::size_t n = x_t.rows, d = x_t.cols, kn = gmm.components();
    if (d != gmm.dim()) throw std::invalid_argument("gmm_posterior_mean_x0: dimension mismatch");
    const double u = 1.0 - t;

    Matrix mean(n, d);
    std::vector<double> logr(kn);
    std::vector<double> cond(kn * d);
    for (std::size_t i = 0; i < n; ++i) {
        double logmax = -1e300;
        for (std::size_t k = 0; k < kn; ++k) {
            // marginal of x_t under component k: N(u mu_k, u^2 sigma_k^2 + t)
            double lp = std::log(gmm.weights[k]);
            for (std::size_t j = 0; j < d; ++j) {
                const double mv = u * u * gmm.vars(k, j) + t;
                const double diff = x_t(i, j) - u * gmm.means(k, j);
                lp += -0.5 * (diff * diff / mv + std::log(2.0 * std::numbers::pi * mv));
                cond[k * d + j] = gmm.means(k, j) + u * gmm.vars(k, j) / mv * diff;
            }
            logr[k] = lp;
            logmax = std::max(logmax, lp);
        }
        double rsum = 0.0;
        for (std::size_t k = 0; k < kn; ++k) {
            logr[k] = std::exp(logr[k] - logmax);
            rsum += logr[k];
        }
        for (std::size_t j = 0; j < d; ++j) {
            double m = 0.0;
            for (std::size_t k = 0; k < kn; ++k) m += logr[k] / rsum * cond[k * d + j];
            mean(i, j) = m;
        }
    }
    return mean;
}

DenoiserOutput oracle_predict(const GaussianMixture& gmm, const Matrix& x_t, double t) {
    if (t < 1e-6 || t > 1.0)
        throw std::invalid_argument("oracle_predict: t must lie in [1e-6, 1]");
    const Matrix ex0 = gmm_posterior_mean_x0(gmm, x_t, t);
    const double u = 1.0 - t;
    const double inv_sqrt_t = 1.0 / std::sqrt(t);

    DenoiserOutput out;
    out.phi.family.kind = Family::Constant;
    out.phi.params = Matrix(x_t.rows, x_t.cols);
    out.eps = Matrix(x_t.rows, x_t.cols);
    for (std::size_t i = 0; i < x_t.size(); ++i) {
        out.phi.params.data[i] = -ex0.data[i];
        out.eps.data[i] = (x_t.data[i] - u * ex0.data[i]) * inv_sqrt_t;
    }
    return out;
}

Denoiser make_oracle_denoiser(GaussianMixture gmm) {
    gmm.validate();
    return [gmm = std::move(gmm)](const Matrix& x_t, double t) {
        return oracle_predict(gmm, x_t, t);
    };
}

}  // namespace ddm
