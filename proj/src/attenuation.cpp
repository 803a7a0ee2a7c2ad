#include "ddm/attenuation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ddm {

namespace {

constexpr double kPi = std::numbers::pi;

// Sine parameter magnitudes are kept inside (0, 6]: away from zero so the
// 1/a terms stay stable, and below 2*pi so H_1(c) is monotonic on the
// bisection bracket.
constexpr double kSineAmin = 5e-2;
constexpr double kSineAmax = 6.0;

double clamp_sine_a(double a) {
    const double mag = std::fabs(a);
    const double sign = a < 0.0 ? -1.0 : 1.0;
    if (mag < kSineAmin) return sign * kSineAmin;
    if (mag > kSineAmax) return sign * kSineAmax;
    return a;
}

// H_1 as a function of the phase: H_1(c) = amp * sin(c + a/2) with
// amp = 2 sin(a/2) / a (> 0 for 0 < |a| < 2*pi).
double sine_amplitude(double a) { return 2.0 * std::sin(0.5 * a) / a; }

double wrap_to_pi(double c) {
    if (c > kPi) return c - 2.0 * kPi;
    if (c < -kPi) return c + 2.0 * kPi;
    return c;
}

// Solves amp * sin(u) = -x0 for u in [-pi/2, pi/2] by bisection, then
// c = u - a/2. Returns false when |x0| exceeds the attainable amplitude.
bool solve_sine_coord(double x0, double a, double& c_out) {
    const double amp = sine_amplitude(a);
    if (std::fabs(x0) > amp) return false;
    double lo = -0.5 * kPi, hi = 0.5 * kPi;
    // g(lo) = -amp + x0 <= 0 <= amp + x0 = g(hi)
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double g = amp * std::sin(mid) + x0;
        if (g > 0.0)
            hi = mid;
        else
            lo = mid;
    }
    c_out = wrap_to_pi(0.5 * (lo + hi) - 0.5 * a);
    return true;
}

double sine_big_h(double a, double c, double t) {
    if (a == 0.0) return c * t;  // fallback marker: constant-c semantics
    if (std::fabs(a) < 1e-6)     // series around a = 0 keeps 1/a stable
        return t * std::sin(c) + 0.5 * a * t * t * std::cos(c);
    return (std::cos(c) - std::cos(a * t + c)) / a;
}

double sine_h(double a, double c, double t) {
    if (a == 0.0) return c;
    return std::sin(a * t + c);
}

}  // namespace

Family family_from_string(const std::string& name) {
    if (name == "constant") return Family::Constant;
    if (name == "linear") return Family::Linear;
    if (name == "sine") return Family::Sine;
    throw std::invalid_argument("unknown attenuation family: " + name);
}

std::string family_to_string(Family f) {
    switch (f) {
        case Family::Constant: return "constant";
        case Family::Linear: return "linear";
        case Family::Sine: return "sine";
    }
    throw std::logic_error("bad family");
}

std::size_t phi_dim(Family f, std::size_t d) {
    return f == Family::Constant ? d : 2 * d;
}

std::size_t Phi::dim() const {
    return family.kind == Family::Constant ? params.cols : params.cols / 2;
}

Phi solve_phi(const AttenuationFamily& family, const Matrix& x0, RngStream& rng) {
    if (!x0.all_finite()) throw std::invalid_argument("solve_phi: x0 must be finite");
    const std::size_t n = x0.rows, d = x0.cols;
    Phi phi;
    phi.family = family;

    switch (family.kind) {
        case Family::Constant: {
            phi.params = Matrix(n, d);
            for (std::size_t i = 0; i < x0.size(); ++i) phi.params.data[i] = -x0.data[i];
            break;
        }
        case Family::Linear: {
            // integral of (a t + c) over [0,1] = a/2 + c = -x0
            const Matrix a = gaussian(rng, n, d);
            phi.params = Matrix(n, 2 * d);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    phi.params(i, j) = a(i, j);
                    phi.params(i, d + j) = -x0(i, j) - 0.5 * a(i, j);
                }
            break;
        }
        case Family::Sine: {
            const Matrix a_raw = gaussian(rng, n, d);
            phi.params = Matrix(n, 2 * d);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    const double a = clamp_sine_a(a_raw(i, j));
                    double c = 0.0;
                    if (solve_sine_coord(x0(i, j), a, c)) {
                        phi.params(i, j) = a;
                        phi.params(i, d + j) = c;
                    } else if (family.fallback == SineFallback::FallbackToConstant) {
                        phi.params(i, j) = 0.0;
                        phi.params(i, d + j) = -x0(i, j);
                    } else {
                        throw std::runtime_error("solve_phi: sine family cannot reach |x0| > 2|sin(a/2)/a|");
                    }
                }
            break;
        }
    }
    return phi;
}

Matrix big_h(const Phi& phi, double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("big_h: t must lie in [0, 1]");
    const std::size_t n = phi.n(), d = phi.dim();
    Matrix out(n, d);
    switch (phi.family.kind) {
        case Family::Constant:
            for (std::size_t i = 0; i < out.size(); ++i) out.data[i] = phi.params.data[i] * t;
            break;
        case Family::Linear:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = 0.5 * phi.params(i, j) * t * t + phi.params(i, d + j) * t;
            break;
        case Family::Sine:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = sine_big_h(phi.params(i, j), phi.params(i, d + j), t);
            break;
    }
    return out;
}

Matrix h_at(const Phi& phi, double t) {
    if (t < 0.0 || t > 1.0) throw std::invalid_argument("h_at: t must lie in [0, 1]");
    const std::size_t n = phi.n(), d = phi.dim();
    Matrix out(n, d);
    switch (phi.family.kind) {
        case Family::Constant:
            out.data = phi.params.data;
            break;
        case Family::Linear:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = phi.params(i, j) * t + phi.params(i, d + j);
            break;
        case Family::Sine:
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    out(i, j) = sine_h(phi.params(i, j), phi.params(i, d + j), t);
            break;
    }
    return out;
}

Matrix x0_from_phi(const Phi& phi) {
    Matrix h1 = big_h(phi, 1.0);
    for (double& v : h1.data) v = -v;
    return h1;
}

Phi phi_from_params(const AttenuationFamily& family, Matrix params) {
    if (family.kind != Family::Constant && params.cols % 2 != 0)
        throw std::invalid_argument("phi_from_params: two-parameter family needs even column count");
    Phi phi;
    phi.family = family;
    phi.params = std::move(params);
    return phi;
}

}  // namespace ddm
