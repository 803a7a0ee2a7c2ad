#pragma once

#include <string>

#include "ddm/matrix.hpp"
#include "ddm/rng.hpp"

namespace ddm {

// Analytic attenuation families h_t driving the sample to zero over t in
// [0,1]: for parameters solved by solve_phi, x0 + H_1 = 0 with
// H_t = integral of h_u over [0, t].
//
//   Constant: h_t = c            H_t = c t
//   Linear:   h_t = a t + c      H_t = a t^2/2 + c t
//   Sine:     h_t = sin(a t + c) H_t = (cos c - cos(a t + c)) / a
//
// Sine bounds h_t to [-1, 1], so large |x0| coordinates can be unsolvable;
// the fallback policy decides what happens then. Sine is experimental.
enum class Family { Constant, Linear, Sine };

enum class SineFallback { FallbackToConstant, HardError };

struct AttenuationFamily {
    Family kind = Family::Constant;
    SineFallback fallback = SineFallback::FallbackToConstant;
};

Family family_from_string(const std::string& name);
std::string family_to_string(Family f);

// Number of per-coordinate parameters: d for Constant, 2d for Linear/Sine
// (columns laid out a0..a{d-1}, c0..c{d-1}).
std::size_t phi_dim(Family f, std::size_t d);

// Per-sample attenuation parameters. For Sine rows where a coordinate fell
// back, that coordinate behaves as Constant (a = 0 marks the fallback).
struct Phi {
    AttenuationFamily family;
    Matrix params;  // n x phi_dim

    std::size_t n() const { return params.rows; }
    std::size_t dim() const;  // data dimension d
};

// Ground-truth parameters: solves x0 + H_1 = 0 row-wise. Constant is
// deterministic (c = -x0); Linear samples a ~ N(0,I) and sets
// c = -x0 - a/2; Sine samples a ~ N(0,I) (clamped away from 0) and solves
// for c by bisection, falling back per policy when |x0| exceeds the
// family's attainable range.
Phi solve_phi(const AttenuationFamily& family, const Matrix& x0, RngStream& rng);

// H_t elementwise; t must lie in [0, 1].
Matrix big_h(const Phi& phi, double t);

// h_t elementwise (the integrand; used by the pathwise simulator).
Matrix h_at(const Phi& phi, double t);

// Implied clean sample: -H_1.
Matrix x0_from_phi(const Phi& phi);

// Wraps raw (e.g. network-predicted) parameters as a Phi for the family.
Phi phi_from_params(const AttenuationFamily& family, Matrix params);

}  // namespace ddm
