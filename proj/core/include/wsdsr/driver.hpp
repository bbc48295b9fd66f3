#pragma once

#include "wsdsr/config.hpp"
#include "wsdsr/image.hpp"
#include "wsdsr/wsd.hpp"

namespace wsdsr {

/// Color handling of super_resolve_color. Y_only solves the luminance and
/// interpolates chroma bicubically; the other two drive block matching from Y
/// but filter every channel of the respective space.
enum class Profile { YOnly, YYCbCr, YRgb };

/// Filter strength at iteration k of K: gamma_k*((K-k)/K)^2 + gamma_s*s.
/// Strictly decreasing in k, reaching gamma_s*s at k = K.
double tau_schedule(int k, int total_iterations, double s, const GlobalParams& gp);

/// Input-dependent iteration heuristic: round(beta1 * mean squared bicubic
/// round-trip residual + beta0), capped at k_max.
int iteration_count(const Plane& y, double s, const GlobalParams& gp);

struct SolveOptions {
    int forced_iterations = 0;  // > 0 overrides the iteration heuristic
    const MatchTable* oracle_ht = nullptr;     // injected tables disable all
    const MatchTable* oracle_pilot = nullptr;  // match-table recomputation
    FilterStats* stats_out = nullptr;
    int* iterations_out = nullptr;
};

/// Iterative back-projection with the WSD regularizer on one plane.
/// Returns the final back-projected estimate, unclamped.
Plane super_resolve(const Plane& y, const ParamSet& params, const SolveOptions& opts = {});

/// Color front-end. Gray input falls back to the luminance-only path for any
/// profile; RGB output for RGB input.
MultiPlane super_resolve_color(const MultiPlane& img, const ParamSet& params, Profile profile,
                               const SolveOptions& opts = {});

}  // namespace wsdsr
