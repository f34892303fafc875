#pragma once

// Central tolerance registry. Every numerical gate in the library routes
// through one of these so the knobs live in a single place.

namespace gptlab::tol {

// |<w,w> - 1| gate used when deciding purity from the self-inner-product.
inline constexpr double inner = 1e-10;

// Cone membership slack (smallest eigenvalue / coordinate may dip this far
// below zero before we call a vector invalid).
inline constexpr double cone = 1e-9;

// Frame orthogonality and e_i(w_j) = delta_ij checks.
inline constexpr double frame = 1e-8;

// Eigenvalues closer than this are merged into one eigenspace.
inline constexpr double eig = 1e-9;

// Weights below this threshold count as zero (support size, log branches).
inline constexpr double support = 1e-12;

// A candidate decomposition is accepted only if || sum q_j w_j - w || is
// at most this, measured in the space's inner-product norm.
inline constexpr double residual = 1e-7;

// Slack granted to the best-effort optimizers in report invariants.
inline constexpr double opt = 1e-6;

// Normalization gate for operations that require a normalized state.
inline constexpr double norm = 1e-8;

}  // namespace gptlab::tol
