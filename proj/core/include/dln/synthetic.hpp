#pragma once

#include "dln/moments.hpp"

#include <cstdint>

namespace dln {

enum class TargetKind { linear, tanh };

// x ~ N(0, I_dim), y = v . x (or v . tanh(x)) with v a Gaussian direction
// rescaled to norm `v_norm`. Deterministic given the seed on a given platform.
Dataset generate_gaussian(int dim, int n, double v_norm, std::uint64_t seed, TargetKind target = TargetKind::linear);

}  // namespace dln
