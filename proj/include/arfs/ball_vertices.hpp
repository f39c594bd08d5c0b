#pragma once

#include "arfs/normed_space.hpp"

namespace arfs {

/// Extreme points of Y intersected with the closed unit ball of an L1 or LInf
/// norm, as columns in ambient coordinates. Only one point of each +-v pair
/// is kept. The zero subspace has no columns.
Matrix ball_vertices(const Subspace& Y, NormKind kind);

/// max_v |phi . v| over the columns of `vertices`.
double max_abs_pairing(const Vector& phi, const Matrix& vertices);

}  // namespace arfs
