#pragma once

#include "canondae/types.hpp"

namespace canondae {

/// Matrix exponential by scaling-and-squaring with a diagonal Pade
/// approximant of degree 13, scaled on the spectral norm.
Matrix expm(const Matrix& a);

}  // namespace canondae
