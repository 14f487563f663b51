#pragma once

namespace vortex {

// Selects between the OpenMP kernels and their serial reference versions.
// Both variants use the same reduction order, so results are bit-identical.
enum class Exec { serial, parallel };

}  // namespace vortex
