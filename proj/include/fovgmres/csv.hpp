#pragma once

#include <fovgmres/types.hpp>

#include <string>

namespace fovgmres {

/// Scientific format with 17 significant digits; round-trips doubles exactly
/// so regression outputs are byte-stable.
std::string fmt17(Real v);

}  // namespace fovgmres
