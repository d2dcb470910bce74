#pragma once

#include <vector>

#include "bioassay/models.hpp"

namespace bioassay::detail {

std::vector<ModelDef> growth_models();
std::vector<ModelDef> dose_response_models();
std::vector<ModelDef> kinetic_models();

}  // namespace bioassay::detail
