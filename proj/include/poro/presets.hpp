#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "poro/material.hpp"

namespace poro {

/// Named reference media: sandstone_ortho, glass_epoxy, sandstone_iso, shale_iso.
std::optional<MaterialSpec> material_preset(std::string_view name);

std::vector<std::string> material_preset_names();

}  // namespace poro
