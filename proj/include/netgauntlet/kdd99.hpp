#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "netgauntlet/dataset.hpp"

namespace netgauntlet::kdd99 {

/// The published 41-feature connection-record schema: protocol_type,
/// service and flag are categorical, everything else continuous.
const std::vector<FeatureMeta>& schema();

/// Attack name -> category5 class index (1=dos, 2=probe, 3=r2l, 4=u2r),
/// covering the standard taxonomy for both train and test attack names.
const std::unordered_map<std::string, int>& attack_categories();

/// Same table loaded from an editable `name:category` text file.
std::unordered_map<std::string, int> load_attack_map(const std::string& path);

LabelScheme scheme(LabelMode mode);
LabelScheme scheme(LabelMode mode, const std::string& attack_map_path);

} // namespace netgauntlet::kdd99
