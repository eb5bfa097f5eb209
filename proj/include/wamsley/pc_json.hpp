#pragma once

#include <string>

#include "wamsley/pc.hpp"

namespace wamsley {

// Generator indices are 1-based in the document; entries equal to the defaults are omitted.
std::string pc_to_json(const PcPresentation& P);
PcPresentation pc_from_json(const std::string& text);

}  // namespace wamsley
