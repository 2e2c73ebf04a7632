#pragma once

#include <string>

#include "pfapipe/bm3d.hpp"
#include "pfapipe/demosaic.hpp"

namespace pfapipe {

struct ToolParams {
  Bm3dParams bm3d;
  DemosaicParams demosaic;
  int threads = 0;  // 0 = hardware default
};

// Parses the optional config document. Unknown keys are rejected to catch
// typos; every field defaults to the built-in value.
ToolParams tool_params_from_json(const std::string& json_text);
ToolParams tool_params_from_file(const std::string& path);
std::string tool_params_to_json(const ToolParams& params);

}  // namespace pfapipe
