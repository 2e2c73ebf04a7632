#include "pfapipe/json_params.hpp"

#include <fstream>

#include <json.hpp>

namespace pfapipe {

namespace {

using nlohmann::json;

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw FormatError("config: unknown key '" + key + "' in " + where);
    }
  }
}

}  // namespace

ToolParams tool_params_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  check_keys(j, {"bm3d", "guided", "threads"}, "top level");

  ToolParams p;
  try {
    if (j.contains("bm3d")) {
      const json& b = j.at("bm3d");
      check_keys(b,
                 {"block_size", "step", "search_radius", "max_blocks_stage1",
                  "max_blocks_stage2", "lambda_hard", "tau_match_stage1",
                  "tau_match_stage2", "kaiser_beta"},
                 "bm3d");
      read_field(b, "block_size", p.bm3d.block_size);
      read_field(b, "step", p.bm3d.step);
      read_field(b, "search_radius", p.bm3d.search_radius);
      read_field(b, "max_blocks_stage1", p.bm3d.max_blocks_stage1);
      read_field(b, "max_blocks_stage2", p.bm3d.max_blocks_stage2);
      read_field(b, "lambda_hard", p.bm3d.lambda_hard);
      read_field(b, "tau_match_stage1", p.bm3d.tau_match_stage1);
      read_field(b, "tau_match_stage2", p.bm3d.tau_match_stage2);
      read_field(b, "kaiser_beta", p.bm3d.kaiser_beta);
    }
    if (j.contains("guided")) {
      const json& g = j.at("guided");
      check_keys(g, {"radius", "epsilon", "bayer_radius", "bayer_epsilon", "iterations"},
                 "guided");
      read_field(g, "radius", p.demosaic.polar_gf.radius);
      read_field(g, "epsilon", p.demosaic.polar_gf.epsilon);
      read_field(g, "bayer_radius", p.demosaic.bayer_gf.radius);
      read_field(g, "bayer_epsilon", p.demosaic.bayer_gf.epsilon);
      read_field(g, "iterations", p.demosaic.guide_iterations);
    }
    read_field(j, "threads", p.threads);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config: ") + e.what());
  }
  p.bm3d.validate();
  p.demosaic.validate();
  return p;
}

ToolParams tool_params_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config '" + path + "'");
  }
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return tool_params_from_json(text);
}

std::string tool_params_to_json(const ToolParams& p) {
  json j;
  j["bm3d"] = {{"block_size", p.bm3d.block_size},
               {"step", p.bm3d.step},
               {"search_radius", p.bm3d.search_radius},
               {"max_blocks_stage1", p.bm3d.max_blocks_stage1},
               {"max_blocks_stage2", p.bm3d.max_blocks_stage2},
               {"lambda_hard", p.bm3d.lambda_hard},
               {"tau_match_stage1", p.bm3d.tau_match_stage1},
               {"tau_match_stage2", p.bm3d.tau_match_stage2},
               {"kaiser_beta", p.bm3d.kaiser_beta}};
  j["guided"] = {{"radius", p.demosaic.polar_gf.radius},
                 {"epsilon", p.demosaic.polar_gf.epsilon},
                 {"bayer_radius", p.demosaic.bayer_gf.radius},
                 {"bayer_epsilon", p.demosaic.bayer_gf.epsilon},
                 {"iterations", p.demosaic.guide_iterations}};
  j["threads"] = p.threads;
  return j.dump(2);
}

}  // namespace pfapipe
