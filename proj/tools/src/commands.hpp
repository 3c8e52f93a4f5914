#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "json.hpp"

namespace frameforge::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct Section {
  std::string name;  // key in the report
  json body;
  bool pass = true;
  std::vector<json> flags;
};

Section cmd_frame(const RunConfig& cfg, const std::filesystem::path& out);
Section cmd_congruence(const RunConfig& cfg, const std::filesystem::path& out);
Section cmd_maxwell(const RunConfig& cfg, const std::filesystem::path& out);
Section cmd_energy(const RunConfig& cfg, const std::filesystem::path& out);

json config_json(const RunConfig& cfg);

}  // namespace frameforge::cli
