#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "plageval/casegen.hpp"
#include "plageval/lexer.hpp"
#include "plageval/pairsel.hpp"

namespace plageval {

/// Settings shared by the pipeline commands. Loaded from a config document,
/// then overridden by environment variables (serve) and flags.
struct PipelineConfig {
  // Paths.
  std::string manifest;
  std::string similarities;
  std::vector<std::string> case_templates;
  std::vector<std::string> cases;  // case bundles
  std::string selection;
  std::string store = "survey-store/responses.jsonl";
  std::string responses;
  std::string coded;
  std::string out = "out";

  // Thresholds.
  int min_match = 2;
  double alpha = 0.05;
  double min_delta = 0.0;

  std::map<int, int> quotas = kDefaultLevelQuota;
  int groups = 3;
  std::uint64_t seed = kDefaultCaseSeed;
  Abstraction mode = Abstraction::Category;

  std::string bind = "127.0.0.1:8080";
  std::string admin_token;
};

/// Applies a config document on top of `base`. Relative paths resolve
/// against `base_dir`. Throws Error("InvalidDocument") on unknown keys or
/// wrong types.
PipelineConfig merge_config(PipelineConfig base, const nlohmann::json& doc,
                            const std::string& base_dir);

PipelineConfig load_config(const std::string& path, PipelineConfig base = {});

/// Throws Error("UsageError") unless alpha is in (0, 1), minMatch >= 1,
/// groups >= 1, minDelta >= 0 and every quota is non-negative.
void validate_config(const PipelineConfig& config);

/// Snapshot for effective-config.json. The admin token is masked.
nlohmann::json config_to_json(const PipelineConfig& config);

/// "2:5,3:9" -> {2:5, 3:9}. Throws Error("UsageError").
std::map<int, int> parse_quotas(const std::string& text);

/// "host:port" -> (host, port). Throws Error("UsageError").
std::pair<std::string, int> parse_bind(const std::string& text);

}  // namespace plageval
