#include "plageval/pipeline.hpp"

#include <charconv>
#include <set>

#include "plageval/error.hpp"
#include "plageval/io.hpp"

namespace plageval {

namespace {

using nlohmann::json;

constexpr std::string_view kConfigSchema = "plageval.config/1";

const std::set<std::string> kKnownKeys = {
    "schema",  "manifest", "similarities", "caseTemplates", "cases",     "selection",
    "store",   "responses", "coded",       "out",           "minMatch",  "alpha",
    "minDelta", "quotas",  "groups",       "seed",          "mode",      "bind",
    "adminToken"};

int parse_int(std::string_view text, const std::string& what) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("UsageError", "invalid " + what + ": " + std::string(text));
  }
  return value;
}

}  // namespace

PipelineConfig merge_config(PipelineConfig c, const json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw Error("InvalidDocument", "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!kKnownKeys.contains(key)) throw Error("InvalidDocument", "unknown config key " + key);
  }
  if (doc.contains("schema") && doc["schema"] != kConfigSchema) {
    throw Error("InvalidDocument", "unsupported config schema " + doc["schema"].dump());
  }
  try {
    auto path = [&](const char* key, std::string& field) {
      if (doc.contains(key)) field = resolve_path(base_dir, doc[key].get<std::string>());
    };
    auto paths = [&](const char* key, std::vector<std::string>& field) {
      if (!doc.contains(key)) return;
      field.clear();
      for (const json& p : doc[key]) field.push_back(resolve_path(base_dir, p.get<std::string>()));
    };
    path("manifest", c.manifest);
    path("similarities", c.similarities);
    paths("caseTemplates", c.case_templates);
    paths("cases", c.cases);
    path("selection", c.selection);
    path("store", c.store);
    path("responses", c.responses);
    path("coded", c.coded);
    path("out", c.out);
    if (doc.contains("minMatch")) c.min_match = doc["minMatch"].get<int>();
    if (doc.contains("alpha")) c.alpha = doc["alpha"].get<double>();
    if (doc.contains("minDelta")) c.min_delta = doc["minDelta"].get<double>();
    if (doc.contains("quotas")) {
      c.quotas.clear();
      for (const auto& [level, n] : doc["quotas"].items()) {
        c.quotas[parse_int(level, "quota level")] = n.get<int>();
      }
    }
    if (doc.contains("groups")) c.groups = doc["groups"].get<int>();
    if (doc.contains("seed")) c.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("mode")) c.mode = abstraction_from_string(doc["mode"].get<std::string>());
    if (doc.contains("bind")) c.bind = doc["bind"].get<std::string>();
    if (doc.contains("adminToken")) c.admin_token = doc["adminToken"].get<std::string>();
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed config: ") + e.what());
  }
  return c;
}

PipelineConfig load_config(const std::string& path, PipelineConfig base) {
  return merge_config(std::move(base), read_json_file(path), parent_dir(path));
}

void validate_config(const PipelineConfig& c) {
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw Error("UsageError", "alpha must lie in (0, 1)");
  if (c.min_match < 1) throw Error("UsageError", "minMatch must be at least 1");
  if (c.groups < 1) throw Error("UsageError", "groups must be at least 1");
  if (c.min_delta < 0.0) throw Error("UsageError", "minDelta must be non-negative");
  for (const auto& [level, n] : c.quotas) {
    if (n < 0) throw Error("UsageError", "quota for level " + std::to_string(level) + " is negative");
  }
}

json config_to_json(const PipelineConfig& c) {
  json quotas = json::object();
  for (const auto& [level, n] : c.quotas) quotas[std::to_string(level)] = n;
  return {{"schema", kConfigSchema},
          {"manifest", c.manifest},
          {"similarities", c.similarities},
          {"caseTemplates", c.case_templates},
          {"cases", c.cases},
          {"selection", c.selection},
          {"store", c.store},
          {"responses", c.responses},
          {"coded", c.coded},
          {"out", c.out},
          {"minMatch", c.min_match},
          {"alpha", c.alpha},
          {"minDelta", c.min_delta},
          {"quotas", std::move(quotas)},
          {"groups", c.groups},
          {"seed", c.seed},
          {"mode", to_string(c.mode)},
          {"bind", c.bind},
          {"adminToken", c.admin_token.empty() ? "" : "***"}};
}

std::map<int, int> parse_quotas(const std::string& text) {
  std::map<int, int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, comma - start);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) throw Error("UsageError", "quota must be level:count, got " + item);
    out[parse_int(std::string_view(item).substr(0, colon), "quota level")] =
        parse_int(std::string_view(item).substr(colon + 1), "quota count");
    start = comma + 1;
  }
  return out;
}

std::pair<std::string, int> parse_bind(const std::string& text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error("UsageError", "bind address must be host:port, got " + text);
  }
  const int port = parse_int(std::string_view(text).substr(colon + 1), "port");
  if (port < 0 || port > 65535) throw Error("UsageError", "port out of range: " + text);
  return {text.substr(0, colon), port};
}

}  // namespace plageval
