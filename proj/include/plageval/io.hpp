#pragma once

#include <string>

#include "json.hpp"

namespace plageval {

/// Whole-file read. Throws Error("MissingFile") if the file cannot be opened.
std::string read_file(const std::string& path);

/// Writes through a temporary sibling and renames it into place.
void write_file(const std::string& path, const std::string& contents);

nlohmann::json read_json_file(const std::string& path);

/// Pretty-printed with a trailing newline; key order is sorted, so equal
/// documents serialize to identical bytes.
void write_json_file(const std::string& path, const nlohmann::json& doc);

/// `path` if absolute, otherwise `base_dir / path`.
std::string resolve_path(const std::string& base_dir, const std::string& path);

std::string parent_dir(const std::string& path);

/// Shortest text that reads back as the same double.
std::string format_double(double value);

}  // namespace plageval
