#include "plageval/similarity.hpp"

#include <algorithm>
#include <map>

#include "plageval/error.hpp"

namespace plageval {

std::string_view to_string(Detector detector) {
  return detector == Detector::ABA ? "ABA" : "SBA";
}

Detector detector_from_string(std::string_view name) {
  if (name == "ABA" || name == "aba") return Detector::ABA;
  if (name == "SBA" || name == "sba") return Detector::SBA;
  throw Error("UsageError", "unknown detector: " + std::string(name));
}

EncodedPair encode_pair(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::map<std::string_view, std::uint32_t> symbols;
  for (const auto& k : a) symbols.emplace(k, 0);
  for (const auto& k : b) symbols.emplace(k, 0);
  std::uint32_t next = 0;
  for (auto& [key, id] : symbols) id = next++;

  EncodedPair out;
  out.a.reserve(a.size());
  out.b.reserve(b.size());
  for (const auto& k : a) out.a.push_back(symbols.at(k));
  for (const auto& k : b) out.b.push_back(symbols.at(k));
  return out;
}

EncodedPair encode_pair(const TokenSequence& a, const TokenSequence& b) {
  if (a.abstraction() != b.abstraction()) {
    throw Error("AbstractionMismatch",
                "token sequences were lexed at different abstraction levels");
  }
  return encode_pair(a.keys(), b.keys());
}

}  // namespace plageval
