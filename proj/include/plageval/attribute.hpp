#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "plageval/lexer.hpp"
#include "plageval/similarity.hpp"

namespace plageval {

/// Token occurrence counts. Never stores a zero count; `total_tokens`
/// equals the sum of `counts`.
struct FrequencyVector {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total_tokens = 0;

  bool empty() const noexcept { return counts.empty(); }
  bool operator==(const FrequencyVector&) const = default;
};

FrequencyVector frequency_vector(std::span<const std::string> keys);
FrequencyVector frequency_vector(const TokenSequence& tokens);

/// Raw-count cosine, clamped into [0, 1]. Throws Error("ZeroVector") when
/// either side is empty, which usually means a comment-only file.
double cosine_similarity(const FrequencyVector& v, const FrequencyVector& w);

/// Attribute-based similarity: cosine of the two token frequency vectors.
SimilarityDegree aba_similarity(const TokenSequence& a, const TokenSequence& b);
SimilarityDegree aba_similarity(std::span<const std::string> a,
                                std::span<const std::string> b);

}  // namespace plageval
