#include "plageval/attribute.hpp"

#include <algorithm>
#include <cmath>

#include "plageval/error.hpp"

namespace plageval {

FrequencyVector frequency_vector(std::span<const std::string> keys) {
  FrequencyVector v;
  for (const std::string& k : keys) ++v.counts[k];
  v.total_tokens = static_cast<std::int64_t>(keys.size());
  return v;
}

FrequencyVector frequency_vector(const TokenSequence& tokens) {
  const std::vector<std::string> keys = tokens.keys();
  return frequency_vector(keys);
}

double cosine_similarity(const FrequencyVector& v, const FrequencyVector& w) {
  if (v.empty() || w.empty()) {
    throw Error("ZeroVector", "cosine similarity of an empty frequency vector");
  }
  // Counts are integers, so dot and squared norms are exact. Taking a single
  // square root of their product makes identical vectors yield exactly 1.
  std::int64_t dot = 0;
  auto it = w.counts.begin();
  for (const auto& [key, count] : v.counts) {
    it = std::lower_bound(it, w.counts.end(), key,
                          [](const auto& entry, const std::string& k) { return entry.first < k; });
    if (it != w.counts.end() && it->first == key) dot += count * it->second;
  }
  auto squared = [](const FrequencyVector& f) {
    long double sum = 0;
    for (const auto& [key, count] : f.counts) {
      sum += static_cast<long double>(count) * static_cast<long double>(count);
    }
    return sum;
  };
  const long double denom = std::sqrt(squared(v) * squared(w));
  const double value = static_cast<double>(static_cast<long double>(dot) / denom);
  return std::clamp(value, 0.0, 1.0);
}

SimilarityDegree aba_similarity(std::span<const std::string> a,
                                std::span<const std::string> b) {
  return {cosine_similarity(frequency_vector(a), frequency_vector(b)), Detector::ABA};
}

SimilarityDegree aba_similarity(const TokenSequence& a, const TokenSequence& b) {
  return {cosine_similarity(frequency_vector(a), frequency_vector(b)), Detector::ABA};
}

}  // namespace plageval
