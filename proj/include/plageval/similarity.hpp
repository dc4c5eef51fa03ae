#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plageval/lexer.hpp"

namespace plageval {

enum class Detector : std::uint8_t { ABA, SBA };

std::string_view to_string(Detector detector);
Detector detector_from_string(std::string_view name);

struct SimilarityDegree {
  double value = 0.0;  // always within [0, 1]
  Detector detector = Detector::ABA;
};

/// Maps comparison keys of two sequences to dense integer symbols.
///
/// Symbols are assigned in lexicographic order of the distinct keys, so the
/// encoding of a pair does not depend on which sequence comes first.
struct EncodedPair {
  std::vector<std::uint32_t> a;
  std::vector<std::uint32_t> b;
};

EncodedPair encode_pair(const std::vector<std::string>& a,
                        const std::vector<std::string>& b);
EncodedPair encode_pair(const TokenSequence& a, const TokenSequence& b);

}  // namespace plageval
