#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "plageval/lexer.hpp"
#include "plageval/similarity.hpp"
#include "plageval/stats.hpp"

namespace plageval {

enum class CaseScope : std::uint8_t {
  SingleInstruction,
  MultipleInstructions,
  Method,
  Class,
};

std::string_view to_string(CaseScope scope);
CaseScope case_scope_from_string(std::string_view name);

/// 1-based inclusive line range.
struct LineRange {
  int first = 1;
  int last = 1;

  bool operator==(const LineRange&) const = default;
};

struct Variant {
  std::string id;
  std::string source;
  std::string transform;  // e.g. "swap N=3 slots=2,0,4" or "permute 132"
  bool identity = false;  // verbatim copy of the original
};

/// An original program and its order-only rewrites. Every variant is a
/// rearrangement of whole lines of the original, so its token multiset is
/// unchanged.
struct ArtificialCase {
  std::string name;
  CaseScope scope = CaseScope::SingleInstruction;
  std::string original;
  std::vector<Variant> variants;
  std::uint64_t seed = 0;
};

inline constexpr std::uint64_t kDefaultCaseSeed = 20190704;
inline const std::vector<int> kDefaultSwapCounts = {0, 1, 3, 5};

/// Builds the single-instruction case: variant k applies swap_counts[k]
/// distinct adjacent-statement swaps, chosen by a generator seeded from
/// `seed` and k. Text outside the statement spans is left in place.
///
/// Errors: "InvalidSwapCounts" (not exactly four non-negative counts),
/// "InvalidSpan", "OverlappingSpans", "InsufficientStatements" (fewer than
/// max(swap_counts) + 1 statements).
ArtificialCase generate_swap_variants(std::string_view original,
                                      std::vector<LineRange> statements,
                                      std::vector<int> swap_counts = kDefaultSwapCounts,
                                      std::uint64_t seed = kDefaultCaseSeed);

/// Builds the six variants that reorder three blocks, in lexicographic
/// permutation order (123, 132, 213, 231, 312, 321). Blocks are given as
/// line ranges and are sorted by position before numbering.
///
/// Errors: "BlockCountNot3", "InvalidSpan", "OverlappingBlocks",
/// "InvalidScope" (single-instruction cases use swaps).
ArtificialCase generate_block_permutations(std::string_view original,
                                           std::vector<LineRange> blocks, CaseScope scope);

struct CaseValidation {
  std::vector<SimilarityDegree> aba;  // one per variant, cases in order
  std::vector<SimilarityDegree> sba;
  std::optional<stats::TTestResult> t_test;
  bool valid = false;
  std::string reason;
};

inline constexpr double kSignificanceLevel = 0.05;

/// Scores every variant against its original with both detectors and runs a
/// paired t-test over the two score lists. The set is valid iff p < alpha.
/// A zero-variance difference yields valid == false with a reason.
///
/// Errors: "EmptyCaseSet" with fewer than two variants in total; lexer
/// errors propagate.
CaseValidation validate_case_set(std::span<const ArtificialCase> cases,
                                 const LexerConfig& config = {},
                                 double alpha = kSignificanceLevel, int min_match = 2);

// Case bundle documents (schema "plageval.case/1").
nlohmann::json case_to_json(const ArtificialCase& c);
ArtificialCase case_from_json(const nlohmann::json& doc);
void write_case_bundle(const std::string& path, const ArtificialCase& c);
ArtificialCase read_case_bundle(const std::string& path);

/// Reads a case template document and generates the case it describes.
///
///   {"name": "...", "scope": "METHOD", "source": "File.java" | "text": "...",
///    "statements": [[3,3], ...], "swapCounts": [0,1,3,5], "seed": 7}
///   {"name": "...", "scope": "CLASS", "source": "...", "blocks": [[1,9], ...]}
///
/// Relative source paths resolve against `base_dir`.
ArtificialCase generate_from_template(const nlohmann::json& tmpl,
                                      const std::string& base_dir,
                                      std::uint64_t default_seed = kDefaultCaseSeed);

}  // namespace plageval
