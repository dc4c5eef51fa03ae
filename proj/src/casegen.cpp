#include "plageval/casegen.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "plageval/attribute.hpp"
#include "plageval/error.hpp"
#include "plageval/io.hpp"
#include "plageval/structure.hpp"
#include "random.hpp"

namespace plageval {

namespace {

using nlohmann::json;

constexpr std::string_view kCaseSchema = "plageval.case/1";

// Byte offsets of each line's content: [begin, end) excludes the line break.
struct LineTable {
  std::vector<std::size_t> begin;
  std::vector<std::size_t> end;

  explicit LineTable(std::string_view text) {
    std::size_t pos = 0;
    begin.push_back(0);
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '\n' || c == '\r') {
        end.push_back(pos);
        pos += (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ? 2 : 1;
        begin.push_back(pos);
      } else {
        ++pos;
      }
    }
    end.push_back(text.size());
    // A trailing line break does not open a further line.
    if (begin.size() > 1 && begin.back() == text.size()) {
      begin.pop_back();
      end.pop_back();
    }
  }

  int count() const { return static_cast<int>(begin.size()); }
};

// Sorts and checks ranges; `overlap_code` names the error for overlaps.
std::vector<LineRange> checked_ranges(std::vector<LineRange> ranges, const LineTable& lines,
                                      const char* overlap_code) {
  for (const LineRange& r : ranges) {
    if (r.first < 1 || r.last < r.first || r.last > lines.count()) {
      std::ostringstream msg;
      msg << "line range [" << r.first << ", " << r.last << "] is outside 1.."
          << lines.count();
      throw Error("InvalidSpan", msg.str());
    }
  }
  std::sort(ranges.begin(), ranges.end(),
            [](const LineRange& x, const LineRange& y) { return x.first < y.first; });
  for (std::size_t i = 1; i < ranges.size(); ++i) {
    if (ranges[i].first <= ranges[i - 1].last) {
      std::ostringstream msg;
      msg << "line ranges [" << ranges[i - 1].first << ", " << ranges[i - 1].last
          << "] and [" << ranges[i].first << ", " << ranges[i].last << "] overlap";
      throw Error(overlap_code, msg.str());
    }
  }
  return ranges;
}

// The original cut into alternating gaps and units:
// gap[0] unit[0] gap[1] unit[1] ... unit[n-1] gap[n].
struct Segments {
  std::vector<std::string> gaps;
  std::vector<std::string> units;

  std::string assemble(const std::vector<std::size_t>& order) const {
    std::string out = gaps[0];
    for (std::size_t slot = 0; slot < order.size(); ++slot) {
      out += units[order[slot]];
      out += gaps[slot + 1];
    }
    return out;
  }
};

Segments segment(std::string_view text, const LineTable& lines,
                 const std::vector<LineRange>& ranges) {
  Segments s;
  std::size_t cursor = 0;
  for (const LineRange& r : ranges) {
    const std::size_t from = lines.begin[r.first - 1];
    const std::size_t to = lines.end[r.last - 1];
    s.gaps.emplace_back(text.substr(cursor, from - cursor));
    s.units.emplace_back(text.substr(from, to - from));
    cursor = to;
  }
  s.gaps.emplace_back(text.substr(cursor));
  return s;
}

std::string join_ints(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

LineRange range_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error("InvalidDocument", "line range must be [first, last]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace

std::string_view to_string(CaseScope scope) {
  switch (scope) {
    case CaseScope::SingleInstruction: return "SINGLE_INSTRUCTION";
    case CaseScope::MultipleInstructions: return "MULTIPLE_INSTRUCTIONS";
    case CaseScope::Method: return "METHOD";
    case CaseScope::Class: return "CLASS";
  }
  return "?";
}

CaseScope case_scope_from_string(std::string_view name) {
  for (CaseScope s : {CaseScope::SingleInstruction, CaseScope::MultipleInstructions,
                      CaseScope::Method, CaseScope::Class}) {
    if (to_string(s) == name) return s;
  }
  throw Error("InvalidDocument", "unknown case scope: " + std::string(name));
}

ArtificialCase generate_swap_variants(std::string_view original,
                                      std::vector<LineRange> statements,
                                      std::vector<int> swap_counts, std::uint64_t seed) {
  if (swap_counts.size() != 4 ||
      std::any_of(swap_counts.begin(), swap_counts.end(), [](int n) { return n < 0; })) {
    throw Error("InvalidSwapCounts",
                "single-instruction cases take exactly four non-negative swap counts");
  }
  const LineTable lines(original);
  statements = checked_ranges(std::move(statements), lines, "OverlappingSpans");

  const int most = *std::max_element(swap_counts.begin(), swap_counts.end());
  // n statements offer n - 1 adjacent slots; each swap uses a distinct slot.
  if (static_cast<int>(statements.size()) < most + 1) {
    std::ostringstream msg;
    msg << most << " distinct adjacent swaps need at least " << most + 1
        << " statements, got " << statements.size();
    throw Error("InsufficientStatements", msg.str());
  }

  const Segments parts = segment(original, lines, statements);
  ArtificialCase out;
  out.scope = CaseScope::SingleInstruction;
  out.original = std::string(original);
  out.seed = seed;

  for (std::size_t k = 0; k < swap_counts.size(); ++k) {
    const auto n = static_cast<std::size_t>(swap_counts[k]);
    std::vector<std::size_t> slots(statements.size() - 1);
    std::iota(slots.begin(), slots.end(), 0);
    detail::SeededRandom rng(detail::mix_seed(seed, k));
    rng.shuffle(slots);
    slots.resize(n);

    std::vector<std::size_t> order(statements.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t slot : slots) std::swap(order[slot], order[slot + 1]);

    Variant v;
    v.id = "v" + std::to_string(k + 1);
    v.identity = n == 0;
    v.source = v.identity ? out.original : parts.assemble(order);
    v.transform = "swap N=" + std::to_string(n);
    if (n > 0) v.transform += " slots=" + join_ints(slots);
    out.variants.push_back(std::move(v));
  }
  return out;
}

ArtificialCase generate_block_permutations(std::string_view original,
                                           std::vector<LineRange> blocks, CaseScope scope) {
  if (scope == CaseScope::SingleInstruction) {
    throw Error("InvalidScope", "single-instruction cases are built from swaps");
  }
  if (blocks.size() != 3) {
    throw Error("BlockCountNot3",
                "block permutation needs exactly 3 blocks, got " + std::to_string(blocks.size()));
  }
  const LineTable lines(original);
  blocks = checked_ranges(std::move(blocks), lines, "OverlappingBlocks");
  const Segments parts = segment(original, lines, blocks);

  ArtificialCase out;
  out.scope = scope;
  out.original = std::string(original);

  std::vector<std::size_t> order = {0, 1, 2};
  do {
    std::string label;
    for (std::size_t b : order) label += static_cast<char>('1' + b);
    Variant v;
    v.id = "p" + label;
    v.identity = label == "123";
    v.source = v.identity ? out.original : parts.assemble(order);
    v.transform = "permute " + label;
    out.variants.push_back(std::move(v));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

CaseValidation validate_case_set(std::span<const ArtificialCase> cases,
                                 const LexerConfig& config, double alpha, int min_match) {
  std::size_t total = 0;
  for (const ArtificialCase& c : cases) total += c.variants.size();
  if (total < 2) {
    throw Error("EmptyCaseSet", "case validation needs at least two variants");
  }

  CaseValidation out;
  std::vector<double> aba_values;
  std::vector<double> sba_values;
  for (const ArtificialCase& c : cases) {
    const TokenSequence original = tokenize(c.original, config, c.name + "#original");
    for (const Variant& v : c.variants) {
      const TokenSequence tokens = tokenize(v.source, config, c.name + "#" + v.id);
      out.aba.push_back(aba_similarity(original, tokens));
      out.sba.push_back(sba_similarity(original, tokens, min_match));
      aba_values.push_back(out.aba.back().value);
      sba_values.push_back(out.sba.back().value);
    }
  }
  try {
    out.t_test = stats::paired_t_test(aba_values, sba_values);
    out.valid = out.t_test->p < alpha;
    if (!out.valid) {
      std::ostringstream msg;
      msg << "p = " << out.t_test->p << " is not below " << alpha;
      out.reason = msg.str();
    }
  } catch (const Error& e) {
    if (e.code() != "ZeroVariance") throw;
    out.valid = false;
    out.reason = "ZeroVariance: " + std::string(e.what());
  }
  return out;
}

json case_to_json(const ArtificialCase& c) {
  json variants = json::array();
  for (const Variant& v : c.variants) {
    variants.push_back({{"id", v.id},
                        {"source", v.source},
                        {"transform", v.transform},
                        {"identity", v.identity}});
  }
  return {{"schema", kCaseSchema},
          {"name", c.name},
          {"scope", to_string(c.scope)},
          {"seed", c.seed},
          {"original", c.original},
          {"variants", std::move(variants)}};
}

ArtificialCase case_from_json(const json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kCaseSchema) {
      throw Error("InvalidDocument", "unsupported case schema " + doc.at("schema").dump());
    }
    ArtificialCase c;
    c.name = doc.at("name").get<std::string>();
    c.scope = case_scope_from_string(doc.at("scope").get<std::string>());
    c.seed = doc.value("seed", std::uint64_t{0});
    c.original = doc.at("original").get<std::string>();
    for (const json& v : doc.at("variants")) {
      c.variants.push_back({v.at("id").get<std::string>(), v.at("source").get<std::string>(),
                            v.value("transform", std::string{}), v.value("identity", false)});
    }
    const std::size_t expected = c.scope == CaseScope::SingleInstruction ? 4 : 6;
    if (c.variants.size() != expected) {
      throw Error("InvalidDocument", "case " + c.name + " has " +
                                         std::to_string(c.variants.size()) +
                                         " variants, expected " + std::to_string(expected));
    }
    return c;
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed case bundle: ") + e.what());
  }
}

void write_case_bundle(const std::string& path, const ArtificialCase& c) {
  write_json_file(path, case_to_json(c));
}

ArtificialCase read_case_bundle(const std::string& path) {
  return case_from_json(read_json_file(path));
}

ArtificialCase generate_from_template(const json& tmpl, const std::string& base_dir,
                                      std::uint64_t default_seed) {
  try {
    std::string text;
    if (tmpl.contains("text")) {
      text = tmpl.at("text").get<std::string>();
    } else {
      text = read_file(resolve_path(base_dir, tmpl.at("source").get<std::string>()));
    }
    const CaseScope scope = case_scope_from_string(tmpl.at("scope").get<std::string>());
    ArtificialCase c;
    if (scope == CaseScope::SingleInstruction) {
      std::vector<LineRange> spans;
      for (const json& r : tmpl.at("statements")) spans.push_back(range_from_json(r));
      const auto counts = tmpl.value("swapCounts", kDefaultSwapCounts);
      c = generate_swap_variants(text, std::move(spans), counts,
                                 tmpl.value("seed", default_seed));
    } else {
      std::vector<LineRange> blocks;
      for (const json& r : tmpl.at("blocks")) blocks.push_back(range_from_json(r));
      c = generate_block_permutations(text, std::move(blocks), scope);
      c.seed = tmpl.value("seed", default_seed);
    }
    c.name = tmpl.at("name").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed case template: ") + e.what());
  }
}

}  // namespace plageval
