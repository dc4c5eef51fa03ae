#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include "plageval/attribute.hpp"
#include "plageval/casegen.hpp"
#include "plageval/error.hpp"
#include "plageval/structure.hpp"

using namespace plageval;

namespace {

const std::string kStatements =
    "int a = 1;\n"
    "int b = a * 2;\n"
    "b += a;\n"
    "System.out.println(b);\n"
    "a = b - 1;\n"
    "int c = a + b;\n"
    "c--;";  // no trailing newline on purpose

std::vector<LineRange> OnePerLine(int n) {
  std::vector<LineRange> out;
  for (int i = 1; i <= n; ++i) out.push_back({i, i});
  return out;
}

const std::string kMethods =
    "public class Calc {\n"
    "  static int add(int a, int b) {\n"
    "    return a + b;\n"
    "  }\n"
    "\n"
    "  static int twice(int a) {\n"
    "    return add(a, a);\n"
    "  }\n"
    "  public static void main(String[] args) {\n"
    "    System.out.println(twice(2));\n"
    "  }\n"
    "}\n";

std::string CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return "";
}

std::vector<std::string> SortedLines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  lines.push_back(cur);
  std::sort(lines.begin(), lines.end());
  return lines;
}

}  // namespace

TEST(SwapVariants, FourVariantsWithVerbatimFirst) {
  const ArtificialCase c = generate_swap_variants(kStatements, OnePerLine(7));
  ASSERT_EQ(c.variants.size(), 4u);
  EXPECT_EQ(c.scope, CaseScope::SingleInstruction);
  EXPECT_EQ(c.variants[0].source, kStatements);
  EXPECT_TRUE(c.variants[0].identity);
  EXPECT_EQ(c.variants[0].transform, "swap N=0");
  EXPECT_EQ(c.variants[1].transform.rfind("swap N=1 slots=", 0), 0u);
  EXPECT_EQ(c.variants[3].transform.rfind("swap N=5 slots=", 0), 0u);
  for (std::size_t k = 1; k < 4; ++k) {
    EXPECT_NE(c.variants[k].source, kStatements);
    EXPECT_FALSE(c.variants[k].identity);
    // Same lines, different order.
    EXPECT_EQ(SortedLines(c.variants[k].source), SortedLines(kStatements));
  }
}

TEST(SwapVariants, SingleSwapExchangesNeighbours) {
  const std::string src = "s1;\ns2;\ns3;\n";
  // With one slot available the only possible swap is (s1, s2).
  const ArtificialCase c = generate_swap_variants(src, OnePerLine(2), {0, 1, 1, 1});
  EXPECT_EQ(c.variants[1].source, "s2;\ns1;\ns3;\n");
  EXPECT_EQ(c.variants[1].transform, "swap N=1 slots=0");
}

TEST(SwapVariants, MultiLineStatementsAndGapsStayInPlace) {
  const std::string src = "a(1,\n  2);\n// keep\nb();\n\nc();\n";
  const ArtificialCase c = generate_swap_variants(src, {{1, 2}, {4, 4}, {6, 6}}, {0, 1, 2, 2});
  for (const Variant& v : c.variants) {
    EXPECT_NE(v.source.find("// keep\n"), std::string::npos);
    EXPECT_EQ(tokenize(v.source).size(), tokenize(src).size());
  }
}

TEST(SwapVariants, DeterministicForSeed) {
  const ArtificialCase a = generate_swap_variants(kStatements, OnePerLine(7), {0, 1, 3, 5}, 9);
  const ArtificialCase b = generate_swap_variants(kStatements, OnePerLine(7), {0, 1, 3, 5}, 9);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(a.variants[k].source, b.variants[k].source);
  EXPECT_EQ(a.seed, 9u);
}

TEST(SwapVariants, Errors) {
  EXPECT_EQ(CodeOf([] { generate_swap_variants("a;\nb;\nc;\nd;\n", OnePerLine(4)); }),
            "InsufficientStatements");
  EXPECT_EQ(CodeOf([] { generate_swap_variants(kStatements, {{1, 2}, {2, 3}}, {0, 1, 1, 1}); }),
            "OverlappingSpans");
  EXPECT_EQ(CodeOf([] { generate_swap_variants(kStatements, {{1, 1}, {9, 9}}, {0, 1, 1, 1}); }),
            "InvalidSpan");
  EXPECT_EQ(CodeOf([] { generate_swap_variants(kStatements, OnePerLine(7), {0, 1, 3}); }),
            "InvalidSwapCounts");
}

TEST(BlockPermutations, SixVariantsInLexicographicOrder) {
  const ArtificialCase c =
      generate_block_permutations(kMethods, {{2, 4}, {6, 8}, {9, 11}}, CaseScope::Method);
  ASSERT_EQ(c.variants.size(), 6u);
  std::vector<std::string> ids;
  for (const Variant& v : c.variants) ids.push_back(v.id);
  EXPECT_EQ(ids, (std::vector<std::string>{"p123", "p132", "p213", "p231", "p312", "p321"}));
  EXPECT_EQ(c.variants[0].source, kMethods);
  EXPECT_TRUE(c.variants[0].identity);
  EXPECT_EQ(c.variants[5].transform, "permute 321");
  // Gap lines (the blank line and the class frame) do not move.
  EXPECT_EQ(c.variants[5].source.rfind("public class Calc {\n", 0), 0u);
  EXPECT_NE(c.variants[5].source.find("  }\n\n"), std::string::npos);
}

TEST(BlockPermutations, UnsortedBlocksAreNumberedByPosition) {
  const ArtificialCase a =
      generate_block_permutations(kMethods, {{9, 11}, {2, 4}, {6, 8}}, CaseScope::Class);
  const ArtificialCase b =
      generate_block_permutations(kMethods, {{2, 4}, {6, 8}, {9, 11}}, CaseScope::Class);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(a.variants[k].source, b.variants[k].source);
}

TEST(BlockPermutations, Errors) {
  EXPECT_EQ(CodeOf([] {
              generate_block_permutations(kMethods, {{2, 5}, {5, 8}, {9, 11}}, CaseScope::Method);
            }),
            "OverlappingBlocks");
  EXPECT_EQ(CodeOf([] { generate_block_permutations(kMethods, {{2, 4}, {6, 8}}, CaseScope::Method); }),
            "BlockCountNot3");
  EXPECT_EQ(CodeOf([] {
              generate_block_permutations(kMethods, {{2, 4}, {6, 8}, {9, 11}},
                                          CaseScope::SingleInstruction);
            }),
            "InvalidScope");
}

TEST(CaseProperty, VariantsKeepTokenMultisetAndAbaIsOne) {
  const ArtificialCase swaps = generate_swap_variants(kStatements, OnePerLine(7));
  const ArtificialCase blocks =
      generate_block_permutations(kMethods, {{2, 4}, {6, 8}, {9, 11}}, CaseScope::Method);
  for (const ArtificialCase* c : {&swaps, &blocks}) {
    const TokenSequence original = tokenize(c->original);
    for (const Variant& v : c->variants) {
      const TokenSequence t = tokenize(v.source);
      EXPECT_EQ(aba_similarity(original, t).value, 1.0) << v.id;
      const double sba = sba_similarity(original, t).value;
      EXPECT_LE(sba, 1.0);
      if (v.identity) EXPECT_EQ(sba, 1.0);
    }
  }
}

TEST(Validation, AbaConstantAndSbaVarying) {
  // Single-token statements: every swap breaks a covered run.
  const std::string src = "+\n-\n*\n/\n%\n=\n<\n>\n";
  std::vector<ArtificialCase> cases;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    cases.push_back(generate_swap_variants(src, OnePerLine(8), {0, 1, 3, 5}, seed));
  }
  const CaseValidation v = validate_case_set(cases);
  ASSERT_EQ(v.aba.size(), 12u);
  for (const auto& d : v.aba) EXPECT_EQ(d.value, 1.0);
  ASSERT_TRUE(v.t_test.has_value());
  EXPECT_EQ(v.valid, v.t_test->p < 0.05);
  EXPECT_TRUE(v.valid) << v.t_test->p;
}

TEST(Validation, IdenticalListsAreInvalidNotFatal) {
  // Whole-statement swaps of equal-shape lines leave both detectors at 1.
  const std::string src = "int a = 1;\nint b = 2;\nint c = 3;\nint d = 4;\nint e = 5;\nint f = 6;\n";
  const std::vector<ArtificialCase> cases = {generate_swap_variants(src, OnePerLine(6))};
  const CaseValidation v = validate_case_set(cases);
  EXPECT_FALSE(v.valid);
  EXPECT_FALSE(v.t_test.has_value());
  EXPECT_EQ(v.reason.rfind("ZeroVariance", 0), 0u);
}

TEST(Validation, EmptySetIsAnError) {
  EXPECT_EQ(CodeOf([] { validate_case_set(std::vector<ArtificialCase>{}); }), "EmptyCaseSet");
}

TEST(CaseBundle, JsonRoundTripAndTemplate) {
  const nlohmann::json tmpl = {{"name", "calc"},
                               {"scope", "METHOD"},
                               {"text", kMethods},
                               {"blocks", {{2, 4}, {6, 8}, {9, 11}}}};
  const ArtificialCase c = generate_from_template(tmpl, "");
  EXPECT_EQ(c.name, "calc");
  const auto path = std::filesystem::temp_directory_path() / "plageval_case_roundtrip.json";
  write_case_bundle(path.string(), c);
  const ArtificialCase back = read_case_bundle(path.string());
  EXPECT_EQ(case_to_json(back), case_to_json(c));
  std::filesystem::remove(path);

  nlohmann::json broken = case_to_json(c);
  broken["variants"].erase(0);
  EXPECT_EQ(CodeOf([&] { case_from_json(broken); }), "InvalidDocument");
}
