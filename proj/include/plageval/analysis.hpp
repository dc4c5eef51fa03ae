#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "plageval/casegen.hpp"
#include "plageval/pairsel.hpp"
#include "plageval/survey.hpp"

namespace plageval::analysis {

/// A Pearson coefficient, or the reason it cannot be computed.
struct Correlation {
  std::optional<double> value;
  std::string immeasurable;  // set when value is empty
  std::size_t n = 0;
};

/// Pearson over (x, y); NoVariability and too-short series become
/// Immeasurable instead of errors.
Correlation correlate(std::span<const double> x, std::span<const double> y);

struct CaseSummary {
  std::string name;
  std::vector<std::string> variants;
  std::vector<double> average_ranks;
  std::size_t respondents = 0;
  bool verbatim_top = false;  // no variant averages a better rank than the identity
};

struct AspectDetector {
  std::string detector;
  Correlation correlation;
  std::vector<double> similarities;   // pooled, cases in order
  std::vector<double> negated_ranks;  // aligned with similarities
};

struct AspectSection {
  std::vector<AspectDetector> detectors;  // ABA, SBA
  std::vector<CaseSummary> cases;
  bool verbatim_top_rank_holds = false;
};

/// Correlates each detector's per-variant similarity with the negated average
/// human rank, pooling every case into one series.
/// Throws Error("MissingRankings") when a case has no CASE_RANKING record.
AspectSection aspect_report(std::span<const ArtificialCase> cases,
                            std::span<const ResponseRecord> responses,
                            const LexerConfig& config = {}, int min_match = 2);

struct PairOutcome {
  std::string pair_id;
  int level = 0;
  std::string code_a;  // first detector's favoring code
  std::string code_b;  // second detector's favoring code
  int votes_a = 0;
  int votes_b = 0;
  std::string majority;  // code id, or "TIE"
};

struct EmpiricalDetector {
  std::string detector;
  int majority_pairs = 0;  // pairs whose majority chose this detector's favoring code
  double preference_pct = 0.0;
  int preferred_responses = 0;
  double response_pct = 0.0;  // per-response counting
  Correlation overall;
  std::map<int, Correlation> per_level;
  std::vector<double> similarities;
  std::vector<double> negated_ranks;
  std::vector<int> levels;  // level of each point
};

struct EmpiricalSection {
  std::vector<EmpiricalDetector> detectors;  // same order as the selection
  std::vector<PairOutcome> pairs;
  std::vector<std::string> unanswered;
  int answered = 0;
  int ties = 0;
  int responses = 0;
};

/// Preference percentages by per-pair majority (ties excluded from both
/// detectors) and by individual response, plus overall and per-level
/// correlations between similarity and negated average rank (preferred = 1,
/// other = 2). Unanswered pairs are listed and left out.
/// Throws Error("MissingPreferences") when no pair has a preference.
EmpiricalSection empirical_report(std::span<const ContradictingPair> pairs,
                                  std::span<const ResponseRecord> responses,
                                  const std::vector<std::string>& detectors);

struct CodebookEntry {
  std::string aspect;
  std::string detector;  // "ABA", "SBA", or anything else for unmapped
};

struct CodedDescription {
  std::string respondent;
  std::vector<std::string> aspects;
};

struct TallyEntry {
  std::string aspect;
  int occurrences = 0;
  std::string detector;  // "ABA", "SBA" or "UNMAPPED"
};

struct AspectTally {
  std::vector<TallyEntry> entries;
  std::size_t respondents = 0;
};

/// Occurrences count distinct respondents. Sorted by occurrences descending;
/// ties keep codebook order, and aspects outside the codebook follow in
/// first-seen order as UNMAPPED.
AspectTally aspect_tally(std::span<const CodedDescription> descriptions,
                         std::span<const CodebookEntry> codebook);

/// Occurrence-weighted sum of aspects mapped to `detector`.
int tally_weight(const AspectTally& tally, const std::string& detector);

struct CodedData {
  std::vector<CodebookEntry> codebook;
  std::vector<CodedDescription> descriptions;
};

/// {"schema": "plageval.coded/1",
///  "codebook": [{"aspect": "Statement order", "detector": "SBA"}, ...],
///  "descriptions": [{"respondent": "r1", "aspects": ["Semantic"]}, ...]}
CodedData coded_from_json(const nlohmann::json& doc);

/// THINK_ALOUD records whose payload carries an "aspects" list.
std::vector<CodedDescription> coded_from_responses(std::span<const ResponseRecord> responses);

struct Match {
  int round = 0;
  std::string a;
  std::string b;  // empty for a bye
  std::string advanced;
  bool tie = false;
};

struct TournamentResult {
  std::string winner;
  std::vector<Match> trace;
};

/// Returns the more effective of two approaches, or nullopt for a tie.
using CompareFn =
    std::function<std::optional<std::string>(const std::string&, const std::string&)>;

/// Single-elimination bracket in list order. An odd entrant out gets a bye;
/// a tie advances the earlier entrant. Throws Error("FewerThanTwo").
TournamentResult run_tournament(std::span<const std::string> approaches, const CompareFn& compare);

struct MechanismVote {
  std::string mechanism;  // "aspect", "empirical", "thinkAloud"
  std::optional<std::string> winner;
  std::string basis;
};

/// Per-mechanism winners between `a` and `b` from the computed sections.
std::vector<MechanismVote> mechanism_votes(const AspectSection* aspect,
                                           const EmpiricalSection* empirical,
                                           const AspectTally* tally, const std::string& a,
                                           const std::string& b);

/// The detector winning at least two of the three mechanisms, else nullopt.
std::optional<std::string> majority_verdict(const std::vector<MechanismVote>& votes,
                                            const std::string& a, const std::string& b);

struct EffectivenessReport {
  std::optional<AspectSection> aspect;
  std::optional<EmpiricalSection> empirical;
  AspectTally think_aloud;
  std::vector<MechanismVote> votes;
  std::optional<std::string> verdict;  // empty means Tie
  TournamentResult tournament;
};

struct AnalysisInputs {
  std::vector<ArtificialCase> cases;
  std::optional<SelectionReport> selection;
  std::vector<ResponseRecord> responses;
  std::optional<CodedData> coded;
  LexerConfig lexer;
  int min_match = 2;
};

/// Runs every section whose inputs are present and the verdict between ABA
/// and SBA. Errors from the sections propagate.
EffectivenessReport analyze(const AnalysisInputs& inputs);

nlohmann::json report_to_json(const EffectivenessReport& report);
std::string per_level_csv(const EffectivenessReport& report);
std::string preference_csv(const EffectivenessReport& report);
std::string tally_csv(const EffectivenessReport& report);
/// x/y series for the correlation scatter plots.
nlohmann::json plot_data(const EffectivenessReport& report);

}  // namespace plageval::analysis
