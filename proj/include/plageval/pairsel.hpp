#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "plageval/lexer.hpp"
#include "plageval/stats.hpp"

namespace plageval {

struct CodeFile {
  std::string id;
  std::string path;  // resolved against the manifest directory
  TokenSequence tokens;
};

/// Plagiarized codes sharing one original and one plagiarism level (0-6).
struct Cluster {
  std::string id;  // "<originalId>/L<level>"
  CodeFile original;
  int level = 0;
  std::vector<CodeFile> members;
};

struct PlagiarismDataset {
  std::vector<Cluster> clusters;
  int manifest_version = 1;
};

/// Loads a dataset manifest and lexes every file eagerly.
///
///   {"schema": "plageval.dataset/1",
///    "originals": [{"id": "T1", "path": "T1/original.java",
///                   "plagiarized": [{"id": "T1-a", "path": "...", "level": 2}]}]}
///
/// Errors: "MissingFile", "DuplicateMember", "InvalidDocument"; lexer errors
/// carry the offending path.
PlagiarismDataset ingest_dataset(const std::string& manifest_path,
                                 const LexerConfig& config = {});

/// Member id -> similarity of that member to the cluster's original.
using SimilarityMap = std::map<std::string, double>;

/// Similarities of every member to its original under ABA and SBA.
struct ClusterScores {
  SimilarityMap p1;
  SimilarityMap p2;
};
ClusterScores score_cluster(const Cluster& cluster, int min_match = 2);

/// Two members ordered oppositely by the two approaches. `code_a` is the
/// member the first approach ranks higher (its favoring code); `code_b` is
/// the second approach's favoring code.
struct ContradictingPair {
  std::string id;  // assigned by select_survey_pairs
  std::string cluster_id;
  int level = 0;
  std::string code_a;
  std::string code_b;
  std::pair<double, double> ranks_p1;  // (rank of A, rank of B)
  std::pair<double, double> ranks_p2;
  std::pair<double, double> sims_p1;  // (sim of A, sim of B)
  std::pair<double, double> sims_p2;
  double delta = 0.0;  // |dP1| + |dP2|
  std::string original_path;
  std::string path_a;
  std::string path_b;
};

/// All unordered member pairs satisfying either contradiction condition,
/// sorted by delta descending and then by member ids. Tied ranks never
/// qualify. Throws Error("IncompleteSimilarityMap") if a member is missing.
std::vector<ContradictingPair> contradicting_pairs(const Cluster& cluster,
                                                   const SimilarityMap& sims_p1,
                                                   const SimilarityMap& sims_p2);

inline const std::map<int, int> kDefaultLevelQuota = {
    {2, 5}, {3, 9}, {4, 11}, {5, 10}, {6, 10}};

struct LevelSelection {
  int quota = 0;
  int available = 0;  // candidates meeting minDelta
  int selected = 0;
};

struct SelectionReport {
  std::vector<std::string> detectors = {"ABA", "SBA"};
  std::vector<ContradictingPair> pairs;
  std::map<int, LevelSelection> levels;
  std::vector<std::string> shortfalls;
  double min_delta = 0.0;
  double alpha = 0.05;
  std::optional<stats::TTestResult> t_test;
  std::size_t tested_codes = 0;
  bool gate_passed = false;
  std::string gate_reason;
};

/// Per level, keeps the highest-delta candidates (delta >= min_delta) up to
/// the level's quota, then runs a paired t-test over the two approaches'
/// similarities of every distinct selected code. Levels missing from the
/// quota map are skipped. Never throws for an unmet quota.
SelectionReport select_survey_pairs(std::span<const ContradictingPair> candidates,
                                    const std::map<int, int>& quota_per_level,
                                    double min_delta, double alpha = 0.05);

/// Scores every cluster and collects all contradicting pairs.
std::vector<ContradictingPair> dataset_candidates(const PlagiarismDataset& dataset,
                                                  int min_match = 2);

/// Candidates from a precomputed similarity table:
///
///   {"schema": "plageval.similarities/1", "detectors": ["P1", "P2"],
///    "clusters": [{"id": "c", "level": 2, "original": "O",
///                  "members": [{"id": "A", "sims": [0.7, 0.5]}]}]}
std::vector<ContradictingPair> candidates_from_table(const nlohmann::json& table,
                                                     std::vector<std::string>* detectors);

nlohmann::json selection_to_json(const SelectionReport& report);
SelectionReport selection_from_json(const nlohmann::json& doc);

/// Flat table: one row per selected pair.
std::string selection_to_csv(const SelectionReport& report);

}  // namespace plageval
