#include "plageval/pairsel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>

#include "plageval/attribute.hpp"
#include "plageval/error.hpp"
#include "plageval/io.hpp"
#include "plageval/structure.hpp"

namespace plageval {

namespace {

using nlohmann::json;

constexpr std::string_view kDatasetSchema = "plageval.dataset/1";
constexpr std::string_view kTableSchema = "plageval.similarities/1";
constexpr std::string_view kSelectionSchema = "plageval.selection/1";

CodeFile load_code(const std::string& id, const std::string& path,
                   const LexerConfig& config) {
  CodeFile f;
  f.id = id;
  f.path = path;
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error&) {
    throw Error("MissingFile", "dataset file not found: " + path);
  }
  f.tokens = tokenize(text, config, path);  // LexError messages carry the path
  return f;
}

double similarity_or_throw(const std::string& cluster, const std::string& member,
                           const SimilarityMap& sims) {
  const auto it = sims.find(member);
  if (it == sims.end()) {
    throw Error("IncompleteSimilarityMap",
                "no similarity for member " + member + " of cluster " + cluster);
  }
  return it->second;
}

bool pair_order(const ContradictingPair& x, const ContradictingPair& y) {
  if (x.delta != y.delta) return x.delta > y.delta;
  if (x.code_a != y.code_a) return x.code_a < y.code_a;
  return x.code_b < y.code_b;
}

json pair_to_json(const ContradictingPair& p) {
  return {{"id", p.id},
          {"cluster", p.cluster_id},
          {"level", p.level},
          {"codeA", p.code_a},
          {"codeB", p.code_b},
          {"ranksP1", {p.ranks_p1.first, p.ranks_p1.second}},
          {"ranksP2", {p.ranks_p2.first, p.ranks_p2.second}},
          {"simsP1", {p.sims_p1.first, p.sims_p1.second}},
          {"simsP2", {p.sims_p2.first, p.sims_p2.second}},
          {"delta", p.delta},
          {"originalPath", p.original_path},
          {"pathA", p.path_a},
          {"pathB", p.path_b}};
}

ContradictingPair pair_from_json(const json& j) {
  ContradictingPair p;
  p.id = j.at("id").get<std::string>();
  p.cluster_id = j.at("cluster").get<std::string>();
  p.level = j.at("level").get<int>();
  p.code_a = j.at("codeA").get<std::string>();
  p.code_b = j.at("codeB").get<std::string>();
  auto both = [&](const char* key) {
    const json& v = j.at(key);
    return std::pair<double, double>{v.at(0).get<double>(), v.at(1).get<double>()};
  };
  p.ranks_p1 = both("ranksP1");
  p.ranks_p2 = both("ranksP2");
  p.sims_p1 = both("simsP1");
  p.sims_p2 = both("simsP2");
  p.delta = j.at("delta").get<double>();
  p.original_path = j.value("originalPath", std::string{});
  p.path_a = j.value("pathA", std::string{});
  p.path_b = j.value("pathB", std::string{});
  return p;
}

}  // namespace

PlagiarismDataset ingest_dataset(const std::string& manifest_path, const LexerConfig& config) {
  const json doc = read_json_file(manifest_path);
  const std::string base = parent_dir(manifest_path);
  PlagiarismDataset dataset;
  try {
    if (doc.at("schema").get<std::string>() != kDatasetSchema) {
      throw Error("InvalidDocument", "unsupported dataset schema " + doc.at("schema").dump());
    }
    std::set<std::string> seen;
    for (const json& o : doc.at("originals")) {
      const std::string oid = o.at("id").get<std::string>();
      if (!seen.insert(oid).second) {
        throw Error("DuplicateMember", "code id listed twice: " + oid);
      }
      const CodeFile original =
          load_code(oid, resolve_path(base, o.at("path").get<std::string>()), config);

      std::map<int, Cluster> by_level;
      for (const json& m : o.at("plagiarized")) {
        const std::string mid = m.at("id").get<std::string>();
        if (!seen.insert(mid).second) {
          throw Error("DuplicateMember", "code id listed twice: " + mid);
        }
        const int level = m.at("level").get<int>();
        if (level < 0 || level > 6) {
          throw Error("InvalidDocument", "plagiarism level out of range 0-6 for " + mid);
        }
        Cluster& cluster = by_level[level];
        if (cluster.members.empty()) {
          cluster.id = oid + "/L" + std::to_string(level);
          cluster.original = original;
          cluster.level = level;
        }
        cluster.members.push_back(
            load_code(mid, resolve_path(base, m.at("path").get<std::string>()), config));
      }
      for (auto& [level, cluster] : by_level) dataset.clusters.push_back(std::move(cluster));
    }
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", manifest_path + ": " + e.what());
  }
  return dataset;
}

ClusterScores score_cluster(const Cluster& cluster, int min_match) {
  ClusterScores scores;
  for (const CodeFile& m : cluster.members) {
    try {
      scores.p1[m.id] = aba_similarity(cluster.original.tokens, m.tokens).value;
      scores.p2[m.id] = sba_similarity(cluster.original.tokens, m.tokens, min_match).value;
    } catch (const Error& e) {
      throw Error(e.code(), m.path + " vs " + cluster.original.path + ": " + e.what());
    }
  }
  return scores;
}

std::vector<ContradictingPair> contradicting_pairs(const Cluster& cluster,
                                                   const SimilarityMap& sims_p1,
                                                   const SimilarityMap& sims_p2) {
  const std::size_t n = cluster.members.size();
  std::vector<double> v1(n), v2(n);
  for (std::size_t i = 0; i < n; ++i) {
    v1[i] = similarity_or_throw(cluster.id, cluster.members[i].id, sims_p1);
    v2[i] = similarity_or_throw(cluster.id, cluster.members[i].id, sims_p2);
  }
  std::vector<ContradictingPair> out;
  if (n < 2) return out;
  const stats::RankVector r1 = stats::rank_descending(v1);
  const stats::RankVector r2 = stats::rank_descending(v2);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Rank 1 is the most similar: "P(A) > P(B)" reads "A is ranked above B".
      const bool con1 = r1.ranks[i] < r1.ranks[j] && r2.ranks[i] > r2.ranks[j];
      const bool con2 = r1.ranks[i] > r1.ranks[j] && r2.ranks[i] < r2.ranks[j];
      if (!con1 && !con2) continue;
      const std::size_t a = con1 ? i : j;  // favoured by the first approach
      const std::size_t b = con1 ? j : i;
      ContradictingPair p;
      p.cluster_id = cluster.id;
      p.level = cluster.level;
      p.code_a = cluster.members[a].id;
      p.code_b = cluster.members[b].id;
      p.ranks_p1 = {r1.ranks[a], r1.ranks[b]};
      p.ranks_p2 = {r2.ranks[a], r2.ranks[b]};
      p.sims_p1 = {v1[a], v1[b]};
      p.sims_p2 = {v2[a], v2[b]};
      p.delta = std::fabs(v1[a] - v1[b]) + std::fabs(v2[a] - v2[b]);
      p.original_path = cluster.original.path;
      p.path_a = cluster.members[a].path;
      p.path_b = cluster.members[b].path;
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), pair_order);
  return out;
}

SelectionReport select_survey_pairs(std::span<const ContradictingPair> candidates,
                                    const std::map<int, int>& quota_per_level,
                                    double min_delta, double alpha) {
  SelectionReport report;
  report.min_delta = min_delta;
  report.alpha = alpha;

  for (const auto& [level, quota] : quota_per_level) {
    if (quota < 0) throw Error("InvalidQuota", "negative quota for level " + std::to_string(level));
    std::vector<ContradictingPair> pool;
    for (const ContradictingPair& c : candidates) {
      if (c.level == level && c.delta >= min_delta) pool.push_back(c);
    }
    std::sort(pool.begin(), pool.end(), pair_order);
    LevelSelection& sel = report.levels[level];
    sel.quota = quota;
    sel.available = static_cast<int>(pool.size());
    sel.selected = std::min(quota, sel.available);
    for (int k = 0; k < sel.selected; ++k) report.pairs.push_back(pool[k]);
    if (sel.selected < quota) {
      std::ostringstream note;
      note << "level " << level << ": selected " << sel.selected << " of quota " << quota;
      report.shortfalls.push_back(note.str());
    }
  }
  for (std::size_t k = 0; k < report.pairs.size(); ++k) {
    std::ostringstream id;
    id << "pair-" << std::setw(3) << std::setfill('0') << k + 1;
    report.pairs[k].id = id.str();
  }

  // One observation per distinct code across the selection.
  std::vector<double> x, y;
  std::set<std::string> seen;
  for (const ContradictingPair& p : report.pairs) {
    if (seen.insert(p.code_a).second) {
      x.push_back(p.sims_p1.first);
      y.push_back(p.sims_p2.first);
    }
    if (seen.insert(p.code_b).second) {
      x.push_back(p.sims_p1.second);
      y.push_back(p.sims_p2.second);
    }
  }
  report.tested_codes = x.size();
  if (x.size() < 2) {
    report.gate_reason = "fewer than two selected codes";
    return report;
  }
  try {
    report.t_test = stats::paired_t_test(x, y);
    report.gate_passed = report.t_test->p < alpha;
    if (!report.gate_passed) {
      std::ostringstream msg;
      msg << "p = " << report.t_test->p << " is not below " << alpha;
      report.gate_reason = msg.str();
    }
  } catch (const Error& e) {
    if (e.code() != "ZeroVariance") throw;
    report.gate_reason = "ZeroVariance: " + std::string(e.what());
  }
  return report;
}

std::vector<ContradictingPair> dataset_candidates(const PlagiarismDataset& dataset,
                                                  int min_match) {
  std::vector<ContradictingPair> out;
  for (const Cluster& c : dataset.clusters) {
    const ClusterScores scores = score_cluster(c, min_match);
    auto pairs = contradicting_pairs(c, scores.p1, scores.p2);
    out.insert(out.end(), pairs.begin(), pairs.end());
  }
  return out;
}

std::vector<ContradictingPair> candidates_from_table(const json& table,
                                                     std::vector<std::string>* detectors) {
  try {
    if (table.at("schema").get<std::string>() != kTableSchema) {
      throw Error("InvalidDocument", "unsupported similarity table schema");
    }
    if (detectors) *detectors = table.value("detectors", std::vector<std::string>{"P1", "P2"});
    std::vector<ContradictingPair> out;
    for (const json& c : table.at("clusters")) {
      Cluster cluster;
      cluster.id = c.at("id").get<std::string>();
      cluster.level = c.value("level", 0);
      cluster.original.id = c.value("original", std::string{});
      cluster.original.path = c.value("originalPath", std::string{});
      SimilarityMap p1, p2;
      for (const json& m : c.at("members")) {
        CodeFile f;
        f.id = m.at("id").get<std::string>();
        f.path = m.value("path", std::string{});
        p1[f.id] = m.at("sims").at(0).get<double>();
        p2[f.id] = m.at("sims").at(1).get<double>();
        cluster.members.push_back(std::move(f));
      }
      auto pairs = contradicting_pairs(cluster, p1, p2);
      out.insert(out.end(), pairs.begin(), pairs.end());
    }
    return out;
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed similarity table: ") + e.what());
  }
}

json selection_to_json(const SelectionReport& report) {
  json pairs = json::array();
  for (const ContradictingPair& p : report.pairs) pairs.push_back(pair_to_json(p));
  json levels = json::object();
  for (const auto& [level, sel] : report.levels) {
    levels[std::to_string(level)] = {
        {"quota", sel.quota}, {"available", sel.available}, {"selected", sel.selected}};
  }
  json doc = {{"schema", kSelectionSchema},
              {"detectors", report.detectors},
              {"pairs", std::move(pairs)},
              {"levels", std::move(levels)},
              {"shortfalls", report.shortfalls},
              {"minDelta", report.min_delta},
              {"alpha", report.alpha},
              {"testedCodes", report.tested_codes},
              {"gatePassed", report.gate_passed},
              {"gateReason", report.gate_reason}};
  if (report.t_test) {
    doc["tTest"] = {{"t", report.t_test->t}, {"df", report.t_test->df}, {"p", report.t_test->p}};
  } else {
    doc["tTest"] = nullptr;
  }
  return doc;
}

SelectionReport selection_from_json(const json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kSelectionSchema) {
      throw Error("InvalidDocument", "unsupported selection schema");
    }
    SelectionReport r;
    r.detectors = doc.at("detectors").get<std::vector<std::string>>();
    for (const json& p : doc.at("pairs")) r.pairs.push_back(pair_from_json(p));
    for (const auto& [level, sel] : doc.at("levels").items()) {
      r.levels[std::stoi(level)] = {sel.at("quota").get<int>(), sel.at("available").get<int>(),
                                    sel.at("selected").get<int>()};
    }
    r.shortfalls = doc.value("shortfalls", std::vector<std::string>{});
    r.min_delta = doc.value("minDelta", 0.0);
    r.alpha = doc.value("alpha", 0.05);
    r.tested_codes = doc.value("testedCodes", std::size_t{0});
    r.gate_passed = doc.value("gatePassed", false);
    r.gate_reason = doc.value("gateReason", std::string{});
    if (doc.contains("tTest") && !doc.at("tTest").is_null()) {
      const json& t = doc.at("tTest");
      r.t_test = stats::TTestResult{t.at("t").get<double>(), t.at("df").get<int>(),
                                    t.at("p").get<double>()};
    }
    return r;
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed selection report: ") + e.what());
  }
}

std::string selection_to_csv(const SelectionReport& report) {
  std::ostringstream out;
  const std::string p1 = report.detectors.at(0);
  const std::string p2 = report.detectors.at(1);
  out << "pair_id,level,cluster,code_a,code_b,path_a,path_b," << p1 << "_a," << p1 << "_b,"
      << p2 << "_a," << p2 << "_b,delta\n";
  for (const ContradictingPair& p : report.pairs) {
    out << p.id << ',' << p.level << ',' << p.cluster_id << ',' << p.code_a << ','
        << p.code_b << ',' << p.path_a << ',' << p.path_b << ',' << format_double(p.sims_p1.first)
        << ',' << format_double(p.sims_p1.second) << ',' << format_double(p.sims_p2.first) << ','
        << format_double(p.sims_p2.second) << ',' << format_double(p.delta) << '\n';
  }
  return out.str();
}

}  // namespace plageval
