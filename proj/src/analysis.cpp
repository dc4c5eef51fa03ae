#include "plageval/analysis.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <set>
#include <sstream>

#include "plageval/attribute.hpp"
#include "plageval/error.hpp"
#include "plageval/io.hpp"
#include "plageval/stats.hpp"
#include "plageval/structure.hpp"

namespace plageval::analysis {

namespace {

using nlohmann::json;

constexpr std::string_view kReportSchema = "plageval.report/1";
constexpr std::string_view kCodedSchema = "plageval.coded/1";
constexpr const char* kTie = "TIE";

json correlation_json(const Correlation& c) {
  json j = {{"n", c.n}};
  if (c.value) {
    j["value"] = *c.value;
  } else {
    j["value"] = nullptr;
    j["immeasurable"] = c.immeasurable;
  }
  return j;
}

std::string csv_number(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

}  // namespace

Correlation correlate(std::span<const double> x, std::span<const double> y) {
  Correlation c;
  c.n = x.size();
  try {
    c.value = stats::pearson(x, y);
  } catch (const Error& e) {
    if (e.code() != "NoVariability" && e.code() != "LengthMismatch") throw;
    c.immeasurable = e.code() + ": " + e.what();
  }
  return c;
}

AspectSection aspect_report(std::span<const ArtificialCase> cases,
                            std::span<const ResponseRecord> responses,
                            const LexerConfig& config, int min_match) {
  AspectSection out;
  out.detectors = {{"ABA", {}, {}, {}}, {"SBA", {}, {}, {}}};
  out.verbatim_top_rank_holds = !cases.empty();

  for (const ArtificialCase& c : cases) {
    const std::string task = "case:" + c.name;
    std::map<std::string, std::size_t> slot;
    for (std::size_t k = 0; k < c.variants.size(); ++k) slot[c.variants[k].id] = k;

    std::vector<stats::RankVector> rankings;
    for (const ResponseRecord& r : responses) {
      if (r.kind != TaskKind::CaseRanking || r.task_id != task) continue;
      const auto ids = r.payload.at("variants").get<std::vector<std::string>>();
      const auto ranks = r.payload.at("ranks").get<std::vector<double>>();
      if (ids.size() != c.variants.size() || ranks.size() != ids.size()) {
        throw Error("InvalidDocument", "ranking for " + c.name + " does not cover its variants");
      }
      stats::RankVector rv;
      rv.ranks.resize(ids.size());
      for (std::size_t k = 0; k < ids.size(); ++k) {
        const auto it = slot.find(ids[k]);
        if (it == slot.end()) {
          throw Error("InvalidDocument", "unknown variant " + ids[k] + " in " + c.name);
        }
        rv.ranks[it->second] = ranks[k];
      }
      rankings.push_back(std::move(rv));
    }
    if (rankings.empty()) {
      throw Error("MissingRankings", "no rankings recorded for case " + c.name);
    }

    const std::vector<double> negated = stats::negate_average_ranks(rankings);
    CaseSummary summary;
    summary.name = c.name;
    summary.respondents = rankings.size();
    double best = -1e300;
    double identity = -1e300;
    for (std::size_t k = 0; k < c.variants.size(); ++k) {
      summary.variants.push_back(c.variants[k].id);
      summary.average_ranks.push_back(-negated[k]);
      best = std::max(best, negated[k]);
      if (c.variants[k].identity) identity = negated[k];
    }
    summary.verbatim_top = identity >= best;
    out.verbatim_top_rank_holds = out.verbatim_top_rank_holds && summary.verbatim_top;
    out.cases.push_back(std::move(summary));

    const TokenSequence original = tokenize(c.original, config, c.name + "#original");
    for (std::size_t k = 0; k < c.variants.size(); ++k) {
      const TokenSequence t = tokenize(c.variants[k].source, config, c.name + "#" + c.variants[k].id);
      out.detectors[0].similarities.push_back(aba_similarity(original, t).value);
      out.detectors[1].similarities.push_back(sba_similarity(original, t, min_match).value);
      for (auto& d : out.detectors) d.negated_ranks.push_back(negated[k]);
    }
  }
  for (auto& d : out.detectors) d.correlation = correlate(d.similarities, d.negated_ranks);
  return out;
}

EmpiricalSection empirical_report(std::span<const ContradictingPair> pairs,
                                  std::span<const ResponseRecord> responses,
                                  const std::vector<std::string>& detectors) {
  if (detectors.size() != 2) {
    throw Error("InvalidDocument", "empirical analysis compares exactly two detectors");
  }
  EmpiricalSection out;
  for (const std::string& name : detectors) {
    EmpiricalDetector d;
    d.detector = name;
    out.detectors.push_back(std::move(d));
  }

  std::map<int, std::array<std::vector<double>, 4>> by_level;  // x1, y1, x2, y2
  for (const ContradictingPair& p : pairs) {
    const std::string task = "pair:" + p.id;
    PairOutcome o{p.id, p.level, p.code_a, p.code_b, 0, 0, {}};
    for (const ResponseRecord& r : responses) {
      if (r.kind != TaskKind::PairPreference || r.task_id != task) continue;
      const std::string preferred = r.payload.at("preferred").get<std::string>();
      if (preferred == p.code_a) {
        ++o.votes_a;
      } else if (preferred == p.code_b) {
        ++o.votes_b;
      } else {
        throw Error("InvalidDocument", "preference for " + p.id + " names " + preferred);
      }
    }
    const int votes = o.votes_a + o.votes_b;
    if (votes == 0) {
      out.unanswered.push_back(p.id);
      continue;
    }
    ++out.answered;
    out.responses += votes;
    out.detectors[0].preferred_responses += o.votes_a;
    out.detectors[1].preferred_responses += o.votes_b;
    if (o.votes_a > o.votes_b) {
      o.majority = p.code_a;
      ++out.detectors[0].majority_pairs;
    } else if (o.votes_b > o.votes_a) {
      o.majority = p.code_b;
      ++out.detectors[1].majority_pairs;
    } else {
      o.majority = kTie;
      ++out.ties;
    }

    // Preferred code gets rank 1, the other rank 2.
    const double rank_a = (1.0 * o.votes_a + 2.0 * o.votes_b) / votes;
    const double rank_b = (2.0 * o.votes_a + 1.0 * o.votes_b) / votes;
    const std::pair<double, double> sims[2] = {p.sims_p1, p.sims_p2};
    for (std::size_t d = 0; d < 2; ++d) {
      EmpiricalDetector& det = out.detectors[d];
      det.similarities.insert(det.similarities.end(), {sims[d].first, sims[d].second});
      det.negated_ranks.insert(det.negated_ranks.end(), {-rank_a, -rank_b});
      det.levels.insert(det.levels.end(), {p.level, p.level});
      auto& series = by_level[p.level];
      series[2 * d].insert(series[2 * d].end(), {sims[d].first, sims[d].second});
      series[2 * d + 1].insert(series[2 * d + 1].end(), {-rank_a, -rank_b});
    }
    out.pairs.push_back(std::move(o));
  }
  if (out.answered == 0) {
    throw Error("MissingPreferences", "no contradicting pair has a recorded preference");
  }
  for (std::size_t d = 0; d < 2; ++d) {
    EmpiricalDetector& det = out.detectors[d];
    det.preference_pct = 100.0 * det.majority_pairs / out.answered;
    det.response_pct = 100.0 * det.preferred_responses / out.responses;
    det.overall = correlate(det.similarities, det.negated_ranks);
    for (const auto& [level, series] : by_level) {
      det.per_level[level] = correlate(series[2 * d], series[2 * d + 1]);
    }
  }
  return out;
}

AspectTally aspect_tally(std::span<const CodedDescription> descriptions,
                         std::span<const CodebookEntry> codebook) {
  std::vector<std::string> order;
  std::map<std::string, std::string> detector_of;
  for (const CodebookEntry& e : codebook) {
    if (detector_of.emplace(e.aspect, e.detector).second) order.push_back(e.aspect);
  }
  std::map<std::string, std::set<std::string>> who;
  std::set<std::string> respondents;
  for (const CodedDescription& d : descriptions) {
    respondents.insert(d.respondent);
    for (const std::string& aspect : d.aspects) {
      if (!detector_of.contains(aspect)) {
        detector_of.emplace(aspect, "UNMAPPED");
        order.push_back(aspect);
      }
      who[aspect].insert(d.respondent);
    }
  }
  AspectTally tally;
  tally.respondents = respondents.size();
  for (const std::string& aspect : order) {
    const auto it = who.find(aspect);
    if (it == who.end()) continue;
    std::string det = detector_of.at(aspect);
    if (det != "ABA" && det != "SBA") det = "UNMAPPED";
    tally.entries.push_back({aspect, static_cast<int>(it->second.size()), det});
  }
  std::stable_sort(tally.entries.begin(), tally.entries.end(),
                   [](const TallyEntry& x, const TallyEntry& y) {
                     return x.occurrences > y.occurrences;
                   });
  return tally;
}

int tally_weight(const AspectTally& tally, const std::string& detector) {
  int sum = 0;
  for (const TallyEntry& e : tally.entries) {
    if (e.detector == detector) sum += e.occurrences;
  }
  return sum;
}

CodedData coded_from_json(const json& doc) {
  try {
    if (doc.at("schema").get<std::string>() != kCodedSchema) {
      throw Error("InvalidDocument", "unsupported coded-description schema");
    }
    CodedData data;
    for (const json& e : doc.at("codebook")) {
      data.codebook.push_back({e.at("aspect").get<std::string>(), e.at("detector").get<std::string>()});
    }
    for (const json& d : doc.at("descriptions")) {
      data.descriptions.push_back({d.at("respondent").get<std::string>(),
                                   d.at("aspects").get<std::vector<std::string>>()});
    }
    return data;
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed coded descriptions: ") + e.what());
  }
}

std::vector<CodedDescription> coded_from_responses(std::span<const ResponseRecord> responses) {
  std::vector<CodedDescription> out;
  for (const ResponseRecord& r : responses) {
    if (r.kind != TaskKind::ThinkAloud || !r.payload.contains("aspects")) continue;
    out.push_back({r.session_id, r.payload.at("aspects").get<std::vector<std::string>>()});
  }
  return out;
}

TournamentResult run_tournament(std::span<const std::string> approaches, const CompareFn& compare) {
  if (approaches.size() < 2) {
    throw Error("FewerThanTwo", "a tournament needs at least two approaches");
  }
  TournamentResult result;
  std::vector<std::string> field(approaches.begin(), approaches.end());
  int round = 0;
  while (field.size() > 1) {
    ++round;
    std::vector<std::string> next;
    for (std::size_t i = 0; i + 1 < field.size(); i += 2) {
      Match m{round, field[i], field[i + 1], {}, false};
      const std::optional<std::string> w = compare(field[i], field[i + 1]);
      if (w && *w != field[i] && *w != field[i + 1]) {
        throw Error("InvalidComparison", "compare returned " + *w);
      }
      m.tie = !w.has_value();
      m.advanced = w.value_or(field[i]);
      next.push_back(m.advanced);
      result.trace.push_back(std::move(m));
    }
    if (field.size() % 2 == 1) {
      result.trace.push_back({round, field.back(), {}, field.back(), false});
      next.push_back(field.back());
    }
    field = std::move(next);
  }
  result.winner = field.front();
  return result;
}

std::vector<MechanismVote> mechanism_votes(const AspectSection* aspect,
                                           const EmpiricalSection* empirical,
                                           const AspectTally* tally, const std::string& a,
                                           const std::string& b) {
  std::vector<MechanismVote> votes;
  auto pick = [&](double va, double vb) -> std::optional<std::string> {
    if (va > vb) return a;
    if (vb > va) return b;
    return std::nullopt;
  };

  MechanismVote av{"aspect", std::nullopt, "no artificial cases analyzed"};
  if (aspect) {
    const AspectDetector* da = nullptr;
    const AspectDetector* db = nullptr;
    for (const auto& d : aspect->detectors) {
      if (d.detector == a) da = &d;
      if (d.detector == b) db = &d;
    }
    if (da && db) {
      const auto& ca = da->correlation.value;
      const auto& cb = db->correlation.value;
      if (ca && cb) {
        av.winner = pick(*ca, *cb);
        av.basis = "higher correlation";
      } else if (ca || cb) {
        // A positive correlation beats an immeasurable one.
        const double v = ca ? *ca : *cb;
        if (v > 0) av.winner = ca ? a : b;
        av.basis = "only one correlation measurable";
      } else {
        av.basis = "both correlations immeasurable";
      }
    }
  }
  votes.push_back(av);

  MechanismVote ev{"empirical", std::nullopt, "no contradicting pairs analyzed"};
  if (empirical) {
    const EmpiricalDetector* da = nullptr;
    const EmpiricalDetector* db = nullptr;
    for (const auto& d : empirical->detectors) {
      if (d.detector == a) da = &d;
      if (d.detector == b) db = &d;
    }
    if (da && db) {
      ev.winner = pick(da->preference_pct, db->preference_pct);
      ev.basis = "higher majority preference percentage";
    }
  }
  votes.push_back(ev);

  MechanismVote tv{"thinkAloud", std::nullopt, "no coded descriptions"};
  if (tally && !tally->entries.empty()) {
    tv.winner = pick(tally_weight(*tally, a), tally_weight(*tally, b));
    tv.basis = "larger occurrence-weighted aspect sum";
  }
  votes.push_back(tv);
  return votes;
}

std::optional<std::string> majority_verdict(const std::vector<MechanismVote>& votes,
                                            const std::string& a, const std::string& b) {
  int wa = 0, wb = 0;
  for (const MechanismVote& v : votes) {
    if (v.winner == a) ++wa;
    if (v.winner == b) ++wb;
  }
  if (wa >= 2) return a;
  if (wb >= 2) return b;
  return std::nullopt;
}

EffectivenessReport analyze(const AnalysisInputs& inputs) {
  EffectivenessReport report;
  if (!inputs.cases.empty()) {
    report.aspect = aspect_report(inputs.cases, inputs.responses, inputs.lexer, inputs.min_match);
  }
  if (inputs.selection) {
    report.empirical =
        empirical_report(inputs.selection->pairs, inputs.responses, inputs.selection->detectors);
  }
  std::vector<CodedDescription> descriptions = coded_from_responses(inputs.responses);
  std::vector<CodebookEntry> codebook;
  if (inputs.coded) {
    codebook = inputs.coded->codebook;
    descriptions.insert(descriptions.end(), inputs.coded->descriptions.begin(),
                        inputs.coded->descriptions.end());
  }
  report.think_aloud = aspect_tally(descriptions, codebook);

  const std::vector<std::string> entrants = {"ABA", "SBA"};
  report.tournament = run_tournament(entrants, [&](const std::string& a, const std::string& b) {
    report.votes = mechanism_votes(report.aspect ? &*report.aspect : nullptr,
                                   report.empirical ? &*report.empirical : nullptr,
                                   &report.think_aloud, a, b);
    return majority_verdict(report.votes, a, b);
  });
  report.verdict = majority_verdict(report.votes, entrants[0], entrants[1]);
  return report;
}

json report_to_json(const EffectivenessReport& report) {
  json doc = {{"schema", kReportSchema}};

  if (report.aspect) {
    json dets = json::object();
    for (const AspectDetector& d : report.aspect->detectors) {
      dets[d.detector] = {{"correlation", correlation_json(d.correlation)}};
    }
    json cases = json::array();
    for (const CaseSummary& c : report.aspect->cases) {
      cases.push_back({{"name", c.name},
                       {"variants", c.variants},
                       {"averageRanks", c.average_ranks},
                       {"respondents", c.respondents},
                       {"verbatimTop", c.verbatim_top}});
    }
    doc["aspectOriented"] = {{"detectors", std::move(dets)},
                             {"cases", std::move(cases)},
                             {"verbatimTopRankHolds", report.aspect->verbatim_top_rank_holds}};
  } else {
    doc["aspectOriented"] = nullptr;
  }

  if (report.empirical) {
    const EmpiricalSection& e = *report.empirical;
    json dets = json::object();
    for (const EmpiricalDetector& d : e.detectors) {
      json levels = json::object();
      for (const auto& [level, c] : d.per_level) levels[std::to_string(level)] = correlation_json(c);
      dets[d.detector] = {{"majorityPairs", d.majority_pairs},
                          {"preferencePct", d.preference_pct},
                          {"preferredResponses", d.preferred_responses},
                          {"responsePct", d.response_pct},
                          {"correlationOverall", correlation_json(d.overall)},
                          {"correlationPerLevel", std::move(levels)}};
    }
    json pairs = json::array();
    for (const PairOutcome& p : e.pairs) {
      pairs.push_back({{"pairId", p.pair_id},
                       {"level", p.level},
                       {"codeA", p.code_a},
                       {"codeB", p.code_b},
                       {"votesA", p.votes_a},
                       {"votesB", p.votes_b},
                       {"majority", p.majority}});
    }
    doc["empirical"] = {{"detectors", std::move(dets)},
                        {"detectorOrder", json::array({e.detectors[0].detector, e.detectors[1].detector})},
                        {"pairs", std::move(pairs)},
                        {"unanswered", e.unanswered},
                        {"answeredPairs", e.answered},
                        {"tiedPairs", e.ties},
                        {"responses", e.responses}};
  } else {
    doc["empirical"] = nullptr;
  }

  json entries = json::array();
  for (const TallyEntry& t : report.think_aloud.entries) {
    entries.push_back({{"aspect", t.aspect}, {"occurrences", t.occurrences}, {"detector", t.detector}});
  }
  doc["thinkAloud"] = {{"entries", std::move(entries)},
                       {"respondents", report.think_aloud.respondents},
                       {"weights",
                        {{"ABA", tally_weight(report.think_aloud, "ABA")},
                         {"SBA", tally_weight(report.think_aloud, "SBA")}}}};

  json votes = json::array();
  for (const MechanismVote& v : report.votes) {
    votes.push_back({{"mechanism", v.mechanism},
                     {"winner", v.winner ? json(*v.winner) : json(kTie)},
                     {"basis", v.basis}});
  }
  doc["votes"] = std::move(votes);
  doc["verdict"] = report.verdict ? *report.verdict : kTie;

  json trace = json::array();
  for (const Match& m : report.tournament.trace) {
    trace.push_back({{"round", m.round},
                     {"a", m.a},
                     {"b", m.b.empty() ? json(nullptr) : json(m.b)},
                     {"advanced", m.advanced},
                     {"tie", m.tie}});
  }
  doc["tournament"] = {{"winner", report.tournament.winner}, {"trace", std::move(trace)}};
  return doc;
}

std::string per_level_csv(const EffectivenessReport& report) {
  std::ostringstream out;
  out << "level,detector,correlation,n,immeasurable\n";
  if (!report.empirical) return out.str();
  for (const EmpiricalDetector& d : report.empirical->detectors) {
    for (const auto& [level, c] : d.per_level) {
      out << level << ',' << d.detector << ',' << csv_number(c.value) << ',' << c.n << ','
          << (c.value ? "" : "yes") << '\n';
    }
    out << "all," << d.detector << ',' << csv_number(d.overall.value) << ',' << d.overall.n
        << ',' << (d.overall.value ? "" : "yes") << '\n';
  }
  return out.str();
}

std::string preference_csv(const EffectivenessReport& report) {
  std::ostringstream out;
  out << "detector,majority_pairs,answered_pairs,preference_pct,preferred_responses,responses,"
         "response_pct\n";
  if (!report.empirical) return out.str();
  const EmpiricalSection& e = *report.empirical;
  for (const EmpiricalDetector& d : e.detectors) {
    out << d.detector << ',' << d.majority_pairs << ',' << e.answered << ','
        << csv_number(d.preference_pct) << ',' << d.preferred_responses << ',' << e.responses
        << ',' << csv_number(d.response_pct) << '\n';
  }
  out << "TIE," << e.ties << ',' << e.answered << ','
      << csv_number(e.answered ? 100.0 * e.ties / e.answered : 0.0) << ",,,\n";
  return out.str();
}

std::string tally_csv(const EffectivenessReport& report) {
  std::ostringstream out;
  out << "aspect,occurrences,detector\n";
  for (const TallyEntry& t : report.think_aloud.entries) {
    out << '"' << t.aspect << "\"," << t.occurrences << ',' << t.detector << '\n';
  }
  return out.str();
}

json plot_data(const EffectivenessReport& report) {
  json doc = {{"schema", "plageval.plot/1"}};
  json aspect = json::object();
  if (report.aspect) {
    for (const AspectDetector& d : report.aspect->detectors) {
      aspect[d.detector] = {{"x", d.similarities}, {"y", d.negated_ranks}};
    }
  }
  doc["aspectOriented"] = std::move(aspect);
  json empirical = json::object();
  json bars = json::object();
  if (report.empirical) {
    for (const EmpiricalDetector& d : report.empirical->detectors) {
      empirical[d.detector] = {{"x", d.similarities}, {"y", d.negated_ranks}, {"level", d.levels}};
      bars[d.detector] = d.preference_pct;
    }
  }
  doc["empirical"] = std::move(empirical);
  doc["preferencePct"] = std::move(bars);
  return doc;
}

}  // namespace plageval::analysis
