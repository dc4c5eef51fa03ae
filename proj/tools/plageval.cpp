// plageval: command-line front end for the detectors and the evaluation
// pipeline (gen-cases -> select-pairs -> serve -> export -> analyze).

#include <CLI11.hpp>
#include <pthread.h>
#include <signal.h>

#include <filesystem>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "plageval/analysis.hpp"
#include "plageval/attribute.hpp"
#include "plageval/casegen.hpp"
#include "plageval/error.hpp"
#include "plageval/io.hpp"
#include "plageval/pairsel.hpp"
#include "plageval/pipeline.hpp"
#include "plageval/structure.hpp"
#include "plageval/survey.hpp"
#include "plageval/survey_http.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace plageval;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> mode;
  std::optional<int> min_match;
  std::optional<double> alpha;
  std::optional<double> min_delta;
  std::optional<std::string> quotas;
  std::optional<int> groups;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> manifest;
  std::optional<std::string> similarities;
  std::vector<std::string> templates;
  std::vector<std::string> cases;
  std::optional<std::string> selection;
  std::optional<std::string> store;
  std::optional<std::string> responses;
  std::optional<std::string> coded;
  std::optional<std::string> bind;
  std::optional<std::string> admin_token;
};

void print_error(const std::string& code, const std::string& message,
                 std::optional<std::pair<int, int>> position = std::nullopt) {
  json err = {{"code", code}, {"message", message}};
  if (position) {
    err["line"] = position->first;
    err["column"] = position->second;
  }
  std::cerr << json{{"error", err}}.dump() << std::endl;
}

std::string fixed4(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4) << v;
  return out.str();
}

const char* env(const char* name) {
  const char* v = std::getenv(name);
  return v && *v ? v : nullptr;
}

PipelineConfig effective_config(const Flags& f, bool serving) {
  PipelineConfig c;
  if (!f.config.empty()) c = load_config(f.config, c);
  if (serving) {
    if (const char* v = env("PLAGEVAL_STORE")) c.store = v;
    if (const char* v = env("PLAGEVAL_BIND")) c.bind = v;
    if (const char* v = env("PLAGEVAL_ADMIN_TOKEN")) c.admin_token = v;
  }
  if (f.mode) c.mode = abstraction_from_string(*f.mode);
  if (f.min_match) c.min_match = *f.min_match;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.min_delta) c.min_delta = *f.min_delta;
  if (f.quotas) c.quotas = parse_quotas(*f.quotas);
  if (f.groups) c.groups = *f.groups;
  if (f.seed) c.seed = *f.seed;
  if (f.out) c.out = *f.out;
  if (f.manifest) c.manifest = *f.manifest;
  if (f.similarities) c.similarities = *f.similarities;
  if (!f.templates.empty()) c.case_templates = f.templates;
  if (!f.cases.empty()) c.cases = f.cases;
  if (f.selection) c.selection = *f.selection;
  if (f.store) c.store = *f.store;
  if (f.responses) c.responses = *f.responses;
  if (f.coded) c.coded = *f.coded;
  if (f.bind) c.bind = *f.bind;
  if (f.admin_token) c.admin_token = *f.admin_token;
  validate_config(c);
  return c;
}

void write_snapshot(const std::string& dir, const PipelineConfig& c) {
  write_json_file((fs::path(dir) / "effective-config.json").string(), config_to_json(c));
}

// --- detect ----------------------------------------------------------------

struct DetectOptions {
  std::vector<std::string> files;
  bool json = false;
  bool tiles = false;
  bool tokens = false;
  unsigned threads = 0;
};

struct Comparison {
  std::size_t a = 0;
  std::size_t b = 0;
  double aba = 0.0;
  double sba = 0.0;
  TileSet tiles;
};

int run_detect(const DetectOptions& o, const PipelineConfig& c) {
  if (o.files.size() < 2) throw Error("UsageError", "detect needs at least two files");
  LexerConfig lexer{c.mode};
  std::vector<TokenSequence> seqs;
  for (const std::string& f : o.files) seqs.push_back(tokenize_file(f, lexer));

  std::vector<Comparison> work;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    for (std::size_t j = i + 1; j < seqs.size(); ++j) work.push_back({i, j, 0, 0, {}});
  }
  const std::size_t mm = static_cast<std::size_t>(c.min_match);
  auto compute = [&](Comparison& w) {
    const TokenSequence& a = seqs[w.a];
    const TokenSequence& b = seqs[w.b];
    try {
      w.aba = aba_similarity(a, b).value;
      w.sba = sba_similarity(a, b, mm).value;
    } catch (const Error& e) {
      throw Error(e.code(), o.files[w.a] + " vs " + o.files[w.b] + ": " + e.what());
    }
    if (o.tiles) w.tiles = rkr_gst_tiles(a, b, mm);
  };
  const unsigned threads =
      o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 1 || work.size() == 1) {
    for (Comparison& w : work) compute(w);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) {
      jobs.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t k = t; k < work.size(); k += threads) compute(work[k]);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  if (o.json) {
    json comps = json::array();
    for (const Comparison& w : work) {
      json entry = {{"a", o.files[w.a]}, {"b", o.files[w.b]}, {"ABA", w.aba}, {"SBA", w.sba}};
      if (o.tiles) {
        json tiles = json::array();
        for (const Tile& t : w.tiles.tiles) tiles.push_back({t.start_a, t.start_b, t.length});
        entry["tiles"] = std::move(tiles);
        entry["coverage"] = w.tiles.coverage;
      }
      comps.push_back(std::move(entry));
    }
    json doc = {{"schema", "plageval.detect/1"},
                {"mode", to_string(c.mode)},
                {"minMatch", c.min_match},
                {"comparisons", std::move(comps)}};
    if (o.tokens) {
      json toks = json::object();
      for (std::size_t i = 0; i < seqs.size(); ++i) toks[o.files[i]] = seqs[i].keys();
      doc["tokens"] = std::move(toks);
    }
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  if (o.tokens) {
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      std::cout << "# tokens " << o.files[i] << "\n";
      dump_tokens(std::cout, seqs[i]);
    }
  }
  for (const Comparison& w : work) {
    if (work.size() > 1) std::cout << o.files[w.a] << " " << o.files[w.b] << "\n";
    std::cout << "ABA " << fixed4(w.aba) << "\n" << "SBA " << fixed4(w.sba) << "\n";
    if (o.tiles) {
      std::cout << "# tiles (a b len), coverage " << w.tiles.coverage << "\n";
      dump_tiles(std::cout, w.tiles);
    }
  }
  return 0;
}

// --- gen-cases -------------------------------------------------------------

int run_gen_cases(const PipelineConfig& c, bool require_valid) {
  if (c.case_templates.empty()) throw Error("UsageError", "gen-cases needs at least one --template");
  std::vector<ArtificialCase> cases;
  for (const std::string& t : c.case_templates) {
    cases.push_back(generate_from_template(read_json_file(t), parent_dir(t), c.seed));
  }
  fs::create_directories(c.out);
  json written = json::array();
  for (const ArtificialCase& ac : cases) {
    const std::string path = (fs::path(c.out) / (ac.name + ".case.json")).string();
    write_case_bundle(path, ac);
    written.push_back(path);
    std::cout << "wrote " << path << " (" << ac.variants.size() << " variants)\n";
  }
  const CaseValidation v = validate_case_set(cases, LexerConfig{c.mode}, c.alpha, c.min_match);
  json aba = json::array();
  json sba = json::array();
  for (const auto& d : v.aba) aba.push_back(d.value);
  for (const auto& d : v.sba) sba.push_back(d.value);
  json doc = {{"schema", "plageval.validation/1"},
              {"bundles", std::move(written)},
              {"ABA", std::move(aba)},
              {"SBA", std::move(sba)},
              {"alpha", c.alpha},
              {"valid", v.valid},
              {"reason", v.reason}};
  doc["tTest"] = v.t_test ? json{{"t", v.t_test->t}, {"df", v.t_test->df}, {"p", v.t_test->p}}
                          : json(nullptr);
  write_json_file((fs::path(c.out) / "validation.json").string(), doc);
  write_snapshot(c.out, c);
  if (v.t_test) {
    std::cout << "validation: t = " << v.t_test->t << ", df = " << v.t_test->df
              << ", p = " << v.t_test->p << (v.valid ? " (valid)" : " (not valid)") << "\n";
  } else {
    std::cout << "validation: " << v.reason << "\n";
  }
  if (require_valid && !v.valid) throw Error("CaseSetInvalid", "case set failed validation: " + v.reason);
  return 0;
}

// --- select-pairs ----------------------------------------------------------

int run_select_pairs(const PipelineConfig& c) {
  std::vector<ContradictingPair> candidates;
  std::vector<std::string> detectors = {"ABA", "SBA"};
  if (!c.similarities.empty()) {
    candidates = candidates_from_table(read_json_file(c.similarities), &detectors);
  } else if (!c.manifest.empty()) {
    const PlagiarismDataset ds = ingest_dataset(c.manifest, LexerConfig{c.mode});
    candidates = dataset_candidates(ds, c.min_match);
  } else {
    throw Error("UsageError", "select-pairs needs --manifest or --similarities");
  }
  // Precomputed tables may carry levels outside the quota map; keep them.
  std::map<int, int> quotas = c.quotas;
  if (!c.similarities.empty()) {
    for (const ContradictingPair& p : candidates) {
      quotas.try_emplace(p.level, static_cast<int>(candidates.size()));
    }
  }
  SelectionReport report = select_survey_pairs(candidates, quotas, c.min_delta, c.alpha);
  report.detectors = detectors;

  fs::create_directories(c.out);
  write_json_file((fs::path(c.out) / "selection.json").string(), selection_to_json(report));
  write_file((fs::path(c.out) / "selection.csv").string(), selection_to_csv(report));
  write_snapshot(c.out, c);

  std::cout << "candidates " << candidates.size() << ", selected " << report.pairs.size() << "\n";
  for (const ContradictingPair& p : report.pairs) {
    std::cout << p.id << " L" << p.level << " (" << p.code_a << "," << p.code_b
              << ") delta " << fixed4(p.delta) << "\n";
  }
  for (const std::string& s : report.shortfalls) std::cout << "shortfall: " << s << "\n";
  if (report.t_test) {
    std::cout << "gate: p = " << report.t_test->p << (report.gate_passed ? " passed" : " failed") << "\n";
  } else {
    std::cout << "gate: failed (" << report.gate_reason << ")\n";
  }
  return 0;
}

// --- serve -----------------------------------------------------------------

int run_serve(const PipelineConfig& c) {
  // Route SIGINT/SIGTERM to a waiting thread instead of a handler.
  sigset_t stop_signals;
  sigemptyset(&stop_signals);
  sigaddset(&stop_signals, SIGINT);
  sigaddset(&stop_signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &stop_signals, nullptr);

  SurveyContent content = load_survey_content(
      c.cases, c.selection.empty() ? std::nullopt : std::optional<std::string>(c.selection));
  SurveyConfig sc;
  sc.store_path = c.store;
  sc.group_count = c.groups;
  sc.seed = c.seed;
  SurveyService service(std::move(content), sc);
  write_snapshot(parent_dir(fs::absolute(c.store).string()), c);

  const auto [host, port] = parse_bind(c.bind);
  SurveyServer server(service, c.admin_token);
  const int bound = server.bind(host, port);
  std::cout << "listening on http://" << host << ":" << bound << std::endl;

  std::thread waiter([&server, stop_signals] {
    int sig = 0;
    sigwait(&stop_signals, &sig);
    server.stop();
  });
  server.listen();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

// --- analyze / export ------------------------------------------------------

std::vector<ResponseRecord> load_responses(const PipelineConfig& c) {
  if (!c.responses.empty()) return responses_from_json(read_json_file(c.responses));
  if (!c.store.empty() && fs::exists(c.store)) return read_store_responses(c.store);
  return {};
}

int run_analyze(const PipelineConfig& c) {
  analysis::AnalysisInputs in;
  for (const std::string& path : c.cases) in.cases.push_back(read_case_bundle(path));
  if (!c.selection.empty()) in.selection = selection_from_json(read_json_file(c.selection));
  if (!c.coded.empty()) in.coded = analysis::coded_from_json(read_json_file(c.coded));
  in.responses = load_responses(c);
  in.lexer = LexerConfig{c.mode};
  in.min_match = c.min_match;
  if (in.cases.empty() && !in.selection && !in.coded) {
    throw Error("UsageError", "analyze needs --cases, --selection or --coded");
  }
  const analysis::EffectivenessReport report = analysis::analyze(in);

  const fs::path out(c.out);
  fs::create_directories(out);
  write_json_file((out / "report.json").string(), analysis::report_to_json(report));
  write_file((out / "per-level-correlations.csv").string(), analysis::per_level_csv(report));
  write_file((out / "preferences.csv").string(), analysis::preference_csv(report));
  write_file((out / "think-aloud.csv").string(), analysis::tally_csv(report));
  write_json_file((out / "plot-data.json").string(), analysis::plot_data(report));
  write_snapshot(c.out, c);

  if (report.aspect) {
    for (const auto& d : report.aspect->detectors) {
      std::cout << "aspect " << d.detector << ": "
                << (d.correlation.value ? fixed4(*d.correlation.value) : "Immeasurable") << "\n";
    }
  }
  if (report.empirical) {
    for (const auto& d : report.empirical->detectors) {
      std::cout << "empirical " << d.detector << ": " << fixed4(d.preference_pct) << "%\n";
    }
  }
  for (const auto& e : report.think_aloud.entries) {
    std::cout << "aspect-tally " << e.aspect << ": " << e.occurrences << " (" << e.detector << ")\n";
  }
  std::cout << "verdict: " << report.verdict.value_or("TIE") << "\n";
  return 0;
}

int run_export(const PipelineConfig& c, const std::optional<std::string>& kind,
               const std::optional<std::string>& session, const std::optional<std::string>& out) {
  std::vector<ResponseRecord> records;
  if (fs::exists(c.store)) records = read_store_responses(c.store);
  const std::optional<TaskKind> k =
      kind ? std::optional<TaskKind>(task_kind_from_string(*kind)) : std::nullopt;
  std::vector<ResponseRecord> kept;
  for (ResponseRecord& r : records) {
    if (k && r.kind != *k) continue;
    if (session && r.session_id != *session) continue;
    kept.push_back(std::move(r));
  }
  const json doc = responses_to_json(kept);
  if (out) {
    write_json_file(*out, doc);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plageval: token-based plagiarism detectors and their human-oriented evaluation"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "Pipeline config document (JSON)")->check(CLI::ExistingFile);

  auto add_common = [&f](CLI::App* cmd) {
    cmd->add_option("--mode", f.mode, "Token abstraction: category or lexeme");
    cmd->add_option("--min-match", f.min_match, "Minimum tile length");
  };

  DetectOptions det;
  auto* detect = app.add_subcommand("detect", "Similarity of source files under ABA and SBA");
  detect->add_option("files", det.files, "Two or more source files")->required();
  detect->add_flag("--json", det.json, "Machine-readable output");
  detect->add_flag("--tiles", det.tiles, "Print the tiles behind SBA");
  detect->add_flag("--tokens", det.tokens, "Print the token streams");
  detect->add_option("--threads", det.threads, "Worker threads for many files");
  add_common(detect);

  bool require_valid = false;
  auto* gen = app.add_subcommand("gen-cases", "Generate artificial case bundles from templates");
  gen->add_option("--template", f.templates, "Case template document")->check(CLI::ExistingFile);
  gen->add_option("--out", f.out, "Output directory");
  gen->add_option("--seed", f.seed, "Default swap seed");
  gen->add_option("--alpha", f.alpha, "Significance level");
  gen->add_flag("--require-valid", require_valid, "Fail when the case set is not significant");
  add_common(gen);

  auto* sel = app.add_subcommand("select-pairs", "Select contradicting plagiarism pairs");
  sel->add_option("--manifest", f.manifest, "Dataset manifest")->check(CLI::ExistingFile);
  sel->add_option("--similarities", f.similarities, "Precomputed similarity table")
      ->check(CLI::ExistingFile);
  sel->add_option("--out", f.out, "Output directory");
  sel->add_option("--min-delta", f.min_delta, "Minimum delta");
  sel->add_option("--quotas", f.quotas, "Per-level quotas, e.g. 2:5,3:9");
  sel->add_option("--alpha", f.alpha, "Significance level");
  add_common(sel);

  auto* serve = app.add_subcommand("serve", "Run the survey service");
  serve->add_option("--cases", f.cases, "Case bundle")->check(CLI::ExistingFile);
  serve->add_option("--selection", f.selection, "Selection report")->check(CLI::ExistingFile);
  serve->add_option("--store", f.store, "Response log (env PLAGEVAL_STORE)");
  serve->add_option("--bind", f.bind, "host:port, port 0 picks one (env PLAGEVAL_BIND)");
  serve->add_option("--groups", f.groups, "Respondent groups");
  serve->add_option("--admin-token", f.admin_token, "Token for /export (env PLAGEVAL_ADMIN_TOKEN)");
  serve->add_option("--seed", f.seed, "Display-order seed");

  auto* an = app.add_subcommand("analyze", "Compute the effectiveness report");
  an->add_option("--cases", f.cases, "Case bundle")->check(CLI::ExistingFile);
  an->add_option("--selection", f.selection, "Selection report")->check(CLI::ExistingFile);
  an->add_option("--responses", f.responses, "Exported response bundle");
  an->add_option("--store", f.store, "Response log, read when --responses is absent");
  an->add_option("--coded", f.coded, "Coded think-aloud descriptions")->check(CLI::ExistingFile);
  an->add_option("--out", f.out, "Output directory");
  add_common(an);

  std::optional<std::string> kind, session, out_file;
  auto* exp = app.add_subcommand("export", "Export recorded responses from a store");
  exp->add_option("--store", f.store, "Response log");
  exp->add_option("--kind", kind, "CASE_RANKING, PAIR_PREFERENCE or THINK_ALOUD");
  exp->add_option("--session", session, "Only this session");
  exp->add_option("--out", out_file, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    const PipelineConfig c = effective_config(f, serve->parsed());
    if (detect->parsed()) return run_detect(det, c);
    if (gen->parsed()) return run_gen_cases(c, require_valid);
    if (sel->parsed()) return run_select_pairs(c);
    if (serve->parsed()) return run_serve(c);
    if (an->parsed()) return run_analyze(c);
    if (exp->parsed()) return run_export(c, kind, session, out_file);
  } catch (const LexError& e) {
    print_error(e.code(), e.what(), std::pair{e.line(), e.column()});
    return 1;
  } catch (const Error& e) {
    print_error(e.code(), e.what());
    return e.code() == "UsageError" ? 2 : 1;
  } catch (const std::exception& e) {
    print_error("InternalError", e.what());
    return 1;
  }
  return 0;
}
