#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "plageval/casegen.hpp"
#include "plageval/pairsel.hpp"

namespace plageval {

enum class TaskKind : std::uint8_t { CaseRanking, PairPreference, ThinkAloud };

std::string_view to_string(TaskKind kind);
TaskKind task_kind_from_string(std::string_view name);

struct Session {
  std::string id;
  std::string respondent_label;
  int group = 0;
  std::string created_at;
  std::uint64_t seed = 0;  // drives the per-task display order
};

/// Stored payloads, in canonical (not display) order:
///   CASE_RANKING     {"variants": [ids...], "ranks": [r...]}
///   PAIR_PREFERENCE  {"preferred": member, "other": member}
///   THINK_ALOUD      {"text": "..."}
struct ResponseRecord {
  std::string session_id;
  std::string task_id;
  TaskKind kind = TaskKind::CaseRanking;
  nlohmann::json payload;
  std::string submitted_at;
};

nlohmann::json record_to_json(const ResponseRecord& r);
ResponseRecord record_from_json(const nlohmann::json& j);

/// Response bundle document ("plageval.responses/1").
nlohmann::json responses_to_json(const std::vector<ResponseRecord>& records);
std::vector<ResponseRecord> responses_from_json(const nlohmann::json& doc);

/// A dispensed task as shown to a respondent: neutral labels, no detector
/// names, no similarity values.
struct SurveyTask {
  std::string id;
  TaskKind kind = TaskKind::CaseRanking;
  nlohmann::json view;
};

struct SurveyContent {
  std::vector<ArtificialCase> cases;
  std::vector<ContradictingPair> pairs;
  std::map<std::string, std::string> sources;  // path -> text for pair codes
  std::string think_aloud_prompt =
      "Describe which aspects of the code you considered when judging whether "
      "two programs are plagiarized.";
};

/// Reads case bundles and a selection report and loads the source text of
/// every referenced pair code. Pairs without paths get empty sources.
SurveyContent load_survey_content(const std::vector<std::string>& case_bundles,
                                  const std::optional<std::string>& selection_report);

/// Append-only record log, one JSON document per line. Every append is
/// fsync'd before it returns. Opening replays the log; an incomplete last
/// line (torn write) is cut off.
class RecordLog {
 public:
  explicit RecordLog(std::string path);
  ~RecordLog();
  RecordLog(const RecordLog&) = delete;
  RecordLog& operator=(const RecordLog&) = delete;

  const std::vector<nlohmann::json>& entries() const { return entries_; }
  void append(const nlohmann::json& entry);
  const std::string& path() const { return path_; }
  bool recovered_torn_tail() const { return torn_; }

 private:
  std::string path_;
  int fd_ = -1;
  std::vector<nlohmann::json> entries_;
  bool torn_ = false;
};

/// Responses recorded in a store, read without opening it for writing. A torn
/// last line is ignored.
std::vector<ResponseRecord> read_store_responses(const std::string& path);

struct SurveyConfig {
  std::string store_path;
  int group_count = 3;
  std::uint64_t seed = kDefaultCaseSeed;
  std::function<std::string()> clock;  // ISO-8601 timestamps; UTC now if empty
};

/// Pair indices assigned to `group`: pair i goes to group i % group_count.
std::vector<std::size_t> pairs_for_group(std::size_t pair_count, int group, int group_count);

/// Survey session management and response collection over a RecordLog.
/// Thread-safe: writers are serialized, readers share a lock.
///
/// Errors (Error::code): "InvalidGroupCount", "UnknownSession",
/// "UnknownTask", "DuplicateSubmission", "InvalidRanking",
/// "InvalidPreference", "InvalidResponse", "StoreUnavailable".
class SurveyService {
 public:
  SurveyService(SurveyContent content, SurveyConfig config);

  Session create_session(const std::string& respondent_label);

  /// The session's first unanswered task, or nullopt when all are done.
  std::optional<SurveyTask> next_task(const std::string& session_id) const;

  /// `answer` is what the respondent submitted against the task view:
  ///   CASE_RANKING     {"ranks": [r for each displayed item]}
  ///   PAIR_PREFERENCE  {"choice": "<label of a displayed item>"}
  ///   THINK_ALOUD      {"text": "..."}
  /// Only the task currently dispensed (or an earlier one) may be answered.
  ResponseRecord submit_response(const std::string& session_id, const std::string& task_id,
                                 const nlohmann::json& answer);

  std::vector<ResponseRecord> export_responses(
      std::optional<TaskKind> kind = std::nullopt,
      std::optional<std::string> session_id = std::nullopt) const;

  std::vector<Session> sessions() const;
  /// Task ids of a session in dispensing order.
  std::vector<std::string> task_ids(const std::string& session_id) const;
  const SurveyContent& content() const { return content_; }
  int group_count() const { return config_.group_count; }

 private:
  struct SessionState {
    Session session;
    std::set<std::string> answered;
  };

  std::vector<std::string> tasks_for(const Session& s) const;
  std::vector<std::size_t> display_order(const Session& s, const std::string& task_id,
                                         std::size_t n) const;
  SurveyTask build_task(const Session& s, const std::string& task_id, std::size_t index,
                        std::size_t total) const;
  const SessionState& state_of(const std::string& session_id) const;
  void apply(const nlohmann::json& entry);
  std::string now() const;

  SurveyContent content_;
  SurveyConfig config_;
  std::map<std::string, std::size_t> case_index_;
  std::map<std::string, std::size_t> pair_index_;
  std::unique_ptr<RecordLog> log_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, SessionState> sessions_;
  std::vector<std::string> session_order_;
  std::vector<ResponseRecord> records_;
};

}  // namespace plageval
