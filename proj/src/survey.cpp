#include "plageval/survey.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <ctime>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "plageval/error.hpp"
#include "plageval/io.hpp"
#include "plageval/stats.hpp"
#include "random.hpp"

namespace plageval {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr std::string_view kLogSchema = "plageval.log/1";
constexpr std::string_view kResponsesSchema = "plageval.responses/1";
constexpr std::string_view kThinkAloudTask = "think-aloud";

std::string case_task_id(const ArtificialCase& c) { return "case:" + c.name; }
std::string pair_task_id(const ContradictingPair& p) { return "pair:" + p.id; }

std::string utc_now() {
  using namespace std::chrono;
  const auto t = system_clock::now();
  const std::time_t secs = system_clock::to_time_t(t);
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%S") << '.' << std::setw(3) << std::setfill('0')
      << ms << 'Z';
  return out.str();
}

std::string store_error(const std::string& what, const std::string& path) {
  return what + " " + path + ": " + std::strerror(errno);
}

std::string label(std::size_t k) { return "Code " + std::to_string(k + 1); }

}  // namespace

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::CaseRanking: return "CASE_RANKING";
    case TaskKind::PairPreference: return "PAIR_PREFERENCE";
    case TaskKind::ThinkAloud: return "THINK_ALOUD";
  }
  return "?";
}

TaskKind task_kind_from_string(std::string_view name) {
  for (TaskKind k : {TaskKind::CaseRanking, TaskKind::PairPreference, TaskKind::ThinkAloud}) {
    if (to_string(k) == name) return k;
  }
  throw Error("InvalidDocument", "unknown task kind: " + std::string(name));
}

json record_to_json(const ResponseRecord& r) {
  return {{"sessionId", r.session_id},
          {"taskId", r.task_id},
          {"kind", to_string(r.kind)},
          {"payload", r.payload},
          {"submittedAt", r.submitted_at}};
}

ResponseRecord record_from_json(const json& j) {
  try {
    return {j.at("sessionId").get<std::string>(), j.at("taskId").get<std::string>(),
            task_kind_from_string(j.at("kind").get<std::string>()), j.at("payload"),
            j.value("submittedAt", std::string{})};
  } catch (const json::exception& e) {
    throw Error("InvalidDocument", std::string("malformed response record: ") + e.what());
  }
}

json responses_to_json(const std::vector<ResponseRecord>& records) {
  json list = json::array();
  for (const ResponseRecord& r : records) list.push_back(record_to_json(r));
  return {{"schema", kResponsesSchema}, {"records", std::move(list)}};
}

std::vector<ResponseRecord> responses_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("schema", std::string{}) != kResponsesSchema ||
      !doc.contains("records") || !doc.at("records").is_array()) {
    throw Error("InvalidDocument", "not a response bundle");
  }
  std::vector<ResponseRecord> out;
  for (const json& r : doc.at("records")) out.push_back(record_from_json(r));
  return out;
}

SurveyContent load_survey_content(const std::vector<std::string>& case_bundles,
                                  const std::optional<std::string>& selection_report) {
  SurveyContent content;
  for (const std::string& path : case_bundles) content.cases.push_back(read_case_bundle(path));
  if (selection_report) {
    content.pairs = selection_from_json(read_json_file(*selection_report)).pairs;
    for (const ContradictingPair& p : content.pairs) {
      for (const std::string* path : {&p.original_path, &p.path_a, &p.path_b}) {
        if (!path->empty() && !content.sources.contains(*path)) {
          content.sources[*path] = read_file(*path);
        }
      }
    }
  }
  return content;
}

// ---------------------------------------------------------------------------

RecordLog::RecordLog(std::string path) : path_(std::move(path)) {
  const fs::path p(path_);
  if (p.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
  }
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("StoreUnavailable", store_error("cannot open", path_));

  std::string text;
  try {
    text = read_file(path_);
  } catch (const Error&) {
    throw Error("StoreUnavailable", "cannot read " + path_);
  }
  std::size_t start = 0;
  std::size_t keep = 0;  // bytes of the log that hold complete entries
  std::size_t line_no = 0;
  while (start < text.size()) {
    const std::size_t nl = text.find('\n', start);
    ++line_no;
    if (nl == std::string::npos) {
      torn_ = true;  // unterminated tail: the write never completed
      break;
    }
    const std::string_view line(text.data() + start, nl - start);
    if (!line.empty()) {
      try {
        entries_.push_back(json::parse(line));
      } catch (const json::parse_error&) {
        if (nl + 1 < text.size()) {
          throw Error("StoreUnavailable",
                      path_ + ": corrupt record on line " + std::to_string(line_no));
        }
        torn_ = true;
        break;
      }
    }
    start = nl + 1;
    keep = start;
  }
  if (torn_) {
    if (::ftruncate(fd_, static_cast<off_t>(keep)) != 0 || ::fsync(fd_) != 0) {
      throw Error("StoreUnavailable", store_error("cannot repair", path_));
    }
  }
}

RecordLog::~RecordLog() {
  if (fd_ >= 0) ::close(fd_);
}

void RecordLog::append(const json& entry) {
  const std::string line = entry.dump() + "\n";
  std::size_t done = 0;
  while (done < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + done, line.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error("StoreUnavailable", store_error("cannot append to", path_));
    }
    done += static_cast<std::size_t>(n);
  }
  if (::fsync(fd_) != 0) throw Error("StoreUnavailable", store_error("cannot sync", path_));
  entries_.push_back(entry);
}

std::vector<ResponseRecord> read_store_responses(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error&) {
    throw Error("StoreUnavailable", "cannot read " + path);
  }
  std::vector<ResponseRecord> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t consumed = 0;
  while (std::getline(in, line)) {
    ++line_no;
    consumed += line.size() + 1;
    if (consumed > text.size()) break;  // unterminated tail
    if (line.empty()) continue;
    json entry;
    try {
      entry = json::parse(line);
    } catch (const json::parse_error&) {
      if (consumed == text.size()) break;
      throw Error("StoreUnavailable", path + ": corrupt record on line " + std::to_string(line_no));
    }
    if (entry.value("type", std::string{}) == "response") {
      out.push_back(record_from_json(entry.at("record")));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> pairs_for_group(std::size_t pair_count, int group, int group_count) {
  std::vector<std::size_t> out;
  for (std::size_t i = static_cast<std::size_t>(group); i < pair_count;
       i += static_cast<std::size_t>(group_count)) {
    out.push_back(i);
  }
  return out;
}

SurveyService::SurveyService(SurveyContent content, SurveyConfig config)
    : content_(std::move(content)), config_(std::move(config)) {
  if (config_.group_count < 1) {
    throw Error("InvalidGroupCount", "group count must be at least 1");
  }
  for (std::size_t i = 0; i < content_.cases.size(); ++i) {
    if (!case_index_.emplace(case_task_id(content_.cases[i]), i).second) {
      throw Error("InvalidDocument", "duplicate case name " + content_.cases[i].name);
    }
  }
  for (std::size_t i = 0; i < content_.pairs.size(); ++i) {
    if (!pair_index_.emplace(pair_task_id(content_.pairs[i]), i).second) {
      throw Error("InvalidDocument", "duplicate pair id " + content_.pairs[i].id);
    }
  }
  log_ = std::make_unique<RecordLog>(config_.store_path);
  for (const json& entry : log_->entries()) apply(entry);
}

void SurveyService::apply(const json& entry) {
  try {
    const std::string type = entry.at("type").get<std::string>();
    if (type == "session") {
      const json& s = entry.at("session");
      SessionState st;
      st.session = {s.at("id").get<std::string>(), s.at("respondentLabel").get<std::string>(),
                    s.at("group").get<int>(), s.at("createdAt").get<std::string>(),
                    s.at("seed").get<std::uint64_t>()};
      session_order_.push_back(st.session.id);
      sessions_.emplace(st.session.id, std::move(st));
    } else if (type == "response") {
      ResponseRecord r = record_from_json(entry.at("record"));
      sessions_.at(r.session_id).answered.insert(r.task_id);
      records_.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    throw Error("StoreUnavailable", log_->path() + ": unreadable record: " + e.what());
  }
}

std::string SurveyService::now() const { return config_.clock ? config_.clock() : utc_now(); }

Session SurveyService::create_session(const std::string& respondent_label) {
  std::unique_lock lock(mutex_);
  static thread_local std::random_device entropy;
  Session s;
  do {
    const std::uint64_t bits = (std::uint64_t{entropy()} << 32) ^ entropy() ^
                               detail::hash_string(std::to_string(session_order_.size()));
    std::ostringstream id;
    id << "s-" << std::hex << std::setw(16) << std::setfill('0') << bits;
    s.id = id.str();
  } while (sessions_.contains(s.id));
  s.respondent_label = respondent_label;
  s.group = static_cast<int>(session_order_.size() % static_cast<std::size_t>(config_.group_count));
  s.created_at = now();
  s.seed = detail::mix_seed(config_.seed, detail::hash_string(s.id));

  const json entry = {{"schema", kLogSchema},
                      {"type", "session"},
                      {"session",
                       {{"id", s.id},
                        {"respondentLabel", s.respondent_label},
                        {"group", s.group},
                        {"createdAt", s.created_at},
                        {"seed", s.seed}}}};
  log_->append(entry);
  apply(entry);
  return s;
}

const SurveyService::SessionState& SurveyService::state_of(const std::string& session_id) const {
  const auto it = sessions_.find(session_id);
  if (it == sessions_.end()) throw Error("UnknownSession", "no session " + session_id);
  return it->second;
}

std::vector<std::string> SurveyService::tasks_for(const Session& s) const {
  std::vector<std::string> ids;
  for (const ArtificialCase& c : content_.cases) ids.push_back(case_task_id(c));
  for (std::size_t i : pairs_for_group(content_.pairs.size(), s.group, config_.group_count)) {
    ids.push_back(pair_task_id(content_.pairs[i]));
  }
  ids.emplace_back(kThinkAloudTask);
  return ids;
}

std::vector<std::string> SurveyService::task_ids(const std::string& session_id) const {
  std::shared_lock lock(mutex_);
  return tasks_for(state_of(session_id).session);
}

std::vector<std::size_t> SurveyService::display_order(const Session& s, const std::string& task_id,
                                                      std::size_t n) const {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  detail::SeededRandom rng(detail::mix_seed(s.seed, detail::hash_string(task_id)));
  rng.shuffle(order);
  return order;
}

SurveyTask SurveyService::build_task(const Session& s, const std::string& task_id,
                                     std::size_t index, std::size_t total) const {
  SurveyTask t;
  t.id = task_id;
  json items = json::array();
  json view = {{"taskId", task_id}, {"progress", {{"index", index + 1}, {"total", total}}}};
  if (const auto c = case_index_.find(task_id); c != case_index_.end()) {
    const ArtificialCase& ac = content_.cases[c->second];
    t.kind = TaskKind::CaseRanking;
    view["instruction"] =
        "Rank the codes by how similar each is to the original (1 = most similar). "
        "Equal codes may share a rank.";
    view["original"] = ac.original;
    const auto order = display_order(s, task_id, ac.variants.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
      items.push_back({{"label", label(k)}, {"source", ac.variants[order[k]].source}});
    }
  } else if (const auto p = pair_index_.find(task_id); p != pair_index_.end()) {
    const ContradictingPair& cp = content_.pairs[p->second];
    t.kind = TaskKind::PairPreference;
    view["instruction"] = "Choose the code that looks more similar to the original.";
    auto source = [&](const std::string& path) {
      const auto it = content_.sources.find(path);
      return it == content_.sources.end() ? std::string{} : it->second;
    };
    view["original"] = source(cp.original_path);
    const std::string paths[2] = {cp.path_a, cp.path_b};
    const auto order = display_order(s, task_id, 2);
    for (std::size_t k = 0; k < 2; ++k) {
      items.push_back({{"label", label(k)}, {"source", source(paths[order[k]])}});
    }
  } else {
    t.kind = TaskKind::ThinkAloud;
    view["instruction"] = content_.think_aloud_prompt;
  }
  view["kind"] = to_string(t.kind);
  if (t.kind != TaskKind::ThinkAloud) view["items"] = std::move(items);
  t.view = std::move(view);
  return t;
}

std::optional<SurveyTask> SurveyService::next_task(const std::string& session_id) const {
  std::shared_lock lock(mutex_);
  const SessionState& st = state_of(session_id);
  const auto ids = tasks_for(st.session);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!st.answered.contains(ids[i])) return build_task(st.session, ids[i], i, ids.size());
  }
  return std::nullopt;
}

ResponseRecord SurveyService::submit_response(const std::string& session_id,
                                              const std::string& task_id, const json& answer) {
  std::unique_lock lock(mutex_);
  const SessionState& st = state_of(session_id);
  const auto ids = tasks_for(st.session);
  const auto pos = std::find(ids.begin(), ids.end(), task_id);
  if (pos == ids.end()) {
    throw Error("UnknownTask", "task " + task_id + " is not assigned to session " + session_id);
  }
  if (st.answered.contains(task_id)) {
    throw Error("DuplicateSubmission", "task " + task_id + " was already answered");
  }
  // Tasks are dispensed strictly in order, so only the first open one is out.
  const auto first_open = std::find_if(ids.begin(), ids.end(), [&](const std::string& id) {
    return !st.answered.contains(id);
  });
  if (pos != first_open) {
    throw Error("UnknownTask", "task " + task_id + " has not been dispensed yet");
  }

  ResponseRecord r;
  r.session_id = session_id;
  r.task_id = task_id;
  if (const auto c = case_index_.find(task_id); c != case_index_.end()) {
    const ArtificialCase& ac = content_.cases[c->second];
    r.kind = TaskKind::CaseRanking;
    const std::size_t n = ac.variants.size();
    std::vector<double> shown;
    try {
      shown = answer.at("ranks").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw Error("InvalidRanking", "expected \"ranks\": a list of numbers");
    }
    if (shown.size() != n || !stats::is_competition_ranking(shown)) {
      throw Error("InvalidRanking", "ranks must be a competition ranking over all " +
                                        std::to_string(n) + " codes");
    }
    const auto order = display_order(st.session, task_id, n);
    std::vector<double> ranks(n);
    std::vector<std::string> variant_ids;
    for (std::size_t k = 0; k < n; ++k) ranks[order[k]] = shown[k];
    for (const Variant& v : ac.variants) variant_ids.push_back(v.id);
    r.payload = {{"variants", variant_ids}, {"ranks", ranks}};
  } else if (const auto p = pair_index_.find(task_id); p != pair_index_.end()) {
    const ContradictingPair& cp = content_.pairs[p->second];
    r.kind = TaskKind::PairPreference;
    const std::string members[2] = {cp.code_a, cp.code_b};
    const auto order = display_order(st.session, task_id, 2);
    const std::string choice = answer.contains("choice") && answer["choice"].is_string()
                                   ? answer["choice"].get<std::string>()
                                   : std::string{};
    std::optional<std::size_t> picked;
    for (std::size_t k = 0; k < 2; ++k) {
      if (choice == label(k)) picked = order[k];
    }
    if (!picked) {
      throw Error("InvalidPreference", "choice must be \"" + label(0) + "\" or \"" + label(1) + "\"");
    }
    r.payload = {{"preferred", members[*picked]}, {"other", members[1 - *picked]}};
  } else {
    r.kind = TaskKind::ThinkAloud;
    if (!answer.contains("text") || !answer["text"].is_string() ||
        answer["text"].get<std::string>().empty()) {
      throw Error("InvalidResponse", "expected non-empty \"text\"");
    }
    r.payload = {{"text", answer["text"]}};
  }
  r.submitted_at = now();

  const json entry = {{"schema", kLogSchema}, {"type", "response"}, {"record", record_to_json(r)}};
  log_->append(entry);
  apply(entry);
  return r;
}

std::vector<ResponseRecord> SurveyService::export_responses(
    std::optional<TaskKind> kind, std::optional<std::string> session_id) const {
  std::shared_lock lock(mutex_);
  std::vector<ResponseRecord> out;
  for (const ResponseRecord& r : records_) {
    if (kind && r.kind != *kind) continue;
    if (session_id && r.session_id != *session_id) continue;
    out.push_back(r);
  }
  return out;
}

std::vector<Session> SurveyService::sessions() const {
  std::shared_lock lock(mutex_);
  std::vector<Session> out;
  for (const std::string& id : session_order_) out.push_back(sessions_.at(id).session);
  return out;
}

}  // namespace plageval
