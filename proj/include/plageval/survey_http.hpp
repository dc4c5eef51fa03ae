#pragma once

#include <memory>
#include <string>

#include "plageval/survey.hpp"

namespace plageval {

/// JSON over HTTP front end of a SurveyService.
///
///   POST /sessions                  {"schema": "plageval.api/1", "respondentLabel": "..."}
///   GET  /sessions/{id}/next
///   POST /sessions/{id}/responses   {"schema": "plageval.api/1", "taskId": "...", "answer": {...}}
///   GET  /export?kind=&session=     requires header X-Admin-Token
///
/// Errors come back as {"schema": ..., "error": {"code": ..., "message": ...}}.
class SurveyServer {
 public:
  SurveyServer(SurveyService& service, std::string admin_token);
  ~SurveyServer();

  /// Binds the listening socket; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Call bind() first.
  void listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

inline constexpr const char* kApiSchema = "plageval.api/1";
inline constexpr const char* kAdminTokenHeader = "X-Admin-Token";

}  // namespace plageval
