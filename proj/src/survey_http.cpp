#include "plageval/survey_http.hpp"

#include <httplib.h>

#include "plageval/error.hpp"

namespace plageval {

namespace {

using nlohmann::json;

int status_for(const std::string& code) {
  if (code == "UnknownSession" || code == "UnknownTask") return 404;
  if (code == "DuplicateSubmission") return 409;
  if (code == "StoreUnavailable") return 503;
  if (code == "Unauthorized") return 401;
  return 400;
}

void send(httplib::Response& res, int status, json body) {
  body["schema"] = kApiSchema;
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const std::string& code, const std::string& message) {
  send(res, status_for(code), {{"error", {{"code", code}, {"message", message}}}});
}

json parse_body(const httplib::Request& req) {
  json body;
  try {
    body = req.body.empty() ? json::object() : json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw Error("InvalidRequest", std::string("body is not JSON: ") + e.what());
  }
  if (!body.is_object()) throw Error("InvalidRequest", "body must be a JSON object");
  if (body.contains("schema") && body["schema"] != kApiSchema) {
    throw Error("UnsupportedSchema", "expected schema " + std::string(kApiSchema));
  }
  return body;
}

json session_json(const Session& s) {
  return {{"id", s.id},
          {"respondentLabel", s.respondent_label},
          {"group", s.group},
          {"createdAt", s.created_at}};
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      send_error(res, e.code(), e.what());
    } catch (const std::exception& e) {
      send_error(res, "InternalError", e.what());
    }
  };
}

}  // namespace

struct SurveyServer::Impl {
  Impl(SurveyService& s, std::string token) : service(s), admin_token(std::move(token)) {}
  SurveyService& service;
  std::string admin_token;
  httplib::Server server;
};

SurveyServer::SurveyServer(SurveyService& service, std::string admin_token)
    : impl_(std::make_unique<Impl>(service, std::move(admin_token))) {
  httplib::Server& srv = impl_->server;
  SurveyService& svc = impl_->service;

  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Headers",
                            std::string("Content-Type, ") + kAdminTokenHeader}});
  srv.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  srv.Post("/sessions", guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             const json body = parse_body(req);
             const std::string label = body.value("respondentLabel", std::string{});
             send(res, 201, {{"session", session_json(svc.create_session(label))}});
           }));

  srv.Get(R"(/sessions/([^/]+)/next)",
          guarded([&svc](const httplib::Request& req, httplib::Response& res) {
            const auto task = svc.next_task(req.matches[1]);
            if (!task) {
              send(res, 200, {{"done", true}});
            } else {
              send(res, 200, {{"done", false}, {"task", task->view}});
            }
          }));

  srv.Post(R"(/sessions/([^/]+)/responses)",
           guarded([&svc](const httplib::Request& req, httplib::Response& res) {
             const json body = parse_body(req);
             if (!body.contains("taskId") || !body["taskId"].is_string()) {
               throw Error("InvalidRequest", "missing taskId");
             }
             const ResponseRecord r = svc.submit_response(
                 req.matches[1], body["taskId"].get<std::string>(),
                 body.value("answer", json::object()));
             send(res, 201, {{"accepted", true},
                             {"taskId", r.task_id},
                             {"submittedAt", r.submitted_at}});
           }));

  srv.Get("/export", guarded([this, &svc](const httplib::Request& req, httplib::Response& res) {
            if (impl_->admin_token.empty() ||
                req.get_header_value(kAdminTokenHeader) != impl_->admin_token) {
              throw Error("Unauthorized", "export requires a valid admin token");
            }
            std::optional<TaskKind> kind;
            std::optional<std::string> session;
            if (req.has_param("kind")) kind = task_kind_from_string(req.get_param_value("kind"));
            if (req.has_param("session")) session = req.get_param_value("session");
            json doc = responses_to_json(svc.export_responses(kind, session));
            res.status = 200;
            res.set_content(doc.dump(), "application/json");
          }));

  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"ok", true}});
  });
}

SurveyServer::~SurveyServer() { stop(); }

int SurveyServer::bind(const std::string& host, int port) {
  httplib::Server& srv = impl_->server;
  if (port == 0) {
    const int p = srv.bind_to_any_port(host);
    if (p < 0) throw Error("BindFailed", "cannot bind " + host);
    return p;
  }
  if (!srv.bind_to_port(host, port)) {
    throw Error("BindFailed", "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void SurveyServer::listen() { impl_->server.listen_after_bind(); }

void SurveyServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void SurveyServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace plageval
