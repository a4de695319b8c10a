/// @file http_api.cc

#include "atgen/http_api.h"

#include <httplib.h>

#include "atgen/error.h"

namespace atgen {

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& msg) {
  send_json(res, status, {{"error", msg}});
}

}  // namespace

ReviewServer::ReviewServer(Bundle bundle)
    : bundle_(std::move(bundle)), server_(std::make_unique<httplib::Server>()) {
  for (const FearedEventDecl& fe : bundle_.study->data().feared_events) {
    const auto prior = bundle_.paths.output / (fe.id + ".tree.json");
    if (std::filesystem::exists(prior)) {
      AttackDag old = load_tree(prior);
      trees_.emplace(fe.id, run_generation(bundle_, fe.id, old.config(), &old));
    } else {
      trees_.emplace(fe.id, run_generation(bundle_, fe.id, bundle_.config));
    }
  }
  Routes();
}

ReviewServer::~ReviewServer() { stop(); }

bool ReviewServer::listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int ReviewServer::bind_any_port(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool ReviewServer::listen_after_bind() { return server_->listen_after_bind(); }

void ReviewServer::stop() {
  if (server_) server_->stop();
}

void ReviewServer::wait_until_ready() const { server_->wait_until_ready(); }

json ReviewServer::TreeView(const Outcome& outcome) const {
  json view = tree_to_json(outcome.dag);
  AnnotatedView merged = merge_annotations(outcome.dag, bundle_.overlay);
  for (json& node : view["nodes"]) {
    if (const Annotation* a = merged.annotation(node["path"].get<std::string>())) {
      json note = {{"decision", to_string(a->decision)}, {"comment", a->comment}};
      if (a->color) note["color"] = *a->color;
      node["annotation"] = note;
    }
  }
  view["orphaned_annotations"] = merged.orphans;
  return view;
}

void ReviewServer::Routes() {
  server_->Get(R"(/tree/([^/]+))", [this](const httplib::Request& req,
                                          httplib::Response& res) {
    std::shared_lock lock(state_mu_);
    auto it = trees_.find(req.matches[1]);
    if (it == trees_.end()) return send_error(res, 404, "unknown feared event");
    send_json(res, 200, TreeView(it->second));
  });

  server_->Get(R"(/report/([^/]+))", [this](const httplib::Request& req,
                                            httplib::Response& res) {
    std::shared_lock lock(state_mu_);
    auto it = trees_.find(req.matches[1]);
    if (it == trees_.end()) return send_error(res, 404, "unknown feared event");
    send_json(res, 200, report_to_json(it->second.report));
  });

  server_->Put(R"(/annotation/(.+))", [this](const httplib::Request& req,
                                             httplib::Response& res) {
    std::unique_lock writer(write_mu_, std::try_to_lock);
    if (!writer.owns_lock())
      return send_error(res, 409, "another write is in progress");
    const std::string path = req.matches[1];

    Annotation note;
    try {
      json body = json::parse(req.body);
      if (!body.is_object() || !body.contains("decision") ||
          !body["decision"].is_string())
        return send_error(res, 400, "body must be an object with a decision");
      auto d = decision_from(body["decision"].get<std::string>());
      if (!d) return send_error(res, 400, "decision must be open, closed or developed");
      note.decision = *d;
      if (body.contains("comment")) {
        if (!body["comment"].is_string())
          return send_error(res, 400, "comment must be a string");
        note.comment = body["comment"];
      }
      if (body.contains("color") && !body["color"].is_null()) {
        if (!body["color"].is_string())
          return send_error(res, 400, "color must be a string");
        note.color = body["color"].get<std::string>();
      }
    } catch (const json::exception& e) {
      return send_error(res, 400, std::string("malformed body: ") + e.what());
    }

    Overlay updated;
    {
      std::shared_lock lock(state_mu_);
      bool known = false;
      for (const auto& [fe, outcome] : trees_)
        if (outcome.dag.find(path)) known = true;
      if (!known) return send_error(res, 404, "unknown node path");
      updated = bundle_.overlay;
    }
    updated[path] = note;
    try {
      save_overlay(bundle_.paths.overlay, updated);
    } catch (const Error& e) {
      return send_error(res, 500, e.what());
    }
    {
      std::unique_lock lock(state_mu_);
      bundle_.overlay = std::move(updated);
    }
    send_json(res, 200, {{"path", path}, {"decision", to_string(note.decision)}});
  });

  server_->Post("/regenerate", [this](const httplib::Request&,
                                      httplib::Response& res) {
    std::unique_lock writer(write_mu_, std::try_to_lock);
    if (!writer.owns_lock())
      return send_error(res, 409, "another write is in progress");
    Bundle next;
    std::map<std::string, Outcome> fresh;
    try {
      std::shared_lock lock(state_mu_);
      next = bundle_;
      next.model = load_model(next.paths.architecture);
      next.warnings = cross_validate(*next.model, *next.study, *next.kb);
      for (const auto& [fe, outcome] : trees_)
        fresh.emplace(fe, run_generation(next, fe, outcome.dag.config(),
                                         &outcome.dag));
    } catch (const Error& e) {
      return send_error(res, 422, e.what());
    }
    json reports = json::object();
    for (const auto& [fe, outcome] : fresh) {
      write_outputs(next.paths.output, outcome, next.overlay);
      reports[fe] = report_to_json(outcome.report);
    }
    {
      std::unique_lock lock(state_mu_);
      bundle_ = std::move(next);
      trees_ = std::move(fresh);
    }
    send_json(res, 200, {{"reports", reports}});
  });
}

}  // namespace atgen
