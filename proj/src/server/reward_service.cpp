#include "forge/server/reward_service.hpp"

#include <istream>
#include <ostream>

#include "forge/build/audit.hpp"
#include "forge/core/error.hpp"

namespace forge {

using nlohmann::json;

ScoreRequest request_from_json(const json& j) {
  ScoreRequest r;
  r.sample_id = j.at("sample_id").get<std::string>();
  r.response_text = j.at("response_text").get<std::string>();
  r.request_id = j.value("request_id", std::string{});
  return r;
}

json to_json(const ScoreRequest& r) {
  return json{{"sample_id", r.sample_id}, {"response_text", r.response_text}, {"request_id", r.request_id}};
}

json to_json(const ScoreResponse& r) {
  json j{{"request_id", r.request_id}};
  if (r.error) {
    j["error"] = {{"code", r.error->code}, {"message", r.error->message}};
    return j;
  }
  j["r_acc"] = r.reward->r_acc;
  j["r_fmt"] = r.reward->r_fmt;
  j["r"] = r.reward->r;
  if (r.canonical_gt) j["canonical_gt"] = *r.canonical_gt;
  return j;
}

ScoreResponse response_from_json(const json& j) {
  ScoreResponse r;
  r.request_id = j.value("request_id", std::string{});
  if (j.contains("error")) {
    r.error = ScoreError{j["error"].at("code").get<std::string>(), j["error"].value("message", std::string{})};
    return r;
  }
  r.reward = RewardBreakdown{j.at("r_acc").get<int>(), j.at("r_fmt").get<int>(), j.at("r").get<double>()};
  if (j.contains("canonical_gt")) r.canonical_gt = j["canonical_gt"].get<std::string>();
  return r;
}

RewardService::RewardService(const Manifest& manifest, bool echo_gt) : echo_gt_(echo_gt) {
  const AuditReport audit = fast_audit(manifest);
  if (!audit.ok()) {
    const AuditFailure& f = audit.failures.front();
    throw Error(ErrorKind::ManifestUnreadable,
                std::to_string(audit.total_failed()) + " records fail the load audit; first: " + f.id + " (" + f.check +
                    ": " + f.detail + ")");
  }
  answers_.reserve(manifest.records.size());
  for (const QASample& s : manifest.records) {
    if (!answers_.emplace(s.id, Entry{s.task, s.answer}).second) {
      throw Error(ErrorKind::ManifestUnreadable, "duplicate sample id " + s.id);
    }
    ++counts_[task_index(s.task)];
  }
}

RewardService::RewardService(RewardService&& other) noexcept
    : answers_(std::move(other.answers_)),
      counts_(other.counts_),
      echo_gt_(other.echo_gt_),
      served_(other.served_.load()),
      unknown_(other.unknown_.load()) {}

RewardService RewardService::load(const std::filesystem::path& manifest_path, bool echo_gt) {
  return RewardService(read_manifest(manifest_path), echo_gt);
}

ScoreResponse RewardService::score(const ScoreRequest& request) const {
  served_.fetch_add(1, std::memory_order_relaxed);
  ScoreResponse out;
  out.request_id = request.request_id;
  const auto it = answers_.find(request.sample_id);
  if (it == answers_.end()) {
    unknown_.fetch_add(1, std::memory_order_relaxed);
    out.error = ScoreError{"UnknownSample", "no sample with id '" + request.sample_id + "'"};
    return out;
  }
  out.reward = forge::score(it->second.task, it->second.answer, request.response_text);
  if (echo_gt_) out.canonical_gt = it->second.answer.canonical();
  return out;
}

std::vector<ScoreResponse> RewardService::score_batch(const std::vector<ScoreRequest>& requests) const {
  std::vector<ScoreResponse> out;
  out.reserve(requests.size());
  for (const auto& r : requests) out.push_back(score(r));
  return out;
}

namespace {

json bad_request(const std::string& message, const json& body = {}) {
  ScoreResponse r;
  if (body.is_object() && body.contains("request_id") && body["request_id"].is_string()) {
    r.request_id = body["request_id"].get<std::string>();
  }
  r.error = ScoreError{"BadRequest", message};
  return to_json(r);
}

}  // namespace

json RewardService::handle(const json& body) const {
  if (body.is_object() && body.contains("requests")) {
    if (!body["requests"].is_array()) return bad_request("'requests' must be an array");
    json responses = json::array();
    for (const json& item : body["requests"]) {
      try {
        responses.push_back(to_json(score(request_from_json(item))));
      } catch (const json::exception& e) {
        responses.push_back(bad_request(e.what(), item));
      }
    }
    return json{{"responses", responses}};
  }
  try {
    return to_json(score(request_from_json(body)));
  } catch (const json::exception& e) {
    return bad_request(e.what(), body);
  }
}

std::string RewardService::handle_line(const std::string& line) const {
  json body;
  try {
    body = json::parse(line);
  } catch (const json::exception& e) {
    return bad_request(std::string("malformed JSON: ") + e.what()).dump();
  }
  return handle(body).dump();
}

json RewardService::stats() const {
  json per_task = json::object();
  for (TaskKind t : kAllTasks) per_task[std::string(to_string(t))] = counts_[task_index(t)];
  return json{{"samples", answers_.size()},
              {"per_task", per_task},
              {"requests_served", served_.load(std::memory_order_relaxed)},
              {"unknown_sample_errors", unknown_.load(std::memory_order_relaxed)},
              {"echo_gt", echo_gt_}};
}

void serve_stdio(const RewardService& service, std::istream& in, std::ostream& out) {
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << service.handle_line(line) << '\n' << std::flush;
  }
}

}  // namespace forge
