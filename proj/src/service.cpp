// Copyright 2026 The encon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "encon/service.hpp"

#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>
#include <utility>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "encon/con_format.hpp"
#include "encon/types.hpp"

namespace encon {

namespace {

using nlohmann::ordered_json;

std::string error_body(const std::string& code, const std::string& message) {
  ordered_json j;
  j["error"] = code;
  j["message"] = message;
  return j.dump(2) + "\n";
}

void fail(httplib::Response& res, int status, const std::string& code,
          const std::string& message) {
  res.status = status;
  res.set_content(error_body(code, message), "application/json");
}

}  // namespace

std::string annotate_response_json(const PipelineResult& result,
                                   const Document& doc) {
  ordered_json j;
  j["doc_id"] = doc.id();
  j["threshold"] = result.threshold;
  j["annotations"] = ordered_json::array();
  for (const Annotation& a : result.combined.to_vector()) {
    ordered_json item;
    item["start_line"] = a.span.start_line;
    item["start_token"] = a.span.start_token;
    item["end_line"] = a.span.end_line;
    item["end_token"] = a.span.end_token;
    item["type"] = to_string(a.type);
    item["text"] = a.text;
    VoteKey key = vote_key(a);
    auto it = result.tally.votes().find(key);
    if (it != result.tally.votes().end()) {
      item["votes"] = it->second.size();
      item["sources"] = ordered_json::array();
      for (const std::string& source : it->second) {
        item["sources"].push_back(source);
      }
    } else {
      item["votes"] = 0;
      item["sources"] = ordered_json::array();
    }
    j["annotations"].push_back(std::move(item));
  }
  j["failures"] = ordered_json::array();
  for (const AnnotatorFailure& f : result.failures) {
    ordered_json item;
    item["annotator"] = f.id;
    item["message"] = f.message;
    j["failures"].push_back(std::move(item));
  }
  return j.dump(2) + "\n";
}

struct AnnotationService::Impl {
  httplib::Server server;
  std::thread worker;
  std::atomic<bool> running{false};
};

AnnotationService::AnnotationService(ServiceSettings settings,
                                     Pipeline pipeline)
    : impl_(std::make_unique<Impl>()),
      settings_(std::move(settings)),
      pipeline_(std::move(pipeline)) {
  httplib::Server& server = impl_->server;
  server.set_payload_max_length(settings_.max_body_bytes + 1);
  const int timeout_sec =
      static_cast<int>((settings_.request_timeout.count() + 999) / 1000);
  server.set_read_timeout(timeout_sec, 0);
  server.set_write_timeout(timeout_sec, 0);

  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("ok\n", "text/plain");
  });

  server.Get("/annotators",
             [this](const httplib::Request&, httplib::Response& res) {
               ordered_json j;
               j["threshold"] = pipeline_.threshold();
               j["annotators"] = ordered_json::array();
               for (const auto& annotator : pipeline_.annotators()) {
                 ordered_json item;
                 item["id"] = annotator->id();
                 item["kind"] = annotator->kind();
                 j["annotators"].push_back(std::move(item));
               }
               res.set_content(j.dump(2) + "\n", "application/json");
             });

  server.Post("/annotate", [this](const httplib::Request& req,
                                  httplib::Response& res) {
    if (req.body.size() > settings_.max_body_bytes) {
      fail(res, 413, "body_too_large",
           "request body exceeds " + std::to_string(settings_.max_body_bytes) +
               " bytes");
      return;
    }
    std::string doc_id = "doc";
    if (req.has_param("doc_id")) {
      doc_id = req.get_param_value("doc_id");
      if (doc_id.empty()) {
        fail(res, 400, "bad_doc_id", "doc_id must not be empty");
        return;
      }
    }
    int threshold = pipeline_.threshold();
    if (req.has_param("threshold")) {
      try {
        std::size_t pos = 0;
        const std::string raw = req.get_param_value("threshold");
        threshold = std::stoi(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument(raw);
      } catch (const std::exception&) {
        fail(res, 400, "bad_threshold",
             "threshold must be an integer between 1 and " +
                 std::to_string(pipeline_.annotator_count()));
        return;
      }
    }
    std::string format = "json";
    if (req.has_param("format")) {
      format = req.get_param_value("format");
      if (format != "json" && format != "con") {
        fail(res, 400, "bad_format", "format must be \"json\" or \"con\"");
        return;
      }
    }
    if (threshold < 1 ||
        threshold > static_cast<int>(pipeline_.annotator_count())) {
      fail(res, 400, "bad_threshold",
           "threshold must be an integer between 1 and " +
               std::to_string(pipeline_.annotator_count()));
      return;
    }
    try {
      Document doc = Document::tokenize(doc_id, req.body);
      PipelineResult result = pipeline_.annotate(doc, threshold);
      if (format == "con") {
        res.set_content(serialize_con(result.combined, doc), "text/plain");
      } else {
        res.set_content(annotate_response_json(result, doc),
                        "application/json");
      }
    } catch (const PipelineError& e) {
      fail(res, 500, "pipeline_failed", e.what());
    } catch (const Error& e) {
      fail(res, 400, "bad_request", e.what());
    }
  });
}

AnnotationService::~AnnotationService() { stop(); }

void AnnotationService::run() {
  impl_->running = true;
  if (!impl_->server.listen(settings_.host, settings_.port)) {
    impl_->running = false;
    throw ConfigError("failed to listen on " + settings_.host + ":" +
                      std::to_string(settings_.port));
  }
}

int AnnotationService::start_background() {
  int port = impl_->server.bind_to_any_port(settings_.host);
  if (port <= 0) {
    throw ConfigError("failed to bind an ephemeral port on " + settings_.host);
  }
  impl_->running = true;
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  while (!impl_->server.is_running()) {
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
  return port;
}

void AnnotationService::stop() {
  if (!impl_ || !impl_->running.exchange(false)) return;
  impl_->server.stop();
  if (impl_->worker.joinable()) impl_->worker.join();
}

}  // namespace encon
