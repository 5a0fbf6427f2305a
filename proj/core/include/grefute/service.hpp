#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "grefute/json_codec.hpp"
#include "grefute/prover.hpp"

namespace grefute {

enum class SessionStatus { Open, Refuted, Saturated, Exhausted };
std::string status_name(SessionStatus s);

/// Immutable view of a session; mutations publish a new one.
struct SessionState {
  std::string id;
  std::vector<std::string> premises;
  std::string conclusion;
  LabelledSlices initial;  // basic form before pre-erasure
  LabelledSlices slices;   // current graph, ordered by id
  DerivationTrace trace;
  SessionStatus status = SessionStatus::Open;
  std::optional<FiniteModel> model;
  std::string saturated_slice;
};

struct HttpReply {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

/// Session router. Safe to call from many threads: mutations of one session are serialized,
/// reads work on the last published snapshot.
class Service {
 public:
  /// With a journal directory, every mutation is appended to <dir>/<session>.jsonl and existing
  /// journals are replayed on construction.
  explicit Service(std::optional<std::filesystem::path> journal_dir = std::nullopt);
  ~Service();

  HttpReply handle(const std::string& method, const std::string& path, const std::string& body);

  std::shared_ptr<const SessionState> snapshot(const std::string& id) const;
  std::size_t session_count() const;

 private:
  struct Session;
  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_id_ = 1;
  std::optional<std::filesystem::path> journal_;

  std::shared_ptr<Session> find(const std::string& id) const;
  Json create(const Json& req);
  Json expand(Session& s, const Json& req);
  Json auto_step(Session& s, const Json& req);
  void journal(const std::string& id, const Json& record);
  void reload();
};

Json session_view(const SessionState& s);

/// HTTP binding of a Service. Kept behind a pointer so httplib stays out of this header.
class HttpFrontend {
 public:
  explicit HttpFrontend(Service& service);
  ~HttpFrontend();

  /// addr is "host:port" or "host"; port 0 picks a free one. Returns the bound port or -1.
  int bind(const std::string& addr);
  void run();   // blocks until stop()
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking HTTP server on addr ("host:port"). Returns when the server stops.
int serve_http(Service& service, const std::string& addr);

}  // namespace grefute
