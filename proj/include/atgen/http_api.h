/// @file http_api.h
/// HTTP API for the review client:
///   GET  /tree/{fe}        DAG merged with the overlay
///   GET  /report/{fe}      last regeneration report
///   PUT  /annotation/{path} set decision/comment/color, persisted atomically
///   POST /regenerate       reload the architecture file and regenerate all

#ifndef ATGEN_HTTP_API_H_
#define ATGEN_HTTP_API_H_

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "atgen/io.h"

namespace httplib {
class Server;
}

namespace atgen {

class ReviewServer {
 public:
  /// Generates every feared event of the bundle, regenerating against
  /// trees already present in the output directory.
  explicit ReviewServer(Bundle bundle);
  ~ReviewServer();

  /// Blocking. Returns false when the address cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port for tests; then call listen_after_bind().
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

  /// Holds the single-writer lock; writes arriving meanwhile get 409.
  std::unique_lock<std::mutex> hold_writes() {
    return std::unique_lock<std::mutex>(write_mu_);
  }

 private:
  void Routes();
  json TreeView(const Outcome& outcome) const;

  Bundle bundle_;
  std::map<std::string, Outcome> trees_;  // by feared event id
  mutable std::shared_mutex state_mu_;
  std::mutex write_mu_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace atgen

#endif  // ATGEN_HTTP_API_H_
