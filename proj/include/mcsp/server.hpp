#pragma once

// JSON-over-HTTP access to stepping sessions.

#include "mcsp/lts.hpp"
#include "mcsp/session.hpp"

namespace httplib {
class Server;
}

namespace mcsp {

struct ServerOptions {
  /// Bound for GET /sessions/{id}/lts.
  ExploreLimits lts_limits{2000, 1000};
  /// Value of Access-Control-Allow-Origin.
  std::string allow_origin = "*";
};

/// Registers the session endpoints on `server`. `store` must outlive it.
void install_routes(httplib::Server& server, SessionStore& store, ServerOptions opts = {});

/// Blocks serving on host:port until the process exits.
int serve(const std::string& host, int port, ServerOptions opts = {});

}  // namespace mcsp
