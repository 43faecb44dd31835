#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "tripost/core.hpp"
#include "tripost/search.hpp"

namespace tripost {

inline constexpr int kProtocolVersion = 1;

struct SessionView {
  Word top;
  Word middle;
  Word bottom;
  std::size_t common_prefix_len = 0;
  std::vector<Game> won;   // kAllGames order
  std::vector<Game> dead;  // rows no longer prefix-comparable
  MatchSeq played;

  bool operator==(const SessionView&) const = default;
};

SessionView view_of(const TriSystem& system, std::span<const std::size_t> played);

struct ServiceOptions {
  std::chrono::seconds idle_expiry{3600};
  std::size_t max_moves = 10'000;
  SearchBounds hint_bounds{32, 32, 100'000};
};

// In-memory sessions. Calls on different sessions run concurrently; calls on
// one session are serialized.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(ServiceOptions options = {}, std::function<Clock::time_point()> now = Clock::now);

  struct Created {
    std::string id;
    SessionView view;
  };

  Created create(TriSystem system);
  SessionView play(const std::string& id, std::size_t index);
  SessionView undo(const std::string& id);
  SessionView view(const std::string& id);
  // First index of a shortest winning continuation, if the bounded search
  // finds one from the current position.
  std::optional<std::size_t> hint(const std::string& id, Game game);
  TriSystem system(const std::string& id);

  std::size_t size() const;
  // Drops sessions idle longer than the expiry.
  void expire_idle();

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  struct Session {
    std::mutex mutex;
    TriSystem system;
    MatchSeq played;
    Clock::time_point last_used;
  };

  std::shared_ptr<Session> find(const std::string& id);

  ServiceOptions options_;
  std::function<Clock::time_point()> now_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 ids_;
};

// Decodes one request line and returns one response line (without the
// trailing newline). Never throws for malformed input.
class ProtocolHandler {
 public:
  explicit ProtocolHandler(SessionStore& store) : store_(store) {}
  std::string handle(std::string_view line);

 private:
  SessionStore& store_;
};

// Line-delimited protocol over TCP, one thread per connection.
class LineServer {
 public:
  explicit LineServer(ProtocolHandler& handler) : handler_(handler) {}
  ~LineServer();
  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  // Binds and starts accepting; returns the bound port (useful with port 0).
  std::uint16_t start(const std::string& host, std::uint16_t port);
  void stop();
  // Blocks until stop() is called from elsewhere.
  void wait();

 private:
  void accept_loop();
  void serve_client(int fd);

  ProtocolHandler& handler_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex clients_mutex_;
  std::vector<int> client_fds_;
  std::vector<std::thread> client_threads_;
};

// Serves POST /rpc carrying the same request/response records, for browser
// clients that cannot open raw sockets.
class HttpBridge {
 public:
  explicit HttpBridge(ProtocolHandler& handler);
  ~HttpBridge();
  HttpBridge(const HttpBridge&) = delete;
  HttpBridge& operator=(const HttpBridge&) = delete;

  std::uint16_t start(const std::string& host, std::uint16_t port);
  void stop();
  void wait();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace tripost
