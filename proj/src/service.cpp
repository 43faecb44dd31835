#include "tripost/service.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>

#include "httplib.h"
#include "tripost/io.hpp"

namespace tripost {

namespace {

std::size_t common_prefix(const Word& a, const Word& b) {
  const auto n = std::min(a.size(), b.size());
  return static_cast<std::size_t>(std::mismatch(a.begin(), a.begin() + n, b.begin()).first - a.begin());
}

Record view_to_record(const SessionView& v) {
  Record won = Record::array();
  for (Game g : v.won) won.push_back(game_name(g));
  Record dead = Record::array();
  for (Game g : v.dead) dead.push_back(game_name(g));
  return Record{{"played", v.played},
                {"top", v.top},
                {"middle", v.middle},
                {"bottom", v.bottom},
                {"commonPrefixLen", v.common_prefix_len},
                {"wonGames", std::move(won)},
                {"deadGames", std::move(dead)}};
}

Record error_record(std::string_view code, std::string_view message) {
  return Record{{"v", kProtocolVersion},
                {"ok", false},
                {"error", Record{{"code", code}, {"message", message}}}};
}

bool send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n <= 0) return false;
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

SessionView view_of(const TriSystem& system, std::span<const std::size_t> played) {
  SessionView v;
  v.played.assign(played.begin(), played.end());
  v.top = concat_row(system, Row::Top, played);
  v.middle = concat_row(system, Row::Middle, played);
  v.bottom = concat_row(system, Row::Bottom, played);
  v.common_prefix_len = std::min(common_prefix(v.top, v.middle), common_prefix(v.top, v.bottom));

  auto row = [&v](Row r) -> const Word& {
    return r == Row::Top ? v.top : (r == Row::Middle ? v.middle : v.bottom);
  };
  bool any_dead = false;
  bool all_won = !played.empty();
  std::vector<Game> won_pairs, dead_pairs;
  for (Game g : kPairGames) {
    const auto [a, b] = rows_of(g);
    if (!played.empty() && row(a) == row(b)) {
      won_pairs.push_back(g);
    } else {
      all_won = false;
    }
    if (!prefix_comparable(row(a), row(b))) {
      dead_pairs.push_back(g);
      any_dead = true;
    }
  }
  if (all_won) v.won.push_back(Game::TopMiddleBottom);
  v.won.insert(v.won.end(), won_pairs.begin(), won_pairs.end());
  if (any_dead) v.dead.push_back(Game::TopMiddleBottom);
  v.dead.insert(v.dead.end(), dead_pairs.begin(), dead_pairs.end());
  return v;
}

SessionStore::SessionStore(ServiceOptions options, std::function<Clock::time_point()> now)
    : options_(std::move(options)), now_(std::move(now)), ids_(std::random_device{}()) {
  options_.hint_bounds.check();
}

SessionStore::Created SessionStore::create(TriSystem system) {
  require_valid(system);
  auto session = std::make_shared<Session>();
  session->system = std::move(system);
  session->last_used = now_();
  SessionView view = view_of(session->system, session->played);

  expire_idle();
  std::lock_guard lock(mutex_);
  std::string id;
  do {
    char buf[24];
    std::snprintf(buf, sizeof buf, "s%016llx", static_cast<unsigned long long>(ids_()));
    id = buf;
  } while (sessions_.contains(id));
  sessions_.emplace(id, std::move(session));
  return {id, std::move(view)};
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) {
  expire_idle();
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::UnknownSession, "unknown session: " + id);
  return it->second;
}

SessionView SessionStore::play(const std::string& id, std::size_t index) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = now_();
  s->system.at(index);  // range check
  if (s->played.size() >= options_.max_moves) {
    throw Error(ErrorCode::MoveLimit, "move limit of " + std::to_string(options_.max_moves) + " reached");
  }
  s->played.push_back(index);
  return view_of(s->system, s->played);
}

SessionView SessionStore::undo(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = now_();
  if (s->played.empty()) throw Error(ErrorCode::NothingToUndo, "nothing to undo");
  s->played.pop_back();
  return view_of(s->system, s->played);
}

SessionView SessionStore::view(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = now_();
  return view_of(s->system, s->played);
}

TriSystem SessionStore::system(const std::string& id) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  return s->system;
}

std::optional<std::size_t> SessionStore::hint(const std::string& id, Game game) {
  auto s = find(id);
  std::lock_guard lock(s->mutex);
  s->last_used = now_();
  const Word top = concat_row(s->system, Row::Top, s->played);
  const Word middle = concat_row(s->system, Row::Middle, s->played);
  const Word bottom = concat_row(s->system, Row::Bottom, s->played);

  SearchOutcome outcome;
  if (game == Game::TopMiddleBottom) {
    auto start = tri_config_of(top, middle, bottom);
    if (!start) return std::nullopt;
    outcome = search_triple_from(s->system, *start, options_.hint_bounds);
  } else {
    const auto [a, b] = rows_of(game);
    auto pick = [&](Row r) -> const Word& { return r == Row::Top ? top : (r == Row::Middle ? middle : bottom); };
    auto start = pair_config_of(pick(a), pick(b));
    if (!start) return std::nullopt;
    outcome = search_pair_from(project(s->system, game), *start, options_.hint_bounds);
  }
  if (const auto* f = std::get_if<Found>(&outcome)) return f->match.front();
  return std::nullopt;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

void SessionStore::expire_idle() {
  const auto cutoff = now_() - options_.idle_expiry;
  std::lock_guard lock(mutex_);
  std::erase_if(sessions_, [&](const auto& entry) {
    std::unique_lock session_lock(entry.second->mutex, std::try_to_lock);
    // A session in use is not idle.
    return session_lock.owns_lock() && entry.second->last_used < cutoff;
  });
}

std::string ProtocolHandler::handle(std::string_view line) {
  nlohmann::json req = nlohmann::json::parse(line, nullptr, false);
  if (req.is_discarded() || !req.is_object()) return error_record("BadRequest", "request is not a JSON object").dump();

  Record resp;
  try {
    if (req.contains("v") && req["v"] != kProtocolVersion) {
      resp = error_record("UnsupportedVersion", "protocol version " + std::to_string(kProtocolVersion) + " only");
    } else {
      const std::string op = req.at("op").get<std::string>();
      resp = Record{{"v", kProtocolVersion}, {"ok", true}};
      if (op == "create") {
        TriSystem system = req.contains("instance")
                               ? parse_instance_any(req.at("instance").get<std::string>())
                               : instance_from_record(req.at("system"));
        auto created = store_.create(std::move(system));
        resp["session"] = created.id;
        resp["system"] = instance_to_record(store_.system(created.id));
        resp["view"] = view_to_record(created.view);
      } else if (op == "play" || op == "undo" || op == "view" || op == "hint") {
        const std::string id = req.at("session").get<std::string>();
        resp["session"] = id;
        if (op == "play") {
          const auto& index = req.at("index");
          if (!index.is_number_integer()) throw Error(ErrorCode::IndexOutOfRange, "index must be an integer");
          const auto value = index.get<std::int64_t>();
          if (value < 1) throw Error(ErrorCode::IndexOutOfRange, "index out of range: " + std::to_string(value));
          resp["view"] = view_to_record(store_.play(id, static_cast<std::size_t>(value)));
        } else if (op == "undo") {
          resp["view"] = view_to_record(store_.undo(id));
        } else if (op == "view") {
          resp["view"] = view_to_record(store_.view(id));
        } else {
          const std::string name = req.at("game").get<std::string>();
          const auto game = parse_game(name);
          if (!game) throw std::invalid_argument("unknown game: " + name);
          resp["game"] = name;
          const auto h = store_.hint(id, *game);
          resp["hint"] = h ? Record(*h) : Record(nullptr);
        }
      } else {
        resp = error_record("UnknownOp", "unknown op: " + op);
      }
    }
  } catch (const Error& e) {
    resp = error_record(error_code_name(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    resp = error_record("BadRequest", e.what());
  } catch (const std::invalid_argument& e) {
    resp = error_record("BadRequest", e.what());
  }
  if (req.contains("id")) resp["id"] = req["id"];
  return resp.dump();
}

LineServer::~LineServer() { stop(); }

std::uint16_t LineServer::start(const std::string& host, std::uint16_t port) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw std::runtime_error("socket() failed");
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::runtime_error("bad listen address: " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0 ||
      ::listen(listen_fd_, 64) != 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
  return ntohs(addr.sin_port);
}

void LineServer::accept_loop() {
  while (running_) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (!running_) break;
      continue;
    }
    std::lock_guard lock(clients_mutex_);
    client_fds_.push_back(fd);
    client_threads_.emplace_back([this, fd] { serve_client(fd); });
  }
}

void LineServer::serve_client(int fd) {
  std::string buffer;
  char chunk[4096];
  while (running_) {
    const ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      if (!send_all(fd, handler_.handle(line) + "\n")) return;
    }
  }
}

void LineServer::stop() {
  if (!running_.exchange(false)) return;
  ::shutdown(listen_fd_, SHUT_RDWR);
  ::close(listen_fd_);
  if (acceptor_.joinable()) acceptor_.join();
  std::vector<std::thread> threads;
  {
    std::lock_guard lock(clients_mutex_);
    for (int fd : client_fds_) ::shutdown(fd, SHUT_RDWR);
    threads.swap(client_threads_);
  }
  for (auto& t : threads) t.join();
  for (int fd : client_fds_) ::close(fd);
  client_fds_.clear();
}

void LineServer::wait() {
  if (acceptor_.joinable()) acceptor_.join();
}

struct HttpBridge::Impl {
  httplib::Server server;
  std::thread thread;
};

HttpBridge::HttpBridge(ProtocolHandler& handler) : impl_(std::make_unique<Impl>()) {
  auto cors = [](httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", "*");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
    res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
  };
  impl_->server.Options("/rpc", [cors](const httplib::Request&, httplib::Response& res) { cors(res); });
  impl_->server.Post("/rpc", [&handler, cors](const httplib::Request& req, httplib::Response& res) {
    cors(res);
    res.set_content(handler.handle(req.body), "application/json");
  });
}

HttpBridge::~HttpBridge() { stop(); }

std::uint16_t HttpBridge::start(const std::string& host, std::uint16_t port) {
  int bound = port;
  if (port == 0) {
    bound = impl_->server.bind_to_any_port(host);
  } else if (!impl_->server.bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return static_cast<std::uint16_t>(bound);
}

void HttpBridge::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

void HttpBridge::wait() {
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace tripost
