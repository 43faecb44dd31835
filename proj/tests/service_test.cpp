#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <thread>

#include "doctest.h"
#include "fixtures.hpp"
#include "httplib.h"
#include "json.hpp"
#include "tripost/service.hpp"

using namespace tripost;
using nlohmann::json;

namespace {

std::vector<Game> games(std::initializer_list<Game> gs) { return gs; }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Syntax;
}

// Minimal blocking line client for the TCP protocol.
class LineClient {
 public:
  explicit LineClient(std::uint16_t port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    REQUIRE(::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0);
  }
  ~LineClient() { ::close(fd_); }

  json call(const json& request) {
    const std::string line = request.dump() + "\n";
    REQUIRE(::send(fd_, line.data(), line.size(), 0) == static_cast<ssize_t>(line.size()));
    while (buffer_.find('\n') == std::string::npos) {
      char chunk[1024];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      REQUIRE(n > 0);
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
    const auto nl = buffer_.find('\n');
    const std::string reply = buffer_.substr(0, nl);
    buffer_.erase(0, nl + 1);
    return json::parse(reply);
  }

 private:
  int fd_;
  std::string buffer_;
};

}  // namespace

TEST_CASE("create") {
  SessionStore store;
  const auto a = store.create(fixtures::sys1());
  CHECK(a.view == SessionView{});
  CHECK(store.create(fixtures::sys1()).id != a.id);
  CHECK(store.size() == 2);
  CHECK(code_of([&] { store.create(TriSystem{Alphabet("a"), {}}); }) == ErrorCode::InvalidSystem);
}

TEST_CASE("play updates words, wins and dead games") {
  SessionStore store;
  auto id = store.create(fixtures::sys1()).id;
  auto v = store.play(id, 3);
  CHECK(v.top == "b");
  CHECK(v.middle == "b");
  CHECK(v.bottom == "bb");
  CHECK(v.common_prefix_len == 1);
  CHECK(v.won == games({Game::TopMiddle}));
  CHECK(v.dead.empty());

  id = store.create(fixtures::sys1()).id;
  store.play(id, 1);
  store.play(id, 2);
  v = store.play(id, 3);
  CHECK(v.top == "ababbb");
  CHECK(v.middle == "ababbb");
  CHECK(v.bottom == "ababbb");
  CHECK(v.won == games({Game::TopMiddleBottom, Game::TopMiddle, Game::TopBottom, Game::MiddleBottom}));
  CHECK(v.played == MatchSeq{1, 2, 3});

  id = store.create(fixtures::sys1()).id;
  v = store.play(id, 2);
  CHECK(v.top == "abb");
  CHECK(v.middle == "babb");
  CHECK(v.dead == games({Game::TopMiddleBottom, Game::TopMiddle, Game::MiddleBottom}));

  CHECK(code_of([&] { store.play(id, 5); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { store.play("nope", 1); }) == ErrorCode::UnknownSession);
}

TEST_CASE("undo") {
  SessionStore store;
  const auto id = store.create(fixtures::sys1()).id;
  store.play(id, 3);
  CHECK(store.undo(id) == SessionView{});

  const auto after_one = store.play(id, 1);
  store.play(id, 2);
  CHECK(store.undo(id) == after_one);
  store.undo(id);
  CHECK(code_of([&] { store.undo(id); }) == ErrorCode::NothingToUndo);
  CHECK(code_of([&] { store.undo("nope"); }) == ErrorCode::UnknownSession);
}

TEST_CASE("hint") {
  SessionStore store;
  const auto id = store.create(fixtures::sys1()).id;
  CHECK(store.hint(id, Game::TopMiddleBottom) == 1u);
  CHECK(store.hint(id, Game::TopMiddle) == 3u);
  store.play(id, 1);
  store.play(id, 2);
  store.play(id, 3);
  CHECK(store.hint(id, Game::TopMiddleBottom) == 1u);

  const auto dead = store.create(fixtures::single("a", "a", "b", "ab")).id;
  CHECK_FALSE(store.hint(dead, Game::TopBottom));
  CHECK(store.hint(dead, Game::TopMiddle) == 1u);

  const auto stuck = store.create(fixtures::sys1()).id;
  store.play(stuck, 2);
  CHECK_FALSE(store.hint(stuck, Game::TopMiddle));
  CHECK(code_of([&] { store.hint("nope", Game::TopMiddle); }) == ErrorCode::UnknownSession);
}

TEST_CASE("views stay consistent with the core over random play") {
  fixtures::Gen gen(55);
  SessionStore store;
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = gen.system(4, 3, "ab");
    const auto id = store.create(s).id;
    MatchSeq played;
    for (int move = 0; move < 12; ++move) {
      const SessionView before = store.view(id);
      const std::size_t i = gen.pick(1, s.size());
      // play then undo is the identity
      store.play(id, i);
      CHECK(store.undo(id) == before);

      const SessionView v = store.play(id, i);
      played.push_back(i);
      CHECK(v.played == played);
      CHECK(v.top == concat_row(s, Row::Top, played));
      CHECK(v.middle == concat_row(s, Row::Middle, played));
      CHECK(v.bottom == concat_row(s, Row::Bottom, played));
      for (Game g : kAllGames) {
        const bool won = std::find(v.won.begin(), v.won.end(), g) != v.won.end();
        CHECK(won == verify_match(s, played, g));
      }
      const bool tmb_won = !v.won.empty() && v.won.front() == Game::TopMiddleBottom;
      if (tmb_won) CHECK(v.won.size() == 4);
    }
  }
}

TEST_CASE("following hints greedily wins") {
  fixtures::Gen gen(9);
  ServiceOptions options;
  SessionStore store(options);
  int wins = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto s = gen.system(3, 3, "ab");
    for (Game g : kAllGames) {
      const auto id = store.create(s).id;
      if (trial % 3 == 0) store.play(id, 1);
      bool won = false;
      for (std::size_t step = 0; step < options.hint_bounds.max_depth && !won; ++step) {
        const auto h = store.hint(id, g);
        if (!h) {
          CHECK(step == 0);
          break;
        }
        const auto v = store.play(id, *h);
        won = std::find(v.won.begin(), v.won.end(), g) != v.won.end();
      }
      wins += won;
    }
  }
  CHECK(wins > 50);
}

TEST_CASE("idle sessions expire and moves are capped") {
  auto now = SessionStore::Clock::time_point{};
  ServiceOptions options;
  options.idle_expiry = std::chrono::seconds(10);
  options.max_moves = 3;
  SessionStore store(options, [&] { return now; });
  const auto old_id = store.create(fixtures::sys1()).id;
  now += std::chrono::seconds(5);
  const auto fresh = store.create(fixtures::sys1()).id;
  now += std::chrono::seconds(6);
  store.expire_idle();
  CHECK(store.size() == 1);
  CHECK(code_of([&] { store.view(old_id); }) == ErrorCode::UnknownSession);

  for (int i = 0; i < 3; ++i) store.play(fresh, 1);
  CHECK(code_of([&] { store.play(fresh, 1); }) == ErrorCode::MoveLimit);
}

TEST_CASE("concurrent sessions") {
  SessionStore store;
  const auto shared = store.create(fixtures::sys1()).id;
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&store, &shared, t] {
      const auto own = store.create(fixtures::sys1()).id;
      for (int i = 0; i < 200; ++i) {
        store.play(own, 1 + (i + t) % 4);
        store.play(shared, 3);
        store.view(shared);
      }
    });
  }
  for (auto& th : threads) th.join();
  CHECK(store.view(shared).played.size() == 1600);
  CHECK(store.size() == 9);
}

TEST_CASE("protocol handler") {
  SessionStore store;
  ProtocolHandler handler(store);
  auto call = [&](const json& req) { return json::parse(handler.handle(req.dump())); };

  auto r = call({{"v", 1}, {"op", "create"}, {"id", 7},
                 {"instance", "alphabet: ab\ndominoes:\nab | a | ab\nabb | babb | ab\nb | b | bb\n"}});
  REQUIRE(r.at("ok") == true);
  CHECK(r.at("id") == 7);
  CHECK(r.at("system").at("dominoes").size() == 3);
  CHECK(r.at("view").at("wonGames") == json::array());
  const std::string id = r.at("session");

  r = call({{"op", "hint"}, {"session", id}, {"game", "tmb"}});
  CHECK(r.at("game") == "tmb");
  CHECK(r.at("hint") == 1);

  r = call({{"op", "play"}, {"session", id}, {"index", 3}});
  CHECK(r.at("view").at("wonGames") == json::array({"tm"}));
  CHECK(r.at("view").at("bottom") == "bb");
  CHECK(r.at("view").at("commonPrefixLen") == 1);

  r = call({{"op", "undo"}, {"session", id}});
  CHECK(r.at("view").at("played") == json::array());
  r = call({{"op", "undo"}, {"session", id}});
  CHECK(r.at("ok") == false);
  CHECK(r.at("error").at("code") == "NothingToUndo");

  r = call({{"op", "create"}, {"system", {{"alphabet", "ab"}, {"dominoes", {{"a", "a", "b"}}}}}});
  const std::string dead = r.at("session");
  r = call({{"op", "hint"}, {"session", dead}, {"game", "tb"}});
  CHECK(r.at("hint").is_null());

  CHECK(call({{"op", "view"}, {"session", "zzz"}}).at("error").at("code") == "UnknownSession");
  CHECK(call({{"op", "play"}, {"session", id}, {"index", 0}}).at("error").at("code") == "IndexOutOfRange");
  CHECK(call({{"op", "play"}, {"session", id}, {"index", 9}}).at("error").at("code") == "IndexOutOfRange");
  CHECK(call({{"op", "play"}, {"session", id}}).at("error").at("code") == "BadRequest");
  CHECK(call({{"op", "hint"}, {"session", id}, {"game", "xx"}}).at("error").at("code") == "BadRequest");
  CHECK(call({{"op", "fly"}}).at("error").at("code") == "UnknownOp");
  CHECK(call({{"v", 2}, {"op", "view"}}).at("error").at("code") == "UnsupportedVersion");
  CHECK(call({{"op", "create"}, {"instance", "alphabet: a\ndominoes:\nb | a | a\n"}}).at("error").at("code") ==
        "InvalidSystem");
  CHECK(json::parse(handler.handle("not json")).at("error").at("code") == "BadRequest");
}

TEST_CASE("line server over TCP") {
  SessionStore store;
  ProtocolHandler handler(store);
  LineServer server(handler);
  const auto port = server.start("127.0.0.1", 0);
  REQUIRE(port != 0);
  {
    LineClient client(port);
    auto r = client.call({{"op", "create"},
                          {"instance", "alphabet: ab\ndominoes:\nab | a | ab\nabb | babb | ab\nb | b | bb\n"}});
    const std::string id = r.at("session");
    for (int i : {1, 2}) client.call({{"op", "play"}, {"session", id}, {"index", i}});
    r = client.call({{"op", "play"}, {"session", id}, {"index", 3}});
    CHECK(r.at("view").at("top") == "ababbb");
    CHECK(r.at("view").at("wonGames").size() == 4);

    LineClient other(port);
    CHECK(other.call({{"op", "view"}, {"session", id}}).at("view").at("played") == json::array({1, 2, 3}));
  }
  server.stop();
}

TEST_CASE("http bridge") {
  SessionStore store;
  ProtocolHandler handler(store);
  HttpBridge bridge(handler);
  const auto port = bridge.start("127.0.0.1", 0);
  httplib::Client client("127.0.0.1", port);
  auto res = client.Post("/rpc", R"({"op":"create","instance":"alphabet: a\ndominoes:\na | a | a\n"})",
                         "application/json");
  REQUIRE(res);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "*");
  const auto created = json::parse(res->body);
  const std::string id = created.at("session");
  res = client.Post("/rpc", json{{"op", "play"}, {"session", id}, {"index", 1}}.dump(), "application/json");
  REQUIRE(res);
  CHECK(json::parse(res->body).at("view").at("wonGames").size() == 4);
  bridge.stop();
}
