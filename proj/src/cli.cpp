#include "tripost/cli.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tripost/analyzer.hpp"
#include "tripost/generator.hpp"
#include "tripost/io.hpp"
#include "tripost/service.hpp"

namespace tripost {

namespace {

// Thrown for malformed flags that CLI11 cannot check by itself.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint64_t> parse_numbers(const std::string& text, const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string_view item(text.data() + pos, comma - pos);
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size()) {
      throw UsageError(flag + ": expected comma-separated nonnegative integers, got '" + text + "'");
    }
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

TriSystem load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidSystem, "cannot read instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_any(buf.str());
}

Game game_from_flag(const std::string& name) {
  const auto g = parse_game(name);
  if (!g) throw UsageError("unknown game '" + name + "' (expected tmb, tm, tb or mb)");
  return *g;
}

struct BoundFlags {
  SearchBounds bounds;
  void attach(CLI::App& cmd) {
    cmd.add_option("--max-depth", bounds.max_depth, "maximum list length")->capture_default_str();
    cmd.add_option("--max-overhang", bounds.max_overhang, "maximum overhang length")->capture_default_str();
    cmd.add_option("--max-states", bounds.max_states, "maximum stored configurations")->capture_default_str();
  }
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Threefold Post correspondence workbench"};
  app.require_subcommand(1);

  std::string format = "text";
  auto add_format = [&format](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or records")
        ->check(CLI::IsMember({"text", "records"}))
        ->capture_default_str();
  };

  std::string file, indices_text, game_text = "tmb";

  auto* verify = app.add_subcommand("verify", "check an index list against a game");
  verify->add_option("file", file, "instance file")->required();
  verify->add_option("--indices", indices_text, "1-based indices, e.g. 1,2,3")->required();
  verify->add_option("--game", game_text, "tmb, tm, tb or mb")->capture_default_str();
  add_format(verify);

  BoundFlags solve_bounds;
  auto* solve = app.add_subcommand("solve", "search one game for a match");
  solve->add_option("file", file, "instance file")->required();
  solve->add_option("--game", game_text, "tmb, tm, tb or mb")->capture_default_str();
  solve_bounds.attach(*solve);
  add_format(solve);

  BoundFlags analyze_bounds;
  auto* analyze_cmd = app.add_subcommand("analyze", "decide what the tools can for all four games");
  analyze_cmd->add_option("file", file, "instance file")->required();
  analyze_bounds.attach(*analyze_cmd);
  add_format(analyze_cmd);

  BoundFlags sweep_bounds;
  std::string enumerate_text, random_text, out_path;
  unsigned threads = 1;
  auto* sweep_cmd = app.add_subcommand("sweep", "analyze a stream of instances");
  auto* enum_opt = sweep_cmd->add_option("--enumerate", enumerate_text, "n,len,k: all canonical instances");
  auto* rand_opt = sweep_cmd->add_option("--random", random_text, "count,seed,n,len,k: random instances");
  enum_opt->excludes(rand_opt);
  sweep_cmd->add_option("--out", out_path, "record file (default: stdout)");
  sweep_cmd->add_option("--threads", threads, "worker threads")->capture_default_str();
  sweep_bounds.attach(*sweep_cmd);

  std::uint16_t port = 7411;
  std::uint16_t http_port = 0;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "host the session service");
  serve->add_option("--port", port, "TCP port for the line protocol")->capture_default_str();
  serve->add_option("--http-port", http_port, "also serve POST /rpc over HTTP on this port");
  serve->add_option("--host", host, "listen address")->capture_default_str();

  std::vector<const char*> argv{"tripost"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const bool records = format == "records";
  try {
    if (*verify) {
      const Game game = game_from_flag(game_text);
      const auto raw = parse_numbers(indices_text, "--indices");
      const MatchSeq indices(raw.begin(), raw.end());
      const TriSystem system = load_instance(file);
      const bool ok = verify_match(system, indices, game);
      const Word top = concat_row(system, Row::Top, indices);
      const Word middle = concat_row(system, Row::Middle, indices);
      const Word bottom = concat_row(system, Row::Bottom, indices);
      if (records) {
        out << Record{{"record", "verify"}, {"game", game_name(game)}, {"indices", indices},
                      {"match", ok}, {"top", top}, {"middle", middle}, {"bottom", bottom}}
                   .dump()
            << "\n";
      } else if (ok) {
        out << "true " << (game == Game::MiddleBottom ? middle : top) << "\n";
      } else {
        out << "false";
        for (Row r : {Row::Top, Row::Middle, Row::Bottom}) {
          if (game != Game::TopMiddleBottom) {
            const auto [a, b] = rows_of(game);
            if (r != a && r != b) continue;
          }
          out << " " << row_name(r) << "=" << concat_row(system, r, indices);
        }
        out << "\n";
      }
      return kExitOk;
    }

    if (*solve) {
      const Game game = game_from_flag(game_text);
      solve_bounds.bounds.check();
      const TriSystem system = load_instance(file);
      const SearchOutcome outcome = game == Game::TopMiddleBottom
                                        ? search_triple(system, solve_bounds.bounds)
                                        : search_pair(project(system, game), solve_bounds.bounds);
      if (records) {
        Record r = outcome_to_record(outcome);
        r["game"] = game_name(game);
        out << r.dump() << "\n";
      } else {
        out << game_name(game) << ": " << describe(outcome) << "\n";
      }
      return kExitOk;
    }

    if (*analyze_cmd) {
      analyze_bounds.bounds.check();
      const TriSystem system = load_instance(file);
      const AnalysisReport report = analyze(system, analyze_bounds.bounds);
      if (records) {
        out << sweep_record_to_record(SweepRecord{0, system, report, {}}).dump() << "\n";
      } else {
        out << describe(report);
      }
      return kExitOk;
    }

    if (*sweep_cmd) {
      sweep_bounds.bounds.check();
      InstanceStream source;
      if (!enumerate_text.empty()) {
        const auto v = parse_numbers(enumerate_text, "--enumerate");
        if (v.size() != 3) throw UsageError("--enumerate expects n,len,k");
        source = enumerate_stream({v[0], v[1], v[2]});
      } else if (!random_text.empty()) {
        const auto v = parse_numbers(random_text, "--random");
        if (v.size() != 5) throw UsageError("--random expects count,seed,n,len,k");
        const EnumParams params{v[2], v[3], v[4]};
        params.check();
        auto next = std::make_shared<std::uint64_t>(0);
        const std::uint64_t count = v[0], seed = v[1];
        source = [=]() -> std::optional<TriSystem> {
          if (*next >= count) return std::nullopt;
          return random_instance(seed + (*next)++, params);
        };
      } else {
        throw UsageError("sweep needs --enumerate or --random");
      }

      std::ofstream file_out;
      std::ostream* records_out = &out;
      if (!out_path.empty()) {
        file_out.open(out_path, std::ios::binary | std::ios::trunc);
        if (!file_out) throw UsageError("cannot write " + out_path);
        records_out = &file_out;
      }
      const SweepSummary summary = sweep(
          source, sweep_bounds.bounds,
          [records_out](const SweepRecord& r) { *records_out << sweep_record_to_record(r).dump() << "\n"; },
          threads);
      *records_out << summary_to_record(summary).dump() << "\n";
      if (!out_path.empty()) out << describe(summary);
      return kExitOk;
    }

    if (*serve) {
      SessionStore store;
      ProtocolHandler handler(store);
      LineServer server(handler);
      const auto bound = server.start(host, port);
      out << "listening on " << host << ":" << bound << " (protocol v" << kProtocolVersion << ")" << std::endl;
      if (http_port != 0) {
        HttpBridge bridge(handler);
        const auto http_bound = bridge.start(host, http_port);
        out << "http bridge on " << host << ":" << http_bound << "/rpc" << std::endl;
        bridge.wait();
      } else {
        server.wait();
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::Syntax:
      case ErrorCode::InvalidSystem:
        return kExitInstance;
      default:
        return kExitUsage;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace tripost
