#include "tripost/io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tripost {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(ErrorCode code, const std::string& what, std::size_t line) {
  throw Error(code, what + ", line " + std::to_string(line));
}

Word parse_word(std::string_view token, const Alphabet& alphabet, std::size_t line) {
  const std::string_view w = trim(token);
  if (w.empty()) fail(ErrorCode::InvalidSystem, "empty word", line);
  for (char c : w) {
    if (std::isspace(static_cast<unsigned char>(c))) fail(ErrorCode::Syntax, "whitespace inside word", line);
    if (!alphabet.contains(c)) fail(ErrorCode::InvalidSystem, "letter not in alphabet", line);
  }
  return Word(w);
}

Record match_record(const MatchSeq& m) { return Record(m); }

Record bounds_fired(const std::vector<Bound>& fired) {
  Record out = Record::array();
  for (Bound b : fired) out.push_back(bound_name(b));
  return out;
}

}  // namespace

TriSystem parse_instance(std::string_view text) {
  enum class Expect { Alphabet, DominoesHeader, Domino } expect = Expect::Alphabet;
  TriSystem system;
  std::size_t line_no = 0;
  std::size_t alphabet_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    switch (expect) {
      case Expect::Alphabet: {
        constexpr std::string_view kKey = "alphabet:";
        if (!line.starts_with(kKey)) fail(ErrorCode::Syntax, "expected 'alphabet: <letters>'", line_no);
        std::string letters;
        for (char c : line.substr(kKey.size())) {
          if (!std::isspace(static_cast<unsigned char>(c))) letters.push_back(c);
        }
        system.alphabet = Alphabet(letters);
        if (letters.empty()) fail(ErrorCode::InvalidSystem, "alphabet must be nonempty", line_no);
        for (std::size_t i = 0; i < letters.size(); ++i) {
          const auto c = static_cast<unsigned char>(letters[i]);
          if (c == '|' || c <= ' ' || c >= 127) {
            fail(ErrorCode::InvalidSystem, "reserved or non-printable alphabet letter", line_no);
          }
          if (letters.find(letters[i]) != i) {
            fail(ErrorCode::InvalidSystem, std::string("duplicate alphabet letter '") + letters[i] + "'",
                 line_no);
          }
        }
        alphabet_line = line_no;
        expect = Expect::DominoesHeader;
        break;
      }
      case Expect::DominoesHeader:
        if (line != "dominoes:") fail(ErrorCode::Syntax, "expected 'dominoes:'", line_no);
        expect = Expect::Domino;
        break;
      case Expect::Domino: {
        const auto bar1 = line.find('|');
        const auto bar2 = bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
        if (bar2 == std::string_view::npos || line.find('|', bar2 + 1) != std::string_view::npos) {
          fail(ErrorCode::Syntax, "expected 'top | middle | bottom'", line_no);
        }
        Domino d;
        d.top = parse_word(line.substr(0, bar1), system.alphabet, line_no);
        d.middle = parse_word(line.substr(bar1 + 1, bar2 - bar1 - 1), system.alphabet, line_no);
        d.bottom = parse_word(line.substr(bar2 + 1), system.alphabet, line_no);
        system.dominoes.push_back(std::move(d));
        break;
      }
    }
  }
  if (expect == Expect::Alphabet) throw Error(ErrorCode::Syntax, "missing 'alphabet:' line");
  if (expect == Expect::DominoesHeader) throw Error(ErrorCode::Syntax, "missing 'dominoes:' line");
  if (system.dominoes.empty()) {
    throw Error(ErrorCode::InvalidSystem,
                "n >= 1 required: no dominoes after line " + std::to_string(alphabet_line + 1));
  }
  require_valid(system);
  return system;
}

std::string serialize_instance(const TriSystem& system) {
  std::string out = "alphabet: " + system.alphabet.letters() + "\ndominoes:\n";
  for (const Domino& d : system.dominoes) {
    out += d.top + " | " + d.middle + " | " + d.bottom + "\n";
  }
  return out;
}

Record instance_to_record(const TriSystem& system) {
  Record dominoes = Record::array();
  for (const Domino& d : system.dominoes) dominoes.push_back({d.top, d.middle, d.bottom});
  return Record{{"alphabet", system.alphabet.letters()}, {"dominoes", std::move(dominoes)}};
}

TriSystem instance_from_record(const nlohmann::json& record) {
  TriSystem system;
  try {
    system.alphabet = Alphabet(record.at("alphabet").get<std::string>());
    for (const auto& d : record.at("dominoes")) {
      if (!d.is_array() || d.size() != 3) {
        throw Error(ErrorCode::Syntax, "each domino must be a [top, middle, bottom] array");
      }
      system.dominoes.push_back(
          {d[0].get<std::string>(), d[1].get<std::string>(), d[2].get<std::string>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Syntax, std::string("malformed instance record: ") + e.what());
  }
  require_valid(system);
  return system;
}

TriSystem parse_instance_any(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.starts_with('{')) {
    nlohmann::json j = nlohmann::json::parse(t, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::Syntax, "malformed instance record");
    return instance_from_record(j);
  }
  return parse_instance(text);
}

Record certificate_to_record(const Certificate& certificate) {
  Record out{{"kind", certificate_name(certificate)}};
  std::visit(
      [&out](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LengthImbalance>) {
          out["differences"] = c.differences;
        } else if constexpr (std::is_same_v<T, LetterImbalance>) {
          out["vectors"] = c.vectors;
        } else if constexpr (std::is_same_v<T, ClosedStateGraph>) {
          out["statesExplored"] = c.states_explored;
          out["depthReached"] = c.depth_reached;
        }
      },
      certificate);
  return out;
}

Record stats_to_record(const SearchStats& stats) {
  return Record{{"states", stats.states},
                {"transitions", stats.transitions},
                {"depth", stats.depth_reached}};
}

Record outcome_to_record(const SearchOutcome& outcome) {
  if (const auto* f = std::get_if<Found>(&outcome)) {
    return Record{{"outcome", "found"}, {"match", match_record(f->match)}, {"stats", stats_to_record(f->stats)}};
  }
  if (const auto* c = std::get_if<CertifiedNo>(&outcome)) {
    return Record{{"outcome", "certified-no"},
                  {"certificate", certificate_to_record(c->certificate)},
                  {"stats", stats_to_record(c->stats)}};
  }
  const auto& u = std::get<Unknown>(outcome);
  return Record{{"outcome", "unknown"},
                {"reason", bound_name(u.reason)},
                {"fired", bounds_fired(u.fired)},
                {"stats", stats_to_record(u.stats)}};
}

Record status_to_record(const GameStatus& status) {
  Record out{{"status", status_name(status.kind())}, {"origin", origin_name(status.origin)}};
  if (status.source) out["from"] = game_name(*status.source);
  if (const auto* y = std::get_if<DecidedYes>(&status.value)) {
    out["match"] = match_record(y->match);
  } else if (const auto* n = std::get_if<DecidedNo>(&status.value)) {
    out["certificate"] = certificate_to_record(n->certificate);
    if (n->certified_game) out["certifiedGame"] = game_name(*n->certified_game);
  } else {
    const auto& u = std::get<Undecided>(status.value);
    out["reason"] = bound_name(u.reason);
    out["fired"] = bounds_fired(u.fired);
  }
  return out;
}

Record report_to_record(const AnalysisReport& report) {
  Record games = Record::object();
  for (Game g : kAllGames) {
    const GameResult& r = report[g];
    Record entry = status_to_record(r.status);
    if (r.raw) entry["raw"] = status_to_record(*r.raw);
    if (r.search) entry["search"] = stats_to_record(*r.search);
    games[std::string(game_name(g))] = std::move(entry);
  }
  return Record{{"games", std::move(games)},
                {"witnessed", report.conjecture_witnessed},
                {"states", report.states_explored},
                {"transitions", report.transitions}};
}

Record sweep_record_to_record(const SweepRecord& record) {
  Record out{{"record", record.report ? "instance" : "error"},
             {"index", record.index},
             {"instance", instance_to_record(record.system)}};
  if (record.report) {
    Record report = report_to_record(*record.report);
    for (auto& [k, v] : report.items()) out[k] = std::move(v);
  } else {
    out["error"] = record.error;
  }
  return out;
}

Record summary_to_record(const SweepSummary& summary) {
  Record games = Record::object();
  for (Game g : kAllGames) {
    const auto& counts = summary.per_game[static_cast<std::size_t>(g)];
    games[std::string(game_name(g))] = Record{{"yes", counts[0]}, {"no", counts[1]}, {"unknown", counts[2]}};
  }
  Record certs = Record::object();
  for (const auto& [k, v] : summary.certificates) certs[k] = v;
  return Record{{"record", "summary"},
                {"instances", summary.instances},
                {"errors", summary.errors},
                {"witnessed", summary.witnessed},
                {"witnessedFraction", summary.witnessed_fraction()},
                {"games", std::move(games)},
                {"certificates", std::move(certs)}};
}

std::string describe(const Certificate& certificate) {
  std::ostringstream out;
  out << certificate_name(certificate);
  if (const auto* c = std::get_if<ClosedStateGraph>(&certificate)) {
    out << " (states " << c->states_explored << ", depth " << c->depth_reached << ")";
  }
  return out.str();
}

std::string describe(const SearchOutcome& outcome) {
  std::ostringstream out;
  const SearchStats* stats = nullptr;
  if (const auto* f = std::get_if<Found>(&outcome)) {
    out << "found " << format_indices(f->match);
    stats = &f->stats;
  } else if (const auto* c = std::get_if<CertifiedNo>(&outcome)) {
    out << "certified-no " << describe(c->certificate);
    stats = &c->stats;
  } else {
    const auto& u = std::get<Unknown>(outcome);
    out << "unknown: " << bound_name(u.reason) << " bound hit";
    stats = &u.stats;
  }
  out << " [states " << stats->states << ", transitions " << stats->transitions << ", depth "
      << stats->depth_reached << "]";
  return out.str();
}

std::string describe(const GameStatus& status) {
  std::ostringstream out;
  if (const auto* y = std::get_if<DecidedYes>(&status.value)) {
    out << "yes " << format_indices(y->match);
  } else if (const auto* n = std::get_if<DecidedNo>(&status.value)) {
    out << "no " << describe(n->certificate);
    if (n->certified_game) out << " on " << game_name(*n->certified_game);
  } else {
    out << "unknown (" << bound_name(std::get<Undecided>(status.value).reason) << " bound)";
  }
  out << " via " << origin_name(status.origin);
  if (status.source) out << " from " << game_name(*status.source);
  return out.str();
}

std::string describe(const AnalysisReport& report) {
  std::ostringstream out;
  for (Game g : kAllGames) {
    const GameResult& r = report[g];
    out << game_name(g) << std::string(4 - game_name(g).size(), ' ') << describe(r.status);
    if (r.raw) out << " (own result: " << describe(*r.raw) << ")";
    out << "\n";
  }
  out << "witnessed: " << (report.conjecture_witnessed ? "yes" : "no") << "\n";
  return out.str();
}

std::string describe(const SweepSummary& summary) {
  std::ostringstream out;
  out << "instances " << summary.instances << ", errors " << summary.errors << ", witnessed "
      << summary.witnessed << " (" << summary.witnessed_fraction() * 100.0 << "%)\n";
  for (Game g : kAllGames) {
    const auto& c = summary.per_game[static_cast<std::size_t>(g)];
    out << game_name(g) << std::string(4 - game_name(g).size(), ' ') << "yes " << c[0] << ", no "
        << c[1] << ", unknown " << c[2] << "\n";
  }
  for (const auto& [kind, count] : summary.certificates) out << kind << " " << count << "\n";
  return out.str();
}

}  // namespace tripost
