#include "tripost/analyzer.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <thread>

#include "tripost/filters.hpp"

namespace tripost {

namespace {

constexpr std::size_t kSweepBatch = 256;

GameResult from_search(const SearchOutcome& outcome) {
  GameResult r;
  if (const auto* f = std::get_if<Found>(&outcome)) {
    r.status = {DecidedYes{f->match}, Origin::Search, std::nullopt};
    r.search = f->stats;
  } else if (const auto* c = std::get_if<CertifiedNo>(&outcome)) {
    r.status = {DecidedNo{c->certificate, std::nullopt}, Origin::Search, std::nullopt};
    r.search = c->stats;
  } else {
    const auto& u = std::get<Unknown>(outcome);
    r.status = {Undecided{u.reason, u.fired}, Origin::Search, std::nullopt};
    r.search = u.stats;
  }
  return r;
}

}  // namespace

std::string_view status_name(StatusKind k) noexcept {
  switch (k) {
    case StatusKind::Yes: return "yes";
    case StatusKind::No: return "no";
    case StatusKind::Unknown: return "unknown";
  }
  return "?";
}

std::string_view origin_name(Origin o) noexcept {
  switch (o) {
    case Origin::Filter: return "filter";
    case Origin::Search: return "search";
    case Origin::Closure: return "closure";
  }
  return "?";
}

AnalysisReport analyze(const TriSystem& system, const SearchBounds& bounds) {
  require_valid(system);
  bounds.check();
  AnalysisReport report;

  for (Game g : kPairGames) {
    const PairSystem projected = project(system, g);
    if (auto cert = filter_pair(projected)) {
      report[g].status = {DecidedNo{std::move(*cert), std::nullopt}, Origin::Filter, std::nullopt};
    } else {
      report[g] = from_search(search_pair(projected, bounds));
    }
  }

  GameResult& tmb = report[Game::TopMiddleBottom];
  if (auto hit = filter_triple(system)) {
    tmb.status = {DecidedNo{std::move(hit->second), hit->first}, Origin::Filter, std::nullopt};
  } else {
    tmb = from_search(search_triple(system, bounds));
  }

  // Closure: a threefold match wins every pair game; a refuted pair game
  // refutes the threefold game.
  if (const auto* yes = std::get_if<DecidedYes>(&tmb.status.value)) {
    for (Game g : kPairGames) {
      GameResult& r = report[g];
      r.raw = r.status;
      r.status = {DecidedYes{yes->match}, Origin::Closure, Game::TopMiddleBottom};
    }
  } else if (!tmb.status.decided()) {
    for (Game g : kPairGames) {
      const auto* no = std::get_if<DecidedNo>(&report[g].status.value);
      if (!no) continue;
      tmb.raw = tmb.status;
      tmb.status = {DecidedNo{no->certificate, g}, Origin::Closure, g};
      break;
    }
  }

  for (const GameResult& r : report.games) {
    report.conjecture_witnessed = report.conjecture_witnessed || r.status.decided();
    if (r.search) {
      report.states_explored += r.search->states;
      report.transitions += r.search->transitions;
    }
  }
  return report;
}

InstanceStream stream_of(std::vector<TriSystem> systems) {
  auto data = std::make_shared<std::vector<TriSystem>>(std::move(systems));
  auto pos = std::make_shared<std::size_t>(0);
  return [data, pos]() -> std::optional<TriSystem> {
    if (*pos >= data->size()) return std::nullopt;
    return (*data)[(*pos)++];
  };
}

double SweepSummary::witnessed_fraction() const noexcept {
  const std::size_t analyzed = instances - errors;
  return analyzed == 0 ? 0.0 : static_cast<double>(witnessed) / static_cast<double>(analyzed);
}

void SweepSummary::add(const SweepRecord& record) {
  ++instances;
  if (!record.report) {
    ++errors;
    return;
  }
  if (record.report->conjecture_witnessed) ++witnessed;
  for (Game g : kAllGames) {
    const GameStatus& s = (*record.report)[g].status;
    ++per_game[static_cast<std::size_t>(g)][static_cast<std::size_t>(s.kind())];
    if (const auto* no = std::get_if<DecidedNo>(&s.value)) {
      ++certificates[std::string(certificate_name(no->certificate))];
    }
  }
}

SweepSummary sweep(const InstanceStream& source, const SearchBounds& bounds,
                   const std::function<void(const SweepRecord&)>& sink, unsigned threads) {
  bounds.check();
  if (threads == 0) threads = 1;
  SweepSummary summary;
  std::size_t next_index = 0;
  std::vector<SweepRecord> batch;

  auto analyze_one = [&bounds](SweepRecord& rec) {
    try {
      rec.report = analyze(rec.system, bounds);
    } catch (const Error& e) {
      rec.error = e.what();
    }
  };

  bool exhausted = false;
  while (!exhausted) {
    batch.clear();
    while (batch.size() < kSweepBatch) {
      std::optional<TriSystem> s = source();
      if (!s) {
        exhausted = true;
        break;
      }
      batch.push_back({next_index++, std::move(*s), std::nullopt, {}});
    }

    if (threads == 1 || batch.size() < 2) {
      for (auto& rec : batch) analyze_one(rec);
    } else {
      std::atomic<std::size_t> cursor{0};
      std::vector<std::jthread> workers;
      const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(batch.size()));
      for (unsigned w = 0; w < count; ++w) {
        workers.emplace_back([&] {
          for (std::size_t i = cursor++; i < batch.size(); i = cursor++) analyze_one(batch[i]);
        });
      }
    }

    for (const auto& rec : batch) {
      summary.add(rec);
      if (sink) sink(rec);
    }
  }
  return summary;
}

}  // namespace tripost
