#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dft/ctmc.hpp"
#include "dft/equivalence.hpp"
#include "dft/galileo.hpp"

namespace dft {

struct McEstimate {
  double p_hat = 0.0;
  std::uint64_t trials = 0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline double mc_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline McEstimate finish_estimate(std::uint64_t failures, std::uint64_t trials,
                                  std::uint64_t seed) {
  McEstimate est;
  est.trials = trials;
  est.seed = seed;
  est.p_hat = static_cast<double>(failures) / static_cast<double>(trials);
  est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials));
  return est;
}

}  // namespace detail

// Discrete-event estimate of the failure probability by time t. Each trial
// walks one trajectory: sample the race of the currently enabled exponential
// clocks, advance to the earliest, and apply the same spare-activation and
// dependency semantics as the chain builder (memorylessness makes resampling
// after each change of rates exact). Per-trial generators are derived from the
// seed, so results do not depend on scheduling.
inline McEstimate simulate(const DftModel& model, double t, std::uint64_t trials,
                           std::uint64_t seed) {
  if (trials < 1) throw ZeroTrials("at least one trial required");
  if (t < 0.0) throw Error("time bound must be nonnegative");
  engine::DftEngine eng(model);
  const engine::DftEngine::State init = eng.initial();

  std::uint64_t failures = 0;
  std::vector<std::pair<int, double>> moves;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(trial)));
    engine::DftEngine::State s = init;
    double clock = 0.0;
    if (t == 0.0) continue;
    while (true) {
      if (eng.top_failed(s)) {
        ++failures;
        break;
      }
      eng.enabled(s, moves);
      double total = 0.0;
      for (const auto& [_, r] : moves) total += r;
      if (total <= 0.0) break;  // nothing left that can fail
      double u = detail::mc_uniform(rng);
      clock += -std::log1p(-u) / total;
      if (clock > t) break;
      double pick = detail::mc_uniform(rng) * total;
      int chosen = moves.back().first;
      for (const auto& [ev, r] : moves) {
        if (pick < r) {
          chosen = ev;
          break;
        }
        pick -= r;
      }
      s = eng.apply(s, chosen);
    }
  }
  return detail::finish_estimate(failures, trials, seed);
}

// Fast path for models without spares: every event is active from the start,
// so one draw of all failure times and a single evaluation of the structure
// function decides a trial. Cross-checked against the trajectory path.
inline McEstimate simulate_static(const DftModel& model, double t, std::uint64_t trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw ZeroTrials("at least one trial required");
  if (!model.state_split_spares().empty())
    throw Error("static sampling applies only to spare-free models");
  galileo::StructureFunction sf = galileo::to_structure_function(model);

  std::set<std::string> var_set = free_variables(sf.term);
  std::vector<std::string> vars(var_set.begin(), var_set.end());
  std::map<std::string, int> slots;
  for (std::size_t i = 0; i < vars.size(); ++i) slots[vars[i]] = static_cast<int>(i);
  auto compiled = dft::detail::CompiledTerm::compile(sf.term, slots);
  std::vector<double> rates(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) rates[i] = model.events.at(vars[i]).rate;

  std::uint64_t failures = 0;
  std::vector<double> values(vars.size());
  std::vector<double> stack;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(trial)));
    for (std::size_t i = 0; i < vars.size(); ++i)
      values[i] = -std::log1p(-detail::mc_uniform(rng)) / rates[i];
    if (compiled.eval(values, stack) <= t) ++failures;
  }
  return detail::finish_estimate(failures, trials, seed);
}

}  // namespace dft
