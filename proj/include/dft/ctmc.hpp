#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dft/galileo.hpp"

namespace dft {

inline constexpr std::size_t kDefaultStateBudget = 10000000;

namespace engine {

enum : std::uint8_t { kDormant = 0, kActive = 1, kFailed = 2, kFrozen = 3 };
enum : std::uint8_t { kPending = 0, kFired = 1, kDead = 2, kInert = 3 };

// Flattened model: events first, then evaluation gates in topological order.
// Functional dependencies are kept aside as trigger/dependent pairs; n-ary
// priority gates are binarized into left-folded chains; hot-spare gates
// become plain conjunctions.
class DftEngine {
 public:
  struct Event {
    std::string name;
    double rate = 0.0;
    double dormancy = 1.0;
    bool starts_dormant = false;
  };

  struct Gate {
    GateKind kind = GateKind::And;  // And, Or, Vote, Pand, Wsp (spare)
    int vote_k = 0;
    std::vector<int> inputs;  // node ids; spare gates: [primary, spare events...]
  };

  struct Fdep {
    int trigger;                  // node id
    std::vector<int> dependents;  // event ids
  };

  struct State {
    std::vector<std::uint8_t> ev;
    std::vector<std::uint8_t> gs;
    std::vector<std::int16_t> holder;  // spare gates: index into inputs

    friend bool operator==(const State&, const State&) = default;
  };

  explicit DftEngine(const DftModel& model) {
    auto split = model.state_split_spares();
    for (const auto& name : model.declaration_order) {
      auto it = model.events.find(name);
      if (it == model.events.end()) continue;
      Event e;
      e.name = name;
      e.rate = it->second.rate;
      e.dormancy = it->second.dormancy;
      e.starts_dormant = split.count(name) > 0;
      event_index_[name] = static_cast<int>(events_.size());
      events_.push_back(e);
    }
    // Gates in dependency order (children first).
    std::set<std::string> done;
    for (const auto& name : model.declaration_order)
      if (model.is_gate(name)) compile_gate(model, name, done);
    for (const auto& [name, g] : model.gates) {
      if (g.kind != GateKind::Fdep) continue;
      Fdep f;
      f.trigger = node_id(model, g.children[0]);
      for (std::size_t i = 1; i < g.children.size(); ++i)
        f.dependents.push_back(event_index_.at(g.children[i]));
      fdeps_.push_back(std::move(f));
    }
    toplevel_ = node_id(model, model.toplevel);
    for (std::size_t g = 0; g < gates_.size(); ++g)
      if (gates_[g].kind == GateKind::Wsp)
        for (std::size_t i = 1; i < gates_[g].inputs.size(); ++i)
          claimants_[gates_[g].inputs[i]].push_back(static_cast<int>(g));
  }

  std::size_t event_count() const { return events_.size(); }
  const std::vector<Event>& events() const { return events_; }

  State initial() const {
    State s;
    s.ev.assign(events_.size(), kActive);
    for (std::size_t i = 0; i < events_.size(); ++i)
      if (events_[i].starts_dormant) s.ev[i] = kDormant;
    s.gs.assign(gates_.size(), kPending);
    s.holder.assign(gates_.size(), 0);
    State out = s;
    settle(out);
    return out;
  }

  bool top_failed(const State& s) const { return node_failed(s, toplevel_); }

  // Failure transitions enabled in this state: (event id, rate).
  void enabled(const State& s, std::vector<std::pair<int, double>>& out) const {
    out.clear();
    for (std::size_t i = 0; i < events_.size(); ++i) {
      if (s.ev[i] == kActive) {
        out.emplace_back(static_cast<int>(i), events_[i].rate);
      } else if (s.ev[i] == kDormant) {
        double r = events_[i].rate * events_[i].dormancy;
        if (r > 0.0) out.emplace_back(static_cast<int>(i), r);
      }
    }
  }

  // Fails one event and closes the instant: dependent events fail with their
  // trigger, spares activate as primaries fail, gates fire or die.
  State apply(const State& s0, int event_id) const {
    State s = s0;
    std::vector<int> batch{event_id};
    while (!batch.empty()) {
      for (int e : batch)
        if (s.ev[e] == kDormant || s.ev[e] == kActive) s.ev[e] = kFailed;
      batch.clear();
      sweep_gates(s);
      for (const Fdep& f : fdeps_) {
        if (!node_failed(s, f.trigger)) continue;
        for (int d : f.dependents)
          if (s.ev[d] == kDormant || s.ev[d] == kActive) batch.push_back(d);
      }
    }
    settle(s);
    return s;
  }

  std::string key(const State& s) const {
    std::string k;
    k.reserve(s.ev.size() + s.gs.size() + 2 * s.holder.size());
    k.append(reinterpret_cast<const char*>(s.ev.data()), s.ev.size());
    k.append(reinterpret_cast<const char*>(s.gs.data()), s.gs.size());
    k.append(reinterpret_cast<const char*>(s.holder.data()), 2 * s.holder.size());
    return k;
  }

 private:
  int node_id(const DftModel& model, const std::string& name) const {
    if (model.is_event(name)) return event_index_.at(name);
    return static_cast<int>(events_.size()) + gate_index_.at(name);
  }

  bool is_event_node(int n) const { return n < static_cast<int>(events_.size()); }
  int gate_of(int n) const { return n - static_cast<int>(events_.size()); }

  bool node_failed(const State& s, int n) const {
    return is_event_node(n) ? s.ev[n] == kFailed : s.gs[gate_of(n)] == kFired;
  }

  // A node that can never fail any more cannot fire the gates above it.
  bool node_never_fails(const State& s, int n) const {
    if (is_event_node(n)) return s.ev[n] == kFrozen;
    std::uint8_t g = s.gs[gate_of(n)];
    return g == kDead || g == kInert;
  }

  void compile_gate(const DftModel& model, const std::string& name, std::set<std::string>& done) {
    if (done.count(name)) return;
    done.insert(name);
    const GateNode& g = model.gates.at(name);
    if (g.kind == GateKind::Fdep) return;
    for (const auto& c : g.children)
      if (model.is_gate(c)) compile_gate(model, c, done);

    Gate out;
    std::vector<int> kids;
    for (const auto& c : g.children) kids.push_back(node_id(model, c));
    switch (g.kind) {
      case GateKind::And:
      case GateKind::Hsp: out.kind = GateKind::And; out.inputs = kids; break;
      case GateKind::Or: out.kind = GateKind::Or; out.inputs = kids; break;
      case GateKind::Vote:
        out.kind = GateKind::Vote;
        out.vote_k = g.vote_k;
        out.inputs = kids;
        break;
      case GateKind::Wsp:
      case GateKind::Csp: out.kind = GateKind::Wsp; out.inputs = kids; break;
      case GateKind::Pand: {
        // Left-folded binary chain; intermediate links are synthetic.
        int acc = kids[0];
        for (std::size_t i = 1; i + 1 < kids.size(); ++i) {
          Gate link;
          link.kind = GateKind::Pand;
          link.inputs = {acc, kids[i]};
          acc = static_cast<int>(events_.size()) + static_cast<int>(gates_.size());
          gates_.push_back(std::move(link));
        }
        out.kind = GateKind::Pand;
        out.inputs = {acc, kids.back()};
        break;
      }
      default: throw Error("internal: unexpected gate kind in engine");
    }
    gate_index_[name] = static_cast<int>(gates_.size());
    gates_.push_back(std::move(out));
  }

  void sweep_gates(State& s) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t g = 0; g < gates_.size(); ++g) {
        if (s.gs[g] != kPending) continue;
        const Gate& gate = gates_[g];
        switch (gate.kind) {
          case GateKind::And: {
            bool all = true;
            for (int in : gate.inputs) all = all && node_failed(s, in);
            if (all) {
              s.gs[g] = kFired;
              changed = true;
            }
            break;
          }
          case GateKind::Or: {
            for (int in : gate.inputs)
              if (node_failed(s, in)) {
                s.gs[g] = kFired;
                changed = true;
                break;
              }
            break;
          }
          case GateKind::Vote: {
            int count = 0;
            for (int in : gate.inputs) count += node_failed(s, in) ? 1 : 0;
            if (count >= gate.vote_k) {
              s.gs[g] = kFired;
              changed = true;
            }
            break;
          }
          case GateKind::Pand: {
            if (node_failed(s, gate.inputs[1]) && node_failed(s, gate.inputs[0])) {
              s.gs[g] = kFired;
              changed = true;
            }
            break;
          }
          case GateKind::Wsp: {
            while (s.gs[g] == kPending && node_failed(s, gate.inputs[s.holder[g]])) {
              int next = -1;
              for (std::size_t i = 1; i < gate.inputs.size(); ++i)
                if (s.ev[gate.inputs[i]] == kDormant) {
                  next = static_cast<int>(i);
                  break;
                }
              if (next < 0) {
                s.gs[g] = kFired;
                s.holder[g] = -1;
                changed = true;
              } else {
                s.ev[gate.inputs[next]] = kActive;
                s.holder[g] = static_cast<std::int16_t>(next);
                changed = true;
              }
            }
            break;
          }
          default: break;
        }
      }
    }
  }

  // Post-instant resolution: gates that can no longer fire are dead, and
  // events with no live observer are frozen out of the exploration. Freezing
  // can expose more dead gates (and vice versa), so iterate to a fixpoint.
  void settle(State& s) const {
    while (true) {
      bool changed = true;
      bool any = false;
      while (changed) {
        changed = false;
        for (std::size_t g = 0; g < gates_.size(); ++g) {
          if (s.gs[g] != kPending) continue;
          const Gate& gate = gates_[g];
          bool dead = false;
          switch (gate.kind) {
            case GateKind::And: {
              for (int in : gate.inputs) dead = dead || node_never_fails(s, in);
              break;
            }
            case GateKind::Or: {
              dead = true;
              for (int in : gate.inputs) dead = dead && node_never_fails(s, in);
              break;
            }
            case GateKind::Vote: {
              int possible = 0;
              for (int in : gate.inputs)
                possible += (node_failed(s, in) || !node_never_fails(s, in)) ? 1 : 0;
              dead = possible < gate.vote_k;
              break;
            }
            case GateKind::Pand: {
              // Order violated, or a link that can never fail.
              if (node_failed(s, gate.inputs[1]) && !node_failed(s, gate.inputs[0])) dead = true;
              if (node_never_fails(s, gate.inputs[0]) || node_never_fails(s, gate.inputs[1]))
                dead = true;
              break;
            }
            case GateKind::Wsp: {
              dead = node_never_fails(s, gate.inputs[s.holder[g] < 0 ? 0 : s.holder[g]]);
              break;
            }
            default: break;
          }
          if (dead) {
            s.gs[g] = kDead;
            if (gate.kind == GateKind::Wsp) s.holder[g] = -1;
            changed = true;
            any = true;
          }
        }
      }
      if (freeze(s)) any = true;
      if (!any) break;
    }
  }

  bool freeze(State& s) const {
    std::vector<char> ev_mark(events_.size(), 0), gate_mark(gates_.size(), 0);
    std::deque<int> todo{toplevel_};
    auto push = [&](int n) { todo.push_back(n); };

    auto drain = [&] {
      while (!todo.empty()) {
        int n = todo.front();
        todo.pop_front();
        if (is_event_node(n)) {
          ev_mark[n] = 1;
          continue;
        }
        int g = gate_of(n);
        if (gate_mark[g]) continue;
        gate_mark[g] = 1;
        if (s.gs[g] != kPending) continue;  // resolved: inputs no longer matter here
        const Gate& gate = gates_[g];
        if (gate.kind == GateKind::Wsp) {
          push(gate.inputs[s.holder[g] < 0 ? 0 : s.holder[g]]);
          for (std::size_t i = 1; i < gate.inputs.size(); ++i) {
            int sp = gate.inputs[i];
            if (s.ev[sp] != kDormant) continue;
            ev_mark[sp] = 1;
            auto it = claimants_.find(sp);
            if (it != claimants_.end())
              for (int other : it->second)
                if (s.gs[other] == kPending)
                  push(static_cast<int>(events_.size()) + other);
          }
        } else {
          for (int in : gate.inputs) push(in);
        }
      }
    };

    drain();
    // Triggers stay live while they can still reach a live dependent.
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Fdep& f : fdeps_) {
        bool live_dep = false;
        for (int d : f.dependents)
          live_dep = live_dep || (ev_mark[d] && (s.ev[d] == kDormant || s.ev[d] == kActive));
        if (!live_dep) continue;
        if (is_event_node(f.trigger)) {
          if (!ev_mark[f.trigger]) {
            ev_mark[f.trigger] = 1;
            grew = true;
          }
        } else if (!gate_mark[gate_of(f.trigger)]) {
          push(f.trigger);
          drain();
          grew = true;
        }
      }
    }

    // Unmarked events are invisible from now on whatever their status; the
    // shared wildcard byte makes histories with equal futures collide.
    bool changed = false;
    for (std::size_t e = 0; e < events_.size(); ++e)
      if (!ev_mark[e] && s.ev[e] != kFrozen) {
        s.ev[e] = kFrozen;
        changed = true;
      }
    for (std::size_t g = 0; g < gates_.size(); ++g)
      if (!gate_mark[g] && s.gs[g] != kInert) {
        s.gs[g] = kInert;
        s.holder[g] = -1;
        changed = true;
      }
    return changed;
  }

  std::vector<Event> events_;
  std::vector<Gate> gates_;
  std::vector<Fdep> fdeps_;
  std::map<std::string, int> event_index_;
  std::map<std::string, int> gate_index_;
  std::map<int, std::vector<int>> claimants_;
  int toplevel_ = 0;
};

}  // namespace engine

// Explicit-state continuous-time Markov chain with one merged absorbing state
// for every configuration in which the top event has occurred.
struct Ctmc {
  struct StateInfo {
    std::vector<std::uint8_t> event_status;  // empty for the merged failed state
    bool top_failed = false;
  };

  std::vector<StateInfo> states;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> transitions;
  std::vector<double> exit_rate;
  std::uint32_t initial = 0;
  std::set<std::uint32_t> absorbing_failed;

  std::size_t state_count() const { return states.size(); }
};

// Breadth-first exploration from the all-operational state. Dependent events
// fail atomically with their trigger (declaration order; no nondeterminism),
// spares activate as their gate loses its serving input, and events with no
// remaining path of influence to the top event are frozen so that equal
// futures collapse onto one state.
inline Ctmc build_ctmc(const DftModel& model, std::size_t state_budget = kDefaultStateBudget) {
  engine::DftEngine eng(model);
  Ctmc chain;

  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<engine::DftEngine::State> frontier_states;

  auto add_state = [&](const engine::DftEngine::State& s) -> std::uint32_t {
    std::string k = eng.key(s);
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    if (chain.states.size() >= state_budget)
      throw StateBudgetExceeded(state_budget, chain.states.size());
    std::uint32_t id = static_cast<std::uint32_t>(chain.states.size());
    index.emplace(std::move(k), id);
    chain.states.push_back({s.ev, false});
    chain.transitions.emplace_back();
    frontier_states.push_back(s);
    return id;
  };

  engine::DftEngine::State init = eng.initial();
  std::uint32_t absorbing = UINT32_MAX;
  auto absorbing_id = [&]() -> std::uint32_t {
    if (absorbing == UINT32_MAX) {
      absorbing = static_cast<std::uint32_t>(chain.states.size());
      chain.states.push_back({{}, true});
      chain.transitions.emplace_back();
      frontier_states.emplace_back();  // placeholder; never expanded
      chain.absorbing_failed.insert(absorbing);
    }
    return absorbing;
  };

  if (eng.top_failed(init)) {
    chain.initial = absorbing_id();
    chain.exit_rate.assign(chain.states.size(), 0.0);
    return chain;
  }

  chain.initial = add_state(init);
  std::vector<std::pair<int, double>> moves;
  for (std::uint32_t cur = 0; cur < chain.states.size(); ++cur) {
    if (chain.states[cur].top_failed) continue;
    const engine::DftEngine::State s = frontier_states[cur];
    eng.enabled(s, moves);
    std::map<std::uint32_t, double> outgoing;
    for (const auto& [ev, rate] : moves) {
      engine::DftEngine::State next = eng.apply(s, ev);
      std::uint32_t target = eng.top_failed(next) ? absorbing_id() : add_state(next);
      outgoing[target] += rate;
    }
    for (const auto& [to, rate] : outgoing)
      chain.transitions[cur].emplace_back(to, rate);
  }

  chain.exit_rate.assign(chain.states.size(), 0.0);
  for (std::size_t i = 0; i < chain.transitions.size(); ++i) {
    double sum = 0.0;
    for (const auto& [to, rate] : chain.transitions[i]) sum += rate;
    chain.exit_rate[i] = sum;
  }
  return chain;
}

namespace detail {

struct PoissonWindow {
  std::size_t left = 0;
  std::size_t right = 0;
  std::vector<double> weights;  // index k-left
};

// Poisson(lambda_t) probabilities with both discarded tails below tail_bound.
inline PoissonWindow poisson_window(double lambda_t, double tail_bound) {
  PoissonWindow w;
  if (lambda_t <= 0.0) {
    w.weights = {1.0};
    return w;
  }
  const double log_lt = std::log(lambda_t);
  double log_p = -lambda_t;  // log pmf at k=0
  double cum = 0.0;
  std::vector<double> pmf;
  const std::size_t hard_cap =
      static_cast<std::size_t>(lambda_t + 12.0 * std::sqrt(lambda_t) + 64.0);
  std::size_t k = 0;
  bool left_set = false;
  for (;; ++k) {
    double p = std::exp(log_p);
    cum += p;
    if (!left_set && cum > tail_bound) {
      w.left = k;
      left_set = true;
    }
    if (left_set) pmf.push_back(p);
    if (cum >= 1.0 - tail_bound || k > hard_cap) break;
    log_p += log_lt - std::log(static_cast<double>(k + 1));
  }
  if (!left_set) {
    w.left = k;
    pmf.push_back(std::exp(log_p));
  }
  w.right = k;
  w.weights = std::move(pmf);
  return w;
}

}  // namespace detail

// Probability that the chain is absorbed in a failed state by time t, via
// uniformization: Poisson-weighted powers of the uniformized jump kernel,
// truncated so the discarded tails stay under the requested bound.
inline double transient_failure_probability(const Ctmc& chain, double t, double tol = 1e-10) {
  if (t < 0.0) throw Error("time bound must be nonnegative");
  if (tol <= 0.0) throw Error("tolerance must be positive");
  auto absorbed_mass = [&](const std::vector<double>& pi) {
    double m = 0.0;
    for (std::uint32_t a : chain.absorbing_failed) m += pi[a];
    return m;
  };

  std::vector<double> pi(chain.states.size(), 0.0);
  pi[chain.initial] = 1.0;
  if (t == 0.0 || chain.absorbing_failed.empty()) return absorbed_mass(pi);

  double uniform_rate = 0.0;
  for (double r : chain.exit_rate) uniform_rate = std::max(uniform_rate, r);
  if (uniform_rate == 0.0) return absorbed_mass(pi);

  detail::PoissonWindow win = detail::poisson_window(uniform_rate * t, tol / 2.0);
  std::vector<double> next(chain.states.size(), 0.0);
  double result = 0.0;
  for (std::size_t k = 0;; ++k) {
    if (k >= win.left) {
      double w = win.weights[k - win.left];
      result += w * absorbed_mass(pi);
      if (k == win.right) break;
    }
    // pi <- pi * (I + Q / uniform_rate)
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < pi.size(); ++i) {
      double mass = pi[i];
      if (mass == 0.0) continue;
      next[i] += mass * (1.0 - chain.exit_rate[i] / uniform_rate);
      for (const auto& [to, rate] : chain.transitions[i]) next[to] += mass * (rate / uniform_rate);
    }
    pi.swap(next);
  }
  return std::min(1.0, std::max(0.0, result));
}

// Expected absorption time from the initial state. Every transition fails at
// least one more event, so the chain is acyclic and the transient linear
// system solves by one backward pass in reverse topological order. Returns
// +infinity when some reachable region never fails.
inline double mean_time_to_failure(const Ctmc& chain) {
  const double inf = std::numeric_limits<double>::infinity();
  if (chain.absorbing_failed.empty()) return inf;

  const std::size_t n = chain.states.size();
  std::vector<std::uint32_t> indegree(n, 0);
  for (const auto& row : chain.transitions)
    for (const auto& [to, _] : row) ++indegree[to];
  std::vector<std::uint32_t> order;
  order.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    if (indegree[i] == 0) order.push_back(i);
  for (std::size_t head = 0; head < order.size(); ++head)
    for (const auto& [to, _] : chain.transitions[order[head]])
      if (--indegree[to] == 0) order.push_back(to);
  if (order.size() != n) throw Error("internal: transition graph is not acyclic");

  std::vector<double> absorb_prob(n, 0.0);
  std::vector<double> mean_time(n, 0.0);
  for (std::uint32_t a : chain.absorbing_failed) absorb_prob[a] = 1.0;

  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::uint32_t i = *it;
    if (chain.states[i].top_failed) continue;
    double exit = chain.exit_rate[i];
    if (exit == 0.0) continue;  // operational trap: the system never fails here
    double p = 0.0, m = 0.0;
    for (const auto& [to, rate] : chain.transitions[i]) {
      p += rate * absorb_prob[to];
      m += rate * mean_time[to];
    }
    absorb_prob[i] = p / exit;
    mean_time[i] = (1.0 + m) / exit;
  }
  if (absorb_prob[chain.initial] < 1.0 - 1e-9) return inf;
  return mean_time[chain.initial];
}

// Plain-text export: one `from to rate` line per transition, plus a label
// file describing each state.
inline std::string export_transitions(const Ctmc& chain) {
  std::string out;
  char buf[96];
  for (std::size_t i = 0; i < chain.transitions.size(); ++i)
    for (const auto& [to, rate] : chain.transitions[i]) {
      std::snprintf(buf, sizeof buf, "%zu %u %.17g\n", i, to, rate);
      out += buf;
    }
  return out;
}

inline std::string export_state_labels(const Ctmc& chain, const DftModel& model) {
  engine::DftEngine eng(model);
  std::string out;
  for (std::size_t i = 0; i < chain.states.size(); ++i) {
    out += std::to_string(i) + ":";
    if (chain.states[i].top_failed) {
      out += " FAILED\n";
      continue;
    }
    const auto& ev = chain.states[i].event_status;
    for (std::size_t e = 0; e < ev.size(); ++e) {
      const char* tag = ev[e] == engine::kDormant ? "dormant"
                        : ev[e] == engine::kActive ? "active"
                        : ev[e] == engine::kFailed ? "failed"
                                                   : "inert";
      out += " " + eng.events()[e].name + "=" + tag;
    }
    out += "\n";
  }
  return out;
}

}  // namespace dft
