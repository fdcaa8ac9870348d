#pragma once

#include <chrono>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fsmforge {

/// Value of the state register bank. Bit i belongs to state register i and
/// is rendered at string position i, so "101" means registers 0 and 2 are set.
class StateWord
{
public:
  StateWord() = default;
  explicit StateWord(std::vector<bool> bits) : bits_(std::move(bits)) {}
  explicit StateWord(std::size_t width) : bits_(width, false) {}

  /// Throws std::invalid_argument on characters other than '0'/'1'.
  [[nodiscard]] static StateWord parse(std::string_view text);

  [[nodiscard]] std::size_t width() const { return bits_.size(); }
  [[nodiscard]] bool operator[](std::size_t i) const { return bits_[i]; }
  void set(std::size_t i, bool value) { bits_[i] = value; }
  [[nodiscard]] const std::vector<bool>& bits() const { return bits_; }
  [[nodiscard]] std::string str() const;

  // Lexicographic on bits, which for equal widths matches the order of the
  // rendered strings.
  friend auto operator<=>(const StateWord&, const StateWord&) = default;
  friend bool operator==(const StateWord&, const StateWord&) = default;

private:
  std::vector<bool> bits_;
};

struct StateWordHash
{
  std::size_t operator()(const StateWord& s) const { return std::hash<std::vector<bool>>{}(s.bits()); }
};

using Transition = std::pair<StateWord, StateWord>;

/// FSM topology: the reachable states and the successor relation, without
/// transition conditions.
struct TransitionGraph
{
  StateWord reset;
  std::set<StateWord> states;
  std::set<Transition> edges;
  std::uint64_t solve_calls = 0;
  std::chrono::nanoseconds wall_time{0};
  /// False when a guard (state cap, solver budget) stopped enumeration early.
  bool complete = true;

  [[nodiscard]] std::set<StateWord> successors(const StateWord& s) const;
  [[nodiscard]] double wall_time_ms() const;
};

/// Same states, edges and reset; counters and timings are ignored.
[[nodiscard]] bool same_topology(const TransitionGraph& a, const TransitionGraph& b);

/// `digraph fsm { ... }` with nodes and edges in sorted order; the reset
/// node carries `[peripheries=2]`. Contains nothing engine-specific, so two
/// engines that agree on the topology produce identical bytes.
[[nodiscard]] std::string to_dot(const TransitionGraph& graph);

/// {version, reset, states[], edges[][2], solve_calls, wall_time_ms, complete}
[[nodiscard]] nlohmann::json to_json(const TransitionGraph& graph);

/// Options shared by both enumeration engines.
struct EnumOptions
{
  /// Cap on discovered states; exceeding it yields a partial graph.
  std::size_t max_states = std::size_t{1} << 20;
  /// Workers processing the BFS frontier. Output does not depend on it.
  unsigned threads = 1;
  /// Additional start states explored after the reset state's component.
  std::vector<StateWord> extra_starts;
};

namespace detail {

/// Successors of one state as reported by an engine, in discovery order.
template<typename Payload>
struct Step
{
  std::vector<StateWord> next;
  std::vector<Payload> payload;  // parallel to `next`, may be empty
  std::uint64_t solve_calls = 0;
  bool complete = true;
};

/// Runs body(i) for i in [0, n) on up to `threads` workers. The first
/// exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace detail

/// Level-synchronous BFS from the reset state (then any extra starts).
/// `expand(state)` returns a detail::Step and may run concurrently; results
/// are merged in frontier order, so discovery order matches a sequential
/// FIFO worklist whatever the thread count. `record(edge, payload)` is
/// called once per recorded edge, on the calling thread.
template<typename Payload, typename Expand, typename Record>
TransitionGraph explore(const StateWord& reset, const EnumOptions& options, Expand&& expand, Record&& record)
{
  const auto t0 = std::chrono::steady_clock::now();
  TransitionGraph graph;
  graph.reset = reset;

  std::vector<StateWord> starts{reset};
  starts.insert(starts.end(), options.extra_starts.begin(), options.extra_starts.end());

  std::vector<StateWord> frontier;
  std::vector<detail::Step<Payload>> results;

  const auto discover = [&](const StateWord& s, std::vector<StateWord>& next_frontier) -> bool {
    if (graph.states.count(s) != 0) {
      return true;
    }
    if (graph.states.size() >= options.max_states) {
      graph.complete = false;
      return false;
    }
    graph.states.insert(s);
    next_frontier.push_back(s);
    return true;
  };

  for (const auto& s : starts) {
    if (s.width() != reset.width()) {
      throw std::invalid_argument("start state width differs from reset width");
    }
    std::vector<StateWord> start_frontier;
    discover(s, start_frontier);
    frontier = std::move(start_frontier);
    while (!frontier.empty()) {
      results.assign(frontier.size(), {});
      detail::parallel_for(frontier.size(), options.threads, [&](std::size_t i) { results[i] = expand(frontier[i]); });

      std::vector<StateWord> next_frontier;
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        auto& step = results[i];
        graph.solve_calls += step.solve_calls;
        graph.complete = graph.complete && step.complete;
        for (std::size_t k = 0; k < step.next.size(); ++k) {
          if (!discover(step.next[k], next_frontier)) {
            continue;
          }
          Transition edge{frontier[i], step.next[k]};
          if (step.payload.empty()) {
            record(edge, Payload{});
          } else {
            record(edge, std::move(step.payload[k]));
          }
          graph.edges.insert(std::move(edge));
        }
      }
      frontier = std::move(next_frontier);
    }
  }
  graph.wall_time = std::chrono::steady_clock::now() - t0;
  return graph;
}

}  // namespace fsmforge
