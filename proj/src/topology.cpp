#include "fsmforge/topology.hpp"

#include "fsmforge/version.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace fsmforge {

StateWord StateWord::parse(std::string_view text)
{
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("state word '" + std::string(text) + "' must contain only 0 and 1");
    }
    bits.push_back(c == '1');
  }
  return StateWord(std::move(bits));
}

std::string StateWord::str() const
{
  std::string out(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i]) {
      out[i] = '1';
    }
  }
  return out;
}

std::set<StateWord> TransitionGraph::successors(const StateWord& s) const
{
  std::set<StateWord> out;
  for (auto it = edges.lower_bound(Transition{s, StateWord{}}); it != edges.end() && it->first == s; ++it) {
    out.insert(it->second);
  }
  return out;
}

double TransitionGraph::wall_time_ms() const
{
  return std::chrono::duration<double, std::milli>(wall_time).count();
}

bool same_topology(const TransitionGraph& a, const TransitionGraph& b)
{
  return a.reset == b.reset && a.states == b.states && a.edges == b.edges;
}

std::string to_dot(const TransitionGraph& graph)
{
  std::ostringstream out;
  out << "digraph fsm {\n";
  for (const auto& s : graph.states) {
    out << "  \"" << s.str() << "\"";
    if (s == graph.reset) {
      out << " [peripheries=2]";
    }
    out << ";\n";
  }
  for (const auto& [from, to] : graph.edges) {
    out << "  \"" << from.str() << "\" -> \"" << to.str() << "\";\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const TransitionGraph& graph)
{
  using nlohmann::json;
  json states = json::array();
  for (const auto& s : graph.states) {
    states.push_back(s.str());
  }
  json edges = json::array();
  for (const auto& [from, to] : graph.edges) {
    edges.push_back(json::array({from.str(), to.str()}));
  }
  return json{
    {"version", std::string(version)},
    {"reset", graph.reset.str()},
    {"states", states},
    {"edges", edges},
    {"solve_calls", graph.solve_calls},
    {"wall_time_ms", graph.wall_time_ms()},
    {"complete", graph.complete},
  };
}

namespace detail {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body)
{
  const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      body(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) {
              failure = std::current_exception();
            }
            next = n;
          }
        }
      });
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
}

}  // namespace detail

}  // namespace fsmforge
