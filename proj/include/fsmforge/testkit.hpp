#pragma once

#include "fsmforge/netlist.hpp"
#include "fsmforge/recut.hpp"
#include "fsmforge/topology.hpp"

#include <cstdint>
#include <set>
#include <vector>

#include <json.hpp>

namespace fsmforge::testkit {

/// SplitMix64 (Steele, Lea, Flood 2014). Bounded draws use plain modulo
/// reduction so sequences are reproducible in any language.
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next()
  {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform-ish in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates.
  template<typename T>
  void shuffle(std::vector<T>& v)
  {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

private:
  std::uint64_t state_;
};

/// Ground-truth FSM with states 0..n_states-1; state 0 is the reset state.
struct FsmTruth
{
  std::uint32_t n_states = 0;
  std::uint32_t n_inputs = 0;
  /// transition[s][w] for input word w in [0, 2^n_inputs).
  std::vector<std::vector<std::uint32_t>> transition;
  /// Injective state encoding, all of the same width.
  std::vector<StateWord> encoding;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t width() const { return encoding.empty() ? 0 : encoding.front().width(); }
  [[nodiscard]] std::set<std::uint32_t> successors(std::uint32_t state) const;
};

/// Random FSM. `density` in [0, 1] scales the number of distinct
/// successors per state between 1 and min(n_states, 2^n_inputs). Every state
/// is reachable from state 0. Throws std::invalid_argument when
/// n_states is outside [1, 64], n_inputs above 6 or density outside [0, 1].
[[nodiscard]] FsmTruth generate(std::uint64_t seed, std::uint32_t n_states, std::uint32_t n_inputs, double density);

/// Parameters drawn from the seed: 2..64 states, 0..6 inputs, density in
/// [0.1, 1].
[[nodiscard]] FsmTruth generate_random(std::uint64_t seed);

/// Encoded successor-set projection of the transition map, BFS from state 0.
[[nodiscard]] TransitionGraph truth_topology(const FsmTruth& truth);

struct Design
{
  Netlist netlist;
  FsmSpec spec;
};

/// Two-level sum-of-products realization: one AND minterm per (state,
/// input word) row whose next state has any bit set, one OR per state bit.
/// Single-literal minterms and single-term sums collapse to the literal.
/// Inputs are named in0.., state registers s0.. (bit i is register s<i>).
[[nodiscard]] Design synthesize(const FsmTruth& truth);

/// Appends random logic and registers that read from anywhere but never
/// feed the original registers, so cuts and topologies are unchanged.
[[nodiscard]] Netlist pad_with_noise(const Netlist& netlist,
                                     std::size_t n_extra_gates,
                                     std::size_t n_extra_regs,
                                     std::uint64_t seed);

/// High-ACPT design: `width` state bits over `n_inputs` inputs, where bit
/// i's next value is the XOR of state bit (i+1) mod width and all inputs
/// except a seeded pair. Every transition condition therefore needs every
/// input, giving 2^n_inputs cubes per state. Requires 2*width <= n_inputs.
[[nodiscard]] Design xor_fsm(std::uint64_t seed, std::uint32_t width, std::uint32_t n_inputs);

/// 3-bit (or any width) binary up-counter without inputs, reset 0...0.
[[nodiscard]] Design counter(std::uint32_t width);

[[nodiscard]] nlohmann::json to_json(const FsmTruth& truth);

}  // namespace fsmforge::testkit
