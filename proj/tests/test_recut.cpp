#include "support.hpp"

#include "fsmforge/errors.hpp"
#include "fsmforge/recut.hpp"

#include <gtest/gtest.h>

using namespace fsmforge;

namespace {

std::set<std::string> gate_outputs(const Netlist& nl)
{
  std::set<std::string> out;
  for (const auto& g : nl.gates()) {
    out.insert(nl.net(g.output).name);
  }
  return out;
}

std::vector<std::string> names(const Netlist& nl, std::span<const NetId> ids)
{
  std::vector<std::string> out;
  for (NetId n : ids) {
    out.push_back(nl.net(n).name);
  }
  return out;
}

// Two-register example plus `extra` gates off the state logic, feeding an output.
std::string two_reg_with_fanout(std::size_t extra)
{
  std::string text = test::two_reg_bench;
  text += "OUTPUT(z" + std::to_string(extra - 1) + ")\n";
  for (std::size_t i = 0; i < extra; ++i) {
    const std::string prev = i == 0 ? "U1" : "z" + std::to_string(i - 1);
    text += "z" + std::to_string(i) + " = XOR(" + prev + ", U3)\n";
  }
  return text;
}

}  // namespace

TEST(Recut, TwoReg)
{
  const auto nl = parse_bench(test::two_reg_bench);
  const auto cut = fsm_cut(nl, test::two_reg_spec());
  EXPECT_EQ(gate_outputs(cut.netlist), (std::set<std::string>{"U1", "U3", "U5"}));
  EXPECT_EQ(cut.netlist.registers().size(), 2u);
  EXPECT_EQ(names(cut.netlist, cut.free_inputs), std::vector<std::string>{"I0"});
  EXPECT_EQ(names(cut.netlist, cut.q_nets()), (std::vector<std::string>{"U2", "U4"}));
  EXPECT_EQ(names(cut.netlist, cut.d_nets()), (std::vector<std::string>{"U1", "U3"}));
  EXPECT_EQ(cut_stats(cut), (CutStats{1, 2, 3}));
  EXPECT_EQ(format_stats(cut_stats(cut)), "inputs=1 regs=2 gates=3");
}

TEST(Recut, FanoutOnlyLogicIgnored)
{
  const auto base = fsm_cut(parse_bench(test::two_reg_bench), test::two_reg_spec());
  const auto padded = fsm_cut(parse_bench(two_reg_with_fanout(100)), test::two_reg_spec());
  EXPECT_EQ(write_bench(base.netlist), write_bench(padded.netlist));
  EXPECT_EQ(cut_stats(padded), cut_stats(base));
}

TEST(Recut, EmptyCone)
{
  const auto nl = parse_bench("INPUT(a)\nINPUT(b)\nq = DFF(a)\nr = DFF(x)\nx = AND(a, b)\n");
  const auto cut = fsm_cut(nl, FsmSpec{{"q"}, StateWord::parse("0")});
  EXPECT_EQ(cut_stats(cut), (CutStats{1, 1, 0}));
  EXPECT_EQ(names(cut.netlist, cut.free_inputs), std::vector<std::string>{"a"});
}

TEST(Recut, NonStateRegistersBecomeInputs)
{
  const auto nl = parse_bench("INPUT(a)\ns = DFF(x)\nt = DFF(y)\nx = AND(a, t)\ny = NOT(s)\n");
  const auto cut = fsm_cut(nl, FsmSpec{{"s"}, StateWord::parse("0")});
  EXPECT_EQ(names(cut.netlist, cut.free_inputs), (std::vector<std::string>{"a", "t"}));
  EXPECT_TRUE(cut.netlist.is_primary_input(cut.netlist.find_net("t").value()));
  EXPECT_EQ(cut_stats(cut), (CutStats{2, 1, 1}));
}

TEST(Recut, SpecErrors)
{
  const auto nl = parse_bench(test::two_reg_bench);
  EXPECT_THROW((void)fsm_cut(nl, FsmSpec{{"U2", "BOGUS"}, StateWord::parse("00")}), SpecError);
  EXPECT_THROW((void)fsm_cut(nl, FsmSpec{{"U2", "U2"}, StateWord::parse("00")}), SpecError);
  EXPECT_THROW((void)fsm_cut(nl, FsmSpec{{}, StateWord{}}), SpecError);
  EXPECT_THROW((void)fsm_cut(nl, FsmSpec{{"U1"}, StateWord::parse("0")}), SpecError);  // a gate, not a DFF
}

TEST(Recut, StateOrderFollowsSpec)
{
  const auto nl = parse_bench(test::two_reg_bench);
  const auto cut = fsm_cut(nl, FsmSpec{{"U4", "U2"}, StateWord::parse("11")});
  EXPECT_EQ(names(cut.netlist, cut.q_nets()), (std::vector<std::string>{"U4", "U2"}));
}

TEST(Recut, SplitRegisterList)
{
  EXPECT_EQ(split_register_list("U2,U4"), (std::vector<std::string>{"U2", "U4"}));
  EXPECT_EQ(split_register_list(" a , b ,c"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Recut, IdempotentOnRandomNetlists)
{
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto nl = test::random_netlist(seed, 4, 5, 50);
    FsmSpec spec{{"r0", "r2"}, StateWord::parse("00")};
    const auto once = fsm_cut(nl, spec);
    const auto twice = fsm_cut(once.netlist, spec);
    ASSERT_EQ(write_bench(once.netlist), write_bench(twice.netlist)) << "seed " << seed;
    ASSERT_EQ(cut_stats(once), cut_stats(twice));
    EXPECT_LE(once.visited, nl.net_count() + nl.gates().size());
  }
}

TEST(Recut, MonotoneUnderNoise)
{
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto nl = test::random_netlist(seed, 4, 4, 40);
    FsmSpec spec{{"r1", "r3"}, StateWord::parse("00")};
    const auto padded = testkit::pad_with_noise(nl, 300, 20, seed);
    ASSERT_EQ(write_bench(fsm_cut(nl, spec).netlist), write_bench(fsm_cut(padded, spec).netlist)) << seed;
  }
}

TEST(Recut, WholeNetlistView)
{
  const auto nl = parse_bench("INPUT(a)\ns = DFF(x)\nt = DFF(y)\nx = AND(a, t)\ny = NOT(s)\nz = OR(a, s)\n");
  const auto whole = whole_netlist(nl, FsmSpec{{"s"}, StateWord::parse("0")});
  EXPECT_EQ(whole.netlist.gates().size(), 3u);
  // t stays a register; only its output is treated as free
  EXPECT_EQ(whole.netlist.registers().size(), 2u);
  EXPECT_EQ(whole.state_registers.size(), 1u);
  EXPECT_EQ(names(whole.netlist, whole.free_inputs), (std::vector<std::string>{"a", "t"}));
}
