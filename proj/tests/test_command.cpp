#include <gtest/gtest.h>

#include "evpos/command.hpp"

namespace evpos {
namespace {

const char* const kDoc = R"(frame w: w1 w2 w3
frame horse: a nab nb
frame w10: a b c d e f g h i j
mass m1 over w:
  {w1} 0.5
  {w1 w2} 0.3
  {w1 w2 w3} 0.2
mass m_vacuous over w:
  {w1 w2 w3} 1
mass split over w:
  {w1} 0.5
  {w2 w3} 0.5
pi p1 over w: 1.0 0.7 0.3
prob bayes over horse: 0.5 0 0.5
scale ages: 20..22
fuzzy young over ages: (20,1) (22,0)
prob ages_prior over ages: 0.25 0.25 0.5
statement mary over w10: core {a b c} alpha 0.8
)";

class CommandTest : public ::testing::Test {
 protected:
  Document doc = parse_document(kDoc);

  std::string run(Verb verb, std::vector<std::string> args, bool csv = false) {
    Command cmd;
    cmd.verb = verb;
    cmd.args = std::move(args);
    cmd.csv = csv;
    return execute(doc, cmd);
  }

  Errc failure(const Command& cmd) {
    try {
      execute(doc, cmd);
    } catch (const Error& e) {
      return e.code();
    }
    ADD_FAILURE() << "no error";
    return Errc::syntax;
  }
};

TEST(FormatNumber, FixedSixDecimals) {
  EXPECT_EQ(format_number(0.8), "0.800000");
  EXPECT_EQ(format_number(-0.0), "0.000000");
  EXPECT_EQ(format_number(-1e-12), "0.000000");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333");
}

TEST_F(CommandTest, Query) {
  EXPECT_EQ(run(Verb::query, {"Bel", "m1", "{w1 w2}"}), "Bel = 0.800000\n");
  EXPECT_EQ(run(Verb::query, {"Pl", "m1", "{w2}"}), "Pl = 0.500000\n");
  EXPECT_EQ(run(Verb::query, {"Pi", "p1", "{w2 w3}"}), "Pi = 0.700000\n");
  EXPECT_EQ(run(Verb::query, {"N", "p1", "{w1}"}), "N = 0.300000\n");
  EXPECT_EQ(run(Verb::query, {"Bel", "bayes", "{nab}"}), "Bel = 0.000000\n");
  EXPECT_EQ(run(Verb::query, {"Bel", "m1", "{w1 w2}"}, true), "measure,object,subset,value\nBel,m1,{w1 w2},0.800000\n");
}

TEST_F(CommandTest, QueryErrors) {
  Command cmd;
  cmd.args = {"Pi", "split", "{w1}"};
  EXPECT_EQ(failure(cmd), Errc::not_consonant);
  cmd.args = {"Bel", "nope", "{w1}"};
  EXPECT_EQ(failure(cmd), Errc::unknown_name);
  cmd.args = {"Bel", "m1", "{w9}"};
  EXPECT_EQ(failure(cmd), Errc::unknown_label);
  cmd.args = {"Bel", "mary", "{a}"};
  EXPECT_EQ(failure(cmd), Errc::kind_mismatch);
}

TEST_F(CommandTest, Convert) {
  EXPECT_EQ(run(Verb::convert, {"p1"}),
            "mass p1_mass over w:\n  {w1} 0.300000\n  {w1 w2} 0.400000\n  {w1 w2 w3} 0.300000\n");
  EXPECT_EQ(run(Verb::convert, {"m1"}), "pi m1_pi over w: 1.000000 0.500000 0.200000\n");
  Command cmd;
  cmd.verb = Verb::convert;
  cmd.args = {"split"};
  EXPECT_EQ(failure(cmd), Errc::not_consonant);
}

TEST_F(CommandTest, ConvertRoundTrip) {
  const auto text = run(Verb::convert, {"p1"});
  const auto reparsed = parse_document("frame w: w1 w2 w3\n" + text);
  Command cmd;
  cmd.verb = Verb::convert;
  cmd.args = {"p1_mass"};
  EXPECT_EQ(execute(reparsed, cmd), "pi p1_mass_pi over w: 1.000000 0.700000 0.300000\n");
}

TEST_F(CommandTest, Approx) {
  EXPECT_EQ(run(Verb::approx, {"split"}), "pi split_approx over w: 1.000000 1.000000 1.000000\nconsistent = false\nheight = 0.500000\n");
  EXPECT_EQ(run(Verb::approx, {"m1"}), "pi m1_approx over w: 1.000000 0.500000 0.200000\nconsistent = true\nheight = 1.000000\n");
}

TEST_F(CommandTest, Condition) {
  EXPECT_EQ(run(Verb::condition, {"young"}),
            "pi young_given over ages: 1.000000 0.500000 0.000000\ncertainty young_given over ages: 0.500000 0.000000 0.000000\n");
  Command cmd;
  cmd.verb = Verb::condition;
  cmd.args = {"young"};
  cmd.prior = "ages_prior";
  // P(young) = 0.25 + 0.125
  EXPECT_EQ(execute(doc, cmd), "P(young) = 0.375000\nprob young_posterior over ages: 0.666667 0.333333 0.000000\n");
  cmd.prior = "missing";
  EXPECT_EQ(failure(cmd), Errc::unknown_name);
}

TEST_F(CommandTest, ElicitInlineMinspec) {
  Command cmd;
  cmd.verb = Verb::elicit;
  cmd.frame = "w10";
  cmd.core = "{a b c}";
  cmd.alpha = 0.8;
  cmd.method = "minspec";
  EXPECT_EQ(execute(doc, cmd),
            "mass inline_minspec over w10:\n"
            "  {a b c} 0.800000\n"
            "  {a b c d e f g h i j} 0.200000\n"
            "pi inline_minspec_pi over w10: 1.000000 1.000000 1.000000 0.200000 0.200000 0.200000 0.200000 0.200000 "
            "0.200000 0.200000\n"
            "expected cardinality = 4.400000\n");
}

TEST_F(CommandTest, ElicitStatement) {
  Command cmd;
  cmd.verb = Verb::elicit;
  cmd.statement = "mary";
  cmd.method = "maxent";
  const auto out = execute(doc, cmd);
  EXPECT_EQ(out.rfind("prob mary_maxent over w10: 0.266667 0.266667 0.266667 0.028571", 0), 0u) << out;
  cmd.method = "check";
  EXPECT_EQ(execute(doc, cmd).rfind("subsets checked = 1024\nviolations = 0\n", 0), 0u);
  cmd.method = "bogus";
  EXPECT_EQ(failure(cmd), Errc::invalid_argument);
  cmd.method = "both";
  cmd.alpha = 0.5;
  EXPECT_EQ(failure(cmd), Errc::invalid_argument);
}

TEST_F(CommandTest, Triangle) {
  EXPECT_EQ(run(Verb::triangle, {"m_vacuous", "{w1}"}), "m_vacuous,0.000000,0.000000,O,1.000000\n");
  EXPECT_EQ(run(Verb::triangle, {"m_vacuous", "{w1}"}, true),
            "name,x,y,region,ignorance\nm_vacuous,0.000000,0.000000,O,1.000000\n");
  EXPECT_EQ(run(Verb::triangle, {"m1", "{w1}"}), "m1,0.500000,0.000000,possibilistic-axes,\n");
  Command cmd;
  cmd.verb = Verb::triangle;
  cmd.args = {"m1", "{}"};
  EXPECT_EQ(failure(cmd), Errc::contingent_required);
}

TEST_F(CommandTest, CardinalityClassifyCheck) {
  EXPECT_EQ(run(Verb::cardinality, {"m1"}), "expected cardinality = 1.700000\n");
  EXPECT_EQ(run(Verb::classify, {"m1"}), "class = consonant\nlabels = consonant\n");
  EXPECT_EQ(run(Verb::classify, {"split"}), "class = general\nlabels = general\n");
  EXPECT_EQ(run(Verb::check, {"mary"}).rfind("subsets checked = 1024\nviolations = 0\n", 0), 0u);
}

TEST_F(CommandTest, Deterministic) {
  for (int i = 0; i < 3; ++i) EXPECT_EQ(run(Verb::query, {"Pl", "m1", "{w2 w3}"}), run(Verb::query, {"Pl", "m1", "{w2 w3}"}));
}

}  // namespace
}  // namespace evpos
