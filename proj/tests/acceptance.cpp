// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "evpos/evpos.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace {

using namespace evpos;
namespace t = evpos::testing;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<std::uint64_t> contingent_masks(std::size_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t a = 1; a + 1 < (std::uint64_t{1} << n); ++a) out.push_back(a);
  return out;
}

Outcome horse_paradox() {
  Outcome o;
  const auto doc = parse_document(
      "frame horse: a nab nb\n"
      "prob bayes over horse: 0.5 0 0.5\n"
      "mass vacuous over horse:\n"
      "  {a nab nb} 1\n");
  const auto bayes = from_probability(doc.probabilities.at("bayes"));
  const auto& vac = doc.masses.at("vacuous");
  const auto nab = subset_of(bayes.frame(), {"nab"});
  if (belief(bayes, nab) != 0.0 || plausibility(bayes, nab) != 0.0) o.fail("Bayesian encoding leaves weight on {nab}");
  if (belief(vac, nab) != 0.0 || plausibility(vac, nab) != 1.0) o.fail("vacuous encoding is not [0,1] on {nab}");
  Command cmd;
  cmd.args = {"Pl", "bayes", "{nab}"};
  if (execute(doc, cmd) != "Pl = 0.000000\n") o.fail("CLI disagrees for Pl(bayes, {nab})");
  cmd.args = {"Pl", "vacuous", "{nab}"};
  if (execute(doc, cmd) != "Pl = 1.000000\n") o.fail("CLI disagrees for Pl(vacuous, {nab})");
  if (o.ok) o.detail = "Bayesian Bel=Pl=0, vacuous Bel=0 Pl=1";
  return o;
}

Outcome alpha_cut_round_trip() {
  Outcome o;
  t::Rng rng(1001);
  for (int i = 0; i < 1000; ++i) {
    const auto f = t::numbered_frame(2 + static_cast<std::size_t>(i) % 15);
    const auto pi = t::random_pi(rng, f);
    const auto back = contour(pi_to_mass(pi));
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (back[k] != pi[k]) o.fail("contour(pi_to_mass(pi)) differs at n=" + std::to_string(f.size()));
    }
  }
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto f = t::numbered_frame(2 + static_cast<std::size_t>(i) % 15);
    const auto m = t::random_consonant_mass(rng, f);
    const auto back = pi_to_mass(normalize(contour(m)));
    if (back.size() != m.size()) {
      o.fail("focal count changed");
      continue;
    }
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (!(back.focals()[k].set == m.focals()[k].set)) o.fail("focal sets changed");
      worst = std::max(worst, static_cast<double>(std::fabs(back.focals()[k].weight - m.focals()[k].weight)));
    }
  }
  if (worst > 1e-12) o.fail("weight drift " + fmt("%.3g", worst));
  if (o.ok) o.detail = "1000 pi exact, 1000 masses max weight drift " + fmt("%.3g", worst);
  return o;
}

Outcome consonant_decomposability() {
  Outcome o;
  t::Rng rng(1003);
  double worst = 0.0;
  std::uint64_t pairs = 0;
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i) % 9;
    const auto f = t::numbered_frame(n);
    const auto m = t::random_consonant_mass(rng, f);
    if (!is_consonant(m)) o.fail("generator produced a non-consonant mass");
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> bel(count), pl(count);
    for (std::uint64_t a = 0; a < count; ++a) {
      bel[a] = belief(m, f.subset(a));
      pl[a] = plausibility(m, f.subset(a));
    }
    for (std::uint64_t a = 0; a < count; ++a) {
      for (std::uint64_t b = 0; b < count; ++b) {
        worst = std::max(worst, std::fabs(bel[a & b] - std::min(bel[a], bel[b])));
        worst = std::max(worst, std::fabs(pl[a | b] - std::max(pl[a], pl[b])));
        ++pairs;
      }
      const std::uint64_t c = ~a & f.full_mask();
      worst = std::max(worst, std::fabs(std::max(pl[a], pl[c]) - 1.0));
      worst = std::max(worst, std::fabs(std::min(bel[a], bel[c])));
      if (bel[a] > 0.0) worst = std::max(worst, std::fabs(pl[a] - 1.0));
    }
  }
  if (worst > 1e-12) o.fail("max deviation " + fmt("%.3g", worst));
  if (o.ok) o.detail = std::to_string(pairs) + " pairs, max deviation " + fmt("%.3g", worst);
  return o;
}

Outcome min_conjunction_witness() {
  Outcome o;
  t::Rng rng(1005);
  for (int i = 0; i < 10000; ++i) {
    const auto f = t::numbered_frame(3 + static_cast<std::size_t>(i) % 4);
    const auto pi = t::random_pi(rng, f);
    const std::uint64_t count = std::uint64_t{1} << f.size();
    for (std::uint64_t a = 1; a < count; ++a) {
      for (std::uint64_t b = 1; b < count; ++b) {
        if ((a & b) == 0) continue;  // disjoint pairs are a trivial witness
        const double lhs = possibility_of(pi, f.subset(a & b));
        const double rhs = std::min(possibility_of(pi, f.subset(a)), possibility_of(pi, f.subset(b)));
        if (lhs < rhs - 0.1) {
          o.detail = "pi=(";
          for (std::size_t k = 0; k < f.size(); ++k) o.detail += (k ? " " : "") + fmt("%.3g", pi[k]);
          o.detail += ") A=" + f.format(f.subset(a)) + " B=" + f.format(f.subset(b)) + ": " + fmt("%.3g", lhs) +
                      " < " + fmt("%.3g", rhs);
          return o;
        }
      }
    }
  }
  o.fail("no witness found");
  return o;
}

struct GridStatement {
  std::size_t n;
  std::uint64_t core;
  double alpha;
};

// n in {5,10,20}, every core size, alpha on the 0.1 grid. Core positions are
// drawn at random so cores are not always a prefix of the frame.
std::vector<GridStatement> statement_grid() {
  std::vector<GridStatement> out;
  t::Rng rng(1007);
  for (std::size_t n : {5, 10, 20}) {
    for (std::size_t k = 1; k < n; ++k) {
      for (int a = 0; a <= 10; ++a) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::uint64_t core = 0;
        for (std::size_t i = 0; i < k; ++i) core |= std::uint64_t{1} << order[i];
        out.push_back({n, core, a / 10.0});
      }
    }
  }
  return out;
}

Outcome maxent_vs_oracle() {
  Outcome o;
  t::Rng rng(1009);
  double worst_atom = 0.0, worst_gap = -1.0;
  const auto grid = statement_grid();
  for (const auto& g : grid) {
    const auto f = t::numbered_frame(g.n);
    const auto p = maxent_distribution(make_statement(f, f.subset(g.core), g.alpha));
    const auto oracle = t::maximize_entropy(g.n, g.core, g.alpha);
    for (std::size_t i = 0; i < g.n; ++i) worst_atom = std::max(worst_atom, std::fabs(p[i] - oracle[i]));
    const double h = entropy(p.values());
    for (int s = 0; s < 10000; ++s) {
      const double hs = t::shannon(t::sample_feasible_distribution(rng, g.n, g.core, g.alpha));
      worst_gap = std::max(worst_gap, hs - h);
    }
  }
  if (worst_atom > 1e-6) o.fail("per-atom gap to oracle " + fmt("%.3g", worst_atom));
  if (worst_gap > 1e-9) o.fail("a sample beats the closed form by " + fmt("%.3g", worst_gap));
  if (o.ok) {
    o.detail = std::to_string(grid.size()) + " statements, max atom gap " + fmt("%.3g", worst_atom) +
               ", max sample excess " + fmt("%.3g", worst_gap + 0.0) + " nats";
  }
  return o;
}

Outcome minspec_vs_oracle() {
  Outcome o;
  t::Rng rng(1011);
  double worst_gap = -1e300, worst_bel = 0.0;
  const auto grid = statement_grid();
  for (const auto& g : grid) {
    const auto f = t::numbered_frame(g.n);
    const auto ms = minspec_mass(make_statement(f, f.subset(g.core), g.alpha));
    const double best = expected_cardinality(ms.mass);
    if (std::fabs(belief(ms.mass, f.subset(g.core)) - g.alpha) > 1e-12) o.fail("closed form misses Bel(core) = alpha");
    for (int s = 0; s < 10000; ++s) {
      const auto focals = t::sample_feasible_focals(rng, g.n, g.core, g.alpha);
      worst_bel = std::max(worst_bel, std::fabs(t::belief_of(focals, g.core) - g.alpha));
      worst_gap = std::max(worst_gap, t::cardinality_of(focals) - best);
    }
  }
  if (worst_bel > 1e-12) o.fail("sampler left the feasible set by " + fmt("%.3g", worst_bel));
  if (worst_gap > 1e-9) o.fail("a sample is less specific by " + fmt("%.3g", worst_gap));
  if (o.ok) o.detail = std::to_string(grid.size()) + " statements, max sample excess " + fmt("%.3g", worst_gap + 0.0);
  return o;
}

Outcome bracket_exhaustive() {
  Outcome o;
  std::uint64_t statements = 0, subsets = 0, violations = 0;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 12; ++n) {
    const auto f = t::numbered_frame(n);
    for (std::uint64_t core : contingent_masks(n)) {
      for (int a = 0; a <= 10; ++a) {
        const auto r = bracket_check(make_statement(f, f.subset(core), a / 10.0));
        ++statements;
        subsets += r.subsets_checked;
        violations += r.violations;
        worst = std::max(worst, r.max_violation);
      }
    }
  }
  if (violations != 0) o.fail(std::to_string(violations) + " violations, worst " + fmt("%.3g", worst));
  if (o.ok) {
    o.detail = std::to_string(statements) + " statements, " + std::to_string(subsets) + " subsets, 0 violations";
  }
  return o;
}

Outcome conditioning_reductions() {
  Outcome o;
  t::Rng rng(1013);
  double worst = 0.0, worst_sum = 0.0;
  int pairs = 0;
  while (pairs < 1000) {
    const auto f = t::numbered_frame(t::uniform_index(rng, 1, 12));
    const auto prior = t::random_probability(rng, f);
    const auto core = f.subset(t::random_nonempty_mask(rng, f));
    if (!(prior.probability(core) > 0.0)) continue;
    ++pairs;
    const auto ind = indicator("core", core, f);
    if (fuzzy_event_probability(ind, prior) != prior.probability(core)) o.fail("indicator probability differs from P(core)");
    const auto fuzzy = bayes_fuzzy_condition(prior, ind);
    const auto crisp = condition_on(prior, core);
    double total = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      worst = std::max(worst, std::fabs(fuzzy[i] - crisp[i]));
      total += fuzzy[i];
    }
    worst_sum = std::max(worst_sum, std::fabs(total - 1.0));
  }
  if (worst > 1e-12) o.fail("fuzzy vs crisp conditioning gap " + fmt("%.3g", worst));
  if (worst_sum > 1e-12) o.fail("posterior sum off by " + fmt("%.3g", worst_sum));
  if (o.ok) o.detail = "1000 pairs, max gap " + fmt("%.3g", worst) + ", max sum error " + fmt("%.3g", worst_sum);
  return o;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome triangle_conventions() {
  Outcome o;
  const Frame coin = parse_frame("frame coin: a not_a");
  const auto a = subset_of(coin, {"a"});
  const auto vac = triangle_point(vacuous_mass(coin), a);
  if (!(vac.x == 0.0 && vac.y == 0.0 && vac.region == Region::vertex_o && vac.ignorance == 1.0)) {
    o.fail("vacuous mass is not (0,0) O with ignorance 1");
  }
  const auto fair = triangle_point(from_probability(make_probability(coin, {0.5, 0.5})), a);
  if (!(fair.x == 0.5 && fair.y == 0.5 && fair.region == Region::probabilistic_edge)) {
    o.fail("P(a)=0.5 is not (0.5,0.5) on the probabilistic edge");
  }
  const auto hedged = triangle_point(
      make_mass(coin, {{a, 0.2}, {subset_of(coin, {"not_a"}), 0.2}, {coin.whole(), 0.6}}), a);
  if (!(hedged.ignorance && *hedged.ignorance == 0.6)) o.fail("Bel(a)=Bel(not a)=0.2 does not give ignorance 0.6");

  // The same points through the CLI layer, against the bundled golden files.
  const std::string dir = EVPOS_SCENARIO_DIR;
  const auto doc = parse_document(read_file(dir + "/horse.txt"));
  for (const char* name : {"m_vacuous", "fair", "hedged"}) {
    Command cmd;
    cmd.verb = Verb::triangle;
    cmd.args = {name, "{a}"};
    const std::string golden = std::string(name) == "m_vacuous" ? "triangle_vacuous" : "triangle_" + std::string(name);
    if (execute(doc, cmd) != read_file(dir + "/expected/" + golden + ".txt")) o.fail("golden mismatch for " + golden);
  }
  if (o.ok) o.detail = "O (0,0) ign 1; edge (0.5,0.5); ignorance 0.6; 3 golden rows match";
  return o;
}

Outcome duality_monotonicity() {
  Outcome o;
  t::Rng rng(1017);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i) % 10;
    const auto f = t::numbered_frame(n);
    const auto m = t::random_mass(rng, f);
    const std::uint64_t count = std::uint64_t{1} << n;
    std::vector<double> bel(count), pl(count);
    for (std::uint64_t a = 0; a < count; ++a) {
      bel[a] = belief(m, f.subset(a));
      pl[a] = plausibility(m, f.subset(a));
      worst = std::max(worst, std::fabs(bel[a] - t::belief_by_enumeration(m, a)));
    }
    for (std::uint64_t a = 0; a < count; ++a) {
      worst = std::max(worst, std::fabs(pl[a] - (1.0 - bel[~a & f.full_mask()])));
      worst = std::max(worst, bel[a] - pl[a]);
      // Every superset of a: enumerate supersets as a | s over submasks s of the complement.
      const std::uint64_t comp = ~a & f.full_mask();
      for (std::uint64_t s = comp;; s = (s - 1) & comp) {
        worst = std::max(worst, bel[a] - bel[a | s]);
        worst = std::max(worst, pl[a] - pl[a | s]);
        if (s == 0) break;
      }
    }
    const auto p = t::random_probability(rng, f);
    const auto bm = from_probability(p);
    for (std::uint64_t a = 0; a < count; ++a) {
      const double pa = p.probability(f.subset(a));
      worst = std::max(worst, std::fabs(belief(bm, f.subset(a)) - pa));
      worst = std::max(worst, std::fabs(plausibility(bm, f.subset(a)) - pa));
    }
  }
  if (worst > 1e-12) o.fail("max deviation " + fmt("%.3g", worst));
  if (o.ok) o.detail = "1000 masses + 1000 Bayesian masses, max deviation " + fmt("%.3g", worst);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"horse-paradox", 1.0, horse_paradox},
      {"alpha-cut-round-trip", 5.0, alpha_cut_round_trip},
      {"consonant-decomposability", 60.0, consonant_decomposability},
      {"min-conjunction-witness", 60.0, min_conjunction_witness},
      {"maxent-vs-oracle", 120.0, maxent_vs_oracle},
      {"minspec-vs-oracle", 120.0, minspec_vs_oracle},
      {"bracket-exhaustive", 120.0, bracket_exhaustive},
      {"conditioning-reductions", 5.0, conditioning_reductions},
      {"triangle-conventions", 1.0, triangle_conventions},
      {"duality-monotonicity", 60.0, duality_monotonicity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("took " + fmt("%.2f", secs) + "s, limit " + fmt("%.0f", c.limit_seconds) + "s");
    if (!o.ok) ++failures;
    std::printf("%s  %-26s %8.3fs  %s\n", o.ok ? "PASS" : "FAIL", c.name.c_str(), secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
