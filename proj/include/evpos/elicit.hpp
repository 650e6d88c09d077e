#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "evpos/error.hpp"
#include "evpos/evidence.hpp"
#include "evpos/frame.hpp"
#include "evpos/possibility.hpp"

namespace evpos {

/// "The value is probably in `core`": P(core) is at least `alpha`.
struct VagueStatement {
  Frame frame;
  Subset core;
  double alpha;
};

inline VagueStatement make_statement(const Frame& frame, const Subset& core, double alpha) {
  frame.check_owns(core);
  if (core.empty() || core.full()) {
    throw Error(Errc::invalid_statement, "statement core must be a proper nonempty subset, got " + frame.format(core));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(Errc::invalid_statement, "statement alpha " + std::to_string(alpha) + " outside [0,1]");
  }
  return {frame, core, alpha};
}

/// Shannon entropy in nats, with 0 log 0 = 0.
inline double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

/// Maximum-entropy distribution subject to P(core) >= alpha. When
/// alpha <= |core|/|frame| the constraint is slack and the answer is uniform;
/// otherwise alpha/|core| on the core and (1-alpha)/(n-|core|) off it.
inline ProbabilityDistribution maxent_distribution(const VagueStatement& s) {
  const auto n = static_cast<double>(s.frame.size());
  const auto k = static_cast<double>(s.core.cardinality());
  std::vector<double> p(s.frame.size());
  if (s.alpha <= k / n) {
    std::fill(p.begin(), p.end(), 1.0 / n);
  } else {
    const double inside = s.alpha / k;
    const double outside = (1.0 - s.alpha) / (n - k);
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = s.core.contains(i) ? inside : outside;
  }
  return make_probability(s.frame, p);
}

struct MinSpecificity {
  MassFunction mass;                     // m(core) = alpha, m(frame) = 1 - alpha
  PossibilityDistribution distribution;  // 1 on the core, 1 - alpha elsewhere
};

/// Least specific body of evidence with Bel(core) = alpha.
inline MinSpecificity minspec_mass(const VagueStatement& s) {
  std::vector<Focal> focals;
  const auto alpha = static_cast<weight_t>(s.alpha);
  if (alpha > 0) focals.push_back({s.core, alpha});
  if (alpha < 1) focals.push_back({s.frame.whole(), 1 - alpha});
  auto mass = make_mass(s.frame, std::move(focals));

  std::vector<double> pi(s.frame.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = s.core.contains(i) ? 1.0 : 1.0 - s.alpha;
  return {std::move(mass), make_possibility(s.frame, pi)};
}

struct BracketReport {
  std::uint64_t subsets_checked = 0;
  std::uint64_t violations = 0;
  double max_violation = 0.0;  // largest of Bel - P and P - Pl, floored at 0
  double min_width = 0.0;      // smallest Pl - Bel over contingent subsets
  double max_width = 0.0;      // largest Pl - Bel over contingent subsets
  double core_width = 0.0;     // Pl - Bel at the core
};

inline constexpr double bracket_tolerance = 1e-9;
inline constexpr std::size_t bracket_scan_limit = 20;

/// Verifies Bel(A) <= P(A) <= Pl(A) on every subset A, where P is the
/// maximum-entropy answer and Bel/Pl come from the minimum-specificity one.
inline BracketReport bracket_check(const VagueStatement& s) {
  const std::size_t n = s.frame.size();
  if (n > bracket_scan_limit) {
    throw Error(Errc::scan_too_large, "bracket check scans all subsets; frame `" + s.frame.name() + "` has " +
                                          std::to_string(n) + " atoms (limit 20)");
  }
  const auto p = maxent_distribution(s);
  const auto ms = minspec_mass(s);
  BracketReport r;
  r.min_width = 1.0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const auto a = s.frame.subset(mask);
    const double bel = belief(ms.mass, a);
    const double pl = plausibility(ms.mass, a);
    const double pa = p.probability(a);
    const double excess = std::max({bel - pa, pa - pl, 0.0});
    r.max_violation = std::max(r.max_violation, excess);
    if (excess > bracket_tolerance) ++r.violations;
    if (!a.empty() && !a.full()) {
      r.min_width = std::min(r.min_width, pl - bel);
      r.max_width = std::max(r.max_width, pl - bel);
    }
    ++r.subsets_checked;
  }
  r.core_width = plausibility(ms.mass, s.core) - belief(ms.mass, s.core);
  return r;
}

}  // namespace evpos
