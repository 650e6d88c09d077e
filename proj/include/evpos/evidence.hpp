#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evpos/error.hpp"
#include "evpos/frame.hpp"

namespace evpos {

/// Focal weights are carried in extended precision. Sums over a nested chain
/// of focal sets then round back to the originating possibility levels
/// bit-for-bit, which plain doubles cannot guarantee.
using weight_t = long double;
static_assert(std::numeric_limits<weight_t>::digits >= 64, "extended precision long double required");

inline constexpr double sum_tolerance = 1e-6;

struct Focal {
  Subset set;
  weight_t weight;
};

class MassFunction;
MassFunction make_mass(const Frame& frame, std::vector<Focal> focals);

/// A body of evidence: nonempty focal subsets with positive weights summing
/// to one. Focal sets are kept canonical: merged, zero weights dropped, and
/// ordered by (cardinality, mask).
class MassFunction {
 public:
  const Frame& frame() const noexcept { return frame_; }
  std::span<const Focal> focals() const noexcept { return focals_; }
  std::size_t size() const noexcept { return focals_.size(); }

  /// m(A); zero for non-focal subsets.
  double weight(const Subset& a) const {
    frame_.check_owns(a);
    for (const auto& f : focals_) {
      if (f.set.mask() == a.mask()) return static_cast<double>(f.weight);
    }
    return 0.0;
  }

 private:
  friend MassFunction make_mass(const Frame& frame, std::vector<Focal> focals);
  MassFunction(Frame frame, std::vector<Focal> focals) : frame_(std::move(frame)), focals_(std::move(focals)) {}

  Frame frame_;
  std::vector<Focal> focals_;
};

/// Validates, merges duplicates, and renormalizes to an exact unit sum.
inline MassFunction make_mass(const Frame& frame, std::vector<Focal> focals) {
  for (const auto& f : focals) {
    frame.check_owns(f.set);
    if (f.set.empty()) {
      throw Error(Errc::empty_focal, "focal element is the contradiction {}");
    }
    if (!(f.weight > 0)) {
      throw Error(Errc::nonpositive_weight,
                  "focal element " + frame.format(f.set) + " has non-positive weight " +
                      std::to_string(static_cast<double>(f.weight)));
    }
  }
  std::sort(focals.begin(), focals.end(), [](const Focal& a, const Focal& b) {
    auto ca = a.set.cardinality(), cb = b.set.cardinality();
    return ca != cb ? ca < cb : a.set.mask() < b.set.mask();
  });
  std::vector<Focal> merged;
  for (const auto& f : focals) {
    if (!merged.empty() && merged.back().set.mask() == f.set.mask()) {
      merged.back().weight += f.weight;
    } else {
      merged.push_back(f);
    }
  }
  weight_t total = 0;
  for (const auto& f : merged) total += f.weight;
  if (std::fabs(static_cast<double>(total) - 1.0) > sum_tolerance) {
    throw Error(Errc::mass_sum, "focal weights sum to " + std::to_string(static_cast<double>(total)) +
                                    ", expected 1 within 1e-6");
  }
  if (total != 1) {
    for (auto& f : merged) f.weight /= total;
  }
  return MassFunction(frame, std::move(merged));
}

inline MassFunction make_mass(const Frame& frame, std::span<const std::pair<Subset, double>> assignments) {
  std::vector<Focal> focals;
  focals.reserve(assignments.size());
  for (const auto& [set, w] : assignments) focals.push_back({set, static_cast<weight_t>(w)});
  return make_mass(frame, std::move(focals));
}

inline MassFunction make_mass(const Frame& frame, std::initializer_list<std::pair<Subset, double>> assignments) {
  return make_mass(frame, std::span<const std::pair<Subset, double>>(assignments.begin(), assignments.size()));
}

inline MassFunction vacuous_mass(const Frame& frame) { return make_mass(frame, {{frame.whole(), 1.0}}); }

/// Bel(A): total weight of focal sets contained in A.
inline double belief(const MassFunction& m, const Subset& a) {
  m.frame().check_owns(a);
  weight_t s = 0;
  for (const auto& f : m.focals()) {
    if ((f.set.mask() & ~a.mask()) == 0) s += f.weight;
  }
  return static_cast<double>(s);
}

/// Pl(A): total weight of focal sets meeting A. Dual to belief through
/// Pl(A) = 1 - Bel(complement of A).
inline double plausibility(const MassFunction& m, const Subset& a) {
  m.frame().check_owns(a);
  weight_t s = 0;
  for (const auto& f : m.focals()) {
    if ((f.set.mask() & a.mask()) != 0) s += f.weight;
  }
  return static_cast<double>(s);
}

/// Imprecision of a body of evidence: sum of m(A) * |A|.
inline double expected_cardinality(const MassFunction& m) {
  weight_t s = 0;
  for (const auto& f : m.focals()) s += f.weight * static_cast<weight_t>(f.set.cardinality());
  return static_cast<double>(s);
}

// ---------------------------------------------------------------------------
// Probability distributions

class ProbabilityDistribution;
ProbabilityDistribution make_probability(const Frame& frame, std::span<const double> values);

class ProbabilityDistribution {
 public:
  const Frame& frame() const noexcept { return frame_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t atom) const { return values_.at(atom); }

  /// P(A) = sum of p(w) over w in A.
  double probability(const Subset& a) const {
    frame_.check_owns(a);
    long double s = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (a.contains(i)) s += values_[i];
    }
    return static_cast<double>(s);
  }

 private:
  friend ProbabilityDistribution make_probability(const Frame& frame, std::span<const double> values);
  ProbabilityDistribution(Frame frame, std::vector<double> values)
      : frame_(std::move(frame)), values_(std::move(values)) {}

  Frame frame_;
  std::vector<double> values_;
};

inline ProbabilityDistribution make_probability(const Frame& frame, std::span<const double> values) {
  if (values.size() != frame.size()) {
    throw Error(Errc::size_mismatch, "expected " + std::to_string(frame.size()) + " probabilities for frame `" +
                                         frame.name() + "`, got " + std::to_string(values.size()));
  }
  long double total = 0;
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(Errc::out_of_range, "probability " + std::to_string(v) + " outside [0,1]");
    }
    total += v;
  }
  if (std::fabs(static_cast<double>(total) - 1.0) > sum_tolerance) {
    throw Error(Errc::mass_sum,
                "probabilities sum to " + std::to_string(static_cast<double>(total)) + ", expected 1 within 1e-6");
  }
  std::vector<double> stored(values.begin(), values.end());
  if (total != 1) {
    for (auto& v : stored) v = static_cast<double>(v / total);
  }
  return ProbabilityDistribution(frame, std::move(stored));
}

inline ProbabilityDistribution make_probability(const Frame& frame, std::initializer_list<double> values) {
  return make_probability(frame, std::span<const double>(values.begin(), values.size()));
}

inline ProbabilityDistribution uniform_probability(const Frame& frame) {
  std::vector<double> v(frame.size(), 1.0 / static_cast<double>(frame.size()));
  return make_probability(frame, v);
}

/// The Bayesian body of evidence: one singleton focal per atom with p(w) > 0.
inline MassFunction from_probability(const ProbabilityDistribution& p) {
  std::vector<Focal> focals;
  for (std::size_t i = 0; i < p.frame().size(); ++i) {
    if (p[i] > 0.0) focals.push_back({p.frame().singleton(i), static_cast<weight_t>(p[i])});
  }
  return make_mass(p.frame(), std::move(focals));
}

/// Ordinary conditioning on a crisp event: P(x)/P(A) inside A, zero outside.
inline ProbabilityDistribution condition_on(const ProbabilityDistribution& prior, const Subset& event) {
  const double pa = prior.probability(event);
  if (pa < 1e-12) {
    throw Error(Errc::null_conditioning, "cannot condition on an event of probability " + std::to_string(pa));
  }
  std::vector<double> out(prior.values().size(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (event.contains(i)) out[i] = prior[i] / pa;
  }
  return make_probability(prior.frame(), out);
}

// ---------------------------------------------------------------------------
// Structure

enum class Structure { vacuous, bayesian, consonant, general };

inline std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::vacuous: return "vacuous";
    case Structure::bayesian: return "bayesian";
    case Structure::consonant: return "consonant";
    case Structure::general: return "general";
  }
  return "general";
}

struct Classification {
  Structure primary;
  std::vector<Structure> labels;  // every applicable label, in precedence order

  bool has(Structure s) const { return std::find(labels.begin(), labels.end(), s) != labels.end(); }
};

/// Focal sets totally ordered by inclusion.
inline bool is_consonant(const MassFunction& m) {
  auto focals = m.focals();
  for (std::size_t i = 1; i < focals.size(); ++i) {
    // Sorted by cardinality, so a chain must include each predecessor.
    if ((focals[i - 1].set.mask() & ~focals[i].set.mask()) != 0) return false;
  }
  return true;
}

inline Classification classify(const MassFunction& m) {
  Classification c{Structure::general, {}};
  const auto focals = m.focals();
  if (focals.size() == 1 && focals.front().set.full()) c.labels.push_back(Structure::vacuous);
  if (std::all_of(focals.begin(), focals.end(), [](const Focal& f) { return f.set.cardinality() == 1; })) {
    c.labels.push_back(Structure::bayesian);
  }
  if (is_consonant(m)) c.labels.push_back(Structure::consonant);
  if (c.labels.empty()) c.labels.push_back(Structure::general);
  c.primary = c.labels.front();
  return c;
}

// ---------------------------------------------------------------------------
// Uncertainty triangle

enum class Region { vertex_a, vertex_b, vertex_o, probabilistic_edge, possibilistic_axes, interior };

/// Short tags used in CSV output: A, B, O for the vertices.
inline std::string_view to_string(Region r) {
  switch (r) {
    case Region::vertex_a: return "A";
    case Region::vertex_b: return "B";
    case Region::vertex_o: return "O";
    case Region::probabilistic_edge: return "probabilistic-edge";
    case Region::possibilistic_axes: return "possibilistic-axes";
    case Region::interior: return "interior";
  }
  return "interior";
}

struct TrianglePoint {
  double x;  // Bel(a)
  double y;  // Bel(not a)
  Region region;
  std::optional<double> ignorance;  // 1 - 2x, only on the line x == y
};

inline constexpr double triangle_tolerance = 1e-12;

inline TrianglePoint triangle_point(const MassFunction& m, const Subset& a) {
  m.frame().check_owns(a);
  if (a.empty() || a.full()) {
    throw Error(Errc::contingent_required, "triangle needs a contingent proposition, got " + m.frame().format(a));
  }
  TrianglePoint p{belief(m, a), belief(m, a.complement()), Region::interior, std::nullopt};
  const auto near = [](double u, double v) { return std::fabs(u - v) <= triangle_tolerance; };
  if (near(p.x, 1.0)) {
    p.region = Region::vertex_a;
  } else if (near(p.y, 1.0)) {
    p.region = Region::vertex_b;
  } else if (near(p.x, 0.0) && near(p.y, 0.0)) {
    p.region = Region::vertex_o;
  } else if (near(p.x + p.y, 1.0)) {
    p.region = Region::probabilistic_edge;
  } else if (near(std::min(p.x, p.y), 0.0)) {
    p.region = Region::possibilistic_axes;
  }
  if (near(p.x, p.y)) p.ignorance = 1.0 - 2.0 * p.x;
  return p;
}

}  // namespace evpos
