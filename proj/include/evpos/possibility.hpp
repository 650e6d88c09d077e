#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evpos/error.hpp"
#include "evpos/evidence.hpp"
#include "evpos/frame.hpp"

namespace evpos {

inline constexpr double normalization_tolerance = 1e-12;

class PossibilityDistribution;
PossibilityDistribution make_possibility(const Frame& frame, std::span<const double> values);

/// pi : atoms -> [0,1]. Also serves as the membership function of a fuzzy set.
class PossibilityDistribution {
 public:
  const Frame& frame() const noexcept { return frame_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t atom) const { return values_.at(atom); }
  bool normalized() const noexcept { return normalized_; }
  double height() const noexcept { return height_; }

  /// Atoms with value at least `level`.
  Subset cut(double level) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (values_[i] >= level) mask |= std::uint64_t{1} << i;
    }
    return frame_.subset(mask);
  }

 private:
  friend PossibilityDistribution make_possibility(const Frame& frame, std::span<const double> values);
  PossibilityDistribution(Frame frame, std::vector<double> values) : frame_(std::move(frame)), values_(std::move(values)) {
    height_ = values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
    normalized_ = std::fabs(height_ - 1.0) <= normalization_tolerance;
  }

  Frame frame_;
  std::vector<double> values_;
  double height_ = 0.0;
  bool normalized_ = false;
};

inline PossibilityDistribution make_possibility(const Frame& frame, std::span<const double> values) {
  if (values.size() != frame.size()) {
    throw Error(Errc::size_mismatch, "expected " + std::to_string(frame.size()) + " possibility values for frame `" +
                                         frame.name() + "`, got " + std::to_string(values.size()));
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(Errc::out_of_range, "possibility value " + std::to_string(v) + " outside [0,1]");
    }
  }
  return PossibilityDistribution(frame, std::vector<double>(values.begin(), values.end()));
}

inline PossibilityDistribution make_possibility(const Frame& frame, std::initializer_list<double> values) {
  return make_possibility(frame, std::span<const double>(values.begin(), values.size()));
}

/// Divides by the height so the largest value becomes 1.
inline PossibilityDistribution normalize(const PossibilityDistribution& pi) {
  if (pi.height() <= 0.0) {
    throw Error(Errc::unnormalized, "cannot normalize a possibility distribution that is zero everywhere");
  }
  std::vector<double> v(pi.values().begin(), pi.values().end());
  for (auto& x : v) x /= pi.height();
  return make_possibility(pi.frame(), v);
}

/// Pi(A) = max of pi over A; Pi({}) = 0.
inline double possibility_of(const PossibilityDistribution& pi, const Subset& a) {
  pi.frame().check_owns(a);
  double best = 0.0;
  for (std::size_t i = 0; i < pi.values().size(); ++i) {
    if (a.contains(i)) best = std::max(best, pi[i]);
  }
  return best;
}

/// N(A) = min of 1 - pi over the complement of A; N(whole frame) = 1.
inline double necessity_of(const PossibilityDistribution& pi, const Subset& a) {
  pi.frame().check_owns(a);
  double worst = 1.0;
  for (std::size_t i = 0; i < pi.values().size(); ++i) {
    if (!a.contains(i)) worst = std::min(worst, 1.0 - pi[i]);
  }
  return worst;
}

/// Distinct positive levels of pi, strictly decreasing. Levels are compared
/// exactly; no epsilon merging.
inline std::vector<double> levels(const PossibilityDistribution& pi) {
  std::vector<double> out;
  for (double v : pi.values()) {
    if (v > 0.0) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Consonant mass whose focal sets are the level cuts of pi:
/// m(A_i) = pi_i - pi_{i+1} with pi_{m+1} = 0.
inline MassFunction pi_to_mass(const PossibilityDistribution& pi) {
  if (!pi.normalized()) {
    throw Error(Errc::unnormalized, "possibility distribution has height " + std::to_string(pi.height()) +
                                        " < 1; normalize it first");
  }
  const auto lv = levels(pi);
  std::vector<Focal> focals;
  focals.reserve(lv.size());
  for (std::size_t i = 0; i < lv.size(); ++i) {
    const weight_t next = i + 1 < lv.size() ? static_cast<weight_t>(lv[i + 1]) : weight_t{0};
    focals.push_back({pi.cut(lv[i]), static_cast<weight_t>(lv[i]) - next});
  }
  return make_mass(pi.frame(), std::move(focals));
}

/// pi(w) = Pl({w}) for every atom.
inline PossibilityDistribution contour(const MassFunction& m) {
  std::vector<double> v(m.frame().size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = plausibility(m, m.frame().singleton(i));
  return make_possibility(m.frame(), v);
}

struct ConsonantApproximation {
  PossibilityDistribution distribution;  // normalized
  PossibilityDistribution contour;       // raw per-singleton plausibility
  bool consistent;                       // focal sets share an atom, so the contour already reaches 1
  double height;                         // max of the raw contour
};

/// Contour-based consonant approximation of an arbitrary body of evidence.
/// When the contour peaks below 1 it is rescaled by its height and the result
/// is flagged inconsistent.
inline ConsonantApproximation consonant_approximate(const MassFunction& m) {
  auto raw = contour(m);
  if (raw.normalized()) {
    return {raw, raw, true, raw.height()};
  }
  return {normalize(raw), raw, false, raw.height()};
}

}  // namespace evpos
