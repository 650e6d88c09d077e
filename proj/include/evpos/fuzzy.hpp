#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evpos/error.hpp"
#include "evpos/evidence.hpp"
#include "evpos/frame.hpp"
#include "evpos/possibility.hpp"

namespace evpos {

/// An integer grid lo..hi (inclusive) viewed as a frame whose atoms are the
/// grid points in increasing order.
class NumericScale {
 public:
  NumericScale(std::string name, long lo, long hi) : lo_(lo), hi_(hi), frame_(make_frame(name, lo, hi)) {}

  const std::string& name() const noexcept { return frame_.name(); }
  long lo() const noexcept { return lo_; }
  long hi() const noexcept { return hi_; }
  const Frame& frame() const noexcept { return frame_; }
  std::size_t size() const noexcept { return frame_.size(); }

  bool contains(long x) const noexcept { return x >= lo_ && x <= hi_; }
  long value(std::size_t atom) const noexcept { return lo_ + static_cast<long>(atom); }

  std::size_t atom(long x) const {
    if (!contains(x)) {
      throw Error(Errc::out_of_range, "point " + std::to_string(x) + " outside scale `" + name() + "` (" +
                                          std::to_string(lo_) + ".." + std::to_string(hi_) + ")");
    }
    return static_cast<std::size_t>(x - lo_);
  }

 private:
  static Frame make_frame(const std::string& name, long lo, long hi) {
    if (lo > hi) {
      throw Error(Errc::invalid_argument, "scale `" + name + "` has lower bound above upper bound");
    }
    if (hi - lo + 1 > static_cast<long>(Frame::max_atoms)) {
      throw Error(Errc::frame_too_large, "scale `" + name + "` spans " + std::to_string(hi - lo + 1) +
                                             " points; frames are limited to 64 atoms");
    }
    std::vector<std::string> labels;
    for (long x = lo; x <= hi; ++x) labels.push_back(std::to_string(x));
    return Frame(name, std::move(labels));
  }

  long lo_;
  long hi_;
  Frame frame_;
};

/// A named membership function over a frame (usually a scale's frame).
struct FuzzySet {
  std::string name;
  PossibilityDistribution membership;

  const Frame& frame() const noexcept { return membership.frame(); }
  double operator[](std::size_t atom) const { return membership[atom]; }
};

inline FuzzySet make_fuzzy(std::string name, const Frame& frame, std::span<const double> values) {
  return {std::move(name), make_possibility(frame, values)};
}

/// Crisp fuzzy set: membership 1 on `core`, 0 elsewhere.
inline FuzzySet indicator(std::string name, const Subset& core, const Frame& frame) {
  frame.check_owns(core);
  std::vector<double> v(frame.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = core.contains(i) ? 1.0 : 0.0;
  return make_fuzzy(std::move(name), frame, v);
}

/// Piecewise-linear membership through (x, mu) breakpoints, sampled on the
/// scale grid. Points left/right of the breakpoints take the end values.
/// Sampled values are clamped to [0,1].
inline FuzzySet fuzzy_from_breakpoints(std::string name, const NumericScale& scale,
                                       std::vector<std::pair<double, double>> breakpoints) {
  if (breakpoints.empty()) {
    throw Error(Errc::invalid_argument, "fuzzy set `" + name + "` has no breakpoints");
  }
  std::sort(breakpoints.begin(), breakpoints.end());
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i].first == breakpoints[i - 1].first) {
      throw Error(Errc::invalid_argument, "fuzzy set `" + name + "` repeats breakpoint x = " +
                                              std::to_string(breakpoints[i].first));
    }
  }
  for (const auto& [x, mu] : breakpoints) {
    if (!std::isfinite(x) || !std::isfinite(mu)) {
      throw Error(Errc::invalid_argument, "fuzzy set `" + name + "` has a non-finite breakpoint");
    }
  }
  std::vector<double> values(scale.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double x = static_cast<double>(scale.value(i));
    double mu;
    if (x <= breakpoints.front().first) {
      mu = breakpoints.front().second;
    } else if (x >= breakpoints.back().first) {
      mu = breakpoints.back().second;
    } else {
      auto hi = std::upper_bound(breakpoints.begin(), breakpoints.end(), x,
                                 [](double v, const auto& bp) { return v < bp.first; });
      auto lo = hi - 1;
      const double t = (x - lo->first) / (hi->first - lo->first);
      mu = lo->second + t * (hi->second - lo->second);
    }
    values[i] = std::clamp(mu, 0.0, 1.0);
  }
  return make_fuzzy(std::move(name), scale.frame(), values);
}

/// Grade of membership induced by a random-set meaning: total weight of the
/// candidate meanings that contain x.
inline double membership_from_random_set(const MassFunction& meaning, const NumericScale& scale, long x) {
  require_same_frame(meaning.frame(), scale.frame());
  const std::size_t atom = scale.atom(x);
  weight_t s = 0;
  for (const auto& f : meaning.focals()) {
    if (f.set.contains(atom)) s += f.weight;
  }
  return static_cast<double>(s);
}

/// Probability of a fuzzy event: expectation of the membership function.
inline double fuzzy_event_probability(const FuzzySet& f, const ProbabilityDistribution& prior) {
  require_same_frame(f.frame(), prior.frame());
  long double s = 0;
  for (std::size_t i = 0; i < f.frame().size(); ++i) {
    s += static_cast<long double>(f[i]) * prior[i];
  }
  return static_cast<double>(s);
}

struct PossibilisticConditioning {
  PossibilityDistribution distribution;  // pi(x | f) = mu_f(x)
  std::vector<double> certainty;         // C(x | f) = m({x}) of the meaning mass
};

/// Conditioning on a vague statement under a vacuous prior.
inline PossibilisticConditioning possibilistic_condition(const FuzzySet& f) {
  if (!f.membership.normalized()) {
    throw Error(Errc::unnormalized, "fuzzy set `" + f.name + "` has height " + std::to_string(f.membership.height()) +
                                        " < 1; possibilistic conditioning needs a normalized fuzzy set");
  }
  const auto meaning = pi_to_mass(f.membership);
  std::vector<double> certainty(f.frame().size(), 0.0);
  for (const auto& focal : meaning.focals()) {
    if (focal.set.cardinality() == 1) {
      certainty[static_cast<std::size_t>(std::countr_zero(focal.set.mask()))] = static_cast<double>(focal.weight);
    }
  }
  return {f.membership, std::move(certainty)};
}

inline constexpr double null_event_threshold = 1e-12;

/// Bayesian revision by a fuzzy event: p'(x) = mu(x) p(x) / P(f).
inline ProbabilityDistribution bayes_fuzzy_condition(const ProbabilityDistribution& prior, const FuzzySet& f) {
  const double pf = fuzzy_event_probability(f, prior);
  if (pf < null_event_threshold) {
    throw Error(Errc::null_conditioning, "fuzzy event `" + f.name + "` has probability " + std::to_string(pf) +
                                             " under the prior; cannot condition on it");
  }
  std::vector<double> out(prior.values().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * prior[i] / pf;
  return make_probability(prior.frame(), out);
}

}  // namespace evpos
