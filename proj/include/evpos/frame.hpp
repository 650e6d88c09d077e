#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "evpos/error.hpp"

namespace evpos {

namespace detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

// Object names in documents: letters, digits, '_', '-', '.'.
inline bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

inline bool valid_label(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (is_space(c) || c == '{' || c == '}' || c == ':' || c == ',') return false;
  }
  return true;
}

inline std::uint64_t next_frame_id() {
  static std::atomic<std::uint64_t> counter{0};
  return ++counter;
}

}  // namespace detail

/// A set of atoms of one frame, stored as a bitmask. Bit i is atom i in
/// declaration order.
class Subset {
 public:
  Subset() = default;
  Subset(std::uint64_t frame_id, std::size_t frame_size, std::uint64_t mask)
      : frame_id_(frame_id), frame_size_(static_cast<std::uint8_t>(frame_size)), mask_(mask) {}

  std::uint64_t frame_id() const noexcept { return frame_id_; }
  std::size_t frame_size() const noexcept { return frame_size_; }
  std::uint64_t mask() const noexcept { return mask_; }

  std::size_t cardinality() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const noexcept { return mask_ == 0; }
  bool full() const noexcept { return mask_ == full_mask(); }
  bool contains(std::size_t atom) const noexcept { return atom < 64 && ((mask_ >> atom) & 1U) != 0; }

  Subset complement() const noexcept { return {frame_id_, frame_size_, ~mask_ & full_mask()}; }

  Subset operator|(const Subset& other) const {
    check_same(other);
    return {frame_id_, frame_size_, mask_ | other.mask_};
  }
  Subset operator&(const Subset& other) const {
    check_same(other);
    return {frame_id_, frame_size_, mask_ & other.mask_};
  }
  Subset operator-(const Subset& other) const {
    check_same(other);
    return {frame_id_, frame_size_, mask_ & ~other.mask_};
  }
  Subset operator~() const noexcept { return complement(); }

  /// Entailment: every model of *this is a model of other.
  bool is_subset_of(const Subset& other) const {
    check_same(other);
    return (mask_ & ~other.mask_) == 0;
  }
  bool intersects(const Subset& other) const {
    check_same(other);
    return (mask_ & other.mask_) != 0;
  }

  bool operator==(const Subset& other) const {
    check_same(other);
    return mask_ == other.mask_;
  }

  void check_same(const Subset& other) const {
    if (frame_id_ != other.frame_id_) {
      throw Error(Errc::frame_mismatch, "subsets belong to different frames");
    }
  }

 private:
  std::uint64_t full_mask() const noexcept {
    return frame_size_ >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << frame_size_) - 1);
  }

  std::uint64_t frame_id_ = 0;
  std::uint8_t frame_size_ = 0;
  std::uint64_t mask_ = 0;
};

/// An ordered finite set of labelled atoms. Copies share identity: two frames
/// compare equal only if one was copied from the other.
class Frame {
 public:
  static constexpr std::size_t max_atoms = 64;

  Frame(std::string name, std::vector<std::string> labels) {
    if (labels.empty()) {
      throw Error(Errc::empty_frame, "frame `" + name + "` declares no atoms");
    }
    if (labels.size() > max_atoms) {
      throw Error(Errc::frame_too_large, "frame `" + name + "` has " + std::to_string(labels.size()) +
                                             " atoms; frames are limited to 64 atoms");
    }
    auto impl = std::make_shared<Impl>();
    impl->id = detail::next_frame_id();
    impl->name = std::move(name);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!detail::valid_label(labels[i])) {
        throw Error(Errc::invalid_label, "invalid atom label `" + labels[i] + "`");
      }
      if (!impl->index.emplace(labels[i], i).second) {
        throw Error(Errc::duplicate_label, "duplicate label `" + labels[i] + "`");
      }
    }
    impl->labels = std::move(labels);
    impl_ = std::move(impl);
  }

  const std::string& name() const noexcept { return impl_->name; }
  std::uint64_t id() const noexcept { return impl_->id; }
  std::size_t size() const noexcept { return impl_->labels.size(); }
  std::span<const std::string> atoms() const noexcept { return impl_->labels; }
  const std::string& label(std::size_t atom) const { return impl_->labels.at(atom); }

  std::optional<std::size_t> index_of(std::string_view label) const {
    auto it = impl_->index.find(std::string(label));
    if (it == impl_->index.end()) return std::nullopt;
    return it->second;
  }

  std::uint64_t full_mask() const noexcept {
    return size() >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << size()) - 1);
  }

  Subset subset(std::uint64_t mask) const { return {id(), size(), mask & full_mask()}; }
  Subset empty_set() const { return subset(0); }
  Subset whole() const { return subset(full_mask()); }
  Subset singleton(std::size_t atom) const { return subset(std::uint64_t{1} << atom); }

  bool owns(const Subset& s) const noexcept { return s.frame_id() == id(); }

  void check_owns(const Subset& s) const {
    if (!owns(s)) {
      throw Error(Errc::frame_mismatch, "subset does not belong to frame `" + name() + "`");
    }
  }

  /// Renders `{a b c}` in atom order; `{}` for the empty set.
  std::string format(const Subset& s) const {
    check_owns(s);
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < size(); ++i) {
      if (!s.contains(i)) continue;
      if (!first) out += ' ';
      out += label(i);
      first = false;
    }
    out += '}';
    return out;
  }

  bool operator==(const Frame& other) const noexcept { return id() == other.id(); }

 private:
  struct Impl {
    std::uint64_t id = 0;
    std::string name;
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
  };
  std::shared_ptr<const Impl> impl_;
};

inline void require_same_frame(const Frame& a, const Frame& b) {
  if (!(a == b)) {
    throw Error(Errc::frame_mismatch, "frame `" + a.name() + "` does not match frame `" + b.name() + "`");
  }
}

/// Parses `frame <name>: <label> <label> ...`.
inline Frame parse_frame(std::string_view text) {
  auto line = detail::trim(text);
  constexpr std::string_view keyword = "frame";
  if (line.substr(0, keyword.size()) != keyword || line.size() == keyword.size() ||
      !detail::is_space(line[keyword.size()])) {
    throw Error(Errc::syntax, "expected `frame <name>: <labels>`, got `" + std::string(line) + "`");
  }
  line.remove_prefix(keyword.size());
  auto colon = line.find(':');
  if (colon == std::string_view::npos) {
    throw Error(Errc::syntax, "missing `:` after frame name in `" + std::string(text) + "`");
  }
  auto name = detail::trim(line.substr(0, colon));
  if (!detail::valid_name(name)) {
    throw Error(Errc::syntax, "invalid frame name `" + std::string(name) + "`");
  }
  std::vector<std::string> labels;
  for (auto tok : detail::split_ws(line.substr(colon + 1))) labels.emplace_back(tok);
  return Frame(std::string(name), std::move(labels));
}

/// The subset naming exactly the given atoms; duplicates collapse.
inline Subset subset_of(const Frame& frame, std::span<const std::string> labels) {
  std::uint64_t mask = 0;
  for (const auto& l : labels) {
    auto idx = frame.index_of(l);
    if (!idx) {
      throw Error(Errc::unknown_label, "unknown label `" + l + "` in frame `" + frame.name() + "`");
    }
    mask |= std::uint64_t{1} << *idx;
  }
  return frame.subset(mask);
}

inline Subset subset_of(const Frame& frame, std::initializer_list<std::string> labels) {
  return subset_of(frame, std::span<const std::string>(labels.begin(), labels.size()));
}

/// Parses a subset literal `{a b c}`. Separators are whitespace or commas.
/// A token `x..y` where both ends are labels selects the atoms between them
/// in declaration order, which is how integer scales spell intervals.
inline Subset parse_subset(const Frame& frame, std::string_view text) {
  auto body = detail::trim(text);
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
    throw Error(Errc::syntax, "expected subset literal `{...}`, got `" + std::string(text) + "`");
  }
  body = body.substr(1, body.size() - 2);
  std::string cleaned(body);
  for (char& c : cleaned) {
    if (c == ',') c = ' ';
  }
  std::uint64_t mask = 0;
  for (auto tok : detail::split_ws(cleaned)) {
    if (auto idx = frame.index_of(tok)) {
      mask |= std::uint64_t{1} << *idx;
      continue;
    }
    auto dots = tok.find("..");
    if (dots != std::string_view::npos) {
      auto lo = frame.index_of(tok.substr(0, dots));
      auto hi = frame.index_of(tok.substr(dots + 2));
      if (lo && hi && *lo <= *hi) {
        for (std::size_t i = *lo; i <= *hi; ++i) mask |= std::uint64_t{1} << i;
        continue;
      }
    }
    throw Error(Errc::unknown_label, "unknown label `" + std::string(tok) + "` in frame `" + frame.name() + "`");
  }
  return frame.subset(mask);
}

}  // namespace evpos
