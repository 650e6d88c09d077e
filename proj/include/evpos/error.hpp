#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace evpos {

/// Failure categories raised by the library. Each construction or query
/// error maps to exactly one code so callers can branch without parsing
/// message text.
enum class Errc {
  syntax,
  duplicate_label,
  empty_frame,
  frame_too_large,
  invalid_label,
  unknown_label,
  frame_mismatch,
  empty_focal,
  nonpositive_weight,
  mass_sum,
  out_of_range,
  size_mismatch,
  unnormalized,
  null_conditioning,
  invalid_statement,
  scan_too_large,
  contingent_required,
  not_consonant,
  duplicate_name,
  unknown_name,
  kind_mismatch,
  invalid_argument,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::syntax: return "syntax";
    case Errc::duplicate_label: return "duplicate_label";
    case Errc::empty_frame: return "empty_frame";
    case Errc::frame_too_large: return "frame_too_large";
    case Errc::invalid_label: return "invalid_label";
    case Errc::unknown_label: return "unknown_label";
    case Errc::frame_mismatch: return "frame_mismatch";
    case Errc::empty_focal: return "empty_focal";
    case Errc::nonpositive_weight: return "nonpositive_weight";
    case Errc::mass_sum: return "mass_sum";
    case Errc::out_of_range: return "out_of_range";
    case Errc::size_mismatch: return "size_mismatch";
    case Errc::unnormalized: return "unnormalized";
    case Errc::null_conditioning: return "null_conditioning";
    case Errc::invalid_statement: return "invalid_statement";
    case Errc::scan_too_large: return "scan_too_large";
    case Errc::contingent_required: return "contingent_required";
    case Errc::not_consonant: return "not_consonant";
    case Errc::duplicate_name: return "duplicate_name";
    case Errc::unknown_name: return "unknown_name";
    case Errc::kind_mismatch: return "kind_mismatch";
    case Errc::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message) : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace evpos
