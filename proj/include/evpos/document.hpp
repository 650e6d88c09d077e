#pragma once

#include <charconv>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evpos/elicit.hpp"
#include "evpos/error.hpp"
#include "evpos/evidence.hpp"
#include "evpos/frame.hpp"
#include "evpos/fuzzy.hpp"
#include "evpos/possibility.hpp"

namespace evpos {

/// Everything declared in a document, keyed by name within each kind.
/// Scales also register their implied frame under the scale's name.
struct Document {
  std::map<std::string, Frame> frames;
  std::map<std::string, NumericScale> scales;
  std::map<std::string, MassFunction> masses;
  std::map<std::string, PossibilityDistribution> possibilities;
  std::map<std::string, ProbabilityDistribution> probabilities;
  std::map<std::string, FuzzySet> fuzzy_sets;
  std::map<std::string, VagueStatement> statements;
  std::map<std::string, std::size_t> source_lines;  // "<kind> <name>" -> line number

  const Frame& frame(const std::string& name) const {
    auto it = frames.find(name);
    if (it == frames.end()) throw Error(Errc::unknown_name, "unknown frame or scale `" + name + "`");
    return it->second;
  }
};

namespace detail {

inline double parse_number(std::string_view tok) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    throw Error(Errc::syntax, "invalid number `" + std::string(tok) + "`");
  }
  return v;
}

inline long parse_integer(std::string_view tok) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw Error(Errc::syntax, "invalid integer `" + std::string(tok) + "`");
  }
  return v;
}

struct Header {
  std::string keyword;
  std::string name;
  std::string over;  // empty when the declaration has no `over` clause
  std::string body;  // text after the colon
};

// `<keyword> <name> [over <frame>]: <body>`
inline Header parse_header(std::string_view line, bool needs_over) {
  auto colon = line.find(':');
  if (colon == std::string_view::npos) throw Error(Errc::syntax, "missing `:` in declaration");
  auto head = split_ws(line.substr(0, colon));
  Header h;
  h.body = std::string(trim(line.substr(colon + 1)));
  if (needs_over) {
    if (head.size() != 4 || head[2] != "over") {
      throw Error(Errc::syntax, "expected `" + std::string(head.empty() ? "" : head[0]) + " <name> over <frame>:`");
    }
    h.over = std::string(head[3]);
  } else if (head.size() != 2) {
    throw Error(Errc::syntax, "expected `" + std::string(head.empty() ? "" : head[0]) + " <name>:`");
  }
  h.keyword = std::string(head[0]);
  h.name = std::string(head[1]);
  if (!valid_name(h.name)) throw Error(Errc::syntax, "invalid name `" + h.name + "`");
  return h;
}

inline std::vector<double> parse_numbers(std::string_view body) {
  std::vector<double> out;
  for (auto tok : split_ws(body)) out.push_back(parse_number(tok));
  return out;
}

// `(x,mu) (x,mu) ...`, whitespace allowed inside the parentheses.
inline std::vector<std::pair<double, double>> parse_breakpoints(std::string_view body) {
  std::vector<std::pair<double, double>> out;
  std::size_t i = 0;
  while (true) {
    while (i < body.size() && is_space(body[i])) ++i;
    if (i == body.size()) break;
    if (body[i] != '(') throw Error(Errc::syntax, "expected `(` to open a breakpoint");
    auto close = body.find(')', i);
    if (close == std::string_view::npos) throw Error(Errc::syntax, "unterminated breakpoint `(`");
    auto inner = body.substr(i + 1, close - i - 1);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw Error(Errc::syntax, "breakpoint needs `(x,mu)`");
    out.emplace_back(parse_number(trim(inner.substr(0, comma))), parse_number(trim(inner.substr(comma + 1))));
    i = close + 1;
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented document format. Errors carry `line N:`.
inline Document parse_document(std::string_view text) {
  Document doc;
  std::vector<std::string> lines;
  {
    std::string current;
    std::istringstream in{std::string(text)};
    while (std::getline(in, current)) lines.push_back(current);
  }

  auto claim = [&](const std::string& kind, const std::string& name, std::size_t line_no) {
    if (!doc.source_lines.emplace(kind + " " + name, line_no).second) {
      throw Error(Errc::duplicate_name, "duplicate " + kind + " name `" + name + "`");
    }
  };

  std::size_t i = 0;
  while (i < lines.size()) {
    const std::size_t line_no = i + 1;
    std::string_view raw = lines[i];
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = detail::trim(raw);
    ++i;
    if (line.empty()) continue;
    try {
      const auto first = detail::split_ws(line).front();
      if (first == "frame") {
        auto frame = parse_frame(line);
        if (doc.frames.count(frame.name())) throw Error(Errc::duplicate_name, "duplicate frame name `" + frame.name() + "`");
        claim("frame", frame.name(), line_no);
        doc.frames.emplace(frame.name(), frame);
      } else if (first == "scale") {
        auto h = detail::parse_header(line, false);
        auto dots = h.body.find("..");
        if (dots == std::string::npos) throw Error(Errc::syntax, "expected `scale <name>: <lo>..<hi>`");
        const long lo = detail::parse_integer(detail::trim(std::string_view(h.body).substr(0, dots)));
        const long hi = detail::parse_integer(detail::trim(std::string_view(h.body).substr(dots + 2)));
        if (doc.frames.count(h.name)) throw Error(Errc::duplicate_name, "scale `" + h.name + "` reuses a frame name");
        claim("scale", h.name, line_no);
        NumericScale scale(h.name, lo, hi);
        doc.frames.emplace(h.name, scale.frame());
        doc.scales.emplace(h.name, std::move(scale));
      } else if (first == "mass") {
        auto h = detail::parse_header(line, true);
        if (!h.body.empty()) throw Error(Errc::syntax, "focal lines go on the lines after `mass ... :`");
        const Frame& frame = doc.frame(h.over);
        claim("mass", h.name, line_no);
        std::vector<Focal> focals;
        // Indented `{labels} weight` lines up to the next declaration.
        while (i < lines.size()) {
          std::string_view next = lines[i];
          if (auto hash = next.find('#'); hash != std::string_view::npos) next = next.substr(0, hash);
          auto body = detail::trim(next);
          if (body.empty()) {
            ++i;
            continue;
          }
          if (body.front() != '{') break;
          const std::size_t focal_line = i + 1;
          ++i;
          try {
            auto close = body.find('}');
            if (close == std::string_view::npos) throw Error(Errc::syntax, "unterminated subset literal");
            auto set = parse_subset(frame, body.substr(0, close + 1));
            auto rest = detail::split_ws(body.substr(close + 1));
            if (rest.size() != 1) throw Error(Errc::syntax, "expected `{labels} <weight>`");
            focals.push_back({set, static_cast<weight_t>(detail::parse_number(rest[0]))});
            if (set.empty()) throw Error(Errc::empty_focal, "focal element is the contradiction {}");
          } catch (const Error& e) {
            throw Error(e.code(), "line " + std::to_string(focal_line) + ": " + e.what());
          }
        }
        doc.masses.emplace(h.name, make_mass(frame, std::move(focals)));
      } else if (first == "pi" || first == "prob") {
        auto h = detail::parse_header(line, true);
        const Frame& frame = doc.frame(h.over);
        auto values = detail::parse_numbers(h.body);
        if (first == "pi") {
          claim("pi", h.name, line_no);
          doc.possibilities.emplace(h.name, make_possibility(frame, values));
        } else {
          claim("prob", h.name, line_no);
          doc.probabilities.emplace(h.name, make_probability(frame, values));
        }
      } else if (first == "fuzzy") {
        auto h = detail::parse_header(line, true);
        auto it = doc.scales.find(h.over);
        if (it == doc.scales.end()) throw Error(Errc::unknown_name, "unknown scale `" + h.over + "`");
        claim("fuzzy", h.name, line_no);
        doc.fuzzy_sets.emplace(h.name, fuzzy_from_breakpoints(h.name, it->second, detail::parse_breakpoints(h.body)));
      } else if (first == "statement") {
        auto h = detail::parse_header(line, true);
        const Frame& frame = doc.frame(h.over);
        // core {<labels>} alpha <v>
        std::string_view body = h.body;
        if (body.substr(0, 4) != "core") throw Error(Errc::syntax, "expected `core {<labels>} alpha <value>`");
        auto open = body.find('{');
        auto close = body.find('}');
        if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
          throw Error(Errc::syntax, "expected `core {<labels>} alpha <value>`");
        }
        auto core = parse_subset(frame, body.substr(open, close - open + 1));
        auto rest = detail::split_ws(body.substr(close + 1));
        if (rest.size() != 2 || rest[0] != "alpha") throw Error(Errc::syntax, "expected `alpha <value>` after the core");
        claim("statement", h.name, line_no);
        doc.statements.emplace(h.name, make_statement(frame, core, detail::parse_number(rest[1])));
      } else if (line.front() == '{') {
        throw Error(Errc::syntax, "focal line outside a `mass` declaration");
      } else {
        throw Error(Errc::syntax, "unknown declaration `" + std::string(first) + "`");
      }
    } catch (const Error& e) {
      std::string_view msg = e.what();
      if (msg.substr(0, 5) == "line ") throw;
      throw Error(e.code(), "line " + std::to_string(line_no) + ": " + std::string(msg));
    }
  }
  return doc;
}

}  // namespace evpos
