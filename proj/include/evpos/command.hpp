#pragma once

#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evpos/document.hpp"
#include "evpos/elicit.hpp"
#include "evpos/error.hpp"
#include "evpos/evidence.hpp"
#include "evpos/fuzzy.hpp"
#include "evpos/possibility.hpp"

namespace evpos {

enum class Verb { query, convert, approx, condition, elicit, triangle, cardinality, classify, check };

/// One CLI invocation after argument parsing. `args` holds the verb's
/// positional operands in order:
///   query: measure object subset | convert: object | approx: mass
///   condition: fuzzy | triangle: mass subset | cardinality, classify: mass
///   check: statement | elicit: none (uses the options below)
struct Command {
  Verb verb = Verb::query;
  std::vector<std::string> args;
  std::optional<std::string> prior;
  std::optional<std::string> statement;
  std::optional<std::string> frame;
  std::optional<std::string> core;
  std::optional<double> alpha;
  std::string method = "both";
  bool csv = false;
};

/// Fixed six decimals; negative zero prints as zero.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v + 0.0);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace detail {

inline std::string join_values(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += format_number(values[i]);
  }
  return out;
}

inline std::string mass_block(const std::string& name, const std::string& frame_name, const MassFunction& m) {
  std::string out = "mass " + name + " over " + frame_name + ":\n";
  for (const auto& f : m.focals()) {
    out += "  " + m.frame().format(f.set) + " " + format_number(static_cast<double>(f.weight)) + "\n";
  }
  return out;
}

inline std::string mass_csv(const MassFunction& m) {
  std::string out = "subset,weight\n";
  for (const auto& f : m.focals()) {
    out += m.frame().format(f.set) + "," + format_number(static_cast<double>(f.weight)) + "\n";
  }
  return out;
}

inline std::string pi_line(const std::string& keyword, const std::string& name, const Frame& frame,
                           std::span<const double> values) {
  return keyword + " " + name + " over " + frame.name() + ": " + join_values(values) + "\n";
}

enum class Kind { mass, pi, prob, fuzzy, statement };

inline Kind resolve(const Document& doc, const std::string& name) {
  std::vector<Kind> found;
  if (doc.masses.count(name)) found.push_back(Kind::mass);
  if (doc.possibilities.count(name)) found.push_back(Kind::pi);
  if (doc.probabilities.count(name)) found.push_back(Kind::prob);
  if (doc.fuzzy_sets.count(name)) found.push_back(Kind::fuzzy);
  if (doc.statements.count(name)) found.push_back(Kind::statement);
  if (found.empty()) throw Error(Errc::unknown_name, "unknown object `" + name + "`");
  if (found.size() > 1) throw Error(Errc::kind_mismatch, "name `" + name + "` is declared with more than one kind");
  return found.front();
}

// Mass functions, or probability distributions read as Bayesian masses.
inline MassFunction require_mass(const Document& doc, const std::string& name) {
  if (auto it = doc.masses.find(name); it != doc.masses.end()) return it->second;
  if (auto it = doc.probabilities.find(name); it != doc.probabilities.end()) return from_probability(it->second);
  resolve(doc, name);
  throw Error(Errc::kind_mismatch, "`" + name + "` is not a mass function or probability distribution");
}

inline const Frame& frame_of(const Document& doc, const std::string& name) {
  switch (resolve(doc, name)) {
    case Kind::mass: return doc.masses.at(name).frame();
    case Kind::pi: return doc.possibilities.at(name).frame();
    case Kind::prob: return doc.probabilities.at(name).frame();
    case Kind::fuzzy: return doc.fuzzy_sets.at(name).frame();
    case Kind::statement: return doc.statements.at(name).frame;
  }
  throw Error(Errc::unknown_name, "unknown object `" + name + "`");
}

inline void require_args(const Command& cmd, std::size_t n, std::string_view usage) {
  if (cmd.args.size() != n) throw Error(Errc::invalid_argument, "usage: " + std::string(usage));
}

inline std::string run_query(const Document& doc, const Command& cmd) {
  require_args(cmd, 3, "query <Bel|Pl|Pi|N> <object> <subset>");
  const auto& measure = cmd.args[0];
  const auto& name = cmd.args[1];
  if (measure != "Bel" && measure != "Pl" && measure != "Pi" && measure != "N") {
    throw Error(Errc::invalid_argument, "unknown measure `" + measure + "`; expected Bel, Pl, Pi or N");
  }
  const Kind kind = resolve(doc, name);
  const Subset a = parse_subset(frame_of(doc, name), cmd.args[2]);
  const bool lower = measure == "Bel" || measure == "N";
  double value = 0.0;
  auto on_mass = [&](const MassFunction& m) {
    if ((measure == "Pi" || measure == "N") && !is_consonant(m)) {
      throw Error(Errc::not_consonant, "`" + name + "` is not consonant; " + measure +
                                           " is undefined for it (use `approx` for a consonant approximation)");
    }
    return lower ? belief(m, a) : plausibility(m, a);
  };
  auto on_pi = [&](const PossibilityDistribution& pi) {
    if ((measure == "Bel" || measure == "Pl") && !pi.normalized()) {
      throw Error(Errc::unnormalized, "`" + name + "` is not normalized; Bel/Pl need a normalized distribution");
    }
    return lower ? necessity_of(pi, a) : possibility_of(pi, a);
  };
  switch (kind) {
    case Kind::mass: value = on_mass(doc.masses.at(name)); break;
    case Kind::prob: value = on_mass(from_probability(doc.probabilities.at(name))); break;
    case Kind::pi: value = on_pi(doc.possibilities.at(name)); break;
    case Kind::fuzzy: value = on_pi(doc.fuzzy_sets.at(name).membership); break;
    case Kind::statement: throw Error(Errc::kind_mismatch, "cannot query statement `" + name + "` directly");
  }
  if (cmd.csv) {
    return "measure,object,subset,value\n" + measure + "," + name + "," + frame_of(doc, name).format(a) + "," +
           format_number(value) + "\n";
  }
  return measure + " = " + format_number(value) + "\n";
}

inline std::string run_convert(const Document& doc, const Command& cmd) {
  require_args(cmd, 1, "convert <object>");
  const auto& name = cmd.args[0];
  auto emit_mass = [&](const MassFunction& m) {
    return cmd.csv ? mass_csv(m) : mass_block(name + "_mass", m.frame().name(), m);
  };
  switch (resolve(doc, name)) {
    case Kind::pi: return emit_mass(pi_to_mass(doc.possibilities.at(name)));
    case Kind::fuzzy: return emit_mass(pi_to_mass(doc.fuzzy_sets.at(name).membership));
    case Kind::prob: return emit_mass(from_probability(doc.probabilities.at(name)));
    case Kind::mass: {
      const auto& m = doc.masses.at(name);
      if (!is_consonant(m)) {
        throw Error(Errc::not_consonant, "mass `" + name + "` is not consonant; use `approx` instead of `convert`");
      }
      const auto pi = contour(m);
      if (cmd.csv) {
        std::string out = "atom,pi\n";
        for (std::size_t i = 0; i < pi.values().size(); ++i) out += m.frame().label(i) + "," + format_number(pi[i]) + "\n";
        return out;
      }
      return pi_line("pi", name + "_pi", m.frame(), pi.values());
    }
    case Kind::statement: break;
  }
  throw Error(Errc::kind_mismatch, "cannot convert statement `" + name + "`");
}

inline std::string run_approx(const Document& doc, const Command& cmd) {
  require_args(cmd, 1, "approx <mass>");
  const auto& name = cmd.args[0];
  const auto m = require_mass(doc, name);
  const auto approx = consonant_approximate(m);
  if (cmd.csv) {
    std::string out = "atom,contour,pi\n";
    for (std::size_t i = 0; i < m.frame().size(); ++i) {
      out += m.frame().label(i) + "," + format_number(approx.contour[i]) + "," + format_number(approx.distribution[i]) + "\n";
    }
    return out;
  }
  return pi_line("pi", name + "_approx", m.frame(), approx.distribution.values()) +
         "consistent = " + (approx.consistent ? "true" : "false") + "\n" + "height = " + format_number(approx.height) + "\n";
}

inline std::string run_condition(const Document& doc, const Command& cmd) {
  require_args(cmd, 1, "condition <fuzzy> [--prior <prob>]");
  const auto& name = cmd.args[0];
  auto it = doc.fuzzy_sets.find(name);
  if (it == doc.fuzzy_sets.end()) {
    resolve(doc, name);
    throw Error(Errc::kind_mismatch, "`" + name + "` is not a fuzzy set");
  }
  const FuzzySet& f = it->second;
  const Frame& frame = f.frame();
  if (!cmd.prior) {
    const auto res = possibilistic_condition(f);
    if (cmd.csv) {
      std::string out = "x,pi,certainty\n";
      for (std::size_t i = 0; i < frame.size(); ++i) {
        out += frame.label(i) + "," + format_number(res.distribution[i]) + "," + format_number(res.certainty[i]) + "\n";
      }
      return out;
    }
    return pi_line("pi", name + "_given", frame, res.distribution.values()) +
           "certainty " + name + "_given over " + frame.name() + ": " + join_values(res.certainty) + "\n";
  }
  auto pit = doc.probabilities.find(*cmd.prior);
  if (pit == doc.probabilities.end()) throw Error(Errc::unknown_name, "--prior: unknown prob `" + *cmd.prior + "`");
  const auto& prior = pit->second;
  const double pf = fuzzy_event_probability(f, prior);
  const auto post = bayes_fuzzy_condition(prior, f);
  if (cmd.csv) {
    std::string out = "x,prior,posterior\n";
    for (std::size_t i = 0; i < frame.size(); ++i) {
      out += frame.label(i) + "," + format_number(prior[i]) + "," + format_number(post[i]) + "\n";
    }
    return out;
  }
  return "P(" + name + ") = " + format_number(pf) + "\n" + pi_line("prob", name + "_posterior", frame, post.values());
}

inline std::string bracket_text(const BracketReport& r, bool csv) {
  if (csv) {
    return "subsets,violations,max_violation,min_width,max_width,core_width\n" + std::to_string(r.subsets_checked) +
           "," + std::to_string(r.violations) + "," + format_number(r.max_violation) + "," +
           format_number(r.min_width) + "," + format_number(r.max_width) + "," + format_number(r.core_width) + "\n";
  }
  return "subsets checked = " + std::to_string(r.subsets_checked) + "\n" + "violations = " +
         std::to_string(r.violations) + "\n" + "max violation = " + format_number(r.max_violation) + "\n" +
         "min width = " + format_number(r.min_width) + "\n" + "max width = " + format_number(r.max_width) + "\n" +
         "core width = " + format_number(r.core_width) + "\n";
}

inline std::string elicit_statement(const Command& cmd, const VagueStatement& s, const std::string& name) {
  const auto& method = cmd.method;
  if (method != "maxent" && method != "minspec" && method != "both" && method != "check") {
    throw Error(Errc::invalid_argument, "--method: expected maxent, minspec, both or check, got `" + method + "`");
  }
  if (method == "check") return bracket_text(bracket_check(s), cmd.csv);
  std::string text;
  std::string csv = "kind,item,value\n";
  if (method == "maxent" || method == "both") {
    const auto p = maxent_distribution(s);
    text += pi_line("prob", name + "_maxent", s.frame, p.values());
    text += "entropy = " + format_number(entropy(p.values())) + "\n";
    for (std::size_t i = 0; i < s.frame.size(); ++i) csv += "p," + s.frame.label(i) + "," + format_number(p[i]) + "\n";
    csv += "entropy,," + format_number(entropy(p.values())) + "\n";
  }
  if (method == "minspec" || method == "both") {
    const auto ms = minspec_mass(s);
    text += mass_block(name + "_minspec", s.frame.name(), ms.mass);
    text += pi_line("pi", name + "_minspec_pi", s.frame, ms.distribution.values());
    text += "expected cardinality = " + format_number(expected_cardinality(ms.mass)) + "\n";
    for (const auto& f : ms.mass.focals()) {
      csv += "focal," + s.frame.format(f.set) + "," + format_number(static_cast<double>(f.weight)) + "\n";
    }
    for (std::size_t i = 0; i < s.frame.size(); ++i) {
      csv += "pi," + s.frame.label(i) + "," + format_number(ms.distribution[i]) + "\n";
    }
    csv += "cardinality,," + format_number(expected_cardinality(ms.mass)) + "\n";
  }
  return cmd.csv ? csv : text;
}

inline std::string run_elicit(const Document& doc, const Command& cmd) {
  if (cmd.statement) {
    if (cmd.frame || cmd.core || cmd.alpha) {
      throw Error(Errc::invalid_argument, "--statement cannot be combined with --frame/--core/--alpha");
    }
    auto it = doc.statements.find(*cmd.statement);
    if (it == doc.statements.end()) throw Error(Errc::unknown_name, "--statement: unknown statement `" + *cmd.statement + "`");
    return elicit_statement(cmd, it->second, it->first);
  }
  if (!cmd.frame || !cmd.core || !cmd.alpha) {
    throw Error(Errc::invalid_argument, "elicit needs --statement <name> or all of --frame, --core, --alpha");
  }
  const Frame& frame = doc.frame(*cmd.frame);
  Subset core;
  try {
    core = parse_subset(frame, *cmd.core);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("--core: ") + e.what());
  }
  if (!(*cmd.alpha >= 0.0 && *cmd.alpha <= 1.0)) {
    throw Error(Errc::invalid_statement, "--alpha: " + format_number(*cmd.alpha) + " outside [0,1]");
  }
  std::optional<VagueStatement> s;
  try {
    s = make_statement(frame, core, *cmd.alpha);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("--core: ") + e.what());
  }
  return elicit_statement(cmd, *s, "inline");
}

inline std::string run_triangle(const Document& doc, const Command& cmd) {
  require_args(cmd, 2, "triangle <mass> <subset>");
  const auto& name = cmd.args[0];
  const auto m = require_mass(doc, name);
  const auto pt = triangle_point(m, parse_subset(m.frame(), cmd.args[1]));
  std::string row = name + "," + format_number(pt.x) + "," + format_number(pt.y) + "," + std::string(to_string(pt.region)) +
                    "," + (pt.ignorance ? format_number(*pt.ignorance) : std::string()) + "\n";
  return cmd.csv ? "name,x,y,region,ignorance\n" + row : row;
}

inline std::string run_cardinality(const Document& doc, const Command& cmd) {
  require_args(cmd, 1, "cardinality <mass>");
  const auto& name = cmd.args[0];
  const double c = expected_cardinality(require_mass(doc, name));
  if (cmd.csv) return "object,expected_cardinality\n" + name + "," + format_number(c) + "\n";
  return "expected cardinality = " + format_number(c) + "\n";
}

inline std::string run_classify(const Document& doc, const Command& cmd) {
  require_args(cmd, 1, "classify <mass>");
  const auto& name = cmd.args[0];
  const auto c = classify(require_mass(doc, name));
  std::string labels;
  for (std::size_t i = 0; i < c.labels.size(); ++i) {
    if (i) labels += ' ';
    labels += to_string(c.labels[i]);
  }
  if (cmd.csv) return "object,class,labels\n" + name + "," + std::string(to_string(c.primary)) + "," + labels + "\n";
  return "class = " + std::string(to_string(c.primary)) + "\nlabels = " + labels + "\n";
}

inline std::string run_check(const Document& doc, const Command& cmd) {
  require_args(cmd, 1, "check <statement>");
  auto it = doc.statements.find(cmd.args[0]);
  if (it == doc.statements.end()) {
    resolve(doc, cmd.args[0]);
    throw Error(Errc::kind_mismatch, "`" + cmd.args[0] + "` is not a statement");
  }
  return bracket_text(bracket_check(it->second), cmd.csv);
}

}  // namespace detail

/// Runs one command against a parsed document and returns the rendered output.
inline std::string execute(const Document& doc, const Command& cmd) {
  switch (cmd.verb) {
    case Verb::query: return detail::run_query(doc, cmd);
    case Verb::convert: return detail::run_convert(doc, cmd);
    case Verb::approx: return detail::run_approx(doc, cmd);
    case Verb::condition: return detail::run_condition(doc, cmd);
    case Verb::elicit: return detail::run_elicit(doc, cmd);
    case Verb::triangle: return detail::run_triangle(doc, cmd);
    case Verb::cardinality: return detail::run_cardinality(doc, cmd);
    case Verb::classify: return detail::run_classify(doc, cmd);
    case Verb::check: return detail::run_check(doc, cmd);
  }
  throw Error(Errc::invalid_argument, "unknown command");
}

}  // namespace evpos
