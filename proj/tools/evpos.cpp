#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "evpos/evpos.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw evpos::Error(evpos::Errc::invalid_argument, "cannot open document `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evidence and possibility calculi over finite frames"};
  app.require_subcommand(1);

  std::string document;
  std::string out_path;
  evpos::Command cmd;
  app.add_option("document", document, "Document declaring frames, masses, distributions, ...")->required();
  app.add_flag("--csv", cmd.csv, "Emit CSV instead of text");
  app.add_option("--out", out_path, "Write output to a file instead of stdout");

  std::string measure, object, subset;
  auto* query = app.add_subcommand("query", "Bel, Pl, Pi or N of an object on a subset");
  query->add_option("measure", measure)->required()->check(CLI::IsMember({"Bel", "Pl", "Pi", "N"}));
  query->add_option("object", object)->required();
  query->add_option("subset", subset)->required();

  auto* convert = app.add_subcommand("convert", "Possibility distribution <-> consonant mass");
  convert->add_option("object", object)->required();

  auto* approx = app.add_subcommand("approx", "Consonant approximation of a mass function");
  approx->add_option("mass", object)->required();

  std::string prior;
  auto* condition = app.add_subcommand("condition", "Condition on a fuzzy set (possibilistic, or Bayesian with --prior)");
  condition->add_option("fuzzy", object)->required();
  condition->add_option("--prior", prior, "Prior probability distribution");

  std::string statement, frame, core;
  double alpha = 0.0;
  auto* elicit = app.add_subcommand("elicit", "Represent an uncertain vague statement");
  elicit->add_option("--statement", statement);
  elicit->add_option("--frame", frame);
  elicit->add_option("--core", core);
  elicit->add_option("--alpha", alpha);
  elicit->add_option("--method", cmd.method)->check(CLI::IsMember({"maxent", "minspec", "both", "check"}));

  auto* triangle = app.add_subcommand("triangle", "Position of (Bel(a), Bel(not a)) in the uncertainty triangle");
  triangle->add_option("mass", object)->required();
  triangle->add_option("subset", subset)->required();

  auto* cardinality = app.add_subcommand("cardinality", "Expected cardinality of a mass function");
  cardinality->add_option("mass", object)->required();

  auto* classify = app.add_subcommand("classify", "Structural class of a mass function");
  classify->add_option("mass", object)->required();

  auto* check = app.add_subcommand("check", "Exhaustive bracket check for a statement");
  check->add_option("statement", object)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*query) {
    cmd.verb = evpos::Verb::query;
    cmd.args = {measure, object, subset};
  } else if (*convert) {
    cmd.verb = evpos::Verb::convert;
    cmd.args = {object};
  } else if (*approx) {
    cmd.verb = evpos::Verb::approx;
    cmd.args = {object};
  } else if (*condition) {
    cmd.verb = evpos::Verb::condition;
    cmd.args = {object};
    if (condition->count("--prior")) cmd.prior = prior;
  } else if (*elicit) {
    cmd.verb = evpos::Verb::elicit;
    if (elicit->count("--statement")) cmd.statement = statement;
    if (elicit->count("--frame")) cmd.frame = frame;
    if (elicit->count("--core")) cmd.core = core;
    if (elicit->count("--alpha")) cmd.alpha = alpha;
  } else if (*triangle) {
    cmd.verb = evpos::Verb::triangle;
    cmd.args = {object, subset};
  } else if (*cardinality) {
    cmd.verb = evpos::Verb::cardinality;
    cmd.args = {object};
  } else if (*classify) {
    cmd.verb = evpos::Verb::classify;
    cmd.args = {object};
  } else if (*check) {
    cmd.verb = evpos::Verb::check;
    cmd.args = {object};
  }

  try {
    const auto doc = evpos::parse_document(read_file(document));
    const auto output = evpos::execute(doc, cmd);
    if (out_path.empty()) {
      std::cout << output;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw evpos::Error(evpos::Errc::invalid_argument, "--out: cannot write `" + out_path + "`");
      out << output;
    }
  } catch (const evpos::Error& e) {
    std::cerr << "error: " << document << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
