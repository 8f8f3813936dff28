#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "glmd/error.hpp"
#include "glmd/io/document.hpp"

namespace {

int exit_code_for(glmd::ErrorKind k) {
  switch (k) {
    case glmd::ErrorKind::Undecidable:
      return 2;
    case glmd::ErrorKind::InsufficientPrecision:
      return 4;
    default:
      return 3;
  }
}

void emit(const glmd::cli::Report& r, const std::string& format) {
  if (format == "json")
    std::cout << r.dump(2) << "\n";
  else
    std::cout << glmd::cli::render_human(r);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace glmd::cli;
  CLI::App app{"Strata and endo-parameters for inner forms of GL_n over p-adic fields"};
  app.require_subcommand(1);
  Options o;
  std::string format = "human";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"human", "json"}));
  app.add_option("--precision", o.precision, "Working p-adic precision")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for randomized checks");

  auto add_input = [&](CLI::App* c) { c->add_option("--input", o.input, "Stratum document (JSON)")->required(); };

  auto* classify = app.add_subcommand("classify", "Classify a stratum");
  add_input(classify);
  classify->add_option("--trials", o.trials, "Random equivalent perturbations to re-classify");
  auto* derive = app.add_subcommand("derive", "Derived stratum and strata induction");
  add_input(derive);
  auto* match = app.add_subcommand("match", "Block matching of two semisimple strata");
  add_input(match);
  match->add_option("--other", o.other, "Second stratum document")->required();
  auto* chr = app.add_subcommand("char-eval", "Evaluate psi_beta on the document element");
  add_input(chr);

  auto* endo = app.add_subcommand("endo", "Endo-parameter calculus");
  endo->require_subcommand(1);
  std::string endo_sub;
  for (const char* name : {"validate", "enumerate", "realize", "from-stratum"}) {
    auto* c = endo->add_subcommand(name);
    c->add_option("--m", o.m, "Matrix size over D");
    c->add_option("--d", o.d, "Degree of D");
    if (std::string(name) == "enumerate") c->add_option("--palette", o.palette, "Classes: degK or ID:E:F, comma separated")->required();
    if (std::string(name) == "validate" || std::string(name) == "realize")
      c->add_option("--param", o.param, "CLASS=MULT, comma separated")->required();
    if (std::string(name) == "from-stratum") {
      add_input(c);
      c->add_option("--labels", o.labels, "Block labels ID:E:F in certification order");
    }
    c->callback([&endo_sub, name] { endo_sub = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  std::string command;
  try {
    Outcome out;
    if (classify->parsed()) {
      command = "classify";
      out = cmd_classify(o);
    } else if (derive->parsed()) {
      command = "derive";
      out = cmd_derive(o);
    } else if (match->parsed()) {
      command = "match";
      out = cmd_match(o);
    } else if (chr->parsed()) {
      command = "char-eval";
      out = cmd_char_eval(o);
    } else {
      command = "endo " + endo_sub;
      out = cmd_endo(endo_sub, o);
    }
    emit(out.report, format);
    return out.exit_code;
  } catch (const glmd::Error& e) {
    Report r{{"schema", glmd::io::kReportSchema}, {"command", command}, {"error", {{"name", e.name()}, {"message", e.what()}}}};
    if (format == "json")
      std::cout << r.dump(2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}
