#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace glmd::cli {

using Report = nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string other;
  int precision = 0;
  std::uint64_t seed = 1;
  int trials = 0;
  int m = 1;
  int d = 1;
  std::string palette;
  std::string param;
  std::string labels;
};

struct Outcome {
  Report report;
  int exit_code = 0;
};

Outcome cmd_classify(const Options& o);
Outcome cmd_derive(const Options& o);
Outcome cmd_match(const Options& o);
Outcome cmd_char_eval(const Options& o);
Outcome cmd_endo(const std::string& sub, const Options& o);

// Indented key: value text.
std::string render_human(const Report& r);

}  // namespace glmd::cli
