#pragma once

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "glmd/corestrict.hpp"
#include "glmd/error.hpp"
#include "glmd/stratum.hpp"
#include "test_util.hpp"

namespace glmd::acceptance {

struct Result {
  bool pass = true;
  std::string details;
};

// Counts checks and keeps the first few failure messages.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 3) notes_.push_back(what);
  }
  void note(const std::string& s) { extra_.push_back(s); }
  int checks() const { return checks_; }
  int failures() const { return failures_; }

  Result result() const {
    std::ostringstream os;
    os << checks_ - failures_ << "/" << checks_ << " checks";
    for (const auto& s : extra_) os << ", " << s;
    for (const auto& s : notes_) os << "; failed: " << s;
    return {failures_ == 0 && checks_ > 0, os.str()};
  }

 private:
  int checks_ = 0;
  int failures_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> extra_;
};

struct NamedStratum {
  std::string name;
  Stratum s;
};

// Minimal simple strata over p in {2, 3, 5}, d in {1, 2}, covering unramified, ramified,
// central and non-maximal fields.
std::vector<NamedStratum> simple_strata();

MatD random_unit(const LatticeSequence& L, std::mt19937_64& rng);
DefiningSequence sequence_of(const Stratum& s, const std::vector<MatD>& betas);

Result residue_factorization();
Result reduced_trace_norm();
Result centralizer_filtration();
Result minimal_classification();
Result level_invariance();
Result intertwining_levels();
Result critical_exponent_scaling();
Result strata_induction_consistency();
Result exactness_identity();
Result character_laws();
Result endo_calculus();
Result matching_recovery();

}  // namespace glmd::acceptance
