#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glmd/stratum.hpp"

namespace glmd {

// A simple endo-class, identified by a user-declared id.
struct SimpleEndoClassDescriptor {
  std::string id;
  int degree = 1;
  int e = 1;
  int f = 1;
  // Full simple stratum [Lambda, n, 0, beta] in M_{deg/gcd(deg, d)}(D) with [F[beta]:F] = deg.
  std::optional<Stratum> representative;

  bool operator==(const SimpleEndoClassDescriptor& o) const {
    return id == o.id && degree == o.degree && e == o.e && f == o.f;
  }
};

// Throws InvalidArgument unless degree >= 1 and e f = degree.
void check_descriptor(const SimpleEndoClassDescriptor& c);

struct EndoEntry {
  SimpleEndoClassDescriptor cls;
  int multiplicity = 0;
};

struct EndoParameter {
  int m = 1;
  int d = 1;
  // Keyed by descriptor id.
  std::map<std::string, EndoEntry> entries;

  // Adds mult to the entry for c; throws InconsistentLabeling if the id is already bound
  // to different invariants.
  void add(const SimpleEndoClassDescriptor& c, int mult);
  int degree() const;
  // (id, multiplicity) in id order.
  std::vector<std::pair<std::string, int>> key() const;
  std::string to_string() const;
  bool operator==(const EndoParameter& o) const { return m == o.m && d == o.d && key() == o.key(); }
};

struct EndoValidation {
  bool valid = true;
  std::vector<std::string> diagnostics;
};
// sum f(c) deg(c) = m d and d / gcd(deg(c), d) divides f(c).
EndoValidation validate(const EndoParameter& f, int m, int d);

// All valid parameters for (m, d) supported on the palette, ordered lexicographically by
// the (id, multiplicity) sequence.
std::vector<EndoParameter> enumerate(int m, int d, const std::vector<SimpleEndoClassDescriptor>& palette);

using BlockLabeler = std::function<SimpleEndoClassDescriptor(const StratumBlock&)>;

// f(c_i) = m_i d / deg(c_i) over the blocks of a certified full semisimple stratum.
// Throws NotFull for r != 0, NotCertifiedSemisimple, and InconsistentLabeling when a label
// disagrees with the block invariants.
EndoParameter from_stratum(const Stratum& s, const BlockLabeler& label);
// Labels given in the block order of certify(s).
EndoParameter from_stratum(const Stratum& s, const std::vector<SimpleEndoClassDescriptor>& labels);

struct LayoutBlock {
  SimpleEndoClassDescriptor cls;
  // dim_D of a minimal E (x) D-module: deg / gcd(deg, d).
  int module_dim_D = 0;
  // f(c) gcd(deg, d) / d.
  int multiplicity = 0;
  // D-coordinates [first, first + module_dim_D * multiplicity) of V.
  int first = 0;
};

struct Realization {
  int m = 0;
  int d = 0;
  std::vector<LayoutBlock> blocks;
  // Block-diagonal full stratum, present when every class has a representative.
  std::optional<Stratum> stratum;

  // Labels a certified block by the layout blocks its idempotent meets.
  BlockLabeler labeler() const;
};

// Throws InvalidParameter unless f is valid for its (m, d).
Realization realize(const EndoParameter& f);

}  // namespace glmd
