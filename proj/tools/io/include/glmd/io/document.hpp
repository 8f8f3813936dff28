#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "glmd/corestrict.hpp"
#include "glmd/stratum.hpp"
#include "json.hpp"

namespace glmd::io {

inline constexpr const char* kStratumSchema = "glmd.stratum/1";
inline constexpr const char* kReportSchema = "glmd.report/1";

// a pi_D^pi with a = sum coeffs[i] x^i in L, x the generator of L.
struct Term {
  int pi = 0;
  std::vector<mpq_class> coeffs;
};
using EntryDoc = std::vector<Term>;

// Row-major m x m matrix over D.
struct ElementDoc {
  int m = 0;
  std::vector<EntryDoc> entries;
};

struct BlockClaim {
  int dim_D = 0;
  int e = 1;
  int f = 1;
};

struct StratumDocument {
  std::int64_t p = 0;
  int d = 1;
  int m = 1;
  int center_degree = 1;
  // 0 selects the default.
  int precision = 0;
  // profile[j][k] = c_k(j) for j below the o_D-period.
  std::vector<std::vector<int>> profile;
  int n = 0;
  int r = 0;
  ElementDoc beta;
  // beta(1), beta(2), ... at depths r + 1, r + 2, ...
  std::vector<ElementDoc> defining_sequence;
  std::vector<BlockClaim> claims;
  std::optional<ElementDoc> element;
};

// Parses and canonicalizes; throws ParseError.
StratumDocument parse_document(const nlohmann::ordered_json& j);
StratumDocument parse_document_text(const std::string& text);
StratumDocument load_document(const std::string& path);
nlohmann::ordered_json to_json(const StratumDocument& doc);

// Default working precision for p.
int default_precision(std::int64_t p);

struct BuiltStratum {
  AlgebraPtr D;
  Stratum stratum;
  std::optional<DefiningSequence> sequence;
  std::optional<MatD> element;
};
// precision > 0 overrides the document.
BuiltStratum build(const StratumDocument& doc, int precision = 0);
MatD build_element(const DivisionAlgebra& D, const ElementDoc& e);
nlohmann::ordered_json element_to_json(const ElementDoc& e);
// Balanced representatives of the known digits; exact for elements built from documents
// whose rationals are p-adically representable at the working precision.
mpq_class balanced_rational(const PadicScalar& x);
ElementDoc approximate_element(const DivisionAlgebra& D, const MatD& x);

}  // namespace glmd::io
