#pragma once

#include <vector>

#include <gmpxx.h>

#include "glmd/padic.hpp"
#include "glmd/residue.hpp"

namespace glmd {

// Polynomial over Q_p, coefficients low to high.
struct PadicPoly {
  std::vector<PadicScalar> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
  const PadicScalar& lead() const { return c.back(); }
};

PadicPoly poly_from_ints(std::int64_t p, int cap, const std::vector<std::int64_t>& c);
PadicPoly poly_mul(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_sub(const PadicPoly& a, const PadicPoly& b);
PadicPoly poly_trim(PadicPoly a);
// Remainder modulo a monic polynomial.
PadicPoly poly_mod(const PadicPoly& a, const PadicPoly& m);
// Reduction mod p of a polynomial with integral coefficients.
ResiduePoly reduce_mod_p(const PadicPoly& a, const FieldPtr& fp);
PadicPoly lift_residue_poly(const ResiduePoly& a, std::int64_t p, int cap);
// Taylor shift a(X + s).
PadicPoly poly_shift(const PadicPoly& a, const PadicScalar& s);

struct NewtonSegment {
  // Valuation of the roots on this segment (the negated slope of the lower hull).
  mpq_class slope;
  int length = 0;
  // Ramification suggested by the segment: the denominator of the slope.
  int ramification() const { return static_cast<int>(slope.get_den().get_si()); }
};

// Lower convex hull of (i, v(a_i)), segments ordered by increasing root valuation.
// Zero coefficients are skipped; a zero constant term contributes roots of infinite valuation,
// reported as a trailing segment with slope kInfVal.
std::vector<NewtonSegment> newton_polygon(const PadicPoly& P);

// Lifts a factorization of a monic P mod p into pairwise coprime monic factors to
// a factorization mod p^N.
std::vector<PadicPoly> hensel_lift(const PadicPoly& P, const std::vector<ResiduePoly>& factors, int N);

}  // namespace glmd
