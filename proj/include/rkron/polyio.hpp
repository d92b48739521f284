#pragma once

#include <iosfwd>

#include "rkron/poly.hpp"

namespace rkron {

/// Parsed polynomial file: header `n q m`, then one term per line as
/// `coeff e1 ... en`.  Extension coefficients are written `c0,c1,...,c(m-1)`;
/// `#` starts a comment.  Fields with m > 1 use the canonical modulus for
/// (q, m), so the header pins down the field completely.
struct PolyFile {
  FieldCtx ctx;
  MultiPoly poly;
};

PolyFile read_poly(std::istream& in);

void write_poly(std::ostream& out, const MultiPoly& f, const FieldCtx& F);

}  // namespace rkron
