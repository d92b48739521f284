#include "rkron/polyio.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace rkron {

namespace {

// Tokens of the stream with # comments removed.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

uint64_t parse_u64(const std::string& s, const char* what) {
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw invalid_input(std::string("malformed ") + what + ": '" + s + "'");
  }
  return v;
}

FieldElem parse_coeff(const std::string& s, const FieldCtx& F) {
  std::vector<uint64_t> parts;
  size_t start = 0;
  while (true) {
    size_t comma = s.find(',', start);
    std::string piece = s.substr(start, comma == std::string::npos ? comma : comma - start);
    parts.push_back(parse_u64(piece, "coefficient"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() != F.m()) {
    throw invalid_input("coefficient has wrong number of components for this field");
  }
  return F.from_coeffs(std::move(parts));
}

}  // namespace

PolyFile read_poly(std::istream& in) {
  std::vector<std::string> tokens = tokenize(in);
  if (tokens.size() < 3) throw invalid_input("polynomial file lacks the 'n q m' header");
  uint64_t n = parse_u64(tokens[0], "variable count");
  uint64_t q = parse_u64(tokens[1], "field characteristic");
  uint64_t m = parse_u64(tokens[2], "extension degree");
  if (n == 0) throw invalid_input("variable count must be >= 1");
  if (m == 0) throw invalid_input("extension degree must be >= 1");
  FieldCtx ctx = m == 1
                     ? FieldCtx::prime_field(q)
                     : FieldCtx::extension_field(q, static_cast<unsigned>(m),
                                                 default_modulus(q, static_cast<unsigned>(m)));
  size_t per_term = 1 + n;
  if ((tokens.size() - 3) % per_term != 0) {
    throw invalid_input("term lines must each hold a coefficient and n exponents");
  }
  std::vector<MultiTerm> terms;
  for (size_t i = 3; i < tokens.size(); i += per_term) {
    MultiTerm t;
    t.coeff = parse_coeff(tokens[i], ctx);
    t.exps.reserve(n);
    for (size_t k = 1; k <= n; ++k) t.exps.push_back(parse_u64(tokens[i + k], "exponent"));
    terms.push_back(std::move(t));
  }
  MultiPoly poly = MultiPoly::from_terms(static_cast<unsigned>(n), std::move(terms), ctx);
  return {std::move(ctx), std::move(poly)};
}

void write_poly(std::ostream& out, const MultiPoly& f, const FieldCtx& F) {
  out << f.nvars() << ' ' << F.q() << ' ' << F.m() << '\n';
  for (const auto& t : f.terms()) {
    for (unsigned i = 0; i < F.m(); ++i) {
      out << (i ? "," : "") << t.coeff.c[i];
    }
    for (uint64_t e : t.exps) out << ' ' << e;
    out << '\n';
  }
}

}  // namespace rkron
