#include <doctest.h>

#include "rkron/field.hpp"

using namespace rkron;

TEST_CASE("prime field arithmetic on frozen values") {
  FieldCtx F = FieldCtx::prime_field(7);
  FieldElem a = F.from_residue(3), b = F.from_residue(5);
  CHECK(F.mul(a, b) == F.one());
  CHECK(F.add(a, b) == F.one());
  CHECK(F.pow(a, 6) == F.one());
  CHECK(F.pow(a, 2) == F.from_residue(2));
  CHECK(F.inv(a) == b);
  CHECK(F.div(F.from_residue(6), a) == F.from_residue(2));
  CHECK(F.neg(a) == F.from_residue(4));
  CHECK(F.sub(a, b) == F.from_residue(5));
  CHECK(F.is_zero(F.sub(a, a)));
  CHECK(F.size() == 7);
  CHECK(F.order() == 6);
  CHECK_THROWS_AS(F.inv(F.zero()), invalid_input);
}

TEST_CASE("field construction guards") {
  CHECK_THROWS_AS(FieldCtx::prime_field(4), invalid_input);
  CHECK_THROWS_AS(FieldCtx::prime_field(1), invalid_input);
  // Beyond the residue range, prime or not.
  CHECK_THROWS_AS(FieldCtx::prime_field(9223372036854775837ULL), invalid_input);
  // Reducible moduli are rejected: z^2 and (z+1)^2 over F_2.
  CHECK_THROWS_AS(FieldCtx::extension_field(2, 2, {0, 0}), invalid_input);
  CHECK_THROWS_AS(FieldCtx::extension_field(2, 2, {1, 0}), invalid_input);
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(FieldCtx::make(5, 0, rng), invalid_input);
  CHECK_THROWS_AS(find_irreducible(3, 1, rng), invalid_input);
}

TEST_CASE("canonical moduli") {
  CHECK(default_modulus(2, 2) == std::vector<uint64_t>({1, 1}));  // z^2+z+1, unique
  CHECK(default_modulus(3, 2) == std::vector<uint64_t>({1, 0}));  // z^2+1
  std::mt19937_64 rng(5);
  CHECK(find_irreducible(2, 2, rng) == std::vector<uint64_t>({1, 1}));
}

TEST_CASE("F_4 multiplication table") {
  FieldCtx F = FieldCtx::extension_field(2, 2, default_modulus(2, 2));
  FieldElem z = F.from_coeffs({0, 1});
  FieldElem z1 = F.from_coeffs({1, 1});
  CHECK(F.mul(z, z) == z1);        // z^2 = z + 1
  CHECK(F.mul(z, z1) == F.one());  // z^3 = 1
  CHECK(F.pow(z, 3) == F.one());
  CHECK(F.inv(z) == z1);
  CHECK(F.add(z, z) == F.zero());  // characteristic 2
  CHECK(F.size() == 4);
  CHECK(F.order() == 3);
}

TEST_CASE("extension arithmetic satisfies field laws") {
  std::mt19937_64 rng(11);
  FieldCtx F = FieldCtx::make(3, 4, rng);
  for (int i = 0; i < 100; ++i) {
    FieldElem a = F.random_element(rng);
    FieldElem b = F.random_nonzero(rng);
    FieldElem c = F.random_element(rng);
    CHECK(F.div(F.mul(a, b), b) == a);
    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
    CHECK(F.mul(F.inv(b), b) == F.one());
  }
  FieldElem a = F.random_nonzero(rng);
  CHECK(F.pow(a, F.order()) == F.one());  // bigint exponent path
  CHECK(F.pow(a, F.size()) == a);         // Frobenius fixed under full power
}

TEST_CASE("primitive element validation") {
  FieldCtx F = FieldCtx::prime_field(7);
  CHECK_FALSE(F.has_primitive());
  CHECK_THROWS_AS(F.primitive(), error);
  FieldCtx G = F.with_primitive(F.from_residue(3));
  CHECK(G.has_primitive());
  CHECK(G.primitive() == F.from_residue(3));
  // 2 generates only the order-3 subgroup of F_7*.
  CHECK_THROWS_AS(F.with_primitive(F.from_residue(2)), invalid_input);
  CHECK_THROWS_AS(F.with_primitive(F.zero()), invalid_input);

  std::mt19937_64 rng(3);
  FieldCtx E = FieldCtx::make(2, 6, rng);
  CHECK(E.has_primitive());
  // Powers of the discovered generator up to the group order are distinct.
  FieldElem x = E.one();
  std::vector<FieldElem> seen;
  for (uint64_t i = 0; i < 63; ++i) {
    for (const auto& s : seen) CHECK_FALSE(s == x);
    seen.push_back(x);
    x = E.mul(x, E.primitive());
  }
  CHECK(x == E.one());
}

TEST_CASE("projection and embedding") {
  FieldCtx E = FieldCtx::extension_field(7, 2, default_modulus(7, 2));
  FieldElem c = E.from_residue(4);
  CHECK(E.in_prime_field(c));
  FieldElem p = E.project_prime(c);
  CHECK(p.width() == 1);
  CHECK(E.embed(p) == c);
  FieldElem nc = E.from_coeffs({1, 2});
  CHECK_FALSE(E.in_prime_field(nc));
  CHECK_THROWS_AS(E.project_prime(nc), interp_failure);
}

TEST_CASE("same_field distinguishes contexts") {
  FieldCtx a = FieldCtx::prime_field(7);
  FieldCtx b = FieldCtx::prime_field(11);
  FieldCtx c = FieldCtx::extension_field(7, 2, default_modulus(7, 2));
  CHECK(a.same_field(FieldCtx::prime_field(7)));
  CHECK_FALSE(a.same_field(b));
  CHECK_FALSE(a.same_field(c));
  CHECK(a.same_field(a.with_primitive(a.from_residue(3))));
}

TEST_CASE("random elements are deterministic per seed") {
  FieldCtx F = FieldCtx::extension_field(5, 3, default_modulus(5, 3));
  std::mt19937_64 r1(99), r2(99);
  for (int i = 0; i < 20; ++i) {
    CHECK(F.random_element(r1) == F.random_element(r2));
  }
  std::mt19937_64 r3(1);
  for (int i = 0; i < 200; ++i) CHECK_FALSE(F.is_zero(F.random_nonzero(r3)));
}
