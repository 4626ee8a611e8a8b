#include <chrono>

#include "doctest.h"
#include "khtangle/algebra_a.hpp"
#include "khtangle/algebra_b.hpp"

using namespace kht;

namespace {
const Vertex F = Vertex::Filled;
const Vertex H = Vertex::Hollow;
BLin S(int n, Vertex v) { return BLin::single(BBasis::spow(n, v)); }
BLin D(int l, Vertex v) { return BLin::single(BBasis::dpow(l, v)); }
BLin I(Vertex v) { return BLin::single(BBasis::idem(v)); }
}  // namespace

TEST_CASE("path algebra B") {
  CHECK(mul(Flavor::B, S(1, F), S(1, H)) == S(2, F));
  CHECK(mul(Flavor::B, S(1, F), S(1, F)).zero());
  CHECK(mul(Flavor::B, D(1, F), S(1, F)).zero());
  CHECK(mul(Flavor::B, S(2, H), D(1, H)).zero());
  CHECK(mul(Flavor::B, D(2, H), D(3, H)) == D(5, H));
  CHECK(mul(Flavor::B, I(F), S(3, F)) == S(3, F));
  CHECK(mul(Flavor::B, I(H), S(3, F)).zero());
  CHECK(BBasis::spow(3, F).target() == H);
  CHECK(BBasis::spow(4, F).target() == F);
}

TEST_CASE("H is central") {
  for (auto v : {F, H})
    for (const auto& b : basis_from(Flavor::B, v, 7)) {
      BLin x = BLin::single(b);
      CHECK(mul(Flavor::B, h_elem(v), x) == mul(Flavor::B, x, h_elem(b.target())));
      CHECK(h_mul(x) == mul(Flavor::B, h_elem(v), x));
    }
}

TEST_CASE("quotient to Bt is a homomorphism killing H") {
  for (auto v : {F, H}) {
    CHECK(q_map(h_elem(v)).zero());
    for (const auto& a : basis_from(Flavor::B, v, 6))
      for (const auto& b : basis_from(Flavor::B, a.target(), 6)) {
        BLin x = BLin::single(a), y = BLin::single(b);
        CHECK(q_map(mul(Flavor::B, x, y)) == mul(Flavor::Bt, q_map(x), q_map(y)));
      }
  }
  CHECK(q_map(D(1, F)) == S(2, F));
  CHECK(q_map(S(3, F)).zero());
  CHECK(q_map(D(2, H)).zero());
  CHECK(basis_from(Flavor::Bt, F, 10).size() == 3);
}

TEST_CASE("label text round trip") {
  BLin x = S(2, F) + D(1, F) + I(F);
  CHECK(parse_label(Flavor::B, format_label(x), F) == x);
  CHECK(parse_label(Flavor::B, "S", H) == S(1, H));
  CHECK_THROWS(parse_label(Flavor::Bt, "D^1", F));
  CHECK_THROWS(parse_label(Flavor::B, "Q^2", F));
  CHECK(format_label({}) == "0");
}

TEST_CASE("factorizations") {
  CHECK(factorizations(Flavor::B, BBasis::spow(3, F)).size() == 2);
  CHECK(factorizations(Flavor::B, BBasis::dpow(1, F)).empty());
  for (auto [a, b] : factorizations(Flavor::B, BBasis::spow(5, H)))
    CHECK(mul_basis(Flavor::B, a, b) == BBasis::spow(5, H));
}

TEST_CASE("A-infinity relations of A hold") {
  auto t = AProductTable::shipped();
  CHECK(t.entries().size() == 38);
  auto start = std::chrono::steady_clock::now();
  auto v = verify_ainfty(t, 5);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& bad : v) {
    std::string s;
    for (auto g : bad.sequence) s += std::string(to_string(g)) + " ";
    INFO(s);
    CHECK(bad.value.zero());
  }
  CHECK(v.empty());
  CHECK(secs < 1.0);
}

TEST_CASE("table text round trip") {
  auto t = AProductTable::shipped();
  auto u = AProductTable::parse(t.format());
  CHECK(u.entries() == t.entries());
  CHECK_THROWS(AProductTable::parse("mu2 a0 zz -> a0"));
  CHECK_THROWS(AProductTable::parse("mu2 a0 a1 -> a0"));
  CHECK_THROWS(AProductTable::parse("mu4 a0 a0 a0 a0 -> a0"));
}

TEST_CASE("As is an associative subalgebra") {
  auto r = verify_subalgebra(AProductTable::shipped());
  CHECK(r.relation_violations.empty());
  CHECK(r.higher_products.empty());
  CHECK(r.closure_failures.empty());
}

TEST_CASE("dictionary Bt to As is an anti-homomorphism") {
  auto t = AProductTable::shipped();
  CHECK(bt_to_as(S(1, F) + S(1, H)) == ALin{AGen::p10, AGen::p01});
  for (auto v : {F, H})
    for (const auto& a : basis_from(Flavor::Bt, v, 2))
      for (const auto& b : basis_from(Flavor::Bt, a.target(), 2)) {
        BLin x = BLin::single(a), y = BLin::single(b);
        ALin lhs = bt_to_as(mul(Flavor::Bt, x, y));
        ALin rhs;
        for (auto gx : bt_to_as(x))
          for (auto gy : bt_to_as(y)) {
            ASeq seq{gy, gx};
            rhs += t.mu(seq);
          }
        CHECK(lhs == rhs);
      }
}

TEST_CASE("mutation suite detects broken tables") {
  auto t = AProductTable::shipped();
  auto muts = single_entry_mutations(t);
  CHECK(muts.size() == 2 * t.entries().size());
  std::size_t caught = 0;
  for (const auto& m : muts)
    if (!verify_ainfty(m.table, 5).empty()) ++caught;
  MESSAGE("caught " << caught << " of " << muts.size());
  CHECK(caught * 10 >= muts.size() * 9);
}
