#include <random>

#include "doctest.h"
#include "khtangle/conecat.hpp"

using namespace kht;

namespace {
const Vertex F = Vertex::Filled;
const Vertex H = Vertex::Hollow;
ConeMorphism P(Family f, bool hat, int i, Vertex v) { return to_positional(pb(f, hat, i, v)); }
ConeMorphism P(Family f, bool hat, int i, Vertex s, Vertex d) { return to_positional(pb(f, hat, i, s, d)); }

std::vector<NamedBasis> all_basis(int w) {
  std::vector<NamedBasis> out;
  for (auto s : {F, H})
    for (auto d : {F, H})
      for (auto p : named_basis(s, d, w)) out.push_back(p);
  return out;
}
}  // namespace

TEST_CASE("named basis in positional form") {
  auto a = P(Family::A, false, 3, F);
  CHECK(a.tt == BLin::single(BBasis::spow(6, F)));
  CHECK(a.bb == a.tt);
  CHECK(a.tb.zero());
  auto bh = P(Family::B, true, 0, H);
  CHECK(bh.bb == BLin::single(BBasis::idem(H)));
  CHECK(bh.tt.zero());
  auto q = P(Family::Q, false, 2, F, H);
  CHECK(q.tb == BLin::single(BBasis::spow(3, F)));
}

TEST_CASE("positional and named bases are inverse") {
  for (const auto& p : all_basis(16)) {
    INFO(to_string(p));
    CHECK(to_named_basis(to_positional(p)) == PLin::single(p));
    CHECK(parse_named_basis(to_string(p)) == p);
  }
  CHECK(!parse_named_basis("P^1_0"));
  CHECK(!parse_named_basis("C^0_0"));
  CHECK(!parse_named_basis("A^0_01"));
}

TEST_CASE("composition") {
  auto id0 = P(Family::A, false, 0, F);
  CHECK(compose_c(id0, id0) == id0);
  CHECK(compose_c(P(Family::C, false, 1, F), P(Family::C, false, 1, F)) == P(Family::C, false, 2, F));
  CHECK(compose_c(P(Family::B, false, 0, F), P(Family::B, false, 0, F)).is_zero());
  CHECK(mu2_c(P(Family::P, false, 1, H, F), P(Family::P, false, 1, F, H)) == P(Family::A, false, 1, F));
}

TEST_CASE("differential formulas") {
  for (auto v : {F, H}) {
    CHECK(diff_c(P(Family::A, true, 0, v)) == P(Family::A, false, 1, v) + P(Family::C, false, 1, v));
    CHECK(diff_c(P(Family::B, true, 0, v)) == P(Family::B, false, 1, v) + P(Family::D, false, 1, v));
    for (int k = 1; k <= 6; ++k) {
      CHECK(diff_c(P(Family::A, true, k, v)) == P(Family::A, false, k + 1, v));
      CHECK(diff_c(P(Family::B, true, k, v)) == P(Family::B, false, k + 1, v));
      CHECK(diff_c(P(Family::C, true, k, v)) == P(Family::C, false, k + 1, v));
      CHECK(diff_c(P(Family::D, true, k, v)) == P(Family::D, false, k + 1, v));
      CHECK(diff_c(P(Family::P, true, k, v, other(v))) == P(Family::P, false, k + 1, v, other(v)));
      CHECK(diff_c(P(Family::Q, true, k, v, other(v))) == P(Family::Q, false, k + 1, v, other(v)));
    }
    for (int k = 0; k <= 6; ++k) CHECK(diff_c(P(Family::A, false, k, v)).is_zero());
  }
}

TEST_CASE("d squared, Leibniz, associativity, units") {
  auto basis = all_basis(20);
  for (const auto& p : basis) CHECK(diff_c(diff_c(to_positional(p))).is_zero());
  auto small = all_basis(6);
  for (const auto& p : small)
    for (const auto& q : small) {
      if (p.dst != q.src) continue;
      auto f = to_positional(p), g = to_positional(q);
      CHECK(diff_c(compose_c(f, g)) == compose_c(diff_c(f), g) + compose_c(f, diff_c(g)));
    }
  auto tiny = all_basis(4);
  for (const auto& p : tiny) {
    auto f = to_positional(p);
    CHECK(compose_c(P(Family::A, false, 0, p.src), f) == f);
    CHECK(compose_c(f, P(Family::A, false, 0, p.dst)) == f);
    for (const auto& q : tiny) {
      if (p.dst != q.src) continue;
      for (const auto& r : tiny) {
        if (q.dst != r.src) continue;
        auto g = to_positional(q), h = to_positional(r);
        CHECK(compose_c(compose_c(f, g), h) == compose_c(f, compose_c(g, h)));
      }
    }
  }
}

TEST_CASE("homology of C") {
  auto e0 = homology_c(F, F, 10);
  CHECK(e0.dims == std::vector<std::size_t>{2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(homology_c(H, H, 10).total() == 4);
  auto x = homology_c(H, F, 4);
  CHECK(x.dims == std::vector<std::size_t>{0, 2, 0, 0, 0});
  CHECK(homology_c(F, H, 10).total() == 2);
}

TEST_CASE("Cs membership") {
  CHECK(in_subalgebra_cs(P(Family::C, false, 1, F)));
  CHECK(!in_subalgebra_cs(P(Family::B, false, 0, F)));
  CHECK(in_subalgebra_cs(ConeMorphism::zero(F, F)));
  CHECK(in_subalgebra_cs(P(Family::P, true, 2, F, H)));
  CHECK(!in_subalgebra_cs(P(Family::Q, true, 1, F, H)));
}
