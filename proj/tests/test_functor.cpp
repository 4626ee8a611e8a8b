#include <algorithm>
#include <chrono>

#include "doctest.h"
#include "khtangle/functor.hpp"

using namespace kht;

namespace {
std::string seq_text(const ASeq& s) {
  std::string out;
  for (auto g : s) out += std::string(to_string(g)) + " ";
  return out;
}
}  // namespace

TEST_CASE("functor table lookups") {
  auto f = FunctorTable::shipped();
  auto one = [&](std::initializer_list<AGen> s) {
    ASeq v(s);
    return to_named_basis(f.apply(v));
  };
  CHECK(format_plin(one({AGen::c0})) == "C^1_0");
  CHECK(format_plin(one({AGen::p01, AGen::p10})) == "Ahat^0_0");
  CHECK(one({AGen::p10, AGen::q01}) == PLin{*parse_named_basis("A^0_1"), *parse_named_basis("Bhat^0_1")});
  CHECK(format_plin(one({AGen::c0, AGen::d0, AGen::c0})) == "Chat^1_0");
  CHECK(one({AGen::b0, AGen::b0}).zero());
  CHECK(one({AGen::p01, AGen::p01}).zero());
  CHECK(FunctorTable::parse(f.format()).entries() == f.entries());
  CHECK_THROWS(FunctorTable::parse("F2 p01 p10 -> Ahat^0_1"));
  CHECK_THROWS(FunctorTable::parse("F1 a0 -> A^0_0 +"));
  CHECK_THROWS(FunctorTable::parse("F4 a0 a0 a0 a0 -> A^0_0"));
}

TEST_CASE("F^1 images are cycles") {
  auto f = FunctorTable::shipped();
  for (auto g : kAllAGens) {
    ASeq s{g};
    CHECK(diff_c(f.apply(s)).is_zero());
  }
}

TEST_CASE("A-infinity functor relations up to length six") {
  auto start = std::chrono::steady_clock::now();
  auto r = verify_functor(AProductTable::shipped(), FunctorTable::shipped(), 6);
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE(r.sequences << " sequences, " << r.violations.size() << " violations, " << secs << " s");
  for (std::size_t i = 0; i < r.violations.size() && i < 10; ++i) {
    const auto& v = r.violations[i];
    MESSAGE(seq_text(v.sequence) << ": " << format_plin(to_named_basis(v.lhs)) << " vs "
                                 << format_plin(to_named_basis(v.rhs)));
  }
  CHECK(r.violations.empty());
  CHECK(secs < 60.0);
}

TEST_CASE("quasi-isomorphism") {
  auto r = verify_quasi_iso(FunctorTable::shipped(), 10);
  REQUIRE(r.spaces.size() == 4);
  for (const auto& s : r.spaces) {
    CHECK(s.closed);
    CHECK(s.concentrated);
    CHECK(s.homology.total() == (s.src == s.dst ? 4u : 2u));
    CHECK(s.independent == s.classes);
  }
  CHECK(r.subalgebra_failures.empty());
  CHECK(r.ok());
}

TEST_CASE("functor mutation suite") {
  auto a = AProductTable::shipped();
  auto f = FunctorTable::shipped();
  auto muts = functor_mutations(f);
  std::size_t caught = 0;
  for (const auto& m : muts) {
    if (!verify_functor(a, m.table, 6).violations.empty()) ++caught;
    else MESSAGE("survivor: " << m.description);
  }
  MESSAGE("caught " << caught << " of " << muts.size());
  CHECK(caught * 10 >= muts.size() * 9);
  auto del_f3 = std::find_if(muts.begin(), muts.end(), [](const FunctorMutation& m) {
    return m.description.rfind("delete F3(c0,d0,c0)", 0) == 0;
  });
  REQUIRE(del_f3 != muts.end());
  CHECK(!verify_functor(a, del_f3->table, 3).violations.empty());
}
