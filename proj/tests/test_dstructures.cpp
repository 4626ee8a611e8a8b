#include "doctest.h"
#include "khtangle/dstructure.hpp"

using namespace kht;

namespace {
const Vertex F = Vertex::Filled;
const Vertex H = Vertex::Hollow;
BLin S(int n, Vertex v) { return BLin::single(BBasis::spow(n, v)); }
BLin D(int l, Vertex v) { return BLin::single(BBasis::dpow(l, v)); }
BLin I(Vertex v) { return BLin::single(BBasis::idem(v)); }
}  // namespace

TEST_CASE("text format round trip") {
  const char* text = R"(algebra B
# a small complex
gen a filled 0
gen b filled 1
gen c hollow 2
arrow a b D
arrow b c S
)";
  auto d = parse_typed(text);
  CHECK(d.size() == 3);
  CHECK(d.label(0, 1) == D(1, F));
  CHECK(d.label(1, 2) == S(1, F));
  CHECK(d_squared(d).empty());
  auto again = parse_typed(serialize(d));
  CHECK(serialize(again) == serialize(d));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS(parse_typed("gen a filled"));
  CHECK_THROWS(parse_typed("gen a purple 0"));
  CHECK_THROWS(parse_typed("gen a filled 0\narrow a z S"));
  CHECK_THROWS(parse_typed("gen a filled 0\ngen b filled 1\narrow a b S"));      // wrong endpoint
  CHECK_THROWS(parse_typed("gen a filled 0\ngen b hollow 3\narrow a b S"));      // hdeg jump
  CHECK_THROWS(parse_typed("algebra Bt\ngen a filled 0\ngen b filled 1\narrow a b D"));
  CHECK_THROWS(parse_typed("gen a filled 0\ngen a filled 0"));
  CHECK_THROWS(parse_typed("frob x"));
}

TEST_CASE("d squared detects a bad structure") {
  TypeD d(Flavor::B);
  d.add_gen({"a", F, 0});
  d.add_gen({"b", H, 1});
  d.add_gen({"c", F, 2});
  d.add_arrow(0, 1, S(1, F));
  d.add_arrow(1, 2, S(1, H));
  auto bad = d_squared(d);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].value == S(2, F));
}

TEST_CASE("cone of H on a point") {
  TypeD pt(Flavor::B);
  pt.add_gen({"x", F, 0});
  auto c = cone_h(pt);
  CHECK(c.size() == 2);
  CHECK(c.gen(0).name == "x#0");
  CHECK(c.gen(1).hdeg == 1);
  CHECK(c.label(0, 1) == D(1, F) + S(2, F));
  CHECK(d_squared(c).empty());
  CHECK(reduce(c).size() == 2);
}

TEST_CASE("cone of H preserves d squared") {
  auto d = parse_typed("gen a filled 0\ngen b filled 1\ngen c hollow 2\narrow a b D^2\narrow b c S^3");
  CHECK(d_squared(cone_h(d)).empty());
}

TEST_CASE("reduce cancels idempotent arrows with zigzags") {
  // p -> y (S^2), x -> y (i), x -> q (D): cancelling x -> y leaves p -> q = S^2 D = 0.
  // r -> y (D), x -> q (D) gives r -> q = D^2.
  TypeD d(Flavor::B);
  auto p = d.add_gen({"p", F, 0});
  auto r = d.add_gen({"r", F, 0});
  auto x = d.add_gen({"x", F, 0});
  auto y = d.add_gen({"y", F, 1});
  auto q = d.add_gen({"q", F, 1});
  d.add_arrow(p, y, S(2, F));
  d.add_arrow(r, y, D(1, F));
  d.add_arrow(x, y, I(F));
  d.add_arrow(x, q, D(1, F));
  auto red = reduce(d);
  CHECK(red.size() == 3);
  auto rr = *red.find("r");
  auto qq = *red.find("q");
  auto pp = *red.find("p");
  CHECK(red.label(rr, qq) == D(2, F));
  CHECK(red.label(pp, qq).zero());
}

TEST_CASE("reduce throws on mixed labels") {
  TypeD d(Flavor::B);
  d.add_gen({"x", F, 0});
  d.add_gen({"y", F, 1});
  d.add_arrow(0, 1, I(F) + D(1, F));
  CHECK_THROWS_AS(reduce(d), std::logic_error);
}

TEST_CASE("apply q kills H") {
  TypeD pt(Flavor::B);
  pt.add_gen({"x", H, 0});
  auto c = apply_q(cone_h(pt));
  CHECK(c.flavor() == Flavor::Bt);
  CHECK(c.arrow_count() == 0);
}

TEST_CASE("iso check finds relabellings and shifts") {
  auto a = parse_typed("gen a filled 0\ngen b filled 1\ngen c hollow 2\narrow a b D\narrow b c S");
  auto b = parse_typed("gen z hollow 5\ngen x filled 3\ngen y filled 4\narrow y z S\narrow x y D");
  auto r = iso_check(a, b);
  REQUIRE(r.found);
  CHECK(r.shift == 3);
  CHECK(r.map == std::vector<std::size_t>{1, 2, 0});
  auto c = parse_typed("gen z hollow 5\ngen x filled 3\ngen y filled 4\narrow y z S\narrow x y S^2");
  CHECK(!iso_check(a, c).found);
  auto e = parse_typed("gen a filled 0\ngen b filled 1");
  auto f = parse_typed("gen a filled 0\ngen b filled 1");
  CHECK(iso_check(e, f).found);
  CHECK(iso_check(TypeD{}, TypeD{}).found);
}
