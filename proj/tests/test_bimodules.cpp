#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "khtangle/bimodule.hpp"

using namespace kht;

namespace {
const Vertex F = Vertex::Filled;
const Vertex H = Vertex::Hollow;

ADMorphism without(const ADMorphism& h, std::string_view src, std::string_view dst, std::string_view pattern) {
  ADMorphism r = h;
  auto s = *h.source.find(src);
  auto d = *h.target.find(dst);
  auto& c = r.components;
  auto it = std::find_if(c.begin(), c.end(), [&](const BimAction& a) {
    return a.src == s && a.dst == d && !a.inputs.empty() && a.inputs[0].format() == pattern;
  });
  REQUIRE(it != c.end());
  c.erase(it);
  return r;
}

std::set<std::pair<std::size_t, std::size_t>> touched(const Concrete& c) {
  std::set<std::pair<std::size_t, std::size_t>> s;
  for (const auto& [k, v] : c) s.insert({k.src, k.dst});
  return s;
}
}  // namespace

TEST_CASE("exponent patterns") {
  auto p = ExponentPattern::parse("S^{2k+1}");
  CHECK(p.stride == 2);
  CHECK(p.offset == 1);
  CHECK(p.format() == "S^{2k+1}");
  CHECK(p.at(F, 2) == BBasis::spow(5, F));
  CHECK(ExponentPattern::parse("D^{k+1}").format() == "D^{k+1}");
  CHECK(ExponentPattern::parse("S").format() == "S");
  CHECK(ExponentPattern::parse("S^{2k}").format() == "S^{2k}");
  CHECK(ExponentPattern::parse("1").letter == ExponentPattern::Letter::Idem);
  CHECK_THROWS(ExponentPattern::parse("T^2"));
  CHECK_THROWS(ExponentPattern::parse("S^{3k}"));
  CHECK_THROWS(ExponentPattern::parse("S^{k+}"));
}

TEST_CASE("shipped bimodules match the drawings") {
  auto b = shipped_bimodules();
  CHECK(b.i.gens().size() == 4);
  std::vector<Vertex> idems;
  for (const auto& g : b.i.gens()) {
    CHECK(g.left == g.right);
    idems.push_back(g.left);
  }
  CHECK(idems == std::vector<Vertex>{F, H, F, H});
  // Q sends D to S^2
  auto qc = instantiate(b.q, 4);
  auto z = *b.q.find("z");
  CHECK(qc.at({z, z, {BBasis::dpow(1, F)}}) == BLin::single(BBasis::spow(2, F)));
  // Y's (S,S|1) goes from k to t and from v to u
  auto yc = instantiate(b.y, 4);
  auto k = *b.y.find("k"), t = *b.y.find("t"), v = *b.y.find("v"), u = *b.y.find("u");
  CHECK(yc.at({k, t, {BBasis::spow(1, F), BBasis::spow(1, H)}}) == BLin::single(BBasis::idem(F)));
  CHECK(yc.at({v, u, {BBasis::spow(1, H), BBasis::spow(1, F)}}) == BLin::single(BBasis::idem(H)));
  for (auto* m : {&b.i, &b.q, &b.y, &b.qy_expected}) {
    CHECK(validate(*m).empty());
    CHECK(structure_defect(*m, 20, 20).empty());
    CHECK(max_weight_shift(*m, 20) <= 4);
  }
}

TEST_CASE("written order is the reverse of consumption order") {
  auto b = shipped_bimodules();
  auto zk = *b.qy_expected.find("z.k"), zt = *b.qy_expected.find("z.t");
  auto c = instantiate(b.qy_expected, 8);
  // (S^2,D | D) consumes D first
  CHECK(c.count({zk, zt, {BBasis::dpow(1, F), BBasis::spow(2, F)}}) == 1);
}

TEST_CASE("text round trip") {
  auto b = shipped_bimodules();
  for (auto* m : {&b.i, &b.q, &b.y, &b.qy_expected}) {
    auto again = parse_bimodule(serialize(*m));
    CHECK(serialize(again) == serialize(*m));
  }
  auto ms = shipped_morphisms();
  CHECK(serialize(parse_morphism(serialize(ms.f), b.i, b.qy_expected)) == serialize(ms.f));
  auto id = parse_bimodule(serialize(ADBimodule::structural_identity(Flavor::B)));
  CHECK(id.is_structural_identity());
  CHECK_THROWS(parse_bimodule("bimodule B B\ngen a filled filled 0\ngen c hollow hollow 0\nact a c (S^2 | S^2)"));
  CHECK_THROWS(parse_bimodule("bimodule B B\ngen a filled filled 0\nact a a (S^2 S^2)"));
  CHECK_THROWS(parse_bimodule("bimodule B B\ngen a filled filled 0\nact a a (S^2 | S^2) x"));
  CHECK_THROWS(parse_bimodule("gen a filled filled 0"));
}

TEST_CASE("structural and enumerated identities agree") {
  for (auto f : {Flavor::B, Flavor::Bt})
    for (int w : {0, 3, 8, 20})
      CHECK(same_bimodule(ADBimodule::structural_identity(f), ADBimodule::enumerated_identity(f), w));
  auto b = shipped_bimodules();
  CHECK(same_bimodule(box_bimods(ADBimodule::enumerated_identity(Flavor::B), b.q, 12), [&] {
    // rename z, w to e0.z, e1.w
    auto text = serialize(b.q);
    std::string out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      for (auto [from, to] : {std::pair{" z ", " e0.z "}, std::pair{" w ", " e1.w "}}) {
        line += ' ';
        for (std::size_t p; (p = line.find(from)) != std::string::npos;) line.replace(p, 3, to);
      }
      out += line + '\n';
    }
    return parse_bimodule(out);
  }(), 12));
}

TEST_CASE("Q box Y is the expected bimodule") {
  auto b = shipped_bimodules();
  auto qy = box_bimods(b.q, b.y);
  std::string why;
  CHECK_MESSAGE(same_bimodule(qy, b.qy_expected, 16, &why), why);
  auto zk = *qy.find("z.k"), zt = *qy.find("z.t");
  auto c = instantiate(qy, 8);
  CHECK(c.at({zk, zt, {BBasis::spow(1, F), BBasis::spow(1, H)}}) == BLin::single(BBasis::idem(F)));
  CHECK(c.at({zt, zt, {BBasis::dpow(1, F)}}) == BLin::single(BBasis::dpow(1, F)));
}

TEST_CASE("f and g are closed, and the proof's term groups appear") {
  auto b = shipped_bimodules();
  auto m = shipped_morphisms();
  CHECK(validate(m.f).empty());
  CHECK(validate(m.g).empty());
  CHECK(diff_ad_morphism(m.f, 12, 12).empty());
  CHECK(diff_ad_morphism(m.g, 12, 12).empty());
  std::vector<Contribution> terms;
  diff_ad_morphism(m.f, 12, 12, &terms);
  auto mi = *b.i.find("m"), zt = *b.qy_expected.find("z.t");
  std::set<std::string> groups;
  bool ss1 = false;
  for (const auto& t : terms)
    if (t.key.src == mi && t.key.dst == zt) {
      groups.insert(t.via);
      if (t.via == "target:z.k" && t.key.inputs.size() == 2 && t.key.inputs[0] == BBasis::spow(1, F) &&
          t.value == BLin::single(BBasis::idem(F)))
        ss1 = true;
    }
  CHECK(groups == std::set<std::string>{"merge", "target:z.t", "source:m", "target:z.k", "target:w.u", "source:y"});
  CHECK(ss1);
  CHECK(diff_ad_morphism(ADMorphism{b.i, b.i, {}}, 12, 12).empty());
}

TEST_CASE("deleting a family from f breaks the differential") {
  auto b = shipped_bimodules();
  auto m = shipped_morphisms();
  auto broken = without(m.f, "m", "w.u", "S^{2k+3}");
  auto d = diff_ad_morphism(broken, 12, 8);
  CHECK(touched(d).count({*b.i.find("m"), *b.qy_expected.find("w.u")}) == 1);
}

TEST_CASE("equivalence checks pass at the default bound") {
  auto r = verify_equivalence(16, 8);
  for (const auto& c : r.checks) CHECK_MESSAGE(c.pass, c.name << "\n" << c.detail);
  CHECK(r.ok());
  CHECK(r.checks.size() >= 5);
  CHECK_THROWS(verify_equivalence(4, 8));
}

TEST_CASE("every single-family mutation of g is detected") {
  auto b = shipped_bimodules();
  auto m = shipped_morphisms();
  for (std::size_t i = 0; i < m.g.components.size(); ++i) {
    ShippedMorphisms mm = m;
    mm.g.components.erase(mm.g.components.begin() + static_cast<std::ptrdiff_t>(i));
    CHECK_MESSAGE(!verify_equivalence(b, mm, 12, 4).ok(), "deleted component " << i);
  }
}

TEST_CASE("box with the structural identity copies the structure") {
  TypeD d(Flavor::B);
  d.add_gen({"a", F, 0});
  d.add_gen({"c", H, 1});
  d.add_arrow(0, 1, BLin{BBasis::spow(3, F), BBasis::spow(1, F)});
  auto r = box_ad(d, ADBimodule::structural_identity(Flavor::B));
  CHECK(iso_check(d, r).found);
  auto e = box_ad(d, ADBimodule::enumerated_identity(Flavor::B));
  CHECK(iso_check(d, e).found);
}

TEST_CASE("box of a point with Y is the cone of H") {
  auto b = shipped_bimodules();
  TypeD pt(Flavor::Bt);
  pt.add_gen({"x", F, 0});
  auto r = box_ad(pt, b.y);
  CHECK(r.size() == 2);
  CHECK(r.gen(0).name == "x.t");
  CHECK(r.gen(1).name == "x.k");
  TypeD bpt(Flavor::B);
  bpt.add_gen({"x", F, 0});
  CHECK(iso_check(r, cone_h(bpt)).found);
}

TEST_CASE("box with Q is the quotient arrow-wise") {
  auto b = shipped_bimodules();
  auto d = parse_typed("gen a filled 0\ngen b filled 1\ngen c hollow 2\ngen e filled 1\narrow a b D\narrow b c S^3\narrow a e D^2");
  CHECK(d_squared(d).empty());
  auto boxed = box_ad(d, b.q);
  auto direct = apply_q(d);
  CHECK(iso_check(boxed, direct).found);
  CHECK(boxed.arrow_count() == 1);
}

TEST_CASE("box with I is the cone of H") {
  auto b = shipped_bimodules();
  auto d = parse_typed("gen a filled 0\ngen b filled 1\ngen c hollow 2\narrow a b D^2\narrow b c S^3");
  auto boxed = box_ad(d, b.i);
  CHECK(d_squared(boxed).empty());
  CHECK(iso_check(boxed, cone_h(d)).found);
}
