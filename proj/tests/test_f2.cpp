#include "doctest.h"
#include "khtangle/f2.hpp"

using kht::F2Matrix;
using kht::KeyedRows;
using kht::LinComb;

TEST_CASE("lincomb addition cancels in characteristic two") {
  LinComb<int> a{1, 2, 3};
  LinComb<int> b{3, 4};
  auto c = a + b;
  CHECK(c == LinComb<int>{1, 2, 4});
  c += c;
  CHECK(c.zero());
  LinComb<int> d{5, 5};
  CHECK(d.zero());
}

TEST_CASE("f2 rank and solve") {
  F2Matrix m(3);
  m.add_row({0, 1});
  m.add_row({1, 2});
  m.add_row({0, 2});
  CHECK(m.rank() == 2);
  auto s = m.solve({0, 2});
  REQUIRE(s);
  CHECK((*s == std::vector<std::size_t>{2} || *s == std::vector<std::size_t>{0, 1}));
  auto s2 = m.solve({0, 1});
  REQUIRE(s2);
  CHECK(!m.solve({0}).has_value());
}

TEST_CASE("keyed rows over string keys") {
  KeyedRows<std::string> r;
  r.add({"a", "b"});
  r.add({"b", "c"});
  CHECK(r.rank() == 2);
  auto s = r.solve({"a", "c"});
  REQUIRE(s);
  CHECK(s->size() == 2);
  CHECK(!r.solve({"d"}).has_value());
}

TEST_CASE("wide matrix crosses word boundaries") {
  F2Matrix m(130);
  for (std::size_t i = 0; i + 1 < 130; ++i) m.add_row({i, i + 1});
  CHECK(m.rank() == 129);
  CHECK(m.solve({0, 129}).has_value());
  CHECK(!m.solve({0}).has_value());
}
