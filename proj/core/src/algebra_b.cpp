#include "khtangle/algebra_b.hpp"

#include <charconv>
#include <stdexcept>

namespace kht {

std::string_view to_string(Vertex v) { return v == Vertex::Filled ? "filled" : "hollow"; }

Vertex parse_vertex(std::string_view token) {
  if (token == "filled" || token == "0") return Vertex::Filled;
  if (token == "hollow" || token == "1") return Vertex::Hollow;
  throw std::invalid_argument("unknown idempotent '" + std::string(token) + "'");
}

std::string_view to_string(Flavor f) { return f == Flavor::B ? "B" : "Bt"; }

Flavor parse_flavor(std::string_view token) {
  if (token == "B") return Flavor::B;
  if (token == "Bt") return Flavor::Bt;
  throw std::invalid_argument("unknown algebra '" + std::string(token) + "'");
}

BBasis BBasis::spow(int n, Vertex source) {
  if (n < 0) throw std::invalid_argument("negative S exponent");
  if (n == 0) return idem(source);
  return {Kind::S, n, source};
}

BBasis BBasis::dpow(int l, Vertex v) {
  if (l < 0) throw std::invalid_argument("negative D exponent");
  if (l == 0) return idem(v);
  return {Kind::D, l, v};
}

bool valid_in(Flavor f, const BBasis& b) {
  if (f == Flavor::B) return true;
  if (b.kind == BBasis::Kind::D) return false;
  return b.kind != BBasis::Kind::S || b.exp <= 2;
}

std::optional<BBasis> mul_basis(Flavor f, const BBasis& x, const BBasis& y) {
  if (x.target() != y.source()) return std::nullopt;
  if (x.is_idempotent()) return y;
  if (y.is_idempotent()) return x;
  if (x.kind != y.kind) return std::nullopt;  // D S = 0 = S D
  BBasis r{x.kind, x.exp + y.exp, x.at};
  if (!valid_in(f, r)) return std::nullopt;
  return r;
}

BLin mul(Flavor f, const BLin& x, const BLin& y) {
  BLin out;
  for (const auto& a : x)
    for (const auto& b : y)
      if (auto p = mul_basis(f, a, b)) out.toggle(*p);
  return out;
}

BLin h_elem(Vertex v) { return BLin{BBasis::dpow(1, v), BBasis::spow(2, v)}; }

BLin h_mul(const BLin& x) {
  BLin out;
  for (const auto& b : x) {
    switch (b.kind) {
      case BBasis::Kind::Idem:
        out += h_elem(b.at);
        break;
      case BBasis::Kind::S:
        out.toggle(BBasis::spow(b.exp + 2, b.at));
        break;
      case BBasis::Kind::D:
        out.toggle(BBasis::dpow(b.exp + 1, b.at));
        break;
    }
  }
  return out;
}

BLin q_map(const BLin& x) {
  BLin out;
  for (const auto& b : x) {
    switch (b.kind) {
      case BBasis::Kind::Idem:
        out.toggle(b);
        break;
      case BBasis::Kind::S:
        if (b.exp <= 2) out.toggle(b);
        break;
      case BBasis::Kind::D:
        if (b.exp == 1) out.toggle(BBasis::spow(2, b.at));  // S^2 = D
        break;
    }
  }
  return out;
}

std::vector<BBasis> basis_from(Flavor f, Vertex from, int max_weight) {
  std::vector<BBasis> out;
  if (max_weight < 0) return out;
  out.push_back(BBasis::idem(from));
  for (int n = 1; n <= max_weight; ++n) {
    BBasis s = BBasis::spow(n, from);
    if (valid_in(f, s)) out.push_back(s);
  }
  if (f == Flavor::B)
    for (int l = 1; 2 * l <= max_weight; ++l) out.push_back(BBasis::dpow(l, from));
  return out;
}

std::vector<std::pair<BBasis, BBasis>> factorizations(Flavor f, const BBasis& c) {
  std::vector<std::pair<BBasis, BBasis>> out;
  if (!valid_in(f, c)) return out;
  if (c.kind == BBasis::Kind::S) {
    for (int a = 1; a < c.exp; ++a) {
      BBasis x = BBasis::spow(a, c.at);
      out.emplace_back(x, BBasis::spow(c.exp - a, x.target()));
    }
  } else if (c.kind == BBasis::Kind::D) {
    for (int a = 1; a < c.exp; ++a)
      out.emplace_back(BBasis::dpow(a, c.at), BBasis::dpow(c.exp - a, c.at));
  }
  return out;
}

std::string format_basis(const BBasis& b) {
  switch (b.kind) {
    case BBasis::Kind::Idem:
      return "i";
    case BBasis::Kind::S:
      return "S^" + std::to_string(b.exp);
    case BBasis::Kind::D:
      return "D^" + std::to_string(b.exp);
  }
  return "?";
}

std::string format_label(const BLin& x) {
  if (x.zero()) return "0";
  std::string out;
  for (const auto& b : x) {
    if (!out.empty()) out += '+';
    out += format_basis(b);
  }
  return out;
}

namespace {

int parse_exponent(std::string_view token, std::string_view rest) {
  if (rest.empty()) return 1;
  if (rest.front() != '^') throw std::invalid_argument("bad label token '" + std::string(token) + "'");
  rest.remove_prefix(1);
  int value = 0;
  auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc() || p != rest.data() + rest.size() || value < 1)
    throw std::invalid_argument("bad exponent in '" + std::string(token) + "'");
  return value;
}

}  // namespace

BLin parse_label(Flavor f, std::string_view text, Vertex from) {
  BLin out;
  if (text == "0") return out;
  while (!text.empty()) {
    auto plus = text.find('+');
    std::string_view token = text.substr(0, plus);
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 1);
    if (token.empty()) throw std::invalid_argument("empty label token");
    BBasis b;
    if (token == "i" || token == "1") {
      b = BBasis::idem(from);
    } else if (token.front() == 'S') {
      b = BBasis::spow(parse_exponent(token, token.substr(1)), from);
    } else if (token.front() == 'D') {
      b = BBasis::dpow(parse_exponent(token, token.substr(1)), from);
    } else {
      throw std::invalid_argument("bad label token '" + std::string(token) + "'");
    }
    if (!valid_in(f, b))
      throw std::invalid_argument("label token '" + std::string(token) + "' is not in " +
                                  std::string(to_string(f)));
    out.toggle(b);
  }
  return out;
}

BElem BElem::basis(Flavor f, const BBasis& b) {
  if (!valid_in(f, b)) throw std::invalid_argument("basis element not in flavor");
  return {f, BLin::single(b)};
}

BElem& BElem::operator+=(const BElem& o) {
  if (o.flavor != flavor && !o.zero() && !zero())
    throw std::logic_error("adding elements of different algebras");
  if (zero()) flavor = o.flavor;
  terms += o.terms;
  return *this;
}

BElem mul(const BElem& x, const BElem& y) {
  if (x.flavor != y.flavor) throw std::logic_error("multiplying elements of different algebras");
  return {x.flavor, mul(x.flavor, x.terms, y.terms)};
}

BElem h_mul(const BElem& x) {
  if (x.flavor != Flavor::B) throw std::logic_error("H lives in B only");
  return {Flavor::B, h_mul(x.terms)};
}

BElem q_map(const BElem& x) {
  if (x.flavor != Flavor::B) throw std::logic_error("q_map expects an element of B");
  return {Flavor::Bt, q_map(x.terms)};
}

}  // namespace kht
