#include "khtangle/conecat.hpp"

#include <charconv>
#include <stdexcept>

namespace kht {

std::string_view to_string(Slot s) {
  switch (s) {
    case Slot::TT: return "TT";
    case Slot::BB: return "BB";
    case Slot::TB: return "TB";
    case Slot::BT: return "BT";
  }
  return "?";
}

BLin& ConeMorphism::at(Slot s) {
  switch (s) {
    case Slot::TT: return tt;
    case Slot::BB: return bb;
    case Slot::TB: return tb;
    case Slot::BT: return bt;
  }
  throw std::logic_error("bad slot");
}

const BLin& ConeMorphism::at(Slot s) const { return const_cast<ConeMorphism*>(this)->at(s); }

ConeMorphism& ConeMorphism::operator+=(const ConeMorphism& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    src = o.src;
    dst = o.dst;
  } else if (o.src != src || o.dst != dst) {
    throw std::logic_error("adding cone morphisms between different objects");
  }
  tt += o.tt;
  bb += o.bb;
  tb += o.tb;
  bt += o.bt;
  return *this;
}

CLin ConeMorphism::keys() const {
  CLin out;
  for (auto s : kAllSlots)
    for (const auto& b : at(s)) out.toggle({s, b});
  return out;
}

ConeMorphism ConeMorphism::from_keys(Vertex s, Vertex d, const CLin& k) {
  auto f = zero(s, d);
  for (const auto& key : k) f.at(key.slot).toggle(key.path);
  return f;
}

ConeMorphism compose_c(const ConeMorphism& f, const ConeMorphism& g) {
  if (f.is_zero() || g.is_zero()) return ConeMorphism::zero(f.src, g.dst);
  if (f.dst != g.src) throw std::logic_error("composing cone morphisms with mismatched objects");
  auto m = [](const BLin& x, const BLin& y) { return mul(Flavor::B, x, y); };
  ConeMorphism r{f.src, g.dst, {}, {}, {}, {}};
  r.tt = m(f.tt, g.tt) + m(f.tb, g.bt);
  r.tb = m(f.tt, g.tb) + m(f.tb, g.bb);
  r.bt = m(f.bt, g.tt) + m(f.bb, g.bt);
  r.bb = m(f.bt, g.tb) + m(f.bb, g.bb);
  return r;
}

ConeMorphism diff_c(const ConeMorphism& f) {
  ConeMorphism r{f.src, f.dst, {}, {}, {}, {}};
  r.tt = h_mul(f.bt);
  r.bb = h_mul(f.bt);
  r.tb = h_mul(f.bb) + h_mul(f.tt);
  return r;
}

namespace {

char family_letter(Family f) { return "ABCDPQ"[static_cast<int>(f)]; }

bool is_cross(Family f) { return f == Family::P || f == Family::Q; }

// Which slot carries the lone component of a family, and whether the plain
// version is diagonal.
// plain A, C, P: TT + BB; plain B, D, Q: TB
// hat A, C, P: BT;        hat B, D, Q: BB
bool is_second(Family f) { return f == Family::B || f == Family::D || f == Family::Q; }

Family first_of(const BBasis& b) {
  if (b.kind == BBasis::Kind::D) return Family::C;
  if (b.kind == BBasis::Kind::S && b.exp % 2 == 1) return Family::P;
  return Family::A;
}

Family second_of(Family first) {
  switch (first) {
    case Family::A: return Family::B;
    case Family::C: return Family::D;
    default: return Family::Q;
  }
}

int index_of(const BBasis& b) {
  switch (b.kind) {
    case BBasis::Kind::Idem: return 0;
    case BBasis::Kind::D: return b.exp;
    case BBasis::Kind::S: return b.exp % 2 == 0 ? b.exp / 2 : (b.exp + 1) / 2;
  }
  return 0;
}

BBasis path_of(const NamedBasis& p) {
  switch (p.family) {
    case Family::A:
    case Family::B:
      return BBasis::spow(2 * p.index, p.src);
    case Family::C:
    case Family::D:
      return BBasis::dpow(p.index, p.src);
    default:
      return BBasis::spow(2 * p.index - 1, p.src);
  }
}

int min_index(Family f) { return f == Family::A || f == Family::B ? 0 : 1; }

int weight_of(const NamedBasis& p) { return path_of(p).weight(); }

}  // namespace

NamedBasis pb(Family f, bool hat, int index, Vertex src, Vertex dst) {
  if (index < min_index(f)) throw std::invalid_argument("named basis index out of range");
  if (is_cross(f) == (src == dst)) throw std::invalid_argument("named basis endpoints do not match family");
  return {f, hat, index, src, dst};
}

NamedBasis pb(Family f, bool hat, int index, Vertex v) { return pb(f, hat, index, v, v); }

std::string to_string(const NamedBasis& p) {
  std::string s(1, family_letter(p.family));
  if (p.hat) s += "hat";
  s += '^' + std::to_string(p.index) + '_';
  // cross subscripts list the target first, as for p01 : L1 -> L0
  if (is_cross(p.family)) s += p.dst == Vertex::Filled ? '0' : '1';
  s += p.src == Vertex::Filled ? '0' : '1';
  return s;
}

std::optional<NamedBasis> parse_named_basis(std::string_view text) {
  if (text.empty()) return std::nullopt;
  auto pos = std::string_view("ABCDPQ").find(text.front());
  if (pos == std::string_view::npos) return std::nullopt;
  Family f = static_cast<Family>(pos);
  text.remove_prefix(1);
  bool hat = false;
  if (text.starts_with("hat")) {
    hat = true;
    text.remove_prefix(3);
  }
  if (text.empty() || text.front() != '^') return std::nullopt;
  text.remove_prefix(1);
  int index = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc()) return std::nullopt;
  text.remove_prefix(static_cast<std::size_t>(p - text.data()));
  if (text.empty() || text.front() != '_') return std::nullopt;
  text.remove_prefix(1);
  auto vtx = [](char c) -> std::optional<Vertex> {
    if (c == '0') return Vertex::Filled;
    if (c == '1') return Vertex::Hollow;
    return std::nullopt;
  };
  std::optional<Vertex> s, d;
  if (is_cross(f)) {
    if (text.size() != 2) return std::nullopt;
    d = vtx(text[0]);
    s = vtx(text[1]);
  } else {
    if (text.size() != 1) return std::nullopt;
    s = d = vtx(text[0]);
  }
  if (!s || !d || (*s == *d && is_cross(f)) || index < min_index(f)) return std::nullopt;
  return NamedBasis{f, hat, index, *s, *d};
}

ConeMorphism to_positional(const NamedBasis& p) {
  auto r = ConeMorphism::zero(p.src, p.dst);
  BBasis path = path_of(p);
  if (path.target() != p.dst) throw std::logic_error("named basis endpoints are inconsistent");
  if (!is_second(p.family)) {
    if (p.hat) {
      r.bt.toggle(path);
    } else {
      r.tt.toggle(path);
      r.bb.toggle(path);
    }
  } else {
    (p.hat ? r.bb : r.tb).toggle(path);
  }
  return r;
}

ConeMorphism to_positional(const PLin& x, Vertex src, Vertex dst) {
  auto r = ConeMorphism::zero(src, dst);
  for (const auto& p : x) r += to_positional(p);
  return r;
}

PLin to_named_basis(const ConeMorphism& f) {
  PLin out;
  auto name = [&](const BBasis& b, bool second, bool hat) {
    Family fam = first_of(b);
    if (second) fam = second_of(fam);
    return NamedBasis{fam, hat, index_of(b), b.source(), b.target()};
  };
  for (const auto& b : f.tt) {
    out.toggle(name(b, false, false));
    out.toggle(name(b, true, true));
  }
  for (const auto& b : f.bb) out.toggle(name(b, true, true));
  for (const auto& b : f.tb) out.toggle(name(b, true, false));
  for (const auto& b : f.bt) out.toggle(name(b, false, true));
  return out;
}

std::vector<NamedBasis> named_basis(Vertex src, Vertex dst, int max_weight) {
  std::vector<NamedBasis> out;
  for (int fi = 0; fi < 6; ++fi) {
    Family f = static_cast<Family>(fi);
    if (is_cross(f) != (src != dst)) continue;
    for (bool hat : {false, true})
      for (int i = min_index(f);; ++i) {
        NamedBasis p{f, hat, i, src, dst};
        if (weight_of(p) > max_weight) break;
        out.push_back(p);
      }
  }
  return out;
}

bool in_subalgebra_cs(const ConeMorphism& f) {
  for (const auto& p : to_named_basis(f))
    if (is_second(p.family)) return false;
  return true;
}

std::size_t HomologyReport::total() const {
  std::size_t t = 0;
  for (auto d : dims) t += d;
  return t;
}

std::vector<CKey> positional_basis(Vertex src, Vertex dst, int lo, int hi) {
  std::vector<CKey> out;
  for (auto s : kAllSlots)
    for (const auto& b : basis_from(Flavor::B, src, hi))
      if (b.target() == dst && b.weight() >= lo) out.push_back({s, b});
  return out;
}

HomologyReport homology_c(Vertex src, Vertex dst, int max_weight) {
  HomologyReport r;
  auto rank_from = [&](int w) {
    KeyedRows<CKey> rows;
    for (const auto& k : positional_basis(src, dst, w, w))
      rows.add(diff_c(ConeMorphism::from_keys(src, dst, CLin::single(k))).keys());
    return rows.rank();
  };
  for (int w = 0; w <= max_weight; ++w) {
    std::size_t chains = positional_basis(src, dst, w, w).size();
    std::size_t kernel = chains - rank_from(w);
    std::size_t image = w >= 2 ? rank_from(w - 2) : 0;
    r.dims.push_back(kernel - image);
  }
  return r;
}

}  // namespace kht
