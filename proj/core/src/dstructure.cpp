#include "khtangle/dstructure.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <tuple>

#include "khtangle/f2.hpp"
#include <set>
#include <sstream>
#include <stdexcept>

namespace kht {

std::optional<std::size_t> TypeD::find(std::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::size_t TypeD::add_gen(DGen g) {
  if (by_name_.count(g.name)) throw std::invalid_argument("duplicate generator '" + g.name + "'");
  std::size_t i = gens_.size();
  by_name_.emplace(g.name, i);
  gens_.push_back(std::move(g));
  return i;
}

void TypeD::add_arrow(std::size_t src, std::size_t dst, const BLin& label) {
  if (src >= gens_.size() || dst >= gens_.size()) throw std::out_of_range("arrow endpoint");
  if (label.zero()) return;
  auto key = std::make_pair(src, dst);
  auto& slot = arrows_[key];
  slot += label;
  if (slot.zero()) arrows_.erase(key);
}

BLin TypeD::label(std::size_t src, std::size_t dst) const {
  auto it = arrows_.find({src, dst});
  return it == arrows_.end() ? BLin{} : it->second;
}

std::vector<std::pair<std::size_t, BLin>> TypeD::out_arrows(std::size_t src) const {
  std::vector<std::pair<std::size_t, BLin>> out;
  for (auto it = arrows_.lower_bound({src, 0}); it != arrows_.end() && it->first.first == src; ++it)
    out.emplace_back(it->first.second, it->second);
  return out;
}

std::vector<std::pair<std::size_t, BLin>> TypeD::in_arrows(std::size_t dst) const {
  std::vector<std::pair<std::size_t, BLin>> out;
  for (const auto& [k, v] : arrows_)
    if (k.second == dst) out.emplace_back(k.first, v);
  return out;
}

std::vector<std::string> TypeD::validate() const {
  std::vector<std::string> problems;
  for (const auto& [k, lab] : arrows_) {
    const auto& s = gens_[k.first];
    const auto& t = gens_[k.second];
    std::string where = s.name + " -> " + t.name;
    if (t.hdeg != s.hdeg + 1) problems.push_back(where + ": hdeg does not rise by one");
    for (const auto& b : lab) {
      if (!valid_in(flavor_, b))
        problems.push_back(where + ": " + format_basis(b) + " is not in " + std::string(to_string(flavor_)));
      if (b.source() != s.idem || b.target() != t.idem)
        problems.push_back(where + ": " + format_basis(b) + " has the wrong endpoints");
    }
  }
  return problems;
}

std::vector<DSquaredTerm> d_squared(const TypeD& d) {
  std::map<std::pair<std::size_t, std::size_t>, BLin> acc;
  std::vector<std::vector<std::pair<std::size_t, BLin>>> out(d.size());
  for (const auto& [k, lab] : d.arrows()) out[k.first].emplace_back(k.second, lab);
  for (std::size_t x = 0; x < d.size(); ++x)
    for (const auto& [y, a] : out[x])
      for (const auto& [z, b] : out[y]) acc[{x, z}] += mul(d.flavor(), a, b);
  std::vector<DSquaredTerm> bad;
  for (auto& [k, v] : acc)
    if (!v.zero()) bad.push_back({k.first, k.second, std::move(v)});
  return bad;
}

TypeD cone_h(const TypeD& d) {
  if (d.flavor() != Flavor::B) throw std::logic_error("cone of H needs a structure over B");
  TypeD c(Flavor::B);
  for (const auto& g : d.gens()) {
    c.add_gen({g.name + "#0", g.idem, g.hdeg});
    c.add_gen({g.name + "#1", g.idem, g.hdeg + 1});
  }
  for (std::size_t i = 0; i < d.size(); ++i) c.add_arrow(2 * i, 2 * i + 1, h_elem(d.gen(i).idem));
  for (const auto& [k, lab] : d.arrows()) {
    c.add_arrow(2 * k.first, 2 * k.second, lab);
    c.add_arrow(2 * k.first + 1, 2 * k.second + 1, lab);
  }
  return c;
}

TypeD apply_q(const TypeD& d) {
  if (d.flavor() != Flavor::B) throw std::logic_error("quotient needs a structure over B");
  TypeD r(Flavor::Bt);
  for (const auto& g : d.gens()) r.add_gen(g);
  for (const auto& [k, lab] : d.arrows()) r.add_arrow(k.first, k.second, q_map(lab));
  return r;
}

TypeD reduce(const TypeD& d) {
  const std::size_t n = d.size();
  std::vector<std::map<std::size_t, BLin>> out(n), in(n);
  for (const auto& [k, lab] : d.arrows()) {
    out[k.first][k.second] = lab;
    in[k.second][k.first] = lab;
  }
  std::vector<bool> alive(n, true);
  auto set_arrow = [&](std::size_t s, std::size_t t, const BLin& add) {
    BLin v = out[s].count(t) ? out[s][t] : BLin{};
    v += add;
    if (v.zero()) {
      out[s].erase(t);
      in[t].erase(s);
    } else {
      out[s][t] = v;
      in[t][s] = v;
    }
  };
  auto find_cancellable = [&]() -> std::optional<std::pair<std::size_t, std::size_t>> {
    for (std::size_t x = 0; x < n; ++x) {
      if (!alive[x]) continue;
      for (const auto& [y, lab] : out[x]) {
        bool has_idem = std::any_of(lab.begin(), lab.end(), [](const BBasis& b) { return b.is_idempotent(); });
        if (!has_idem) continue;
        if (lab.size() != 1)
          throw std::logic_error("arrow " + d.gen(x).name + " -> " + d.gen(y).name +
                                 " mixes an idempotent with other terms");
        return std::make_pair(x, y);
      }
    }
    return std::nullopt;
  };
  while (auto xy = find_cancellable()) {
    auto [x, y] = *xy;
    std::vector<std::pair<std::size_t, BLin>> into_y(in[y].begin(), in[y].end());
    std::vector<std::pair<std::size_t, BLin>> from_x(out[x].begin(), out[x].end());
    for (const auto& [p, beta] : into_y) {
      if (p == x) continue;
      for (const auto& [q, gamma] : from_x) {
        if (q == y) continue;
        set_arrow(p, q, mul(d.flavor(), beta, gamma));
      }
    }
    for (std::size_t g : {x, y}) {
      for (const auto& [t, lab] : std::map<std::size_t, BLin>(out[g])) set_arrow(g, t, lab);
      for (const auto& [s, lab] : std::map<std::size_t, BLin>(in[g])) set_arrow(s, g, lab);
      alive[g] = false;
    }
  }
  TypeD r(d.flavor());
  std::vector<std::size_t> index(n);
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i]) index[i] = r.add_gen(d.gen(i));
  for (std::size_t i = 0; i < n; ++i)
    if (alive[i])
      for (const auto& [t, lab] : out[i]) r.add_arrow(index[i], index[t], lab);
  return r;
}

std::map<std::pair<Vertex, int>, std::size_t> generator_profile(const TypeD& d) {
  std::map<std::pair<Vertex, int>, std::size_t> p;
  for (const auto& g : d.gens()) ++p[{g.idem, g.hdeg}];
  return p;
}

namespace {

struct Signature {
  Vertex idem;
  int hdeg;
  std::vector<BLin> out, in;
  friend bool operator==(const Signature&, const Signature&) = default;
};

std::vector<Signature> signatures(const TypeD& d, int shift) {
  std::vector<Signature> s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = {d.gen(i).idem, d.gen(i).hdeg + shift, {}, {}};
  for (const auto& [k, lab] : d.arrows()) {
    s[k.first].out.push_back(lab);
    s[k.second].in.push_back(lab);
  }
  for (auto& x : s) {
    std::sort(x.out.begin(), x.out.end());
    std::sort(x.in.begin(), x.in.end());
  }
  return s;
}

bool try_shift(const TypeD& a, const TypeD& b, int shift, std::vector<std::size_t>& map) {
  auto sa = signatures(a, shift);
  auto sb = signatures(b, 0);
  const std::size_t n = a.size();
  std::vector<std::vector<std::size_t>> cands(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      if (sa[i] == sb[j]) cands[i].push_back(j);
    if (cands[i].empty()) return false;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return cands[x].size() < cands[y].size(); });
  std::vector<std::size_t> assign(n, n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> go = [&](std::size_t depth) {
    if (depth == n) return true;
    std::size_t i = order[depth];
    for (std::size_t j : cands[i]) {
      if (used[j]) continue;
      bool ok = true;
      for (std::size_t e = 0; e < depth && ok; ++e) {
        std::size_t u = order[e];
        ok = a.label(i, u) == b.label(j, assign[u]) && a.label(u, i) == b.label(assign[u], j);
      }
      if (!ok) continue;
      assign[i] = j;
      used[j] = true;
      if (go(depth + 1)) return true;
      used[j] = false;
    }
    assign[i] = n;
    return false;
  };
  if (!go(0)) return false;
  map = assign;
  return true;
}

}  // namespace

IsoResult iso_check(const TypeD& a, const TypeD& b) {
  IsoResult r;
  if (a.size() != b.size() || a.arrow_count() != b.arrow_count() || a.flavor() != b.flavor())
    return r;
  if (a.size() == 0) {
    r.found = true;
    return r;
  }
  std::set<int> shifts;
  for (const auto& ga : a.gens())
    for (const auto& gb : b.gens())
      if (ga.idem == gb.idem) shifts.insert(gb.hdeg - ga.hdeg);
  auto pb = generator_profile(b);
  for (int s : shifts) {
    std::map<std::pair<Vertex, int>, std::size_t> pa;
    for (const auto& [k, c] : generator_profile(a)) pa[{k.first, k.second + s}] = c;
    if (pa != pb) continue;
    if (try_shift(a, b, s, r.map)) {
      r.found = true;
      r.shift = s;
      return r;
    }
  }
  return r;
}

std::string serialize(const TypeD& d) {
  std::ostringstream out;
  out << "algebra " << to_string(d.flavor()) << '\n';
  for (const auto& g : d.gens()) out << "gen " << g.name << ' ' << to_string(g.idem) << ' ' << g.hdeg << '\n';
  for (const auto& [k, lab] : d.arrows())
    out << "arrow " << d.gen(k.first).name << ' ' << d.gen(k.second).name << ' ' << format_label(lab) << '\n';
  return out.str();
}

TypeD parse_typed(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  std::optional<TypeD> d;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos && (h == 0 || line[h - 1] == ' ' || line[h - 1] == '\t'))
      line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    try {
      if (tok[0] == "algebra") {
        if (tok.size() != 2) fail("expected 'algebra B|Bt'");
        if (d) fail("algebra header must come first");
        d.emplace(parse_flavor(tok[1]));
      } else if (tok[0] == "gen") {
        if (tok.size() != 4) fail("expected 'gen <name> <filled|hollow> <hdeg>'");
        if (!d) d.emplace(Flavor::B);
        d->add_gen({tok[1], parse_vertex(tok[2]), std::stoi(tok[3])});
      } else if (tok[0] == "arrow") {
        if (tok.size() != 4) fail("expected 'arrow <src> <dst> <label>'");
        if (!d) fail("arrow before any generator");
        auto s = d->find(tok[1]);
        auto t = d->find(tok[2]);
        if (!s) fail("unknown generator '" + tok[1] + "'");
        if (!t) fail("unknown generator '" + tok[2] + "'");
        d->add_arrow(*s, *t, parse_label(d->flavor(), tok[3], d->gen(*s).idem));
      } else {
        fail("unknown directive '" + tok[0] + "'");
      }
    } catch (const std::invalid_argument& e) {
      std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      fail(msg);
    }
  }
  if (!d) d.emplace(Flavor::B);
  auto problems = d->validate();
  if (!problems.empty()) throw std::invalid_argument(problems.front());
  return std::move(*d);
}

}  // namespace kht

namespace kht {

namespace {

using Bits = std::vector<std::uint64_t>;

void flip(Bits& b, std::size_t i) { b[i / 64] ^= std::uint64_t{1} << (i % 64); }
bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }

// Basis of the null space of the rows, each vector over `cols` columns.
std::vector<Bits> null_space(std::vector<Bits> rows, std::size_t cols) {
  const std::size_t words = (cols + 63) / 64;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !test(rows[p], c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r && test(rows[i], c))
        for (std::size_t w = 0; w < words; ++w) rows[i][w] ^= rows[r][w];
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Bits> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Bits v(words, 0);
    flip(v, f);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (test(rows[i], f)) flip(v, pivot_col[i]);
    out.push_back(std::move(v));
  }
  return out;
}

bool blocks_invertible(const TypeD& a, const TypeD& b, int shift,
                       const std::map<std::pair<std::size_t, std::size_t>, BLin>& comps) {
  std::map<std::pair<Vertex, int>, std::vector<std::size_t>> ga, gb;
  for (std::size_t i = 0; i < a.size(); ++i) ga[{a.gen(i).idem, a.gen(i).hdeg + shift}].push_back(i);
  for (std::size_t i = 0; i < b.size(); ++i) gb[{b.gen(i).idem, b.gen(i).hdeg}].push_back(i);
  if (ga.size() != gb.size()) return false;
  for (const auto& [key, xs] : ga) {
    auto it = gb.find(key);
    if (it == gb.end() || it->second.size() != xs.size()) return false;
    std::map<std::size_t, std::size_t> col;
    for (std::size_t j = 0; j < it->second.size(); ++j) col[it->second[j]] = j;
    F2Matrix m(xs.size());
    const BBasis idem = BBasis::idem(key.first);
    for (auto x : xs) {
      std::vector<std::size_t> ones;
      for (auto y : it->second) {
        auto c = comps.find({x, y});
        if (c != comps.end() && c->second.contains(idem)) ones.push_back(col[y]);
      }
      m.add_row(ones);
    }
    if (m.rank() != xs.size()) return false;
  }
  return true;
}

}  // namespace

bool is_isomorphism(const TypeD& a, const TypeD& b, const MorphismIso& m) {
  if (!m.found || a.flavor() != b.flavor()) return false;
  for (const auto& [k, lab] : m.components) {
    if (k.first >= a.size() || k.second >= b.size()) return false;
    if (b.gen(k.second).hdeg != a.gen(k.first).hdeg + m.shift) return false;
    for (const auto& t : lab)
      if (t.source() != a.gen(k.first).idem || t.target() != b.gen(k.second).idem) return false;
  }
  // delta_a then phi equals phi then delta_b
  std::map<std::pair<std::size_t, std::size_t>, BLin> acc;
  for (const auto& [k, lab] : a.arrows())
    for (const auto& [k2, phi] : m.components)
      if (k2.first == k.second) acc[{k.first, k2.second}] += mul(a.flavor(), lab, phi);
  for (const auto& [k, phi] : m.components)
    for (const auto& [y, lab] : b.out_arrows(k.second)) acc[{k.first, y}] += mul(a.flavor(), phi, lab);
  for (const auto& [k, v] : acc)
    if (!v.zero()) return false;
  return blocks_invertible(a, b, m.shift, m.components);
}

MorphismIso find_isomorphism(const TypeD& a, const TypeD& b, int max_weight, int attempts, unsigned seed) {
  MorphismIso none;
  if (a.size() != b.size() || a.flavor() != b.flavor()) return none;
  const auto pa = generator_profile(a), pb = generator_profile(b);
  if (a.size() == 0) {
    none.found = true;
    return none;
  }
  std::set<int> shifts;
  for (const auto& x : pa)
    for (const auto& y : pb)
      if (x.first.first == y.first.first) shifts.insert(y.first.second - x.first.second);

  for (int shift : shifts) {
    bool same = pa.size() == pb.size();
    for (const auto& [k, n] : pa) {
      auto it = pb.find({k.first, k.second + shift});
      if (it == pb.end() || it->second != n) same = false;
    }
    if (!same) continue;

    // unknowns: (x, y, basis element from idem x to idem y)
    struct Unknown {
      std::size_t x, y;
      BBasis b;
    };
    std::vector<Unknown> unknowns;
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < b.size(); ++y) {
        if (b.gen(y).hdeg != a.gen(x).hdeg + shift) continue;
        for (const auto& bb : basis_from(a.flavor(), a.gen(x).idem, max_weight))
          if (bb.target() == b.gen(y).idem) unknowns.push_back({x, y, bb});
      }
    if (unknowns.empty()) continue;

    // equation index: (x in a, y in b, basis element)
    std::map<std::tuple<std::size_t, std::size_t, BBasis>, std::size_t> eq;
    std::vector<std::vector<std::size_t>> column(unknowns.size());
    auto in_a = [&](std::size_t x) { return a.in_arrows(x); };
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto& un = unknowns[u];
      const BLin phi = BLin::single(un.b);
      auto add = [&](std::size_t x, std::size_t y, const BLin& v) {
        for (const auto& t : v) {
          auto [it, fresh] = eq.emplace(std::tuple{x, y, t}, eq.size());
          column[u].push_back(it->second);
        }
      };
      for (const auto& [w, lab] : in_a(un.x)) add(w, un.y, mul(a.flavor(), lab, phi));
      for (const auto& [z, lab] : b.out_arrows(un.y)) add(un.x, z, mul(a.flavor(), phi, lab));
    }
    const std::size_t words = (unknowns.size() + 63) / 64;
    std::vector<Bits> rows(eq.size(), Bits(words, 0));
    for (std::size_t u = 0; u < unknowns.size(); ++u)
      for (auto e : column[u]) flip(rows[e], u);
    const auto kernel = null_space(std::move(rows), unknowns.size());
    if (kernel.empty()) continue;

    std::mt19937 rng(seed);
    for (int attempt = 0; attempt < attempts; ++attempt) {
      Bits v(words, 0);
      for (const auto& k : kernel)
        if (rng() & 1u)
          for (std::size_t w = 0; w < words; ++w) v[w] ^= k[w];
      MorphismIso m;
      m.found = true;
      m.shift = shift;
      for (std::size_t u = 0; u < unknowns.size(); ++u)
        if (test(v, u)) m.components[{unknowns[u].x, unknowns[u].y}].toggle(unknowns[u].b);
      if (blocks_invertible(a, b, shift, m.components)) return m;
    }
  }
  return none;
}

}  // namespace kht
