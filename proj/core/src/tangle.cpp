#include "khtangle/tangle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "khtangle/f2.hpp"

namespace kht {

int TangleWord::crossings() const {
  return static_cast<int>(std::count_if(slices.begin(), slices.end(),
                                        [](const Slice& s) { return s.kind == 'x' || s.kind == 'y'; }));
}

std::string TangleWord::format() const {
  std::string out;
  for (const auto& s : slices) {
    if (!out.empty()) out += ' ';
    out += s.kind;
    out += std::to_string(s.index);
  }
  return out;
}

TangleWord parse_tangle(std::string_view text) {
  TangleWord t;
  std::size_t i = 0;
  int strands = 2;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("tangle slice " + std::to_string(t.slices.size() + 1) + ": " + why);
  };
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  for (skip_ws(); i < text.size(); skip_ws()) {
    const char kind = text[i++];
    if (kind != 'x' && kind != 'y' && kind != 'u' && kind != 'n')
      fail(std::string("unknown slice '") + kind + "'");
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) fail(std::string("missing index after '") + kind + "'");
    if (i - start > 6) fail("index out of range");
    const int idx = std::stoi(std::string(text.substr(start, i - start)));
    if (kind == 'u') {
      if (idx < 1 || idx > strands + 1)
        fail("cup index " + std::to_string(idx) + " outside 1.." + std::to_string(strands + 1));
      strands += 2;
    } else if (kind == 'n') {
      if (strands < 2) fail("cap needs at least two strands");
      if (idx < 1 || idx > strands - 1)
        fail("cap index " + std::to_string(idx) + " outside 1.." + std::to_string(strands - 1));
      strands -= 2;
    } else if (idx < 1 || idx > strands - 1) {
      fail("crossing index " + std::to_string(idx) + " outside 1.." + std::to_string(strands - 1));
    }
    t.slices.push_back({kind, idx});
  }
  if (strands != 2)
    throw std::invalid_argument("tangle ends with " + std::to_string(strands) + " strands, expected 2");
  return t;
}

End parse_end(std::string_view text) {
  if (text == "nw" || text == "NW") return End::NW;
  if (text == "ne" || text == "NE") return End::NE;
  if (text == "sw" || text == "SW") return End::SW;
  if (text == "se" || text == "SE") return End::SE;
  throw std::invalid_argument("unknown end '" + std::string(text) + "'");
}

std::string_view to_string(End e) {
  switch (e) {
    case End::NW: return "nw";
    case End::NE: return "ne";
    case End::SW: return "sw";
    case End::SE: return "se";
  }
  return "?";
}

int Resolution::loops() const {
  return static_cast<int>(std::count_if(components.begin(), components.end(),
                                        [](const Component& c) { return !c.arc; }));
}

namespace {

// Node layout: level l holds the strands after l slices, plus one trailing
// identity level.
struct Layout {
  std::vector<int> offset;  // first node id of each level
  std::vector<int> width;
  int nodes = 0;
  int id(int level, int pos) const { return offset[level] + pos - 1; }
};

Layout layout_of(const TangleWord& t) {
  Layout l;
  int n = 2;
  auto push = [&](int w) {
    l.offset.push_back(l.nodes);
    l.width.push_back(w);
    l.nodes += w;
  };
  push(n);
  for (const auto& s : t.slices) {
    if (s.kind == 'u') n += 2;
    if (s.kind == 'n') n -= 2;
    push(n);
  }
  push(2);
  return l;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

Resolution resolve(const TangleWord& t, const Layout& lay, std::uint32_t coord, End star) {
  UnionFind uf(lay.nodes);
  int crossing = 0;
  const auto levels = static_cast<int>(t.slices.size());
  for (int l = 0; l < levels; ++l) {
    const auto& s = t.slices[l];
    const int w = lay.width[l];
    const int i = s.index;
    if (s.kind == 'x' || s.kind == 'y') {
      const bool bit = (coord >> crossing) & 1u;
      ++crossing;
      const bool horizontal = (s.kind == 'x') ? !bit : bit;
      for (int j = 1; j <= w; ++j)
        if (j != i && j != i + 1) uf.unite(lay.id(l, j), lay.id(l + 1, j));
      if (horizontal) {
        uf.unite(lay.id(l, i), lay.id(l, i + 1));
        uf.unite(lay.id(l + 1, i), lay.id(l + 1, i + 1));
      } else {
        uf.unite(lay.id(l, i), lay.id(l + 1, i));
        uf.unite(lay.id(l, i + 1), lay.id(l + 1, i + 1));
      }
    } else if (s.kind == 'u') {
      uf.unite(lay.id(l + 1, i), lay.id(l + 1, i + 1));
      for (int j = 1; j <= w; ++j) uf.unite(lay.id(l, j), lay.id(l + 1, j < i ? j : j + 2));
    } else {
      uf.unite(lay.id(l, i), lay.id(l, i + 1));
      for (int j = 1; j <= w; ++j)
        if (j < i || j > i + 1) uf.unite(lay.id(l, j), lay.id(l + 1, j < i ? j : j - 2));
    }
  }
  for (int j = 1; j <= 2; ++j) uf.unite(lay.id(levels, j), lay.id(levels + 1, j));

  const int bottom = levels + 1;
  const int nw = lay.id(0, 1), ne = lay.id(0, 2), sw = lay.id(bottom, 1), se = lay.id(bottom, 2);
  const int starred = star == End::NW ? nw : star == End::NE ? ne : star == End::SW ? sw : se;

  std::map<int, Component> by_root;
  for (int v = 0; v < lay.nodes; ++v) {
    auto& c = by_root[uf.find(v)];
    if (c.nodes.empty()) c.min_node = v;
    c.nodes.push_back(v);
    if (v == nw || v == ne || v == sw || v == se) c.arc = true;
    if (v == starred) c.starred = true;
  }
  Resolution r;
  r.coordinate = coord;
  r.matching = uf.find(nw) == uf.find(sw) ? Vertex::Filled : Vertex::Hollow;
  for (auto& [root, c] : by_root) r.components.push_back(std::move(c));
  std::stable_sort(r.components.begin(), r.components.end(), [](const Component& a, const Component& b) {
    if (a.arc != b.arc) return a.arc;
    return a.min_node < b.min_node;
  });
  return r;
}

// Corner nodes of each crossing, in crossing order.
std::vector<std::array<int, 4>> crossing_corners(const TangleWord& t, const Layout& lay) {
  std::vector<std::array<int, 4>> out;
  for (std::size_t l = 0; l < t.slices.size(); ++l) {
    const auto& s = t.slices[l];
    if (s.kind != 'x' && s.kind != 'y') continue;
    const int li = static_cast<int>(l);
    out.push_back({lay.id(li, s.index), lay.id(li, s.index + 1), lay.id(li + 1, s.index),
                   lay.id(li + 1, s.index + 1)});
  }
  return out;
}

}  // namespace

ResolutionCube build_cube(const TangleWord& t, End star, int max_crossings) {
  ResolutionCube cube;
  cube.word = t;
  cube.star = star;
  cube.crossings = t.crossings();
  if (cube.crossings > max_crossings)
    throw std::invalid_argument("tangle has " + std::to_string(cube.crossings) +
                                " crossings, limit is " + std::to_string(max_crossings));
  if (cube.crossings > 30) throw std::invalid_argument("too many crossings for a cube");
  const Layout lay = layout_of(t);
  const std::uint32_t n = 1u << cube.crossings;
  cube.vertices.reserve(n);
  for (std::uint32_t c = 0; c < n; ++c) cube.vertices.push_back(resolve(t, lay, c, star));
  return cube;
}

namespace {

std::string gen_name(std::uint32_t coord, int crossings, std::uint32_t mask, int loops) {
  std::string s = "v";
  for (int i = 0; i < crossings; ++i) s += ((coord >> i) & 1u) ? '1' : '0';
  if (loops > 0) {
    s += '.';
    for (int k = 0; k < loops; ++k) s += ((mask >> k) & 1u) ? 'x' : '1';
  }
  return s;
}

struct Target {
  std::uint32_t mask;
  BLin label;
};

}  // namespace

TypeD deloop_translate(const ResolutionCube& cube) {
  TypeD d(Flavor::B);
  const Layout lay = layout_of(cube.word);
  const auto corners = crossing_corners(cube.word, lay);
  const int n = cube.crossings;

  // first generator index and loop list for each vertex
  std::vector<std::size_t> first(cube.vertices.size());
  std::vector<std::vector<const Component*>> loops(cube.vertices.size());
  for (const auto& v : cube.vertices) {
    auto& ls = loops[v.coordinate];
    for (const auto& c : v.components)
      if (!c.arc) ls.push_back(&c);
    if (ls.size() > 20) throw std::invalid_argument("too many closed loops in one resolution");
    first[v.coordinate] = d.size();
    const int hdeg = std::popcount(v.coordinate);
    const int nl = static_cast<int>(ls.size());
    for (std::uint32_t m = 0; m < (1u << nl); ++m)
      d.add_gen({gen_name(v.coordinate, n, m, nl), v.matching, hdeg});
  }

  for (const auto& src : cube.vertices) {
    for (int c = 0; c < n; ++c) {
      if ((src.coordinate >> c) & 1u) continue;
      const auto& dst = cube.vertices[src.coordinate | (1u << c)];
      const std::set<int> site(corners[c].begin(), corners[c].end());
      auto touched = [&](const Component& comp) {
        return std::any_of(comp.nodes.begin(), comp.nodes.end(), [&](int v) { return site.count(v) > 0; });
      };
      const auto& sl = loops[src.coordinate];
      const auto& tl = loops[dst.coordinate];

      std::vector<const Component*> s_touch, t_touch;
      for (const auto& comp : src.components)
        if (touched(comp)) s_touch.push_back(&comp);
      for (const auto& comp : dst.components)
        if (touched(comp)) t_touch.push_back(&comp);

      // untouched loops, src index -> dst index
      std::vector<std::pair<int, int>> carry;
      for (std::size_t a = 0; a < sl.size(); ++a) {
        if (touched(*sl[a])) continue;
        auto it = std::find_if(tl.begin(), tl.end(),
                               [&](const Component* x) { return x->min_node == sl[a]->min_node; });
        if (it == tl.end()) throw std::logic_error("untouched loop lost across a saddle");
        carry.emplace_back(static_cast<int>(a), static_cast<int>(it - tl.begin()));
      }
      auto loop_index = [](const std::vector<const Component*>& ls, const Component* c) {
        return static_cast<int>(std::find(ls.begin(), ls.end(), c) - ls.begin());
      };
      auto dot = [&](const Component* arc) {
        return arc->starred ? BLin{} : BLin::single(BBasis::dpow(1, dst.matching));
      };
      const BLin iota = BLin::single(BBasis::idem(src.matching));
      const BLin h = h_elem(src.matching);

      auto count_arcs = [](const std::vector<const Component*>& v) {
        return static_cast<int>(std::count_if(v.begin(), v.end(), [](const Component* c) { return c->arc; }));
      };
      const int s_arcs = count_arcs(s_touch), t_arcs = count_arcs(t_touch);

      for (std::uint32_t sm = 0; sm < (1u << sl.size()); ++sm) {
        std::uint32_t base = 0;
        for (auto [a, b] : carry)
          if ((sm >> a) & 1u) base |= 1u << b;
        auto sbit = [&](const Component* comp) { return (sm >> loop_index(sl, comp)) & 1u; };
        std::vector<Target> out;

        if (s_touch.size() == 2 && t_touch.size() == 1 && s_arcs == 0) {
          const int t0 = loop_index(tl, t_touch[0]);
          const unsigned x1 = sbit(s_touch[0]), x2 = sbit(s_touch[1]);
          if (x1 && x2) out.push_back({base | (1u << t0), h});
          else out.push_back({base | ((x1 | x2) << t0), iota});
        } else if (s_touch.size() == 2 && t_touch.size() == 1 && s_arcs == 1) {
          const Component* loop = s_touch[0]->arc ? s_touch[1] : s_touch[0];
          if (sbit(loop)) out.push_back({base, dot(t_touch[0])});
          else out.push_back({base, iota});
        } else if (s_touch.size() == 2 && t_touch.size() == 2 && s_arcs == 2 && t_arcs == 2) {
          out.push_back({base, BLin::single(BBasis::spow(1, src.matching))});
        } else if (s_touch.size() == 1 && t_touch.size() == 2 && s_arcs == 0) {
          const int a = loop_index(tl, t_touch[0]), b = loop_index(tl, t_touch[1]);
          if (sbit(s_touch[0])) {
            out.push_back({base | (1u << a) | (1u << b), iota});
          } else {
            out.push_back({base | (1u << a), iota});
            out.push_back({base | (1u << b), iota});
            out.push_back({base, h});
          }
        } else if (s_touch.size() == 1 && t_touch.size() == 2 && s_arcs == 1 && t_arcs == 1) {
          const Component* arc = t_touch[0]->arc ? t_touch[0] : t_touch[1];
          const Component* loop = t_touch[0]->arc ? t_touch[1] : t_touch[0];
          const int li = loop_index(tl, loop);
          out.push_back({base, dot(arc) + h});
          out.push_back({base | (1u << li), iota});
        } else {
          throw std::logic_error("unexpected saddle at crossing " + std::to_string(c + 1));
        }
        for (auto& [tm, label] : out)
          if (!label.zero()) d.add_arrow(first[src.coordinate] + sm, first[dst.coordinate] + tm, label);
      }
    }
  }

  auto sq = d_squared(d);
  if (!sq.empty()) {
    const auto& e = sq.front();
    throw std::logic_error("delooped complex has d^2 != 0 on " + d.gen(e.src).name + " -> " +
                           d.gen(e.dst).name + ": " + format_label(e.value));
  }
  return d;
}

TypeD complex_of(const TangleWord& t, const PipelineOptions& o) {
  return deloop_translate(build_cube(t, o.star, o.max_crossings));
}

TypeD compute_dd1(const TangleWord& t, const PipelineOptions& o) { return cone_h(reduce(complex_of(t, o))); }

TypeD compute_lt_image(const TangleWord& t, const ADBimodule& y, const PipelineOptions& o) {
  return reduce(box_ad(apply_q(reduce(complex_of(t, o))), y));
}

TypeD compute_lt_image(const TangleWord& t, const PipelineOptions& o) {
  return compute_lt_image(t, shipped_bimodules().y, o);
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Equivalent: return "EQUIVALENT";
    case Verdict::Indeterminate: return "INDETERMINATE";
    case Verdict::Mismatch: return "MISMATCH";
  }
  return "?";
}

namespace {

std::string format_profile(const std::map<std::pair<Vertex, int>, std::size_t>& p) {
  std::string s;
  for (const auto& [k, n] : p) {
    if (!s.empty()) s += ", ";
    s += std::string(to_string(k.first)) + "@" + std::to_string(k.second) + ":" + std::to_string(n);
  }
  return s.empty() ? "empty" : s;
}

bool profiles_match(const std::map<std::pair<Vertex, int>, std::size_t>& a,
                    const std::map<std::pair<Vertex, int>, std::size_t>& b, int shift) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, n] : a) {
    auto it = b.find({k.first, k.second + shift});
    if (it == b.end() || it->second != n) return false;
  }
  return true;
}

}  // namespace

Comparison compare(const TangleWord& t, const ADBimodule& y, const PipelineOptions& o) {
  Comparison r;
  const TypeD base = reduce(complex_of(t, o));
  r.dd1 = reduce(cone_h(base));
  r.lt = reduce(box_ad(apply_q(base), y));
  const auto pa = generator_profile(r.dd1), pb = generator_profile(r.lt);
  bool any_shift = pa.empty() && pb.empty();
  if (!pa.empty() && !pb.empty()) {
    std::set<int> shifts;
    for (const auto& a : pa)
      for (const auto& b : pb) shifts.insert(b.first.second - a.first.second);
    for (int s : shifts)
      if (profiles_match(pa, pb, s)) any_shift = true;
  }
  if (!any_shift) {
    r.verdict = Verdict::Mismatch;
    r.diagnostic = "generator counts differ: dd1 {" + format_profile(pa) + "} vs lt {" + format_profile(pb) + "}";
    return r;
  }
  r.witness = iso_check(r.dd1, r.lt);
  if (r.witness.found) {
    r.verdict = Verdict::Equivalent;
    r.diagnostic = "isomorphic with hdeg shift " + std::to_string(r.witness.shift);
    return r;
  }
  int weight = 2;
  for (const TypeD* d : {&r.dd1, &r.lt})
    for (const auto& [k, lab] : d->arrows())
      for (const auto& b : lab) weight = std::max(weight, b.weight());
  r.morphism = find_isomorphism(r.dd1, r.lt, weight);
  if (r.morphism.found && is_isomorphism(r.dd1, r.lt, r.morphism)) {
    r.verdict = Verdict::Equivalent;
    r.diagnostic = "isomorphic after a change of basis with " + std::to_string(r.morphism.components.size()) +
                   " components, hdeg shift " + std::to_string(r.morphism.shift);
  } else {
    r.verdict = Verdict::Indeterminate;
    r.diagnostic = "generator counts agree but no isomorphism was found";
  }
  return r;
}

Comparison compare(const TangleWord& t, const PipelineOptions& o) {
  return compare(t, shipped_bimodules().y, o);
}

std::map<std::pair<Vertex, int>, std::size_t> reduced_count_oracle(const TypeD& d) {
  std::map<std::pair<Vertex, int>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < d.size(); ++i) groups[{d.gen(i).idem, d.gen(i).hdeg}].push_back(i);
  // rank of the idempotent part of the map from (e, k) to (e, k+1)
  auto rank_from = [&](Vertex e, int k) -> std::size_t {
    auto s = groups.find({e, k});
    auto t = groups.find({e, k + 1});
    if (s == groups.end() || t == groups.end()) return 0;
    std::map<std::size_t, std::size_t> col;
    for (std::size_t j = 0; j < t->second.size(); ++j) col[t->second[j]] = j;
    F2Matrix m(t->second.size());
    const BBasis idem = BBasis::idem(e);
    for (auto x : s->second) {
      std::vector<std::size_t> ones;
      for (const auto& [y, label] : d.out_arrows(x))
        if (label.contains(idem) && col.count(y)) ones.push_back(col[y]);
      m.add_row(ones);
    }
    return m.rank();
  };
  std::map<std::pair<Vertex, int>, std::size_t> out;
  for (const auto& [key, members] : groups) {
    const auto [e, k] = key;
    const std::size_t dim = members.size() - rank_from(e, k) - rank_from(e, k - 1);
    if (dim > 0) out[key] = dim;
  }
  return out;
}

std::vector<CorpusEntry> shipped_corpus() {
  return {
      {"trivial", ""},
      {"crossing", "x1"},
      {"mirror crossing", "y1"},
      {"two twists", "x1 x1"},
      {"three twists", "x1 x1 x1"},
      {"four twists", "x1 x1 x1 x1"},
      {"cancelling pair", "x1 y1"},
      {"vertical twist", "u3 x2 n3"},
      {"two vertical twists", "u3 x2 x2 n3"},
      {"rational 1 2", "x1 u3 y2 y2 n3"},
      {"rational 2 2", "u3 y2 y2 n3 x1 x1"},
      {"rational 3 2", "x1 x1 x1 u3 y2 y2 n3"},
      {"rational 2 1 2", "x1 x1 u3 y2 n3 x1 x1"},
      {"rational 2 3", "x1 x1 u3 y2 y2 y2 n3"},
      {"rational 4 2", "u3 y2 y2 n3 x1 x1 x1 x1"},
      {"rational 3 3", "x1 x1 x1 u3 y2 y2 y2 n3"},
      {"clasped loop", "u1 x2 x2 n1"},
      {"free loop", "u3 n3 x1"},
      {"twisted loop", "u1 x2 y2 n1 x1"},
  };
}

TangleWord random_word(std::mt19937_64& rng, int max_crossings) {
  TangleWord t;
  int strands = 2;
  const int target = std::uniform_int_distribution<int>(0, max_crossings)(rng);
  int crossings = 0;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int step = 0; step < 4 * max_crossings + 8 && crossings < target; ++step) {
    const int r = pick(0, 9);
    if (r < 6) {
      t.slices.push_back({pick(0, 1) ? 'x' : 'y', pick(1, strands - 1)});
      ++crossings;
    } else if (r < 8 && strands < 6) {
      t.slices.push_back({'u', pick(1, strands + 1)});
      strands += 2;
    } else if (strands > 2) {
      t.slices.push_back({'n', pick(1, strands - 1)});
      strands -= 2;
    }
  }
  while (strands > 2) {
    t.slices.push_back({'n', pick(1, strands - 1)});
    strands -= 2;
  }
  return t;
}

}  // namespace kht
