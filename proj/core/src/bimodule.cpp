#include "khtangle/bimodule.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kht {

// ---- patterns

BBasis ExponentPattern::at(Vertex from, int k) const {
  switch (letter) {
    case Letter::Idem: return BBasis::idem(from);
    case Letter::S: return BBasis::spow(exponent(k), from);
    case Letter::D: return BBasis::dpow(exponent(k), from);
  }
  return BBasis::idem(from);
}

std::string ExponentPattern::format() const {
  if (letter == Letter::Idem) return "1";
  std::string s(1, letter == Letter::S ? 'S' : 'D');
  if (stride == 0) {
    if (offset != 1) s += '^' + std::to_string(offset);
    return s;
  }
  s += "^{";
  if (stride != 1) s += std::to_string(stride);
  s += 'k';
  if (offset != 0) s += '+' + std::to_string(offset);
  return s + '}';
}

namespace {

int parse_int(std::string_view t, std::string_view whole) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || v < 0)
    throw std::invalid_argument("bad exponent in '" + std::string(whole) + "'");
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

ExponentPattern ExponentPattern::parse(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text == "1" || text == "i") return idem();
  if (text.empty() || (text.front() != 'S' && text.front() != 'D'))
    throw std::invalid_argument("bad pattern '" + std::string(whole) + "'");
  ExponentPattern p{text.front() == 'S' ? Letter::S : Letter::D, 1, 0};
  text.remove_prefix(1);
  if (text.empty()) return p;
  if (text.front() != '^') throw std::invalid_argument("bad pattern '" + std::string(whole) + "'");
  text.remove_prefix(1);
  if (!text.empty() && text.front() == '{') {
    if (text.back() != '}') throw std::invalid_argument("bad pattern '" + std::string(whole) + "'");
    text = text.substr(1, text.size() - 2);
  }
  auto kpos = text.find('k');
  if (kpos == std::string_view::npos) {
    p.offset = parse_int(text, whole);
    return p;
  }
  p.stride = kpos == 0 ? 1 : parse_int(text.substr(0, kpos), whole);
  auto rest = text.substr(kpos + 1);
  p.offset = 0;
  if (!rest.empty()) {
    if (rest.front() != '+') throw std::invalid_argument("bad pattern '" + std::string(whole) + "'");
    p.offset = parse_int(rest.substr(1), whole);
  }
  if (p.stride < 1 || p.stride > 2) throw std::invalid_argument("stride must be 1 or 2 in '" + std::string(whole) + "'");
  return p;
}

// ---- bimodules

ADBimodule ADBimodule::structural_identity(Flavor f) {
  ADBimodule m(f, f);
  m.structural_ = true;
  m.add_gen({"e0", Vertex::Filled, Vertex::Filled, 0});
  m.add_gen({"e1", Vertex::Hollow, Vertex::Hollow, 0});
  return m;
}

ADBimodule ADBimodule::enumerated_identity(Flavor f) {
  ADBimodule m(f, f);
  m.add_gen({"e0", Vertex::Filled, Vertex::Filled, 0});
  m.add_gen({"e1", Vertex::Hollow, Vertex::Hollow, 0});
  for (std::size_t v = 0; v < 2; ++v) {
    const std::size_t o = 1 - v;
    if (f == Flavor::B) {
      m.add_action({{ExponentPattern::s(1, 2)}, v, o, ExponentPattern::s(1, 2)});
      m.add_action({{ExponentPattern::s(2, 2)}, v, v, ExponentPattern::s(2, 2)});
      m.add_action({{ExponentPattern::d(1, 1)}, v, v, ExponentPattern::d(1, 1)});
    } else {
      m.add_action({{ExponentPattern::s(1)}, v, o, ExponentPattern::s(1)});
      m.add_action({{ExponentPattern::s(2)}, v, v, ExponentPattern::s(2)});
    }
  }
  return m;
}

std::optional<std::size_t> ADBimodule::find(std::string_view name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return i;
  return std::nullopt;
}

std::size_t ADBimodule::add_gen(BimGen g) {
  if (find(g.name)) throw std::invalid_argument("duplicate generator '" + g.name + "'");
  gens_.push_back(std::move(g));
  return gens_.size() - 1;
}

void ADBimodule::add_action(BimAction a) {
  if (structural_) throw std::logic_error("structural identity has no explicit actions");
  if (a.src >= gens_.size() || a.dst >= gens_.size()) throw std::out_of_range("action endpoint");
  actions_.push_back(std::move(a));
}

void ADBimodule::remove_action(std::size_t index) {
  actions_.erase(actions_.begin() + static_cast<std::ptrdiff_t>(index));
}

namespace {

std::string describe(const BimAction& a, const std::vector<BimGen>& sg, const std::vector<BimGen>& dg) {
  std::string s = sg[a.src].name + " -> " + dg[a.dst].name + " (";
  if (a.inputs.empty()) s += '-';
  for (std::size_t i = a.inputs.size(); i-- > 0;) {
    s += a.inputs[i].format();
    if (i) s += ',';
  }
  return s + " | " + a.output.format() + ')';
}

std::vector<std::string> check_actions(const std::vector<BimAction>& acts, const std::vector<BimGen>& sg,
                                       const std::vector<BimGen>& dg, Flavor af, Flavor df, int shift_base) {
  std::vector<std::string> problems;
  for (const auto& a : acts) {
    const std::string where = describe(a, sg, dg);
    const int j = static_cast<int>(a.inputs.size());
    if (dg[a.dst].hdeg != sg[a.src].hdeg + shift_base - j) problems.push_back(where + ": wrong hdeg shift");
    for (int k = 0; k <= 2; ++k) {
      Vertex v = sg[a.src].left;
      bool ok = true;
      for (const auto& in : a.inputs) {
        if (in.letter == ExponentPattern::Letter::Idem || in.exponent(k) <= 0) {
          problems.push_back(where + ": idempotent input");
          ok = false;
          break;
        }
        BBasis b = in.at(v, k);
        if (!valid_in(af, b)) {
          if (in.constant()) problems.push_back(where + ": input not in A-side algebra");
          ok = false;
          break;
        }
        v = b.target();
      }
      if (!ok) break;
      if (v != dg[a.dst].left) {
        problems.push_back(where + ": inputs end at the wrong idempotent");
        break;
      }
      BBasis o = a.output.at(sg[a.src].right, k);
      if (!valid_in(df, o)) {
        problems.push_back(where + ": output not in D-side algebra");
        break;
      }
      if (o.target() != dg[a.dst].right) {
        problems.push_back(where + ": output ends at the wrong idempotent");
        break;
      }
    }
  }
  return problems;
}

int input_stride(const BimAction& a) {
  int s = 0;
  for (const auto& p : a.inputs) s += p.stride;
  return s;
}

void instantiate_into(Concrete& out, const std::vector<BimAction>& acts, const std::vector<BimGen>& sg,
                      Flavor af, Flavor df, int bound) {
  for (const auto& a : acts) {
    const bool param = input_stride(a) > 0 || a.output.stride > 0;
    for (int k = 0;; ++k) {
      ConcreteKey key{a.src, a.dst, {}};
      Vertex v = sg[a.src].left;
      bool valid = true;
      for (const auto& in : a.inputs) {
        BBasis b = in.at(v, k);
        if (b.is_idempotent()) throw std::logic_error("idempotent input in an action");
        if (!valid_in(af, b)) valid = false;
        key.inputs.push_back(b);
        v = b.target();
      }
      BBasis o = a.output.at(sg[a.src].right, k);
      const int w = key.weight();
      const int cut = input_stride(a) > 0 ? w : o.weight();
      if (param && cut > bound) break;
      if (!param && !a.inputs.empty() && w > bound) break;
      if (valid && valid_in(df, o)) {
        auto& slot = out[key];
        slot.toggle(o);
      } else if (!param) {
        throw std::logic_error("action instance outside its algebra");
      }
      if (!param) break;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.zero() ? out.erase(it) : std::next(it);
}

void add_to(Concrete& c, const ConcreteKey& k, const BLin& v) {
  if (v.zero()) return;
  auto& slot = c[k];
  slot += v;
  if (slot.zero()) c.erase(k);
}

std::map<std::size_t, std::vector<std::pair<ConcreteKey, BLin>>> by_src(const Concrete& c) {
  std::map<std::size_t, std::vector<std::pair<ConcreteKey, BLin>>> g;
  for (const auto& [k, v] : c) g[k.src].emplace_back(k, v);
  return g;
}

std::vector<BBasis> concat(const std::vector<BBasis>& a, const std::vector<BBasis>& b) {
  std::vector<BBasis> r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// Adds every term of the merge part of a differential: one input replaced by
// each of its non-trivial factorizations.
template <class Emit>
void merge_terms(const Concrete& c, Flavor af, int limit, Emit&& emit) {
  for (const auto& [k, v] : c) {
    if (k.weight() > limit) continue;
    for (std::size_t i = 0; i < k.inputs.size(); ++i)
      for (const auto& [a, b] : factorizations(af, k.inputs[i])) {
        ConcreteKey nk{k.src, k.dst, {}};
        nk.inputs.assign(k.inputs.begin(), k.inputs.begin() + static_cast<std::ptrdiff_t>(i));
        nk.inputs.push_back(a);
        nk.inputs.push_back(b);
        nk.inputs.insert(nk.inputs.end(), k.inputs.begin() + static_cast<std::ptrdiff_t>(i + 1), k.inputs.end());
        emit(nk, v);
      }
  }
}

// first then second, matched on the middle generator.
template <class Emit>
void chain_terms(const Concrete& first, const Concrete& second, Flavor df, int limit, Emit&& emit) {
  auto groups = by_src(second);
  for (const auto& [k1, o1] : first) {
    const int w1 = k1.weight();
    if (w1 > limit) continue;
    auto it = groups.find(k1.dst);
    if (it == groups.end()) continue;
    for (const auto& [k2, o2] : it->second) {
      if (w1 + k2.weight() > limit) continue;
      emit(ConcreteKey{k1.src, k2.dst, concat(k1.inputs, k2.inputs)}, mul(df, o1, o2), k1.dst);
    }
  }
}

}  // namespace

int ConcreteKey::weight() const {
  int w = 0;
  for (const auto& b : inputs) w += b.weight();
  return w;
}

std::vector<std::string> validate(const ADBimodule& m) {
  return check_actions(m.actions(), m.gens(), m.gens(), m.a_side(), m.d_side(), 1);
}

Concrete instantiate(const ADBimodule& m, int bound) {
  Concrete out;
  if (m.is_structural_identity()) {
    for (std::size_t s = 0; s < m.gens().size(); ++s)
      for (const auto& b : basis_from(m.a_side(), m.gen(s).left, bound)) {
        if (b.is_idempotent()) continue;
        for (std::size_t d = 0; d < m.gens().size(); ++d)
          if (m.gen(d).left == b.target()) out[{s, d, {b}}].toggle(b);
      }
    return out;
  }
  instantiate_into(out, m.actions(), m.gens(), m.a_side(), m.d_side(), bound);
  return out;
}

Concrete restrict_weight(const Concrete& c, int limit) {
  Concrete r;
  for (const auto& [k, v] : c)
    if (k.weight() <= limit) r.emplace(k, v);
  return r;
}

std::string format_concrete(const Concrete& c, const std::vector<BimGen>& sg, const std::vector<BimGen>& dg,
                            std::size_t max_lines) {
  std::string s;
  std::size_t n = 0;
  for (const auto& [k, v] : c) {
    if (n++ == max_lines) {
      s += "  ... (" + std::to_string(c.size() - max_lines) + " more)\n";
      break;
    }
    s += "  " + sg[k.src].name + " -> " + dg[k.dst].name + " (";
    if (k.inputs.empty()) s += '-';
    for (std::size_t i = k.inputs.size(); i-- > 0;) {
      s += format_basis(k.inputs[i]);
      if (i) s += ',';
    }
    s += " | " + format_label(v) + ")\n";
  }
  return s;
}

int max_weight_shift(const ADBimodule& m, int bound) {
  int best = 0;
  for (const auto& [k, v] : instantiate(m, bound))
    for (const auto& b : v) best = std::max(best, std::abs(b.weight() - k.weight()));
  return best;
}

Concrete structure_defect(const ADBimodule& m, int bound, int limit) {
  Concrete c = instantiate(m, bound);
  Concrete out;
  chain_terms(c, c, m.d_side(), limit, [&](const ConcreteKey& k, const BLin& v, std::size_t) { add_to(out, k, v); });
  merge_terms(c, m.a_side(), limit, [&](const ConcreteKey& k, const BLin& v) { add_to(out, k, v); });
  return out;
}

// ---- morphisms

ADMorphism identity_morphism(const ADBimodule& m) {
  ADMorphism h{m, m, {}};
  for (std::size_t i = 0; i < m.gens().size(); ++i) h.components.push_back({{}, i, i, ExponentPattern::idem()});
  return h;
}

Concrete instantiate(const ADMorphism& h, int bound) {
  Concrete out;
  instantiate_into(out, h.components, h.source.gens(), h.source.a_side(), h.source.d_side(), bound);
  return out;
}

std::pair<ADMorphism, ADMorphism> split_identity_part(const ADMorphism& h) {
  ADMorphism one{h.source, h.target, {}}, rest{h.source, h.target, {}};
  for (const auto& c : h.components)
    (c.inputs.empty() && c.output.letter == ExponentPattern::Letter::Idem ? one : rest).components.push_back(c);
  return {one, rest};
}

std::vector<std::string> validate(const ADMorphism& h) {
  return check_actions(h.components, h.source.gens(), h.target.gens(), h.source.a_side(), h.source.d_side(), 0);
}

Concrete diff_ad_morphism(const ADMorphism& h, int bound, int limit, std::vector<Contribution>* terms) {
  const Concrete hc = instantiate(h, bound);
  const Concrete mc = instantiate(h.source, bound);
  const Concrete nc = instantiate(h.target, bound);
  const Flavor df = h.source.d_side();
  Concrete out;
  auto record = [&](std::string via, const ConcreteKey& k, const BLin& v) {
    if (v.zero()) return;
    add_to(out, k, v);
    if (terms) terms->push_back({std::move(via), k, v});
  };
  chain_terms(hc, nc, df, limit, [&](const ConcreteKey& k, const BLin& v, std::size_t mid) {
    record("target:" + h.target.gen(mid).name, k, v);
  });
  chain_terms(mc, hc, df, limit, [&](const ConcreteKey& k, const BLin& v, std::size_t mid) {
    record("source:" + h.source.gen(mid).name, k, v);
  });
  merge_terms(hc, h.source.a_side(), limit, [&](const ConcreteKey& k, const BLin& v) { record("merge", k, v); });
  return out;
}

Concrete compose_ad_morphisms(const ADMorphism& h2, const ADMorphism& h1, int bound, int limit) {
  if (h1.target.gens() != h2.source.gens()) throw std::logic_error("composing morphisms with mismatched bimodules");
  Concrete out;
  chain_terms(instantiate(h1, bound), instantiate(h2, bound), h1.source.d_side(), limit,
              [&](const ConcreteKey& k, const BLin& v, std::size_t) { add_to(out, k, v); });
  return out;
}

// ---- box products

TypeD box_ad(const TypeD& m, const ADBimodule& bim) {
  if (m.flavor() != bim.a_side()) throw std::invalid_argument("box product: algebra mismatch");
  TypeD out(bim.d_side());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t b = 0; b < bim.gens().size(); ++b)
      if (bim.gen(b).left == m.gen(x).idem)
        index[{x, b}] = out.add_gen({m.gen(x).name + "." + bim.gen(b).name, bim.gen(b).right,
                                     m.gen(x).hdeg + bim.gen(b).hdeg});

  int max_label = 0;
  for (const auto& [k, lab] : m.arrows())
    for (const auto& t : lab) max_label = std::max(max_label, t.weight());
  std::size_t arity = 1;
  for (const auto& a : bim.actions()) arity = std::max(arity, a.inputs.size());
  const Concrete c = instantiate(bim, max_label * static_cast<int>(arity));

  // per source generator: inputs -> [(dst, output)], and the set of proper prefixes
  std::vector<std::map<std::vector<BBasis>, std::vector<std::pair<std::size_t, BLin>>>> acts(bim.gens().size());
  std::vector<std::set<std::vector<BBasis>>> prefixes(bim.gens().size());
  for (const auto& [k, v] : c) {
    acts[k.src][k.inputs].emplace_back(k.dst, v);
    for (std::size_t n = 1; n < k.inputs.size(); ++n)
      prefixes[k.src].insert(std::vector<BBasis>(k.inputs.begin(), k.inputs.begin() + static_cast<std::ptrdiff_t>(n)));
  }

  std::vector<std::vector<std::pair<std::size_t, BLin>>> outs(m.size());
  for (const auto& [k, lab] : m.arrows()) outs[k.first].emplace_back(k.second, lab);

  std::size_t contributions = 0;
  auto emit = [&](std::size_t s, std::size_t t, const BLin& lab) {
    if (++contributions > 1000000) throw std::runtime_error("box product diverges (over 10^6 contributions)");
    out.add_arrow(s, t, lab);
  };

  for (const auto& [xb, src] : index) {
    const auto [x, b] = xb;
    if (auto it = acts[b].find({}); it != acts[b].end())
      for (const auto& [b2, o] : it->second) emit(src, index.at({x, b2}), o);
    std::vector<BBasis> inputs;
    std::function<void(std::size_t)> walk = [&](std::size_t cur) {
      for (const auto& [y, lab] : outs[cur])
        for (const auto& t : lab) {
          if (t.is_idempotent()) {
            if (inputs.empty()) emit(src, index.at({y, b}), BLin::single(BBasis::idem(bim.gen(b).right)));
            continue;
          }
          inputs.push_back(t);
          if (auto it = acts[b].find(inputs); it != acts[b].end())
            for (const auto& [b2, o] : it->second) emit(src, index.at({y, b2}), o);
          if (prefixes[b].count(inputs)) walk(y);
          inputs.pop_back();
        }
    };
    walk(x);
  }
  return out;
}

namespace {

ExponentPattern constant_pattern(const BBasis& b) {
  switch (b.kind) {
    case BBasis::Kind::Idem: return ExponentPattern::idem();
    case BBasis::Kind::S: return ExponentPattern::s(b.exp);
    case BBasis::Kind::D: return ExponentPattern::d(b.exp);
  }
  return ExponentPattern::idem();
}

}  // namespace

ADBimodule box_bimods(const ADBimodule& left, const ADBimodule& right, int bound) {
  if (left.d_side() != right.a_side()) throw std::invalid_argument("box product of bimodules: algebra mismatch");
  ADBimodule out(left.a_side(), right.d_side());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t l = 0; l < left.gens().size(); ++l)
    for (std::size_t r = 0; r < right.gens().size(); ++r)
      if (left.gen(l).right == right.gen(r).left)
        index[{l, r}] = out.add_gen({left.gen(l).name + "." + right.gen(r).name, left.gen(l).left,
                                     right.gen(r).right, left.gen(l).hdeg + right.gen(r).hdeg});

  const Concrete lc = instantiate(left, bound);
  const Concrete rc = instantiate(right, bound);
  // left instances split by output term: src -> [(dst, inputs, output term)]
  struct Step {
    std::size_t dst;
    std::vector<BBasis> inputs;
    BBasis out;
  };
  std::vector<std::vector<Step>> steps(left.gens().size());
  for (const auto& [k, v] : lc)
    for (const auto& t : v) steps[k.src].push_back({k.dst, k.inputs, t});

  Concrete acc;
  auto add = [&](std::size_t s, std::size_t d, std::vector<BBasis> in, const BLin& o) {
    ConcreteKey key{s, d, std::move(in)};
    if (key.weight() > bound) return;
    add_to(acc, key, o);
  };

  for (const auto& [lr, src] : index) {
    const auto [l, r] = lr;
    for (const auto& [k, o] : rc) {
      if (k.src != r) continue;
      if (k.inputs.empty()) {
        add(src, index.at({l, k.dst}), {}, o);
        continue;
      }
      std::vector<BBasis> in;
      std::function<void(std::size_t, std::size_t)> chain = [&](std::size_t cur, std::size_t i) {
        if (i == k.inputs.size()) {
          add(src, index.at({cur, k.dst}), in, o);
          return;
        }
        for (const auto& st : steps[cur]) {
          if (st.out != k.inputs[i]) continue;
          const std::size_t mark = in.size();
          in.insert(in.end(), st.inputs.begin(), st.inputs.end());
          if (ConcreteKey{0, 0, in}.weight() <= bound) chain(st.dst, i + 1);
          in.resize(mark);
        }
      };
      chain(l, 0);
    }
    // unital right action fed by an idempotent left output
    for (const auto& st : steps[l])
      if (st.out.is_idempotent() && !st.inputs.empty())
        add(src, index.at({st.dst, r}), st.inputs, BLin::single(BBasis::idem(right.gen(r).right)));
  }

  for (const auto& [k, v] : acc)
    for (const auto& t : v) {
      BimAction a{{}, k.src, k.dst, constant_pattern(t)};
      for (const auto& b : k.inputs) a.inputs.push_back(constant_pattern(b));
      out.add_action(std::move(a));
    }
  return out;
}

bool same_bimodule(const ADBimodule& a, const ADBimodule& b, int bound, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (a.a_side() != b.a_side() || a.d_side() != b.d_side()) return fail("algebras differ");
  if (a.gens().size() != b.gens().size()) return fail("generator counts differ");
  std::vector<std::size_t> to_b(a.gens().size());
  for (std::size_t i = 0; i < a.gens().size(); ++i) {
    auto j = b.find(a.gen(i).name);
    if (!j || !(b.gen(*j) == a.gen(i))) return fail("generator " + a.gen(i).name + " differs");
    to_b[i] = *j;
  }
  Concrete ca;
  for (const auto& [k, v] : instantiate(a, bound))
    ca.emplace(ConcreteKey{to_b[k.src], to_b[k.dst], k.inputs}, v);
  Concrete cb = instantiate(b, bound);
  if (ca == cb) return true;
  Concrete diff = ca;
  for (const auto& [k, v] : cb) add_to(diff, k, v);
  return fail("actions differ:\n" + format_concrete(diff, b.gens(), b.gens()));
}

// ---- text format

namespace {

std::string format_action(const BimAction& a, const std::vector<BimGen>& sg, const std::vector<BimGen>& dg) {
  std::string s = sg[a.src].name + ' ' + dg[a.dst].name + " (";
  if (a.inputs.empty()) s += '-';
  for (std::size_t i = a.inputs.size(); i-- > 0;) {
    s += a.inputs[i].format();
    if (i) s += ',';
  }
  return s + " | " + a.output.format() + ')';
}

// "<src> <dst> (<inputs> | <output>)"
BimAction parse_action(std::string_view rest, const std::function<std::size_t(const std::string&)>& src_of,
                       const std::function<std::size_t(const std::string&)>& dst_of) {
  auto open = rest.find('(');
  auto close = rest.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw std::invalid_argument("expected '(inputs | output)'");
  std::istringstream names{std::string(rest.substr(0, open))};
  std::string s, d, extra;
  if (!(names >> s >> d) || (names >> extra)) throw std::invalid_argument("expected source and target names");
  if (!trim(rest.substr(close + 1)).empty()) throw std::invalid_argument("trailing text after ')'");
  auto body = rest.substr(open + 1, close - open - 1);
  auto bar = body.find('|');
  if (bar == std::string_view::npos || body.find('|', bar + 1) != std::string_view::npos)
    throw std::invalid_argument("expected exactly one '|'");
  BimAction a;
  a.src = src_of(s);
  a.dst = dst_of(d);
  auto ins = trim(body.substr(0, bar));
  if (ins != "-") {
    std::vector<ExponentPattern> written;
    while (true) {
      auto comma = ins.find(',');
      written.push_back(ExponentPattern::parse(ins.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      ins.remove_prefix(comma + 1);
    }
    a.inputs.assign(written.rbegin(), written.rend());
  }
  a.output = ExponentPattern::parse(body.substr(bar + 1));
  return a;
}

template <class Line>
void for_each_line(std::string_view text, Line&& line_fn) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    auto t = trim(line);
    if (t.empty()) continue;
    auto sp = t.find_first_of(" \t");
    std::string_view head = t.substr(0, sp);
    std::string_view rest = sp == std::string_view::npos ? std::string_view{} : trim(t.substr(sp));
    try {
      line_fn(head, rest);
    } catch (const std::exception& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

std::string serialize(const ADBimodule& m) {
  std::ostringstream out;
  out << "bimodule " << to_string(m.a_side()) << ' ' << to_string(m.d_side());
  if (m.is_structural_identity()) out << " identity";
  out << '\n';
  if (m.is_structural_identity()) return out.str();
  for (const auto& g : m.gens())
    out << "gen " << g.name << ' ' << to_string(g.left) << ' ' << to_string(g.right) << ' ' << g.hdeg << '\n';
  for (const auto& a : m.actions()) out << "act " << format_action(a, m.gens(), m.gens()) << '\n';
  return out.str();
}

ADBimodule parse_bimodule(std::string_view text) {
  std::optional<ADBimodule> m;
  for_each_line(text, [&](std::string_view head, std::string_view rest) {
    std::istringstream ls{std::string(rest)};
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (head == "bimodule") {
      if (m) throw std::invalid_argument("duplicate header");
      if (tok.size() == 3 && tok[2] == "identity") {
        if (tok[0] != tok[1]) throw std::invalid_argument("identity bimodule needs equal algebras");
        m = ADBimodule::structural_identity(parse_flavor(tok[0]));
        return;
      }
      if (tok.size() != 2) throw std::invalid_argument("expected 'bimodule <A-side> <D-side>'");
      m.emplace(parse_flavor(tok[0]), parse_flavor(tok[1]));
    } else if (head == "gen") {
      if (!m) throw std::invalid_argument("missing bimodule header");
      if (m->is_structural_identity()) throw std::invalid_argument("identity bimodule has fixed generators");
      if (tok.size() != 4) throw std::invalid_argument("expected 'gen <name> <left> <right> <hdeg>'");
      m->add_gen({tok[0], parse_vertex(tok[1]), parse_vertex(tok[2]), std::stoi(tok[3])});
    } else if (head == "act") {
      if (!m) throw std::invalid_argument("missing bimodule header");
      auto lookup = [&](const std::string& n) {
        auto i = m->find(n);
        if (!i) throw std::invalid_argument("unknown generator '" + n + "'");
        return *i;
      };
      m->add_action(parse_action(rest, lookup, lookup));
    } else {
      throw std::invalid_argument("unknown directive '" + std::string(head) + "'");
    }
  });
  if (!m) throw std::invalid_argument("missing bimodule header");
  auto problems = validate(*m);
  if (!problems.empty()) throw std::invalid_argument(problems.front());
  return std::move(*m);
}

std::string serialize(const ADMorphism& h) {
  std::string out = "morphism\n";
  for (const auto& c : h.components) out += "comp " + format_action(c, h.source.gens(), h.target.gens()) + '\n';
  return out;
}

ADMorphism parse_morphism(std::string_view text, const ADBimodule& source, const ADBimodule& target) {
  ADMorphism h{source, target, {}};
  bool header = false;
  for_each_line(text, [&](std::string_view head, std::string_view rest) {
    if (head == "morphism") {
      if (header) throw std::invalid_argument("duplicate header");
      header = true;
    } else if (head == "comp") {
      auto in_src = [&](const std::string& n) {
        auto i = source.find(n);
        if (!i) throw std::invalid_argument("unknown source generator '" + n + "'");
        return *i;
      };
      auto in_dst = [&](const std::string& n) {
        auto i = target.find(n);
        if (!i) throw std::invalid_argument("unknown target generator '" + n + "'");
        return *i;
      };
      h.components.push_back(parse_action(rest, in_src, in_dst));
    } else {
      throw std::invalid_argument("unknown directive '" + std::string(head) + "'");
    }
  });
  auto problems = validate(h);
  if (!problems.empty()) throw std::invalid_argument(problems.front());
  return h;
}

// ---- shipped data

namespace {

constexpr std::string_view kY = R"(bimodule Bt B
gen t filled filled 0
gen u hollow hollow 0
gen k filled filled 1
gen v hollow hollow 1
act t u (S | S)
act u t (S | S)
act k v (S | S)
act v k (S | S)
act t t (S^2 | D)
act u u (S^2 | D)
act k k (S^2 | D)
act v v (S^2 | D)
act t k (- | D)
act t k (- | S^2)
act u v (- | D)
act u v (- | S^2)
act k t (S^2,S^2 | D)
act k t (S,S | 1)
act v u (S^2,S^2 | D)
act v u (S,S | 1)
)";

constexpr std::string_view kQ = R"(bimodule B Bt
gen z filled filled 0
gen w hollow hollow 0
act z w (S | S)
act w z (S | S)
act z z (D | S^2)
act z z (S^2 | S^2)
act w w (D | S^2)
act w w (S^2 | S^2)
)";

constexpr std::string_view kI = R"(bimodule B B
gen l filled filled 0
gen b hollow hollow 0
gen m filled filled 1
gen y hollow hollow 1
act l b (S^{2k+1} | S^{2k+1})
act b l (S^{2k+1} | S^{2k+1})
act m y (S^{2k+1} | S^{2k+1})
act y m (S^{2k+1} | S^{2k+1})
act l l (D^{k+1} | D^{k+1})
act l l (S^{2k+2} | S^{2k+2})
act b b (D^{k+1} | D^{k+1})
act b b (S^{2k+2} | S^{2k+2})
act m m (D^{k+1} | D^{k+1})
act m m (S^{2k+2} | S^{2k+2})
act y y (D^{k+1} | D^{k+1})
act y y (S^{2k+2} | S^{2k+2})
act l m (- | D)
act l m (- | S^2)
act b y (- | D)
act b y (- | S^2)
)";

constexpr std::string_view kQY = R"(bimodule B B
gen z.t filled filled 0
gen w.u hollow hollow 0
gen z.k filled filled 1
gen w.v hollow hollow 1
act z.t w.u (S | S)
act w.u z.t (S | S)
act z.k w.v (S | S)
act w.v z.k (S | S)
act z.t z.t (S^2 | D)
act z.t z.t (D | D)
act w.u w.u (S^2 | D)
act w.u w.u (D | D)
act z.k z.k (S^2 | D)
act z.k z.k (D | D)
act w.v w.v (S^2 | D)
act w.v w.v (D | D)
act z.t z.k (- | D)
act z.t z.k (- | S^2)
act w.u w.v (- | D)
act w.u w.v (- | S^2)
act z.k z.t (S,S | 1)
act z.k z.t (D,D | D)
act z.k z.t (S^2,D | D)
act z.k z.t (D,S^2 | D)
act z.k z.t (S^2,S^2 | D)
act w.v w.u (S,S | 1)
act w.v w.u (D,D | D)
act w.v w.u (S^2,D | D)
act w.v w.u (D,S^2 | D)
act w.v w.u (S^2,S^2 | D)
)";

constexpr std::string_view kF = R"(morphism
comp l z.t (- | 1)
comp b w.u (- | 1)
comp m z.k (- | 1)
comp y w.v (- | 1)
comp m z.t (S^{2k+2} | S^{2k})
comp m z.t (D^{k+2} | D^{k+1})
comp m w.u (S^{2k+3} | S^{2k+1})
comp y w.u (S^{2k+2} | S^{2k})
comp y w.u (D^{k+2} | D^{k+1})
comp y z.t (S^{2k+3} | S^{2k+1})
)";

constexpr std::string_view kG = R"(morphism
comp z.t l (- | 1)
comp w.u b (- | 1)
comp z.k m (- | 1)
comp w.v y (- | 1)
comp z.k l (S^{2k+2} | S^{2k})
comp z.k l (D^{k+2} | D^{k+1})
comp z.k b (S^{2k+3} | S^{2k+1})
comp w.v b (S^{2k+2} | S^{2k})
comp w.v b (D^{k+2} | D^{k+1})
comp w.v l (S^{2k+3} | S^{2k+1})
)";

}  // namespace

ShippedBimodules shipped_bimodules() {
  return {parse_bimodule(kI), parse_bimodule(kQ), parse_bimodule(kY), parse_bimodule(kQY)};
}

ShippedMorphisms shipped_morphisms() {
  auto b = shipped_bimodules();
  return {parse_morphism(kF, b.i, b.qy_expected), parse_morphism(kG, b.qy_expected, b.i)};
}

// ---- homotopy equivalence of I and Q box Y

bool EquivalenceReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const EquivalenceCheck& c) { return c.pass; });
}

EquivalenceReport verify_equivalence(int bound, int margin) {
  return verify_equivalence(shipped_bimodules(), shipped_morphisms(), bound, margin);
}

EquivalenceReport verify_equivalence(const ShippedBimodules& b, const ShippedMorphisms& m, int bound, int margin) {
  if (margin < 0 || bound <= margin) throw std::invalid_argument("bound must exceed margin");
  const int limit = bound - margin;
  EquivalenceReport r{bound, margin, {}};
  auto zero_check = [&](std::string name, const Concrete& c, const std::vector<BimGen>& sg,
                        const std::vector<BimGen>& dg) {
    r.checks.push_back({std::move(name), c.empty(),
                        c.empty() ? "all components vanish up to input weight " + std::to_string(limit)
                                  : std::to_string(c.size()) + " nonzero components\n" + format_concrete(c, sg, dg)});
  };
  auto sum = [](Concrete a, const Concrete& c) {
    for (const auto& [k, v] : c) add_to(a, k, v);
    return a;
  };

  zero_check("d f = 0", diff_ad_morphism(m.f, bound, limit), m.f.source.gens(), m.f.target.gens());
  zero_check("d g = 0", diff_ad_morphism(m.g, bound, limit), m.g.source.gens(), m.g.target.gens());

  auto compositions = [&](const ADMorphism& first, const ADMorphism& second, const std::string& fn,
                          const std::string& sn) {
    auto [f1, f2] = split_identity_part(first);
    auto [s1, s2] = split_identity_part(second);
    const auto& src = first.source;
    const Concrete id = restrict_weight(instantiate(identity_morphism(src), bound), limit);
    const auto& gs = src.gens();
    zero_check(sn + " " + fn + " = id", sum(compose_ad_morphisms(second, first, bound, limit), id), gs, gs);
    zero_check(sn + "2 " + fn + "2 = 0", compose_ad_morphisms(s2, f2, bound, limit), gs, gs);
    zero_check(sn + "2 " + fn + "1 = " + sn + "1 " + fn + "2",
               sum(compose_ad_morphisms(s2, f1, bound, limit), compose_ad_morphisms(s1, f2, bound, limit)), gs, gs);
    zero_check(sn + "1 " + fn + "1 = id", sum(compose_ad_morphisms(s1, f1, bound, limit), id), gs, gs);
  };
  compositions(m.f, m.g, "f", "g");
  compositions(m.g, m.f, "g", "f");

  std::string why;
  bool same = same_bimodule(box_bimods(b.q, b.y, bound), b.qy_expected, bound, &why);
  if (same) why = "action sets agree up to input weight " + std::to_string(bound);
  r.checks.push_back({"Q box Y = expected bimodule", same, why});
  return r;
}

}  // namespace kht
