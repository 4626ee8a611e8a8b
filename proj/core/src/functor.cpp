#include "khtangle/functor.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include "embedded_tables.hpp"

namespace kht {

std::string format_plin(const PLin& x) {
  if (x.zero()) return "0";
  std::string s;
  for (const auto& p : x) {
    if (!s.empty()) s += " + ";
    s += to_string(p);
  }
  return s;
}

FunctorTable FunctorTable::shipped() { return parse(embedded::kFunctor); }

FunctorTable FunctorTable::parse(std::string_view text) {
  FunctorTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("functor table line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0].size() != 2 || tok[0][0] != 'F' || tok[0][1] < '1' || tok[0][1] > '3')
      fail("expected F1, F2 or F3");
    std::size_t arity = static_cast<std::size_t>(tok[0][1] - '0');
    if (tok.size() < arity + 3 || tok[arity + 1] != "->") fail("malformed entry");
    Entry e;
    for (std::size_t i = 0; i < arity; ++i) {
      auto g = parse_agen(tok[1 + i]);
      if (!g) fail("unknown generator '" + tok[1 + i] + "'");
      e.inputs.push_back(*g);
    }
    if (!composable(e.inputs)) fail("inputs are not composable");
    bool want_term = true;
    for (std::size_t i = arity + 2; i < tok.size(); ++i) {
      if (want_term) {
        auto p = parse_named_basis(tok[i]);
        if (!p) fail("bad basis name '" + tok[i] + "'");
        if (p->src != source(e.inputs.back()) || p->dst != target(e.inputs.front()))
          fail("output '" + tok[i] + "' has the wrong endpoints");
        e.output.toggle(*p);
      } else if (tok[i] != "+") {
        fail("expected '+'");
      }
      want_term = !want_term;
    }
    if (want_term) fail("dangling '+'");
    t.add(std::move(e));
  }
  return t;
}

std::string FunctorTable::format() const {
  std::string out;
  for (const auto& e : entries_) {
    out += 'F' + std::to_string(e.inputs.size());
    for (auto g : e.inputs) {
      out += ' ';
      out += to_string(g);
    }
    out += " -> " + format_plin(e.output) + '\n';
  }
  return out;
}

void FunctorTable::add(Entry e) {
  lookup_[e.inputs] += e.output;
  entries_.push_back(std::move(e));
}

ConeMorphism FunctorTable::apply(std::span<const AGen> seq) const {
  if (seq.empty() || seq.size() > 3 || !composable(seq))
    return ConeMorphism::zero(seq.empty() ? Vertex::Filled : source(seq.back()),
                              seq.empty() ? Vertex::Filled : target(seq.front()));
  Vertex s = source(seq.back()), d = target(seq.front());
  auto it = lookup_.find(ASeq(seq.begin(), seq.end()));
  if (it == lookup_.end()) return ConeMorphism::zero(s, d);
  return to_positional(it->second, s, d);
}

namespace {

template <class Visit>
void for_each_sequence(std::size_t len, ASeq& cur, Visit&& visit) {
  if (cur.size() == len) {
    visit(cur);
    return;
  }
  for (auto g : kAllAGens) {
    if (!cur.empty() && target(g) != source(cur.back())) continue;
    cur.push_back(g);
    for_each_sequence(len, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

FunctorReport verify_functor(const AProductTable& a, const FunctorTable& f, int max_len) {
  FunctorReport report;
  ASeq cur, tmp;
  for (int len = 1; len <= max_len; ++len) {
    const std::size_t n = static_cast<std::size_t>(len);
    for_each_sequence(n, cur, [&](const ASeq& seq) {
      ++report.sequences;
      const Vertex s = source(seq.back()), d = target(seq.front());
      auto lhs = ConeMorphism::zero(s, d);
      for (std::size_t j = 2; j <= 3 && j <= n; ++j) {
        if (n - j + 1 > 3) continue;
        for (std::size_t p = 0; p + j <= n; ++p) {
          for (auto g : a.mu(std::span(seq).subspan(p, j))) {
            tmp.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(p));
            tmp.push_back(g);
            tmp.insert(tmp.end(), seq.begin() + static_cast<std::ptrdiff_t>(p + j), seq.end());
            lhs += f.apply(tmp);
          }
        }
      }
      auto rhs = diff_c(f.apply(seq));
      for (std::size_t r = 1; r < n; ++r) {
        if (r > 3 || n - r > 3) continue;
        auto later = f.apply(std::span(seq).subspan(0, r));
        auto first = f.apply(std::span(seq).subspan(r));
        rhs += mu2_c(later, first);
      }
      if (lhs != rhs) report.violations.push_back({seq, lhs, rhs});
    });
  }
  return report;
}

bool QuasiIsoReport::ok() const {
  if (!subalgebra_failures.empty()) return false;
  for (const auto& s : spaces)
    if (!s.closed || !s.concentrated || s.independent != s.classes ||
        s.classes != s.homology.total())
      return false;
  return true;
}

QuasiIsoReport verify_quasi_iso(const FunctorTable& f, int max_weight) {
  if (max_weight < 4) throw std::invalid_argument("max weight must be at least 4");
  QuasiIsoReport r;
  for (auto src : {Vertex::Filled, Vertex::Hollow})
    for (auto dst : {Vertex::Filled, Vertex::Hollow}) {
      QuasiIsoReport::Space sp{src, dst, homology_c(src, dst, max_weight), 0, 0, true, true};
      for (std::size_t w = 0; w < sp.homology.dims.size(); ++w) {
        bool expected = src == dst ? (w == 0 || w == 2) : w == 1;
        if (!expected && sp.homology.dims[w] != 0) sp.concentrated = false;
      }
      KeyedRows<CKey> rows;
      for (const auto& k : positional_basis(src, dst, 0, max_weight - 2))
        rows.add(diff_c(ConeMorphism::from_keys(src, dst, CLin::single(k))).keys());
      const std::size_t boundary_rank = rows.rank();
      for (auto g : kAllAGens) {
        if (source(g) != src || target(g) != dst) continue;
        ASeq one{g};
        auto img = f.apply(one);
        if (!diff_c(img).is_zero()) sp.closed = false;
        rows.add(img.keys());
        ++sp.classes;
      }
      sp.independent = rows.rank() - boundary_rank;
      r.spaces.push_back(sp);
    }
  std::vector<AGen> as;
  for (auto g : kAllAGens)
    if (in_subalgebra(g)) as.push_back(g);
  ASeq cur;
  std::function<void(std::size_t)> go = [&](std::size_t len) {
    if (!cur.empty() && !in_subalgebra_cs(f.apply(cur))) {
      std::string s = "F" + std::to_string(cur.size()) + "(";
      for (std::size_t i = 0; i < cur.size(); ++i) s += (i ? "," : "") + std::string(to_string(cur[i]));
      r.subalgebra_failures.push_back(s + ") leaves Cs");
    }
    if (cur.size() == len) return;
    for (auto g : as) {
      if (!cur.empty() && target(g) != source(cur.back())) continue;
      cur.push_back(g);
      go(len);
      cur.pop_back();
    }
  };
  go(3);
  return r;
}

std::vector<FunctorMutation> functor_mutations(const FunctorTable& f) {
  std::vector<FunctorMutation> out;
  const auto& entries = f.entries();
  auto describe = [](const FunctorTable::Entry& e) {
    std::string s = "F" + std::to_string(e.inputs.size()) + "(";
    for (std::size_t i = 0; i < e.inputs.size(); ++i) s += (i ? "," : "") + std::string(to_string(e.inputs[i]));
    return s + ")=" + format_plin(e.output);
  };
  for (std::size_t skip = 0; skip < entries.size(); ++skip) {
    FunctorTable del;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (i != skip) del.add(entries[i]);
    out.push_back({"delete " + describe(entries[skip]), std::move(del)});

    auto e = entries[skip];
    NamedBasis term = *e.output.begin();
    NamedBasis flipped = term;
    flipped.hat = !flipped.hat;
    e.output.toggle(term);
    e.output.toggle(flipped);
    FunctorTable red;
    for (std::size_t i = 0; i < entries.size(); ++i) red.add(i == skip ? e : entries[i]);
    out.push_back({"flip hat in " + describe(entries[skip]) + " to " + format_plin(e.output), std::move(red)});
  }
  return out;
}

}  // namespace kht
