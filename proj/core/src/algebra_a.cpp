#include "khtangle/algebra_a.hpp"

#include <sstream>
#include <stdexcept>

#include "embedded_tables.hpp"

namespace kht {

namespace {

constexpr std::array<std::string_view, kAGenCount> kNames = {
    "a0", "b0", "c0", "d0", "a1", "b1", "c1", "d1", "p01", "q01", "p10", "q10"};

}  // namespace

std::string_view to_string(AGen g) { return kNames[static_cast<std::size_t>(g)]; }

std::optional<AGen> parse_agen(std::string_view token) {
  for (std::size_t i = 0; i < kAGenCount; ++i)
    if (kNames[i] == token) return static_cast<AGen>(i);
  return std::nullopt;
}

AObject source(AGen g) {
  switch (g) {
    case AGen::a0: case AGen::b0: case AGen::c0: case AGen::d0:
    case AGen::p10: case AGen::q10:
      return Vertex::Filled;
    default:
      return Vertex::Hollow;
  }
}

AObject target(AGen g) {
  switch (g) {
    case AGen::a0: case AGen::b0: case AGen::c0: case AGen::d0:
    case AGen::p01: case AGen::q01:
      return Vertex::Filled;
    default:
      return Vertex::Hollow;
  }
}

bool is_unit(AGen g) { return g == AGen::a0 || g == AGen::a1; }

bool in_subalgebra(AGen g) {
  switch (g) {
    case AGen::a0: case AGen::c0: case AGen::a1: case AGen::c1:
    case AGen::p01: case AGen::p10:
      return true;
    default:
      return false;
  }
}

bool composable(std::span<const AGen> seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (target(seq[i + 1]) != source(seq[i])) return false;
  return true;
}

AProductTable AProductTable::shipped() { return parse(embedded::kAProducts); }

AProductTable AProductTable::parse(std::string_view text) {
  AProductTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string w; ls >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("product table line " + std::to_string(lineno) + ": " + why);
    };
    std::size_t arity = 0;
    if (tok[0] == "mu2") arity = 2;
    else if (tok[0] == "mu3") arity = 3;
    else fail("expected mu2 or mu3");
    if (tok.size() != arity + 3 || tok[arity + 1] != "->") fail("malformed entry");
    Entry e;
    for (std::size_t i = 0; i < arity; ++i) {
      auto g = parse_agen(tok[1 + i]);
      if (!g) fail("unknown generator '" + tok[1 + i] + "'");
      e.inputs.push_back(*g);
    }
    auto out = parse_agen(tok[arity + 2]);
    if (!out) fail("unknown generator '" + tok[arity + 2] + "'");
    e.output = *out;
    if (!composable(e.inputs)) fail("inputs are not composable");
    if (source(e.inputs.back()) != source(e.output) || target(e.inputs.front()) != target(e.output))
      fail("output has the wrong endpoints");
    t.add(std::move(e));
  }
  return t;
}

std::string AProductTable::format() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.inputs.size() == 2 ? "mu2" : "mu3";
    for (auto g : e.inputs) {
      out += ' ';
      out += to_string(g);
    }
    out += " -> ";
    out += to_string(e.output);
    out += '\n';
  }
  return out;
}

void AProductTable::add(Entry e) {
  lookup_[e.inputs].toggle(e.output);
  entries_.push_back(std::move(e));
}

ALin AProductTable::mu(std::span<const AGen> inputs) const {
  if (inputs.size() != 2 && inputs.size() != 3) return {};
  if (!composable(inputs)) return {};
  if (inputs.size() == 2) {
    if (is_unit(inputs[0])) return ALin::single(inputs[1]);
    if (is_unit(inputs[1])) return ALin::single(inputs[0]);
  } else {
    for (auto g : inputs)
      if (is_unit(g)) return {};
  }
  auto it = lookup_.find(ASeq(inputs.begin(), inputs.end()));
  return it == lookup_.end() ? ALin{} : it->second;
}

namespace {

ALin relation_value(const AProductTable& t, const ASeq& seq) {
  ALin total;
  const std::size_t n = seq.size();
  ASeq outer;
  for (std::size_t j = 2; j <= 3; ++j) {
    if (j > n) break;
    const std::size_t outer_arity = n - j + 1;
    if (outer_arity != 2 && outer_arity != 3) continue;
    for (std::size_t s = 0; s + j <= n; ++s) {
      ALin inner = t.mu(std::span(seq).subspan(s, j));
      for (auto g : inner) {
        outer.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(s));
        outer.push_back(g);
        outer.insert(outer.end(), seq.begin() + static_cast<std::ptrdiff_t>(s + j), seq.end());
        total += t.mu(outer);
      }
    }
  }
  return total;
}

template <class Visit>
void for_each_composable(std::span<const AGen> alphabet, std::size_t len, ASeq& cur,
                         Visit&& visit) {
  if (cur.size() == len) {
    visit(cur);
    return;
  }
  for (auto g : alphabet) {
    // g is applied before cur.back()
    if (!cur.empty() && target(g) != source(cur.back())) continue;
    cur.push_back(g);
    for_each_composable(alphabet, len, cur, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<AInftyViolation> verify_ainfty(const AProductTable& table, int max_len,
                                           std::span<const AGen> alphabet) {
  std::vector<AInftyViolation> out;
  ASeq cur;
  for (int len = 3; len <= max_len; ++len) {
    for_each_composable(alphabet, static_cast<std::size_t>(len), cur, [&](const ASeq& seq) {
      ALin v = relation_value(table, seq);
      if (!v.zero()) out.push_back({seq, v});
    });
  }
  return out;
}

SubalgebraReport verify_subalgebra(const AProductTable& table) {
  std::vector<AGen> gens;
  for (auto g : kAllAGens)
    if (in_subalgebra(g)) gens.push_back(g);
  SubalgebraReport r;
  r.relation_violations = verify_ainfty(table, 5, gens);
  ASeq cur;
  for_each_composable(gens, 2, cur, [&](const ASeq& seq) {
    for (auto g : table.mu(seq))
      if (!in_subalgebra(g)) {
        r.closure_failures.push_back(seq);
        break;
      }
  });
  for_each_composable(gens, 3, cur, [&](const ASeq& seq) {
    if (!table.mu(seq).zero()) r.higher_products.push_back(seq);
  });
  return r;
}

ALin bt_to_as(const BLin& x) {
  ALin out;
  for (const auto& b : x) {
    const bool filled = b.at == Vertex::Filled;
    switch (b.kind) {
      case BBasis::Kind::Idem:
        out.toggle(filled ? AGen::a0 : AGen::a1);
        break;
      case BBasis::Kind::S:
        if (b.exp == 1) out.toggle(filled ? AGen::p10 : AGen::p01);
        else if (b.exp == 2) out.toggle(filled ? AGen::c0 : AGen::c1);
        else throw std::invalid_argument("S^n with n > 2 is zero in Bt");
        break;
      case BBasis::Kind::D:
        throw std::invalid_argument("D is not a basis element of Bt");
    }
  }
  return out;
}

std::vector<TableMutation> single_entry_mutations(const AProductTable& table) {
  std::vector<TableMutation> out;
  const auto& entries = table.entries();
  auto describe = [](const AProductTable::Entry& e) {
    std::string s = e.inputs.size() == 2 ? "mu2(" : "mu3(";
    for (std::size_t i = 0; i < e.inputs.size(); ++i) {
      if (i) s += ',';
      s += to_string(e.inputs[i]);
    }
    return s + ")=" + std::string(to_string(e.output));
  };
  for (std::size_t skip = 0; skip < entries.size(); ++skip) {
    AProductTable del;
    for (std::size_t i = 0; i < entries.size(); ++i)
      if (i != skip) del.add(entries[i]);
    out.push_back({"delete " + describe(entries[skip]), std::move(del)});

    // Redirect to the next generator with the same endpoints.
    const AGen old = entries[skip].output;
    std::vector<AGen> same;
    for (auto g : kAllAGens)
      if (source(g) == source(old) && target(g) == target(old)) same.push_back(g);
    std::size_t pos = 0;
    while (same[pos] != old) ++pos;
    const AGen repl = same[(pos + 1) % same.size()];
    AProductTable red;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto e = entries[i];
      if (i == skip) e.output = repl;
      red.add(std::move(e));
    }
    out.push_back({"redirect " + describe(entries[skip]) + " to " + std::string(to_string(repl)),
                   std::move(red)});
  }
  return out;
}

}  // namespace kht
