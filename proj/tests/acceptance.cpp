// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "khtangle/algebra_a.hpp"
#include "khtangle/bimodule.hpp"
#include "khtangle/functor.hpp"
#include "khtangle/tangle.hpp"

using namespace kht;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int failures = 0;

void criterion(int n, const char* title, const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double ms = ms_since(t0);
  if (!ok) ++failures;
  std::printf("%s [%d] %s: %s (%.1f ms)\n", ok ? "PASS" : "FAIL", n, title, detail.c_str(), ms);
  std::fflush(stdout);
}

bool equivalent(const TypeD& a, const TypeD& b) {
  if (iso_check(a, b).found) return true;
  return is_isomorphism(a, b, find_isomorphism(a, b, 8));
}

}  // namespace

int main() {
  criterion(1, "A-infinity relations of A", [](std::string& d) {
    const auto table = AProductTable::shipped();
    const auto t0 = Clock::now();
    const auto v = verify_ainfty(table, 5);
    const double ms = ms_since(t0);
    const auto muts = single_entry_mutations(table);
    std::size_t caught = 0;
    for (const auto& m : muts)
      if (!verify_ainfty(m.table, 5).empty()) ++caught;
    d = std::to_string(v.size()) + " violations in " + std::to_string(static_cast<int>(ms)) + " ms; " +
        std::to_string(caught) + "/" + std::to_string(muts.size()) + " mutations caught";
    return v.empty() && ms < 1000 && caught * 10 >= muts.size() * 9;
  });

  criterion(2, "A-infinity functor relations up to length 6", [](std::string& d) {
    const auto t0 = Clock::now();
    auto r = verify_functor(AProductTable::shipped(), FunctorTable::shipped(), 6);
    const double ms = ms_since(t0);
    d = std::to_string(r.violations.size()) + " violations over " + std::to_string(r.sequences) + " sequences";
    return r.violations.empty() && ms < 60000;
  });

  criterion(3, "quasi-isomorphism on homology", [](std::string& d) {
    auto r = verify_quasi_iso(FunctorTable::shipped(), 10);
    bool ok = r.ok() && r.spaces.size() == 4;
    for (const auto& s : r.spaces) {
      const std::size_t want = s.src == s.dst ? 4 : 2;
      const auto& dims = s.homology.dims;
      auto at = [&](std::size_t w) { return w < dims.size() ? dims[w] : 0; };
      const bool weights = s.src == s.dst ? at(0) + at(2) == want : at(1) == want;
      ok = ok && s.homology.total() == want && weights && s.independent == want && s.classes == want;
      d += std::string(d.empty() ? "" : ", ") + std::to_string(s.homology.total());
    }
    d = "dimensions " + d;
    return ok;
  });

  criterion(4, "bimodule equivalence at bound 16, margin 8", [](std::string& d) {
    const auto t0 = Clock::now();
    auto r = verify_equivalence(16, 8);
    const double ms = ms_since(t0);
    std::size_t pass = 0;
    for (const auto& c : r.checks) pass += c.pass;
    d = std::to_string(pass) + "/" + std::to_string(r.checks.size()) + " checks";
    return r.ok() && ms < 30000;
  });

  criterion(5, "pipelines agree on the corpus", [](std::string& d) {
    std::size_t eq = 0, total = 0;
    double worst = 0;
    for (const auto& e : shipped_corpus()) {
      const auto t0 = Clock::now();
      auto c = compare(parse_tangle(e.word));
      worst = std::max(worst, ms_since(t0));
      ++total;
      if (c.verdict == Verdict::Equivalent) ++eq;
      else d += "[" + e.name + ": " + std::string(to_string(c.verdict)) + "] ";
    }
    d += std::to_string(eq) + "/" + std::to_string(total) + " EQUIVALENT, slowest " +
         std::to_string(static_cast<int>(worst)) + " ms";
    return eq == total && worst < 30000;
  });

  criterion(6, "structural invariants", [](std::string& d) {
    const auto& bims = shipped_bimodules();
    std::vector<TangleWord> words;
    for (const auto& e : shipped_corpus()) words.push_back(parse_tangle(e.word));
    const std::size_t corpus_size = words.size();
    std::mt19937_64 rng(20261016);
    for (int i = 0; i < 200; ++i) words.push_back(random_word(rng, 8));
    std::size_t bad_sq = 0, bad_cone = 0;
    for (std::size_t i = 0; i < words.size(); ++i) {
      auto raw = complex_of(words[i]);
      auto red = reduce(raw);
      auto cone = cone_h(red);
      auto boxed = box_ad(apply_q(red), bims.y);
      for (const TypeD* x : {&raw, &red, &cone, &boxed})
        if (!d_squared(*x).empty()) ++bad_sq;
      if (!d_squared(reduce(boxed)).empty()) ++bad_sq;
      if (i < corpus_size && !equivalent(cone, box_ad(red, bims.i))) ++bad_cone;
    }
    auto r2 = reduce(complex_of(parse_tangle("x1 y1")));
    const bool trivial = r2.size() == 1 && r2.arrow_count() == 0;
    d = std::to_string(words.size()) + " words, " + std::to_string(bad_sq) + " d^2 failures, " +
        std::to_string(bad_cone) + " cone/identity disagreements, R2 " + (trivial ? "trivial" : "NOT trivial");
    return bad_sq == 0 && bad_cone == 0 && trivial;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
