#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "khtangle/algebra_a.hpp"
#include "khtangle/bimodule.hpp"
#include "khtangle/conecat.hpp"
#include "khtangle/functor.hpp"
#include "khtangle/tangle.hpp"

namespace kht::cli {

namespace {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

std::string format_seq(const ASeq& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += to_string(s[i]);
  }
  return out + ")";
}

std::string format_alin(const ALin& x) {
  if (x.zero()) return "0";
  std::string out;
  for (auto g : x) {
    if (!out.empty()) out += " + ";
    out += to_string(g);
  }
  return out;
}

CheckResult check(std::string name, bool pass, std::string detail) {
  return {std::move(name), pass ? Outcome::Pass : Outcome::Fail, std::move(detail), {}};
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int default_bound() {
  if (const char* v = std::getenv("KHT_BOUND")) {
    try {
      return std::stoi(v);
    } catch (const std::exception&) {
      throw UsageError(std::string("KHT_BOUND is not an integer: ") + v);
    }
  }
  return 16;
}

void verify_algebra(RunReport& r, int max_len, const std::string& table_path) {
  const auto table = table_path.empty() ? AProductTable::shipped() : AProductTable::parse(read_file(table_path));
  r.configuration["max_len"] = max_len;
  r.configuration["table"] = table_path.empty() ? "shipped" : table_path;
  std::size_t sequences = 0;
  {
    // count the sequences the relation check visits
    std::function<void(ASeq&, int)> count = [&](ASeq& cur, int len) {
      if (static_cast<int>(cur.size()) == len) {
        ++sequences;
        return;
      }
      for (auto g : kAllAGens) {
        if (!cur.empty() && target(g) != source(cur.back())) continue;
        cur.push_back(g);
        count(cur, len);
        cur.pop_back();
      }
    };
    ASeq cur;
    for (int len = 3; len <= max_len; ++len) count(cur, len);
  }
  auto v = verify_ainfty(table, max_len);
  CheckResult c = check("A-infinity relations", v.empty(),
                        std::to_string(v.size()) + " violations over " + std::to_string(sequences) +
                            " composable sequences of length 3.." + std::to_string(max_len));
  for (const auto& x : v) c.violations.push_back(format_seq(x.sequence) + " -> " + format_alin(x.value));
  r.checks.push_back(std::move(c));

  auto sub = verify_subalgebra(table);
  CheckResult s = check("associative subalgebra", sub.ok(),
                        std::to_string(sub.relation_violations.size()) + " relation violations, " +
                            std::to_string(sub.higher_products.size()) + " nonzero mu3, " +
                            std::to_string(sub.closure_failures.size()) + " closure failures");
  for (const auto& x : sub.higher_products) s.violations.push_back("mu3 nonzero on " + format_seq(x));
  for (const auto& x : sub.closure_failures) s.violations.push_back("mu2 leaves the subalgebra on " + format_seq(x));
  r.checks.push_back(std::move(s));

  const auto mutations = single_entry_mutations(table);
  std::size_t caught = 0;
  CheckResult m;
  for (const auto& mu : mutations) {
    if (!verify_ainfty(mu.table, max_len).empty()) ++caught;
    else m.violations.push_back("undetected: " + mu.description);
  }
  const bool enough = !mutations.empty() && caught * 10 >= mutations.size() * 9;
  m.name = "mutation coverage";
  m.outcome = enough ? Outcome::Pass : Outcome::Fail;
  m.detail = std::to_string(caught) + " of " + std::to_string(mutations.size()) +
             " single-entry mutations produce a violation";
  r.checks.push_back(std::move(m));
}

void verify_functor_cmd(RunReport& r, int max_len) {
  r.configuration["max_len"] = max_len;
  auto rep = verify_functor(AProductTable::shipped(), FunctorTable::shipped(), max_len);
  CheckResult c = check("functor relations", rep.violations.empty(),
                        std::to_string(rep.violations.size()) + " violations over " +
                            std::to_string(rep.sequences) + " composable sequences");
  for (const auto& v : rep.violations)
    c.violations.push_back(format_seq(v.sequence) + ": lhs " + format_plin(to_named_basis(v.lhs)) + ", rhs " +
                           format_plin(to_named_basis(v.rhs)));
  r.checks.push_back(std::move(c));
}

void verify_homology(RunReport& r, int max_weight) {
  r.configuration["max_weight"] = max_weight;
  auto rep = verify_quasi_iso(FunctorTable::shipped(), max_weight);
  for (const auto& s : rep.spaces) {
    const bool endo = s.src == s.dst;
    const std::size_t expected = endo ? 4 : 2;
    std::string dims;
    for (std::size_t w = 0; w < s.homology.dims.size(); ++w)
      if (s.homology.dims[w]) dims += " w" + std::to_string(w) + ":" + std::to_string(s.homology.dims[w]);
    const bool pass = s.homology.total() == expected && s.concentrated && s.closed &&
                      s.independent == s.classes && s.classes == expected;
    r.checks.push_back(check("homology " + std::string(to_string(s.src)) + " -> " + std::string(to_string(s.dst)),
                             pass,
                             "dimension " + std::to_string(s.homology.total()) + " (expected " +
                                 std::to_string(expected) + "), by weight" + dims + "; " +
                                 std::to_string(s.independent) + " of " + std::to_string(s.classes) +
                                 " generator images independent"));
  }
  CheckResult sub = check("subalgebra preserved", rep.subalgebra_failures.empty(),
                          std::to_string(rep.subalgebra_failures.size()) + " failures");
  sub.violations = rep.subalgebra_failures;
  r.checks.push_back(std::move(sub));
}

void verify_bimodules_cmd(RunReport& r, int bound, int margin) {
  if (bound <= margin)
    throw UsageError("bound must exceed margin (bound " + std::to_string(bound) + ", margin " +
                     std::to_string(margin) + ")");
  r.configuration["bound"] = bound;
  r.configuration["margin"] = margin;
  auto rep = verify_equivalence(bound, margin);
  for (const auto& c : rep.checks) {
    CheckResult x = check(c.name, c.pass, c.detail);
    if (!c.pass) x.violations.push_back(c.detail);
    r.checks.push_back(std::move(x));
  }
}

PipelineOptions pipeline(RunReport& r, const std::string& star, int max_crossings) {
  PipelineOptions o;
  try {
    o.star = parse_end(star);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  o.max_crossings = max_crossings;
  r.configuration["star"] = std::string(to_string(o.star));
  r.configuration["max_crossings"] = max_crossings;
  return o;
}

TangleWord word_arg(RunReport& r, const std::string& text) {
  r.configuration["tangle"] = text;
  try {
    return parse_tangle(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void guard(const TangleWord& w, const PipelineOptions& o) {
  if (w.crossings() > o.max_crossings)
    throw UsageError("tangle has " + std::to_string(w.crossings()) + " crossings, limit is " +
                     std::to_string(o.max_crossings) + " (see --max-crossings)");
}

CheckResult compare_check(const std::string& name, const TangleWord& w, const PipelineOptions& o) {
  auto c = compare(w, o);
  CheckResult x;
  x.name = name;
  x.outcome = c.verdict == Verdict::Equivalent ? Outcome::Pass
              : c.verdict == Verdict::Mismatch ? Outcome::Fail
                                               : Outcome::Indeterminate;
  x.detail = std::string(to_string(c.verdict)) + ": " + std::to_string(c.dd1.size()) + " vs " +
             std::to_string(c.lt.size()) + " generators, " + c.diagnostic;
  if (c.verdict != Verdict::Equivalent) x.violations.push_back(c.diagnostic);
  return x;
}

}  // namespace

Outcome RunReport::overall() const {
  Outcome o = Outcome::Pass;
  for (const auto& c : checks) {
    if (c.outcome == Outcome::Fail) return Outcome::Fail;
    if (c.outcome == Outcome::Indeterminate) o = Outcome::Indeterminate;
  }
  return o;
}

int RunReport::exit_code() const {
  switch (overall()) {
    case Outcome::Pass: return kExitPass;
    case Outcome::Fail: return kExitFail;
    case Outcome::Indeterminate: return kExitIndeterminate;
  }
  return kExitFail;
}

nlohmann::ordered_json RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["configuration"] = configuration;
  j["verdict"] = outcome_name(overall());
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"verdict", outcome_name(c.outcome)},
                           {"detail", c.detail},
                           {"violations", c.violations}});
  if (!output.empty()) j["output"] = output;
  j["wall_ms"] = wall_ms;
  return j;
}

std::string RunReport::to_text() const {
  std::ostringstream s;
  s << "command: " << command << "\n";
  if (!configuration.empty()) {
    s << "configuration:";
    for (const auto& [k, v] : configuration.items()) s << " " << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump());
    s << "\n";
  }
  for (const auto& c : checks) {
    s << outcome_name(c.outcome) << "  " << c.name << ": " << c.detail << "\n";
    for (const auto& v : c.violations) s << "    " << v << "\n";
  }
  if (!output.empty()) s << output;
  s << "verdict: " << outcome_name(overall()) << "\n";
  s << "wall time: " << wall_ms << " ms\n";
  return s.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks and computations for four-ended tangle invariants over F2", "khtangle"};
  app.require_subcommand(1);
  bool json = false;
  app.add_flag("--json", json, "Emit the report as one JSON document");

  RunReport report;
  std::function<void()> action;

  auto* verify = app.add_subcommand("verify", "Run one of the algebraic verifications");
  verify->require_subcommand(1);

  int a_len = 5;
  std::string table;
  auto* va = verify->add_subcommand("algebra-a", "A-infinity relations of the product table");
  va->add_option("--max-len", a_len, "Longest input sequence")->check(CLI::Range(3, 8));
  va->add_option("--table", table, "Product table file instead of the shipped one");
  va->callback([&] { action = [&] { verify_algebra(report, a_len, table); }; });

  int f_len = 6;
  auto* vf = verify->add_subcommand("functor", "A-infinity functor relations");
  vf->add_option("--max-len", f_len, "Longest input sequence")->check(CLI::Range(1, 8));
  vf->callback([&] { action = [&] { verify_functor_cmd(report, f_len); }; });

  std::optional<int> bound;
  int margin = 8;
  auto* vb = verify->add_subcommand("bimodules", "Homotopy equivalence of the bimodules and the expected tensor product");
  vb->add_option("--bound", bound, "Input-weight bound for instantiating families (default $KHT_BOUND or 16)");
  vb->add_option("--margin", margin, "Only keys of input weight <= bound - margin are checked");
  vb->callback([&] { action = [&] { verify_bimodules_cmd(report, bound ? *bound : default_bound(), margin); }; });

  int h_weight = 10;
  auto* vh = verify->add_subcommand("homology-c", "Homology of the cone category morphism spaces");
  vh->add_option("--max-weight", h_weight, "Largest weight")->check(CLI::Range(2, 64));
  vh->callback([&] { action = [&] { verify_homology(report, h_weight); }; });

  std::string tangle, star = "nw";
  int max_crossings = kDefaultMaxCrossings;
  auto tangle_opts = [&](CLI::App* sub) {
    sub->add_option("--tangle", tangle, "Tangle word, e.g. \"x1 x1 u3 y2 n3\"")->required();
    sub->add_option("--star", star, "Starred end")->check(CLI::IsMember({"nw", "ne", "sw", "se"}));
    sub->add_option("--max-crossings", max_crossings, "Crossing guard");
  };

  auto* compute = app.add_subcommand("compute", "Compute a type D structure for a tangle");
  compute->require_subcommand(1);
  for (const char* which : {"dd1", "lt"}) {
    auto* sub = compute->add_subcommand(which, std::string(which) == "dd1" ? "Cone of H on the reduced complex"
                                                                           : "Image through the bimodule Y");
    tangle_opts(sub);
    const bool is_dd1 = std::string(which) == "dd1";
    sub->callback([&, is_dd1] {
      action = [&, is_dd1] {
        auto o = pipeline(report, star, max_crossings);
        auto w = word_arg(report, tangle);
        guard(w, o);
        auto d = is_dd1 ? compute_dd1(w, o) : compute_lt_image(w, o);
        report.output = serialize(d);
        report.checks.push_back(check("d^2 = 0", d_squared(d).empty(), std::to_string(d.size()) + " generators, " +
                                                                           std::to_string(d.arrow_count()) + " arrows"));
      };
    });
  }

  auto* cmp = app.add_subcommand("compare", "Compare the two pipelines on a tangle");
  tangle_opts(cmp);
  cmp->callback([&] {
    action = [&] {
      auto o = pipeline(report, star, max_crossings);
      auto w = word_arg(report, tangle);
      guard(w, o);
      report.checks.push_back(compare_check("compare \"" + w.format() + "\"", w, o));
    };
  });

  auto* corpus = app.add_subcommand("corpus", "Run compare on the shipped tangle corpus");
  corpus->callback([&] {
    action = [&] {
      PipelineOptions o;
      report.configuration["star"] = "nw";
      for (const auto& e : shipped_corpus())
        report.checks.push_back(compare_check(e.name + " \"" + e.word + "\"", parse_tangle(e.word), o));
    };
  });

  // --json is accepted after any subcommand too
  std::function<void(CLI::App*)> fall = [&](CLI::App* a) {
    for (auto* sub : a->get_subcommands({})) {
      sub->fallthrough();
      fall(sub);
    }
  };
  fall(&app);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  }

  std::string cmd;
  for (const auto& a : args) {
    if (a == "--json") continue;
    if (!cmd.empty()) cmd += ' ';
    cmd += a;
  }
  report.command = cmd;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All);
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  report.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  if (json) out << report.to_json().dump(2) << "\n";
  else out << report.to_text();
  return report.exit_code();
}

}  // namespace kht::cli
