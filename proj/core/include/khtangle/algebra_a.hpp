#pragma once

// The A-infinity category A with objects L0, L1, its associative
// subcategory As, and the dictionary Bt -> As.
//
// Sequences are written in composition order, as in the product tables:
// for mu(x_n, ..., x_1) the morphism x_1 is applied first.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "khtangle/algebra_b.hpp"
#include "khtangle/f2.hpp"

namespace kht {

enum class AGen : std::uint8_t { a0, b0, c0, d0, a1, b1, c1, d1, p01, q01, p10, q10 };
inline constexpr std::size_t kAGenCount = 12;
inline constexpr std::array<AGen, kAGenCount> kAllAGens = {
    AGen::a0, AGen::b0, AGen::c0, AGen::d0, AGen::a1, AGen::b1,
    AGen::c1, AGen::d1, AGen::p01, AGen::q01, AGen::p10, AGen::q10};

/// Objects of A; L0 corresponds to the filled vertex, L1 to the hollow one.
using AObject = Vertex;

std::string_view to_string(AGen g);
std::optional<AGen> parse_agen(std::string_view token);
AObject source(AGen g);
AObject target(AGen g);
bool is_unit(AGen g);
/// Generators of the subalgebra As: a0, c0, a1, c1, p01, p10.
bool in_subalgebra(AGen g);

using ALin = LinComb<AGen>;
using ASeq = std::vector<AGen>;

/// True when x_{k+1} can follow x_k for every adjacent pair.
bool composable(std::span<const AGen> seq);

/// The non-unit entries of mu^2 and mu^3. Units are handled structurally.
class AProductTable {
 public:
  struct Entry {
    ASeq inputs;
    AGen output;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static AProductTable shipped();
  static AProductTable parse(std::string_view text);
  std::string format() const;

  const std::vector<Entry>& entries() const { return entries_; }
  void add(Entry e);

  /// mu^k on basis inputs; mu^2 is strictly unital, mu^k = 0 for k != 2, 3.
  ALin mu(std::span<const AGen> inputs) const;

 private:
  std::vector<Entry> entries_;
  std::map<ASeq, ALin> lookup_;
};

struct AInftyViolation {
  ASeq sequence;
  ALin value;
};

/// Evaluates the A-infinity relations on every composable sequence of length
/// 3..max_len drawn from `alphabet`, returning the sequences where they fail.
std::vector<AInftyViolation> verify_ainfty(const AProductTable& table, int max_len,
                                           std::span<const AGen> alphabet = kAllAGens);

struct SubalgebraReport {
  std::vector<AInftyViolation> relation_violations;
  std::vector<ASeq> higher_products;    // mu^3 on As inputs that is nonzero
  std::vector<ASeq> closure_failures;   // mu^2 on As inputs leaving As
  bool ok() const {
    return relation_violations.empty() && higher_products.empty() && closure_failures.empty();
  }
};

/// Checks that As is an honest associative algebra inside A.
SubalgebraReport verify_subalgebra(const AProductTable& table);

/// Dictionary Bt -> As: idempotents to a_i, S^2 to c_i, S to p.
/// Composition order flips: mul(x, y) in Bt maps to mu2(f(y), f(x)).
ALin bt_to_as(const BLin& x);

/// Single-entry mutations of a table: each entry deleted, and each entry's
/// output redirected to another generator with the same endpoints.
struct TableMutation {
  std::string description;
  AProductTable table;
};
std::vector<TableMutation> single_entry_mutations(const AProductTable& table);

}  // namespace kht
