#pragma once

// The A-infinity functor F : A -> C given by explicit tables for F^1, F^2,
// F^3 (F^k = 0 for k >= 4), its relation checker, and the homology check.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "khtangle/algebra_a.hpp"
#include "khtangle/conecat.hpp"

namespace kht {

class FunctorTable {
 public:
  struct Entry {
    ASeq inputs;
    PLin output;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  static FunctorTable shipped();
  static FunctorTable parse(std::string_view text);
  std::string format() const;

  const std::vector<Entry>& entries() const { return entries_; }
  void add(Entry e);

  /// F^n on a composable sequence (composition order); 0 for n = 0 or n > 3.
  ConeMorphism apply(std::span<const AGen> seq) const;

 private:
  std::vector<Entry> entries_;
  std::map<ASeq, PLin> lookup_;
};

struct FunctorViolation {
  ASeq sequence;
  ConeMorphism lhs;  // F after inserting products of A
  ConeMorphism rhs;  // mu1 and mu2 of C after F
};

struct FunctorReport {
  std::size_t sequences = 0;
  std::vector<FunctorViolation> violations;
};

FunctorReport verify_functor(const AProductTable& a, const FunctorTable& f, int max_len);

struct QuasiIsoReport {
  struct Space {
    Vertex src, dst;
    HomologyReport homology;
    std::size_t classes = 0;      // number of F^1 images in this space
    std::size_t independent = 0;  // their rank in homology
    bool closed = true;           // every F^1 image is a cycle
    bool concentrated = true;     // homology lives in the expected weights
  };
  std::vector<Space> spaces;
  std::vector<std::string> subalgebra_failures;
  bool ok() const;
};

QuasiIsoReport verify_quasi_iso(const FunctorTable& f, int max_weight);

struct FunctorMutation {
  std::string description;
  FunctorTable table;
};
/// Each entry deleted, and each entry with the hat of one output term flipped.
std::vector<FunctorMutation> functor_mutations(const FunctorTable& f);

std::string format_plin(const PLin& x);

}  // namespace kht
