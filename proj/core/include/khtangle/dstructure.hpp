#pragma once

// Type D structures over B or Bt: generators with an idempotent and a
// homological degree, and arrows x -> y labelled by algebra elements whose
// paths run from idem(x) to idem(y). Every arrow raises hdeg by one.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "khtangle/algebra_b.hpp"

namespace kht {

struct DGen {
  std::string name;
  Vertex idem = Vertex::Filled;
  int hdeg = 0;
  friend bool operator==(const DGen&, const DGen&) = default;
};

class TypeD {
 public:
  explicit TypeD(Flavor f = Flavor::B) : flavor_(f) {}

  Flavor flavor() const { return flavor_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<DGen>& gens() const { return gens_; }
  const DGen& gen(std::size_t i) const { return gens_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;

  std::size_t add_gen(DGen g);
  /// Adds `label` to the arrow src -> dst (F2 sum with what is there).
  void add_arrow(std::size_t src, std::size_t dst, const BLin& label);
  BLin label(std::size_t src, std::size_t dst) const;
  const std::map<std::pair<std::size_t, std::size_t>, BLin>& arrows() const { return arrows_; }
  std::size_t arrow_count() const { return arrows_.size(); }

  std::vector<std::pair<std::size_t, BLin>> out_arrows(std::size_t src) const;
  std::vector<std::pair<std::size_t, BLin>> in_arrows(std::size_t dst) const;

  /// Structural problems: endpoints of labels, flavor, hdeg steps.
  std::vector<std::string> validate() const;

 private:
  Flavor flavor_;
  std::vector<DGen> gens_;
  std::map<std::string, std::size_t, std::less<>> by_name_;
  std::map<std::pair<std::size_t, std::size_t>, BLin> arrows_;
};

struct DSquaredTerm {
  std::size_t src, dst;
  BLin value;
};
/// The nonzero components of delta composed with itself.
std::vector<DSquaredTerm> d_squared(const TypeD& d);

/// The mapping cone of H: two copies of d, x#0 -> x#1 labelled H.
TypeD cone_h(const TypeD& d);

/// Applies the quotient B -> Bt arrow-wise.
TypeD apply_q(const TypeD& d);

/// Repeatedly cancels arrows whose label is exactly an idempotent.
TypeD reduce(const TypeD& d);

/// Looks for a bijection of generators that preserves idempotents, shifts
/// hdeg by a common amount, and carries arrows to arrows with equal labels.
struct IsoResult {
  bool found = false;
  int shift = 0;                    // hdeg in b = hdeg in a + shift
  std::vector<std::size_t> map;     // gen of a -> gen of b
};
IsoResult iso_check(const TypeD& a, const TypeD& b);

/// A degree-preserving type D morphism a -> b whose idempotent part is
/// invertible, i.e. an isomorphism allowing algebra-valued basis changes.
struct MorphismIso {
  bool found = false;
  int shift = 0;
  std::map<std::pair<std::size_t, std::size_t>, BLin> components;
};
/// Searches morphisms with labels of weight <= max_weight; `attempts` random
/// elements of the solution space are tested for invertibility.
MorphismIso find_isomorphism(const TypeD& a, const TypeD& b, int max_weight = 8, int attempts = 256,
                             unsigned seed = 1);
/// Independent check of a claimed isomorphism.
bool is_isomorphism(const TypeD& a, const TypeD& b, const MorphismIso& m);

/// Count of generators per (idempotent, hdeg).
std::map<std::pair<Vertex, int>, std::size_t> generator_profile(const TypeD& d);

std::string serialize(const TypeD& d);
TypeD parse_typed(std::string_view text);

}  // namespace kht
