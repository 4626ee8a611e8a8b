#pragma once

// Type AD bimodules with an associative A side and a type D side, given by
// (possibly k-parameterized) actions; morphisms between them; the box
// tensor products with type D structures and with other bimodules.
//
// Inputs of an action are stored chronologically: inputs[0] is consumed
// first and the inputs form a path in the A-side algebra. The text format
// writes them the other way round, so "(S^2,D | D)" consumes D first.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khtangle/algebra_b.hpp"
#include "khtangle/dstructure.hpp"

namespace kht {

/// S^{offset + stride k}, D^{offset + stride k}, or the idempotent.
struct ExponentPattern {
  enum class Letter : std::uint8_t { Idem, S, D };
  Letter letter = Letter::Idem;
  int offset = 0;
  int stride = 0;

  static ExponentPattern idem() { return {}; }
  static ExponentPattern s(int offset, int stride = 0) { return {Letter::S, offset, stride}; }
  static ExponentPattern d(int offset, int stride = 0) { return {Letter::D, offset, stride}; }

  int exponent(int k) const { return offset + stride * k; }
  BBasis at(Vertex from, int k) const;
  bool constant() const { return stride == 0; }
  std::string format() const;
  static ExponentPattern parse(std::string_view text);
  friend auto operator<=>(const ExponentPattern&, const ExponentPattern&) = default;
};

struct BimGen {
  std::string name;
  Vertex left = Vertex::Filled;   // A-side idempotent
  Vertex right = Vertex::Filled;  // D-side idempotent
  int hdeg = 0;
  friend bool operator==(const BimGen&, const BimGen&) = default;
};

struct BimAction {
  std::vector<ExponentPattern> inputs;  // chronological
  std::size_t src = 0, dst = 0;
  ExponentPattern output;
  friend auto operator<=>(const BimAction&, const BimAction&) = default;
};

class ADBimodule {
 public:
  ADBimodule() = default;
  ADBimodule(Flavor a_side, Flavor d_side) : a_side_(a_side), d_side_(d_side) {}

  /// The identity bimodule with a pass-through action for every input.
  static ADBimodule structural_identity(Flavor f);
  /// The identity bimodule written as families of actions.
  static ADBimodule enumerated_identity(Flavor f);

  Flavor a_side() const { return a_side_; }
  Flavor d_side() const { return d_side_; }
  bool is_structural_identity() const { return structural_; }
  const std::vector<BimGen>& gens() const { return gens_; }
  const BimGen& gen(std::size_t i) const { return gens_[i]; }
  const std::vector<BimAction>& actions() const { return actions_; }
  std::optional<std::size_t> find(std::string_view name) const;

  std::size_t add_gen(BimGen g);
  void add_action(BimAction a);
  void remove_action(std::size_t index);

 private:
  Flavor a_side_ = Flavor::B;
  Flavor d_side_ = Flavor::B;
  bool structural_ = false;
  std::vector<BimGen> gens_;
  std::vector<BimAction> actions_;
};

/// Checks idempotents of every action at k = 0, 1, 2 and the hdeg shift 1 - j.
std::vector<std::string> validate(const ADBimodule& m);

/// A single instantiated component: generators and concrete input path.
struct ConcreteKey {
  std::size_t src = 0, dst = 0;
  std::vector<BBasis> inputs;
  int weight() const;
  friend auto operator<=>(const ConcreteKey&, const ConcreteKey&) = default;
};
using Concrete = std::map<ConcreteKey, BLin>;

/// Sums every action instance whose input weight is at most `bound`
/// (output weight for actions without parameterized inputs).
Concrete instantiate(const ADBimodule& m, int bound);
Concrete restrict_weight(const Concrete& c, int limit);
std::string format_concrete(const Concrete& c, const std::vector<BimGen>& src_gens,
                            const std::vector<BimGen>& dst_gens, std::size_t max_lines = 20);

/// Largest |weight(output) - weight(inputs)| over instances up to `bound`.
int max_weight_shift(const ADBimodule& m, int bound);

/// The A-infinity relation of the bimodule, restricted to input weight <= limit.
Concrete structure_defect(const ADBimodule& m, int bound, int limit);

struct ADMorphism {
  ADBimodule source, target;
  std::vector<BimAction> components;  // src in source, dst in target; j inputs shift hdeg by -j
};

ADMorphism identity_morphism(const ADBimodule& m);
Concrete instantiate(const ADMorphism& h, int bound);
/// The part consisting of input-free components with idempotent output, and the rest.
std::pair<ADMorphism, ADMorphism> split_identity_part(const ADMorphism& h);
std::vector<std::string> validate(const ADMorphism& h);

/// One contribution to a differential or composition, tagged by how it arose.
struct Contribution {
  std::string via;  // "merge", "source:<gen>", "target:<gen>", or "mid:<gen>"
  ConcreteKey key;
  BLin value;
};

/// d(h) on every key of input weight <= limit, families instantiated to bound.
Concrete diff_ad_morphism(const ADMorphism& h, int bound, int limit,
                          std::vector<Contribution>* terms = nullptr);
/// h2 after h1 (h1 consumes its inputs first).
Concrete compose_ad_morphisms(const ADMorphism& h2, const ADMorphism& h1, int bound, int limit);

/// Box tensor product of a type D structure over the A side with the bimodule.
TypeD box_ad(const TypeD& m, const ADBimodule& bim);
/// Box tensor product of bimodules, instantiated to `bound` when parameterized.
ADBimodule box_bimods(const ADBimodule& left, const ADBimodule& right, int bound = 16);

/// Same generators (by name, idempotents, hdeg) and same instantiated actions.
bool same_bimodule(const ADBimodule& a, const ADBimodule& b, int bound, std::string* why = nullptr);

struct ShippedBimodules {
  ADBimodule i, q, y, qy_expected;
};
ShippedBimodules shipped_bimodules();
struct ShippedMorphisms {
  ADMorphism f, g;
};
ShippedMorphisms shipped_morphisms();

struct EquivalenceCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};
struct EquivalenceReport {
  int bound = 0, margin = 0;
  std::vector<EquivalenceCheck> checks;
  bool ok() const;
};
/// The five checks: d f = 0, d g = 0, g f = id, f g = id, and Q box Y equals
/// the expected bimodule, plus the itemized sub-identities of each composition.
EquivalenceReport verify_equivalence(int bound = 16, int margin = 8);
EquivalenceReport verify_equivalence(const ShippedBimodules& b, const ShippedMorphisms& m, int bound, int margin);

std::string serialize(const ADBimodule& m);
ADBimodule parse_bimodule(std::string_view text);
std::string serialize(const ADMorphism& h);
/// Components refer to generator names of the given source and target.
ADMorphism parse_morphism(std::string_view text, const ADBimodule& source, const ADBimodule& target);

}  // namespace kht
