#pragma once

// The dg category C whose two objects are the cones [v -H-> v] over B.
// A morphism is a 2x2 matrix of algebra elements indexed by the top (T,
// source of the H arrow) and bottom (B) copies of each cone.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "khtangle/algebra_b.hpp"
#include "khtangle/f2.hpp"

namespace kht {

enum class Slot : std::uint8_t { TT, BB, TB, BT };
inline constexpr std::array<Slot, 4> kAllSlots = {Slot::TT, Slot::BB, Slot::TB, Slot::BT};
std::string_view to_string(Slot s);

/// One positional basis element: a path placed in one slot.
struct CKey {
  Slot slot;
  BBasis path;
  friend auto operator<=>(const CKey&, const CKey&) = default;
};
using CLin = LinComb<CKey>;

struct ConeMorphism {
  Vertex src = Vertex::Filled;
  Vertex dst = Vertex::Filled;
  BLin tt, bb, tb, bt;

  static ConeMorphism zero(Vertex s, Vertex d) { return {s, d, {}, {}, {}, {}}; }
  BLin& at(Slot s);
  const BLin& at(Slot s) const;
  bool is_zero() const { return tt.zero() && bb.zero() && tb.zero() && bt.zero(); }
  ConeMorphism& operator+=(const ConeMorphism& o);
  friend ConeMorphism operator+(ConeMorphism a, const ConeMorphism& b) { return a += b; }
  friend bool operator==(const ConeMorphism&, const ConeMorphism&) = default;

  CLin keys() const;
  static ConeMorphism from_keys(Vertex s, Vertex d, const CLin& k);
};

/// f then g.
ConeMorphism compose_c(const ConeMorphism& f, const ConeMorphism& g);
/// The differential delta_src then f plus f then delta_dst.
ConeMorphism diff_c(const ConeMorphism& f);
/// mu2 in composition order: mu2(g, f) = f then g.
inline ConeMorphism mu2_c(const ConeMorphism& g, const ConeMorphism& f) { return compose_c(f, g); }

enum class Family : std::uint8_t { A, B, C, D, P, Q };

/// A named basis element A^k_i, Bhat^k_i, P^l_{ij}, ...
struct NamedBasis {
  Family family;
  bool hat = false;
  int index = 0;  // k >= 0 for A, B; l >= 1 otherwise
  Vertex src = Vertex::Filled;
  Vertex dst = Vertex::Filled;
  friend auto operator<=>(const NamedBasis&, const NamedBasis&) = default;
};
using PLin = LinComb<NamedBasis>;

std::string to_string(const NamedBasis& p);
/// Accepts names such as "A^0_0", "Bhat^0_1", "P^1_01", "Chat^2_0".
std::optional<NamedBasis> parse_named_basis(std::string_view text);

NamedBasis pb(Family f, bool hat, int index, Vertex src, Vertex dst);
/// Convenience for loops: src = dst = v.
NamedBasis pb(Family f, bool hat, int index, Vertex v);

ConeMorphism to_positional(const NamedBasis& p);
ConeMorphism to_positional(const PLin& x, Vertex src, Vertex dst);
PLin to_named_basis(const ConeMorphism& f);

/// Every named basis element from src to dst whose weight is at most max_weight.
std::vector<NamedBasis> named_basis(Vertex src, Vertex dst, int max_weight);

/// Cs is spanned by the families A, Ahat, C, Chat, P, Phat.
bool in_subalgebra_cs(const ConeMorphism& f);

struct HomologyReport {
  std::vector<std::size_t> dims;  // index = weight
  std::size_t total() const;
};
/// Per-weight homology of Hom(src cone, dst cone) up to max_weight.
HomologyReport homology_c(Vertex src, Vertex dst, int max_weight);

/// Positional basis of Hom(src cone, dst cone) with weight in [lo, hi].
std::vector<CKey> positional_basis(Vertex src, Vertex dst, int lo, int hi);

}  // namespace kht
