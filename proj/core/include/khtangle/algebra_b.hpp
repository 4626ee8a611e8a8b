#pragma once

// The quiver algebras B (with the central element H = D + S^2) and its
// quotient Bt = B/(H = 0). S and D are used in the merged sense: the source
// vertex of a path determines which arrow is meant.
//
// Multiplication convention, used everywhere in this library:
//   mul(x, y) is the path "x followed by y"; target(x) must equal source(y).

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "khtangle/f2.hpp"

namespace kht {

enum class Vertex : std::uint8_t { Filled = 0, Hollow = 1 };

constexpr Vertex other(Vertex v) { return v == Vertex::Filled ? Vertex::Hollow : Vertex::Filled; }
std::string_view to_string(Vertex v);
Vertex parse_vertex(std::string_view token);

enum class Flavor : std::uint8_t { B, Bt };
std::string_view to_string(Flavor f);
Flavor parse_flavor(std::string_view token);

struct BBasis {
  enum class Kind : std::uint8_t { Idem, S, D };
  Kind kind = Kind::Idem;
  int exp = 0;                 // 0 for Idem, n for S^n, l for D^l
  Vertex at = Vertex::Filled;  // source vertex (Idem and D are loops)

  static BBasis idem(Vertex v) { return {Kind::Idem, 0, v}; }
  static BBasis spow(int n, Vertex source);
  static BBasis dpow(int l, Vertex v);

  Vertex source() const { return at; }
  Vertex target() const {
    return (kind == Kind::S && exp % 2 == 1) ? other(at) : at;
  }
  bool is_idempotent() const { return kind == Kind::Idem; }
  /// Filtration used for truncation: n for S^n, 2l for D^l, 0 for idempotents.
  int weight() const { return kind == Kind::D ? 2 * exp : exp; }

  friend auto operator<=>(const BBasis&, const BBasis&) = default;
};

using BLin = LinComb<BBasis>;

/// Basis element validity in a flavor: Bt has no D^l and no S^n with n >= 3.
bool valid_in(Flavor f, const BBasis& b);

/// Product of two basis elements, or nothing when it vanishes.
std::optional<BBasis> mul_basis(Flavor f, const BBasis& x, const BBasis& y);
BLin mul(Flavor f, const BLin& x, const BLin& y);

/// Left multiplication by H = D + S^2 (flavor B only; H is central).
BLin h_mul(const BLin& x);
BLin h_elem(Vertex v);

/// The quotient homomorphism B -> Bt.
BLin q_map(const BLin& x);

/// Every nonzero basis element b of the flavor with source(b) == from and
/// weight(b) <= max_weight.
std::vector<BBasis> basis_from(Flavor f, Vertex from, int max_weight);

/// Non-idempotent factorizations c = x * y into basis elements.
std::vector<std::pair<BBasis, BBasis>> factorizations(Flavor f, const BBasis& c);

/// Label text: `i`, `S^n`, `D^l`, joined by `+`; `0` for zero.
std::string format_basis(const BBasis& b);
std::string format_label(const BLin& x);
/// Parses a label whose paths start at `from`.
BLin parse_label(Flavor f, std::string_view text, Vertex from);

/// An element of B or Bt together with its flavor.
struct BElem {
  Flavor flavor = Flavor::B;
  BLin terms;

  static BElem idem(Flavor f, Vertex v) { return {f, BLin::single(BBasis::idem(v))}; }
  static BElem basis(Flavor f, const BBasis& b);

  bool zero() const { return terms.zero(); }
  BElem& operator+=(const BElem& o);
  friend BElem operator+(BElem a, const BElem& b) { return a += b; }
  friend bool operator==(const BElem&, const BElem&) = default;
};

BElem mul(const BElem& x, const BElem& y);
BElem h_mul(const BElem& x);
BElem q_map(const BElem& x);

}  // namespace kht
