#pragma once

// Tangle words, the cube of resolutions, delooping into a type D structure
// over B, and the two pipelines whose outputs are compared.
//
// Words are read top to bottom and start and end with two strands:
//   x i  crossing of strands i, i+1       y i  the mirror crossing
//   u i  new strands at positions i, i+1  n i  cap joining strands i, i+1
// Boundary ends are NW, NE (top) and SW, SE (bottom).

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "khtangle/bimodule.hpp"
#include "khtangle/dstructure.hpp"

namespace kht {

struct Slice {
  char kind = 'x';  // x, y, u, n
  int index = 1;    // 1-based
  friend bool operator==(const Slice&, const Slice&) = default;
};

struct TangleWord {
  std::vector<Slice> slices;
  int crossings() const;
  std::string format() const;
};

/// Accepts "x1 y2" and "x 1 y 2". Errors name the offending slice.
TangleWord parse_tangle(std::string_view text);

enum class End : std::uint8_t { NW, NE, SW, SE };
End parse_end(std::string_view text);
std::string_view to_string(End e);

struct Component {
  int min_node = 0;  // identifies the component
  bool arc = false;
  bool starred = false;
  std::vector<int> nodes;
};

struct Resolution {
  std::uint32_t coordinate = 0;  // bit i = smoothing of crossing i
  Vertex matching = Vertex::Filled;
  std::vector<Component> components;  // arcs first, then loops by min_node
  int loops() const;
};

struct ResolutionCube {
  TangleWord word;
  End star = End::NW;
  int crossings = 0;
  std::vector<Resolution> vertices;  // indexed by coordinate
};

inline constexpr int kDefaultMaxCrossings = 20;

ResolutionCube build_cube(const TangleWord& t, End star = End::NW, int max_crossings = kDefaultMaxCrossings);

/// Delooped cube as a type D structure over B; throws if d^2 != 0.
TypeD deloop_translate(const ResolutionCube& cube);

struct PipelineOptions {
  End star = End::NW;
  int max_crossings = kDefaultMaxCrossings;
};

TypeD complex_of(const TangleWord& t, const PipelineOptions& o = {});
/// cone_h(reduce(delooped complex)).
TypeD compute_dd1(const TangleWord& t, const PipelineOptions& o = {});
/// reduce(box_ad(q(reduce(delooped complex)), Y)).
TypeD compute_lt_image(const TangleWord& t, const PipelineOptions& o = {});
TypeD compute_lt_image(const TangleWord& t, const ADBimodule& y, const PipelineOptions& o = {});

enum class Verdict { Equivalent, Indeterminate, Mismatch };
std::string_view to_string(Verdict v);

struct Comparison {
  Verdict verdict = Verdict::Indeterminate;
  TypeD dd1, lt;  // both reduced
  IsoResult witness;     // generator matching, when one exists
  MorphismIso morphism;  // otherwise an algebra-valued basis change
  std::string diagnostic;
};
Comparison compare(const TangleWord& t, const PipelineOptions& o = {});
Comparison compare(const TangleWord& t, const ADBimodule& y, const PipelineOptions& o = {});

/// Generator count per (idempotent, hdeg) of the reduced complex, computed
/// independently as the homology of the idempotent part of the unreduced one.
std::map<std::pair<Vertex, int>, std::size_t> reduced_count_oracle(const TypeD& unreduced);

struct CorpusEntry {
  std::string name;
  std::string word;
};
std::vector<CorpusEntry> shipped_corpus();

/// Valid words with at most `max_crossings` crossings and at most 6 strands.
TangleWord random_word(std::mt19937_64& rng, int max_crossings);

}  // namespace kht
