#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace aag {

/// Coloured 2-dimensional complex for three processes. Every triangle has one
/// vertex of each colour. `carrier` is the set of input values a vertex's
/// state depends on (bit x for value x).
struct Complex {
  /// Number of corner labels (polygon size).
  int c = 0;
  std::vector<int> colour;
  std::vector<std::string> key;
  std::vector<std::uint64_t> carrier;
  std::vector<std::array<int, 3>> triangles;
  /// Boundary polygon, as a closed walk of vertex ids.
  std::vector<int> boundary;
  /// corners[k] is the vertex that must carry label k.
  std::vector<int> corners;

  int num_vertices() const { return static_cast<int>(colour.size()); }
  int num_edges() const;
};

/// Checks colouring, boundary and corner invariants; throws InvalidInput.
void validate_complex(const Complex& cx);

/// The c-vertex, (c-2)-triangle input subcomplex for c-cycle agreement.
/// Vertex (p, x) is process p with input x. Throws InvalidInput for c < 4.
Complex build_H(int c);

/// A single triangle with corners 0, 1, 2 (colours 0, 1, 2).
Complex single_triangle();

/// One round of the chromatic subdivision: each triangle becomes the 13
/// triangles of its ordered set partitions; shared faces glue by key.
Complex subdivide_once(const Complex& cx);
Complex subdivide(const Complex& cx, int rounds);

using SpernerLabels = std::vector<int>;

/// Vertex ids violating the Sperner conditions (wrong corner label, or a
/// boundary label not belonging to the two surrounding corners).
std::vector<int> sperner_violations(const Complex& cx, const SpernerLabels& labels);

struct TrichromaticResult {
  /// Indices into cx.triangles with three distinct labels.
  std::vector<int> triangles;
  /// Trichromatic triangles whose labels include both 0 and 1; always odd.
  int parity_count = 0;
  bool parity_odd() const { return parity_count % 2 == 1; }
  /// Triangles visited by the door walk from the boundary side between
  /// corners 0 and 1; the last one is trichromatic.
  std::vector<int> walk;
};

/// Throws InvalidInput (listing the violating vertices) for non-Sperner
/// labellings.
TrichromaticResult find_trichromatic(const Complex& cx, const SpernerLabels& labels);

/// Uniform random Sperner labelling: boundary vertices pick one of their
/// two corners, interior vertices any of the c labels.
SpernerLabels random_sperner_labelling(const Complex& cx, std::uint64_t seed);

struct SearchOptions {
  /// Forget the constraints on solo (corner) vertices.
  bool drop_corner_conditions = false;
  /// Forget every boundary constraint (corners and edges).
  bool drop_boundary_conditions = false;
  int max_c = 6;
  int max_rounds = 2;
};

struct SearchResult {
  bool sat = false;
  /// Lexicographically least satisfying labelling when sat.
  std::vector<int> labels;
  int c = 0;
  int rounds = 0;
  int vertices = 0;
  int triangles = 0;
  int variables = 0;
  std::uint64_t clauses = 0;
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
};

/// Decides whether the `rounds`-fold subdivision of H(c) has a decision map
/// meeting the boundary conditions with no trichromatic triangle. Throws
/// BudgetExceeded beyond the configured sizes.
SearchResult search_protocol(int c, int rounds, const SearchOptions& opt = {});

}  // namespace aag
