#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "odoni/exact.hpp"

namespace odoni {

/// Shape of the regular n-branching rooted tree of height k. Vertices are
/// numbered level by level; the vertex (level j, index i) encodes the path
/// given by the base-n digits of i (most significant digit first). Guarded
/// by n^k <= 3^9 unless allow_large is set.
struct TreeShape {
  unsigned n = 2;
  unsigned k = 0;
  TreeShape(unsigned n_, unsigned k_, bool allow_large = false);

  unsigned long pow_n(unsigned j) const;        // n^j
  unsigned long level_offset(unsigned j) const; // vertices on levels < j
  unsigned long vertex_count() const;           // levels 0..k
  unsigned long internal_count() const;         // levels 0..k-1
  unsigned long leaf_count() const { return pow_n(k); }
  /// Global id of a level-j vertex from its index, and back.
  unsigned long id(unsigned j, unsigned long index) const { return level_offset(j) + index; }
  std::pair<unsigned, unsigned long> level_index(unsigned long id) const;
  bool operator==(const TreeShape&) const = default;
};

/// Automorphism of T_(n,k) stored as a portrait: one permutation of
/// {0..n-1} per internal vertex. Composition is level-recursive; memory is
/// Theta(internal vertices).
class WreathElement {
 public:
  explicit WreathElement(TreeShape shape);  // identity
  static WreathElement identity(const TreeShape& shape) { return WreathElement(shape); }
  /// Portrait with a single non-identity label at (level, index).
  static WreathElement single_vertex(const TreeShape& shape, unsigned level,
                                     unsigned long index, const std::vector<unsigned>& perm);

  const TreeShape& shape() const { return shape_; }
  /// Label of the internal vertex with global id v: image of digit d.
  unsigned label(unsigned long v, unsigned d) const { return labels_[v * shape_.n + d]; }
  void set_label(unsigned long v, const std::vector<unsigned>& perm);

  bool is_identity() const;
  /// Image of the level-j vertex with the given index.
  unsigned long apply_vertex(unsigned level, unsigned long index) const;
  /// Image of a vertex by global id (level preserved).
  unsigned long apply_point(unsigned long id) const;

  /// Action on the n^k leaves, as images indexed by leaf index.
  std::vector<unsigned long> leaf_action() const;

  friend WreathElement operator*(const WreathElement& u, const WreathElement& w);  // u after w
  WreathElement inverse() const;
  bool operator==(const WreathElement&) const = default;

 private:
  /// Images of every vertex, level by level (the orbit map of the action).
  std::vector<unsigned long> vertex_images() const;
  TreeShape shape_;
  std::vector<std::uint8_t> labels_;
};

/// Descending cycle type of a permutation given as an image table.
std::vector<unsigned long> cycle_type(const std::vector<unsigned long>& perm);

/// |Aut(T_(n,k))| = (n!)^((n^k - 1)/(n - 1)).
BigInt wreath_order(unsigned n, unsigned k);

/// |Gamma(N)| inside Aut(T_(n,k)): (n!)^((n^k - n^N)/(n - 1)).
BigInt gamma_order(unsigned n, unsigned k, unsigned N);

/// Deterministic Schreier-Sims stabilizer chain with the fixed level-major
/// base (all level-1 vertices, then level-2, ...), so the pointwise
/// stabilizer of levels <= N is a chain suffix.
class GroupHandle {
 public:
  GroupHandle(TreeShape shape, std::vector<WreathElement> generators);
  const TreeShape& shape() const { return shape_; }
  BigInt order() const;
  /// Order of the subgroup fixing every vertex of level <= N pointwise.
  BigInt stabilizer_order(unsigned N) const;
  bool contains(const WreathElement& g) const;

 private:
  void complete_level(std::size_t i);
  std::optional<WreathElement> strip(WreathElement g, std::size_t from) const;
  TreeShape shape_;
  std::vector<unsigned long> base_;  // vertex ids, level-major
  std::vector<std::vector<WreathElement>> gens_;               // per level
  std::vector<std::map<unsigned long, WreathElement>> orbit_;  // transversals
};

BigInt bsgs_order(const std::vector<WreathElement>& gens);

/// sigma_0 (odometer), sibling transpositions sigma_j for N < j <= k, and
/// sigma_inf (odometer of an (n-a)-branching subtree rooted at the leftmost
/// height-N vertex). Requires a = 1, or a < n/2 with n - a prime; N in {0,1}.
struct StandardSigmas {
  WreathElement sigma0;
  std::vector<WreathElement> sigma_k;  // one per level N < j <= k
  WreathElement sigma_inf;
  std::vector<WreathElement> all() const;
};
StandardSigmas standard_sigmas(unsigned n, unsigned a, unsigned k, unsigned N);

WreathElement odometer(const TreeShape& shape);

/// <gens> contains Gamma(N) as subgroups of Aut(T_(n,k)).
bool contains_gamma(const std::vector<WreathElement>& gens, unsigned n, unsigned k, unsigned N);

/// Exact distribution of leaf-action cycle types over the full group, or a
/// seeded uniform-portrait sample. Exhaustive requires the group order to
/// be at most 10^6.
struct CycleTypeDistribution {
  std::map<std::vector<unsigned long>, Rational> proportions;
  unsigned long long total = 0;
};
CycleTypeDistribution cycle_type_distribution_exhaustive(unsigned n, unsigned k);
CycleTypeDistribution cycle_type_distribution_sampled(unsigned n, unsigned k,
                                                      unsigned long count, std::uint64_t seed);

double total_variation(const CycleTypeDistribution& a, const CycleTypeDistribution& b);

}  // namespace odoni
