#pragma once

#include "rauzy/permutation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace rauzy {

class RauzyDiagram;

/// Corner of the suspension polygon. Ids: L = 0, R = 1, t_j = 1 + j and
/// b_j = d + j for j in 1..d-1.
using Corner = std::uint16_t;

/// Combinatorial shadow of the suspension polygon of a permutation: 2d
/// corners, top edge T_j glued to bottom edge B_{pi_b(pi_t^-1(j))}, and the
/// rotation successor obtained by crossing the glued edge that follows each
/// corner in counterclockwise boundary order.
class CornerMap {
public:
  explicit CornerMap(const LabeledPermutation &p);

  std::size_t letters() const { return d_; }
  std::size_t corner_count() const { return 2 * d_; }

  static constexpr Corner left() { return 0; }
  static constexpr Corner right() { return 1; }
  /// t_j for j in 0..d with t_0 = L and t_d = R.
  Corner top_corner(std::size_t j) const;
  /// b_k for k in 0..d with b_0 = L and b_d = R.
  Corner bottom_corner(std::size_t k) const;
  bool is_top_fat(Corner c) const { return c >= 2 && c <= d_; }
  bool is_bottom_fat(Corner c) const { return c > d_; }
  std::string corner_name(Corner c) const;

  /// Bottom edge index (1-based) glued to top edge j (1-based).
  std::size_t paired_bottom(std::size_t j) const { return pairing_[j - 1]; }

  Corner successor(Corner c) const { return succ_[c]; }
  /// Letter crossed when leaving `c`, or nullopt for the unmarked top-type
  /// steps (from t_j and from R).
  std::optional<Letter> step_mark(Corner c) const;

  /// Cycles of the successor, each starting at its smallest corner id, listed
  /// by smallest corner id.
  std::vector<std::vector<Corner>> cycles() const;

private:
  std::size_t d_;
  std::vector<std::size_t> pairing_;
  std::vector<Corner> succ_;
  std::vector<std::optional<Letter>> marks_;
};

/// Singularity data and the rotation map T of a labeled permutation.
struct MarkingData {
  std::vector<std::vector<Corner>> cycles;
  /// Degree of the singularity of each cycle.
  std::vector<int> cycle_degrees;
  std::size_t special_cycle = 0;
  int special_degree = 0;
  /// Degrees of the non-special singularities, sorted descending.
  std::vector<int> regular_degrees;
  int genus = 0;
  bool left_right_share_cycle = false;

  Letter minus_inf = 0;
  Letter plus_inf = 0;
  /// T as a letter permutation: rotation[a] = T(a).
  std::vector<Letter> rotation;
  /// T-orbits, each listed in T order from its smallest letter; orbits are
  /// sorted by smallest letter.
  std::vector<std::vector<Letter>> orbits;
  std::vector<std::size_t> orbit_of;
  std::size_t special_orbit = 0;

  /// "H(k | k_1^n_1, ...)" with the special degree first.
  std::string stratum_signature() const;
  /// T in disjoint-cycle notation over tokens, fixed points omitted.
  std::string rotation_cycles(const Alphabet &alphabet) const;
  std::string orbit_string(const Alphabet &alphabet, std::size_t orbit) const;
};

/// Degrees, genus and the special singularity. Only the cycle fields of the
/// result are filled. Throws InvariantViolation if the corner counts break
/// the fat-corner accounting.
MarkingData singularity_data(const LabeledPermutation &p);

/// Full marking: singularity data plus T and its orbits. Throws
/// ReducibleError on reducible input and InvariantViolation when any orbit
/// or degree assertion fails.
MarkingData rotation_map(const LabeledPermutation &p);

struct ClassInvarianceReport {
  std::size_t vertices_checked = 0;
  /// Vertices where L and R lie on the same corner cycle.
  std::size_t left_right_shared = 0;
};

/// Recomputes the marking at every vertex and checks that T, the degrees,
/// the special degree and the two leftmost letters agree with the root.
/// Throws InvariantViolation on the first mismatch.
ClassInvarianceReport assert_class_invariance(const RauzyDiagram &d);

/// True iff some vertex has pi_t(a) + pi_b(a) = d + 1 for every letter.
bool is_hyperelliptic_class(const RauzyDiagram &d);

} // namespace rauzy
