#pragma once

#include "rauzy/diagram.hpp"
#include "rauzy/marking.hpp"
#include "rauzy/permutation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rauzy {

/// Regular T-orbits grouped by length. Within a class, orbits are ordered by
/// their base point, the smallest interned letter of the orbit.
class OrbitFrame {
public:
  struct DegreeClass {
    int degree = 0;
    /// Indices into MarkingData::orbits.
    std::vector<std::size_t> orbits;
    int modulus() const { return degree + 1; }
    std::size_t multiplicity() const { return orbits.size(); }
  };

  explicit OrbitFrame(const MarkingData &marking);

  const MarkingData &marking() const { return marking_; }
  std::size_t letters() const { return marking_.rotation.size(); }
  /// Classes sorted by decreasing degree.
  const std::vector<DegreeClass> &classes() const { return classes_; }

  Letter base_point(std::size_t cls, std::size_t j) const {
    return marking_.orbits[classes_[cls].orbits[j]].front();
  }
  /// T^steps(a); steps may be negative.
  Letter rotate(Letter a, int steps) const;
  /// Exponent s with a = T^s(base of a's orbit).
  int offset(Letter a) const { return offset_[a]; }
  /// (class, position within class) of a regular letter; nullopt for letters
  /// of the special orbit.
  std::optional<std::pair<std::size_t, std::size_t>> locate(Letter a) const;

  /// Product of n_i! (k_i + 1)^{n_i} over the classes.
  std::uint64_t candidate_order() const;
  bool has_odd_degree() const;

private:
  MarkingData marking_;
  std::vector<DegreeClass> classes_;
  std::vector<int> offset_;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> where_;
};

/// Coordinates of one degree class: exponents m_j in Z/(k+1) and a
/// permutation tau of the class's orbits (tau[j] is the image of j).
struct ClassCoordinates {
  std::vector<int> exponents;
  std::vector<std::size_t> tau;
  bool operator==(const ClassCoordinates &) const = default;
};

/// An element of prod_i U_{k_i+1}^{n_i} x| S_{n_i}, one entry per class of the
/// frame.
struct SemidirectElement {
  std::vector<ClassCoordinates> classes;
  bool operator==(const SemidirectElement &) const = default;
};

SemidirectElement identity_element(const OrbitFrame &frame);
/// Split-extension law (m, t)(m', t') = (m + t.m', t t') with
/// (t.m')_j = m'_{t^-1(j)}.
SemidirectElement multiply(const OrbitFrame &frame, const SemidirectElement &a,
                           const SemidirectElement &b);
SemidirectElement inverse(const OrbitFrame &frame, const SemidirectElement &a);

/// Coordinates of a bijection commuting with T and fixing the special orbit.
/// Throws InvalidArgument if sigma is not in that group.
SemidirectElement to_coordinates(const Renumbering &sigma,
                                 const OrbitFrame &frame);
Renumbering from_coordinates(const SemidirectElement &coords,
                             const OrbitFrame &frame);

/// Sign of a permutation of {0..n-1}.
int signature(const std::vector<std::size_t> &perm);
/// The homomorphism whose kernel should be Aut(D): the product over classes
/// of odd degree of (-1)^{sum of exponents} * sgn(tau).
int phi(const SemidirectElement &coords, const OrbitFrame &frame);

/// Order of a letter bijection.
std::uint64_t element_order(const Renumbering &sigma);
/// Disjoint-cycle notation over tokens, "()" for the identity.
std::string cycle_notation(const Renumbering &sigma, const Alphabet &alphabet);
/// e.g. "[(1,0,0) id | (0) id]" or "[(0,0,0) (0 1)]".
std::string coordinate_string(const SemidirectElement &coords);

/// A finite group of letter bijections with canonical element order.
class SymmetryGroup {
public:
  SymmetryGroup(const OrbitFrame &frame, std::vector<Renumbering> elements);

  std::size_t order() const { return elements_.size(); }
  const std::vector<Renumbering> &elements() const { return elements_; }
  const std::vector<SemidirectElement> &coordinates() const {
    return coordinates_;
  }
  bool contains(const Renumbering &sigma) const;
  /// Throws InvariantViolation if the set is not closed under composition
  /// and inverses or lacks the identity.
  void check_group_axioms() const;

private:
  std::vector<Renumbering> elements_;
  std::vector<SemidirectElement> coordinates_;
};

inline constexpr std::uint64_t kMaxCandidateOrder = 2'000'000;

/// All bijections of the alphabet commuting with T and fixing the special
/// orbit pointwise, found by searching orbit-to-orbit assignments. Throws
/// InvariantViolation if the count differs from OrbitFrame::candidate_order,
/// InvalidArgument if that order exceeds kMaxCandidateOrder.
SymmetryGroup build_candidate_group(const OrbitFrame &frame);

/// The members of `candidates` that map the root into the class.
SymmetryGroup automorphism_group(const RauzyDiagram &d,
                                 const SymmetryGroup &candidates,
                                 const OrbitFrame &frame);

/// Slow check that sigma maps every vertex into the class and commutes with
/// both successor maps.
bool is_diagram_automorphism(const RauzyDiagram &d, const Renumbering &sigma);

/// Every relabeling of the alphabet that is a diagram automorphism, found by
/// trying all d! bijections with is_diagram_automorphism. Limited to d <= 8.
std::vector<Renumbering> brute_force_automorphisms(const RauzyDiagram &d);

struct LemmaWitness {
  std::size_t class_index = 0;
  int degree = 0;
  std::size_t multiplicity = 0;
  enum class Status { Found, NotFound, NotApplicable } status =
      Status::NotApplicable;
  std::optional<Renumbering> element;
  std::optional<SemidirectElement> coordinates;
  std::uint64_t square_order = 0;
  /// g^2 equals ((m1+m2, m1+m2, 0, ...), id) in the class's coordinates.
  bool square_matches = false;
};

/// Searches `aut` for g with trivial coordinates outside class `cls`, a
/// transposition of two orbits inside it, and g^2 of order k + 1.
LemmaWitness find_lemma_witness(const SymmetryGroup &aut,
                                const OrbitFrame &frame, std::size_t cls);

struct VerificationReport {
  std::string stratum;
  int genus = 0;
  std::size_t vertices = 0;
  bool hyperelliptic = false;
  std::size_t left_right_shared = 0;

  std::uint64_t g_prime_order = 0;
  std::uint64_t formula_order = 0;
  bool has_odd_degree = false;
  /// Numerator and denominator of epsilon: 1/1 or 1/2.
  int epsilon_den = 1;
  std::uint64_t expected_aut_order = 0;
  std::uint64_t aut_order = 0;

  bool g_prime_matches = false;
  bool aut_order_matches = false;
  bool kernel_equals_aut = false;
  bool phi_is_homomorphism = false;

  std::vector<LemmaWitness> witnesses;
  /// Human-readable reasons for every failed in-scope check.
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool passed() const { return failures.empty(); }
};

/// Runs the full pipeline on a complete diagram: class invariance, degree
/// audit, candidate group, Aut(D), the kernel comparison and witness search.
/// For hyperelliptic classes the formula and kernel checks are reported but
/// do not count as failures.
VerificationReport verify_theorem(const RauzyDiagram &d);

std::string report_text(const VerificationReport &r, const Alphabet &alphabet);
std::string report_json(const VerificationReport &r, const Alphabet &alphabet);

} // namespace rauzy
