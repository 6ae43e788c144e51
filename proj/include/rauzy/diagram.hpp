#pragma once

#include "rauzy/permutation.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rauzy {

using VertexId = std::uint32_t;
inline constexpr std::size_t kDefaultMaxVertices = 5'000'000;

/// Open-addressing set of vertex ids keyed by their rows. The rows live in
/// the owning diagram and are passed to every call, so the table itself is
/// just a vector of slots.
class VertexIndex {
public:
  static constexpr VertexId kEmpty = ~VertexId(0);

  void reserve(std::size_t n, std::span<const Letter> rows,
               std::size_t width);
  /// Returns the id whose rows equal `key`, or kEmpty.
  VertexId find(std::span<const Letter> key, std::span<const Letter> rows,
                std::size_t width) const;
  /// Inserts `id` (whose rows are already stored); the key must be absent.
  void insert(VertexId id, std::span<const Letter> rows, std::size_t width);

private:
  std::vector<VertexId> slots_;
  std::size_t count_ = 0;
};

/// The labeled Rauzy class of a root permutation with its t and b edges.
/// Vertex 0 is the root; ids follow breadth-first discovery with the t-child
/// explored before the b-child.
class RauzyDiagram {
public:
  const AlphabetPtr &alphabet() const { return alphabet_; }
  std::size_t letters() const { return d_; }
  std::size_t size() const { return t_succ_.size(); }
  bool truncated() const { return truncated_; }
  VertexId root() const { return 0; }

  LabeledPermutation vertex(VertexId v) const;
  /// Top row followed by bottom row.
  std::span<const Letter> rows(VertexId v) const {
    return {rows_.data() + std::size_t(v) * 2 * d_, 2 * d_};
  }
  VertexId successor(VertexId v, MoveKind kind) const {
    return kind == MoveKind::Top ? t_succ_[v] : b_succ_[v];
  }
  const std::vector<VertexId> &t_succ() const { return t_succ_; }
  const std::vector<VertexId> &b_succ() const { return b_succ_; }

  /// Vertex id of `p`, or nullopt. A permutation over another alphabet is
  /// re-interned by token spelling; unknown tokens mean "not a member".
  std::optional<VertexId> find(const LabeledPermutation &p) const;
  std::optional<VertexId> find_rows(std::span<const Letter> rows) const;

  /// Throws TruncatedDiagramError when the enumeration was cut short.
  void require_complete() const;

private:
  friend RauzyDiagram enumerate_class(const LabeledPermutation &,
                                      std::size_t);

  AlphabetPtr alphabet_;
  std::size_t d_ = 0;
  std::vector<Letter> rows_;
  std::vector<VertexId> t_succ_, b_succ_;
  VertexIndex index_;
  bool truncated_ = false;
};

/// Breadth-first closure of `root` under both moves. Throws ReducibleError
/// for a reducible root. If more than `max_vertices` vertices are found the
/// result is marked truncated and its successor arrays are partial.
RauzyDiagram enumerate_class(const LabeledPermutation &root,
                             std::size_t max_vertices = kDefaultMaxVertices);

/// Membership test; throws TruncatedDiagramError on a truncated diagram.
bool contains(const RauzyDiagram &d, const LabeledPermutation &p);

struct DegreeAudit {
  std::size_t vertices = 0;
  std::size_t t_self_loops = 0;
  std::size_t b_self_loops = 0;
  // Per-color in-degree range over all vertices (out-degree is 1 by storage).
  std::size_t min_t_in = 0, max_t_in = 0, min_b_in = 0, max_b_in = 0;
};

/// Checks that each color class of edges is a permutation of the vertex set.
/// Throws InvariantViolation otherwise.
DegreeAudit degree_audit(const RauzyDiagram &d);

/// JSON document with alphabet, vertices, t_succ, b_succ, root and an
/// invariants block computed from the root's marking.
std::string export_json(const RauzyDiagram &d);
std::string export_dot(const RauzyDiagram &d);

} // namespace rauzy
