#include "rauzy/diagram.hpp"

#include "rauzy/errors.hpp"
#include "rauzy/marking.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace rauzy {

namespace {

std::size_t hash_rows(std::span<const Letter> key) {
  return std::hash<std::string_view>{}(std::string_view(
      reinterpret_cast<const char *>(key.data()), key.size()));
}

std::span<const Letter> stored(std::span<const Letter> rows, VertexId id,
                               std::size_t width) {
  return rows.subspan(std::size_t(id) * width, width);
}

bool same(std::span<const Letter> a, std::span<const Letter> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

void VertexIndex::reserve(std::size_t n, std::span<const Letter> rows,
                          std::size_t width) {
  std::size_t cap = 16;
  while (cap < 2 * n)
    cap *= 2;
  if (cap <= slots_.size())
    return;
  std::vector<VertexId> old = std::move(slots_);
  slots_.assign(cap, kEmpty);
  count_ = 0;
  for (VertexId id : old)
    if (id != kEmpty)
      insert(id, rows, width);
}

VertexId VertexIndex::find(std::span<const Letter> key,
                           std::span<const Letter> rows,
                           std::size_t width) const {
  if (slots_.empty())
    return kEmpty;
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = hash_rows(key) & mask;; i = (i + 1) & mask) {
    const VertexId id = slots_[i];
    if (id == kEmpty || same(stored(rows, id, width), key))
      return id;
  }
}

void VertexIndex::insert(VertexId id, std::span<const Letter> rows,
                         std::size_t width) {
  if (2 * (count_ + 1) > slots_.size())
    reserve(count_ + 1, rows, width);
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = hash_rows(stored(rows, id, width)) & mask;
  while (slots_[i] != kEmpty)
    i = (i + 1) & mask;
  slots_[i] = id;
  ++count_;
}

LabeledPermutation RauzyDiagram::vertex(VertexId v) const {
  auto r = rows(v);
  return LabeledPermutation(alphabet_,
                            std::vector<Letter>(r.begin(), r.begin() + d_),
                            std::vector<Letter>(r.begin() + d_, r.end()));
}

std::optional<VertexId>
RauzyDiagram::find_rows(std::span<const Letter> key) const {
  if (key.size() != 2 * d_)
    return std::nullopt;
  VertexId id = index_.find(key, rows_, 2 * d_);
  if (id == VertexIndex::kEmpty)
    return std::nullopt;
  return id;
}

std::optional<VertexId>
RauzyDiagram::find(const LabeledPermutation &p) const {
  if (p.size() != d_)
    return std::nullopt;
  std::vector<Letter> key(2 * d_);
  const bool same_alphabet =
      p.alphabet() == alphabet_ || *p.alphabet() == *alphabet_;
  for (std::size_t j = 0; j < d_; ++j) {
    for (int row = 0; row < 2; ++row) {
      const Letter l = row == 0 ? p.top()[j] : p.bottom()[j];
      if (same_alphabet) {
        key[row * d_ + j] = l;
      } else {
        auto mine = alphabet_->find(p.alphabet()->token(l));
        if (!mine)
          return std::nullopt;
        key[row * d_ + j] = *mine;
      }
    }
  }
  return find_rows(key);
}

void RauzyDiagram::require_complete() const {
  if (truncated_)
    throw TruncatedDiagramError("diagram truncated at " +
                                std::to_string(size()) + " vertices");
}

RauzyDiagram enumerate_class(const LabeledPermutation &root,
                             std::size_t max_vertices) {
  if (!is_irreducible(root))
    throw ReducibleError("root permutation is reducible");
  RauzyDiagram D;
  D.alphabet_ = root.alphabet();
  D.d_ = root.size();
  const std::size_t width = 2 * D.d_;

  D.rows_.assign(root.top().begin(), root.top().end());
  D.rows_.insert(D.rows_.end(), root.bottom().begin(), root.bottom().end());
  D.t_succ_.push_back(0);
  D.b_succ_.push_back(0);
  D.index_.insert(0, D.rows_, width);

  std::vector<Letter> current(width), next(width);
  std::size_t count = 1;
  for (std::size_t head = 0; head < count; ++head) {
    std::copy_n(D.rows_.begin() + head * width, width, current.begin());
    for (MoveKind kind : {MoveKind::Top, MoveKind::Bottom}) {
      if (!detail::apply_move(current, kind, next))
        throw InvariantViolation("move undefined inside a Rauzy class");
      VertexId id = D.index_.find(next, D.rows_, width);
      if (id == VertexIndex::kEmpty) {
        if (count >= max_vertices) {
          D.truncated_ = true;
          D.t_succ_.resize(count);
          D.b_succ_.resize(count);
          return D;
        }
        id = static_cast<VertexId>(count++);
        D.rows_.insert(D.rows_.end(), next.begin(), next.end());
        D.t_succ_.push_back(0);
        D.b_succ_.push_back(0);
        D.index_.insert(id, D.rows_, width);
      }
      (kind == MoveKind::Top ? D.t_succ_ : D.b_succ_)[head] = id;
    }
  }
  return D;
}

bool contains(const RauzyDiagram &d, const LabeledPermutation &p) {
  d.require_complete();
  return d.find(p).has_value();
}

DegreeAudit degree_audit(const RauzyDiagram &d) {
  d.require_complete();
  const std::size_t n = d.size();
  DegreeAudit audit;
  audit.vertices = n;
  if (d.t_succ().size() != n || d.b_succ().size() != n)
    throw InvariantViolation("successor arrays do not cover every vertex");
  auto in_degrees = [&](const std::vector<VertexId> &succ, std::size_t &loops,
                        std::size_t &lo, std::size_t &hi, char color) {
    std::vector<std::size_t> in(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (succ[v] >= n)
        throw InvariantViolation(std::string(1, color) +
                                 "-edge to a missing vertex");
      ++in[succ[v]];
      loops += succ[v] == v;
    }
    auto [mn, mx] = std::minmax_element(in.begin(), in.end());
    lo = *mn;
    hi = *mx;
    if (lo != 1 || hi != 1)
      throw InvariantViolation(std::string(1, color) +
                               "-edges are not a bijection: in-degree range [" +
                               std::to_string(lo) + ", " + std::to_string(hi) +
                               "]");
  };
  in_degrees(d.t_succ(), audit.t_self_loops, audit.min_t_in, audit.max_t_in,
             't');
  in_degrees(d.b_succ(), audit.b_self_loops, audit.min_b_in, audit.max_b_in,
             'b');
  return audit;
}

std::string export_json(const RauzyDiagram &d) {
  d.require_complete();
  using nlohmann::json;
  const auto &alphabet = *d.alphabet();
  const std::size_t n = d.letters();

  json vertices = json::array();
  for (VertexId v = 0; v < d.size(); ++v) {
    auto r = d.rows(v);
    vertices.push_back({{"top", std::vector<int>(r.begin(), r.begin() + n)},
                        {"bottom", std::vector<int>(r.begin() + n, r.end())}});
  }

  const MarkingData m = rotation_map(d.vertex(d.root()));
  json orbits = json::array();
  for (const auto &orb : m.orbits) {
    json o = json::array();
    for (Letter l : orb)
      o.push_back(alphabet.token(l));
    orbits.push_back(std::move(o));
  }

  json doc = {
      {"alphabet", alphabet.tokens()},
      {"vertices", std::move(vertices)},
      {"t_succ", d.t_succ()},
      {"b_succ", d.b_succ()},
      {"root", d.root()},
      {"invariants",
       {{"stratum", m.stratum_signature()},
        {"special_degree", m.special_degree},
        {"degrees", m.regular_degrees},
        {"genus", m.genus},
        {"minus_inf", alphabet.token(m.minus_inf)},
        {"plus_inf", alphabet.token(m.plus_inf)},
        {"orbits", std::move(orbits)},
        {"special_orbit", m.special_orbit},
        {"hyperelliptic", is_hyperelliptic_class(d)}}},
  };
  return doc.dump() + "\n";
}

std::string export_dot(const RauzyDiagram &d) {
  d.require_complete();
  const auto &alphabet = *d.alphabet();
  const std::size_t n = d.letters();
  std::ostringstream os;
  os << "digraph rauzy {\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (VertexId v = 0; v < d.size(); ++v) {
    auto r = d.rows(v);
    os << "  v" << v << " [label=\"";
    for (std::size_t j = 0; j < 2 * n; ++j) {
      if (j == n)
        os << "\\n";
      else if (j)
        os << ' ';
      for (char c : alphabet.token(r[j])) {
        if (c == '"' || c == '\\')
          os << '\\';
        os << c;
      }
    }
    os << "\"];\n";
  }
  for (VertexId v = 0; v < d.size(); ++v) {
    os << "  v" << v << " -> v" << d.t_succ()[v]
       << " [label=\"t\", color=red];\n";
    os << "  v" << v << " -> v" << d.b_succ()[v]
       << " [label=\"b\", color=blue];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace rauzy
