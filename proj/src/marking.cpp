#include "rauzy/marking.hpp"

#include "rauzy/diagram.hpp"
#include "rauzy/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rauzy {

namespace {

[[noreturn]] void violation(const std::string &what) {
  throw InvariantViolation("marking: " + what);
}

} // namespace

CornerMap::CornerMap(const LabeledPermutation &p)
    : d_(p.size()), pairing_(d_), succ_(2 * d_), marks_(2 * d_) {
  for (std::size_t j = 1; j <= d_; ++j)
    pairing_[j - 1] = p.bottom_position(p.top()[j - 1]);

  // Bottom-type corners (L = b_0, b_1..b_{d-1}) are left through the bottom
  // edge that starts there; the step crosses that edge's letter and lands on
  // the left end of the same letter's top edge.
  for (std::size_t k = 0; k < d_; ++k) {
    const Letter a = p.bottom()[k];
    const Corner from = bottom_corner(k);
    succ_[from] = top_corner(p.top_position(a) - 1);
    marks_[from] = a;
  }
  // Top-type corners (t_1..t_{d-1}, R = t_d) are left through the top edge
  // that ends there, landing on the right end of the paired bottom edge.
  for (std::size_t j = 1; j <= d_; ++j) {
    const Letter a = p.top()[j - 1];
    succ_[top_corner(j)] = bottom_corner(p.bottom_position(a));
  }

  std::vector<bool> hit(2 * d_, false);
  for (Corner c : succ_) {
    if (hit[c])
      violation("rotation successor is not a permutation of corners");
    hit[c] = true;
  }
}

Corner CornerMap::top_corner(std::size_t j) const {
  if (j == 0)
    return left();
  if (j == d_)
    return right();
  return static_cast<Corner>(1 + j);
}

Corner CornerMap::bottom_corner(std::size_t k) const {
  if (k == 0)
    return left();
  if (k == d_)
    return right();
  return static_cast<Corner>(d_ + k);
}

std::string CornerMap::corner_name(Corner c) const {
  if (c == left())
    return "L";
  if (c == right())
    return "R";
  if (is_top_fat(c))
    return "t" + std::to_string(c - 1);
  return "b" + std::to_string(c - d_);
}

std::optional<Letter> CornerMap::step_mark(Corner c) const {
  return marks_[c];
}

std::vector<std::vector<Corner>> CornerMap::cycles() const {
  std::vector<std::vector<Corner>> out;
  std::vector<bool> seen(2 * d_, false);
  for (Corner start = 0; start < 2 * d_; ++start) {
    if (seen[start])
      continue;
    auto &cyc = out.emplace_back();
    for (Corner c = start; !seen[c]; c = succ_[c]) {
      seen[c] = true;
      cyc.push_back(c);
    }
  }
  return out;
}

MarkingData singularity_data(const LabeledPermutation &p) {
  if (!is_irreducible(p))
    throw ReducibleError("marking of a reducible permutation");
  const CornerMap corners(p);
  const std::size_t d = p.size();

  MarkingData m;
  m.minus_inf = p.minus_inf();
  m.plus_inf = p.plus_inf();
  m.cycles = corners.cycles();

  int total = 0;
  std::size_t right_cycle = 0;
  for (std::size_t i = 0; i < m.cycles.size(); ++i) {
    int top_fat = 0, bottom_fat = 0;
    for (Corner c : m.cycles[i]) {
      top_fat += corners.is_top_fat(c);
      bottom_fat += corners.is_bottom_fat(c);
      if (c == CornerMap::left())
        m.special_cycle = i;
      if (c == CornerMap::right())
        right_cycle = i;
    }
    if (top_fat != bottom_fat)
      violation("cycle " + std::to_string(i) + " has " +
                std::to_string(top_fat) + " top and " +
                std::to_string(bottom_fat) + " bottom fat corners");
    if (top_fat == 0)
      violation("cycle without fat corners");
    m.cycle_degrees.push_back(top_fat - 1);
    total += top_fat;
  }
  if (total != static_cast<int>(d) - 1)
    violation("sum of (k+1) over singularities is " + std::to_string(total) +
              ", expected " + std::to_string(d - 1));

  m.left_right_share_cycle = right_cycle == m.special_cycle;
  m.special_degree = m.cycle_degrees[m.special_cycle];
  for (std::size_t i = 0; i < m.cycles.size(); ++i)
    if (i != m.special_cycle)
      m.regular_degrees.push_back(m.cycle_degrees[i]);
  std::sort(m.regular_degrees.rbegin(), m.regular_degrees.rend());

  // Euler characteristic of one face, d edges and one vertex per cycle.
  const int chi = static_cast<int>(m.cycles.size()) - static_cast<int>(d) + 1;
  if (chi > 0 || chi % 2 != 0)
    violation("Euler characteristic " + std::to_string(chi) +
              " is not of the form 2 - 2g");
  m.genus = (2 - chi) / 2;
  int degree_sum = 0;
  for (int k : m.cycle_degrees)
    degree_sum += k;
  if (degree_sum != 2 * m.genus - 2)
    violation("degrees do not sum to 2g - 2");
  return m;
}

MarkingData rotation_map(const LabeledPermutation &p) {
  MarkingData m = singularity_data(p);
  const CornerMap corners(p);
  const std::size_t d = p.size();

  m.rotation.assign(d, 0);
  std::vector<int> placed(d, 0);
  std::vector<std::vector<Letter>> cycle_marks(m.cycles.size());
  for (std::size_t i = 0; i < m.cycles.size(); ++i) {
    for (Corner c : m.cycles[i])
      if (auto a = corners.step_mark(c)) {
        cycle_marks[i].push_back(*a);
        ++placed[*a];
      }
    const auto &marks = cycle_marks[i];
    for (std::size_t j = 0; j < marks.size(); ++j)
      m.rotation[marks[j]] = marks[(j + 1) % marks.size()];
  }
  for (std::size_t a = 0; a < d; ++a)
    if (placed[a] != 1)
      violation("letter " + p.alphabet()->token(Letter(a)) + " placed " +
                std::to_string(placed[a]) + " times");
  if (m.rotation[m.minus_inf] != m.plus_inf)
    violation("T(minus_inf) != plus_inf");

  for (std::size_t i = 0; i < m.cycles.size(); ++i) {
    const auto len = cycle_marks[i].size();
    const auto expected = static_cast<std::size_t>(
        m.cycle_degrees[i] + (i == m.special_cycle ? 2 : 1));
    if (len != expected)
      violation("orbit of length " + std::to_string(len) +
                " at a singularity of degree " +
                std::to_string(m.cycle_degrees[i]));
  }

  // Orbits in canonical form: start at the smallest letter, follow T.
  m.orbit_of.assign(d, 0);
  std::vector<bool> seen(d, false);
  for (std::size_t a = 0; a < d; ++a) {
    if (seen[a])
      continue;
    auto &orb = m.orbits.emplace_back();
    for (Letter x = Letter(a); !seen[x]; x = m.rotation[x]) {
      seen[x] = true;
      m.orbit_of[x] = m.orbits.size() - 1;
      orb.push_back(x);
    }
  }
  m.special_orbit = m.orbit_of[m.minus_inf];
  if (m.orbit_of[m.plus_inf] != m.special_orbit)
    violation("plus_inf outside the special orbit");

  std::size_t total = 0;
  for (const auto &o : m.orbits)
    total += o.size();
  if (total != d)
    violation("orbits do not partition the alphabet");
  return m;
}

std::string MarkingData::stratum_signature() const {
  std::ostringstream os;
  os << "H(" << special_degree;
  if (!regular_degrees.empty()) {
    os << " | ";
    std::map<int, int, std::greater<>> counts;
    for (int k : regular_degrees)
      ++counts[k];
    bool first = true;
    for (const auto &[k, n] : counts) {
      if (!first)
        os << ", ";
      first = false;
      os << k;
      if (n > 1)
        os << '^' << n;
    }
  }
  os << ')';
  return os.str();
}

std::string MarkingData::rotation_cycles(const Alphabet &alphabet) const {
  std::string out;
  for (const auto &orb : orbits) {
    if (orb.size() < 2)
      continue;
    out += '(';
    for (std::size_t j = 0; j < orb.size(); ++j) {
      if (j)
        out += ' ';
      out += alphabet.token(orb[j]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string MarkingData::orbit_string(const Alphabet &alphabet,
                                      std::size_t orbit) const {
  std::string out = "{";
  const auto &orb = orbits.at(orbit);
  for (std::size_t j = 0; j < orb.size(); ++j) {
    if (j)
      out += ", ";
    out += alphabet.token(orb[j]);
  }
  return out + "}";
}

ClassInvarianceReport assert_class_invariance(const RauzyDiagram &d) {
  d.require_complete();
  const MarkingData root = rotation_map(d.vertex(d.root()));
  ClassInvarianceReport report;
  for (VertexId v = 0; v < d.size(); ++v) {
    const MarkingData m = rotation_map(d.vertex(v));
    const auto where = " at vertex " + std::to_string(v);
    if (m.minus_inf != root.minus_inf || m.plus_inf != root.plus_inf)
      violation("leftmost letters differ" + where);
    if (m.rotation != root.rotation)
      violation("rotation map differs" + where);
    if (m.special_degree != root.special_degree)
      violation("special degree differs" + where);
    if (m.regular_degrees != root.regular_degrees)
      violation("degree multiset differs" + where);
    report.left_right_shared += m.left_right_share_cycle;
    ++report.vertices_checked;
  }
  return report;
}

bool is_hyperelliptic_class(const RauzyDiagram &d) {
  d.require_complete();
  const std::size_t n = d.letters();
  for (VertexId v = 0; v < d.size(); ++v) {
    auto rows = d.rows(v);
    bool symmetric = true;
    for (std::size_t j = 0; j < n && symmetric; ++j)
      symmetric = rows[n + j] == rows[n - 1 - j];
    if (symmetric)
      return true;
  }
  return false;
}

} // namespace rauzy
