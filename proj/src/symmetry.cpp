#include "rauzy/symmetry.hpp"

#include "rauzy/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace rauzy {

namespace {

int mod(int a, int p) { return ((a % p) + p) % p; }

std::vector<std::size_t> invert(const std::vector<std::size_t> &perm) {
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j)
    inv[perm[j]] = j;
  return inv;
}

bool less_image(const Renumbering &a, const Renumbering &b) {
  return std::lexicographical_compare(a.image().begin(), a.image().end(),
                                      b.image().begin(), b.image().end());
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i)
    f *= i;
  return f;
}

std::string tau_string(const std::vector<std::size_t> &tau) {
  std::string out;
  std::vector<bool> seen(tau.size(), false);
  for (std::size_t j = 0; j < tau.size(); ++j) {
    if (seen[j] || tau[j] == j)
      continue;
    out += '(';
    for (std::size_t x = j; !seen[x]; x = tau[x]) {
      if (x != j)
        out += ' ';
      seen[x] = true;
      out += std::to_string(x + 1);
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

} // namespace

OrbitFrame::OrbitFrame(const MarkingData &marking)
    : marking_(marking), offset_(marking.rotation.size(), 0),
      where_(marking.rotation.size()) {
  for (const auto &orb : marking_.orbits)
    for (std::size_t s = 0; s < orb.size(); ++s)
      offset_[orb[s]] = static_cast<int>(s);

  for (std::size_t o = 0; o < marking_.orbits.size(); ++o) {
    if (o == marking_.special_orbit)
      continue;
    const int degree = static_cast<int>(marking_.orbits[o].size()) - 1;
    auto it = std::find_if(classes_.begin(), classes_.end(),
                           [&](const auto &c) { return c.degree == degree; });
    if (it == classes_.end()) {
      classes_.push_back({degree, {}});
      it = classes_.end() - 1;
    }
    it->orbits.push_back(o);
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const auto &a, const auto &b) { return a.degree > b.degree; });
  // Orbits arrive sorted by smallest letter, which is each orbit's base point.
  for (std::size_t c = 0; c < classes_.size(); ++c)
    for (std::size_t j = 0; j < classes_[c].orbits.size(); ++j)
      for (Letter a : marking_.orbits[classes_[c].orbits[j]])
        where_[a] = std::make_pair(c, j);
}

Letter OrbitFrame::rotate(Letter a, int steps) const {
  const auto &orb = marking_.orbits[marking_.orbit_of[a]];
  const int len = static_cast<int>(orb.size());
  return orb[static_cast<std::size_t>(mod(offset_[a] + steps, len))];
}

std::optional<std::pair<std::size_t, std::size_t>>
OrbitFrame::locate(Letter a) const {
  return where_[a];
}

std::uint64_t OrbitFrame::candidate_order() const {
  std::uint64_t order = 1;
  for (const auto &c : classes_) {
    order *= factorial(c.multiplicity());
    for (std::size_t j = 0; j < c.multiplicity(); ++j)
      order *= static_cast<std::uint64_t>(c.modulus());
  }
  return order;
}

bool OrbitFrame::has_odd_degree() const {
  return std::any_of(classes_.begin(), classes_.end(),
                     [](const auto &c) { return c.degree % 2 != 0; });
}

SemidirectElement identity_element(const OrbitFrame &frame) {
  SemidirectElement e;
  for (const auto &c : frame.classes()) {
    ClassCoordinates cc;
    cc.exponents.assign(c.multiplicity(), 0);
    cc.tau.resize(c.multiplicity());
    std::iota(cc.tau.begin(), cc.tau.end(), std::size_t(0));
    e.classes.push_back(std::move(cc));
  }
  return e;
}

SemidirectElement multiply(const OrbitFrame &frame, const SemidirectElement &a,
                           const SemidirectElement &b) {
  SemidirectElement out;
  for (std::size_t c = 0; c < frame.classes().size(); ++c) {
    const int p = frame.classes()[c].modulus();
    const auto &x = a.classes[c], &y = b.classes[c];
    const auto x_inv = invert(x.tau);
    ClassCoordinates r;
    const std::size_t n = x.tau.size();
    r.exponents.resize(n);
    r.tau.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      r.tau[j] = x.tau[y.tau[j]];
      r.exponents[j] = mod(x.exponents[j] + y.exponents[x_inv[j]], p);
    }
    out.classes.push_back(std::move(r));
  }
  return out;
}

SemidirectElement inverse(const OrbitFrame &frame, const SemidirectElement &a) {
  SemidirectElement out;
  for (std::size_t c = 0; c < frame.classes().size(); ++c) {
    const int p = frame.classes()[c].modulus();
    const auto &x = a.classes[c];
    ClassCoordinates r;
    r.tau = invert(x.tau);
    r.exponents.resize(x.tau.size());
    for (std::size_t j = 0; j < x.tau.size(); ++j)
      r.exponents[j] = mod(-x.exponents[x.tau[j]], p);
    out.classes.push_back(std::move(r));
  }
  return out;
}

SemidirectElement to_coordinates(const Renumbering &sigma,
                                 const OrbitFrame &frame) {
  const auto &m = frame.marking();
  const std::size_t d = frame.letters();
  if (sigma.size() != d)
    throw InvalidArgument("element acts on a different alphabet");
  for (std::size_t a = 0; a < d; ++a) {
    const Letter l = Letter(a);
    if (sigma(m.rotation[l]) != m.rotation[sigma(l)])
      throw InvalidArgument("element does not commute with T");
    if (m.orbit_of[l] == m.special_orbit && sigma(l) != l)
      throw InvalidArgument("element moves a letter of the special orbit");
  }
  SemidirectElement out;
  for (std::size_t c = 0; c < frame.classes().size(); ++c) {
    const std::size_t n = frame.classes()[c].multiplicity();
    ClassCoordinates cc;
    cc.exponents.assign(n, 0);
    cc.tau.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const Letter image = sigma(frame.base_point(c, j));
      const auto loc = frame.locate(image);
      if (!loc || loc->first != c)
        throw InvalidArgument("element maps an orbit outside its class");
      cc.tau[j] = loc->second;
      cc.exponents[loc->second] = frame.offset(image);
    }
    out.classes.push_back(std::move(cc));
  }
  return out;
}

Renumbering from_coordinates(const SemidirectElement &coords,
                             const OrbitFrame &frame) {
  std::vector<Letter> img(frame.letters());
  std::iota(img.begin(), img.end(), Letter(0));
  if (coords.classes.size() != frame.classes().size())
    throw InvalidArgument("coordinates do not match the frame");
  for (std::size_t c = 0; c < frame.classes().size(); ++c) {
    const auto &cls = frame.classes()[c];
    const auto &cc = coords.classes[c];
    if (cc.tau.size() != cls.multiplicity() ||
        cc.exponents.size() != cls.multiplicity())
      throw InvalidArgument("coordinates do not match the frame");
    for (std::size_t j = 0; j < cls.multiplicity(); ++j) {
      const Letter from = frame.base_point(c, j);
      const std::size_t t = cc.tau[j];
      const Letter to = frame.base_point(c, t);
      for (int s = 0; s < cls.modulus(); ++s)
        img[frame.rotate(from, s)] = frame.rotate(to, s + cc.exponents[t]);
    }
  }
  return Renumbering(std::move(img));
}

int signature(const std::vector<std::size_t> &perm) {
  std::vector<bool> seen(perm.size(), false);
  std::size_t cycles = 0;
  for (std::size_t j = 0; j < perm.size(); ++j) {
    if (seen[j])
      continue;
    ++cycles;
    for (std::size_t x = j; !seen[x]; x = perm[x])
      seen[x] = true;
  }
  return (perm.size() - cycles) % 2 == 0 ? 1 : -1;
}

int phi(const SemidirectElement &coords, const OrbitFrame &frame) {
  int value = 1;
  for (std::size_t c = 0; c < frame.classes().size(); ++c) {
    if (frame.classes()[c].degree % 2 == 0)
      continue;
    // (prod zeta_j)^{p} with zeta_j = exp(2 pi i m_j / 2p) is (-1)^{sum m_j}.
    const auto &cc = coords.classes[c];
    const int sum = std::accumulate(cc.exponents.begin(), cc.exponents.end(), 0);
    value *= (sum % 2 == 0 ? 1 : -1) * signature(cc.tau);
  }
  return value;
}

std::uint64_t element_order(const Renumbering &sigma) {
  std::vector<bool> seen(sigma.size(), false);
  std::uint64_t order = 1;
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    if (seen[a])
      continue;
    std::uint64_t len = 0;
    for (std::size_t x = a; !seen[x]; x = sigma(Letter(x))) {
      seen[x] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return order;
}

std::string cycle_notation(const Renumbering &sigma, const Alphabet &alphabet) {
  std::string out;
  std::vector<bool> seen(sigma.size(), false);
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    if (seen[a] || sigma(Letter(a)) == a)
      continue;
    out += '(';
    for (std::size_t x = a; !seen[x]; x = sigma(Letter(x))) {
      if (x != a)
        out += ' ';
      seen[x] = true;
      out += alphabet.token(Letter(x));
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::string coordinate_string(const SemidirectElement &coords) {
  std::string out = "[";
  for (std::size_t c = 0; c < coords.classes.size(); ++c) {
    if (c)
      out += " | ";
    const auto &cc = coords.classes[c];
    out += '(';
    for (std::size_t j = 0; j < cc.exponents.size(); ++j) {
      if (j)
        out += ',';
      out += std::to_string(cc.exponents[j]);
    }
    out += ") " + tau_string(cc.tau);
  }
  return out + "]";
}

SymmetryGroup::SymmetryGroup(const OrbitFrame &frame,
                             std::vector<Renumbering> elements)
    : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end(), less_image);
  for (std::size_t i = 1; i < elements_.size(); ++i)
    if (elements_[i] == elements_[i - 1])
      throw InvariantViolation("duplicate group element");
  coordinates_.reserve(elements_.size());
  for (const auto &e : elements_)
    coordinates_.push_back(to_coordinates(e, frame));
}

bool SymmetryGroup::contains(const Renumbering &sigma) const {
  return std::binary_search(elements_.begin(), elements_.end(), sigma,
                            less_image);
}

void SymmetryGroup::check_group_axioms() const {
  if (elements_.empty())
    throw InvariantViolation("empty group");
  if (!contains(Renumbering::identity(elements_.front().size())))
    throw InvariantViolation("group lacks the identity");
  // Full closure for desk-sized groups; above that, products with a fixed
  // stride of right factors.
  const std::size_t n = elements_.size();
  const std::size_t stride = n <= 4096 ? 1 : n / 64;
  for (const auto &a : elements_) {
    if (!contains(a.inverse()))
      throw InvariantViolation("group not closed under inverses");
    for (std::size_t i = 0; i < n; i += stride)
      if (!contains(a.compose(elements_[i])))
        throw InvariantViolation("group not closed under composition");
  }
}

SymmetryGroup build_candidate_group(const OrbitFrame &frame) {
  const std::uint64_t expected = frame.candidate_order();
  if (expected > kMaxCandidateOrder)
    throw InvalidArgument("candidate group of order " +
                          std::to_string(expected) + " is too large");
  const auto &m = frame.marking();
  const std::size_t d = frame.letters();

  // Orbit-by-orbit search: each regular orbit goes to an unused orbit of the
  // same length, with any rotation offset.
  std::vector<std::size_t> regular;
  for (std::size_t o = 0; o < m.orbits.size(); ++o)
    if (o != m.special_orbit)
      regular.push_back(o);

  std::vector<Renumbering> found;
  std::vector<Letter> img(d);
  std::iota(img.begin(), img.end(), Letter(0));
  std::vector<bool> used(m.orbits.size(), false);

  auto search = [&](auto &self, std::size_t i) -> void {
    if (i == regular.size()) {
      found.emplace_back(img);
      return;
    }
    const auto &from = m.orbits[regular[i]];
    for (std::size_t o : regular) {
      const auto &to = m.orbits[o];
      if (used[o] || to.size() != from.size())
        continue;
      used[o] = true;
      for (std::size_t s = 0; s < to.size(); ++s) {
        for (std::size_t r = 0; r < from.size(); ++r)
          img[from[r]] = to[(r + s) % to.size()];
        self(self, i + 1);
      }
      used[o] = false;
    }
  };
  search(search, 0);

  if (found.size() != expected)
    throw InvariantViolation("candidate group has order " +
                             std::to_string(found.size()) + ", expected " +
                             std::to_string(expected));
  return SymmetryGroup(frame, std::move(found));
}

SymmetryGroup automorphism_group(const RauzyDiagram &d,
                                 const SymmetryGroup &candidates,
                                 const OrbitFrame &frame) {
  d.require_complete();
  const std::size_t n = d.letters();
  const auto root = d.rows(d.root());
  std::vector<Letter> image(2 * n);
  std::vector<Renumbering> members;
  for (const auto &sigma : candidates.elements()) {
    for (std::size_t j = 0; j < 2 * n; ++j)
      image[j] = sigma(root[j]);
    if (d.find_rows(image))
      members.push_back(sigma);
  }
  SymmetryGroup aut(frame, std::move(members));
  aut.check_group_axioms();
  return aut;
}

bool is_diagram_automorphism(const RauzyDiagram &d, const Renumbering &sigma) {
  d.require_complete();
  const std::size_t n = d.letters();
  if (sigma.size() != n)
    return false;
  std::vector<VertexId> map(d.size());
  std::vector<Letter> image(2 * n);
  for (VertexId v = 0; v < d.size(); ++v) {
    auto r = d.rows(v);
    for (std::size_t j = 0; j < 2 * n; ++j)
      image[j] = sigma(r[j]);
    auto id = d.find_rows(image);
    if (!id)
      return false;
    map[v] = *id;
  }
  for (VertexId v = 0; v < d.size(); ++v)
    if (map[d.t_succ()[v]] != d.t_succ()[map[v]] ||
        map[d.b_succ()[v]] != d.b_succ()[map[v]])
      return false;
  return true;
}

std::vector<Renumbering> brute_force_automorphisms(const RauzyDiagram &d) {
  const std::size_t n = d.letters();
  if (n > 8)
    throw InvalidArgument("brute force limited to alphabets of size <= 8");
  std::vector<Letter> img(n);
  std::iota(img.begin(), img.end(), Letter(0));
  std::vector<Renumbering> out;
  do {
    Renumbering sigma(img);
    if (is_diagram_automorphism(d, sigma))
      out.push_back(std::move(sigma));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

LemmaWitness find_lemma_witness(const SymmetryGroup &aut,
                                const OrbitFrame &frame, std::size_t cls) {
  const auto &c = frame.classes().at(cls);
  LemmaWitness w;
  w.class_index = cls;
  w.degree = c.degree;
  w.multiplicity = c.multiplicity();
  if (c.degree % 2 == 0 || c.multiplicity() < 2)
    return w;
  w.status = LemmaWitness::Status::NotFound;
  const SemidirectElement id = identity_element(frame);
  const int p = c.modulus();

  for (std::size_t e = 0; e < aut.order(); ++e) {
    const auto &coords = aut.coordinates()[e];
    bool others_trivial = true;
    for (std::size_t o = 0; o < coords.classes.size(); ++o)
      if (o != cls && coords.classes[o] != id.classes[o])
        others_trivial = false;
    if (!others_trivial)
      continue;
    const auto &cc = coords.classes[cls];
    std::vector<std::size_t> moved;
    for (std::size_t j = 0; j < cc.tau.size(); ++j)
      if (cc.tau[j] != j)
        moved.push_back(j);
    if (moved.size() != 2)
      continue;
    bool lemma_form = true;
    for (std::size_t j = 0; j < cc.exponents.size(); ++j)
      if (j != moved[0] && j != moved[1] && cc.exponents[j] != 0)
        lemma_form = false;
    if (!lemma_form)
      continue;

    const Renumbering &g = aut.elements()[e];
    const Renumbering square = g.compose(g);
    const std::uint64_t order = element_order(square);
    if (order != static_cast<std::uint64_t>(p))
      continue;

    SemidirectElement expected = id;
    const int s = mod(cc.exponents[moved[0]] + cc.exponents[moved[1]], p);
    expected.classes[cls].exponents[moved[0]] = s;
    expected.classes[cls].exponents[moved[1]] = s;

    w.status = LemmaWitness::Status::Found;
    w.element = g;
    w.coordinates = coords;
    w.square_order = order;
    w.square_matches = to_coordinates(square, frame) == expected;
    return w;
  }
  return w;
}

VerificationReport verify_theorem(const RauzyDiagram &d) {
  d.require_complete();
  VerificationReport r;
  r.vertices = d.size();

  const auto invariance = assert_class_invariance(d);
  r.left_right_shared = invariance.left_right_shared;
  degree_audit(d);

  const MarkingData marking = rotation_map(d.vertex(d.root()));
  r.stratum = marking.stratum_signature();
  r.genus = marking.genus;
  r.hyperelliptic = is_hyperelliptic_class(d);
  if (r.left_right_shared != r.vertices)
    r.notes.push_back("L and R lie on different corner cycles at " +
                      std::to_string(r.vertices - r.left_right_shared) +
                      " vertices");

  const OrbitFrame frame(marking);
  r.has_odd_degree = frame.has_odd_degree();
  if (marking.special_degree % 2 != 0 && !r.has_odd_degree)
    throw InvariantViolation(
        "odd special degree without an odd regular degree");

  const SymmetryGroup candidates = build_candidate_group(frame);
  candidates.check_group_axioms();
  r.g_prime_order = candidates.order();
  r.formula_order = frame.candidate_order();
  r.g_prime_matches = r.g_prime_order == r.formula_order;

  const SymmetryGroup aut = automorphism_group(d, candidates, frame);
  r.aut_order = aut.order();
  r.epsilon_den = r.has_odd_degree ? 2 : 1;
  r.expected_aut_order = r.formula_order / r.epsilon_den;
  r.aut_order_matches = r.aut_order == r.expected_aut_order;

  std::vector<Renumbering> kernel;
  for (std::size_t i = 0; i < candidates.order(); ++i)
    if (phi(candidates.coordinates()[i], frame) == 1)
      kernel.push_back(candidates.elements()[i]);
  r.kernel_equals_aut = kernel == aut.elements();

  // Exhaustive homomorphism check on small groups, a stride sample otherwise.
  r.phi_is_homomorphism = true;
  const auto &coords = candidates.coordinates();
  const std::size_t stride = coords.size() <= 2048 ? 1 : coords.size() / 64;
  for (std::size_t i = 0; i < coords.size() && r.phi_is_homomorphism; ++i)
    for (std::size_t j = 0; j < coords.size(); j += stride)
      if (phi(multiply(frame, coords[i], coords[j]), frame) !=
          phi(coords[i], frame) * phi(coords[j], frame)) {
        r.phi_is_homomorphism = false;
        break;
      }

  for (std::size_t c = 0; c < frame.classes().size(); ++c)
    if (frame.classes()[c].degree % 2 != 0)
      r.witnesses.push_back(find_lemma_witness(aut, frame, c));

  std::vector<std::string> theorem;
  if (!r.g_prime_matches)
    theorem.push_back("|G'| = " + std::to_string(r.g_prime_order) +
                      " differs from the formula " +
                      std::to_string(r.formula_order));
  if (!r.aut_order_matches)
    theorem.push_back("|Aut(D)| = " + std::to_string(r.aut_order) +
                      ", expected " + std::to_string(r.expected_aut_order));
  if (!r.kernel_equals_aut)
    theorem.push_back("Aut(D) differs from the kernel of phi");
  for (const auto &w : r.witnesses) {
    if (w.status == LemmaWitness::Status::NotFound)
      theorem.push_back("no witness in degree class k = " +
                        std::to_string(w.degree));
    else if (w.status == LemmaWitness::Status::Found && !w.square_matches)
      theorem.push_back("witness square has unexpected coordinates in class "
                        "k = " +
                        std::to_string(w.degree));
  }
  if (!r.phi_is_homomorphism)
    r.failures.push_back("phi is not a homomorphism");

  if (r.hyperelliptic) {
    r.notes.push_back("hyperelliptic: theorem out of scope");
    for (auto &t : theorem)
      r.notes.push_back("(informational) " + t);
  } else {
    for (auto &t : theorem)
      r.failures.push_back(std::move(t));
  }
  return r;
}

namespace {

const char *status_name(LemmaWitness::Status s) {
  switch (s) {
  case LemmaWitness::Status::Found:
    return "found";
  case LemmaWitness::Status::NotFound:
    return "not_found";
  case LemmaWitness::Status::NotApplicable:
    return "not_applicable";
  }
  return "?";
}

std::string epsilon_string(const VerificationReport &r) {
  return r.epsilon_den == 1 ? "1" : "1/2";
}

} // namespace

std::string report_text(const VerificationReport &r, const Alphabet &alphabet) {
  std::ostringstream os;
  os << "stratum: " << r.stratum << ", genus " << r.genus << "\n";
  os << "vertices: " << r.vertices << "\n";
  os << "hyperelliptic: " << (r.hyperelliptic ? "yes" : "no") << "\n";
  os << "|G'| = " << r.g_prime_order << " (formula " << r.formula_order
     << ")\n";
  os << "|Aut(D)| = " << r.aut_order << " (epsilon " << epsilon_string(r)
     << ", expected " << r.expected_aut_order << ")\n";
  os << "Aut(D) = ker(phi): " << (r.kernel_equals_aut ? "yes" : "no") << "\n";
  os << "phi homomorphism: " << (r.phi_is_homomorphism ? "yes" : "no")
     << "\n";
  for (const auto &w : r.witnesses) {
    os << "witness k=" << w.degree << " n=" << w.multiplicity << ": "
       << status_name(w.status);
    if (w.element)
      os << " g = " << cycle_notation(*w.element, alphabet) << " "
         << coordinate_string(*w.coordinates) << ", order(g^2) = "
         << w.square_order
         << (w.square_matches ? "" : " (square coordinates mismatch)");
    os << "\n";
  }
  for (const auto &n : r.notes)
    os << "note: " << n << "\n";
  for (const auto &f : r.failures)
    os << "FAIL: " << f << "\n";
  os << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string report_json(const VerificationReport &r, const Alphabet &alphabet) {
  using nlohmann::json;
  json witnesses = json::array();
  for (const auto &w : r.witnesses) {
    json jw = {{"degree", w.degree},
               {"multiplicity", w.multiplicity},
               {"status", status_name(w.status)}};
    if (w.element) {
      const auto &cc = w.coordinates->classes[w.class_index];
      jw["element"] = cycle_notation(*w.element, alphabet);
      jw["coordinates"] = coordinate_string(*w.coordinates);
      jw["exponents"] = cc.exponents;
      jw["tau"] = cc.tau;
      jw["square_order"] = w.square_order;
      jw["square_matches"] = w.square_matches;
    }
    witnesses.push_back(std::move(jw));
  }
  json doc = {{"stratum", r.stratum},
              {"genus", r.genus},
              {"vertices", r.vertices},
              {"hyperelliptic", r.hyperelliptic},
              {"g_prime_order", r.g_prime_order},
              {"formula_order", r.formula_order},
              {"epsilon", epsilon_string(r)},
              {"expected_aut_order", r.expected_aut_order},
              {"aut_order", r.aut_order},
              {"kernel_equals_aut", r.kernel_equals_aut},
              {"phi_is_homomorphism", r.phi_is_homomorphism},
              {"witnesses", std::move(witnesses)},
              {"notes", r.notes},
              {"failures", r.failures},
              {"passed", r.passed()}};
  return doc.dump(2) + "\n";
}

} // namespace rauzy
