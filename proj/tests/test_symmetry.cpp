#include "doctest.h"

#include "rauzy/errors.hpp"
#include "rauzy/symmetry.hpp"
#include "test_support.hpp"

#include <json.hpp>

using namespace rauzy;
using namespace rauzy::testing;

namespace {

struct Fixture {
  LabeledPermutation root;
  RauzyDiagram diagram;
  OrbitFrame frame;
  explicit Fixture(LabeledPermutation p)
      : root(p), diagram(enumerate_class(p)), frame(rotation_map(p)) {}
  Renumbering swap(const std::vector<std::pair<std::string, std::string>>
                       &transpositions) const {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto &[x, y] : transpositions) {
      pairs.emplace_back(x, y);
      pairs.emplace_back(y, x);
    }
    return Renumbering::from_tokens(*root.alphabet(), pairs);
  }
  std::size_t orbit_index(const std::string &token) const {
    const Letter l = *root.alphabet()->find(token);
    return frame.locate(l)->second;
  }
};

// Every bijection of the alphabet commuting with T and fixing the special
// orbit pointwise, by scanning all d! bijections.
std::vector<Renumbering> candidate_oracle(const OrbitFrame &frame) {
  const auto &m = frame.marking();
  const std::size_t d = frame.letters();
  std::vector<Letter> img(d);
  std::iota(img.begin(), img.end(), Letter(0));
  std::vector<Renumbering> out;
  do {
    bool ok = true;
    for (std::size_t a = 0; a < d && ok; ++a) {
      ok = img[m.rotation[a]] == m.rotation[img[a]];
      if (m.orbit_of[a] == m.special_orbit)
        ok = ok && img[a] == a;
    }
    if (ok)
      out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Relabelings mapping the root into the class, scanning all d! bijections.
std::vector<Renumbering> root_membership_oracle(const RauzyDiagram &D) {
  const std::size_t d = D.letters();
  const auto root = D.rows(D.root());
  std::vector<Letter> img(d), image(2 * d);
  std::iota(img.begin(), img.end(), Letter(0));
  std::vector<Renumbering> out;
  do {
    for (std::size_t j = 0; j < 2 * d; ++j)
      image[j] = img[root[j]];
    if (D.find_rows(image))
      out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

} // namespace

TEST_CASE("OrbitFrame of the Yoccoz permutation") {
  Fixture y(yoccoz());
  REQUIRE(y.frame.classes().size() == 1);
  const auto &cls = y.frame.classes()[0];
  CHECK(cls.degree == 1);
  CHECK(cls.multiplicity() == 3);
  // Base points are the smallest interned letters: b2, a2, c1.
  const auto &a = *y.root.alphabet();
  CHECK(a.token(y.frame.base_point(0, 0)) == "b2");
  CHECK(a.token(y.frame.base_point(0, 1)) == "a2");
  CHECK(a.token(y.frame.base_point(0, 2)) == "c1");
  CHECK(y.frame.candidate_order() == 48);
  CHECK(y.frame.has_odd_degree());
  CHECK_FALSE(y.frame.locate(*a.find("0")).has_value());
}

TEST_CASE("build_candidate_group") {
  SUBCASE("Yoccoz: order 2^3 * 3! = 48") {
    Fixture y(yoccoz());
    auto g = build_candidate_group(y.frame);
    CHECK(g.order() == 48);
    CHECK(g.elements() == candidate_oracle(y.frame));
    g.check_group_axioms();
  }
  SUBCASE("torus: trivial") {
    Fixture t(perm("A B\nB A"));
    CHECK(build_candidate_group(t.frame).order() == 1);
  }
  SUBCASE("rotation class on four letters: swap of C and D") {
    Fixture r(perm("A B C D\nB C D A"));
    auto g = build_candidate_group(r.frame);
    CHECK(g.order() == 2);
    CHECK(g.contains(r.swap({{"C", "D"}})));
    CHECK(g.elements() == candidate_oracle(r.frame));
  }
  SUBCASE("agrees with the brute-force scan on random permutations") {
    std::mt19937_64 rng(test_seed());
    for (std::size_t d = 3; d <= 8; ++d) {
      auto alphabet = letters(d);
      for (int i = 0; i < 10; ++i) {
        OrbitFrame f(rotation_map(random_irreducible(alphabet, rng)));
        REQUIRE(build_candidate_group(f).elements() == candidate_oracle(f));
      }
    }
  }
}

TEST_CASE("coordinates") {
  Fixture y(yoccoz());
  const std::size_t ia = y.orbit_index("a1"), ib = y.orbit_index("b1"),
                    ic = y.orbit_index("c1");

  SUBCASE("identity") {
    auto c = to_coordinates(Renumbering::identity(9), y.frame);
    CHECK(c == identity_element(y.frame));
  }
  SUBCASE("swap inside the a-orbit") {
    auto c = to_coordinates(y.swap({{"a1", "a2"}}), y.frame).classes[0];
    CHECK(c.exponents[ia] == 1);
    CHECK(c.exponents[ib] == 0);
    CHECK(c.exponents[ic] == 0);
    CHECK(c.tau == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("exchange of the a- and b-orbits") {
    auto c = to_coordinates(y.swap({{"a1", "b1"}, {"a2", "b2"}}), y.frame)
                 .classes[0];
    CHECK(c.exponents == std::vector<int>{0, 0, 0});
    CHECK(c.tau[ia] == ib);
    CHECK(c.tau[ib] == ia);
    CHECK(c.tau[ic] == ic);
  }
  SUBCASE("elements outside G' are rejected") {
    CHECK_THROWS_AS(to_coordinates(y.swap({{"a1", "b1"}}), y.frame),
                    InvalidArgument);
    CHECK_THROWS_AS(to_coordinates(y.swap({{"0", "inf"}}), y.frame),
                    InvalidArgument);
  }
  SUBCASE("round trips and the split-extension law") {
    auto g = build_candidate_group(y.frame);
    for (std::size_t i = 0; i < g.order(); ++i) {
      const auto &x = g.elements()[i];
      const auto &cx = g.coordinates()[i];
      REQUIRE(from_coordinates(cx, y.frame) == x);
      REQUIRE(to_coordinates(from_coordinates(cx, y.frame), y.frame) == cx);
      REQUIRE(multiply(y.frame, cx, inverse(y.frame, cx)) ==
              identity_element(y.frame));
      for (std::size_t j = 0; j < g.order(); ++j)
        REQUIRE(to_coordinates(x.compose(g.elements()[j]), y.frame) ==
                multiply(y.frame, cx, g.coordinates()[j]));
    }
  }
}

TEST_CASE("coordinate law on mixed degree classes") {
  // H(0 | 2, 0) on six letters: one class of 3-cycles, one of fixed points.
  std::mt19937_64 rng(test_seed() + 5);
  auto alphabet = letters(7);
  std::size_t tested = 0;
  for (int i = 0; i < 400 && tested < 5; ++i) {
    auto p = random_irreducible(alphabet, rng);
    OrbitFrame f(rotation_map(p));
    if (f.classes().size() < 2 || f.candidate_order() > 200)
      continue;
    ++tested;
    auto g = build_candidate_group(f);
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b)
        REQUIRE(to_coordinates(g.elements()[a].compose(g.elements()[b]), f) ==
                multiply(f, g.coordinates()[a], g.coordinates()[b]));
  }
  CHECK(tested > 0);
}

TEST_CASE("automorphism_group") {
  SUBCASE("Yoccoz: order 24, equal to the d! scan") {
    Fixture y(yoccoz());
    auto aut = automorphism_group(y.diagram, build_candidate_group(y.frame),
                                  y.frame);
    CHECK(aut.order() == 24);
    CHECK(aut.elements() == root_membership_oracle(y.diagram));
    for (const auto &sigma : aut.elements())
      CHECK(is_diagram_automorphism(y.diagram, sigma));
    CHECK_FALSE(is_diagram_automorphism(y.diagram, y.swap({{"a1", "a2"}})));
  }
  SUBCASE("rotation class on four letters: G = G'") {
    Fixture r(perm("A B C D\nB C D A"));
    auto g = build_candidate_group(r.frame);
    auto aut = automorphism_group(r.diagram, g, r.frame);
    CHECK(aut.order() == 2);
    CHECK(aut.elements() == g.elements());
    CHECK(aut.elements() == brute_force_automorphisms(r.diagram));
  }
  SUBCASE("torus: trivial") {
    Fixture t(perm("A B\nB A"));
    auto aut = automorphism_group(t.diagram, build_candidate_group(t.frame),
                                  t.frame);
    CHECK(aut.order() == 1);
  }
  SUBCASE("truncated diagrams are refused") {
    Fixture y(yoccoz());
    auto cut = enumerate_class(y.root, 100);
    CHECK_THROWS_AS(
        automorphism_group(cut, build_candidate_group(y.frame), y.frame),
        TruncatedDiagramError);
  }
}

TEST_CASE("brute force finds nothing outside G' for small alphabets") {
  for (const char *text : {"A B\nB A", "A B C\nC B A", "A B C D\nB C D A",
                           "A B C D\nD C B A", "A B C D\nC D B A"}) {
    Fixture f(perm(text));
    auto brute = brute_force_automorphisms(f.diagram);
    auto g = build_candidate_group(f.frame);
    for (const auto &sigma : brute)
      CHECK(g.contains(sigma));
  }
  Fixture y(yoccoz());
  CHECK_THROWS_AS(brute_force_automorphisms(y.diagram), InvalidArgument);
}

TEST_CASE("phi") {
  Fixture y(yoccoz());
  const std::size_t ia = y.orbit_index("a1"), ib = y.orbit_index("b1");
  CHECK(phi(identity_element(y.frame), y.frame) == 1);

  auto flip_a = identity_element(y.frame);
  flip_a.classes[0].exponents[ia] = 1;
  CHECK(phi(flip_a, y.frame) == -1);

  auto flip_a_swap_ab = flip_a;
  std::swap(flip_a_swap_ab.classes[0].tau[ia], flip_a_swap_ab.classes[0].tau[ib]);
  CHECK(phi(flip_a_swap_ab, y.frame) == 1);

  // Each single sign flip leaves G.
  auto aut = automorphism_group(y.diagram, build_candidate_group(y.frame),
                                y.frame);
  for (const char *x : {"a1", "b1", "c1"}) {
    std::string partner = std::string(1, x[0]) + "2";
    CHECK_FALSE(aut.contains(y.swap({{x, partner}})));
  }

  CHECK(signature({0, 1, 2}) == 1);
  CHECK(signature({1, 0, 2}) == -1);
  CHECK(signature({1, 2, 0}) == 1);
}

TEST_CASE("phi is a homomorphism and its kernel is Aut(D)") {
  Fixture y(yoccoz());
  auto g = build_candidate_group(y.frame);
  auto aut = automorphism_group(y.diagram, g, y.frame);
  std::size_t kernel = 0;
  for (std::size_t i = 0; i < g.order(); ++i) {
    const int v = phi(g.coordinates()[i], y.frame);
    kernel += v == 1;
    CHECK((v == 1) == aut.contains(g.elements()[i]));
    for (std::size_t j = 0; j < g.order(); ++j)
      REQUIRE(phi(multiply(y.frame, g.coordinates()[i], g.coordinates()[j]),
                  y.frame) == v * phi(g.coordinates()[j], y.frame));
  }
  CHECK(kernel == 24);
  CHECK(g.order() == 2 * aut.order());
}

TEST_CASE("find_lemma_witness") {
  SUBCASE("Yoccoz") {
    Fixture y(yoccoz());
    auto aut = automorphism_group(y.diagram, build_candidate_group(y.frame),
                                  y.frame);
    auto w = find_lemma_witness(aut, y.frame, 0);
    REQUIRE(w.status == LemmaWitness::Status::Found);
    const auto &c = w.coordinates->classes[0];
    std::vector<std::size_t> moved;
    for (std::size_t j = 0; j < 3; ++j)
      if (c.tau[j] != j)
        moved.push_back(j);
    REQUIRE(moved.size() == 2);
    CHECK((c.exponents[moved[0]] + c.exponents[moved[1]]) % 2 == 1);
    CHECK(w.square_order == 2);
    CHECK(w.square_matches);
    CHECK(element_order(w.element->compose(*w.element)) == 2);
  }
  SUBCASE("even degrees: not applicable") {
    Fixture r(perm("A B C D\nB C D A"));
    auto aut = automorphism_group(r.diagram, build_candidate_group(r.frame),
                                  r.frame);
    CHECK(find_lemma_witness(aut, r.frame, 0).status ==
          LemmaWitness::Status::NotApplicable);
  }
  SUBCASE("torus has no degree classes") {
    Fixture t(perm("A B\nB A"));
    CHECK(t.frame.classes().empty());
    CHECK(verify_theorem(t.diagram).witnesses.empty());
  }
}

TEST_CASE("verify_theorem") {
  SUBCASE("Yoccoz") {
    auto r = verify_theorem(enumerate_class(yoccoz()));
    CHECK(r.passed());
    CHECK(r.g_prime_order == 48);
    CHECK(r.aut_order == 24);
    CHECK(r.epsilon_den == 2);
    CHECK(r.kernel_equals_aut);
    CHECK_FALSE(r.hyperelliptic);
    REQUIRE(r.witnesses.size() == 1);
    CHECK(r.witnesses[0].status == LemmaWitness::Status::Found);
  }
  SUBCASE("rotation class: even case") {
    auto r = verify_theorem(enumerate_class(perm("A B C D\nB C D A")));
    CHECK(r.passed());
    CHECK(r.g_prime_order == 2);
    CHECK(r.aut_order == 2);
    CHECK(r.epsilon_den == 1);
  }
  SUBCASE("hyperelliptic: formula checks are informational") {
    auto r = verify_theorem(enumerate_class(perm("A B C D E\nE D C B A")));
    CHECK(r.hyperelliptic);
    CHECK(r.passed());
    CHECK(std::find(r.notes.begin(), r.notes.end(),
                    "hyperelliptic: theorem out of scope") != r.notes.end());
  }
  SUBCASE("json report fields") {
    auto p = yoccoz();
    auto doc = nlohmann::json::parse(
        report_json(verify_theorem(enumerate_class(p)), *p.alphabet()));
    CHECK(doc["g_prime_order"] == 48);
    CHECK(doc["aut_order"] == 24);
    CHECK(doc["epsilon"] == "1/2");
    CHECK(doc["formula_order"] == 48);
    CHECK(doc["kernel_equals_aut"] == true);
    CHECK(doc["hyperelliptic"] == false);
    CHECK(doc["witnesses"].size() == 1);
    CHECK(doc["passed"] == true);
  }
}

TEST_CASE("element rendering") {
  Fixture y(yoccoz());
  const auto &a = *y.root.alphabet();
  CHECK(cycle_notation(Renumbering::identity(9), a) == "()");
  CHECK(cycle_notation(y.swap({{"a1", "b1"}, {"a2", "b2"}}), a) ==
        "(b2 a2)(b1 a1)");
  CHECK(coordinate_string(identity_element(y.frame)) == "[(0,0,0) id]");
  CHECK(element_order(y.swap({{"a1", "a2"}})) == 2);
}
