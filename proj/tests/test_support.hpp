#pragma once

#include "rauzy/diagram.hpp"
#include "rauzy/permutation.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace rauzy::testing {

inline LabeledPermutation perm(const std::string &text) {
  return parse_permutation(text);
}

inline LabeledPermutation yoccoz() {
  return perm("-inf b2 a2 b1 a1 c1 0 c2 inf\n"
              "inf b1 a2 b2 a1 c2 0 c1 -inf\n");
}

/// Seed for randomized tests: RAUZY_TEST_SEED if set, else a fixed default.
inline std::uint64_t test_seed() {
  if (const char *s = std::getenv("RAUZY_TEST_SEED"))
    return std::strtoull(s, nullptr, 10);
  return 20161107;
}

inline AlphabetPtr letters(std::size_t d) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < d; ++i)
    tokens.push_back(std::string(1, char('A' + i)));
  return std::make_shared<const Alphabet>(tokens);
}

inline LabeledPermutation random_irreducible(const AlphabetPtr &alphabet,
                                             std::mt19937_64 &rng) {
  const std::size_t d = alphabet->size();
  std::vector<Letter> top(d), bottom(d);
  std::iota(top.begin(), top.end(), Letter(0));
  std::iota(bottom.begin(), bottom.end(), Letter(0));
  for (;;) {
    std::shuffle(top.begin(), top.end(), rng);
    std::shuffle(bottom.begin(), bottom.end(), rng);
    LabeledPermutation p(alphabet, top, bottom);
    if (is_irreducible(p))
      return p;
  }
}

inline Renumbering random_renumbering(std::size_t d, std::mt19937_64 &rng) {
  std::vector<Letter> img(d);
  std::iota(img.begin(), img.end(), Letter(0));
  std::shuffle(img.begin(), img.end(), rng);
  return Renumbering(img);
}

/// One representative root per labeled Rauzy class over the letters A.., d
/// letters, found by sweeping every irreducible permutation.
inline std::vector<LabeledPermutation> all_class_roots(std::size_t d) {
  auto alphabet = letters(d);
  std::vector<Letter> top(d), bottom(d);
  std::iota(top.begin(), top.end(), Letter(0));
  std::unordered_set<std::string> covered;
  std::vector<LabeledPermutation> roots;
  do {
    std::iota(bottom.begin(), bottom.end(), Letter(0));
    do {
      LabeledPermutation p(alphabet, top, bottom);
      if (!is_irreducible(p) || covered.count(canonical_encoding(p)))
        continue;
      RauzyDiagram D = enumerate_class(p);
      for (VertexId v = 0; v < D.size(); ++v)
        covered.insert(canonical_encoding(D.vertex(v)));
      roots.push_back(p);
    } while (std::next_permutation(bottom.begin(), bottom.end()));
  } while (std::next_permutation(top.begin(), top.end()));
  return roots;
}

} // namespace rauzy::testing
