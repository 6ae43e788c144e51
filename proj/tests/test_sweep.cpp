// Every labeled Rauzy class on up to six letters, checked end to end.
#include "doctest.h"

#include "rauzy/marking.hpp"
#include "rauzy/symmetry.hpp"
#include "test_support.hpp"

#include <map>

using namespace rauzy;
using namespace rauzy::testing;

TEST_CASE("structure theorem holds on every class with d <= 6") {
  for (std::size_t d = 2; d <= 6; ++d) {
    const auto roots = all_class_roots(d);
    std::size_t hyperelliptic = 0, odd = 0;
    std::map<std::string, std::size_t> per_stratum;
    for (const auto &root : roots) {
      const RauzyDiagram D = enumerate_class(root);
      const VerificationReport r = verify_theorem(D);
      INFO("d = " << d << ", root:\n" << root.to_string());
      INFO(report_text(r, *root.alphabet()));
      CHECK(r.passed());
      hyperelliptic += r.hyperelliptic;
      odd += r.has_odd_degree && !r.hyperelliptic;
      ++per_stratum[r.stratum];
    }
    MESSAGE("d = " << d << ": " << roots.size() << " classes, "
                   << hyperelliptic << " hyperelliptic, " << odd
                   << " non-hyperelliptic with odd degrees");
    for (const auto &[s, n] : per_stratum)
      MESSAGE("  " << s << ": " << n);
  }
}
