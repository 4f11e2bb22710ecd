#include <doctest.h>

#include "spinim/lemmas.hpp"

using namespace spinim;

// Linked against the library built with one deliberately flipped blade sign:
// the skew-action suite must notice it.
TEST_CASE("corrupted blade sign is caught by the skew-action suite") {
  const LieModel L = build_sl_n(2);
  double skew = -1.0;
  for (const auto& r : run_lemma_suite(L, 1, 200))
    if (r.name == "skew_action") skew = r.max_deviation;
  CHECK(skew > 1e-3);
  CHECK(blade_sign(0b011, 0b001) != blade_sign_oracle(0b011, 0b001));
}
