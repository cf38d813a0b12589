#include <cmath>

#include "doctest.h"
#include "setdist/ext_real.hpp"

using namespace setdist;

TEST_CASE("extended addition follows the minimization convention") {
  const ExtReal pinf = ExtReal::inf();
  const ExtReal ninf = ExtReal::neg_inf();
  CHECK((pinf + ninf).is_pos_inf());
  CHECK((ninf + pinf).is_pos_inf());
  CHECK((pinf + pinf).is_pos_inf());
  CHECK((ninf + ninf).is_neg_inf());
  CHECK((pinf + ExtReal(3.0)).is_pos_inf());
  CHECK((ninf + ExtReal(3.0)).is_neg_inf());
  CHECK((ExtReal(2.0) + ExtReal(0.5)).raw() == 2.5);
}

TEST_CASE("subtraction routes through the same convention") {
  // a - b = a + (-b), so inf - inf = inf: the conservative reading for
  // minimization-oriented error bounds.
  CHECK((ExtReal::inf() - ExtReal::inf()).is_pos_inf());
  CHECK((ExtReal::neg_inf() - ExtReal::neg_inf()).is_pos_inf());
  CHECK((ExtReal(1.0) - ExtReal(4.0)).raw() == -3.0);
}

TEST_CASE("total order: -inf < finite < +inf") {
  CHECK(ExtReal::neg_inf() < ExtReal(-1e308));
  CHECK(ExtReal(1e308) < ExtReal::inf());
  CHECK(ExtReal::neg_inf() < ExtReal::inf());
  CHECK(ExtReal(1.0) <= ExtReal(1.0));
  CHECK(ext_min(ExtReal::inf(), ExtReal(2.0)).raw() == 2.0);
  CHECK(ext_max(ExtReal::neg_inf(), ExtReal(2.0)).raw() == 2.0);
}

TEST_CASE("ext_abs_diff is conservative at infinity") {
  CHECK(ext_abs_diff(ExtReal::inf(), ExtReal::inf()).is_pos_inf());
  CHECK(ext_abs_diff(ExtReal(1.0), ExtReal(3.5)).raw() == 2.5);
  CHECK(ext_abs_diff(ExtReal(3.5), ExtReal(1.0)).raw() == 2.5);
  CHECK(ext_abs_diff(ExtReal::neg_inf(), ExtReal(0.0)).is_pos_inf());
}

TEST_CASE("never NaN") {
  const ExtReal candidates[] = {ExtReal::inf(), ExtReal::neg_inf(), ExtReal(0.0),
                                ExtReal(-2.5)};
  for (ExtReal a : candidates)
    for (ExtReal b : candidates) {
      CHECK_FALSE(std::isnan((a + b).raw()));
      CHECK_FALSE(std::isnan((a - b).raw()));
    }
}

TEST_CASE("printing") {
  CHECK(to_string(ExtReal::inf()) == "inf");
  CHECK(to_string(ExtReal::neg_inf()) == "-inf");
  CHECK(to_string(ExtReal(0.25)) == "0.25");
}
