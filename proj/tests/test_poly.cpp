/*
   Copyright 2026 The hesstop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "hesstop/poly.hpp"

#include <catch2/catch_amalgamated.hpp>

#include "oracle.hpp"

using hesstop::exact::ExactInt;
using hesstop::exact::ExactRat;
using hesstop::poly::HPoly;
using hesstop::poly::hp_diff;
using hesstop::poly::hp_linear_combine;
using hesstop::poly::hp_mul;
using hesstop::poly::PlaneSign;
using hesstop::poly::restrict_to_chart;
using hesstop::poly::sign_on_punctured_plane;
using hesstop::poly::sturm_real_roots;
using hesstop::poly::UPoly;
using hesstop::poly::Var;

namespace {

HPoly make(int degree, std::initializer_list<int> coeffs) {
  std::vector<ExactRat> c;
  for (int v : coeffs) c.emplace_back(v);
  return HPoly(degree, std::move(c));
}

UPoly umake(std::initializer_list<int> coeffs) {
  std::vector<ExactRat> c;
  for (int v : coeffs) c.emplace_back(v);
  return UPoly(std::move(c));
}

}  // namespace

TEST_CASE("hp_mul") {
  const HPoly a = make(2, {1, 0, 1});   // x^2+y^2
  const HPoly b = make(2, {1, 0, -1});  // x^2-y^2
  CHECK(hp_mul(a, b) == make(4, {1, 0, 0, 0, -1}));
  CHECK(hp_mul(HPoly(0), b) == HPoly(2));  // zero of degree 0 times b
  const HPoly lin = make(1, {1, 1});
  CHECK(hp_mul(lin, lin) == make(2, {1, 2, 1}));
}

TEST_CASE("hp_diff") {
  const HPoly f = make(3, {1, 0, -3, 0});  // x^3 - 3xy^2
  CHECK(hp_diff(f, Var::kX) == make(2, {3, 0, -3}));
  CHECK(hp_diff(f, Var::kY) == make(2, {0, -6, 0}));
  CHECK(hp_diff(make(4, {0, 0, 0, 0, 1}), Var::kX) == HPoly(3));
  CHECK(hp_diff(HPoly(0, {ExactRat(5)}), Var::kX) == HPoly(0));
}

TEST_CASE("hp_linear_combine") {
  const HPoly x2 = make(2, {1, 0, 0});
  const HPoly y2 = make(2, {0, 0, 1});
  CHECK(hp_linear_combine(ExactRat(1), x2, ExactRat(1), y2) ==
        make(2, {1, 0, 1}));
  CHECK(hp_linear_combine(ExactRat(1), x2, ExactRat(-1), x2) == HPoly(2));
  const HPoly xy = make(2, {0, 1, 0});
  CHECK(hp_linear_combine(ExactRat(2), xy, ExactRat(3), xy) ==
        make(2, {0, 5, 0}));
  CHECK_THROWS_AS(
      hp_linear_combine(ExactRat(1), x2, ExactRat(1), make(3, {0, 0, 0, 0})),
      std::domain_error);
}

TEST_CASE("ring laws on random inputs") {
  auto g = oracle::rng(11);
  for (int rep = 0; rep < 40; ++rep) {
    const HPoly a = oracle::random_hpoly(g, 3), b = oracle::random_hpoly(g, 4),
                c = oracle::random_hpoly(g, 4);
    REQUIRE(hp_mul(a, b) == hp_mul(b, a));
    REQUIRE(hp_mul(hp_mul(a, b), c) == hp_mul(a, hp_mul(b, c)));
    REQUIRE(hp_mul(a, b + c) == hp_mul(a, b) + hp_mul(a, c));
  }
}

TEST_CASE("Euler identity for homogeneous polynomials") {
  auto g = oracle::rng(23);
  for (int deg = 1; deg <= 20; ++deg) {
    const HPoly f = oracle::random_hpoly(g, deg);
    // n f = x f_x + y f_y; multiply by x and y inside the graded ring
    const HPoly x = HPoly(1, {ExactRat(1), ExactRat(0)});
    const HPoly y = HPoly(1, {ExactRat(0), ExactRat(1)});
    const HPoly lhs = hesstop::poly::hp_scale(ExactRat(deg), f);
    const HPoly rhs =
        hp_mul(x, hp_diff(f, Var::kX)) + hp_mul(y, hp_diff(f, Var::kY));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("restrict_to_chart") {
  const auto [u1, s1] = restrict_to_chart(make(2, {1, 0, 1}));
  CHECK(u1 == umake({1, 0, 1}));
  CHECK(s1 == 1);
  const auto [u2, s2] = restrict_to_chart(make(2, {-36, 0, -36}));
  CHECK(u2 == umake({-36, 0, -36}));
  CHECK(s2 == -36);
  const auto [u3, s3] = restrict_to_chart(make(3, {0, 1, 0, 0}));  // x^2 y
  CHECK(u3 == umake({0, 1}));
  CHECK(s3 == 0);
}

TEST_CASE("restrict_to_chart is multiplicative in the chart component") {
  auto g = oracle::rng(31);
  for (int rep = 0; rep < 40; ++rep) {
    const HPoly a = oracle::random_hpoly(g, 3), b = oracle::random_hpoly(g, 5);
    REQUIRE(restrict_to_chart(hp_mul(a, b)).first ==
            hesstop::poly::u_mul(restrict_to_chart(a).first,
                                 restrict_to_chart(b).first));
  }
}

TEST_CASE("sturm_real_roots on fixed cases") {
  CHECK(sturm_real_roots(umake({1, 0, 1})).distinct_real_roots == 0);
  CHECK(sturm_real_roots(umake({-1, 0, 1})).distinct_real_roots == 2);
  CHECK(sturm_real_roots(umake({1, -2, 1})).distinct_real_roots == 1);
  CHECK(sturm_real_roots(umake({7})).distinct_real_roots == 0);
  CHECK(sturm_real_roots(umake({0, 1})).distinct_real_roots == 1);
  CHECK_THROWS_AS(sturm_real_roots(UPoly()), std::domain_error);
}

TEST_CASE("sturm count matches a bisection count on known products") {
  auto g = oracle::rng(101);
  std::uniform_int_distribution<int> root_pick(-6, 6);
  std::uniform_int_distribution<int> nroots(0, 4);
  std::uniform_int_distribution<int> nquads(0, 2);
  for (int rep = 0; rep < 60; ++rep) {
    // distinct integer roots, each simple, times irreducible quadratics
    std::vector<int> roots;
    const int want = nroots(g);
    while (static_cast<int>(roots.size()) < want) {
      const int r = root_pick(g);
      if (std::find(roots.begin(), roots.end(), r) == roots.end())
        roots.push_back(r);
    }
    UPoly u = umake({1});
    for (int r : roots) u = hesstop::poly::u_mul(u, umake({-r, 1}));
    for (int q = nquads(g); q > 0; --q) {
      const int a = root_pick(g);
      u = hesstop::poly::u_mul(u, umake({a * a + 1, 2 * a, 1}));  // (t+a)^2+1
    }
    const auto cert = sturm_real_roots(u);
    REQUIRE(cert.distinct_real_roots == static_cast<int>(roots.size()));
    REQUIRE(cert.distinct_real_roots == oracle::sign_change_roots(u, -8, 8));
    REQUIRE(cert.variations_at_minus_inf - cert.variations_at_plus_inf ==
            cert.distinct_real_roots);
  }
}

TEST_CASE("sturm counts distinct roots under multiplicity") {
  // (t-1)^2 (t+2) has two distinct real roots
  const UPoly u = hesstop::poly::u_mul(
      hesstop::poly::u_mul(umake({-1, 1}), umake({-1, 1})), umake({2, 1}));
  CHECK(sturm_real_roots(u).distinct_real_roots == 2);
}

TEST_CASE("sign_on_punctured_plane") {
  CHECK(sign_on_punctured_plane(make(2, {1, 0, 1})) == PlaneSign::kPositive);
  CHECK(sign_on_punctured_plane(make(2, {-36, 0, -36})) ==
        PlaneSign::kNegative);
  CHECK(sign_on_punctured_plane(make(2, {1, 0, -1})) ==
        PlaneSign::kMixedOrVanishing);
  // odd degree is never one-signed
  CHECK(sign_on_punctured_plane(make(3, {1, 1, 1, 1})) ==
        PlaneSign::kMixedOrVanishing);
  // vanishing on an axis
  CHECK(sign_on_punctured_plane(make(4, {0, 0, 1, 0, 0})) ==
        PlaneSign::kMixedOrVanishing);
  CHECK(sign_on_punctured_plane(HPoly(0, {ExactRat(3)})) ==
        PlaneSign::kPositive);
  CHECK_THROWS_AS(sign_on_punctured_plane(HPoly(2)), std::domain_error);
}

TEST_CASE("positive decisions agree with dense circle sampling") {
  auto g = oracle::rng(77);
  int positives = 0;
  for (int rep = 0; rep < 120; ++rep) {
    // squares plus a random multiple of x^2+y^2 raised to a power: often positive
    const HPoly a = oracle::random_hpoly(g, 2);
    HPoly f = hp_mul(a, a);
    std::uniform_int_distribution<int> add(0, 3);
    f = f + hesstop::poly::hp_scale(ExactRat(add(g)),
                                    hesstop::poly::circle_power(2));
    if (f.is_zero()) continue;
    const auto s = sign_on_punctured_plane(f);
    const double mn = oracle::circle_min(f);
    if (s == PlaneSign::kPositive) {
      ++positives;
      REQUIRE(mn > 0.0);
    }
    if (mn < -1e-9) REQUIRE(s != PlaneSign::kPositive);
  }
  REQUIRE(positives > 0);  // the sample must actually exercise the branch
}

TEST_CASE("polynomial json round trip and rejection") {
  const HPoly f = make(3, {1, 0, -3, 0});
  const auto j = hesstop::poly::hpoly_to_json(f);
  CHECK(hesstop::poly::hpoly_from_json(j) == f);

  nlohmann::json bad = {{"degree", 2}, {"coeffs", {"1", "2"}}};
  CHECK_THROWS_AS(hesstop::poly::hpoly_from_json(bad), std::invalid_argument);
  nlohmann::json bad2 = {{"degree", -1}, {"coeffs", nlohmann::json::array()}};
  CHECK_THROWS_AS(hesstop::poly::hpoly_from_json(bad2), std::invalid_argument);
  nlohmann::json bad3 = {{"degree", 1}, {"coeffs", {"1", "x"}}};
  CHECK_THROWS_AS(hesstop::poly::hpoly_from_json(bad3), std::invalid_argument);
  nlohmann::json bad4 = {{"coeffs", {"1"}}};
  CHECK_THROWS_AS(hesstop::poly::hpoly_from_json(bad4), std::invalid_argument);
}
