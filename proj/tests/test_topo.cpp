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

#include "hesstop/topo.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "oracle.hpp"

using namespace hesstop::topo;
using hesstop::diffgeo::arnold_family;
using hesstop::diffgeo::arnold_P;
using hesstop::diffgeo::second_form;
using hesstop::exact::ExactInt;
using hesstop::exact::ExactRat;
using hesstop::poly::circle_power;
using hesstop::poly::HPoly;

namespace {

HPoly make(int degree, std::initializer_list<int> coeffs) {
  std::vector<ExactRat> c;
  for (int v : coeffs) c.emplace_back(v);
  return HPoly(degree, std::move(c));
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("classify basic") {
  CHECK(classify(make(2, {1, 0, -1})).verdict == Verdict::kHyperbolic);
  CHECK(classify(make(2, {1, 0, 1})).verdict == Verdict::kElliptic);
  // x^2 y^2: det Hess vanishes on the axes
  CHECK(classify(make(4, {0, 0, 1, 0, 0})).verdict == Verdict::kNeither);
  CHECK_THROWS_AS(classify(make(1, {1, 0})), std::domain_error);
}

TEST_CASE("classify the rotational family") {
  for (long m = 2; m <= 6; ++m) {
    for (long n = m; n < m * m; n += 2) {
      INFO("m=" << m << " n=" << n);
      REQUIRE(classify(arnold_family(m, n)).verdict == Verdict::kHyperbolic);
    }
  }
  // the boundary case n = m^2 degenerates
  CHECK(classify(hesstop::poly::hp_mul(circle_power(1), arnold_P(2))).verdict ==
        Verdict::kNeither);
}

TEST_CASE("classify circle powers as elliptic") {
  for (int k = 1; k <= 10; ++k)
    REQUIRE(classify(circle_power(k)).verdict == Verdict::kElliptic);
}

TEST_CASE("classify the rotational polynomials themselves") {
  for (long m = 2; m <= 20; ++m)
    REQUIRE(classify(arnold_P(m)).verdict == Verdict::kHyperbolic);
}

TEST_CASE("verdict json carries the Sturm evidence") {
  const auto v = classify(make(2, {1, 0, -1}));
  const auto j = verdict_to_json(v);
  CHECK(j["verdict"] == "HYPERBOLIC");
  CHECK(j["certificate"]["sign"] == "NEGATIVE");
  CHECK(j["certificate"]["sturm"]["chain"].is_array());
  CHECK(!j["certificate"]["sturm"]["chain"].empty());
}

TEST_CASE("asymptotic_angle") {
  const auto q = second_form(make(2, {1, 0, -1}));
  for (double theta : {0.0, 0.7, 2.5}) {
    const auto [a, b] = asymptotic_angle(q, theta);
    CHECK_THAT(a, Catch::Matchers::WithinAbs(kPi / 4, 1e-12));
    CHECK_THAT(b, Catch::Matchers::WithinAbs(3 * kPi / 4, 1e-12));
  }
  const auto q3 = second_form(make(3, {1, 0, -3, 0}));
  const auto [a3, b3] = asymptotic_angle(q3, 0.0);
  CHECK_THAT(a3, Catch::Matchers::WithinAbs(kPi / 4, 1e-12));
  CHECK_THAT(b3, Catch::Matchers::WithinAbs(3 * kPi / 4, 1e-12));
  // sign flip leaves the zero set unchanged
  const auto qneg = hesstop::diffgeo::qf_scale(ExactRat(-1), q);
  const auto [an, bn] = asymptotic_angle(qneg, 1.1);
  const auto [ap, bp] = asymptotic_angle(q, 1.1);
  CHECK_THAT(an, Catch::Matchers::WithinAbs(ap, 1e-12));
  CHECK_THAT(bn, Catch::Matchers::WithinAbs(bp, 1e-12));
  // elliptic form has no asymptotic directions
  CHECK_THROWS_AS(asymptotic_angle(second_form(make(2, {1, 0, 1})), 0.0),
                  std::domain_error);
}

TEST_CASE("index of the rotational forms") {
  for (long m = 2; m <= 6; ++m) {
    const auto r = index_at_origin(second_form(arnold_P(m)));
    INFO("m=" << m);
    REQUIRE(r.converged);
    REQUIRE(r.value_times_two == ExactInt(2 - m));
    REQUIRE(r.max_step_turn < kPi / 4);
  }
}

TEST_CASE("index of scaled family members") {
  const long cases[][2] = {{3, 5}, {4, 6}, {5, 7}};
  for (const auto& [m, n] : cases) {
    const auto r = index_at_origin(second_form(arnold_family(m, n)));
    INFO("m=" << m << " n=" << n);
    REQUIRE(r.converged);
    REQUIRE(r.value_times_two == ExactInt(2 - m));
  }
}

TEST_CASE("index rejects non-hyperbolic forms") {
  CHECK_THROWS_AS(index_at_origin(second_form(make(2, {1, 0, 1}))),
                  std::domain_error);
}

TEST_CASE("index is invariant under positive-definite scaling of the form") {
  const auto q = second_form(arnold_P(4));
  const auto scaled = hesstop::diffgeo::qf_scale_poly(circle_power(2), q);
  const auto r1 = index_at_origin(q);
  const auto r2 = index_at_origin(scaled);
  REQUIRE(r1.converged);
  REQUIRE(r2.converged);
  CHECK(r1.value_times_two == r2.value_times_two);
}

TEST_CASE("doubling samples halves the step turn") {
  const auto q = second_form(arnold_P(5));
  const auto a = index_at_origin(q, 512);
  const auto b = index_at_origin(q, 1024);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.samples_used == 512);
  CHECK(b.samples_used == 1024);
  CHECK(b.max_step_turn < 0.6 * a.max_step_turn);
  CHECK(b.max_step_turn > 0.4 * a.max_step_turn);
  CHECK(a.value_times_two == b.value_times_two);
}

TEST_CASE("unconverged result when the sample cap is too small") {
  // the field of this member turns far too fast for 16 samples
  const auto q = second_form(arnold_family(6, 30));
  const auto r = index_at_origin(q, 4, 16);
  CHECK(!r.converged);
  CHECK(r.samples_used <= 16);
}

TEST_CASE("confirmation pass rejects a resonant constant alias") {
  // at 8 samples the field of this polynomial aliases to a constant; the
  // confirmation pass at 16 samples disagrees, and 16 cannot itself be
  // confirmed under the cap
  const auto q = second_form(arnold_P(20));
  const auto capped = index_at_origin(q, 4, 16);
  CHECK(!capped.converged);
  // at the default resolution the doubling loop crosses the field's
  // Nyquist rate before accepting, and the value is right
  const auto full = index_at_origin(q);
  REQUIRE(full.converged);
  CHECK(full.value_times_two == ExactInt(2 - 20));
  CHECK(full.samples_used >= 128);
}

TEST_CASE("phi certification on a good pair") {
  const auto rep = isotopy_phi_certify(arnold_P(4), circle_power(1), 9, 64);
  CHECK(rep.hypothesis_ok);
  CHECK(rep.certificates_pass);
  CHECK(rep.pass);
  CHECK(rep.n == 6);
  CHECK(rep.grid_min > 0.0);
  for (const auto& c : rep.sign_certs) {
    INFO(c.name);
    CHECK(c.pass);
  }
  for (const auto& c : rep.exact_certs) {
    INFO(c.name);
    CHECK(c.pass);
  }
}

TEST_CASE("phi certification flags the boundary pair") {
  // m=2, k=1 gives n = 4 = m^2: outside the hypothesis, and the t=1
  // endpoint form is genuinely degenerate.
  const auto rep = isotopy_phi_certify(arnold_P(2), circle_power(1), 9, 64);
  CHECK(!rep.hypothesis_ok);
  CHECK(std::find(rep.hypothesis_violations.begin(),
                  rep.hypothesis_violations.end(),
                  "n < m^2") != rep.hypothesis_violations.end());
  CHECK(!rep.pass);
  bool endpoint_failed = false;
  for (const auto& c : rep.sign_certs)
    if (c.name == "endpoint_f_discriminant_positive") endpoint_failed = !c.pass;
  CHECK(endpoint_failed);
}

TEST_CASE("psi certification") {
  for (long m : {2L, 3L, 4L}) {
    const auto rep = isotopy_psi_certify(arnold_P(m), circle_power(1), 9, 64);
    INFO("m=" << m);
    REQUIRE(rep.certificates_pass);
    REQUIRE(rep.pass);
    REQUIRE(rep.grid_min > 0.0);
  }
}

TEST_CASE("psi endpoint discriminant at a hand-checked point") {
  // m=2, k=1: Psi_1 = omega, and its discriminant at (1,0) is 20
  const auto omega =
      hesstop::diffgeo::omega_form(arnold_P(2), circle_power(1));
  const auto disc = hesstop::diffgeo::discriminant(omega);
  CHECK(disc.eval(ExactRat(1), ExactRat(0)) == ExactRat(20));
  CHECK(disc.eval(ExactRat(1), ExactRat(0)) > 0);
}

TEST_CASE("psi passes even on the phi boundary pair") {
  const auto rep = isotopy_psi_certify(arnold_P(2), circle_power(1), 9, 64);
  CHECK(!rep.hypothesis_ok);  // recorded
  CHECK(rep.certificates_pass);
  CHECK(rep.pass);
}

TEST_CASE("certify rejects a non-circle Q") {
  CHECK_THROWS_AS(
      isotopy_phi_certify(arnold_P(4), make(2, {1, 1, 1}), 5, 16),
      std::domain_error);
  CHECK_THROWS_AS(isotopy_psi_certify(arnold_P(4), make(1, {0, 1}), 5, 16),
                  std::domain_error);
}

TEST_CASE("endpoint indices agree for a certified pair") {
  const HPoly P = arnold_P(4);
  const HPoly f = hesstop::poly::hp_mul(P, circle_power(1));
  const auto ri = index_at_origin(second_form(P));
  const auto rf = index_at_origin(second_form(f));
  REQUIRE(ri.converged);
  REQUIRE(rf.converged);
  CHECK(ri.value_times_two == rf.value_times_two);
}

TEST_CASE("isotopy json shape") {
  const auto rep = isotopy_phi_certify(arnold_P(3), circle_power(1), 5, 32);
  const auto j = isotopy_to_json(rep);
  CHECK(j["path"] == "phi");
  CHECK(j["m"] == 3);
  CHECK(j["k"] == 1);
  CHECK(j["hypothesis"]["ok"] == true);
  CHECK(j["pass"] == true);
  CHECK(j["certificates"].is_array());
  CHECK(j["grid"]["min_discriminant"].is_number());
}
