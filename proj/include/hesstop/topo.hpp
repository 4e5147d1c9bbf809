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

#ifndef HESSTOP_TOPO_HPP
#define HESSTOP_TOPO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hesstop/diffgeo.hpp"
#include "hesstop/exact.hpp"
#include "hesstop/poly.hpp"

// Topological layer: hyperbolic/elliptic verdicts with Sturm evidence, the
// winding index of the asymptotic line field at the origin, and the
// certified positivity of the two isotopy paths
//   Phi_t = omega + t (P II_Q)        (omega = 2 dP dQ + Q II_P)
//   Psi_t = Q II_P + 2t dP dQ
// for P = Re(x+iy)^m, Q = (x^2+y^2)^k, t in [0,1].

namespace hesstop::topo {

using diffgeo::QForm;
using exact::ExactInt;
using exact::ExactRat;
using poly::HPoly;
using poly::PlaneSign;
using poly::SignDecision;

enum class Verdict { kHyperbolic, kElliptic, kNeither };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHyperbolic: return "HYPERBOLIC";
    case Verdict::kElliptic: return "ELLIPTIC";
    case Verdict::kNeither: return "NEITHER";
  }
  return "?";
}

/// Verdict on the graph of f off the origin, decided exactly from the sign
/// of det Hess f on the punctured plane.
struct HypVerdict {
  HPoly polynomial;
  Verdict verdict = Verdict::kNeither;
  HPoly det_hess;
  SignDecision decision;  // sign decision for det_hess
};

inline HypVerdict classify(const HPoly& f) {
  if (f.degree() < 2) throw std::domain_error("classify: need degree >= 2");
  HPoly det = diffgeo::hessian_det(f);
  SignDecision dec = poly::sign_decision(det);
  Verdict v = Verdict::kNeither;
  if (dec.value == PlaneSign::kNegative) v = Verdict::kHyperbolic;
  else if (dec.value == PlaneSign::kPositive) v = Verdict::kElliptic;
  return HypVerdict{f, v, std::move(det), std::move(dec)};
}

namespace detail {

struct QFormNumeric {
  std::vector<double> e, f_mid, g;  // coefficient images, index = y power

  explicit QFormNumeric(const QForm& q) {
    const auto conv = [](const HPoly& p) {
      std::vector<double> c(p.coeffs().size());
      for (size_t i = 0; i < c.size(); ++i)
        c[i] = static_cast<double>(p.coeffs()[i]);
      return c;
    };
    e = conv(q.e);
    f_mid = conv(q.f_mid);
    g = conv(q.g);
  }

  static double eval(const std::vector<double>& c, double x, double y) {
    const size_t n = c.size() - 1;
    double acc = 0.0, yp = 1.0;
    std::vector<double> xp(c.size());
    xp[0] = 1.0;
    for (size_t i = 1; i <= n; ++i) xp[i] = xp[i - 1] * x;
    for (size_t j = 0; j <= n; ++j) {
      acc += c[j] * xp[n - j] * yp;
      yp *= y;
    }
    return acc;
  }
};

constexpr double kPi = 3.14159265358979323846;

// Both zero directions of E c^2 + 2F cs + G s^2 as angles in [0, pi).
// Requires F^2 - EG > 0; callers clamp tiny negatives from rounding.
inline std::pair<double, double> zero_directions(double E, double F, double G) {
  const double disc = F * F - E * G;
  const double r = std::sqrt(std::max(disc, 0.0));
  double a1, a2;
  if (E == 0.0 && G == 0.0) {
    a1 = 0.0;
    a2 = kPi / 2;
  } else if (std::abs(E) >= std::abs(G)) {
    a1 = std::atan2(E, -F + r);
    a2 = std::atan2(E, -F - r);
  } else {
    a1 = std::atan2(-F + r, G);
    a2 = std::atan2(-F - r, G);
  }
  const auto mod_pi = [](double a) {
    a = std::fmod(a, kPi);
    if (a < 0) a += kPi;
    return a;
  };
  a1 = mod_pi(a1);
  a2 = mod_pi(a2);
  if (a1 > a2) std::swap(a1, a2);
  return {a1, a2};
}

// Difference c - base reduced mod pi into (-pi/2, pi/2].
inline double line_delta(double c, double base) {
  double d = std::fmod(c - base, kPi);
  if (d > kPi / 2) d -= kPi;
  if (d <= -kPi / 2) d += kPi;
  return d;
}

}  // namespace detail

/// The two asymptotic direction angles of q at the unit-circle point with
/// polar angle theta, in increasing order in [0, pi).
inline std::pair<double, double> asymptotic_angle(const QForm& q,
                                                  double theta) {
  const detail::QFormNumeric num(q);
  const double x = std::cos(theta), y = std::sin(theta);
  const double E = detail::QFormNumeric::eval(num.e, x, y);
  const double F = detail::QFormNumeric::eval(num.f_mid, x, y);
  const double G = detail::QFormNumeric::eval(num.g, x, y);
  if (F * F - E * G <= 0.0)
    throw std::domain_error(
        "asymptotic_angle: discriminant not positive at sample");
  return detail::zero_directions(E, F, G);
}

/// Winding index of the asymptotic line field around the origin. Stored
/// doubled since the index of a line field is a half-integer.
struct IndexResult {
  bool converged = false;
  ExactInt value_times_two;
  std::uint64_t samples_used = 0;
  double max_step_turn = 0.0;
  double raw_index = 0.0;
};

/// Tracks one asymptotic branch around the unit circle, lifting angles mod
/// pi by the nearest representative, doubling the sample count until the
/// largest per-step turn is below pi/4. The lift over a full loop is a
/// multiple of pi; index = lift / 2 pi.
///
/// A sample count in resonance with the field can alias the lift while
/// still showing small per-step turns, so a resolution is only accepted
/// once the doubled resolution reproduces the same value. That confirmation
/// still assumes initial_samples sees the fastest rotation of the field at
/// under a quarter turn per step; an undersampled uniform rotor is
/// indistinguishable from a slower one at every resolution below its
/// Nyquist rate.
inline IndexResult index_at_origin(const QForm& q,
                                   std::uint64_t initial_samples = 64,
                                   std::uint64_t sample_cap = (1ull << 20)) {
  if (poly::sign_on_punctured_plane(diffgeo::discriminant(q)) !=
      PlaneSign::kPositive)
    throw std::domain_error(
        "index_at_origin: form is not hyperbolic off the origin");

  const detail::QFormNumeric num(q);
  const auto candidates = [&num](double theta) {
    const double x = std::cos(theta), y = std::sin(theta);
    return detail::zero_directions(
        detail::QFormNumeric::eval(num.e, x, y),
        detail::QFormNumeric::eval(num.f_mid, x, y),
        detail::QFormNumeric::eval(num.g, x, y));
  };

  struct Pass {
    double max_turn = 0.0;
    double lift_delta = 0.0;
  };
  const auto track = [&candidates](std::uint64_t n) {
    Pass p;
    const double start = candidates(0.0).first;
    double lift = start;
    for (std::uint64_t i = 1; i <= n; ++i) {
      const double theta =
          2.0 * detail::kPi * static_cast<double>(i) / static_cast<double>(n);
      const auto [c1, c2] = candidates(theta);
      const double d1 = detail::line_delta(c1, lift);
      const double d2 = detail::line_delta(c2, lift);
      const double d = std::abs(d1) <= std::abs(d2) ? d1 : d2;
      lift += d;
      p.max_turn = std::max(p.max_turn, std::abs(d));
    }
    p.lift_delta = lift - start;
    return p;
  };

  IndexResult result;
  for (std::uint64_t n = std::max<std::uint64_t>(initial_samples, 4);;
       n *= 2) {
    if (n > sample_cap) {
      result.converged = false;
      return result;
    }
    const Pass pass = track(n);
    result.samples_used = n;
    result.max_step_turn = pass.max_turn;
    result.raw_index = pass.lift_delta / (2.0 * detail::kPi);
    if (pass.max_turn >= detail::kPi / 4) continue;
    if (2 * n > sample_cap) {
      result.converged = false;  // nothing left to confirm against
      return result;
    }
    const Pass confirm = track(2 * n);
    if (confirm.max_turn >= detail::kPi / 4) continue;
    const long long doubled = std::llround(pass.lift_delta / detail::kPi);
    if (doubled != std::llround(confirm.lift_delta / detail::kPi)) continue;
    const double err =
        std::abs(result.raw_index - static_cast<double>(doubled) / 2.0);
    if (err >= 0.01)
      throw std::runtime_error(
          "index_at_origin: lift is not close to a half-integer index");
    result.converged = true;
    result.value_times_two = ExactInt(doubled);
    return result;
  }
}

inline nlohmann::ordered_json index_to_json(const IndexResult& r) {
  nlohmann::ordered_json j;
  j["converged"] = r.converged;
  if (r.converged)
    j["value_times_two"] = r.value_times_two.convert_to<long long>();
  else
    j["value_times_two"] = nullptr;
  j["samples_used"] = r.samples_used;
  j["max_step_turn"] = r.max_step_turn;
  j["raw_index"] = r.raw_index;
  return j;
}

/// One sign certificate inside an isotopy report: a polynomial had to have
/// the required sign on the punctured plane, with Sturm evidence kept.
struct SignCert {
  std::string name;
  PlaneSign required = PlaneSign::kPositive;
  SignDecision decision;
  bool pass = false;
};

/// One exact (boolean) certificate, e.g. a polynomial identity.
struct ExactCert {
  std::string name;
  bool pass = false;
  std::string note;
};

enum class IsotopyPath { kPhi, kPsi };

inline const char* to_string(IsotopyPath p) {
  return p == IsotopyPath::kPhi ? "phi" : "psi";
}

struct IsotopyReport {
  IsotopyPath path = IsotopyPath::kPhi;
  long m = 0;
  long k = 0;
  long n = 0;  // deg(PQ) = m + 2k
  bool hypothesis_ok = false;
  std::vector<std::string> hypothesis_violations;
  std::vector<SignCert> sign_certs;
  std::vector<ExactCert> exact_certs;
  bool certificates_pass = false;
  bool pass = false;
  unsigned t_samples = 0;
  unsigned theta_samples = 0;
  double grid_min = 0.0;
};

namespace detail {

inline SignCert make_sign_cert(std::string name, const HPoly& p,
                               PlaneSign required) {
  SignCert c;
  c.name = std::move(name);
  c.required = required;
  c.decision = poly::sign_decision(p);
  c.pass = c.decision.value == required;
  return c;
}

inline void check_isotopy_inputs(const HPoly& P, const HPoly& Q) {
  if (P.degree() < 2)
    throw std::domain_error("isotopy certify: need deg P >= 2");
  if (Q.degree() < 2 || Q.degree() % 2 != 0 ||
      Q != poly::circle_power(Q.degree() / 2))
    throw std::domain_error(
        "isotopy certify: Q must be a positive power of x^2+y^2");
}

inline void fill_hypothesis(IsotopyReport& rep) {
  rep.n = rep.m + 2 * rep.k;
  if (rep.n >= rep.m * rep.m)
    rep.hypothesis_violations.push_back("n < m^2");
  if (2 * rep.k < 2) rep.hypothesis_violations.push_back("2k >= 2");
  rep.hypothesis_ok = rep.hypothesis_violations.empty();
}

// Minimum of the discriminant of base + t * dir over the (t, theta) grid,
// t in [0,1], theta in [0, 2 pi).
inline double grid_min_discriminant(const QForm& base, const QForm& dir,
                                    unsigned t_samples,
                                    unsigned theta_samples) {
  const QFormNumeric b(base), d(dir);
  double best = std::numeric_limits<double>::infinity();
  for (unsigned it = 0; it < t_samples; ++it) {
    const double t =
        t_samples == 1 ? 0.0 : static_cast<double>(it) / (t_samples - 1);
    for (unsigned ia = 0; ia < theta_samples; ++ia) {
      const double theta = 2.0 * kPi * ia / theta_samples;
      const double x = std::cos(theta), y = std::sin(theta);
      const double E = QFormNumeric::eval(b.e, x, y) + t * QFormNumeric::eval(d.e, x, y);
      const double F = QFormNumeric::eval(b.f_mid, x, y) + t * QFormNumeric::eval(d.f_mid, x, y);
      const double G = QFormNumeric::eval(b.g, x, y) + t * QFormNumeric::eval(d.g, x, y);
      best = std::min(best, F * F - E * G);
    }
  }
  return best;
}

}  // namespace detail

/// Certifies that the discriminant of Phi_t = omega + t (P II_Q) stays
/// positive off the origin for all t in [0,1]:
///   (a) the t=0 discriminant is positive, term by term;
///   (b) the t=1 discriminant (of II_{PQ}) is positive, by Sturm;
///   (c) the t^2 coefficient, disc(P II_Q) = -P^2 det Hess Q, is nowhere
///       positive, so the quadratic in t is concave and endpoint positivity
///       carries over the whole interval.
/// A (t, theta) grid minimum of the discriminant is recorded as numeric
/// corroboration; it plays no part in the verdict.
inline IsotopyReport isotopy_phi_certify(const HPoly& P, const HPoly& Q,
                                         unsigned t_samples,
                                         unsigned theta_samples) {
  detail::check_isotopy_inputs(P, Q);
  IsotopyReport rep;
  rep.path = IsotopyPath::kPhi;
  rep.m = P.degree();
  rep.k = Q.degree() / 2;
  detail::fill_hypothesis(rep);
  rep.t_samples = t_samples;
  rep.theta_samples = theta_samples;

  const auto terms = diffgeo::omega_discriminant(P, Q);
  rep.sign_certs.push_back(detail::make_sign_cert(
      "omega_t1_positive", terms.t1, PlaneSign::kPositive));
  {
    ExactCert c;
    c.name = "omega_t2_square_nonneg";
    const auto c2 = diffgeo::omega_square_constant(P, Q);
    if (c2 && *c2 >= 0) {
      c.pass = true;
      c.note = "t2 = " + exact::rat_to_string(*c2) + " * (P_x Q_y - P_y Q_x)^2";
    } else {
      c.pass = false;
      c.note = c2 ? "square constant is negative"
                  : "t2 not proportional to the squared cross term";
    }
    rep.exact_certs.push_back(std::move(c));
  }
  rep.sign_certs.push_back(detail::make_sign_cert(
      "omega_t3_positive", terms.t3, PlaneSign::kPositive));

  rep.sign_certs.push_back(detail::make_sign_cert(
      "endpoint_f_discriminant_positive",
      diffgeo::discriminant(diffgeo::second_form(hp_mul(P, Q))),
      PlaneSign::kPositive));

  {
    // leading-in-t coefficient: disc(P II_Q) must equal -P^2 det Hess Q
    ExactCert c;
    c.name = "leading_coefficient_identity";
    const HPoly lead =
        diffgeo::discriminant(diffgeo::qf_scale_poly(P, diffgeo::second_form(Q)));
    const HPoly expected = poly::hp_scale(
        ExactRat(-1), hp_mul(hp_mul(P, P), diffgeo::hessian_det(Q)));
    c.pass = lead == expected;
    c.note = c.pass ? "disc(P II_Q) = -P^2 det Hess Q"
                    : "leading coefficient does not match -P^2 det Hess Q";
    rep.exact_certs.push_back(std::move(c));
  }
  rep.sign_certs.push_back(detail::make_sign_cert(
      "hess_q_positive", diffgeo::hessian_det(Q), PlaneSign::kPositive));

  rep.certificates_pass = true;
  for (const auto& c : rep.sign_certs) rep.certificates_pass &= c.pass;
  for (const auto& c : rep.exact_certs) rep.certificates_pass &= c.pass;
  rep.pass = rep.certificates_pass && rep.hypothesis_ok;

  rep.grid_min = detail::grid_min_discriminant(
      diffgeo::omega_form(P, Q),
      diffgeo::qf_scale_poly(P, diffgeo::second_form(Q)), t_samples,
      theta_samples);
  return rep;
}

/// Certifies that the discriminant of Psi_t = Q II_P + 2t dP dQ is positive
/// off the origin for t in [0,1], term by term:
///   -Q^2 det Hess P   positive (Sturm),
///   t^2 disc(2 dP dQ) a perfect square (exact),
///   -2t Q grad_pairing nonnegative, via the closed form
///   grad_pairing = -2 k m^2 (m-1) (x^2+y^2)^{k+m-2} (exact) plus a Sturm
///   sign certificate for the resulting term.
inline IsotopyReport isotopy_psi_certify(const HPoly& P, const HPoly& Q,
                                         unsigned t_samples,
                                         unsigned theta_samples) {
  detail::check_isotopy_inputs(P, Q);
  IsotopyReport rep;
  rep.path = IsotopyPath::kPsi;
  rep.m = P.degree();
  rep.k = Q.degree() / 2;
  detail::fill_hypothesis(rep);
  rep.t_samples = t_samples;
  rep.theta_samples = theta_samples;

  rep.sign_certs.push_back(detail::make_sign_cert(
      "term1_positive",
      poly::hp_scale(ExactRat(-1),
                     hp_mul(hp_mul(Q, Q), diffgeo::hessian_det(P))),
      PlaneSign::kPositive));

  {
    ExactCert c;
    c.name = "term2_perfect_square";
    const HPoly jac = diffgeo::jacobian(P, Q);
    const HPoly disc_dpdq = diffgeo::discriminant(diffgeo::dpdq_form(P, Q));
    c.pass = disc_dpdq ==
             poly::hp_scale(ExactRat(ExactInt(1), ExactInt(4)),
                            hp_mul(jac, jac));
    c.note = c.pass ? "disc(dP dQ) = (P_x Q_y - P_y Q_x)^2 / 4"
                    : "disc(dP dQ) is not the expected square";
    rep.exact_certs.push_back(std::move(c));
  }

  const HPoly pairing = diffgeo::grad_pairing(P, Q);
  {
    ExactCert c;
    c.name = "term3_closed_form";
    const HPoly expected = poly::hp_scale(
        ExactRat(-2 * rep.k * rep.m * rep.m * (rep.m - 1)),
        poly::circle_power(static_cast<int>(rep.k + rep.m - 2)));
    c.pass = pairing == expected;
    c.note = c.pass ? "grad_pairing = -2 k m^2 (m-1) (x^2+y^2)^{k+m-2}"
                    : "grad_pairing does not match its closed form";
    rep.exact_certs.push_back(std::move(c));
  }
  rep.sign_certs.push_back(detail::make_sign_cert(
      "term3_positive", poly::hp_scale(ExactRat(-2), hp_mul(Q, pairing)),
      PlaneSign::kPositive));

  rep.certificates_pass = true;
  for (const auto& c : rep.sign_certs) rep.certificates_pass &= c.pass;
  for (const auto& c : rep.exact_certs) rep.certificates_pass &= c.pass;
  // The psi path does not involve the product polynomial, so the n < m^2
  // hypothesis is recorded but does not gate the verdict.
  rep.pass = rep.certificates_pass;

  rep.grid_min = detail::grid_min_discriminant(
      diffgeo::qf_scale_poly(Q, diffgeo::second_form(P)),
      diffgeo::qf_scale(ExactRat(2), diffgeo::dpdq_form(P, Q)), t_samples,
      theta_samples);
  return rep;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json verdict_to_json(const HypVerdict& v) {
  nlohmann::ordered_json j;
  j["polynomial"] = poly::hpoly_to_json(v.polynomial);
  j["verdict"] = to_string(v.verdict);
  j["det_hess"] = poly::hpoly_to_json(v.det_hess);
  j["certificate"] = poly::sign_decision_to_json(v.decision);
  return j;
}

inline nlohmann::ordered_json isotopy_to_json(const IsotopyReport& r) {
  nlohmann::ordered_json j;
  j["path"] = to_string(r.path);
  j["m"] = r.m;
  j["k"] = r.k;
  j["n"] = r.n;
  nlohmann::ordered_json hyp;
  hyp["ok"] = r.hypothesis_ok;
  hyp["violated"] = !r.hypothesis_ok;
  hyp["violations"] = r.hypothesis_violations;
  j["hypothesis"] = std::move(hyp);
  auto certs = nlohmann::ordered_json::array();
  for (const auto& c : r.sign_certs) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["kind"] = "sign";
    cj["required"] = poly::to_string(c.required);
    cj["found"] = poly::to_string(c.decision.value);
    cj["pass"] = c.pass;
    cj["evidence"] = poly::sign_decision_to_json(c.decision);
    certs.push_back(std::move(cj));
  }
  for (const auto& c : r.exact_certs) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["kind"] = "exact";
    cj["pass"] = c.pass;
    cj["note"] = c.note;
    certs.push_back(std::move(cj));
  }
  j["certificates"] = std::move(certs);
  j["certificates_pass"] = r.certificates_pass;
  j["pass"] = r.pass;
  nlohmann::ordered_json grid;
  grid["t_samples"] = r.t_samples;
  grid["theta_samples"] = r.theta_samples;
  grid["min_discriminant"] = r.grid_min;
  j["grid"] = std::move(grid);
  return j;
}

}  // namespace hesstop::topo

#endif  // HESSTOP_TOPO_HPP
