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

#ifndef HESSTOP_DIFFGEO_HPP
#define HESSTOP_DIFFGEO_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include "json.hpp"

#include "hesstop/exact.hpp"
#include "hesstop/poly.hpp"

// Exact symbolic differential geometry of graphs z = f(x,y) for homogeneous
// bivariate f: Hessian determinants, second fundamental forms (represented
// by the Hessian quadratic form; the positive normalization factor is
// dropped since every use here is invariant under positive scaling), the
// product decomposition II_{PQ} = P II_Q + 2 dP dQ + Q II_P, and the
// rotational family P_m = Re (x+iy)^m together with its (x^2+y^2)-scaled
// relatives.

namespace hesstop::diffgeo {

using exact::ExactInt;
using exact::ExactRat;
using poly::HPoly;
using poly::hp_diff;
using poly::hp_linear_combine;
using poly::hp_mul;
using poly::hp_scale;
using poly::Var;

/// Quadratic differential form e dx^2 + 2 f_mid dx dy + g dy^2 with
/// polynomial coefficients of one common degree.
struct QForm {
  HPoly e;
  HPoly f_mid;
  HPoly g;

  QForm(HPoly e_, HPoly f_mid_, HPoly g_)
      : e(std::move(e_)), f_mid(std::move(f_mid_)), g(std::move(g_)) {
    if (e.degree() != f_mid.degree() || e.degree() != g.degree())
      throw std::domain_error("QForm: component degree mismatch");
  }

  int degree() const { return e.degree(); }

  friend bool operator==(const QForm& a, const QForm& b) = default;
};

inline QForm qf_add(const QForm& a, const QForm& b) {
  return QForm(a.e + b.e, a.f_mid + b.f_mid, a.g + b.g);
}

inline QForm qf_scale(const ExactRat& c, const QForm& q) {
  return QForm(hp_scale(c, q.e), hp_scale(c, q.f_mid), hp_scale(c, q.g));
}

inline QForm qf_scale_poly(const HPoly& p, const QForm& q) {
  return QForm(hp_mul(p, q.e), hp_mul(p, q.f_mid), hp_mul(p, q.g));
}

/// b^2 - ac for the form a dx^2 + 2b dx dy + c dy^2; positive means the form
/// is hyperbolic at the point.
inline HPoly discriminant(const QForm& q) {
  return hp_mul(q.f_mid, q.f_mid) - hp_mul(q.e, q.g);
}

/// Hamiltonian (rotated) gradient (f_y, -f_x).
struct HamGrad {
  HPoly first;
  HPoly second;
};

inline HamGrad ham_grad(const HPoly& f) {
  return {hp_diff(f, Var::kY), hp_scale(ExactRat(-1), hp_diff(f, Var::kX))};
}

/// f_xx f_yy - f_xy^2, exact; degree 2 deg f - 4.
inline HPoly hessian_det(const HPoly& f) {
  if (f.degree() < 2) throw std::domain_error("hessian_det: need degree >= 2");
  const HPoly fx = hp_diff(f, Var::kX);
  const HPoly fy = hp_diff(f, Var::kY);
  return hp_mul(hp_diff(fx, Var::kX), hp_diff(fy, Var::kY)) -
         hp_mul(hp_diff(fx, Var::kY), hp_diff(fx, Var::kY));
}

/// Second fundamental form of the graph of f, as the Hessian representative
/// (f_xx, f_xy, f_yy). Its discriminant is -hessian_det(f).
inline QForm second_form(const HPoly& f) {
  if (f.degree() < 2) throw std::domain_error("second_form: need degree >= 2");
  const HPoly fx = hp_diff(f, Var::kX);
  const HPoly fy = hp_diff(f, Var::kY);
  return QForm(hp_diff(fx, Var::kX), hp_diff(fx, Var::kY),
               hp_diff(fy, Var::kY));
}

/// The Hamiltonian pairing grad P . Hess P . grad Q, expanded:
/// P_xx P_y Q_y + P_yy P_x Q_x - P_xy (P_x Q_y + P_y Q_x).
inline HPoly grad_pairing(const HPoly& P, const HPoly& Q) {
  if (P.degree() < 2) throw std::domain_error("grad_pairing: need deg P >= 2");
  if (Q.degree() < 1) throw std::domain_error("grad_pairing: need deg Q >= 1");
  const HPoly px = hp_diff(P, Var::kX), py = hp_diff(P, Var::kY);
  const HPoly pxx = hp_diff(px, Var::kX), pxy = hp_diff(px, Var::kY),
              pyy = hp_diff(py, Var::kY);
  const HPoly qx = hp_diff(Q, Var::kX), qy = hp_diff(Q, Var::kY);
  return hp_mul(pxx, hp_mul(py, qy)) + hp_mul(pyy, hp_mul(px, qx)) -
         hp_mul(pxy, hp_mul(px, qy) + hp_mul(py, qx));
}

/// The same pairing written as the combination
/// P_x (Q_y P_xy - Q_x P_yy) + P_y (Q_x P_xy - Q_y P_xx);
/// identically equal to -grad_pairing(P, Q).
inline HPoly grad_pairing_negated_expansion(const HPoly& P, const HPoly& Q) {
  if (P.degree() < 2 || Q.degree() < 1)
    throw std::domain_error("grad_pairing_negated_expansion: degree preconditions");
  const HPoly px = hp_diff(P, Var::kX), py = hp_diff(P, Var::kY);
  const HPoly pxx = hp_diff(px, Var::kX), pxy = hp_diff(px, Var::kY),
              pyy = hp_diff(py, Var::kY);
  const HPoly qx = hp_diff(Q, Var::kX), qy = hp_diff(Q, Var::kY);
  return hp_mul(px, hp_mul(qy, pxy) - hp_mul(qx, pyy)) +
         hp_mul(py, hp_mul(qx, pxy) - hp_mul(qy, pxx));
}

/// The differential cross term dP dQ as a quadratic form:
/// (P_x Q_x, (P_x Q_y + P_y Q_x)/2, P_y Q_y).
inline QForm dpdq_form(const HPoly& P, const HPoly& Q) {
  const HPoly px = hp_diff(P, Var::kX), py = hp_diff(P, Var::kY);
  const HPoly qx = hp_diff(Q, Var::kX), qy = hp_diff(Q, Var::kY);
  return QForm(hp_mul(px, qx),
               hp_scale(ExactRat(ExactInt(1), ExactInt(2)),
                        hp_mul(px, qy) + hp_mul(py, qx)),
               hp_mul(py, qy));
}

struct ProductDecomposition {
  QForm p_times_iiq;  // P * II_Q
  QForm twice_dpdq;   // 2 dP dQ
  QForm q_times_iip;  // Q * II_P
};

/// Splits II_{PQ} into P II_Q + 2 dP dQ + Q II_P; by the product rule the
/// three summands add up to second_form(P*Q) coefficient by coefficient.
inline ProductDecomposition product_second_form(const HPoly& P,
                                                const HPoly& Q) {
  if (P.degree() < 2 || Q.degree() < 2)
    throw std::domain_error("product_second_form: need deg P, deg Q >= 2");
  return ProductDecomposition{
      qf_scale_poly(P, second_form(Q)),
      qf_scale(ExactRat(2), dpdq_form(P, Q)),
      qf_scale_poly(Q, second_form(P)),
  };
}

/// The form 2 dP dQ + Q II_P whose positivity anchors both isotopy paths.
inline QForm omega_form(const HPoly& P, const HPoly& Q) {
  if (P.degree() < 2 || Q.degree() < 2)
    throw std::domain_error("omega_form: need deg P, deg Q >= 2");
  return qf_add(qf_scale(ExactRat(2), dpdq_form(P, Q)),
                qf_scale_poly(Q, second_form(P)));
}

struct OmegaTerms {
  HPoly t1;  // -Q^2 det Hess P
  HPoly t2;  // the squared cross term, obtained by exact subtraction
  HPoly t3;  // -2 Q grad_pairing(P, Q)
};

/// Decomposes the discriminant of omega_form into the three terms
/// t1 + t2 + t3 with t1 and t3 as above and t2 whatever exact remainder is
/// left. t2 is solved for by subtraction rather than trusted from a printed
/// constant; omega_square_constant recovers the multiple of
/// (P_x Q_y - P_y Q_x)^2 that it is.
inline OmegaTerms omega_discriminant(const HPoly& P, const HPoly& Q) {
  if (P.degree() < 2 || Q.degree() < 2)
    throw std::domain_error("omega_discriminant: need deg P, deg Q >= 2");
  const HPoly q2 = hp_mul(Q, Q);
  HPoly t1 = hp_scale(ExactRat(-1), hp_mul(q2, hessian_det(P)));
  HPoly t3 = hp_scale(ExactRat(-2), hp_mul(Q, grad_pairing(P, Q)));
  HPoly t2 = discriminant(omega_form(P, Q)) - t1 - t3;
  return OmegaTerms{std::move(t1), std::move(t2), std::move(t3)};
}

/// P_x Q_y - P_y Q_x (the Jacobian of the pair).
inline HPoly jacobian(const HPoly& P, const HPoly& Q) {
  return hp_mul(hp_diff(P, Var::kX), hp_diff(Q, Var::kY)) -
         hp_mul(hp_diff(P, Var::kY), hp_diff(Q, Var::kX));
}

/// The constant c with omega t2 == c * (P_x Q_y - P_y Q_x)^2, if the two are
/// exactly proportional; nullopt otherwise.
inline std::optional<ExactRat> omega_square_constant(const HPoly& P,
                                                     const HPoly& Q) {
  const HPoly t2 = omega_discriminant(P, Q).t2;
  const HPoly jac = jacobian(P, Q);
  const HPoly sq = hp_mul(jac, jac);
  if (sq.is_zero()) {
    if (t2.is_zero()) return ExactRat(0);
    return std::nullopt;
  }
  int pivot = 0;
  while (sq[pivot] == 0) ++pivot;
  const ExactRat c = t2[pivot] / sq[pivot];
  if (t2 == hp_scale(c, sq)) return c;
  return std::nullopt;
}

/// P_m = Re (x+iy)^m = sum_j (-1)^j C(m,2j) x^{m-2j} y^{2j}.
inline HPoly arnold_P(const ExactInt& m_in) {
  if (m_in < 1) throw std::domain_error("arnold_P: need m >= 1");
  const long m = m_in.convert_to<long>();
  HPoly p(static_cast<int>(m));
  for (long j = 0; 2 * j <= m; ++j)
    p[static_cast<int>(2 * j)] =
        ExactRat(exact::neg_one_pow(j) * exact::binom(m, 2 * j));
  return p;
}

/// (x^2+y^2)^{(n-m)/2} * P_m, the degree-n member over P_m.
inline HPoly arnold_family(const ExactInt& m_in, const ExactInt& n_in) {
  if (m_in < 2) throw std::domain_error("arnold_family: need m >= 2");
  if (n_in < m_in) throw std::domain_error("arnold_family: need n >= m");
  if ((n_in - m_in) % 2 != 0)
    throw std::domain_error("arnold_family: need n - m even");
  const long m = m_in.convert_to<long>();
  const long n = n_in.convert_to<long>();
  return hp_mul(poly::circle_power(static_cast<int>((n - m) / 2)),
                arnold_P(m));
}

/// For P = P_m and Q = (x^2+y^2)^k, checks the closed form
///   P_x (Q_y P_xy - Q_x P_yy) + P_y (Q_x P_xy - Q_y P_xx)
///     = 2 k m^2 (m-1) (x^2+y^2)^{k+m-2}
/// by full symbolic expansion of both sides, for either parity of m.
inline bool lemma3_check(const ExactInt& m_in, const ExactInt& k_in) {
  if (m_in < 2 || k_in < 1)
    throw std::domain_error("lemma3_check: need m >= 2, k >= 1");
  const long m = m_in.convert_to<long>();
  const long k = k_in.convert_to<long>();
  const HPoly P = arnold_P(m);
  const HPoly Q = poly::circle_power(static_cast<int>(k));
  const HPoly lhs = grad_pairing_negated_expansion(P, Q);
  const HPoly rhs = hp_scale(ExactRat(2 * k * m * m * (m - 1)),
                             poly::circle_power(static_cast<int>(k + m - 2)));
  return lhs == rhs;
}

/// Solves lhs = c * Q * det Hess P for the scalar c, where lhs is the
/// expansion checked by lemma3_check. Throws if the two polynomials are not
/// exactly proportional (they always should be for this family). The
/// returned constant works out to -2k/(m-1) = -deg Q / (deg P - 1).
inline ExactRat euler_route_check(const ExactInt& m_in, const ExactInt& k_in) {
  if (m_in < 2 || k_in < 1)
    throw std::domain_error("euler_route_check: need m >= 2, k >= 1");
  const long m = m_in.convert_to<long>();
  const long k = k_in.convert_to<long>();
  const HPoly P = arnold_P(m);
  const HPoly Q = poly::circle_power(static_cast<int>(k));
  const HPoly lhs = grad_pairing_negated_expansion(P, Q);
  const HPoly denom = hp_mul(Q, hessian_det(P));
  if (denom.is_zero())
    throw std::runtime_error("euler_route_check: Q * det Hess P vanished");
  int pivot = 0;
  while (denom[pivot] == 0) ++pivot;
  const ExactRat c = lhs[pivot] / denom[pivot];
  if (lhs != hp_scale(c, denom))
    throw std::runtime_error(
        "euler_route_check: expansion is not proportional to Q * det Hess P");
  return c;
}

inline nlohmann::ordered_json qform_to_json(const QForm& q) {
  nlohmann::ordered_json j;
  j["e"] = poly::hpoly_to_json(q.e);
  j["f_mid"] = poly::hpoly_to_json(q.f_mid);
  j["g"] = poly::hpoly_to_json(q.g);
  return j;
}

}  // namespace hesstop::diffgeo

#endif  // HESSTOP_DIFFGEO_HPP
