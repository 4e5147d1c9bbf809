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

#ifndef HESSTOP_POLY_HPP
#define HESSTOP_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hesstop/exact.hpp"

namespace hesstop::poly {

using exact::ExactInt;
using exact::ExactRat;

enum class Var { kX, kY };

/// Homogeneous bivariate polynomial of a fixed degree n with exact rational
/// coefficients. coeffs()[j] is the coefficient of x^{n-j} y^j. The zero
/// polynomial of any degree is representable (all coefficients zero), which
/// keeps differentiation total.
class HPoly {
 public:
  explicit HPoly(int degree)
      : degree_(check_degree(degree)),
        coeffs_(static_cast<size_t>(degree) + 1, ExactRat(0)) {}

  HPoly(int degree, std::vector<ExactRat> coeffs)
      : degree_(check_degree(degree)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != static_cast<size_t>(degree_) + 1)
      throw std::invalid_argument("HPoly: coefficient count != degree + 1");
  }

  static HPoly monomial(int degree, int ypow, const ExactRat& c) {
    HPoly p(degree);
    if (ypow < 0 || ypow > degree)
      throw std::invalid_argument("HPoly::monomial: y power out of range");
    p.coeffs_[static_cast<size_t>(ypow)] = c;
    return p;
  }

  int degree() const { return degree_; }
  const std::vector<ExactRat>& coeffs() const { return coeffs_; }

  const ExactRat& operator[](int j) const {
    return coeffs_.at(static_cast<size_t>(j));
  }
  ExactRat& operator[](int j) { return coeffs_.at(static_cast<size_t>(j)); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const ExactRat& c) { return c == 0; });
  }

  ExactRat eval(const ExactRat& x, const ExactRat& y) const {
    // Powers built explicitly so that 0^0 = 1 holds at the axes.
    std::vector<ExactRat> xp(coeffs_.size()), yp(coeffs_.size());
    xp[0] = 1;
    yp[0] = 1;
    for (size_t i = 1; i < coeffs_.size(); ++i) {
      xp[i] = xp[i - 1] * x;
      yp[i] = yp[i - 1] * y;
    }
    ExactRat acc(0);
    for (size_t j = 0; j < coeffs_.size(); ++j)
      if (coeffs_[j] != 0)
        acc += coeffs_[j] * xp[coeffs_.size() - 1 - j] * yp[j];
    return acc;
  }

  double eval_double(double x, double y) const {
    const size_t n = coeffs_.size() - 1;
    double acc = 0.0;
    double ypow = 1.0;
    std::vector<double> xp(coeffs_.size());
    xp[0] = 1.0;
    for (size_t i = 1; i <= n; ++i) xp[i] = xp[i - 1] * x;
    for (size_t j = 0; j <= n; ++j) {
      acc += static_cast<double>(coeffs_[j]) * xp[n - j] * ypow;
      ypow *= y;
    }
    return acc;
  }

  friend bool operator==(const HPoly& a, const HPoly& b) = default;

 private:
  static int check_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("HPoly: negative degree");
    return degree;
  }

  int degree_;
  std::vector<ExactRat> coeffs_;
};

/// Exact convolution product; degrees add.
inline HPoly hp_mul(const HPoly& a, const HPoly& b) {
  HPoly r(a.degree() + b.degree());
  for (int i = 0; i <= a.degree(); ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= b.degree(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  return r;
}

/// Exact partial derivative. Degree drops by one; the derivative of a
/// degree-0 polynomial is the zero polynomial of degree 0.
inline HPoly hp_diff(const HPoly& f, Var var) {
  const int n = f.degree();
  if (n == 0) return HPoly(0);
  HPoly r(n - 1);
  for (int j = 0; j <= n - 1; ++j)
    r[j] = (var == Var::kX) ? f[j] * (n - j) : f[j + 1] * (j + 1);
  return r;
}

/// c1*a + c2*b for polynomials of one common degree.
inline HPoly hp_linear_combine(const ExactRat& c1, const HPoly& a,
                               const ExactRat& c2, const HPoly& b) {
  if (a.degree() != b.degree())
    throw std::domain_error("hp_linear_combine: degree mismatch");
  HPoly r(a.degree());
  for (int j = 0; j <= a.degree(); ++j) r[j] = c1 * a[j] + c2 * b[j];
  return r;
}

inline HPoly hp_scale(const ExactRat& c, const HPoly& a) {
  HPoly r(a.degree());
  for (int j = 0; j <= a.degree(); ++j) r[j] = c * a[j];
  return r;
}

inline HPoly operator+(const HPoly& a, const HPoly& b) {
  return hp_linear_combine(ExactRat(1), a, ExactRat(1), b);
}
inline HPoly operator-(const HPoly& a, const HPoly& b) {
  return hp_linear_combine(ExactRat(1), a, ExactRat(-1), b);
}
inline HPoly operator*(const HPoly& a, const HPoly& b) { return hp_mul(a, b); }

inline HPoly hp_pow(const HPoly& a, int e) {
  if (e < 0) throw std::invalid_argument("hp_pow: negative exponent");
  HPoly r(0, {ExactRat(1)});
  for (int i = 0; i < e; ++i) r = hp_mul(r, a);
  return r;
}

/// x^2 + y^2 raised to the given power.
inline HPoly circle_power(int e) {
  return hp_pow(HPoly(2, {ExactRat(1), ExactRat(0), ExactRat(1)}), e);
}

/// Univariate polynomial in t, index = power. Canonical: no stored leading
/// zeros; the zero polynomial has degree kZeroDegree.
class UPoly {
 public:
  static constexpr int kZeroDegree = -1;

  UPoly() = default;
  explicit UPoly(std::vector<ExactRat> coeffs) : coeffs_(std::move(coeffs)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<ExactRat>& coeffs() const { return coeffs_; }

  const ExactRat& leading() const {
    if (is_zero()) throw std::domain_error("UPoly::leading: zero polynomial");
    return coeffs_.back();
  }

  ExactRat eval(const ExactRat& t) const {
    ExactRat acc(0);
    for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
  }

  UPoly derivative() const {
    if (coeffs_.size() <= 1) return UPoly();
    std::vector<ExactRat> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i)
      d[i - 1] = coeffs_[i] * ExactRat(static_cast<long>(i));
    return UPoly(std::move(d));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) = default;

 private:
  std::vector<ExactRat> coeffs_;
};

inline UPoly u_mul(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<ExactRat> r(a.coeffs().size() + b.coeffs().size() - 1,
                          ExactRat(0));
  for (size_t i = 0; i < a.coeffs().size(); ++i)
    for (size_t j = 0; j < b.coeffs().size(); ++j)
      r[i + j] += a.coeffs()[i] * b.coeffs()[j];
  return UPoly(std::move(r));
}

/// Affine-chart reduction of a homogeneous polynomial: returns
/// (f(1,t), f(0,1)). Together the two cover the punctured plane up to the
/// positive scaling x^n, which is what makes univariate sign decisions
/// complete for even n.
inline std::pair<UPoly, ExactRat> restrict_to_chart(const HPoly& f) {
  return {UPoly(f.coeffs()), f[f.degree()]};
}

/// Evidence for a real-root count: the (primitive integer) Sturm chain plus
/// the two variation counts it was read from.
struct SturmCertificate {
  std::vector<UPoly> chain;
  int variations_at_minus_inf = 0;
  int variations_at_plus_inf = 0;
  int distinct_real_roots = 0;
  ExactRat sample_point;
  int sample_sign = 0;  // sign of the input at sample_point
};

namespace detail {

using ZPoly = std::vector<ExactInt>;  // index = power, trailing nonzero

inline void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Divide by the positive content (gcd of coefficients).
inline void make_primitive(ZPoly& p) {
  ExactInt g(0);
  for (const auto& c : p) {
    g = gcd(g, c);
    if (g == 1) return;
  }
  if (g == 0 || g == 1) return;
  for (auto& c : p) c /= g;
}

// Integer image of a rational polynomial, scaled by a positive constant.
inline ZPoly to_primitive_int(const UPoly& u) {
  ExactInt l(1);
  for (const auto& c : u.coeffs()) l = lcm(l, denominator(c));
  ZPoly z(u.coeffs().size());
  for (size_t i = 0; i < z.size(); ++i)
    z[i] = numerator(u.coeffs()[i]) * (l / denominator(u.coeffs()[i]));
  make_primitive(z);
  return z;
}

// Negated pseudo-remainder of a by b. Each reduction step multiplies the
// running polynomial by |lc(b)| (a positive constant), so sign variations
// are preserved along the chain.
inline ZPoly neg_prem(ZPoly a, const ZPoly& b) {
  const long db = static_cast<long>(b.size()) - 1;
  const ExactInt lcb_abs = abs(b.back());
  const int lcb_sign = b.back() > 0 ? 1 : -1;
  while (static_cast<long>(a.size()) - 1 >= db) {
    const long da = static_cast<long>(a.size()) - 1;
    const ExactInt la = a.back();
    for (auto& c : a) c *= lcb_abs;
    for (long i = 0; i <= db; ++i) a[da - db + i] -= lcb_sign * la * b[i];
    trim(a);
    if (a.empty()) break;
  }
  for (auto& c : a) c = -c;
  return a;
}

inline int sign3(const ExactInt& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

}  // namespace detail

/// Sturm chain of u with primitive-part reduction after every
/// pseudo-remainder step; counts the distinct real roots of u.
inline SturmCertificate sturm_real_roots(const UPoly& u) {
  if (u.is_zero())
    throw std::domain_error("sturm_real_roots: zero polynomial");
  std::vector<detail::ZPoly> chain;
  chain.push_back(detail::to_primitive_int(u));
  if (chain[0].size() > 1) {
    detail::ZPoly d(chain[0].size() - 1);
    for (size_t i = 1; i < chain[0].size(); ++i)
      d[i - 1] = chain[0][i] * static_cast<long>(i);
    detail::make_primitive(d);
    chain.push_back(std::move(d));
  }
  while (chain.back().size() > 1) {
    detail::ZPoly r =
        detail::neg_prem(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;  // nonconstant gcd; count is still the distinct roots
    detail::make_primitive(r);
    chain.push_back(std::move(r));
  }

  SturmCertificate cert;
  int vminus = 0, vplus = 0, prev_minus = 0, prev_plus = 0;
  for (const auto& p : chain) {
    const int deg = static_cast<int>(p.size()) - 1;
    const int s_plus = detail::sign3(p.back());
    const int s_minus = (deg % 2 != 0) ? -s_plus : s_plus;
    if (prev_plus != 0 && s_plus != prev_plus) ++vplus;
    if (prev_minus != 0 && s_minus != prev_minus) ++vminus;
    prev_plus = s_plus;
    prev_minus = s_minus;
    std::vector<ExactRat> rc(p.size());
    for (size_t i = 0; i < p.size(); ++i) rc[i] = ExactRat(p[i]);
    cert.chain.emplace_back(std::move(rc));
  }
  cert.variations_at_minus_inf = vminus;
  cert.variations_at_plus_inf = vplus;
  cert.distinct_real_roots = vminus - vplus;
  cert.sample_point = ExactRat(0);
  cert.sample_sign = exact::sign_of(u.eval(ExactRat(0)));
  return cert;
}

enum class PlaneSign { kPositive, kNegative, kMixedOrVanishing };

inline const char* to_string(PlaneSign s) {
  switch (s) {
    case PlaneSign::kPositive: return "POSITIVE";
    case PlaneSign::kNegative: return "NEGATIVE";
    case PlaneSign::kMixedOrVanishing: return "MIXED_OR_VANISHING";
  }
  return "?";
}

/// Full evidence for a sign decision on the punctured plane: the value signs
/// at (0,1) and (1,0) and a root count for the chart polynomial f(1,t).
struct SignDecision {
  PlaneSign value = PlaneSign::kMixedOrVanishing;
  int sign_at_01 = 0;
  int sign_at_10 = 0;
  SturmCertificate restriction;
};

inline SignDecision sign_decision(const HPoly& f) {
  if (f.is_zero())
    throw std::domain_error("sign_decision: zero polynomial");
  const auto [chart, at01] = restrict_to_chart(f);
  SignDecision dec;
  dec.sign_at_01 = exact::sign_of(at01);
  dec.sign_at_10 = exact::sign_of(f[0]);
  dec.restriction = sturm_real_roots(chart);
  if (f.degree() % 2 != 0) {
    dec.value = PlaneSign::kMixedOrVanishing;  // odd degree flips sign under antipody
    return dec;
  }
  const bool no_roots = dec.restriction.distinct_real_roots == 0;
  if (no_roots && dec.sign_at_01 > 0 && dec.sign_at_10 > 0)
    dec.value = PlaneSign::kPositive;
  else if (no_roots && dec.sign_at_01 < 0 && dec.sign_at_10 < 0)
    dec.value = PlaneSign::kNegative;
  else
    dec.value = PlaneSign::kMixedOrVanishing;
  return dec;
}

inline PlaneSign sign_on_punctured_plane(const HPoly& f) {
  return sign_decision(f).value;
}

// ---------------------------------------------------------------------------
// JSON encoding. Polynomial files: {"degree": n, "coeffs": ["c0", ..., "cn"]}
// with rational coefficient strings; coeffs[j] is the x^{n-j} y^j coefficient.
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json hpoly_to_json(const HPoly& f) {
  nlohmann::ordered_json j;
  j["degree"] = f.degree();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : f.coeffs()) arr.push_back(exact::rat_to_string(c));
  j["coeffs"] = std::move(arr);
  return j;
}

inline HPoly hpoly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("degree") || !j.contains("coeffs"))
    throw std::invalid_argument("polynomial: expected {degree, coeffs}");
  if (!j["degree"].is_number_integer())
    throw std::invalid_argument("polynomial: degree must be an integer");
  const long long deg = j["degree"].get<long long>();
  if (deg < 0 || deg > 100000)
    throw std::invalid_argument("polynomial: degree out of range");
  if (!j["coeffs"].is_array())
    throw std::invalid_argument("polynomial: coeffs must be an array");
  if (j["coeffs"].size() != static_cast<size_t>(deg) + 1)
    throw std::invalid_argument("polynomial: coeffs length != degree + 1");
  std::vector<ExactRat> coeffs;
  coeffs.reserve(j["coeffs"].size());
  for (const auto& c : j["coeffs"]) {
    if (!c.is_string())
      throw std::invalid_argument("polynomial: coefficients must be strings");
    coeffs.push_back(exact::rat_from_string(c.get<std::string>()));
  }
  return HPoly(static_cast<int>(deg), std::move(coeffs));
}

inline nlohmann::ordered_json upoly_to_json(const UPoly& u) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : u.coeffs()) arr.push_back(exact::rat_to_string(c));
  return arr;
}

inline nlohmann::ordered_json sturm_to_json(const SturmCertificate& cert) {
  nlohmann::ordered_json j;
  auto chain = nlohmann::ordered_json::array();
  for (const auto& p : cert.chain) chain.push_back(upoly_to_json(p));
  j["chain"] = std::move(chain);
  j["variations_at_minus_inf"] = cert.variations_at_minus_inf;
  j["variations_at_plus_inf"] = cert.variations_at_plus_inf;
  j["distinct_real_roots"] = cert.distinct_real_roots;
  j["sample_point"] = exact::rat_to_string(cert.sample_point);
  j["sample_sign"] = cert.sample_sign;
  return j;
}

inline nlohmann::ordered_json sign_decision_to_json(const SignDecision& dec) {
  nlohmann::ordered_json j;
  j["sign"] = to_string(dec.value);
  j["sign_at_01"] = dec.sign_at_01;
  j["sign_at_10"] = dec.sign_at_10;
  j["sturm"] = sturm_to_json(dec.restriction);
  return j;
}

}  // namespace hesstop::poly

#endif  // HESSTOP_POLY_HPP
