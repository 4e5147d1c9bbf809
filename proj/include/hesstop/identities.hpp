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

#ifndef HESSTOP_IDENTITIES_HPP
#define HESSTOP_IDENTITIES_HPP

#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hesstop/exact.hpp"

// Exhaustive verification of a family of binomial-coefficient identities.
// Each evaluator computes both sides of one identity exactly as stated, with
// no algebraic pre-simplification: the point is to check the formulas, not a
// rewriting of them. Out-of-range binomials contribute 0 (see exact::binom),
// which is what makes the stated index ranges evaluable verbatim.
//
// The identity family, for integers m, j in the stated ranges:
//
//  eq1   (-1)^j [ C(m-1,2j)
//          + sum_{k=0}^{j-1} ( C(m-1,2k) C(m-1,2j-2k)
//                              - C(m-1,2k+1) C(m-1,2j-2k-1) ) ]
//        = C(m-1,j),                          m >= 2, 0 <= j <= (m-1)/2
//
//  eq2   (-1)^{m/2+j-1} [ -C(m-1,2j-1)
//          + sum_{k=0}^{m/2-j-1} ( C(m-1,2k+2j) C(m-1,2k+1)
//                                  - C(m-1,2k) C(m-1,2k+2j-1) ) ]
//        = C(m-1, j+m/2-1),                   m >= 2 even, 0 <= j <= (m-2)/2
//
//  eq3   (-1)^{m/2} ( 1 - m
//          + sum_{k=0}^{m/2-2} C(m-1,2k+1) [ C(m-1,2k+2) - C(m-1,2k) ] )
//        = C(m-1, m/2),                       m >= 2 even
//
//  eq5   (-1)^j [ C(m-1,2j)
//          + sum_{k=0}^{j-1} ((4k-2j+1)/m) C(m,2k+1) C(m,2j-2k) ]
//        = C(m-1,j)                           (rational-prefactor form of eq1)
//
//  eq6   (-1)^r C(m-1,r) = sum_{k=0}^{r} (-1)^k C(m,k),   m >= 1, 0 <= r <= m
//
//  eq7   sum_{k=1}^{j} (-1)^k C(m,j+k) ( 1 + ((1-2k)/m) C(m,j-k+1) ) = 0
//
//  eq10  (-1)^{m/2+j-1} sum_{k=0}^{m/2-j} ((m-4k-2j-1)/m) C(m,2k+1) C(m,2k+2j)
//        = C(m-1, j+m/2-1),                   m >= 2 even, 0 <= j <= m/2
//
//  T(m,j) = sum_{k=1}^{j+1} (-1)^{k+1} (2k-1) C(m,k+j) C(m,j-k+1)
//         = (j+1) C(m,j+1),                   m >= 1, 0 <= j <= m-1
//
//  F(m,j) = C(m,j)^2 + 2 sum_{k=1}^{j} (-1)^k C(m,j-k) C(m,j+k)
//         = C(m,j),                           m >= 1, 0 <= j <= m
//
// eq10 specializes in two ways that the sweep cross-checks: under the index
// substitution j -> m/2 - j it coincides with eq5, and at j = 1 its left
// side equals the eq3 left side.

namespace hesstop::identities {

using exact::binom;
using exact::ExactInt;
using exact::ExactRat;
using exact::neg_one_pow;

enum class IdentityId {
  kEq1,
  kEq2,
  kEq3,
  kEq5,
  kEq6,
  kEq7,
  kEq10,
  kTClosed,
  kFClosed,
};

inline constexpr IdentityId kAllIdentities[] = {
    IdentityId::kEq1, IdentityId::kEq2,  IdentityId::kEq3,
    IdentityId::kEq5, IdentityId::kEq6,  IdentityId::kEq7,
    IdentityId::kEq10, IdentityId::kTClosed, IdentityId::kFClosed,
};

inline const char* to_string(IdentityId id) {
  switch (id) {
    case IdentityId::kEq1: return "eq1";
    case IdentityId::kEq2: return "eq2";
    case IdentityId::kEq3: return "eq3";
    case IdentityId::kEq5: return "eq5";
    case IdentityId::kEq6: return "eq6";
    case IdentityId::kEq7: return "eq7";
    case IdentityId::kEq10: return "eq10";
    case IdentityId::kTClosed: return "t_closed";
    case IdentityId::kFClosed: return "f_closed";
  }
  return "?";
}

inline std::optional<IdentityId> identity_from_string(std::string_view s) {
  for (IdentityId id : kAllIdentities)
    if (s == to_string(id)) return id;
  return std::nullopt;
}

namespace detail {

inline void require(bool cond, const char* msg) {
  if (!cond) throw std::domain_error(msg);
}

inline long to_long_param(const ExactInt& v, const char* what) {
  if (v < -1000000 || v > 1000000)
    throw std::domain_error(std::string("parameter out of range: ") + what);
  return v.convert_to<long>();
}

}  // namespace detail

using Sides = std::pair<ExactRat, ExactRat>;

inline Sides eq1_sides(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 2 && j >= 0 && 2 * j <= m - 1, "eq1: need m >= 2, 0 <= j <= (m-1)/2");
  ExactInt sum = binom(m - 1, 2 * j);
  for (long k = 0; k <= j - 1; ++k)
    sum += binom(m - 1, 2 * k) * binom(m - 1, 2 * j - 2 * k) -
           binom(m - 1, 2 * k + 1) * binom(m - 1, 2 * j - 2 * k - 1);
  return {ExactRat(neg_one_pow(j) * sum), ExactRat(binom(m - 1, j))};
}

inline Sides eq2_sides(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 2 && m % 2 == 0, "eq2: need even m >= 2");
  detail::require(j >= 0 && 2 * j <= m - 2, "eq2: need 0 <= j <= (m-2)/2");
  ExactInt sum = -binom(m - 1, 2 * j - 1);  // 0 at j = 0 by the range convention
  for (long k = 0; k <= m / 2 - j - 1; ++k)
    sum += binom(m - 1, 2 * k + 2 * j) * binom(m - 1, 2 * k + 1) -
           binom(m - 1, 2 * k) * binom(m - 1, 2 * k + 2 * j - 1);
  return {ExactRat(neg_one_pow(m / 2 + j - 1) * sum),
          ExactRat(binom(m - 1, j + m / 2 - 1))};
}

inline Sides eq3_sides(const ExactInt& m_in) {
  const long m = detail::to_long_param(m_in, "m");
  detail::require(m >= 2 && m % 2 == 0, "eq3: need even m >= 2");
  ExactInt sum = ExactInt(1) - m;
  for (long k = 0; k <= m / 2 - 2; ++k)
    sum += binom(m - 1, 2 * k + 1) *
           (binom(m - 1, 2 * k + 2) - binom(m - 1, 2 * k));
  return {ExactRat(neg_one_pow(m / 2) * sum), ExactRat(binom(m - 1, m / 2))};
}

inline Sides eq5_sides(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 2 && j >= 0 && 2 * j <= m - 1, "eq5: need m >= 2, 0 <= j <= (m-1)/2");
  ExactRat sum{binom(m - 1, 2 * j)};
  for (long k = 0; k <= j - 1; ++k)
    sum += ExactRat(ExactInt(4 * k - 2 * j + 1), ExactInt(m)) *
           ExactRat(binom(m, 2 * k + 1) * binom(m, 2 * j - 2 * k));
  return {ExactRat(neg_one_pow(j)) * sum, ExactRat(binom(m - 1, j))};
}

inline Sides eq6_sides(const ExactInt& m_in, const ExactInt& r_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long r = detail::to_long_param(r_in, "r");
  detail::require(m >= 1 && r >= 0 && r <= m, "eq6: need m >= 1, 0 <= r <= m");
  ExactInt rhs(0);
  for (long k = 0; k <= r; ++k) rhs += neg_one_pow(k) * binom(m, k);
  return {ExactRat(neg_one_pow(r) * binom(m - 1, r)), ExactRat(rhs)};
}

inline ExactRat eq7_lhs(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 2 && j >= 0 && 2 * j <= m - 1, "eq7: need m >= 2, 0 <= j <= (m-1)/2");
  ExactRat sum(0);
  for (long k = 1; k <= j; ++k)
    sum += ExactRat(neg_one_pow(k) * binom(m, j + k)) *
           (ExactRat(1) + ExactRat(ExactInt(1 - 2 * k), ExactInt(m)) *
                              ExactRat(binom(m, j - k + 1)));
  return sum;
}

inline Sides eq10_sides(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 2 && m % 2 == 0, "eq10: need even m >= 2");
  detail::require(j >= 0 && j <= m / 2, "eq10: need 0 <= j <= m/2");
  ExactRat sum(0);
  for (long k = 0; k <= m / 2 - j; ++k)
    sum += ExactRat(ExactInt(m - 4 * k - 2 * j - 1), ExactInt(m)) *
           ExactRat(binom(m, 2 * k + 1) * binom(m, 2 * k + 2 * j));
  return {ExactRat(neg_one_pow(m / 2 + j - 1)) * sum,
          ExactRat(binom(m - 1, j + m / 2 - 1))};
}

inline ExactRat t_value(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 1 && j >= 0 && j <= m - 1, "t_value: need m >= 1, 0 <= j <= m-1");
  ExactInt sum(0);
  for (long k = 1; k <= j + 1; ++k)
    sum += neg_one_pow(k + 1) * (2 * k - 1) * binom(m, k + j) *
           binom(m, j - k + 1);
  return ExactRat(sum);
}

inline ExactRat f_value(const ExactInt& m_in, const ExactInt& j_in) {
  const long m = detail::to_long_param(m_in, "m");
  const long j = detail::to_long_param(j_in, "j");
  detail::require(m >= 1 && j >= 0 && j <= m, "f_value: need m >= 1, 0 <= j <= m");
  ExactInt sum = binom(m, j) * binom(m, j);
  for (long k = 1; k <= j; ++k)
    sum += 2 * neg_one_pow(k) * binom(m, j - k) * binom(m, j + k);
  return ExactRat(sum);
}

struct FailureSample {
  ExactInt m;
  ExactInt j;
  ExactRat lhs;
  ExactRat rhs;
};

struct IdentityReport {
  IdentityId identity = IdentityId::kEq1;
  ExactInt m_lo;
  ExactInt m_hi;
  ExactInt checked_count;
  bool pass = true;
  std::optional<FailureSample> first_failure;
};

namespace detail {

// One (m,j) check. Returns (lhs, rhs); equal means pass. The eq5 and eq10
// cases also fold in their coincidence cross-checks by reporting a mismatch
// pair when a coincidence fails even though the identity itself holds.
inline std::pair<ExactRat, ExactRat> evaluate(IdentityId id, long m, long j) {
  switch (id) {
    case IdentityId::kEq1:
      return eq1_sides(m, j);
    case IdentityId::kEq2:
      return eq2_sides(m, j);
    case IdentityId::kEq3:
      return eq3_sides(m);
    case IdentityId::kEq6:
      return eq6_sides(m, j);
    case IdentityId::kEq7:
      return {eq7_lhs(m, j), ExactRat(0)};
    case IdentityId::kEq5: {
      const auto [lhs, rhs] = eq5_sides(m, j);
      if (lhs != rhs) return {lhs, rhs};
      const auto [l1, r1] = eq1_sides(m, j);
      if (rhs != r1 || lhs != l1) return {lhs, l1};  // eq1 coincidence broken
      return {lhs, rhs};
    }
    case IdentityId::kEq10: {
      const auto [lhs, rhs] = eq10_sides(m, j);
      if (lhs != rhs) return {lhs, rhs};
      if (j >= 1) {
        const auto [l5, r5] = eq5_sides(m, m / 2 - j);
        (void)r5;
        if (lhs != l5) return {lhs, l5};  // eq5 coincidence broken
      }
      if (j == 1) {
        const auto [l3, r3] = eq3_sides(m);
        (void)r3;
        if (lhs != l3) return {lhs, l3};  // eq3 coincidence broken
      }
      return {lhs, rhs};
    }
    case IdentityId::kTClosed: {
      const ExactRat lhs = t_value(m, j);
      return {lhs, ExactRat((j + 1) * binom(m, j + 1))};
    }
    case IdentityId::kFClosed: {
      const ExactRat lhs = f_value(m, j);
      return {lhs, ExactRat(binom(m, j))};
    }
  }
  throw std::logic_error("evaluate: unknown identity");
}

inline long min_m(IdentityId id) {
  switch (id) {
    case IdentityId::kEq6:
    case IdentityId::kTClosed:
    case IdentityId::kFClosed:
      return 1;
    default:
      return 2;
  }
}

inline bool even_only(IdentityId id) {
  return id == IdentityId::kEq2 || id == IdentityId::kEq3 ||
         id == IdentityId::kEq10;
}

// Valid j values at this m, in increasing order.
inline std::pair<long, long> j_range(IdentityId id, long m) {  // inclusive
  switch (id) {
    case IdentityId::kEq1:
    case IdentityId::kEq5:
    case IdentityId::kEq7:
      return {0, (m - 1) / 2};
    case IdentityId::kEq2:
      return {0, (m - 2) / 2};
    case IdentityId::kEq3:
      return {0, 0};
    case IdentityId::kEq6:
      return {0, m};
    case IdentityId::kEq10:
      return {0, m / 2};
    case IdentityId::kTClosed:
      return {0, m - 1};
    case IdentityId::kFClosed:
      return {0, m};
  }
  throw std::logic_error("j_range: unknown identity");
}

struct PerM {
  long checked = 0;
  std::optional<FailureSample> first_failure;
};

inline PerM sweep_one_m(IdentityId id, long m) {
  PerM out;
  if (m < min_m(id)) return out;
  if (even_only(id) && m % 2 != 0) return out;
  const auto [jlo, jhi] = j_range(id, m);
  for (long j = jlo; j <= jhi; ++j) {
    ++out.checked;
    const auto [lhs, rhs] = evaluate(id, m, j);
    if (lhs != rhs) {
      out.first_failure = FailureSample{ExactInt(m), ExactInt(j), lhs, rhs};
      break;  // smallest failing j for this m
    }
  }
  return out;
}

}  // namespace detail

/// Checks one identity at every valid (m,j) with m in [m_lo, m_hi].
/// Deterministic for any worker count: results are merged in increasing m,
/// so first_failure is the lexicographically smallest failing pair.
inline IdentityReport sweep(IdentityId id, const ExactInt& m_lo,
                            const ExactInt& m_hi, unsigned workers = 1) {
  const long lo = detail::to_long_param(m_lo, "m_lo");
  const long hi = detail::to_long_param(m_hi, "m_hi");
  detail::require(lo >= 1 && lo <= hi, "sweep: need 1 <= m_lo <= m_hi");

  const size_t count = static_cast<size_t>(hi - lo + 1);
  std::vector<detail::PerM> per_m(count);
  if (workers <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i)
      per_m[i] = detail::sweep_one_m(id, lo + static_cast<long>(i));
  } else {
    const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n);
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (size_t i = w; i < count; i += n)
            per_m[i] = detail::sweep_one_m(id, lo + static_cast<long>(i));
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  IdentityReport report;
  report.identity = id;
  report.m_lo = m_lo;
  report.m_hi = m_hi;
  ExactInt checked(0);
  for (const auto& pm : per_m) {
    checked += pm.checked;
    if (pm.first_failure) {
      // Counting stops at the first failing pair; later m values were
      // evaluated but are not claimed as checked.
      report.first_failure = pm.first_failure;
      report.pass = false;
      break;
    }
  }
  report.checked_count = checked;
  return report;
}

inline nlohmann::ordered_json report_to_json(const IdentityReport& r) {
  nlohmann::ordered_json j;
  j["identity"] = to_string(r.identity);
  j["m_lo"] = r.m_lo.convert_to<long long>();
  j["m_hi"] = r.m_hi.convert_to<long long>();
  j["checked"] = r.checked_count.convert_to<long long>();
  j["status"] = r.pass ? "pass" : "fail";
  if (r.first_failure) {
    nlohmann::ordered_json f;
    f["m"] = r.first_failure->m.convert_to<long long>();
    f["j"] = r.first_failure->j.convert_to<long long>();
    f["lhs"] = exact::rat_to_string(r.first_failure->lhs);
    f["rhs"] = exact::rat_to_string(r.first_failure->rhs);
    j["first_failure"] = std::move(f);
  } else {
    j["first_failure"] = nullptr;
  }
  return j;
}

}  // namespace hesstop::identities

#endif  // HESSTOP_IDENTITIES_HPP
