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

#ifndef HESSTOP_EXACT_HPP
#define HESSTOP_EXACT_HPP

#include <boost/multiprecision/gmp.hpp>

#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hesstop::exact {

/// Arbitrary-precision signed integer. GMP-backed; expression templates are
/// disabled so values behave like ordinary regular types.
using ExactInt =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;

/// Arbitrary-precision rational, always canonical: denominator > 0 and
/// gcd(|num|, den) = 1, so equality is structural.
using ExactRat =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

inline int sign_of(const ExactInt& v) { return v.sign(); }
inline int sign_of(const ExactRat& v) { return v.sign(); }

/// num/den as a canonical rational. Unlike the raw GMP type this rejects a
/// zero denominator instead of raising SIGFPE.
inline ExactRat make_rat(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  return ExactRat(num, den);
}

inline bool is_integer(const ExactRat& v) { return denominator(v) == 1; }

inline ExactInt to_integer(const ExactRat& v) {
  if (!is_integer(v))
    throw std::domain_error("to_integer: value is not an integer");
  return numerator(v);
}

/// Wire format used by every file format in this project: "p/q", or "p" when
/// the denominator is 1. No whitespace, no '+' sign, denominator unsigned.
inline std::string rat_to_string(const ExactRat& v) { return v.str(); }

inline ExactRat rat_from_string(std::string_view s) {
  const auto fail = [&] {
    throw std::invalid_argument("invalid rational literal: '" +
                                std::string(s) + "'");
  };
  size_t i = 0;
  if (i < s.size() && s[i] == '-') ++i;
  const size_t num_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == num_begin) fail();
  const ExactInt num{std::string(s.substr(0, i))};
  if (i == s.size()) return ExactRat(num);
  if (s[i] != '/') fail();
  ++i;
  const size_t den_begin = i;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == den_begin || i != s.size()) fail();
  const ExactInt den{std::string(s.substr(den_begin))};
  if (den == 0) fail();
  return ExactRat(num, den);  // ctor canonicalizes
}

namespace detail {

// Full Pascal row {C(n,0), ..., C(n,n)} by the multiplicative recurrence;
// every division is exact.
inline std::vector<ExactInt> binom_row(long n) {
  std::vector<ExactInt> row(static_cast<size_t>(n) + 1);
  row[0] = 1;
  for (long k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return row;
}

// The identity sweeps hit the same upper index m (and m-1) thousands of
// times in a row, so keep the last few rows per thread.
inline const std::vector<ExactInt>& cached_row(long n) {
  constexpr size_t kKeep = 8;
  thread_local std::deque<std::pair<long, std::vector<ExactInt>>> cache;
  for (auto& entry : cache)
    if (entry.first == n) return entry.second;
  cache.emplace_back(n, binom_row(n));
  if (cache.size() > kKeep) cache.pop_front();
  return cache.back().second;
}

}  // namespace detail

/// C(n,k), exact. Out-of-range k (k < 0 or k > n) yields 0; that convention
/// is what lets sums over shifted indices be evaluated as printed.
inline ExactInt binom(const ExactInt& n, const ExactInt& k) {
  if (n < 0) throw std::domain_error("binom: negative upper index");
  if (k < 0 || k > n) return ExactInt(0);
  if (n > std::numeric_limits<long>::max() / 2)
    throw std::domain_error("binom: upper index too large");
  const long nn = n.convert_to<long>();
  const long kk = k.convert_to<long>();
  if (nn <= 2048) return detail::cached_row(nn)[static_cast<size_t>(kk)];
  ExactInt r(1);
  const long kmin = std::min(kk, nn - kk);
  for (long i = 1; i <= kmin; ++i) {
    r *= (nn - kmin + i);
    r /= i;  // exact
  }
  return r;
}

/// Absorption identity: (m-k) C(m,k) = (k+1) C(m,k+1).
inline bool absorption_check(const ExactInt& m, const ExactInt& k) {
  if (k < 0 || k > m) throw std::domain_error("absorption_check: need 0 <= k <= m");
  return (m - k) * binom(m, k) == (k + 1) * binom(m, k + 1);
}

/// (-1)^e for a (possibly negative) integer exponent.
inline ExactInt neg_one_pow(long e) { return (e % 2 == 0) ? ExactInt(1) : ExactInt(-1); }

}  // namespace hesstop::exact

#endif  // HESSTOP_EXACT_HPP
