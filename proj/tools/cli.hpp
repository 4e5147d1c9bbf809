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

#ifndef HESSTOP_TOOLS_CLI_HPP
#define HESSTOP_TOOLS_CLI_HPP

#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hesstop/diffgeo.hpp"
#include "hesstop/exact.hpp"
#include "hesstop/identities.hpp"
#include "hesstop/poly.hpp"
#include "hesstop/topo.hpp"

// Subcommands: identities, hyperbolic, arnold, index, isotopy, lemma.
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
// input error. Reports go to files (or stdout when no --out is given);
// human summaries go to stdout; diagnostics go to stderr.

namespace hesstop::cli {

using exact::ExactInt;
using exact::ExactRat;
using poly::HPoly;

struct Range {
  long lo = 0;
  long hi = 0;
};

/// Parses "a..b" (inclusive) or a single "a".
inline std::optional<Range> parse_range(const std::string& s) {
  const auto parse_long = [](const std::string& t) -> std::optional<long> {
    if (t.empty()) return std::nullopt;
    size_t pos = 0;
    long v = 0;
    try {
      v = std::stol(t, &pos);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (pos != t.size()) return std::nullopt;
    return v;
  };
  const size_t dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = parse_long(s);
    if (!v) return std::nullopt;
    return Range{*v, *v};
  }
  const auto lo = parse_long(s.substr(0, dots));
  const auto hi = parse_long(s.substr(dots + 2));
  if (!lo || !hi) return std::nullopt;
  return Range{*lo, *hi};
}

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline unsigned default_workers() {
  if (const char* env = std::getenv("HESSTOP_WORKERS")) {
    const auto r = parse_range(env);
    if (r && r->lo == r->hi && r->lo >= 1 && r->lo <= 256)
      return static_cast<unsigned>(r->lo);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

inline Range require_range(const std::string& text, const char* flag,
                           long min_lo, long max_hi) {
  const auto r = parse_range(text);
  if (!r) throw UsageError(std::string(flag) + ": expected 'a' or 'a..b'");
  if (r->lo > r->hi)
    throw UsageError(std::string(flag) + ": inverted range " + text);
  if (r->lo < min_lo || r->hi > max_hi)
    throw UsageError(std::string(flag) + ": range outside [" +
                     std::to_string(min_lo) + ", " + std::to_string(max_hi) +
                     "]");
  return *r;
}

inline void write_report(const std::string& out_path,
                         const nlohmann::ordered_json& j) {
  const std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + out_path);
  f << text;
}

inline HPoly load_polynomial(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open input file: " + path);
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw UsageError("malformed JSON in " + path + ": " + e.what());
  }
  try {
    return poly::hpoly_from_json(j);
  } catch (const std::exception& e) {
    throw UsageError("invalid polynomial in " + path + ": " + e.what());
  }
}

// Ordered parallel map over an index range: results come back in input
// order, so reports are identical for every worker count.
template <typename F>
inline auto ordered_parallel_map(size_t count, unsigned workers, F&& fn)
    -> std::vector<decltype(fn(size_t{0}))> {
  using R = decltype(fn(size_t{0}));
  std::vector<R> out(count);
  if (workers <= 1 || count < 2) {
    for (size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  const unsigned n = std::min<unsigned>(workers, static_cast<unsigned>(count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(n);
  for (unsigned w = 0; w < n; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (size_t i = w; i < count; i += n) out[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace detail

inline int cmd_identities(const std::vector<std::string>& which_raw,
                          const std::string& m_text, const std::string& out,
                          unsigned workers) {
  const Range m = detail::require_range(m_text, "--m", 1, 1000);
  std::vector<identities::IdentityId> which;
  for (const auto& name : which_raw) {
    if (name == "all") {
      which.assign(std::begin(identities::kAllIdentities),
                   std::end(identities::kAllIdentities));
      break;
    }
    const auto id = identities::identity_from_string(name);
    if (!id) throw detail::UsageError("unknown identity: " + name);
    which.push_back(*id);
  }

  bool all_pass = true;
  auto arr = nlohmann::ordered_json::array();
  for (const auto id : which) {
    const auto report =
        identities::sweep(id, ExactInt(m.lo), ExactInt(m.hi), workers);
    all_pass &= report.pass;
    arr.push_back(identities::report_to_json(report));
    if (!out.empty()) {
      std::cout << identities::to_string(id) << " m=" << m.lo << ".." << m.hi
                << " checked=" << report.checked_count
                << (report.pass ? " pass" : " FAIL") << "\n";
    }
  }
  detail::write_report(out, arr);
  return all_pass ? 0 : 1;
}

inline int cmd_hyperbolic(const std::string& in, const std::string& out) {
  const HPoly f = detail::load_polynomial(in);
  if (f.degree() < 2)
    throw detail::UsageError("hyperbolic: polynomial degree must be >= 2");
  const auto verdict = topo::classify(f);
  const auto j = topo::verdict_to_json(verdict);
  if (!out.empty())
    std::cout << topo::to_string(verdict.verdict) << "\n";
  detail::write_report(out, j);
  return verdict.verdict == topo::Verdict::kHyperbolic ? 0 : 1;
}

inline int cmd_arnold(long m, long n, const std::string& out, bool unchecked) {
  if (m < 2 || m > 30) throw detail::UsageError("arnold: need 2 <= m <= 30");
  if (n < m) throw detail::UsageError("arnold: violated hypothesis 'm <= n'");
  if ((n - m) % 2 != 0)
    throw detail::UsageError("arnold: violated hypothesis 'n - m even'");
  if (n > 1000) throw detail::UsageError("arnold: need n <= 1000");
  if (!unchecked && n >= m * m)
    throw detail::UsageError(
        "arnold: violated hypothesis 'n < m^2' (use --unchecked to emit "
        "anyway)");
  const HPoly f = diffgeo::arnold_family(ExactInt(m), ExactInt(n));
  detail::write_report(out, poly::hpoly_to_json(f));
  return 0;
}

inline int cmd_index(const std::string& in, std::uint64_t samples,
                     const std::string& out) {
  const HPoly f = detail::load_polynomial(in);
  if (f.degree() < 2)
    throw detail::UsageError("index: polynomial degree must be >= 2");
  const auto verdict = topo::classify(f);
  if (verdict.verdict != topo::Verdict::kHyperbolic) {
    std::cerr << "index: polynomial is " << topo::to_string(verdict.verdict)
              << ", not HYPERBOLIC\n";
    return 1;
  }
  const auto result =
      topo::index_at_origin(diffgeo::second_form(f), samples);
  detail::write_report(out, topo::index_to_json(result));
  if (!result.converged) {
    std::cerr << "index: did not converge below the step-turn bound (samples="
              << result.samples_used
              << ", max_step_turn=" << result.max_step_turn << ")\n";
    return 1;
  }
  if (!out.empty())
    std::cout << "index_times_two=" << result.value_times_two << "\n";
  return 0;
}

inline int cmd_isotopy(const std::string& m_text, const std::string& k_text,
                       unsigned t_samples, unsigned theta_samples,
                       const std::string& out, unsigned workers) {
  const Range mr = detail::require_range(m_text, "--m", 2, 30);
  const Range kr = detail::require_range(k_text, "--k", 1, 12);
  if (t_samples < 2) throw detail::UsageError("--t-samples: need >= 2");
  if (theta_samples < 8) throw detail::UsageError("--theta-samples: need >= 8");

  struct Pair {
    long m, k;
  };
  std::vector<Pair> pairs;
  for (long m = mr.lo; m <= mr.hi; ++m)
    for (long k = kr.lo; k <= kr.hi; ++k) pairs.push_back({m, k});

  const auto reports = detail::ordered_parallel_map(
      pairs.size(), workers,
      [&](size_t i) -> std::pair<topo::IsotopyReport, topo::IsotopyReport> {
        const HPoly P = diffgeo::arnold_P(ExactInt(pairs[i].m));
        const HPoly Q = poly::circle_power(static_cast<int>(pairs[i].k));
        return {topo::isotopy_phi_certify(P, Q, t_samples, theta_samples),
                topo::isotopy_psi_certify(P, Q, t_samples, theta_samples)};
      });

  bool any_failure = false;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [phi, psi] : reports) {
    // Pairs outside the hyperbolicity hypothesis are reported with the flag but
    // do not count as failures for the phi path.
    if (phi.hypothesis_ok && !phi.certificates_pass) any_failure = true;
    if (!psi.certificates_pass) any_failure = true;
    arr.push_back(topo::isotopy_to_json(phi));
    arr.push_back(topo::isotopy_to_json(psi));
    if (!out.empty()) {
      std::cout << "m=" << phi.m << " k=" << phi.k << " phi="
                << (phi.hypothesis_ok
                        ? (phi.certificates_pass ? "pass" : "FAIL")
                        : "hypothesis_violated")
                << " psi=" << (psi.certificates_pass ? "pass" : "FAIL")
                << "\n";
    }
  }
  detail::write_report(out, arr);
  return any_failure ? 1 : 0;
}

inline int cmd_lemma(const std::string& m_text, const std::string& k_text,
                     const std::string& out, unsigned workers) {
  const Range mr = detail::require_range(m_text, "--m", 2, 30);
  const Range kr = detail::require_range(k_text, "--k", 1, 12);

  struct Pair {
    long m, k;
  };
  std::vector<Pair> pairs;
  for (long m = mr.lo; m <= mr.hi; ++m)
    for (long k = kr.lo; k <= kr.hi; ++k) pairs.push_back({m, k});

  struct Entry {
    long m = 0, k = 0;
    bool equal = false;
    ExactRat c;
  };
  const auto entries =
      detail::ordered_parallel_map(pairs.size(), workers, [&](size_t i) {
        Entry e;
        e.m = pairs[i].m;
        e.k = pairs[i].k;
        e.equal = diffgeo::lemma3_check(ExactInt(e.m), ExactInt(e.k));
        e.c = diffgeo::euler_route_check(ExactInt(e.m), ExactInt(e.k));
        return e;
      });

  bool all_ok = true;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    // c * (m-1) must be the (negated) degree of Q; that is the empirical
    // resolution of the proportionality constant.
    const bool consistent = e.c * ExactRat(e.m - 1) == ExactRat(-2 * e.k);
    all_ok &= e.equal && consistent;
    nlohmann::ordered_json ej;
    ej["m"] = e.m;
    ej["k"] = e.k;
    ej["closed_form_equal"] = e.equal;
    ej["euler_constant"] = exact::rat_to_string(e.c);
    ej["constant_is_minus_degQ_over_m_minus_1"] = consistent;
    arr.push_back(std::move(ej));
    if (!out.empty())
      std::cout << "m=" << e.m << " k=" << e.k << " closed_form="
                << (e.equal ? "pass" : "FAIL")
                << " c=" << exact::rat_to_string(e.c) << "\n";
  }
  nlohmann::ordered_json j;
  j["m_lo"] = mr.lo;
  j["m_hi"] = mr.hi;
  j["k_lo"] = kr.lo;
  j["k_hi"] = kr.hi;
  j["entries"] = std::move(arr);
  j["status"] = all_ok ? "pass" : "fail";
  detail::write_report(out, j);
  return all_ok ? 0 : 1;
}

/// argv-style entry point, also used directly by the tests.
inline int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"exact verification of hyperbolic-polynomial identities and "
               "isotopy certificates"};
  app.require_subcommand(1);
  unsigned workers = detail::default_workers();
  app.add_option("--workers", workers, "worker thread count")
      ->check(CLI::Range(1u, 256u));

  // identities
  auto* sub_id = app.add_subcommand("identities", "sweep identity checks");
  std::vector<std::string> which{"all"};
  std::string id_m, id_out;
  sub_id->add_option("--which", which,
                     "identity names (eq1 eq2 eq3 eq5 eq6 eq7 eq10 t_closed "
                     "f_closed) or 'all'");
  sub_id->add_option("--m", id_m, "m range a..b")->required();
  sub_id->add_option("--out,-o", id_out, "report file (JSON)");

  // hyperbolic
  auto* sub_hyp = app.add_subcommand("hyperbolic", "classify a polynomial");
  std::string hyp_in, hyp_out;
  sub_hyp->add_option("--in,-i", hyp_in, "polynomial file (JSON)")->required();
  sub_hyp->add_option("--out,-o", hyp_out, "verdict file (JSON)");

  // arnold
  auto* sub_arn =
      app.add_subcommand("arnold", "emit a family polynomial file");
  long arn_m = 0, arn_n = 0;
  std::string arn_out;
  bool arn_unchecked = false;
  sub_arn->add_option("--m", arn_m, "rotational degree m")->required();
  sub_arn->add_option("--n", arn_n, "total degree n")->required();
  sub_arn->add_option("--out,-o", arn_out, "output polynomial file")
      ->required();
  sub_arn->add_flag("--unchecked", arn_unchecked,
                    "emit even when n >= m^2");

  // index
  auto* sub_idx =
      app.add_subcommand("index", "index of the asymptotic line field");
  std::string idx_in, idx_out;
  std::uint64_t idx_samples = 64;
  sub_idx->add_option("--in,-i", idx_in, "polynomial file (JSON)")->required();
  sub_idx->add_option("--samples", idx_samples, "initial sample count")
      ->check(CLI::Range(std::uint64_t{4}, std::uint64_t{1} << 20));
  sub_idx->add_option("--out,-o", idx_out, "result file (JSON)");

  // isotopy
  auto* sub_iso =
      app.add_subcommand("isotopy", "certify both isotopy paths over a grid");
  std::string iso_m, iso_k, iso_out;
  unsigned iso_t = 33, iso_theta = 256;
  sub_iso->add_option("--m", iso_m, "m range a..b")->required();
  sub_iso->add_option("--k", iso_k, "k range a..b")->required();
  sub_iso->add_option("--t-samples", iso_t, "grid samples in t");
  sub_iso->add_option("--theta-samples", iso_theta, "grid samples in theta");
  sub_iso->add_option("--out,-o", iso_out, "report file (JSON)");

  // lemma
  auto* sub_lem = app.add_subcommand(
      "lemma", "closed-form and proportionality sweeps for the pairing");
  std::string lem_m, lem_k, lem_out;
  sub_lem->add_option("--m", lem_m, "m range a..b")->required();
  sub_lem->add_option("--k", lem_k, "k range a..b")->required();
  sub_lem->add_option("--out,-o", lem_out, "report file (JSON)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    if (sub_id->parsed()) return cmd_identities(which, id_m, id_out, workers);
    if (sub_hyp->parsed()) return cmd_hyperbolic(hyp_in, hyp_out);
    if (sub_arn->parsed())
      return cmd_arnold(arn_m, arn_n, arn_out, arn_unchecked);
    if (sub_idx->parsed()) return cmd_index(idx_in, idx_samples, idx_out);
    if (sub_iso->parsed())
      return cmd_isotopy(iso_m, iso_k, iso_t, iso_theta, iso_out, workers);
    if (sub_lem->parsed()) return cmd_lemma(lem_m, lem_k, lem_out, workers);
  } catch (const detail::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace hesstop::cli

#endif  // HESSTOP_TOOLS_CLI_HPP
