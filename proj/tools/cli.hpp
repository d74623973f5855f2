// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <atomic>
#include <cctype>
#include <exception>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "airytau/oracles.hpp"

namespace airytau::cli {

enum ExitCode { kOk = 0, kFailed = 1, kConfig = 2, kPrecision = 3, kSector = 4 };

// ---------------------------------------------------------------------------------------------
// Literals.

namespace detail {

/// Length of a decimal number starting at `pos` (optional sign only if `signed_ok`), 0 if none.
inline std::size_t scan_number(const std::string& s, std::size_t pos, bool signed_ok) {
  std::size_t i = pos;
  if (signed_ok && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    std::size_t e = j;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == e) throw ConfigError("expected exponent digits at position " + std::to_string(e) + " in '" + s + "'", e);
    i = j;
  }
  return i - pos;
}

}  // namespace detail

/// Parses `a`, `bi`, `a+bi`, `a-bi` (decimal, optional exponents; a bare `i` means 1i).
inline BigComplex parse_complex(const std::string& s, Bits bits) {
  auto fail = [&](std::size_t pos, const std::string& what) -> BigComplex {
    throw ConfigError(what + " at position " + std::to_string(pos) + " in complex literal '" + s + "'", pos);
  };
  if (s.empty()) return fail(0, "empty value");
  std::size_t n1 = detail::scan_number(s, 0, true);
  std::size_t p = n1;
  if (p < s.size() && s[p] == 'i') {
    if (p + 1 != s.size()) return fail(p + 1, "unexpected character");
    std::string t = s.substr(0, n1);
    if (t.empty() || t == "+" || t == "-") t += "1";
    return BigComplex(BigReal(0, bits), BigReal::from_decimal(t, bits));
  }
  if (n1 == 0) {
    // "+i" / "-i"
    if (s.size() == 2 && (s[0] == '+' || s[0] == '-') && s[1] == 'i')
      return BigComplex(BigReal(0, bits), BigReal(s[0] == '-' ? -1 : 1, bits));
    return fail(s[0] == '+' || s[0] == '-' ? 1 : 0, "expected a number");
  }
  BigReal re = BigReal::from_decimal(s.substr(0, n1), bits);
  if (p == s.size()) return BigComplex(re, BigReal(0, bits));
  if (s[p] != '+' && s[p] != '-') return fail(p, "expected '+' or '-'");
  const bool neg = s[p] == '-';
  ++p;
  std::size_t n2 = detail::scan_number(s, p, false);
  std::string mag = n2 ? s.substr(p, n2) : "1";
  p += n2;
  if (p >= s.size() || s[p] != 'i') return fail(p, "expected 'i'");
  if (p + 1 != s.size()) return fail(p + 1, "unexpected character");
  BigReal im = BigReal::from_decimal(mag, bits);
  return BigComplex(re, neg ? -im : im);
}

/// "0.8", "-1/3", "1" as an exact rational.
inline Rational parse_rational(const std::string& s, std::size_t offset = 0) {
  auto fail = [&](std::size_t pos) -> Rational {
    throw ConfigError("malformed number at position " + std::to_string(offset + pos) + " in '" + s + "'",
                      offset + pos);
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  long num = 0, den = 1;
  std::size_t d0 = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num = num * 10 + (s[i++] - '0');
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) num = num * 10 + (s[i++] - '0'), den *= 10;
  } else if (i < s.size() && s[i] == '/') {
    ++i;
    std::size_t e0 = i;
    long d = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) d = d * 10 + (s[i++] - '0');
    if (i == e0 || d == 0) return fail(e0);
    den = d;
  }
  if (i == d0 || i != s.size()) return fail(i);
  return Rational(neg ? -num : num, den);
}

/// `argz=<r>pi` or `argnegz=<r>pi` (the `pi` suffix may be omitted when r = 0).
inline Ray parse_ray(const std::string& s) {
  auto eq = s.find('=');
  if (eq == std::string::npos) throw ConfigError("expected 'argz=' or 'argnegz=' in ray '" + s + "'", 0);
  std::string key = s.substr(0, eq), val = s.substr(eq + 1);
  if (key != "argz" && key != "argnegz") throw ConfigError("unknown ray key '" + key + "' at position 0", 0);
  std::string num = val;
  if (val.size() >= 2 && val.compare(val.size() - 2, 2, "pi") == 0) num = val.substr(0, val.size() - 2);
  Rational a = parse_rational(num, eq + 1);
  if (num == val && a.num != 0) throw ConfigError("ray angle must be a multiple of pi, e.g. 0.5pi", eq + 1 + val.size());
  if (key == "argnegz") return Ray::from_arg_negz(a);
  if (a.to_double() <= -1 || a.to_double() > 1) throw ConfigError("argz must lie in (-pi, pi]", eq + 1);
  return Ray{a};
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

/// "3", "1..4" or "1,3,5".
inline std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  auto range = s.find("..");
  auto to_int = [&](const std::string& t, std::size_t pos) {
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError("expected a non-negative integer at position " + std::to_string(pos) + " in '" + s + "'", pos);
    return std::stoi(t);
  };
  if (range != std::string::npos) {
    int a = to_int(s.substr(0, range), 0), b = to_int(s.substr(range + 2), range + 2);
    if (b < a) throw ConfigError("empty n range '" + s + "'", range);
    for (int n = a; n <= b; ++n) out.push_back(n);
    return out;
  }
  std::size_t pos = 0;
  for (const auto& t : split(s, ',')) {
    out.push_back(to_int(t, pos));
    pos += t.size() + 1;
  }
  return out;
}

inline std::vector<BigReal> parse_rho_list(const std::string& s, Bits bits) {
  std::vector<BigReal> out;
  std::size_t pos = 0;
  for (const auto& t : split(s, ',')) {
    std::size_t k = detail::scan_number(t, 0, false);
    if (k == 0 || k != t.size())
      throw ConfigError("malformed radius at position " + std::to_string(pos + k) + " in '" + s + "'", pos + k);
    out.push_back(BigReal::from_decimal(t, bits));
    if (out.back().sign() <= 0) throw ConfigError("radii must be positive", pos);
    pos += t.size() + 1;
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i - 1] < out[i])) throw ConfigError("radii must be strictly increasing in '" + s + "'", 0);
  return out;
}

// ---------------------------------------------------------------------------------------------
// Job configuration.

struct JobConfig {
  std::string command;
  std::string n_spec = "1";
  std::string c1 = "1", c2 = "0";
  std::vector<std::string> z;
  std::string ray;
  std::string rho_list;
  Bits bits = kDefaultBits;
  Bits max_bits = 0;  // 0: library default
  std::string tol = "1e-30";
  std::string format = "csv";
  std::string out;
  std::string suite = "all";
  int n_max = 0;
  std::string formula = "tau-nonosc";
  std::string quantity = "tau";
  int jobs = 0;

  PrecisionContext context() const {
    PrecisionContext c;
    c.working_bits = bits;
    std::size_t k = detail::scan_number(tol, 0, false);
    if (k == 0 || k != tol.size())
      throw ConfigError("malformed --tol at position " + std::to_string(k) + " in '" + tol + "'", k);
    c.target_rel_tol = BigReal::from_decimal(tol, 64);
    if (max_bits > 0) c.max_bits = max_bits;
    if (c.max_bits < bits) throw ConfigError("--max-bits must be >= --bits", 0);
    c.validate();
    return c;
  }
  SeedSpec seed() const { return SeedSpec(parse_complex(c1, bits), parse_complex(c2, bits)); }

  /// z points: explicit --z values, else the ray sampled at --rho-list.
  std::vector<BigComplex> points() const {
    std::vector<BigComplex> out;
    for (const auto& s : z) out.push_back(parse_complex(s, bits));
    if (!ray.empty()) {
      if (rho_list.empty()) throw ConfigError("--ray needs --rho-list", 0);
      Ray r = parse_ray(ray);
      for (auto& rho : parse_rho_list(rho_list, bits)) out.push_back(r.point(rho));
    }
    return out;
  }
};

/// P2A_DEFAULT_BITS when set and valid, else 256.
inline Bits default_bits() {
  const char* e = std::getenv("P2A_DEFAULT_BITS");
  if (!e || !*e) return kDefaultBits;
  std::string s = e;
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9)
    throw ConfigError("P2A_DEFAULT_BITS must be a positive integer, got '" + s + "'", 0);
  long b = std::stol(s);
  if (b < 16) throw ConfigError("P2A_DEFAULT_BITS must be >= 16", 0);
  return b;
}

// ---------------------------------------------------------------------------------------------
// Output.

inline std::string csv_header() { return "n,z_re,z_im,value_re,value_im,err_est,bits"; }

inline std::string csv_row(int n, const BigComplex& z, const BigComplex& v, const BigReal& err, Bits bits) {
  return std::to_string(n) + "," + z.re.serialize() + "," + z.im.serialize() + "," + v.re.serialize() + "," +
         v.im.serialize() + "," + err.serialize() + "," + std::to_string(bits);
}

inline nlohmann::ordered_json to_json(const BigComplex& z) {
  return nlohmann::ordered_json{{"re", z.re.serialize()}, {"im", z.im.serialize()}};
}

inline nlohmann::ordered_json to_json(const OracleReport& r) {
  return nlohmann::ordered_json{{"name", r.name},         {"inputs", r.inputs},
                                {"residual", r.residual.serialize()},
                                {"tolerance", r.tolerance.serialize()},
                                {"pass", r.pass},         {"vacuous", r.vacuous},
                                {"seconds", r.seconds}};
}

/// Runs fn over items on up to `jobs` threads; results come back in input order. An exception
/// stops collection at that item so earlier results can still be emitted.
template <class T, class F>
auto ordered_map(const std::vector<T>& items, F fn, int jobs) {
  using R = decltype(fn(items.front()));
  struct Slot {
    std::optional<R> value;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(items.size());
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  auto work = [&](std::size_t i) {
    try {
      slots[i].value.emplace(fn(items[i]));
    } catch (...) {
      slots[i].error = std::current_exception();
    }
  };
  if (jobs == 1 || items.size() < 2) {
    for (std::size_t i = 0; i < items.size(); ++i) {
      work(i);
      if (slots[i].error) break;
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < items.size(); i = next++) work(i);
      });
    for (auto& th : pool) th.join();
  }
  return slots;
}

// ---------------------------------------------------------------------------------------------
// Commands.

struct EvalRecord {
  int n = 0;
  BigComplex z;
  TauResult tau;
  std::optional<BigComplex> sigma, p, q;
  bool pole = false;
};

inline EvalRecord eval_point(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx) {
  EvalRecord r{n, z, tau(n, z, seed, ctx), {}, {}, {}, false};
  try {
    if (n == 0) {
      r.sigma = sigma(0, z, seed, ctx);
    } else {
      auto t = painleve_triple(n, z, seed, ctx);
      r.sigma = std::move(t.sigma);
      r.p = std::move(t.p);
      r.q = std::move(t.q);
    }
  } catch (const NearPoleError&) {
    r.pole = true;
  }
  return r;
}

inline int cmd_eval(const JobConfig& cfg, std::ostream& out) {
  auto ctx = cfg.context();
  auto seed = cfg.seed();
  auto pts = cfg.points();
  if (pts.empty()) throw ConfigError("eval needs --z or --ray/--rho-list", 0);
  if (cfg.quantity != "tau" && cfg.quantity != "sigma" && cfg.quantity != "p" && cfg.quantity != "q")
    throw ConfigError("--quantity must be tau, sigma, p or q", 0);
  std::vector<std::pair<int, BigComplex>> jobs;
  for (int n : parse_n_list(cfg.n_spec))
    for (const auto& z : pts) jobs.emplace_back(n, z);
  auto slots = ordered_map(jobs, [&](const auto& j) { return eval_point(j.first, j.second, seed, ctx); }, cfg.jobs);

  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (cfg.format == "csv") out << csv_header() << "\n";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error) {
      if (cfg.format == "csv") {
        out << "#partial\n";
      } else {
        out << nlohmann::ordered_json{{"records", arr}, {"partial", true}}.dump(2) << "\n";
      }
      std::rethrow_exception(slots[i].error);
    }
    if (!slots[i].value) break;
    const auto& r = *slots[i].value;
    if (cfg.format == "csv") {
      if (cfg.quantity == "tau") {
        out << csv_row(r.n, r.z, r.tau.value, r.tau.err_est, r.tau.bits_used) << "\n";
      } else {
        const auto& v = cfg.quantity == "sigma" ? r.sigma : cfg.quantity == "p" ? r.p : r.q;
        if (r.pole) throw NearPoleError("n=" + std::to_string(r.n) + ": z is at a pole of " + cfg.quantity);
        if (!v) throw DomainError(cfg.quantity + " is undefined for n = 0");
        out << csv_row(r.n, r.z, *v, r.tau.err_est, r.tau.bits_used) << "\n";
      }
    } else {
      nlohmann::ordered_json j{{"n", r.n}, {"z", to_json(r.z)}, {"tau", to_json(r.tau.value)}};
      j["sigma"] = r.sigma ? to_json(*r.sigma) : nlohmann::ordered_json();
      j["p"] = r.p ? to_json(*r.p) : nlohmann::ordered_json();
      j["q"] = r.q ? to_json(*r.q) : nlohmann::ordered_json();
      j["pole"] = r.pole;
      j["err_est"] = r.tau.err_est.serialize();
      j["bits_used"] = r.tau.bits_used;
      arr.push_back(std::move(j));
    }
  }
  if (cfg.format != "csv") out << nlohmann::ordered_json{{"records", arr}, {"partial", false}}.dump(2) << "\n";
  return kOk;
}

/// tau_n on z = k/20, k = 0..400, for one n.
struct FigureTrace {
  int n = 0;
  std::vector<BigComplex> z;
  std::vector<TauResult> tau;
};

inline std::vector<FigureTrace> figure_traces(int n_max, const BigComplex& c1, const PrecisionContext& ctx,
                                              int jobs = 0) {
  SeedSpec seed(c1, BigComplex(ctx.working_bits));
  std::vector<std::pair<int, int>> items;
  for (int n = 1; n <= n_max; ++n)
    for (int k = 0; k <= 400; ++k) items.emplace_back(n, k);
  auto slots = ordered_map(
      items,
      [&](const auto& it) { return tau(it.first, BigComplex(BigReal::ratio(it.second, 20, ctx.working_bits)), seed, ctx); },
      jobs);
  std::vector<FigureTrace> out(static_cast<std::size_t>(n_max));
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error) std::rethrow_exception(slots[i].error);
    auto& tr = out[static_cast<std::size_t>(items[i].first - 1)];
    tr.n = items[i].first;
    tr.z.push_back(slots[i].value->z);
    tr.tau.push_back(std::move(*slots[i].value));
  }
  return out;
}

/// The qualitative claims about the traces, as literal checks.
struct FigureClaims {
  int tau1_sign_changes = 0;
  bool tau2_positive_5_20 = false;
  double tau3_amp_5_10 = 0, tau3_amp_15_20 = 0;
  bool even_baseline_sign_ok = false;  // sign (-1)^s of tau_{2s} on [5, 20]
};

inline FigureClaims figure_claims(const std::vector<FigureTrace>& tr) {
  FigureClaims c;
  auto re = [](const TauResult& t) { return t.value.re.sign(); };
  const auto& t1 = tr.at(0).tau;
  for (std::size_t k = 1; k < t1.size(); ++k)
    if (re(t1[k]) * re(t1[k - 1]) < 0) ++c.tau1_sign_changes;
  c.tau2_positive_5_20 = true;
  c.even_baseline_sign_ok = true;
  for (std::size_t i = 1; i < tr.size(); i += 2) {
    const int s = static_cast<int>(i + 1) / 2;
    for (std::size_t k = 100; k <= 400; ++k) {
      int sg = re(tr[i].tau[k]);
      if (i == 1 && sg <= 0) c.tau2_positive_5_20 = false;
      if (sg != (s % 2 ? -1 : 1)) c.even_baseline_sign_ok = false;
    }
  }
  if (tr.size() >= 3) {
    // Compare log2 magnitudes; tau_3 grows large enough that doubles would do, but stay exact.
    auto amp = [&](std::size_t a, std::size_t b) {
      double m = -1e300;
      for (std::size_t k = a; k <= b; ++k) m = std::max(m, tr[2].tau[k].value.log2_abs());
      return m;
    };
    c.tau3_amp_5_10 = amp(100, 200);
    c.tau3_amp_15_20 = amp(300, 400);
  }
  return c;
}

inline int cmd_figures(const JobConfig& cfg, std::ostream& out) {
  auto ctx = cfg.context();
  BigComplex c1 = parse_complex(cfg.c1, cfg.bits);
  if (!parse_complex(cfg.c2, cfg.bits).is_zero()) throw ConfigError("figures uses C2 = 0; drop --c2", 0);
  if (c1.is_zero()) throw ConfigError("--c1 must be nonzero", 0);
  const int n_max = cfg.n_max > 0 ? cfg.n_max : 6;
  auto traces = figure_traces(n_max, c1, ctx, cfg.jobs);
  auto write = [&](std::ostream& os, const FigureTrace& t) {
    for (std::size_t k = 0; k < t.z.size(); ++k)
      os << csv_row(t.n, t.z[k], t.tau[k].value, t.tau[k].err_est, t.tau[k].bits_used) << "\n";
  };
  if (!cfg.out.empty()) {
    for (const auto& t : traces) {
      std::string path = cfg.out + "/tau_" + std::to_string(t.n) + ".csv";
      std::ofstream f(path);
      if (!f) throw ConfigError("cannot write '" + path + "'", 0);
      f << csv_header() << "\n";
      write(f, t);
    }
    return kOk;
  }
  out << csv_header() << "\n";
  for (const auto& t : traces) write(out, t);
  return kOk;
}

inline int cmd_compare(const JobConfig& cfg, std::ostream& out) {
  auto ctx = cfg.context();
  auto seed = cfg.seed();
  FormulaId f = FormulaId::parse(cfg.formula);
  auto pts = cfg.points();
  if (pts.empty()) throw ConfigError("compare needs --z or --ray/--rho-list", 0);
  std::vector<std::pair<int, BigComplex>> items;
  for (int n : parse_n_list(cfg.n_spec))
    for (auto z : pts) {
      if (f.regime == RegimeTag::Oscillatory && z.im.is_zero() && z.re.sign() > 0) z = BigComplex(phase_locked_rho(f, n, z.re));
      items.emplace_back(n, z);
    }
  auto slots = ordered_map(items, [&](const auto& it) { return compare_point(f, it.first, it.second, seed, ctx); },
                           cfg.jobs);
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  if (cfg.format == "csv") out << csv_header() << ",exact_re,exact_im,error,measure,predicted_order\n";
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].error) std::rethrow_exception(slots[i].error);
    const auto& p = *slots[i].value;
    const int n = items[i].first;
    const char* measure = p.measure == ErrorMeasure::Relative ? "relative" : "absolute";
    if (cfg.format == "csv") {
      out << csv_row(n, p.z, p.asymptotic, BigReal(0, 64), cfg.bits) << "," << p.exact.re.serialize() << ","
          << p.exact.im.serialize() << "," << p.error.rounded_to(64).serialize() << "," << measure << ","
          << p.predicted_order.to_string() << "\n";
    } else {
      arr.push_back(nlohmann::ordered_json{{"formula", f.name()},
                                           {"n", n},
                                           {"z", to_json(p.z)},
                                           {"exact", to_json(p.exact)},
                                           {"asymptotic", to_json(p.asymptotic)},
                                           {"rel_error", p.error.rounded_to(64).serialize()},
                                           {"measure", measure},
                                           {"predicted_order", p.predicted_order.to_string()}});
    }
  }
  if (cfg.format != "csv") out << arr.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------------------------
// Verify suites.

inline std::vector<BigComplex> generic_points(int count, double radius, std::uint64_t seed, Bits bits) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  std::vector<BigComplex> out;
  while (static_cast<int>(out.size()) < count) {
    double a = u(g), b = u(g);
    if (a * a + b * b > radius * radius || std::abs(b) < 0.05) continue;
    out.push_back(BigComplex(a, b, bits));
  }
  return out;
}

using ReportTask = std::function<OracleReport()>;

inline std::vector<ReportTask> suite_tasks(const std::string& suite, int n_max, const PrecisionContext& ctx) {
  std::vector<ReportTask> t;
  const Bits b = ctx.working_bits;
  const std::vector<SeedSpec> seeds{SeedSpec(1.0, 0.0, b), SeedSpec(1.0, 1.0, b)};
  auto want = [&](const char* s) { return suite == "all" || suite == s; };
  bool known = false;
  if (want("toda")) {
    known = true;
    for (int n = 1; n <= (n_max ? n_max : 5); ++n)
      for (const auto& z : generic_points(4, 5, 100 + n, b))
        t.push_back([=] { return toda_check(n, z, SeedSpec(1.0, 1.0, b), ctx); });
  }
  if (want("rotation")) {
    known = true;
    for (int n = 1; n <= (n_max ? n_max : 4); ++n)
      for (const auto& z : generic_points(3, 3, 200 + n, b))
        for (int d : {1, -1}) t.push_back([=] { return rotation_check(n, z, SeedSpec(0.8, -0.3, b), d, ctx); });
  }
  if (want("odes")) {
    known = true;
    for (int n = 1; n <= (n_max ? n_max : 4); ++n)
      for (const auto& s : seeds)
        for (const auto& z : generic_points(3, 4, 300 + n, b))
          for (auto eq : {Equation::PII, Equation::P34, Equation::SII})
            t.push_back([=] { return ode_residual(eq, n, z, s, ctx); });
  }
  if (want("heine")) {
    known = true;
    PrecisionContext q = PrecisionContext::with(128, 1e-25);
    for (int n = 1; n <= 2; ++n)
      for (int r = 0; r <= n; ++r) t.push_back([=] { return heine_determinant_check(n, r, BigComplex(-5.0, 0.0, 128), q); });
    for (int n = 1; n <= 2; ++n)
      t.push_back([=] { return heine_tau_check(n, BigComplex(-3.0, 1.0, 128), SeedSpec(1.0, 0.7, 128), q); });
  }
  if (want("moments")) {
    known = true;
    PrecisionContext q = PrecisionContext::with(128, 1e-25);
    for (int k = 0; k <= 6; ++k)
      t.push_back([=] { return moment_identity_check(k, BigComplex(2.0, 1.0, 128), SeedSpec(1.0, 0.5, 128), q); });
  }
  if (want("selberg")) {
    known = true;
    for (int d = 1; d <= 3; ++d)
      for (double C : {0.5, 1.0, 2.0}) t.push_back([=] { return selberg_check(d, BigReal(C, 256)); });
  }
  if (want("h-symmetry")) {
    known = true;
    t.push_back([] { return h_symmetry_check(8); });
  }
  if (want("c2zero-collapse")) {
    known = true;
    t.push_back([] { return c2zero_collapse_check(8); });
  }
  if (want("decay")) {
    known = true;
    SeedSpec ai(1.0, 0.0, b);
    Ray neg = Ray::from_arg_negz(Rational(0));
    for (int n = 1; n <= 3; ++n)
      t.push_back([=] { return decay_sweep(FormulaId::parse("tau-nonosc"), n, ai, neg, {25, 50, 100}, ctx).report; });
    for (const char* f : {"sigma-nonosc", "p-nonosc", "q-nonosc"})
      for (int n = 1; n <= 2; ++n)
        t.push_back([=] { return decay_sweep(FormulaId::parse(f), n, ai, neg, {30, 60, 120, 240}, ctx).report; });
    t.push_back([=] { return decay_sweep(FormulaId::parse("tau-osc"), 3, ai, Ray{Rational(0)}, {40, 80, 160}, ctx).report; });
    t.push_back([=] { return decay_sweep(FormulaId::parse("sigma-osc"), 2, ai, Ray{Rational(0)}, {40, 80, 160}, ctx).report; });
    t.push_back([=] { return decay_sweep(FormulaId::parse("q-osc"), 1, ai, Ray{Rational(0)}, {40, 80, 160}, ctx).report; });
  }
  if (!known) throw ConfigError("unknown suite '" + suite + "'", 0);
  return t;
}

inline int cmd_verify(const JobConfig& cfg, std::ostream& out) {
  auto ctx = cfg.context();
  auto tasks = suite_tasks(cfg.suite, cfg.n_max, ctx);
  auto slots = ordered_map(tasks, [](const ReportTask& f) { return f(); }, cfg.jobs);
  bool all = true;
  for (auto& s : slots) {
    if (s.error) std::rethrow_exception(s.error);
    const auto& r = *s.value;
    out << to_json(r).dump() << "\n";
    if (!r.pass && !r.vacuous) all = false;
  }
  return all ? kOk : kFailed;
}

// ---------------------------------------------------------------------------------------------
// Entry point.

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  try {
    cfg.bits = default_bits();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  }
  CLI::App app{"Airy-seeded tau functions and their asymptotics"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--n", cfg.n_spec, "n, a range a..b, or a list a,b,c");
    s->add_option("--c1", cfg.c1, "seed constant C1 (complex literal)");
    s->add_option("--c2", cfg.c2, "seed constant C2 (complex literal)");
    s->add_option("--z", cfg.z, "evaluation point(s), e.g. 5+2i");
    s->add_option("--ray", cfg.ray, "ray argz=<r>pi or argnegz=<r>pi");
    s->add_option("--rho-list", cfg.rho_list, "comma-separated radii along --ray");
    s->add_option("--bits", cfg.bits, "working precision in bits");
    s->add_option("--tol", cfg.tol, "target relative tolerance");
    s->add_option("--max-bits", cfg.max_bits, "precision cap for escalation");
    s->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--out", cfg.out, "output file (figures: directory)");
    s->add_option("--jobs", cfg.jobs, "worker threads (0: all cores)");
  };
  auto* eval = app.add_subcommand("eval", "tau_n, sigma_n, p_n, q_n at points");
  common(eval);
  eval->add_option("--quantity", cfg.quantity, "value column for CSV: tau, sigma, p or q");
  auto* fig = app.add_subcommand("figures", "tau_1..tau_6 on [0, 20], C2 = 0");
  common(fig);
  fig->add_option("--n-max", cfg.n_max, "largest n (default 6)");
  auto* cmp = app.add_subcommand("compare", "exact values against an asymptotic formula");
  common(cmp);
  cmp->add_option("--formula", cfg.formula, "e.g. tau-nonosc, sigma-osc, tau-stokes, tau-stokes1, tau-fullplane");
  auto* ver = app.add_subcommand("verify", "oracle suites as JSON lines");
  common(ver);
  ver->add_option("--suite", cfg.suite,
                  "toda, rotation, odes, heine, moments, selberg, decay, h-symmetry, c2zero-collapse or all");
  ver->add_option("--n-max", cfg.n_max, "largest n for n-indexed suites");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "config error: " << e.what() << "\n";
    return kConfig;
  }
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty() && !fig->parsed()) {
    file.open(cfg.out);
    if (!file) {
      err << "config error: cannot write '" << cfg.out << "'\n";
      return kConfig;
    }
    os = &file;
  }
  try {
    if (eval->parsed()) return cmd_eval(cfg, *os);
    if (fig->parsed()) return cmd_figures(cfg, *os);
    if (cmp->parsed()) return cmd_compare(cfg, *os);
    return cmd_verify(cfg, *os);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const PrecisionExhausted& e) {
    err << "precision exhausted: " << e.what() << " (last two: " << e.previous_value() << " | " << e.last_value()
        << ")\n";
    return kPrecision;
  } catch (const SectorError& e) {
    err << "sector error: " << e.what() << "\n";
    return kSector;
  } catch (const BranchError& e) {
    err << "sector error: " << e.what() << "\n";
    return kSector;
  } catch (const NearPoleError& e) {
    err << "domain error: " << e.what() << "\n";
    return kSector;
  } catch (const NearDenominatorZeroError& e) {
    err << "domain error: " << e.what() << "\n";
    return kSector;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace airytau::cli
