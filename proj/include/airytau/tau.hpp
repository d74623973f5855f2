// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "airy.hpp"
#include "bigfloat.hpp"
#include "context.hpp"
#include "errors.hpp"
#include "seed.hpp"

namespace airytau {

struct TauResult {
  int n = 0;
  BigComplex z;
  BigComplex value;
  BigReal err_est;
  Bits bits_used = 0;
};

struct PainleveTriple {
  BigComplex sigma, p, q;
};

namespace detail {

/// det of the n x n matrix with (i, k) entry d[orders[i] + k], by LU with partial pivoting.
inline BigComplex shifted_hankel_det(const std::vector<BigComplex>& d, const std::vector<int>& orders) {
  const std::size_t n = orders.size();
  if (n == 0) return BigComplex(BigReal(1, d.empty() ? kDefaultBits : d.front().precision()));
  std::vector<std::vector<BigComplex>> a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i].reserve(n);
    for (std::size_t k = 0; k < n; ++k) a[i].push_back(d.at(static_cast<std::size_t>(orders[i]) + k));
  }
  BigComplex det = BigComplex(BigReal(1, a[0][0].precision()));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    BigReal best = norm(a[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      BigReal v = norm(a[r][c]);
      if (v > best) best = std::move(v), piv = r;
    }
    if (best.is_zero()) return BigComplex(det.precision());
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      BigComplex f = a[r][c] / a[c][c];
      for (std::size_t k = c + 1; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

/// Product of Euclidean row norms of the tau_n matrix widened by one column. The extra
/// column keeps the scale meaningful at n = 1, where the plain bound is |tau_1| itself.
inline BigReal hadamard_bound(const std::vector<BigComplex>& d, int n) {
  BigReal h(1, d.empty() ? kDefaultBits : d.front().precision());
  for (int i = 0; i < n; ++i) {
    BigReal s(0, h.precision());
    for (int k = 0; k <= n; ++k) s += norm(d.at(static_cast<std::size_t>(i + k)));
    h *= sqrt(s);
  }
  return h;
}

}  // namespace detail

struct BumpTerm {
  std::vector<int> orders;
  long coeff = 0;
};

/// d^k/dz^k of det(phi^(o_i + c)) starting from o = (0, ..., n-1), expanded as a
/// signed sum of determinants with bumped row orders. Bumps that would make a row
/// equal to the next one vanish and are dropped.
inline std::vector<BumpTerm> bump_expansion(int n, int k) {
  if (n < 0 || k < 0) throw DomainError("bump_expansion: n and k must be >= 0");
  std::map<std::vector<int>, long> cur;
  std::vector<int> base(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) base[static_cast<std::size_t>(i)] = i;
  cur[base] = 1;
  for (int step = 0; step < k; ++step) {
    std::map<std::vector<int>, long> next;
    for (const auto& [o, c] : cur) {
      for (std::size_t i = 0; i < o.size(); ++i) {
        if (i + 1 < o.size() && o[i] + 1 == o[i + 1]) continue;
        auto b = o;
        ++b[i];
        next[b] += c;
      }
    }
    cur = std::move(next);
  }
  std::vector<BumpTerm> out;
  for (auto& [o, c] : cur)
    if (c != 0) out.push_back({o, c});
  return out;
}

/// tau_n and its first K derivatives, plus the Hadamard scale of tau_n.
struct TauJet {
  int n = 0;
  std::vector<BigComplex> d;
  BigReal scale;

  const BigComplex& value() const { return d.front(); }
};

struct TauJetSet {
  std::vector<TauJet> jets;

  std::vector<BigComplex> components() const {
    std::vector<BigComplex> c;
    for (const auto& j : jets) c.insert(c.end(), j.d.begin(), j.d.end());
    return c;
  }
  const TauJet& of(int n) const {
    for (const auto& j : jets)
      if (j.n == n) return j;
    throw DomainError("no jet for n = " + std::to_string(n));
  }
};

/// tau_n^(k), k = 0..K, from a table of phi derivatives of order >= 2n - 2 + K.
inline TauJet tau_jet_from_table(const std::vector<BigComplex>& table, int n, int K) {
  Bits p = table.empty() ? kDefaultBits : table.front().precision();
  TauJet j;
  j.n = n;
  if (n == 0) {
    j.d.emplace_back(BigReal(1, p));
    for (int k = 1; k <= K; ++k) j.d.emplace_back(p);
    j.scale = BigReal(1, p);
    return j;
  }
  if (static_cast<int>(table.size()) < 2 * n + std::max(K, 1) - 1) throw DomainError("derivative table too short");
  for (int k = 0; k <= K; ++k) {
    BigComplex s(p);
    for (const auto& t : bump_expansion(n, k)) s += detail::shifted_hankel_det(table, t.orders) * t.coeff;
    j.d.push_back(std::move(s));
  }
  j.scale = detail::hadamard_bound(table, n);
  return j;
}

/// Jets for several (n, K) requests from a single seed table at one precision.
inline TauJetSet tau_jets_at(const std::vector<std::pair<int, int>>& req, const BigComplex& z, const SeedSpec& seed,
                             Bits bits) {
  int M = 0;
  for (auto [n, K] : req) {
    if (n < 0 || K < 0) throw DomainError("tau: n and derivative order must be >= 0");
    M = std::max(M, 2 * n - 2 + std::max(K, 1));
  }
  auto table = seed_derivatives_at(z, seed, M, bits);
  TauJetSet s;
  for (auto [n, K] : req) s.jets.push_back(tau_jet_from_table(table.values, n, K));
  return s;
}

inline TauJetSet tau_jets(const std::vector<std::pair<int, int>>& req, const BigComplex& z, const SeedSpec& seed,
                          const PrecisionContext& ctx, Bits* bits_used = nullptr, BigReal* err = nullptr) {
  auto r = refine([&](Bits b) { return tau_jets_at(req, z, seed, b); }, ctx);
  if (bits_used) *bits_used = r.bits_used;
  if (err) *err = r.err_est;
  return std::move(r.value);
}

/// tau_n(z) at one fixed precision (no escalation).
inline BigComplex tau_at(int n, const BigComplex& z, const SeedSpec& seed, Bits bits) {
  return tau_jets_at({{n, 0}}, z, seed, bits).jets.front().d.front();
}

inline TauResult tau(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("tau: n must be >= 0");
  if (n == 0) return TauResult{0, z, BigComplex(BigReal(1, ctx.working_bits)), BigReal(0, 64), ctx.working_bits};
  auto r = refine([&](Bits b) { return tau_at(n, z, seed, b); }, ctx);
  return TauResult{n, z, std::move(r.value), std::move(r.err_est), r.bits_used};
}

inline BigComplex tau_derivative(int n, const BigComplex& z, const SeedSpec& seed, int k, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("tau_derivative: n must be >= 1");
  if (k < 0) throw DomainError("tau_derivative: order must be >= 0");
  auto r = refine([&](Bits b) { return tau_jets_at({{n, k}}, z, seed, b).jets.front().d.back(); }, ctx);
  return r.value;
}

/// Throws NearPoleError when |tau_n| is below the noise scale 1e3 * tol * (Hadamard bound).
inline void check_not_pole(const TauJet& j, const PrecisionContext& ctx) {
  if (j.n == 0) return;
  BigReal lim = j.scale * ctx.target_rel_tol * 1000L;
  if (abs(j.value()) < lim)
    throw NearPoleError("tau_" + std::to_string(j.n) + " vanishes to within noise: z is at a pole");
}

/// sigma^(m), m = 0..K-1, from tau^(0..K) (K <= 4).
inline std::vector<BigComplex> sigma_jet(const TauJet& j) {
  const int K = static_cast<int>(j.d.size()) - 1;
  if (K > 4) throw DomainError("sigma_jet: at most four tau derivatives");
  Bits p = j.value().precision();
  if (j.n == 0) return std::vector<BigComplex>(static_cast<std::size_t>(K), BigComplex(p));
  std::vector<BigComplex> u;
  for (int k = 1; k <= K; ++k) u.push_back(j.d[static_cast<std::size_t>(k)] / j.value());
  std::vector<BigComplex> s;
  if (K >= 1) s.push_back(u[0]);
  if (K >= 2) s.push_back(u[1] - u[0] * u[0]);
  if (K >= 3) {
    BigComplex u1sq = u[0] * u[0];
    s.push_back(u[2] - u[0] * u[1] * 3 + u1sq * u[0] * 2);
  }
  if (K >= 4) {
    BigComplex u1sq = u[0] * u[0];
    s.push_back(u[3] - u[0] * u[2] * 4 - u[1] * u[1] * 3 + u1sq * u[1] * 12 - u1sq * u1sq * 6);
  }
  return s;
}

inline BigComplex sigma(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("sigma: n must be >= 0");
  if (n == 0) return BigComplex(ctx.working_bits);
  auto s = tau_jets({{n, 1}}, z, seed, ctx);
  check_not_pole(s.jets[0], ctx);
  return sigma_jet(s.jets[0])[0];
}

enum class PRoute { Toda, LogDerivative };

/// p_n = -2 tau_{n+1} tau_{n-1} / tau_n^2 (Toda), or -2 (log tau_n)'' when cross-checking.
inline BigComplex p_fn(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx,
                       PRoute route = PRoute::Toda) {
  if (n < 1) throw DomainError("p_fn: n must be >= 1");
  if (route == PRoute::LogDerivative) {
    auto s = tau_jets({{n, 2}}, z, seed, ctx);
    check_not_pole(s.jets[0], ctx);
    return sigma_jet(s.jets[0])[1] * -2L;
  }
  auto s = tau_jets({{n - 1, 0}, {n, 0}, {n + 1, 0}}, z, seed, ctx);
  const auto& tn = s.of(n);
  check_not_pole(tn, ctx);
  BigComplex t = tn.value();
  return s.of(n + 1).value() * s.of(n - 1).value() / (t * t) * -2L;
}

inline BigComplex q_fn(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("q_fn: n must be >= 1");
  auto s = tau_jets({{n - 1, 1}, {n, 1}}, z, seed, ctx);
  check_not_pole(s.of(n - 1), ctx);
  check_not_pole(s.of(n), ctx);
  return sigma_jet(s.of(n - 1))[0] - sigma_jet(s.of(n))[0];
}

inline PainleveTriple painleve_triple(int n, const BigComplex& z, const SeedSpec& seed, const PrecisionContext& ctx) {
  if (n < 1) throw DomainError("painleve_triple: n must be >= 1");
  auto s = tau_jets({{n - 1, 1}, {n, 1}, {n + 1, 0}}, z, seed, ctx);
  const auto& tn = s.of(n);
  check_not_pole(tn, ctx);
  check_not_pole(s.of(n - 1), ctx);
  BigComplex sn = sigma_jet(tn)[0];
  BigComplex t = tn.value();
  return PainleveTriple{sn, s.of(n + 1).value() * s.of(n - 1).value() / (t * t) * -2L, sigma_jet(s.of(n - 1))[0] - sn};
}

/// Seed constants of the rotated problem: for direction +1,
///   C1~ = (C1/2) e^{pi i/3} + (3 C2/2) e^{-pi i/6},  C2~ = (C1/2) e^{-pi i/6} + (C2/2) e^{pi i/3},
/// and the conjugate phases for -1.
inline SeedSpec rotate_seed(const SeedSpec& s, int direction) {
  if (direction != 1 && direction != -1) throw DomainError("rotate_seed: direction must be +1 or -1");
  Bits p = std::max(s.c1.precision(), s.c2.precision());
  BigComplex e3 = BigComplex::unit_root(direction, 3, p);
  BigComplex e6 = BigComplex::unit_root(-direction, 6, p);
  BigComplex c1 = (s.c1 * e3 + s.c2 * e6 * 3L) / 2L;
  BigComplex c2 = (s.c1 * e6 + s.c2 * e3) / 2L;
  return SeedSpec(std::move(c1), std::move(c2));
}

/// Phase in tau_n[C](e^{2 pi i d/3} z) = phase * tau_n[rotate_seed(C, d)](z).
/// Direction fixed by a numerical check (see Rotation.DirectionPinnedAtN1to4): the
/// factor is e^{-2 pi i d n(n-1)/3}.
inline BigComplex rotation_phase(int n, int direction, Bits bits) {
  long e = -static_cast<long>(direction) * 2L * n * (n - 1);
  return BigComplex::unit_root(e % 6, 3, bits);
}

}  // namespace airytau
