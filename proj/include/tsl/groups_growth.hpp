#ifndef TSL_GROUPS_GROWTH_HPP
#define TSL_GROUPS_GROWTH_HPP

#include <algorithm>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/rational_function.hpp"

namespace tsl {

/// Free product Z/p1 * ... * Z/pn; each factor generated by a_i with a_i and its
/// inverse of length 1, so the syllable a_i^k has length min(k, p_i - k).
struct FreeProductSpec {
  std::vector<int> orders;

  void validate() const {
    if (orders.empty()) throw Error(ErrorCode::invalid_input, "free product needs at least one factor");
    for (int p : orders)
      if (p < 2) throw Error(ErrorCode::invalid_input, "cyclic factor order must be at least 2");
  }
};

/// Number of nontrivial elements of Z/p of each syllable length (index = length).
inline std::vector<int> syllable_counts(int p) {
  std::vector<int> c(static_cast<std::size_t>(p / 2) + 1, 0);
  for (int k = 1; k < p; ++k) ++c[static_cast<std::size_t>(std::min(k, p - k))];
  return c;
}

/// Spherical growth series 1 + sum of syllable counts for one cyclic factor.
inline QPoly spherical_series(int p) {
  std::vector<Rational> c;
  for (int x : syllable_counts(p)) c.emplace_back(x);
  c[0] = 1;
  return QPoly(std::move(c));
}

struct GrowthSeries {
  RationalFunction spherical;
  RationalFunction cumulative;  // sigma / (1 - t)
  bool finite_group = false;
};

/// Reciprocal rule 1/sigma = sum 1/sigma_i - (n - 1); cumulative P = sigma / (1 - t).
inline GrowthSeries growth_series(const FreeProductSpec& spec) {
  spec.validate();
  const std::size_t n = spec.orders.size();
  QPoly prod{Rational(1)};
  for (int p : spec.orders) prod *= spherical_series(p);
  QPoly den = prod * Rational(-static_cast<long>(n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    QPoly others{Rational(1)};
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) others *= spherical_series(spec.orders[j]);
    den += others;
  }
  GrowthSeries g;
  g.spherical = reduce({prod, den});
  g.cumulative = reduce({g.spherical.num, g.spherical.den * QPoly{Rational(1), Rational(-1)}});
  g.finite_group = n == 1;
  return g;
}

inline constexpr int kBfsGuard = 20;

/// Cumulative counts #Gamma_0..#Gamma_{n_max} by dynamic programming over normal forms
/// (last factor, total length).
inline std::vector<Integer> bfs_counts(const FreeProductSpec& spec, int n_max) {
  spec.validate();
  if (n_max > kBfsGuard) throw Error(ErrorCode::guard_exceeded, "word length guard is " + std::to_string(kBfsGuard));
  const std::size_t f = spec.orders.size();
  std::vector<std::vector<int>> syl;
  for (int p : spec.orders) syl.push_back(syllable_counts(p));
  // words[l][i]: normal forms of length l whose last syllable lies in factor i
  std::vector<std::vector<Integer>> words(static_cast<std::size_t>(n_max) + 1, std::vector<Integer>(f, 0));
  std::vector<Integer> sphere(static_cast<std::size_t>(n_max) + 1, 0);
  sphere[0] = 1;
  for (int l = 1; l <= n_max; ++l) {
    for (std::size_t i = 0; i < f; ++i) {
      Integer acc = 0;
      for (int len = 1; len < static_cast<int>(syl[i].size()) && len <= l; ++len) {
        const int cnt = syl[i][static_cast<std::size_t>(len)];
        if (cnt == 0) continue;
        Integer prefixes = (l == len) ? Integer(1) : Integer(0);
        for (std::size_t j = 0; j < f; ++j)
          if (j != i) prefixes += words[static_cast<std::size_t>(l - len)][j];
        acc += cnt * prefixes;
      }
      words[static_cast<std::size_t>(l)][i] = acc;
      sphere[static_cast<std::size_t>(l)] += acc;
    }
  }
  std::vector<Integer> out(sphere.size());
  Integer run = 0;
  for (std::size_t l = 0; l < sphere.size(); ++l) out[l] = run += sphere[l];
  return out;
}

}  // namespace tsl

#endif  // TSL_GROUPS_GROWTH_HPP
