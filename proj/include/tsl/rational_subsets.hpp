#ifndef TSL_RATIONAL_SUBSETS_HPP
#define TSL_RATIONAL_SUBSETS_HPP

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "tsl/errors.hpp"
#include "tsl/rational_function.hpp"

namespace tsl {

/// Subset of Z>=0: residue classes mod h, with finitely many indices added or removed.
class RationalSubset {
 public:
  RationalSubset() : RationalSubset(1, {0}) {}
  RationalSubset(int h, std::vector<int> residues, std::set<long> added = {}, std::set<long> removed = {})
      : h_(h), added_(std::move(added)), removed_(std::move(removed)) {
    if (h < 1) throw Error(ErrorCode::invalid_input, "period must be positive");
    res_.assign(static_cast<std::size_t>(h), false);
    for (int r : residues) res_[static_cast<std::size_t>(((r % h) + h) % h)] = true;
    for (long n : added_)
      if (n < 0) throw Error(ErrorCode::invalid_input, "negative index in exceptional set");
    for (long n : removed_)
      if (n < 0) throw Error(ErrorCode::invalid_input, "negative index in exceptional set");
    normalize();
  }

  /// U^[e] = {n : n = e mod h}
  static RationalSubset residue_class(int h, int e) { return RationalSubset(h, {e}); }
  static RationalSubset all() { return RationalSubset(1, {0}); }

  int period() const { return h_; }
  std::vector<int> residues() const {
    std::vector<int> out;
    for (int r = 0; r < h_; ++r)
      if (res_[static_cast<std::size_t>(r)]) out.push_back(r);
    return out;
  }
  const std::set<long>& added() const { return added_; }
  const std::set<long>& removed() const { return removed_; }
  long max_exception() const {
    long m = -1;
    if (!added_.empty()) m = std::max(m, *added_.rbegin());
    if (!removed_.empty()) m = std::max(m, *removed_.rbegin());
    return m;
  }

  bool in_residues(long n) const { return res_[static_cast<std::size_t>(n % h_)]; }
  bool contains(long n) const {
    if (n < 0) return false;
    if (added_.count(n)) return true;
    if (removed_.count(n)) return false;
    return in_residues(n);
  }

  /// Density of U, i.e. #residues / h.
  Rational density() const { return Rational(static_cast<long>(residues().size()), h_); }

  RationalSubset complement() const {
    std::vector<int> r;
    for (int e = 0; e < h_; ++e)
      if (!res_[static_cast<std::size_t>(e)]) r.push_back(e);
    return RationalSubset(h_, r, removed_, added_);
  }

  /// U intersected with the residue class e mod k.
  RationalSubset intersect_class(int k, int e) const {
    const int h = std::lcm(h_, k);
    std::vector<int> r;
    for (int n = 0; n < h; ++n)
      if (in_residues(n) && n % k == ((e % k) + k) % k) r.push_back(n);
    std::set<long> add, rem;
    for (long n : added_)
      if (n % k == ((e % k) + k) % k) add.insert(n);
    for (long n : removed_)
      if (n % k == ((e % k) + k) % k) rem.insert(n);
    return RationalSubset(h, r, add, rem);
  }

  friend bool operator==(const RationalSubset& a, const RationalSubset& b) {
    return a.h_ == b.h_ && a.res_ == b.res_ && a.added_ == b.added_ && a.removed_ == b.removed_;
  }

 private:
  void normalize() {
    // smallest divisor d of h whose shift stabilizes the residue set
    for (int d = 1; d < h_; ++d) {
      if (h_ % d) continue;
      bool ok = true;
      for (int r = 0; r < h_ && ok; ++r)
        ok = res_[static_cast<std::size_t>(r)] == res_[static_cast<std::size_t>((r + d) % h_)];
      if (ok) {
        res_.resize(static_cast<std::size_t>(d));
        h_ = d;
        break;
      }
    }
    for (auto it = added_.begin(); it != added_.end();)
      it = in_residues(*it) ? added_.erase(it) : std::next(it);
    for (auto it = removed_.begin(); it != removed_.end();)
      it = in_residues(*it) ? std::next(it) : removed_.erase(it);
  }

  int h_;
  std::vector<bool> res_;
  std::set<long> added_;
  std::set<long> removed_;
};

/// Sum over n in U of t^n as V(t)/(1 - t^h), not reduced.
inline RationalFunction generating_function(const RationalSubset& u) {
  const int h = u.period();
  std::vector<Rational> v(static_cast<std::size_t>(h), Rational(0));
  for (int r : u.residues()) v[static_cast<std::size_t>(r)] = 1;
  QPoly exc;
  for (long n : u.added()) exc += QPoly::monomial(static_cast<int>(n));
  for (long n : u.removed()) exc -= QPoly::monomial(static_cast<int>(n));
  const QPoly den = QPoly::one_minus(Rational(1), h);
  return {QPoly(v) + exc * den, den};
}

struct RationalPartition {
  std::vector<RationalSubset> parts;
  std::set<long> exceptional;
};

inline RationalPartition standard_partition(int h) {
  if (h < 1) throw Error(ErrorCode::invalid_input, "partition period must be positive");
  RationalPartition p;
  for (int e = 0; e < h; ++e) p.parts.push_back(RationalSubset::residue_class(h, e));
  return p;
}

inline int partition_period(const RationalPartition& p) {
  int h = 1;
  for (const auto& u : p.parts) h = std::lcm(h, u.period());
  return h;
}

/// Parts pairwise disjoint and covering Z>=0 outside D; checked on a window that
/// covers all exceptions and two full periods.
inline bool is_valid_partition(const RationalPartition& p) {
  long top = 2L * partition_period(p);
  for (const auto& u : p.parts) top = std::max(top, u.max_exception() + 2L * partition_period(p));
  for (long n = 0; n <= top; ++n) {
    if (p.exceptional.count(n)) continue;
    int hits = 0;
    for (const auto& u : p.parts) hits += u.contains(n) ? 1 : 0;
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace tsl

#endif  // TSL_RATIONAL_SUBSETS_HPP
