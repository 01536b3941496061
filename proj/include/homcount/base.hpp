#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcount {

// ---------------------------------------------------------------------------
// Errors. Checkers catch budget_error to mark sweep cells as skipped; every
// other error aborts the offending computation.
// ---------------------------------------------------------------------------

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A group-axiom or structural invariant failed; message names the axiom and
// the witness indices.
struct axiom_error : error {
  using error::error;
};

// A configured order/size bound was exceeded.
struct bound_error : error {
  using error::error;
};

// An enumeration would evaluate more candidate tuples than the budget allows.
struct budget_error : error {
  using error::error;
};

// Malformed input: bad GroupSpec, label, file, or CLI argument.
struct spec_error : error {
  using error::error;
};

[[noreturn]] inline void fail_axiom(const std::string& msg) { throw axiom_error(msg); }
[[noreturn]] inline void fail_spec(const std::string& msg) { throw spec_error(msg); }

// ---------------------------------------------------------------------------
// Small dynamic bitset over element indices.
// ---------------------------------------------------------------------------

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int capacity() const { return n_; }
  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

  int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  bool operator==(const Bitset& o) const = default;

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto w : w_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitsetHash {
  std::size_t operator()(const Bitset& b) const { return b.hash(); }
};

// ---------------------------------------------------------------------------
// Permutations of {0..n-1}, used for automorphisms and catalog input.
// Composition follows the right-action convention: then(p, q) applies p
// first, so x^(pq) = (x^p)^q.
// ---------------------------------------------------------------------------

using Perm = std::vector<std::uint16_t>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm perm_then(const Perm& p, const Perm& q) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

inline Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint16_t>(i);
  return r;
}

inline bool perm_is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

// Order as lcm of cycle lengths.
inline long long perm_order(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  long long ord = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    long long len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = 1;
      j = p[j];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto v : p) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

struct U16VecHash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    return PermHash{}(v);
  }
};

struct U32VecHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto x : v) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

// ---------------------------------------------------------------------------
// Arithmetic helpers.
// ---------------------------------------------------------------------------

inline long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }
inline long long lcm_ll(long long a, long long b) { return std::lcm(a, b); }

inline bool divides(long long d, long long n) {
  if (d == 0) return n == 0;
  return n % d == 0;
}

inline bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace homcount
