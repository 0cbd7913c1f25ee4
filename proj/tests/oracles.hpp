#pragma once

// Independent reference constructions used as test oracles. Nothing here calls
// the library's embedding, enumeration or symmetric-function code.

#include <algorithm>
#include <deque>
#include <map>
#include <vector>

#include "qkz/chain_operator.hpp"

namespace oracle {

using qkz::Rational;
using Dense = std::vector<std::vector<Rational>>;

inline std::vector<std::vector<int>> all_words(int N, int n) {
  std::vector<std::vector<int>> out{{}};
  for (int k = 0; k < n; ++k) {
    std::vector<std::vector<int>> next;
    for (const auto& w : out) {
      for (int a = 1; a <= N; ++a) {
        auto v = w;
        v.push_back(a);
        next.push_back(v);
      }
    }
    out = std::move(next);
  }
  return out;
}

inline std::size_t word_index(const std::vector<int>& w, int N) {
  std::size_t r = 0;
  for (int a : w) r = r * static_cast<std::size_t>(N) + static_cast<std::size_t>(a - 1);
  return r;
}

inline Dense zeros(std::size_t d) { return Dense(d, std::vector<Rational>(d, Rational(0))); }

/// Two-site local matrix (rows/cols a*N+b) acting on sites i, j (1-based),
/// written out state by state.
inline Dense pair_dense(const qkz::LocalMatrix<Rational>& local, int i, int j, int N, int n) {
  const auto words = all_words(N, n);
  Dense A = zeros(words.size());
  for (const auto& w : words) {
    const int a = w[static_cast<std::size_t>(i - 1)] - 1;
    const int b = w[static_cast<std::size_t>(j - 1)] - 1;
    for (int a2 = 0; a2 < N; ++a2) {
      for (int b2 = 0; b2 < N; ++b2) {
        const Rational& v = local(a2 * N + b2, a * N + b);
        if (v.is_zero()) continue;
        auto w2 = w;
        w2[static_cast<std::size_t>(i - 1)] = a2 + 1;
        w2[static_cast<std::size_t>(j - 1)] = b2 + 1;
        A[word_index(w2, N)][word_index(w, N)] += v;
      }
    }
  }
  return A;
}

inline Dense multiply(const Dense& A, const Dense& B) {
  const std::size_t d = A.size();
  Dense C = zeros(d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      if (A[r][k].is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c) C[r][c] += A[r][k] * B[k][c];
    }
  }
  return C;
}

inline bool equal(const qkz::ChainOperator<Rational>& op, const Dense& D) {
  if (op.dim() != D.size()) return false;
  for (std::size_t r = 0; r < D.size(); ++r) {
    for (std::size_t c = 0; c < D.size(); ++c) {
      if (op.coeff(r, c) != D[r][c]) return false;
    }
  }
  return true;
}

/// Shortest path from the sorted word by adjacent transpositions (BFS).
inline int bfs_inversion_length(const std::vector<int>& target) {
  auto start = target;
  std::sort(start.begin(), start.end());
  std::map<std::vector<int>, int> dist{{start, 0}};
  std::deque<std::vector<int>> queue{start};
  while (!queue.empty()) {
    const auto w = queue.front();
    queue.pop_front();
    if (w == target) return dist[w];
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      auto v = w;
      std::swap(v[k], v[k + 1]);
      if (dist.emplace(v, dist[w] + 1).second) queue.push_back(v);
    }
  }
  return -1;
}

/// e_d as a sum over all d-subsets.
template <class S>
S subset_elementary(const std::vector<S>& values, int d) {
  const std::size_t m = values.size();
  S total(0);
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    if (__builtin_popcount(mask) != d) continue;
    S prod(1);
    for (std::size_t k = 0; k < m; ++k) {
      if (mask >> k & 1u) prod *= values[k];
    }
    total += prod;
  }
  return total;
}

}  // namespace oracle
