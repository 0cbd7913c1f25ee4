#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cstddef>
#include <functional>
#include <span>
#include <string>

#include "qkz/scalar.hpp"
#include "qkz/tensor_space.hpp"

namespace qkz {

template <class S>
using LocalMatrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using RowVector = Eigen::Matrix<S, 1, Eigen::Dynamic>;

/// Sparse linear operator on V^{(x) n} or on one of its weight sectors.
/// Entries are row-major and coordinate sorted; exact zeros are never stored.
template <class S>
class ChainOperator {
 public:
  using SparseMatrix = Eigen::SparseMatrix<S, Eigen::RowMajor, std::ptrdiff_t>;

  ChainOperator(Domain domain, SparseMatrix matrix);

  static ChainOperator identity(const Domain& domain);
  static ChainOperator zero(const Domain& domain);
  /// Diagonal operator with entry f(J) on |J>.
  static ChainOperator diagonal(const Domain& domain, const std::function<S(const BasisState&)>& f);

  const Domain& domain() const { return domain_; }
  const SparseMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return domain_.dim(); }
  std::size_t nonzeros() const { return static_cast<std::size_t>(matrix_.nonZeros()); }

  S coeff(std::size_t row, std::size_t col) const;
  /// Matrix element <row| A |col>; zero when either state is outside the domain.
  S coeff(const BasisState& row, const BasisState& col) const;
  LocalMatrix<S> to_dense() const;

  /// Visits stored entries as (row, col, value) in row-major order.
  template <class F>
  void for_each(F&& f) const {
    for (Eigen::Index r = 0; r < matrix_.outerSize(); ++r) {
      for (typename SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
        f(static_cast<std::size_t>(it.row()), static_cast<std::size_t>(it.col()), it.value());
      }
    }
  }

 private:
  Domain domain_;
  SparseMatrix matrix_;
};

/// Row vector over a domain's basis, e.g. <Omega| = sum_J <J|.
template <class S>
struct Covector {
  Domain domain;
  RowVector<S> values;

  S at(const BasisState& J) const;
};

/// Outcome of comparing two operators or covectors entrywise. The residual is
/// the largest |a - b| / max(1, |a|, |b|); the witness names the worst entry.
struct Deviation {
  double residual = 0.0;
  bool exact_match = true;
  std::string witness;
};

/// compose(A, B) applies B first, then A.
template <class S>
ChainOperator<S> compose(const ChainOperator<S>& a, const ChainOperator<S>& b);
template <class S>
ChainOperator<S> operator*(const ChainOperator<S>& a, const ChainOperator<S>& b);
template <class S>
ChainOperator<S> operator+(const ChainOperator<S>& a, const ChainOperator<S>& b);
template <class S>
ChainOperator<S> operator-(const ChainOperator<S>& a, const ChainOperator<S>& b);
template <class S>
ChainOperator<S> operator*(const S& s, const ChainOperator<S>& a);
template <class S>
ChainOperator<S> commutator(const ChainOperator<S>& a, const ChainOperator<S>& b);

template <class S>
Vector<S> apply(const ChainOperator<S>& a, const Vector<S>& v);
template <class S>
Covector<S> apply_left(const Covector<S>& w, const ChainOperator<S>& a);

/// Embeds a local operator acting on the listed sites (in that tensor order,
/// big-endian) into the full space. Throws BadSite / DimensionMismatch.
template <class S>
ChainOperator<S> embed_local(const LocalMatrix<S>& local, std::span<const int> sites, int N, int n);
/// op acting on factor `site`, identity elsewhere.
template <class S>
ChainOperator<S> site_embed(const LocalMatrix<S>& op, int site, int N, int n);
/// Two-site operator with its first factor on site i and second on site j.
template <class S>
ChainOperator<S> pair_embed(const LocalMatrix<S>& op, int i, int j, int N, int n);

/// P on C^N (x) C^N.
template <class S>
LocalMatrix<S> permutation_local(int N);
/// P^q: e_a (x) e_b -> q e_b (x) e_a (a < b), q^{-1} e_b (x) e_a (a > b), swap (a = b).
template <class S>
LocalMatrix<S> q_permutation_local(int N, const S& q);
/// e_{ab} as an N x N matrix (1-based colors).
template <class S>
LocalMatrix<S> matrix_unit(int N, int a, int b);

template <class S>
ChainOperator<S> permutation(int i, int j, int N, int n);
/// Throws NonInvertibleQ for q = 0.
template <class S>
ChainOperator<S> q_permutation(int i, int j, const S& q, int N, int n);

/// All components 1.
template <class S>
Covector<S> omega(const Domain& domain);
/// Component q^{l(J)} on |J>.
template <class S>
Covector<S> omega_q(const Domain& domain, const S& q);

/// Block of a full-space operator on sector M. Throws NotBlockDiagonal if an
/// entry couples the sector to its complement.
template <class S>
ChainOperator<S> restrict(const ChainOperator<S>& a, const WeightSector& M);

template <class S>
Deviation compare(const ChainOperator<S>& a, const ChainOperator<S>& b);
template <class S>
Deviation compare(const Covector<S>& a, const Covector<S>& b);
/// Compares a to s * identity.
template <class S>
Deviation compare_scalar(const ChainOperator<S>& a, const S& s);

extern template class ChainOperator<Rational>;
extern template class ChainOperator<Complex>;

}  // namespace qkz
