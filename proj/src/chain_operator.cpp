#include "qkz/chain_operator.hpp"

#include <algorithm>
#include <vector>

namespace qkz {

namespace {

template <class S>
using Triplet = Eigen::Triplet<S, std::ptrdiff_t>;

template <class S>
void prune_zeros(typename ChainOperator<S>::SparseMatrix& m) {
  m.prune([](const Eigen::Index&, const Eigen::Index&, const S& v) { return !ScalarTraits<S>::is_zero(v); });
}

template <class S>
void require_same_domain(const Domain& a, const Domain& b, const char* what) {
  if (!(a == b)) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": " + a.label() + " vs " + b.label());
}

std::string entry_label(const Domain& d, std::size_t r, std::size_t c) {
  return "<" + to_string(d.state(r)) + "|.|" + to_string(d.state(c)) + ">";
}

}  // namespace

template <class S>
ChainOperator<S>::ChainOperator(Domain domain, SparseMatrix matrix) : domain_(std::move(domain)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(domain_.dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "matrix does not match domain " + domain_.label());
  }
  prune_zeros<S>(matrix_);
  matrix_.makeCompressed();
}

template <class S>
ChainOperator<S> ChainOperator<S>::identity(const Domain& domain) {
  const auto d = static_cast<Eigen::Index>(domain.dim());
  SparseMatrix m(d, d);
  m.setIdentity();
  return ChainOperator(domain, std::move(m));
}

template <class S>
ChainOperator<S> ChainOperator<S>::zero(const Domain& domain) {
  const auto d = static_cast<Eigen::Index>(domain.dim());
  return ChainOperator(domain, SparseMatrix(d, d));
}

template <class S>
ChainOperator<S> ChainOperator<S>::diagonal(const Domain& domain, const std::function<S(const BasisState&)>& f) {
  const auto d = static_cast<Eigen::Index>(domain.dim());
  std::vector<Triplet<S>> entries;
  entries.reserve(domain.dim());
  for (std::size_t k = 0; k < domain.dim(); ++k) {
    S v = f(domain.state(k));
    ScalarTraits<S>::require_finite(v);
    if (!ScalarTraits<S>::is_zero(v)) entries.emplace_back(static_cast<std::ptrdiff_t>(k), static_cast<std::ptrdiff_t>(k), std::move(v));
  }
  SparseMatrix m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return ChainOperator(domain, std::move(m));
}

template <class S>
S ChainOperator<S>::coeff(std::size_t row, std::size_t col) const {
  if (row >= dim() || col >= dim()) throw Error(ErrorKind::DimensionMismatch, "entry outside operator");
  return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

template <class S>
S ChainOperator<S>::coeff(const BasisState& row, const BasisState& col) const {
  const auto r = domain_.index(row);
  const auto c = domain_.index(col);
  if (!r || !c) return S(0);
  return coeff(*r, *c);
}

template <class S>
LocalMatrix<S> ChainOperator<S>::to_dense() const {
  const auto d = static_cast<Eigen::Index>(dim());
  LocalMatrix<S> out = LocalMatrix<S>::Constant(d, d, S(0));
  for_each([&](std::size_t r, std::size_t c, const S& v) { out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v; });
  return out;
}

template <class S>
S Covector<S>::at(const BasisState& J) const {
  const auto k = domain.index(J);
  return k ? values(static_cast<Eigen::Index>(*k)) : S(0);
}

template <class S>
ChainOperator<S> compose(const ChainOperator<S>& a, const ChainOperator<S>& b) {
  require_same_domain<S>(a.domain(), b.domain(), "compose");
  typename ChainOperator<S>::SparseMatrix m = a.matrix() * b.matrix();
  return ChainOperator<S>(a.domain(), std::move(m));
}

template <class S>
ChainOperator<S> operator*(const ChainOperator<S>& a, const ChainOperator<S>& b) {
  return compose(a, b);
}

template <class S>
ChainOperator<S> operator+(const ChainOperator<S>& a, const ChainOperator<S>& b) {
  require_same_domain<S>(a.domain(), b.domain(), "add");
  typename ChainOperator<S>::SparseMatrix m = a.matrix() + b.matrix();
  return ChainOperator<S>(a.domain(), std::move(m));
}

template <class S>
ChainOperator<S> operator-(const ChainOperator<S>& a, const ChainOperator<S>& b) {
  require_same_domain<S>(a.domain(), b.domain(), "subtract");
  typename ChainOperator<S>::SparseMatrix m = a.matrix() - b.matrix();
  return ChainOperator<S>(a.domain(), std::move(m));
}

template <class S>
ChainOperator<S> operator*(const S& s, const ChainOperator<S>& a) {
  ScalarTraits<S>::require_finite(s);
  typename ChainOperator<S>::SparseMatrix m = a.matrix() * s;
  return ChainOperator<S>(a.domain(), std::move(m));
}

template <class S>
ChainOperator<S> commutator(const ChainOperator<S>& a, const ChainOperator<S>& b) {
  return a * b - b * a;
}

template <class S>
Vector<S> apply(const ChainOperator<S>& a, const Vector<S>& v) {
  if (static_cast<std::size_t>(v.size()) != a.dim()) throw Error(ErrorKind::DimensionMismatch, "apply: vector length");
  return a.matrix() * v;
}

template <class S>
Covector<S> apply_left(const Covector<S>& w, const ChainOperator<S>& a) {
  require_same_domain<S>(w.domain, a.domain(), "apply_left");
  RowVector<S> out = w.values * a.matrix();
  return Covector<S>{w.domain, std::move(out)};
}

template <class S>
ChainOperator<S> embed_local(const LocalMatrix<S>& local, std::span<const int> sites, int N, int n) {
  const Space space(N, n);
  std::vector<std::size_t> strides;
  for (std::size_t k = 0; k < sites.size(); ++k) {
    for (std::size_t l = 0; l < k; ++l) {
      if (sites[k] == sites[l]) throw Error(ErrorKind::BadSite, "repeated site " + std::to_string(sites[k]));
    }
    strides.push_back(space.stride(sites[k]));
  }
  std::size_t local_dim = 1;
  for (std::size_t k = 0; k < sites.size(); ++k) local_dim *= static_cast<std::size_t>(N);
  if (static_cast<std::size_t>(local.rows()) != local_dim || static_cast<std::size_t>(local.cols()) != local_dim) {
    throw Error(ErrorKind::DimensionMismatch, "local operator has wrong size");
  }
  for (Eigen::Index r = 0; r < local.rows(); ++r) {
    for (Eigen::Index c = 0; c < local.cols(); ++c) ScalarTraits<S>::require_finite(local(r, c));
  }
  const auto digit = [&](std::size_t index, std::size_t stride) { return (index / stride) % static_cast<std::size_t>(N); };
  std::vector<Triplet<S>> entries;
  for (std::size_t col = 0; col < space.dim(); ++col) {
    std::size_t local_col = 0;
    std::size_t base = col;
    for (std::size_t k = 0; k < sites.size(); ++k) {
      const std::size_t d = digit(col, strides[k]);
      local_col = local_col * static_cast<std::size_t>(N) + d;
      base -= d * strides[k];
    }
    for (std::size_t local_row = 0; local_row < local_dim; ++local_row) {
      const S& v = local(static_cast<Eigen::Index>(local_row), static_cast<Eigen::Index>(local_col));
      if (ScalarTraits<S>::is_zero(v)) continue;
      std::size_t row = base;
      std::size_t rest = local_row;
      for (std::size_t k = sites.size(); k-- > 0;) {
        row += (rest % static_cast<std::size_t>(N)) * strides[k];
        rest /= static_cast<std::size_t>(N);
      }
      entries.emplace_back(static_cast<std::ptrdiff_t>(row), static_cast<std::ptrdiff_t>(col), v);
    }
  }
  const auto d = static_cast<Eigen::Index>(space.dim());
  typename ChainOperator<S>::SparseMatrix m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return ChainOperator<S>(Domain::full(N, n), std::move(m));
}

template <class S>
ChainOperator<S> site_embed(const LocalMatrix<S>& op, int site, int N, int n) {
  const int sites[] = {site};
  return embed_local<S>(op, sites, N, n);
}

template <class S>
ChainOperator<S> pair_embed(const LocalMatrix<S>& op, int i, int j, int N, int n) {
  const int sites[] = {i, j};
  return embed_local<S>(op, sites, N, n);
}

template <class S>
LocalMatrix<S> permutation_local(int N) {
  return q_permutation_local<S>(N, S(1));
}

template <class S>
LocalMatrix<S> q_permutation_local(int N, const S& q) {
  if (ScalarTraits<S>::is_zero(q)) throw Error(ErrorKind::NonInvertibleQ, "q must be invertible");
  const S q_inv = S(1) / q;
  LocalMatrix<S> m = LocalMatrix<S>::Constant(N * N, N * N, S(0));
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      m(b * N + a, a * N + b) = a < b ? q : (a > b ? q_inv : S(1));
    }
  }
  return m;
}

template <class S>
LocalMatrix<S> matrix_unit(int N, int a, int b) {
  if (a < 1 || a > N || b < 1 || b > N) throw Error(ErrorKind::BadColor, "matrix unit index outside 1..N");
  LocalMatrix<S> m = LocalMatrix<S>::Constant(N, N, S(0));
  m(a - 1, b - 1) = S(1);
  return m;
}

template <class S>
ChainOperator<S> permutation(int i, int j, int N, int n) {
  if (i == j) throw Error(ErrorKind::BadSite, "permutation needs two distinct sites");
  return pair_embed<S>(permutation_local<S>(N), i, j, N, n);
}

template <class S>
ChainOperator<S> q_permutation(int i, int j, const S& q, int N, int n) {
  if (i == j) throw Error(ErrorKind::BadSite, "q-permutation needs two distinct sites");
  return pair_embed<S>(q_permutation_local<S>(N, q), i, j, N, n);
}

template <class S>
Covector<S> omega(const Domain& domain) {
  return Covector<S>{domain, RowVector<S>::Constant(static_cast<Eigen::Index>(domain.dim()), S(1))};
}

template <class S>
Covector<S> omega_q(const Domain& domain, const S& q) {
  if (ScalarTraits<S>::is_zero(q)) throw Error(ErrorKind::NonInvertibleQ, "q must be invertible");
  RowVector<S> values(static_cast<Eigen::Index>(domain.dim()));
  for (std::size_t k = 0; k < domain.dim(); ++k) values(static_cast<Eigen::Index>(k)) = ipow(q, inversion_length(domain.state(k)));
  return Covector<S>{domain, std::move(values)};
}

template <class S>
ChainOperator<S> restrict(const ChainOperator<S>& a, const WeightSector& M) {
  if (a.domain().is_sector()) throw Error(ErrorKind::DomainMismatch, "restrict expects a full-space operator");
  const Domain sector = Domain::sector(a.domain().N(), a.domain().n(), M);
  std::vector<Triplet<S>> entries;
  a.for_each([&](std::size_t r, std::size_t c, const S& v) {
    const auto lr = sector.local_index(r);
    const auto lc = sector.local_index(c);
    if (lr.has_value() != lc.has_value()) {
      throw Error(ErrorKind::NotBlockDiagonal, "entry " + entry_label(a.domain(), r, c) + " leaves sector (" + to_string(M) + ")");
    }
    if (lr) entries.emplace_back(static_cast<std::ptrdiff_t>(*lr), static_cast<std::ptrdiff_t>(*lc), v);
  });
  const auto d = static_cast<Eigen::Index>(sector.dim());
  typename ChainOperator<S>::SparseMatrix m(d, d);
  m.setFromTriplets(entries.begin(), entries.end());
  return ChainOperator<S>(sector, std::move(m));
}

template <class S>
Deviation compare(const ChainOperator<S>& a, const ChainOperator<S>& b) {
  require_same_domain<S>(a.domain(), b.domain(), "compare");
  Deviation dev;
  const ChainOperator<S> diff = a - b;
  diff.for_each([&](std::size_t r, std::size_t c, const S&) {
    dev.exact_match = false;
    const double rel = ScalarTraits<S>::relative_deviation(a.coeff(r, c), b.coeff(r, c));
    if (dev.witness.empty() || rel > dev.residual) {
      dev.residual = rel;
      dev.witness = entry_label(a.domain(), r, c) + ": " + ScalarTraits<S>::str(a.coeff(r, c)) + " vs " + ScalarTraits<S>::str(b.coeff(r, c));
    }
  });
  return dev;
}

template <class S>
Deviation compare(const Covector<S>& a, const Covector<S>& b) {
  require_same_domain<S>(a.domain, b.domain, "compare");
  Deviation dev;
  for (Eigen::Index k = 0; k < a.values.size(); ++k) {
    if (a.values(k) == b.values(k)) continue;
    dev.exact_match = false;
    const double rel = ScalarTraits<S>::relative_deviation(a.values(k), b.values(k));
    if (dev.witness.empty() || rel > dev.residual) {
      dev.residual = rel;
      dev.witness = "<" + to_string(a.domain.state(static_cast<std::size_t>(k))) + "|: " + ScalarTraits<S>::str(a.values(k)) + " vs " +
                    ScalarTraits<S>::str(b.values(k));
    }
  }
  return dev;
}

template <class S>
Deviation compare_scalar(const ChainOperator<S>& a, const S& s) {
  return compare(a, s * ChainOperator<S>::identity(a.domain()));
}

#define QKZ_INSTANTIATE(S)                                                                                  \
  template class ChainOperator<S>;                                                                          \
  template struct Covector<S>;                                                                              \
  template ChainOperator<S> compose(const ChainOperator<S>&, const ChainOperator<S>&);                      \
  template ChainOperator<S> operator*(const ChainOperator<S>&, const ChainOperator<S>&);                    \
  template ChainOperator<S> operator+(const ChainOperator<S>&, const ChainOperator<S>&);                    \
  template ChainOperator<S> operator-(const ChainOperator<S>&, const ChainOperator<S>&);                    \
  template ChainOperator<S> operator*(const S&, const ChainOperator<S>&);                                   \
  template ChainOperator<S> commutator(const ChainOperator<S>&, const ChainOperator<S>&);                   \
  template Vector<S> apply(const ChainOperator<S>&, const Vector<S>&);                                      \
  template Covector<S> apply_left(const Covector<S>&, const ChainOperator<S>&);                             \
  template ChainOperator<S> embed_local(const LocalMatrix<S>&, std::span<const int>, int, int);             \
  template ChainOperator<S> site_embed(const LocalMatrix<S>&, int, int, int);                               \
  template ChainOperator<S> pair_embed(const LocalMatrix<S>&, int, int, int, int);                          \
  template LocalMatrix<S> permutation_local<S>(int);                                                        \
  template LocalMatrix<S> q_permutation_local(int, const S&);                                               \
  template LocalMatrix<S> matrix_unit<S>(int, int, int);                                                    \
  template ChainOperator<S> permutation<S>(int, int, int, int);                                             \
  template ChainOperator<S> q_permutation(int, int, const S&, int, int);                                    \
  template Covector<S> omega<S>(const Domain&);                                                             \
  template Covector<S> omega_q(const Domain&, const S&);                                                    \
  template ChainOperator<S> restrict(const ChainOperator<S>&, const WeightSector&);                         \
  template Deviation compare(const ChainOperator<S>&, const ChainOperator<S>&);                             \
  template Deviation compare(const Covector<S>&, const Covector<S>&);                                       \
  template Deviation compare_scalar(const ChainOperator<S>&, const S&);

QKZ_INSTANTIATE(Rational)
QKZ_INSTANTIATE(Complex)

#undef QKZ_INSTANTIATE

}  // namespace qkz
