#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace qkz {

/// Multi-index J = (j_1, ..., j_n) labelling e_{j_1} (x) ... (x) e_{j_n}.
/// Letters run over 1..N; site 1 is the leftmost tensor factor.
struct BasisState {
  std::vector<int> letters;

  int at(int site) const { return letters.at(static_cast<std::size_t>(site - 1)); }
  int sites() const { return static_cast<int>(letters.size()); }
  auto operator<=>(const BasisState&) const = default;
};

/// Occupation numbers (M_1, ..., M_N) of a weight subspace, sum M_a = n.
struct WeightSector {
  std::vector<int> counts;

  int colors() const { return static_cast<int>(counts.size()); }
  int at(int color) const { return counts.at(static_cast<std::size_t>(color - 1)); }
  int total() const;
  auto operator<=>(const WeightSector&) const = default;
};

std::string to_string(const BasisState& J);
std::string to_string(const WeightSector& M);

/// Parses "2,1" or "2, 1" into a sector. Throws ParseError.
WeightSector parse_sector(const std::string& text);

/// Checks N, n >= 1, |M| = N, M_a >= 0 and sum M_a = n. Throws BadWeight.
void validate_sector(int N, int n, const WeightSector& M);

/// Occupation numbers of J.
WeightSector weight_of(const BasisState& J, int N);

/// n! / (M_1! ... M_N!).
std::size_t sector_dimension(const WeightSector& M);

/// All multi-indices of the sector in lexicographic order.
std::vector<BasisState> enumerate_sector(int N, int n, const WeightSector& M);

/// All sectors of V^{(x) n}, starting from (n, 0, ..., 0) in descending
/// lexicographic order.
std::vector<WeightSector> all_sectors(int N, int n);

/// Number of pairs k < l with j_k > j_l.
int inversion_length(const BasisState& J);

/// Big-endian linearization of V^{(x) n}: index(J) = sum_k (j_k - 1) N^{n-k}.
class Space {
 public:
  Space(int N, int n);

  int N() const { return N_; }
  int n() const { return n_; }
  std::size_t dim() const { return dim_; }

  std::size_t index(const BasisState& J) const;
  BasisState state(std::size_t index) const;
  /// Stride of site i in the linear index.
  std::size_t stride(int site) const;

  friend bool operator==(const Space&, const Space&) = default;

 private:
  int N_;
  int n_;
  std::size_t dim_;
};

/// Where an operator lives: the whole chain space or one weight sector of it.
class Domain {
 public:
  static Domain full(int N, int n);
  static Domain sector(int N, int n, const WeightSector& M);

  const Space& space() const { return space_; }
  int N() const { return space_.N(); }
  int n() const { return space_.n(); }
  std::size_t dim() const;
  bool is_sector() const { return sector_ != nullptr; }
  /// Throws DomainMismatch on the full domain.
  const WeightSector& weight() const;

  BasisState state(std::size_t k) const;
  /// Position of J inside this domain, if J belongs to it.
  std::optional<std::size_t> index(const BasisState& J) const;
  /// Position in this domain of the full-space index, if present.
  std::optional<std::size_t> local_index(std::size_t full_index) const;
  std::string label() const;

  friend bool operator==(const Domain& a, const Domain& b);

 private:
  struct SectorData;
  explicit Domain(Space space, std::shared_ptr<const SectorData> sector);

  Space space_;
  std::shared_ptr<const SectorData> sector_;
};

}  // namespace qkz
