#include "qkz/tensor_space.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "qkz/error.hpp"

namespace qkz {

int WeightSector::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::string to_string(const BasisState& J) {
  std::string out = "(";
  for (std::size_t k = 0; k < J.letters.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(J.letters[k]);
  }
  return out + ")";
}

std::string to_string(const WeightSector& M) {
  std::string out;
  for (std::size_t a = 0; a < M.counts.size(); ++a) {
    if (a) out += ",";
    out += std::to_string(M.counts[a]);
  }
  return out;
}

WeightSector parse_sector(const std::string& text) {
  WeightSector M;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t()[]");
    const auto last = item.find_last_not_of(" \t()[]");
    if (first == std::string::npos) throw Error(ErrorKind::ParseError, "empty entry in sector '" + text + "'");
    const std::string digits = item.substr(first, last - first + 1);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(ErrorKind::ParseError, "bad sector entry '" + digits + "'");
    }
    M.counts.push_back(std::stoi(digits));
  }
  if (M.counts.empty()) throw Error(ErrorKind::ParseError, "empty sector");
  return M;
}

void validate_sector(int N, int n, const WeightSector& M) {
  if (N < 1 || n < 1) throw Error(ErrorKind::BadWeight, "N and n must be positive");
  if (M.colors() != N) {
    throw Error(ErrorKind::BadWeight, "sector " + to_string(M) + " must have " + std::to_string(N) + " entries");
  }
  if (std::any_of(M.counts.begin(), M.counts.end(), [](int m) { return m < 0; })) {
    throw Error(ErrorKind::BadWeight, "negative occupation in " + to_string(M));
  }
  if (M.total() != n) {
    throw Error(ErrorKind::BadWeight, "occupations of " + to_string(M) + " do not sum to n = " + std::to_string(n));
  }
}

WeightSector weight_of(const BasisState& J, int N) {
  WeightSector M{std::vector<int>(static_cast<std::size_t>(N), 0)};
  for (int j : J.letters) ++M.counts.at(static_cast<std::size_t>(j - 1));
  return M;
}

std::size_t sector_dimension(const WeightSector& M) {
  // Build the multinomial as a product of binomials to stay exact.
  std::size_t result = 1;
  int placed = 0;
  for (int m : M.counts) {
    for (int k = 1; k <= m; ++k) {
      result = result * static_cast<std::size_t>(placed + k) / static_cast<std::size_t>(k);
    }
    placed += m;
  }
  return result;
}

std::vector<BasisState> enumerate_sector(int N, int n, const WeightSector& M) {
  validate_sector(N, n, M);
  std::vector<int> word;
  for (int a = 1; a <= N; ++a) word.insert(word.end(), static_cast<std::size_t>(M.at(a)), a);
  std::vector<BasisState> out;
  out.reserve(sector_dimension(M));
  do {
    out.push_back(BasisState{word});
  } while (std::next_permutation(word.begin(), word.end()));
  return out;
}

std::vector<WeightSector> all_sectors(int N, int n) {
  if (N < 1 || n < 1) throw Error(ErrorKind::BadWeight, "N and n must be positive");
  std::vector<WeightSector> out;
  std::vector<int> counts(static_cast<std::size_t>(N), 0);
  // Compositions of n into N parts, first part descending.
  auto recurse = [&](auto&& self, int a, int remaining) -> void {
    if (a == N - 1) {
      counts[static_cast<std::size_t>(a)] = remaining;
      out.push_back(WeightSector{counts});
      return;
    }
    for (int m = remaining; m >= 0; --m) {
      counts[static_cast<std::size_t>(a)] = m;
      self(self, a + 1, remaining - m);
    }
  };
  recurse(recurse, 0, n);
  return out;
}

int inversion_length(const BasisState& J) {
  int count = 0;
  for (std::size_t k = 0; k < J.letters.size(); ++k) {
    for (std::size_t l = k + 1; l < J.letters.size(); ++l) {
      if (J.letters[k] > J.letters[l]) ++count;
    }
  }
  return count;
}

Space::Space(int N, int n) : N_(N), n_(n), dim_(1) {
  if (N < 1 || n < 1) throw Error(ErrorKind::BadWeight, "N and n must be positive");
  for (int k = 0; k < n; ++k) dim_ *= static_cast<std::size_t>(N);
}

std::size_t Space::stride(int site) const {
  if (site < 1 || site > n_) throw Error(ErrorKind::BadSite, "site " + std::to_string(site) + " outside 1.." + std::to_string(n_));
  std::size_t s = 1;
  for (int k = site; k < n_; ++k) s *= static_cast<std::size_t>(N_);
  return s;
}

std::size_t Space::index(const BasisState& J) const {
  if (J.sites() != n_) throw Error(ErrorKind::DimensionMismatch, "basis state " + to_string(J) + " has wrong length");
  std::size_t idx = 0;
  for (int j : J.letters) {
    if (j < 1 || j > N_) throw Error(ErrorKind::BadColor, "letter " + std::to_string(j) + " outside 1.." + std::to_string(N_));
    idx = idx * static_cast<std::size_t>(N_) + static_cast<std::size_t>(j - 1);
  }
  return idx;
}

BasisState Space::state(std::size_t index) const {
  if (index >= dim_) throw Error(ErrorKind::DimensionMismatch, "index out of range");
  BasisState J{std::vector<int>(static_cast<std::size_t>(n_))};
  for (int k = n_ - 1; k >= 0; --k) {
    J.letters[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(N_)) + 1;
    index /= static_cast<std::size_t>(N_);
  }
  return J;
}

struct Domain::SectorData {
  WeightSector weight;
  std::vector<BasisState> basis;
  std::vector<std::size_t> full_indices;
  std::unordered_map<std::size_t, std::size_t> position;
};

Domain::Domain(Space space, std::shared_ptr<const SectorData> sector) : space_(space), sector_(std::move(sector)) {}

Domain Domain::full(int N, int n) { return Domain(Space(N, n), nullptr); }

Domain Domain::sector(int N, int n, const WeightSector& M) {
  Space space(N, n);
  auto data = std::make_shared<SectorData>();
  data->weight = M;
  data->basis = enumerate_sector(N, n, M);
  for (std::size_t k = 0; k < data->basis.size(); ++k) {
    const std::size_t idx = space.index(data->basis[k]);
    data->full_indices.push_back(idx);
    data->position.emplace(idx, k);
  }
  return Domain(space, std::move(data));
}

std::size_t Domain::dim() const { return sector_ ? sector_->basis.size() : space_.dim(); }

const WeightSector& Domain::weight() const {
  if (!sector_) throw Error(ErrorKind::DomainMismatch, "full space has no single weight");
  return sector_->weight;
}

BasisState Domain::state(std::size_t k) const {
  if (!sector_) return space_.state(k);
  return sector_->basis.at(k);
}

std::optional<std::size_t> Domain::index(const BasisState& J) const { return local_index(space_.index(J)); }

std::optional<std::size_t> Domain::local_index(std::size_t full_index) const {
  if (!sector_) {
    if (full_index >= space_.dim()) return std::nullopt;
    return full_index;
  }
  auto it = sector_->position.find(full_index);
  if (it == sector_->position.end()) return std::nullopt;
  return it->second;
}

std::string Domain::label() const {
  const std::string base = "N=" + std::to_string(N()) + ",n=" + std::to_string(n());
  return sector_ ? base + ",M=(" + to_string(sector_->weight) + ")" : base;
}

bool operator==(const Domain& a, const Domain& b) {
  if (!(a.space_ == b.space_)) return false;
  if (a.is_sector() != b.is_sector()) return false;
  return !a.is_sector() || a.sector_->weight == b.sector_->weight;
}

}  // namespace qkz
