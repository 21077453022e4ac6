#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace multising {

// Error kinds map onto CLI exit codes (config 2, data 3, numerical 4).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an exact-enumeration path is asked for more than
/// kMaxEnumerationNodes variables, or when shapes disagree.
class DimensionError : public DataError {
 public:
  using DataError::DataError;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxEnumerationNodes = 20;

// Unordered pairs (r, j) with r > j are laid out row-major over the strict
// lower triangle: (1,0), (2,0), (2,1), (3,0), ...  All indices are 0-based.
inline constexpr std::size_t num_pairs(std::size_t p) noexcept {
  return p < 2 ? 0 : p * (p - 1) / 2;
}

inline constexpr std::size_t pair_index(std::size_t r, std::size_t j) noexcept {
  return r > j ? r * (r - 1) / 2 + j : j * (j - 1) / 2 + r;
}

struct Pair {
  std::size_t r;
  std::size_t j;
  friend bool operator==(const Pair&, const Pair&) = default;
};

Pair pair_at(std::size_t index) noexcept;

/// All pairs of a p-node graph in canonical order.
std::vector<Pair> all_pairs(std::size_t p);

/// n x p binary observation matrix for one level of the grouping factor.
class BinaryDataset {
 public:
  BinaryDataset() = default;
  BinaryDataset(std::size_t n, std::size_t p, std::vector<std::uint8_t> cells,
                std::string label = {});

  static BinaryDataset from_rows(
      std::initializer_list<std::initializer_list<int>> rows,
      std::string label = {});
  static BinaryDataset from_rows(const std::vector<std::vector<int>>& rows,
                                 std::string label = {});

  std::size_t rows() const noexcept { return n_; }
  std::size_t cols() const noexcept { return p_; }
  const std::string& label() const noexcept { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }

  std::uint8_t operator()(std::size_t i, std::size_t r) const noexcept {
    return cells_[i * p_ + r];
  }
  std::span<const std::uint8_t> row(std::size_t i) const noexcept {
    return {cells_.data() + i * p_, p_};
  }
  const std::vector<std::uint8_t>& cells() const noexcept { return cells_; }

  friend bool operator==(const BinaryDataset&, const BinaryDataset&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t p_ = 0;
  std::vector<std::uint8_t> cells_;
  std::string label_;
};

/// One BinaryDataset per level of the grouping factor, sharing a variable set.
struct GroupedData {
  std::vector<BinaryDataset> groups;
  std::vector<std::string> variable_names;

  std::size_t q() const noexcept { return groups.size(); }
  std::size_t p() const noexcept {
    return groups.empty() ? 0 : groups.front().cols();
  }
  /// Throws DataError on inconsistent column counts or name lists.
  void validate() const;
};

/// Log-linear parameter of one Ising model: p main effects and p(p-1)/2
/// interactions in canonical pair order.
struct CanonicalParams {
  std::vector<double> main;
  std::vector<double> inter;

  CanonicalParams() = default;
  explicit CanonicalParams(std::size_t p)
      : main(p, 0.0), inter(num_pairs(p), 0.0) {}
  CanonicalParams(std::vector<double> main_effects,
                  std::vector<double> interactions);

  std::size_t p() const noexcept { return main.size(); }
  double interaction(std::size_t r, std::size_t j) const noexcept {
    return inter[pair_index(r, j)];
  }
  double& interaction(std::size_t r, std::size_t j) noexcept {
    return inter[pair_index(r, j)];
  }
  bool all_finite() const noexcept;

  friend bool operator==(const CanonicalParams&,
                         const CanonicalParams&) = default;
};

/// Edge-inclusion indicators of one graph in canonical pair order.
struct EdgeIndicators {
  std::size_t p = 0;
  std::vector<std::uint8_t> bits;

  EdgeIndicators() = default;
  explicit EdgeIndicators(std::size_t nodes)
      : p(nodes), bits(num_pairs(nodes), 0) {}
  EdgeIndicators(std::size_t nodes, std::vector<std::uint8_t> b);

  std::size_t size() const noexcept { return bits.size(); }
  std::size_t edge_count() const noexcept;
  bool has(std::size_t r, std::size_t j) const noexcept {
    return bits[pair_index(r, j)] != 0;
  }
  void set(std::size_t r, std::size_t j, bool on) noexcept {
    bits[pair_index(r, j)] = on ? 1 : 0;
  }
  /// Compact key used for memoisation.
  std::string key() const;

  friend bool operator==(const EdgeIndicators&,
                         const EdgeIndicators&) = default;
};

/// Restrict interactions to the active set of `delta` (inactive set to zero).
CanonicalParams restrict_to(const CanonicalParams& lambda,
                            const EdgeIndicators& delta);

/// Sufficient statistics: y(r,r) = #{z_r = 1}, y(r,j) = #{z_r = z_j = 1}.
struct MarginalCounts {
  std::size_t p = 0;
  std::size_t n = 0;
  std::vector<long> y;  // symmetric p x p, row-major

  long operator()(std::size_t r, std::size_t j) const noexcept {
    return y[r * p + j];
  }
};

}  // namespace multising
