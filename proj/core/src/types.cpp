#include "multising/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace multising {

Pair pair_at(std::size_t index) noexcept {
  // Largest r with r(r-1)/2 <= index.
  auto r = static_cast<std::size_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  while (r * (r - 1) / 2 > index) --r;
  while ((r + 1) * r / 2 <= index) ++r;
  return {r, index - r * (r - 1) / 2};
}

std::vector<Pair> all_pairs(std::size_t p) {
  std::vector<Pair> out;
  out.reserve(num_pairs(p));
  for (std::size_t r = 1; r < p; ++r)
    for (std::size_t j = 0; j < r; ++j) out.push_back({r, j});
  return out;
}

BinaryDataset::BinaryDataset(std::size_t n, std::size_t p,
                             std::vector<std::uint8_t> cells, std::string label)
    : n_(n), p_(p), cells_(std::move(cells)), label_(std::move(label)) {
  if (p_ == 0) throw DataError("binary dataset needs at least one column");
  if (cells_.size() != n_ * p_)
    throw DimensionError("binary dataset: cell count does not match n x p");
  for (auto v : cells_)
    if (v > 1) throw DataError("binary dataset: entries must be 0 or 1");
}

BinaryDataset BinaryDataset::from_rows(const std::vector<std::vector<int>>& rows,
                                       std::string label) {
  if (rows.empty()) throw DataError("binary dataset needs at least one row");
  const std::size_t p = rows.front().size();
  std::vector<std::uint8_t> cells;
  cells.reserve(rows.size() * p);
  for (const auto& row : rows) {
    if (row.size() != p) throw DimensionError("ragged rows in binary dataset");
    for (int v : row) {
      if (v != 0 && v != 1) throw DataError("binary dataset: entries must be 0 or 1");
      cells.push_back(static_cast<std::uint8_t>(v));
    }
  }
  return BinaryDataset(rows.size(), p, std::move(cells), std::move(label));
}

BinaryDataset BinaryDataset::from_rows(
    std::initializer_list<std::initializer_list<int>> rows, std::string label) {
  std::vector<std::vector<int>> v;
  for (auto r : rows) v.emplace_back(r);
  return from_rows(v, std::move(label));
}

void GroupedData::validate() const {
  if (groups.empty()) throw DataError("grouped data has no groups");
  const std::size_t cols = groups.front().cols();
  for (const auto& g : groups) {
    if (g.cols() != cols)
      throw DimensionError("groups disagree on the number of variables");
    if (g.rows() == 0) throw DataError("group '" + g.label() + "' is empty");
  }
  if (!variable_names.empty() && variable_names.size() != cols)
    throw DimensionError("variable name count does not match column count");
}

CanonicalParams::CanonicalParams(std::vector<double> main_effects,
                                 std::vector<double> interactions)
    : main(std::move(main_effects)), inter(std::move(interactions)) {
  if (inter.size() != num_pairs(main.size()))
    throw DimensionError("canonical parameter: interaction count must be p(p-1)/2");
}

bool CanonicalParams::all_finite() const noexcept {
  auto finite = [](double v) { return std::isfinite(v); };
  return std::all_of(main.begin(), main.end(), finite) &&
         std::all_of(inter.begin(), inter.end(), finite);
}

EdgeIndicators::EdgeIndicators(std::size_t nodes, std::vector<std::uint8_t> b)
    : p(nodes), bits(std::move(b)) {
  if (bits.size() != num_pairs(p))
    throw DimensionError("edge indicators: expected p(p-1)/2 bits");
  for (auto& v : bits) v = v ? 1 : 0;
}

std::size_t EdgeIndicators::edge_count() const noexcept {
  return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), 1));
}

std::string EdgeIndicators::key() const {
  std::string k((bits.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) k[i / 8] = static_cast<char>(k[i / 8] | (1 << (i % 8)));
  return k;
}

CanonicalParams restrict_to(const CanonicalParams& lambda,
                            const EdgeIndicators& delta) {
  if (delta.size() != lambda.inter.size())
    throw DimensionError("restrict_to: edge indicator size mismatch");
  CanonicalParams out = lambda;
  for (std::size_t k = 0; k < out.inter.size(); ++k)
    if (!delta.bits[k]) out.inter[k] = 0.0;
  return out;
}

}  // namespace multising
