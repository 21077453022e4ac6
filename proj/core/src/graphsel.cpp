#include "multising/graphsel.hpp"

#include <algorithm>
#include <cmath>

#include "multising/numeric.hpp"

namespace multising {

namespace {

std::size_t check_burn_in(const ChainOutput& chain, std::optional<std::size_t> burn_in) {
  const std::size_t b = burn_in.value_or(chain.burn_in);
  if (b >= chain.iterations)
    throw ConfigError("burn_in (" + std::to_string(b) + ") must be smaller than the number of iterations (" +
                      std::to_string(chain.iterations) + ")");
  return b;
}

std::vector<const ChainSample*> retained_samples(const ChainOutput& chain, std::size_t burn_in) {
  std::vector<const ChainSample*> out;
  for (const auto& s : chain.samples)
    if (s.iteration > burn_in) out.push_back(&s);
  return out;
}

}  // namespace

PpiTable ppi(const ChainOutput& chain, std::optional<std::size_t> burn_in) {
  const std::size_t b = check_burn_in(chain, burn_in);
  const std::size_t edges = num_pairs(chain.p);
  PpiTable t;
  t.p = chain.p;
  t.burn_in = b;
  t.iterations = chain.iterations;
  t.values.assign(chain.q, std::vector<double>(edges, 0.0));
  if (b == chain.burn_in && chain.retained > 0) {
    const double n = static_cast<double>(chain.retained);
    for (std::size_t x = 0; x < chain.q; ++x)
      for (std::size_t e = 0; e < edges; ++e)
        t.values[x][e] = static_cast<double>(chain.inclusion_counts[x][e]) / n;
    return t;
  }
  const auto kept = retained_samples(chain, b);
  if (kept.empty())
    throw DataError("no retained samples after burn-in " + std::to_string(b) +
                    " (the chain was run without keeping samples)");
  for (const auto* s : kept)
    for (std::size_t x = 0; x < chain.q; ++x)
      for (std::size_t e = 0; e < edges; ++e) t.values[x][e] += s->delta[x * edges + e];
  for (auto& row : t.values)
    for (auto& v : row) v /= static_cast<double>(kept.size());
  return t;
}

SelectedGraphs select_graphs(const PpiTable& table, double cutoff) {
  if (!(cutoff >= 0.0 && cutoff < 1.0)) throw ConfigError("cutoff must lie in [0, 1)");
  SelectedGraphs s;
  s.cutoff = cutoff;
  for (const auto& row : table.values) {
    EdgeIndicators g(table.p);
    for (std::size_t e = 0; e < row.size(); ++e) g.bits[e] = row[e] > cutoff ? 1 : 0;
    s.graphs.push_back(std::move(g));
  }
  return s;
}

std::optional<double> expected_fdr(const PpiTable& table, double bound) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : table.values)
    for (double v : row)
      if (v <= bound) {
        sum += v;
        ++count;
      }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::vector<std::vector<long>> sec_matrix(const std::vector<EdgeIndicators>& graphs) {
  const std::size_t q = graphs.size();
  std::vector<std::vector<long>> m(q, std::vector<long>(q, 0));
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t h = x; h < q; ++h) {
      if (graphs[x].size() != graphs[h].size())
        throw DimensionError("sec_matrix: graphs differ in size");
      long shared = 0;
      for (std::size_t e = 0; e < graphs[x].size(); ++e)
        shared += graphs[x].bits[e] && graphs[h].bits[e];
      m[x][h] = m[h][x] = shared;
    }
  return m;
}

std::vector<std::vector<double>> theta_ppi(const ChainOutput& chain,
                                           std::optional<std::size_t> burn_in) {
  const std::size_t b = check_burn_in(chain, burn_in);
  const std::size_t q = chain.q;
  std::vector<std::vector<double>> m(q, std::vector<double>(q, 0.0));
  for (std::size_t x = 0; x < q; ++x) m[x][x] = 1.0;
  if (q < 2) return m;
  std::vector<double> freq(group_pair_count(q), 0.0);
  if (b == chain.burn_in && chain.retained > 0) {
    for (std::size_t k = 0; k < freq.size(); ++k)
      freq[k] = static_cast<double>(chain.epsilon_counts[k]) / static_cast<double>(chain.retained);
  } else {
    const auto kept = retained_samples(chain, b);
    if (kept.empty()) throw DataError("no retained samples after burn-in");
    for (const auto* s : kept)
      for (std::size_t k = 0; k < freq.size(); ++k) freq[k] += s->epsilon[k];
    for (auto& v : freq) v /= static_cast<double>(kept.size());
  }
  for (std::size_t x = 0; x < q; ++x)
    for (std::size_t h = x + 1; h < q; ++h)
      m[x][h] = m[h][x] = freq[group_pair_index(x, h, q)];
  return m;
}

std::vector<std::vector<std::vector<double>>> block_frequencies(
    const ChainOutput& chain, std::size_t burn_in, std::size_t blocks) {
  if (blocks == 0) throw ConfigError("block count must be positive");
  const auto kept = retained_samples(chain, burn_in);
  if (kept.size() < blocks)
    throw DataError("quantile graphs need at least " + std::to_string(blocks) +
                    " retained samples (have " + std::to_string(kept.size()) + ")");
  const std::size_t edges = num_pairs(chain.p);
  std::vector<std::vector<std::vector<double>>> out(
      chain.q, std::vector<std::vector<double>>(edges, std::vector<double>(blocks, 0.0)));
  const std::size_t n = kept.size();
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * n / blocks;
    const std::size_t hi = (b + 1) * n / blocks;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t x = 0; x < chain.q; ++x)
        for (std::size_t e = 0; e < edges; ++e)
          out[x][e][b] += kept[i]->delta[x * edges + e];
    for (std::size_t x = 0; x < chain.q; ++x)
      for (std::size_t e = 0; e < edges; ++e) out[x][e][b] /= static_cast<double>(hi - lo);
  }
  return out;
}

std::vector<SelectedGraphs> quantile_graphs(const ChainOutput& chain,
                                            std::optional<std::size_t> burn_in,
                                            const std::vector<SummaryLevel>& levels,
                                            double cutoff, std::size_t blocks) {
  const std::size_t b = check_burn_in(chain, burn_in);
  auto freq = block_frequencies(chain, b, blocks);
  std::vector<SelectedGraphs> out;
  for (const auto& level : levels) {
    if (!level.is_mean && !(level.prob >= 0.0 && level.prob <= 1.0))
      throw ConfigError("quantile level must lie in [0, 1]");
    SelectedGraphs s;
    s.cutoff = cutoff;
    for (auto& group : freq) {
      EdgeIndicators g(chain.p);
      for (std::size_t e = 0; e < group.size(); ++e) {
        auto& values = group[e];
        double stat = 0.0;
        if (level.is_mean) {
          for (double v : values) stat += v;
          stat /= static_cast<double>(values.size());
        } else {
          std::sort(values.begin(), values.end());
          stat = quantile_type7(values, level.prob);
        }
        g.bits[e] = stat > cutoff ? 1 : 0;
      }
      s.graphs.push_back(std::move(g));
    }
    out.push_back(std::move(s));
  }
  return out;
}

Confusion confusion(const EdgeIndicators& truth, const EdgeIndicators& estimate) {
  if (truth.size() != estimate.size()) throw DimensionError("confusion: graphs differ in size");
  Confusion c;
  for (std::size_t e = 0; e < truth.size(); ++e) {
    const bool t = truth.bits[e], s = estimate.bits[e];
    if (t && s) ++c.tp;
    else if (!t && !s) ++c.tn;
    else if (s) ++c.fp;
    else ++c.fn;
  }
  return c;
}

Confusion confusion(const std::vector<EdgeIndicators>& truth,
                    const std::vector<EdgeIndicators>& estimate) {
  if (truth.size() != estimate.size()) throw DimensionError("confusion: group counts differ");
  Confusion total;
  for (std::size_t x = 0; x < truth.size(); ++x) {
    const auto c = confusion(truth[x], estimate[x]);
    total.tp += c.tp;
    total.tn += c.tn;
    total.fp += c.fp;
    total.fn += c.fn;
  }
  return total;
}

double mcc(const Confusion& c) {
  const double tp = c.tp, tn = c.tn, fp = c.fp, fn = c.fn;
  const double den = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (den <= 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(den);
}

double f1(const Confusion& c) {
  if (c.tp == 0) return 0.0;
  return 2.0 * c.tp / (2.0 * c.tp + c.fp + c.fn);
}

std::optional<double> chain_correlation(const PpiTable& a, const PpiTable& b) {
  if (a.q() != b.q() || a.p != b.p) throw DimensionError("chain_correlation: table shapes differ");
  std::vector<double> u, v;
  for (std::size_t x = 0; x < a.q(); ++x) {
    if (a.values[x].size() != b.values[x].size())
      throw DimensionError("chain_correlation: table shapes differ");
    u.insert(u.end(), a.values[x].begin(), a.values[x].end());
    v.insert(v.end(), b.values[x].begin(), b.values[x].end());
  }
  if (u.size() < 2) return std::nullopt;
  const double n = static_cast<double>(u.size());
  double mu = 0.0, mv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    mu += u[i];
    mv += v[i];
  }
  mu /= n;
  mv /= n;
  double suv = 0.0, suu = 0.0, svv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    suv += (u[i] - mu) * (v[i] - mv);
    suu += (u[i] - mu) * (u[i] - mu);
    svv += (v[i] - mv) * (v[i] - mv);
  }
  if (suu <= 0.0 || svv <= 0.0) return std::nullopt;
  return suv / std::sqrt(suu * svv);
}

}  // namespace multising
