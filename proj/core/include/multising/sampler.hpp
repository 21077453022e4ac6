#pragma once

#include <vector>

#include "multising/ab_engine.hpp"
#include "multising/fb_engine.hpp"

namespace multising {

/// Runs the configured engine with an RNG seeded from cfg.seed.
ChainOutput run_chain(const GroupedData& data, const SamplerConfig& cfg);

/// Seed of chain c in a multi-chain run.
std::uint64_t chain_seed(std::uint64_t master, std::size_t c) noexcept;

/// k independent chains with derived seeds, run on up to `threads` workers.
/// Chain c uses chain_seed(cfg.seed, c), so results do not depend on the
/// thread count.
std::vector<ChainOutput> run_chains(const GroupedData& data, const SamplerConfig& cfg,
                                    std::size_t k, std::size_t threads = 1);

}  // namespace multising
