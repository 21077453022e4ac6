#include "multising/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace multising {

ChainOutput run_chain(const GroupedData& data, const SamplerConfig& cfg) {
  Rng rng(mix_seed(cfg.seed));
  return is_exact(cfg.engine) ? run_fb_chain(data, cfg, rng) : run_ab_chain(data, cfg, rng);
}

std::uint64_t chain_seed(std::uint64_t master, std::size_t c) noexcept {
  return c == 0 ? master : derive_seed(master, c);
}

std::vector<ChainOutput> run_chains(const GroupedData& data, const SamplerConfig& cfg,
                                    std::size_t k, std::size_t threads) {
  if (k == 0) throw ConfigError("at least one chain is required");
  std::vector<ChainOutput> out(k);
  std::vector<std::exception_ptr> errors(k);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t c = next++; c < k; c = next++) {
      try {
        SamplerConfig local = cfg;
        local.seed = chain_seed(cfg.seed, c);
        out[c] = run_chain(data, local);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };
  const std::size_t n = std::clamp<std::size_t>(threads, 1, k);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace multising
