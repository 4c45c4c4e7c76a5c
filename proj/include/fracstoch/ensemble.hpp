#ifndef FRACSTOCH_ENSEMBLE_HPP
#define FRACSTOCH_ENSEMBLE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace fracstoch {

/// Per-node sample mean and standard error of a path functional.
struct EnsembleMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd std_error;
  std::uint64_t n_paths = 0;
};

namespace detail {

struct BlockAccumulator {
  Eigen::VectorXd mean;
  Eigen::VectorXd m2;
  std::uint64_t count = 0;
};

// Chan et al. pairwise update; applied in block order only.
inline void merge_into(BlockAccumulator& acc, const BlockAccumulator& other) {
  if (other.count == 0) return;
  if (acc.count == 0) {
    acc = other;
    return;
  }
  const double na = static_cast<double>(acc.count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const Eigen::VectorXd delta = other.mean - acc.mean;
  acc.mean += delta * (nb / n);
  acc.m2 += other.m2 + delta.cwiseProduct(delta) * (na * nb / n);
  acc.count += other.count;
}

}  // namespace detail

inline constexpr std::uint64_t kEnsembleBlock = 64;

/// Resolve a requested worker count: 0 means "all hardware threads".
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs `path_fn(path_id, values)` for path_id in [0, n_paths) and reduces the
/// per-node values. Paths are grouped in fixed blocks of kEnsembleBlock,
/// accumulated sequentially inside a block and merged in block order, so the
/// result is bit-identical for every thread count.
template <typename PathFn>
EnsembleMoments run_ensemble(std::uint64_t n_paths, Eigen::Index n_values, unsigned threads,
                             PathFn&& path_fn) {
  const std::uint64_t n_blocks = (n_paths + kEnsembleBlock - 1) / kEnsembleBlock;
  std::vector<detail::BlockAccumulator> blocks(n_blocks);
  std::vector<std::exception_ptr> failures(n_blocks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&]() {
    Eigen::VectorXd values(n_values);
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      detail::BlockAccumulator acc{Eigen::VectorXd::Zero(n_values),
                                   Eigen::VectorXd::Zero(n_values), 0};
      try {
        const std::uint64_t end = std::min(n_paths, (b + 1) * kEnsembleBlock);
        for (std::uint64_t p = b * kEnsembleBlock; p < end; ++p) {
          path_fn(p, values);
          ++acc.count;
          const Eigen::VectorXd delta = values - acc.mean;
          acc.mean += delta / static_cast<double>(acc.count);
          acc.m2 += delta.cwiseProduct(values - acc.mean);
        }
      } catch (...) {
        failures[b] = std::current_exception();
      }
      blocks[b] = std::move(acc);
    }
  };

  const unsigned n_workers =
      static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_blocks, 1)));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) pool.emplace_back(worker);
  }

  // lowest failing block wins, independent of scheduling
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);

  detail::BlockAccumulator total{Eigen::VectorXd::Zero(n_values), Eigen::VectorXd::Zero(n_values), 0};
  for (const auto& b : blocks) detail::merge_into(total, b);

  EnsembleMoments out;
  out.n_paths = total.count;
  out.mean = total.mean;
  if (total.count >= 2) {
    const double n = static_cast<double>(total.count);
    out.std_error = (total.m2.cwiseMax(0.0) / ((n - 1.0) * n)).cwiseSqrt();
  } else {
    out.std_error = Eigen::VectorXd::Zero(n_values);
  }
  return out;
}

}  // namespace fracstoch

#endif  // FRACSTOCH_ENSEMBLE_HPP
