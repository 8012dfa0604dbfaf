#include "qsteer/ensemble.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>

namespace qsteer {

namespace {

void run_block(const ProtocolContext& ctx, std::uint64_t first, std::vector<TrajectoryRecord>& out, int threads) {
  const auto count = static_cast<std::int64_t>(out.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      const std::uint64_t index = first + static_cast<std::uint64_t>(i);
      Rng rng = make_stream(ctx.params().seed, index);
      out[static_cast<std::size_t>(i)] = run_trajectory(ctx, rng, index);
    } catch (...) {
#pragma omp critical(qsteer_ensemble_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("QSTEER_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
  }
  return std::max(1, omp_get_max_threads());
}

void for_each_trajectory(const ProtocolParams& params, std::uint64_t m, int threads,
                         const std::function<void(TrajectoryRecord&&)>& consume, std::uint64_t block_size) {
  if (m < 1) throw std::invalid_argument("ensemble size must be at least 1");
  if (threads < 1) throw std::invalid_argument("thread count must be at least 1");
  const ProtocolContext ctx(params);
  block_size = std::max<std::uint64_t>(block_size, 1);
  std::vector<TrajectoryRecord> block;
  for (std::uint64_t first = 0; first < m; first += block_size) {
    block.assign(static_cast<std::size_t>(std::min(block_size, m - first)), TrajectoryRecord{});
    run_block(ctx, first, block, threads);
    for (auto& rec : block) consume(std::move(rec));
  }
}

std::vector<TrajectoryRecord> run_ensemble(const ProtocolParams& params, std::uint64_t m, int threads) {
  if (m < 1) throw std::invalid_argument("ensemble size must be at least 1");
  if (threads < 1) throw std::invalid_argument("thread count must be at least 1");
  const ProtocolContext ctx(params);
  std::vector<TrajectoryRecord> out(static_cast<std::size_t>(m));
  run_block(ctx, 0, out, threads);
  return out;
}

std::vector<TrajectoryRecord> run_ensemble_serial(const ProtocolParams& params, std::uint64_t m) {
  if (m < 1) throw std::invalid_argument("ensemble size must be at least 1");
  const ProtocolContext ctx(params);
  std::vector<TrajectoryRecord> out;
  out.reserve(static_cast<std::size_t>(m));
  for (std::uint64_t i = 0; i < m; ++i) {
    Rng rng = make_stream(ctx.params().seed, i);
    out.push_back(run_trajectory(ctx, rng, i));
  }
  return out;
}

}  // namespace qsteer
