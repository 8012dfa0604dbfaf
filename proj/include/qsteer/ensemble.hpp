#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qsteer/protocol_engine.hpp"

namespace qsteer {

// Trajectory i always uses make_stream(seed, i), so results do not depend on
// the thread count or on the order in which trajectories finish.
std::vector<TrajectoryRecord> run_ensemble(const ProtocolParams& params, std::uint64_t m, int threads);

// Single-threaded reference with the same stream assignment.
std::vector<TrajectoryRecord> run_ensemble_serial(const ProtocolParams& params, std::uint64_t m);

// Streams records to `consume` in index order while holding at most one block in memory.
void for_each_trajectory(const ProtocolParams& params, std::uint64_t m, int threads,
                         const std::function<void(TrajectoryRecord&&)>& consume, std::uint64_t block_size = 512);

// Thread count from QSTEER_THREADS, else the OpenMP default.
int default_thread_count();

}  // namespace qsteer
