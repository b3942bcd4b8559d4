#pragma once

#include "sprecov/numerics.hpp"

#include <cstdint>
#include <random>

namespace sprecov {

/// Deterministic seeded random stream. A (master_seed, stream_id) pair
/// fully determines the draw sequence, independent of any other stream,
/// so per-trial streams (stream_id = trial index) make Monte Carlo runs
/// reproducible under any execution schedule.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01();

    /// Standard normal via the Box-Muller pair transform (second value cached).
    double gaussian();

    /// Unbiased uniform integer in [0, bound), bound >= 1.
    std::uint64_t uniform_below(std::uint64_t bound);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double cached_gaussian_ = 0.0;
    bool has_cached_gaussian_ = false;
};

/// Matrix with i.i.d. N(0,1) entries, filled row by row.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, RandomStream& rs);

Vector gaussian_vector(Eigen::Index size, RandomStream& rs);

}  // namespace sprecov
