#pragma once

#include <cstdint>

namespace spinvalve {

// PCG32-based stream. Every Monte Carlo sample owns its own stream keyed by
// (master_seed, sample_index), so draws never depend on evaluation order or
// thread count. Distinct indices select distinct increments, which keeps the
// streams disjoint by construction.
class RngStream {
 public:
  RngStream(std::uint64_t init_state, std::uint64_t stream_id);

  static RngStream for_sample(std::uint64_t master_seed, std::uint64_t sample_index);

  std::uint64_t next_u64();
  double next_unit();                           // uniform on [0, 1)
  double uniform_symmetric(double half_width);  // uniform on [-h, h]
  double gaussian(double stddev);               // always consumes two u64 draws

  // u64 draws consumed so far
  std::uint64_t draws() const { return draws_; }

 private:
  std::uint32_t next_u32();

  std::uint64_t state_;
  std::uint64_t inc_;
  std::uint64_t draws_ = 0;
};

// splitmix64 finalizer, used to spread master seeds over the state space
std::uint64_t mix64(std::uint64_t x);

}  // namespace spinvalve
