#include "spinvalve/rng.hpp"

#include <cmath>
#include <numbers>

namespace spinvalve {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

RngStream::RngStream(std::uint64_t init_state, std::uint64_t stream_id)
    : state_(0), inc_((stream_id << 1) | 1u) {
  next_u32();
  state_ += init_state;
  next_u32();
  draws_ = 0;
}

RngStream RngStream::for_sample(std::uint64_t master_seed, std::uint64_t sample_index) {
  return RngStream(mix64(master_seed), sample_index);
}

std::uint32_t RngStream::next_u32() {
  const std::uint64_t old = state_;
  state_ = old * 6364136223846793005ull + inc_;
  const auto xorshifted = static_cast<std::uint32_t>(((old >> 18) ^ old) >> 27);
  const auto rot = static_cast<std::uint32_t>(old >> 59);
  return (xorshifted >> rot) | (xorshifted << ((32 - rot) & 31));
}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t hi = next_u32();
  const std::uint64_t lo = next_u32();
  ++draws_;
  return (hi << 32) | lo;
}

double RngStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_symmetric(double half_width) {
  return half_width * (2.0 * next_unit() - 1.0);
}

double RngStream::gaussian(double stddev) {
  // Box-Muller; u1 shifted into (0, 1] so the log stays finite
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  const double u2 = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace spinvalve
