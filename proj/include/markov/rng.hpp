#pragma once

#include <array>
#include <cstdint>

namespace markov {

// A reproducible random stream is named by (master_seed, stream_id).
// Distinct stream_ids under one master give decorrelated streams, so work
// fanned out across threads can draw from per-index streams and produce the
// same bytes as a serial run.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  // Child stream keyed by index (per-resample, per-replication, ...).
  [[nodiscard]] constexpr SeedSpec derive(std::uint64_t child_id) const noexcept;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// splitmix64 finalizer (Vigna, public domain); bijective on 64-bit words.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

// Collapse (master, stream) into one well-mixed word.  mix64 is a bijection,
// so two stream_ids under the same master never map to the same key.
[[nodiscard]] constexpr std::uint64_t stream_key(SeedSpec s) noexcept {
  const std::uint64_t h = mix64(s.master_seed + 0x9e3779b97f4a7c15ULL);
  return mix64(h ^ (s.stream_id + 0x2545f4914f6cdd1dULL));
}

}  // namespace detail

constexpr SeedSpec SeedSpec::derive(std::uint64_t child_id) const noexcept {
  return SeedSpec{detail::stream_key(*this), child_id};
}

// xoshiro256++ (Blackman & Vigna, public domain), state filled by a
// splitmix64 walk from the stream key, as the reference seeding does.
class Rng {
 public:
  explicit constexpr Rng(SeedSpec seed) noexcept {
    std::uint64_t sm = detail::stream_key(seed);
    for (auto& word : state_) {
      sm += 0x9e3779b97f4a7c15ULL;
      word = mix64(sm);
    }
  }

  constexpr std::uint64_t next_u64() noexcept {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53 random bits.
  constexpr double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace markov
