#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace ksigma {

// Philox4x32-10 counter-based generator. A block is a pure function of
// (key, counter), so any point of the stream can be generated without
// stepping through its predecessors.
struct PhiloxKey {
    std::uint32_t k0 = 0;
    std::uint32_t k1 = 0;
};

struct PhiloxBlock {
    std::uint32_t w[4] = {0, 0, 0, 0};
};

// One keyed bijection application (10 rounds).
PhiloxBlock philox4x32(PhiloxBlock counter, PhiloxKey key);

// A deterministic stream of uniforms identified by (seed, stream_id).
// The counter layout is {block_lo, block_hi, stream_lo, stream_hi} with the
// seed as key, so distinct stream ids index disjoint counter regions and
// advancing one stream never touches another. Each block yields two doubles.
//
// Streams are single-owner: move them between threads freely, never share
// one concurrently.
class RngStream {
  public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    // Uniform variate strictly inside (0,1).
    double next_u01();

    // Fills `out` with the exact sequence repeated next_u01() calls would
    // produce, using the bulk kernels for whole blocks.
    void fill_u01(std::span<double> out);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

  private:
    void refill();

    PhiloxKey key_;
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
    std::uint64_t block_ = 0;
    double buf_[2] = {0, 0};
    int buf_pos_ = 2; // 2 == empty
};

// Maps a 64-bit word to a double in the open interval (0,1).
inline double u64_to_unit_open(std::uint64_t bits) {
    return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

} // namespace ksigma
