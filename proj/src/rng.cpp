#include "ksigma/rng.hpp"

#include "ksigma/kernels.hpp"

namespace ksigma {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    key_.k0 = static_cast<std::uint32_t>(seed);
    key_.k1 = static_cast<std::uint32_t>(seed >> 32);
}

void RngStream::refill() {
    kern::philox_u01_blocks(key_, stream_id_, block_, 1, buf_);
    ++block_;
    buf_pos_ = 0;
}

double RngStream::next_u01() {
    if (buf_pos_ >= 2) refill();
    return buf_[buf_pos_++];
}

void RngStream::fill_u01(std::span<double> out) {
    std::size_t i = 0;
    while (buf_pos_ < 2 && i < out.size()) out[i++] = buf_[buf_pos_++];

    const std::size_t nblocks = (out.size() - i) / 2;
    if (nblocks > 0) {
        kern::philox_u01_blocks(key_, stream_id_, block_, nblocks, out.data() + i);
        block_ += nblocks;
        i += 2 * nblocks;
    }

    while (i < out.size()) {
        refill();
        out[i++] = buf_[buf_pos_++];
    }
}

} // namespace ksigma
