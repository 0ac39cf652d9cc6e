#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace irislab {

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
// as easy as 1, 2, 3").
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

// A stream is addressed by (seed, trial, entity). The seed is the key; the
// trial and entity occupy three counter words and the fourth counts blocks,
// so every stream is independent of how trials are scheduled.
class RngStream {
public:
    using result_type = std::uint32_t;

    RngStream(std::uint64_t seed, std::uint64_t trial, std::uint32_t entity);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()();

    // 53-bit uniform on [0, 1)
    double uniform();

private:
    PhiloxKey key_;
    PhiloxCounter ctr_;
    PhiloxCounter buf_{};
    unsigned pos_ = 4;
};

}  // namespace irislab
