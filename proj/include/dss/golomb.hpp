#pragma once

#include <cstdint>
#include <vector>

namespace dss {

/// Rice-coded gaps of an ascending sequence. Each gap (the first one taken
/// from 0) is written as q one-bits, a zero bit and log2(M) remainder bits,
/// most significant bit first.
struct GolombStream {
    std::uint64_t M = 1;
    std::uint64_t bit_count = 0;
    std::vector<std::uint8_t> data;
};

/// Throws std::invalid_argument when M is not a power of two, the input is
/// not ascending, or a quotient would exceed 2^24 bits.
GolombStream golomb_encode(const std::vector<std::uint64_t>& sorted_values, std::uint64_t M);

/// Decodes exactly bit_count bits. Throws std::runtime_error on a malformed
/// stream.
std::vector<std::uint64_t> golomb_decode(const GolombStream& stream);

/// Power of two nearest to (range / count) * ln 2; at least 1.
std::uint64_t rice_parameter(long double range, std::uint64_t count);

}  // namespace dss
