#include "dss/golomb.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace dss {

namespace {

constexpr std::uint64_t kMaxQuotient = std::uint64_t{1} << 24;

class BitWriter {
public:
    explicit BitWriter(GolombStream& s) : s_(s) {}
    void bit(bool b) {
        if (s_.bit_count % 8 == 0) s_.data.push_back(0);
        if (b) s_.data.back() |= static_cast<std::uint8_t>(0x80u >> (s_.bit_count % 8));
        ++s_.bit_count;
    }
    void bits(std::uint64_t v, unsigned n) {
        for (unsigned i = n; i-- > 0;) bit((v >> i) & 1);
    }

private:
    GolombStream& s_;
};

class BitReader {
public:
    explicit BitReader(const GolombStream& s) : s_(s) {}
    bool done() const { return pos_ == s_.bit_count; }
    bool bit() {
        if (pos_ >= s_.bit_count) throw std::runtime_error("golomb_decode: stream ends inside a code word");
        const bool b = (s_.data[pos_ / 8] >> (7 - pos_ % 8)) & 1;
        ++pos_;
        return b;
    }

private:
    const GolombStream& s_;
    std::uint64_t pos_ = 0;
};

}  // namespace

GolombStream golomb_encode(const std::vector<std::uint64_t>& sorted_values, std::uint64_t M) {
    if (M == 0 || !std::has_single_bit(M)) throw std::invalid_argument("golomb_encode: M must be a power of two");
    const unsigned b = static_cast<unsigned>(std::countr_zero(M));
    GolombStream s;
    s.M = M;
    BitWriter w(s);
    std::uint64_t prev = 0;
    for (const std::uint64_t v : sorted_values) {
        if (v < prev) throw std::invalid_argument("golomb_encode: values must be ascending");
        const std::uint64_t gap = v - prev;
        const std::uint64_t q = gap >> b;
        if (q > kMaxQuotient) throw std::invalid_argument("golomb_encode: gap too large for this M");
        for (std::uint64_t i = 0; i < q; ++i) w.bit(true);
        w.bit(false);
        w.bits(gap & (M - 1), b);
        prev = v;
    }
    return s;
}

std::vector<std::uint64_t> golomb_decode(const GolombStream& stream) {
    if (stream.M == 0 || !std::has_single_bit(stream.M))
        throw std::runtime_error("golomb_decode: M must be a power of two");
    if (stream.data.size() != (stream.bit_count + 7) / 8)
        throw std::runtime_error("golomb_decode: bit count does not match the buffer");
    const unsigned b = static_cast<unsigned>(std::countr_zero(stream.M));
    BitReader r(stream);
    std::vector<std::uint64_t> out;
    std::uint64_t prev = 0;
    while (!r.done()) {
        std::uint64_t q = 0;
        while (r.bit()) {
            if (++q > kMaxQuotient) throw std::runtime_error("golomb_decode: unary run too long");
        }
        std::uint64_t rem = 0;
        for (unsigned i = 0; i < b; ++i) rem = (rem << 1) | (r.bit() ? 1 : 0);
        const std::uint64_t gap = (q << b) | rem;
        if (gap > ~prev) throw std::runtime_error("golomb_decode: value overflow");
        prev += gap;
        out.push_back(prev);
    }
    return out;
}

std::uint64_t rice_parameter(long double range, std::uint64_t count) {
    if (count == 0) return 1;
    const long double x = range / static_cast<long double>(count) * std::log(2.0L);
    if (x <= 1.0L) return 1;
    const long double e = std::round(std::log2(x));
    if (e >= 63) return std::uint64_t{1} << 63;
    return std::uint64_t{1} << static_cast<unsigned>(e);
}

}  // namespace dss
