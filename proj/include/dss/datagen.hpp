#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dss/string_set.hpp"

namespace dss {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Synthetic D/N input. Global string i is
///   floor(r*(L-w)) filler bytes, the w-digit base-sigma encoding of i
///   (most significant first, digit d as byte d+1), filler up to length L,
/// with filler byte 1 and w the smallest width with sigma^w >= n. Strings are
/// spread over the PEs by a seeded global shuffle.
struct DNConfig {
    std::size_t strings_per_pe = 1000;
    std::size_t length = 500;
    double ratio = 0.0;
    std::size_t sigma = 26;
    int p = 1;
    std::uint64_t seed = 1;

    std::size_t total() const { return strings_per_pe * static_cast<std::size_t>(p); }
    /// Digits of the index encoding.
    std::size_t width() const;
    void validate() const;
};

/// String with global index i.
std::string dn_string(const DNConfig& cfg, std::size_t i);
/// Global indices held by PE `rank`, in local order.
std::vector<std::size_t> dn_indices(const DNConfig& cfg, int rank);
StringSet gen_dn(const DNConfig& cfg, int rank);

/// gen_dn with the smallest 20% of the global strings (indices below
/// floor(0.2 n)) padded with filler to 4L.
StringSet gen_skewed(const DNConfig& cfg, int rank);

struct RandomConfig {
    std::size_t n = 1000;
    std::size_t min_length = 1;
    std::size_t max_length = 16;
    std::size_t sigma = 4;
    /// When nonzero, strings are drawn from a pool of this many distinct
    /// random strings.
    std::size_t duplicate_pool = 0;
    std::uint64_t seed = 1;
};

/// Character k of a sigma-letter alphabet: 'a'+k for sigma <= 26, else k+1.
char alphabet_char(std::size_t k, std::size_t sigma);

StringSet gen_random(const RandomConfig& cfg);

/// All suffixes of `text`, longest first.
StringSet gen_suffixes(std::string_view text);
std::string random_text(std::size_t n, std::size_t sigma, std::uint64_t seed);

enum class LineFilter { none, dna };

/// One string per line; a trailing '\r' is stripped. Lines with a 0 byte are
/// rejected. The dna filter drops lines with characters other than ACGT.
StringSet ingest_lines(const std::string& path, LineFilter filter = LineFilter::none);
StringSet parse_lines(std::string_view content, LineFilter filter = LineFilter::none);

/// Contiguous split into p parts of about equal character count: string k
/// goes to the PE holding the midpoint of its character range (weights
/// |s|+1).
std::vector<StringSet> split_by_chars(const StringSet& set, int p);

}  // namespace dss
