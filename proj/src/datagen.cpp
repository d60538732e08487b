#include "dss/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "dss/random.hpp"

namespace dss {

std::size_t DNConfig::width() const {
    std::size_t w = 1;
    long double cap = static_cast<long double>(sigma);
    while (cap < static_cast<long double>(total())) {
        cap *= static_cast<long double>(sigma);
        ++w;
    }
    return w;
}

void DNConfig::validate() const {
    if (p < 1) throw ConfigError("D/N generator: need at least one PE");
    if (sigma < 2 || sigma > 255) throw ConfigError("D/N generator: sigma must be in [2, 255]");
    if (!(ratio >= 0.0 && ratio <= 1.0)) throw ConfigError("D/N generator: ratio must be in [0, 1]");
    if (length < width())
        throw ConfigError("D/N generator: length " + std::to_string(length) + " cannot hold " +
                          std::to_string(width()) + " index digits");
}

std::string dn_string(const DNConfig& cfg, std::size_t i) {
    const std::size_t w = cfg.width();
    const auto lead = static_cast<std::size_t>(std::floor(cfg.ratio * static_cast<double>(cfg.length - w)));
    std::string s(cfg.length, '\x01');
    std::size_t v = i;
    for (std::size_t d = 0; d < w; ++d) {
        s[lead + w - 1 - d] = static_cast<char>(v % cfg.sigma + 1);
        v /= cfg.sigma;
    }
    return s;
}

std::vector<std::size_t> dn_indices(const DNConfig& cfg, int rank) {
    cfg.validate();
    std::vector<std::size_t> perm(cfg.total());
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(splitmix64(cfg.seed));
    for (std::size_t k = perm.size(); k > 1; --k) std::swap(perm[k - 1], perm[uniform_below(rng, k)]);
    const std::size_t b = static_cast<std::size_t>(rank) * cfg.strings_per_pe;
    return {perm.begin() + static_cast<std::ptrdiff_t>(b),
            perm.begin() + static_cast<std::ptrdiff_t>(b + cfg.strings_per_pe)};
}

StringSet gen_dn(const DNConfig& cfg, int rank) {
    StringSet out;
    const auto ids = dn_indices(cfg, rank);
    out.reserve(ids.size(), ids.size() * cfg.length);
    for (auto i : ids) {
        const std::string s = dn_string(cfg, i);
        out.push_back_unchecked(s.data(), s.size());
    }
    return out;
}

StringSet gen_skewed(const DNConfig& cfg, int rank) {
    StringSet out;
    const auto ids = dn_indices(cfg, rank);
    const std::size_t small = cfg.total() / 5;
    for (auto i : ids) {
        std::string s = dn_string(cfg, i);
        if (i < small) s.resize(4 * cfg.length, '\x01');
        out.push_back_unchecked(s.data(), s.size());
    }
    return out;
}

char alphabet_char(std::size_t k, std::size_t sigma) {
    return static_cast<char>(sigma <= 26 ? 'a' + k : k + 1);
}

StringSet gen_random(const RandomConfig& cfg) {
    if (cfg.sigma < 1 || cfg.sigma > 255) throw ConfigError("random generator: sigma must be in [1, 255]");
    if (cfg.min_length > cfg.max_length) throw ConfigError("random generator: min_length > max_length");
    Rng rng(splitmix64(cfg.seed));
    auto draw = [&] {
        const std::size_t len = cfg.min_length + uniform_below(rng, cfg.max_length - cfg.min_length + 1);
        std::string s(len, '\0');
        for (auto& c : s) c = alphabet_char(uniform_below(rng, cfg.sigma), cfg.sigma);
        return s;
    };
    StringSet out;
    if (cfg.duplicate_pool > 0) {
        std::vector<std::string> pool(cfg.duplicate_pool);
        for (auto& s : pool) s = draw();
        for (std::size_t i = 0; i < cfg.n; ++i) out.push_back(pool[uniform_below(rng, pool.size())]);
    } else {
        for (std::size_t i = 0; i < cfg.n; ++i) out.push_back(draw());
    }
    return out;
}

StringSet gen_suffixes(std::string_view text) {
    StringSet out;
    out.reserve(text.size(), text.size() * (text.size() + 1) / 2);
    for (std::size_t i = 0; i < text.size(); ++i) out.push_back(text.substr(i));
    return out;
}

std::string random_text(std::size_t n, std::size_t sigma, std::uint64_t seed) {
    Rng rng(splitmix64(seed));
    std::string s(n, '\0');
    for (auto& c : s) c = alphabet_char(uniform_below(rng, sigma), sigma);
    return s;
}

StringSet parse_lines(std::string_view content, LineFilter filter) {
    StringSet out;
    std::size_t pos = 0, line_no = 1;
    while (pos < content.size()) {
        std::size_t end = content.find('\n', pos);
        const bool last = end == std::string_view::npos;
        if (last) end = content.size();
        std::string_view line = content.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find('\0') != std::string_view::npos)
            throw std::runtime_error("line " + std::to_string(line_no) + " contains a 0 byte");
        const bool keep = filter == LineFilter::none ||
                          line.find_first_not_of("ACGT") == std::string_view::npos;
        if (keep) out.push_back_unchecked(line.data(), line.size());
        pos = end + 1;
        ++line_no;
    }
    return out;
}

StringSet ingest_lines(const std::string& path, LineFilter filter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read error on " + path);
    return parse_lines(buf.str(), filter);
}

std::vector<StringSet> split_by_chars(const StringSet& set, int p) {
    if (p < 1) throw ConfigError("split_by_chars: need at least one PE");
    std::vector<StringSet> parts(static_cast<std::size_t>(p));
    const std::size_t total = set.char_count() + set.size();
    std::size_t before = 0;
    for (std::size_t k = 0; k < set.size(); ++k) {
        const std::size_t w = set.length(k) + 1;
        // midpoint 2*before+w over 2*total
        const std::size_t pe = std::min<std::size_t>(
            static_cast<std::size_t>(p) - 1, (2 * before + w) * static_cast<std::size_t>(p) / (2 * total));
        parts[pe].push_back_unchecked(set[k].data(), set.length(k));
        before += w;
    }
    return parts;
}

}  // namespace dss
