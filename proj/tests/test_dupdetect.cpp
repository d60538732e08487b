#include <gtest/gtest.h>

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "dss/dupdetect.hpp"
#include "dss/golomb.hpp"
#include "dss/sequential_sort.hpp"
#include "support/oracle.hpp"

using namespace dss;

namespace {

const std::vector<std::vector<std::string>> kExampleInput{
    {"algae", "alpha", "alps", "order"}, {"algo", "snow", "sorbet", "sorter"}, {"orange", "organ", "sorted", "soul"}};

struct Resolved {
    std::string s;
    std::size_t depth, length;
    bool capped;
    std::uint32_t round;
};

// Runs prefix doubling on locally sorted inputs; returns per-PE results in local sorted order.
std::vector<std::vector<Resolved>> run_doubling(const std::vector<std::vector<std::string>>& input,
                                                const PrefixDoublingConfig& cfg, std::uint32_t* rounds = nullptr) {
    const int p = static_cast<int>(input.size());
    std::vector<std::uint32_t> all_rounds;
    const auto got = spawn(p, [&](Communicator& c) {
        const StringSet local = oracle::to_set(oracle::sorted(input[static_cast<std::size_t>(c.rank())]));
        const PrefixBound b = approximate_dprefix(c, local, compute_lcp_array(local), cfg);
        std::vector<Resolved> out;
        for (std::size_t i = 0; i < local.size(); ++i)
            out.push_back({std::string(local[i]), b.depth[i], b.length[i], b.capped[i], b.round[i]});
        return std::make_pair(out, b.rounds);
    });
    std::vector<std::vector<Resolved>> out;
    for (const auto& g : got) {
        out.push_back(g.first);
        EXPECT_EQ(g.second, got[0].second);
    }
    if (rounds) *rounds = got[0].second;
    return out;
}

std::vector<std::vector<std::string>> spread(const std::vector<std::string>& all, int p, std::mt19937_64& gen) {
    std::vector<std::vector<std::string>> input(static_cast<std::size_t>(p));
    for (const auto& s : all) input[gen() % static_cast<std::size_t>(p)].push_back(s);
    return input;
}

}  // namespace

TEST(Fingerprint, Examples) {
    EXPECT_EQ(fingerprint_prefix("alpha", 2, 1), fingerprint_prefix("alps", 2, 1));
    EXPECT_EQ(fingerprint_prefix("snow", 4, 7), fingerprint_prefix("snow", 4, 7));
    EXPECT_EQ(fingerprint_prefix("alpha", 3, 1), fingerprint_prefix("alps", 3, 1));
    EXPECT_NE(fingerprint_prefix("alpha", 4, 1), fingerprint_prefix("alps", 4, 1));
    EXPECT_NE(fingerprint_prefix("ab", 2, 1), fingerprint_prefix("ab", 2, 2));
    // the terminator position distinguishes a string from its extensions
    EXPECT_NE(fingerprint_prefix("ab", 3, 1), fingerprint_prefix("abc", 3, 1));
}

TEST(Fingerprint, NoCollisionsOnAMillionPrefixes) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(1 << 21);
    std::size_t collisions = 0;
    std::mt19937_64 gen(12);
    for (std::size_t i = 0; i < 1000000; ++i) {
        const std::string s = std::to_string(i) + "/" + std::to_string(gen() % 1000);
        if (!seen.insert(fingerprint_prefix(s, s.size(), 0x5eed)).second) ++collisions;
    }
    EXPECT_EQ(collisions, 0u);
}

TEST(Fingerprint, OwnersCoverRange) {
    EXPECT_EQ(fingerprint_owner(0, 4), 0);
    EXPECT_EQ(fingerprint_owner(~std::uint64_t{0}, 4), 3);
    EXPECT_EQ(fingerprint_owner(std::uint64_t{1} << 63, 2), 1);
    EXPECT_EQ(fingerprint_owner((std::uint64_t{1} << 63) - 1, 2), 0);
    for (std::uint64_t v : {0ull, 123456789ull, ~0ull}) EXPECT_EQ(fingerprint_owner(v, 1), 0);
}

TEST(Golomb, Examples) {
    const GolombStream empty = golomb_encode({}, 4);
    EXPECT_EQ(empty.bit_count, 0u);
    EXPECT_TRUE(golomb_decode(empty).empty());
    const GolombStream nine = golomb_encode({9}, 4);
    EXPECT_EQ(nine.bit_count, 5u);
    ASSERT_EQ(nine.data.size(), 1u);
    EXPECT_EQ(nine.data[0], 0xC8);  // 110 01 then padding
    EXPECT_EQ(golomb_decode(nine), std::vector<std::uint64_t>{9});
    EXPECT_THROW(golomb_encode({1}, 3), std::invalid_argument);
    EXPECT_THROW(golomb_encode({5, 2}, 4), std::invalid_argument);
}

TEST(Golomb, SizeNearEntropyEstimate) {
    std::mt19937_64 gen(77);
    const std::size_t n = 100000;
    const std::uint64_t range = std::uint64_t{1} << 44;
    std::vector<std::uint64_t> v(n);
    for (auto& x : v) x = gen() % range;
    std::sort(v.begin(), v.end());
    const std::uint64_t M = rice_parameter(static_cast<long double>(range), n);
    const GolombStream s = golomb_encode(v, M);
    EXPECT_EQ(golomb_decode(s), v);
    const double estimate = static_cast<double>(n) * (std::log2(static_cast<double>(range) / n) + 2.0);
    EXPECT_NEAR(static_cast<double>(s.bit_count), estimate, 0.1 * estimate);
}

TEST(Golomb, RoundTripSmallAndDuplicates) {
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 300; ++rep) {
        std::vector<std::uint64_t> v(gen() % 50);
        for (auto& x : v) x = gen() % (1 + rep * 97);
        std::sort(v.begin(), v.end());
        const std::uint64_t M = std::uint64_t{1} << (gen() % 10);
        ASSERT_EQ(golomb_decode(golomb_encode(v, M)), v);
    }
    EXPECT_EQ(rice_parameter(0, 0), 1u);
    EXPECT_EQ(rice_parameter(1024, 1), 512u);  // 1024 ln2 = 710, log2 = 9.47
}

TEST(Golomb, MalformedStream) {
    GolombStream s = golomb_encode({9}, 4);
    s.bit_count = 3;  // cut inside the remainder
    EXPECT_THROW(golomb_decode(s), std::runtime_error);
    GolombStream ones;
    ones.M = 1;
    ones.bit_count = 8;
    ones.data = {0xFF};  // unary run without a stop bit
    EXPECT_THROW(golomb_decode(ones), std::runtime_error);
}

TEST(DetectDuplicates, TrivialCases) {
    const auto distinct = spawn(3, [](Communicator& c) {
        return detect_duplicates(c, {static_cast<std::uint64_t>(c.rank()) * 1000003u, 5u + static_cast<std::uint64_t>(c.rank())}, false);
    });
    for (const auto& f : distinct)
        for (bool b : f) EXPECT_TRUE(b);
    for (bool golomb : {false, true}) {
        const auto same = spawn(2, [golomb](Communicator& c) { return detect_duplicates(c, {42, 7u + static_cast<std::uint64_t>(c.rank())}, golomb); });
        EXPECT_FALSE(same[0][0]);
        EXPECT_FALSE(same[1][0]);
        EXPECT_TRUE(same[0][1]);
        EXPECT_TRUE(same[1][1]);
    }
}

TEST(DetectDuplicates, MatchesCentralCount) {
    std::mt19937_64 gen(8);
    for (int rep = 0; rep < 6; ++rep) {
        const int p = 8;
        std::vector<std::vector<std::uint64_t>> input(p);
        std::unordered_map<std::uint64_t, int> count;
        for (auto& pe : input) {
            const std::size_t n = gen() % 300;
            for (std::size_t i = 0; i < n; ++i) {
                const std::uint64_t v = gen() % 3 == 0 ? gen() % 200 : gen();
                pe.push_back(rep % 2 ? v : v * 0x9e3779b97f4a7c15ULL);
                ++count[pe.back()];
            }
        }
        for (bool golomb : {false, true}) {
            const auto got = spawn(p, [&](Communicator& c) { return detect_duplicates(c, input[static_cast<std::size_t>(c.rank())], golomb); });
            for (int r = 0; r < p; ++r)
                for (std::size_t i = 0; i < input[static_cast<std::size_t>(r)].size(); ++i)
                    ASSERT_EQ(got[static_cast<std::size_t>(r)][i], count[input[static_cast<std::size_t>(r)][i]] == 1);
        }
    }
}

TEST(DetectDuplicates, GolombShrinksPayload) {
    std::mt19937_64 gen(5);
    std::vector<std::vector<std::uint64_t>> input(4);
    for (auto& pe : input)
        for (int i = 0; i < 2000; ++i) pe.push_back(gen());
    std::uint64_t bits[2] = {0, 0};
    for (int g = 0; g < 2; ++g) {
        const auto got = spawn(4, [&](Communicator& c) {
            DupDetectStats st;
            detect_duplicates(c, input[static_cast<std::size_t>(c.rank())], g == 1, &st);
            return st.payload_bits;
        });
        for (auto b : got) bits[g] += b;
    }
    EXPECT_LT(bits[1], bits[0]);
}

TEST(DoublingGrid, Values) {
    EXPECT_EQ(doubling_grid(3, 256, 1.0, 8), (std::vector<std::size_t>{1, 2, 4, 8, 16}));
    EXPECT_EQ(doubling_grid(3, 256, 1.0, 5), (std::vector<std::size_t>{1, 2, 4, 8}));
    EXPECT_EQ(doubling_grid(1 << 20, 256, 1.0, 20), (std::vector<std::size_t>{3, 6, 12, 24}));
    EXPECT_EQ(doubling_grid(16, 2, 1.0, 4), (std::vector<std::size_t>{4, 8}));
    EXPECT_EQ(doubling_grid(2, 256, 0.5, 12), (std::vector<std::size_t>{1, 2, 3, 4, 6, 8, 12, 18}));
}

TEST(PrefixDoubling, WorkedExampleDepths) {
    std::uint32_t rounds = 0;
    const auto got = run_doubling(kExampleInput, PrefixDoublingConfig{}, &rounds);
    std::map<std::string, Resolved> by;
    for (const auto& pe : got)
        for (const auto& r : pe) by[r.s] = r;
    ASSERT_EQ(by.size(), 12u);
    for (const auto& [s, r] : by) {
        if (s == "snow") {
            EXPECT_EQ(r.depth, 2u);
            EXPECT_FALSE(r.capped);
        } else if (s == "sorted" || s == "sorter") {
            EXPECT_EQ(r.depth, 8u) << s;
            EXPECT_TRUE(r.capped);
            EXPECT_EQ(r.length, 6u);
        } else {
            EXPECT_EQ(r.depth, 4u) << s;
            EXPECT_EQ(r.length, 4u) << s;
            EXPECT_FALSE(r.capped) << s;
        }
    }
    EXPECT_EQ(by["snow"].round, 1u);
    EXPECT_EQ(by["sorted"].round, 3u);
    EXPECT_EQ(rounds, 4u);
}

TEST(PrefixDoubling, LoneString) {
    const auto got = run_doubling({{"hello"}, {}}, PrefixDoublingConfig{});
    ASSERT_EQ(got[0].size(), 1u);
    EXPECT_EQ(got[0][0].depth, 1u);
    EXPECT_EQ(got[0][0].round, 0u);
    EXPECT_FALSE(got[0][0].capped);
}

TEST(PrefixDoubling, SafetyAndGridTightness) {
    std::mt19937_64 gen(66);
    for (int rep = 0; rep < 40; ++rep) {
        const int p = 1 + static_cast<int>(gen() % 8);
        const std::size_t n = 50 + gen() % 1950;
        const std::size_t sigma = rep % 3 == 0 ? 2 : (rep % 3 == 1 ? 4 : 26);
        auto all = oracle::random_strings(gen, n, sigma, 0, 3 + rep % 25);
        if (rep % 4 == 0)
            for (std::size_t i = 0; i + 1 < all.size(); i += 7) all[i + 1] = all[i];
        const auto input = spread(all, p, gen);
        PrefixDoublingConfig cfg;
        cfg.epsilon = rep % 2 ? 1.0 : 0.5;
        cfg.golomb = rep % 5 == 0;
        const auto got = run_doubling(input, cfg);

        std::vector<std::string> flat;
        std::vector<Resolved> res;
        for (const auto& pe : got)
            for (const auto& r : pe) {
                flat.push_back(r.s);
                res.push_back(r);
            }
        const auto dpre = oracle::brute_dpre(flat);
        std::size_t max_len = 0;
        for (const auto& s : flat) max_len = std::max(max_len, s.size());
        const auto grid = doubling_grid(p, cfg.sigma, cfg.epsilon, max_len + 1);
        for (std::size_t i = 0; i < flat.size(); ++i) {
            const auto& r = res[i];
            SCOPED_TRACE("rep " + std::to_string(rep) + " string '" + r.s + "'");
            ASSERT_TRUE(std::find(grid.begin(), grid.end(), r.depth) != grid.end());
            ASSERT_EQ(r.capped, r.depth > r.s.size());
            ASSERT_EQ(r.length, r.capped ? r.s.size() : r.depth);
            if (!r.capped) ASSERT_TRUE(oracle::prefix_unique(flat, i, r.length));
            const std::size_t tight = *std::lower_bound(grid.begin(), grid.end(), dpre[i]);
            ASSERT_EQ(r.depth, tight) << "dpre " << dpre[i];
        }
    }
}

TEST(PrefixDoubling, DuplicatesAreCapped) {
    const auto got = run_doubling({{"same", "same", "x"}, {"same", "xy"}, {"x"}}, PrefixDoublingConfig{});
    for (const auto& pe : got)
        for (const auto& r : pe) {
            if (r.s == "same" || r.s == "x") EXPECT_TRUE(r.capped) << r.s;
            if (r.s == "xy") {
                EXPECT_FALSE(r.capped);
                EXPECT_EQ(r.depth, 2u);
            }
        }
}

TEST(PrefixDoubling, GolombDoesNotChangeBounds) {
    std::mt19937_64 gen(91);
    for (int rep = 0; rep < 20; ++rep) {
        const int p = 2 + static_cast<int>(gen() % 7);
        const auto input = spread(oracle::random_strings(gen, 400 + gen() % 600, 2 + rep % 4, 0, 30), p, gen);
        PrefixDoublingConfig a, b;
        b.golomb = true;
        std::uint32_t ra = 0, rb = 0;
        const auto x = run_doubling(input, a, &ra);
        const auto y = run_doubling(input, b, &rb);
        EXPECT_EQ(ra, rb);
        for (std::size_t pe = 0; pe < x.size(); ++pe)
            for (std::size_t i = 0; i < x[pe].size(); ++i) {
                ASSERT_EQ(x[pe][i].depth, y[pe][i].depth);
                ASSERT_EQ(x[pe][i].length, y[pe][i].length);
                ASSERT_EQ(x[pe][i].capped, y[pe][i].capped);
                ASSERT_EQ(x[pe][i].round, y[pe][i].round);
            }
    }
}
