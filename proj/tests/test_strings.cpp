#include <gtest/gtest.h>

#include <cmath>

#include "dss/sequential_sort.hpp"
#include "dss/string_set.hpp"
#include "support/oracle.hpp"

using namespace dss;

TEST(StringSet, TerminatorsAndOffsets) {
    StringSet s{"ab", "", "xyz"};
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(s[0], "ab");
    EXPECT_EQ(s[1], "");
    EXPECT_EQ(s[2], "xyz");
    EXPECT_EQ(s.c_str(0)[2], 0);
    EXPECT_EQ(s.c_str(1)[0], 0);
    EXPECT_EQ(s.char_count(), 5u);
    EXPECT_EQ(s.buffer().size(), 8u);
    for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LT(s.offsets()[i - 1], s.offsets()[i]);
    EXPECT_EQ(s.max_length(), 3u);
}

TEST(StringSet, RejectsEmbeddedZero) {
    StringSet s;
    EXPECT_THROW(s.push_back(std::string_view("a\0b", 3)), std::invalid_argument);
    EXPECT_TRUE(s.empty());
}

TEST(StringSet, SliceGatherAppend) {
    StringSet s{"a", "bb", "ccc", "dddd"};
    EXPECT_EQ(s.slice(1, 3).to_vector(), (std::vector<std::string>{"bb", "ccc"}));
    const std::vector<std::size_t> idx{3, 0};
    EXPECT_EQ(s.gather(idx).to_vector(), (std::vector<std::string>{"dddd", "a"}));
    StringSet t{"x"};
    t.append(s.slice(0, 2));
    EXPECT_EQ(t.to_vector(), (std::vector<std::string>{"x", "a", "bb"}));
    EXPECT_TRUE(s.slice(2, 2).empty());
}

TEST(ComputeLcp, Examples) {
    EXPECT_EQ(compute_lcp("algae", "alpha"), 2u);
    EXPECT_EQ(compute_lcp("abc", "abc"), 3u);
    EXPECT_EQ(compute_lcp("order", "alps"), 0u);
    EXPECT_EQ(compute_lcp("alpha", "algae"), 2u);
    EXPECT_EQ(compute_lcp("", "abc"), 0u);
    EXPECT_EQ(compute_lcp("ab", "abc"), 2u);
}

TEST(SortWithLcp, WorkedExampleLeftPe) {
    const StringSet in{"alpha", "order", "alps", "algae"};
    const SortedStrings out = sort_with_lcp(in);
    EXPECT_EQ(out.strings.to_vector(), (std::vector<std::string>{"algae", "alpha", "alps", "order"}));
    EXPECT_EQ(out.lcps, (LcpArray{0, 2, 3, 0}));
    EXPECT_EQ(out.permutation, (std::vector<std::size_t>{3, 0, 2, 1}));
}

TEST(SortWithLcp, Empty) {
    const SortedStrings out = sort_with_lcp(StringSet{});
    EXPECT_TRUE(out.strings.empty());
    EXPECT_TRUE(out.lcps.empty());
    EXPECT_TRUE(out.permutation.empty());
}

TEST(SortWithLcp, ThousandStringsSigma4MatchComparisonSort) {
    std::mt19937_64 rng(4);
    const auto v = oracle::random_strings(rng, 1000, 4, 0, 20);
    const SortedStrings out = sort_with_lcp(oracle::to_set(v));
    EXPECT_EQ(out.strings.to_vector(), oracle::sorted(v));
}

TEST(SortWithLcp, HighBytesSortUnsigned) {
    const StringSet in{"\xff", "a", "\x80z", "\x01"};
    const SortedStrings out = sort_with_lcp(in);
    EXPECT_EQ(out.strings.to_vector(), (std::vector<std::string>{"\x01", "a", "\x80z", "\xff"}));
}

namespace {

void check_sorted_instance(const std::vector<std::string>& v, const SortOptions& opt = {}) {
    const SortedStrings out = sort_with_lcp(oracle::to_set(v), opt);
    const auto expect = oracle::sorted(v);
    ASSERT_EQ(out.strings.to_vector(), expect);
    ASSERT_EQ(out.lcps.size(), v.size());
    if (!v.empty()) ASSERT_EQ(out.lcps[0], 0u);
    for (std::size_t i = 1; i < v.size(); ++i) ASSERT_EQ(out.lcps[i], oracle::lcp(expect[i - 1], expect[i]));
    // stability: equal strings keep their input order
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (expect[i - 1] == expect[i]) ASSERT_LT(out.permutation[i - 1], out.permutation[i]);
        ASSERT_EQ(v[out.permutation[i]], expect[i]);
    }
}

}  // namespace

TEST(SortWithLcp, RandomInstancesAcrossAlphabets) {
    std::mt19937_64 rng(2024);
    int instances = 0;
    for (std::size_t sigma : {2, 4, 26, 242}) {
        for (int rep = 0; rep < 30; ++rep) {
            const std::size_t n = std::uniform_int_distribution<std::size_t>(0, 1500)(rng);
            auto v = oracle::random_strings(rng, n, sigma, 1, 64);
            if (rep % 3 == 0 && n > 0) {
                // duplicate heavy: draw from a small pool
                std::vector<std::string> pool(v.begin(), v.begin() + std::min<std::ptrdiff_t>(5, n));
                for (auto& s : v) s = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
            }
            SCOPED_TRACE("sigma " + std::to_string(sigma) + " rep " + std::to_string(rep));
            check_sorted_instance(v);
            ++instances;
        }
    }
    EXPECT_GE(instances, 100);
}

TEST(SortWithLcp, SmallThresholdsExerciseAllStages) {
    std::mt19937_64 rng(7);
    SortOptions opt;
    opt.alphabet_size = 4;
    opt.insertion_threshold = 2;
    for (int rep = 0; rep < 20; ++rep) check_sorted_instance(oracle::random_strings(rng, 300, 3, 0, 10), opt);
    opt.insertion_threshold = 1000;
    for (int rep = 0; rep < 20; ++rep) check_sorted_instance(oracle::random_strings(rng, 300, 3, 0, 10), opt);
}

TEST(DistinguishingPrefixes, Examples) {
    const StringSet fin{"snow", "sorbet", "sorted", "sorter", "soul"};
    const auto info = distinguishing_prefixes(fin, compute_lcp_array(fin));
    EXPECT_EQ(info.dpre[3], 6u);
    EXPECT_EQ(info.dpre[2], 6u);

    const StringSet one{"x"};
    const auto single = distinguishing_prefixes(one, LcpArray{0});
    EXPECT_EQ(single.dpre, (std::vector<std::size_t>{1}));
    EXPECT_EQ(single.total, 1u);

    const StringSet dup{"dup", "dup"};
    const auto d = distinguishing_prefixes(dup, LcpArray{0, 3});
    EXPECT_EQ(d.dpre, (std::vector<std::size_t>{4, 4}));
    EXPECT_TRUE(d.capped[0]);
    EXPECT_TRUE(d.capped[1]);
    EXPECT_EQ(d.max, 4u);
}

TEST(DistinguishingPrefixes, MatchesBruteForce) {
    std::mt19937_64 rng(99);
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 200)(rng);
        const std::size_t sigma = rep % 2 ? 2 : 5;
        const auto v = oracle::sorted(oracle::random_strings(rng, n, sigma, 0, 12));
        const StringSet s = oracle::to_set(v);
        const auto info = distinguishing_prefixes(s, compute_lcp_array(s));
        const auto brute = oracle::brute_dpre(v);
        ASSERT_EQ(info.dpre, brute);
        std::size_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            ASSERT_GE(info.dpre[i], 1u);
            ASSERT_LE(info.dpre[i], v[i].size() + 1);
            total += brute[i];
        }
        ASSERT_EQ(info.total, total);
        ASSERT_EQ(info.max, *std::max_element(brute.begin(), brute.end()));
    }
}

TEST(SortWithLcp, InspectionCountBound) {
    // constant documented on sort_with_lcp
    constexpr double c = 2.0;
    std::mt19937_64 rng(31);
    for (std::size_t sigma : {2, 4, 26, 242}) {
        for (std::size_t n : {100, 1000, 20000}) {
            const auto v = oracle::random_strings(rng, n, sigma, 1, 64);
            SortStats stats;
            SortOptions opt;
            opt.alphabet_size = sigma;
            opt.stats = &stats;
            const SortedStrings out = sort_with_lcp(oracle::to_set(v), opt);
            const auto info = distinguishing_prefixes(out.strings, out.lcps);
            const double bound =
                static_cast<double>(info.total) + static_cast<double>(n) * std::log2(static_cast<double>(sigma)) + n;
            RecordProperty("ratio_" + std::to_string(sigma) + "_" + std::to_string(n),
                           std::to_string(stats.char_inspections / bound));
            EXPECT_LE(static_cast<double>(stats.char_inspections), c * bound)
                << "sigma " << sigma << " n " << n << " ratio " << stats.char_inspections / bound;
        }
    }
}
