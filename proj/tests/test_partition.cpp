#include <gtest/gtest.h>

#include <set>

#include "dss/partition.hpp"
#include "dss/sequential_sort.hpp"
#include "support/oracle.hpp"

using namespace dss;

namespace {

std::vector<std::string> sorted_vec(std::vector<std::string> v) { return oracle::sorted(std::move(v)); }

// Globally distinct random strings: a random body plus a unique tail.
std::vector<std::vector<std::string>> distinct_input(std::mt19937_64& gen, int p, std::size_t n_per_pe,
                                                     std::size_t sigma, std::size_t max_len) {
    std::vector<std::vector<std::string>> input(static_cast<std::size_t>(p));
    std::size_t id = 0;
    for (auto& pe : input) {
        for (auto& s : oracle::random_strings(gen, n_per_pe, sigma, 0, max_len)) pe.push_back(s + "#" + std::to_string(id++));
        pe = sorted_vec(pe);
    }
    return input;
}

struct BucketTotals {
    std::vector<std::size_t> strings;
    std::vector<std::size_t> chars;
    std::size_t max_len = 0;
};

BucketTotals run_partition(const std::vector<std::vector<std::string>>& input, const SamplingConfig& cfg) {
    const int p = static_cast<int>(input.size());
    const auto per_pe = spawn(p, [&](Communicator& c) {
        const StringSet local = oracle::to_set(input[static_cast<std::size_t>(c.rank())]);
        const StringSet sample = draw_sample(local, cfg, p);
        const StringSet splitters = select_splitters(c, sample, cfg);
        const auto bounds = compute_buckets(local, splitters);
        std::vector<std::pair<std::size_t, std::size_t>> sizes;
        for (int b = 0; b < p; ++b) {
            std::size_t chars = 0;
            for (std::size_t i = bounds[static_cast<std::size_t>(b)]; i < bounds[static_cast<std::size_t>(b) + 1]; ++i)
                chars += local.length(i);
            sizes.emplace_back(bounds[static_cast<std::size_t>(b) + 1] - bounds[static_cast<std::size_t>(b)], chars);
        }
        return sizes;
    });
    BucketTotals t;
    t.strings.assign(static_cast<std::size_t>(p), 0);
    t.chars.assign(static_cast<std::size_t>(p), 0);
    for (const auto& pe : per_pe)
        for (std::size_t b = 0; b < pe.size(); ++b) {
            t.strings[b] += pe[b].first;
            t.chars[b] += pe[b].second;
        }
    for (const auto& pe : input)
        for (const auto& s : pe) t.max_len = std::max(t.max_len, s.size());
    return t;
}

}  // namespace

TEST(StringSampling, Ranks) {
    EXPECT_EQ(string_sample_ranks(100, 4), (std::vector<std::size_t>{19, 39, 59, 79}));
    EXPECT_EQ(string_sample_ranks(0, 3), std::vector<std::size_t>{});
    const auto r = string_sample_ranks(3, 10);
    EXPECT_LE(r.size(), 3u);
    EXPECT_TRUE(std::is_sorted(r.begin(), r.end()));
    EXPECT_EQ(std::set<std::size_t>(r.begin(), r.end()).size(), r.size());
    for (auto x : r) EXPECT_LT(x, 3u);
}

TEST(StringSampling, WorkedExampleSamples) {
    EXPECT_EQ(sample_string_based(StringSet{"algae", "alpha", "alps", "order"}, 1).to_vector(),
              std::vector<std::string>{"alpha"});
    EXPECT_EQ(sample_string_based(StringSet{"algo", "snow", "sorbet", "sorter"}, 1).to_vector(),
              std::vector<std::string>{"snow"});
    EXPECT_EQ(sample_string_based(StringSet{"orange", "organ", "sorted", "soul"}, 1).to_vector(),
              std::vector<std::string>{"organ"});
    EXPECT_TRUE(sample_string_based(StringSet{}, 3).empty());
}

TEST(CharSampling, Examples) {
    EXPECT_EQ(sample_char_based(StringSet{"algae", "alpha", "alps", "order"}, 1).to_vector(),
              std::vector<std::string>{"alps"});
    StringSet ones{"a", "b", "c", "d", "e"};
    for (std::size_t v = 1; v <= 4; ++v)
        EXPECT_EQ(sample_char_based(ones, v), sample_string_based(ones, v)) << "v=" << v;
    std::vector<std::string> v{std::string(1000000, 'a')};
    for (int i = 0; i < 10; ++i) v.push_back("b" + std::to_string(i));
    const StringSet longset = oracle::to_set(v);
    EXPECT_EQ(sample_char_based(longset, 2).size(), 1u);
    EXPECT_TRUE(sample_char_based(StringSet{}, 2).empty());
}

TEST(CharSampling, CustomWeights) {
    StringSet s{"aaaa", "b", "c", "d"};
    const std::vector<std::size_t> w{1, 1, 1, 1};
    EXPECT_EQ(sample_char_based(s, 1, &w), sample_string_based(s, 1));
}

TEST(SplitterRanks, Rules) {
    EXPECT_EQ(splitter_ranks(3, 3), (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(splitter_ranks(12, 4), (std::vector<std::size_t>{2, 5, 8}));
    EXPECT_EQ(splitter_ranks(2, 5), (std::vector<std::size_t>{0, 1, 1, 1}));
    EXPECT_TRUE(splitter_ranks(0, 5).empty());
    EXPECT_TRUE(splitter_ranks(5, 1).empty());
}

TEST(SelectSplitters, WorkedExample) {
    const std::vector<std::string> samples{"alpha", "snow", "organ"};
    for (auto sorter : {SplitterSorter::hquick, SplitterSorter::centralized}) {
        SamplingConfig cfg;
        cfg.sorter = sorter;
        const auto got = spawn(3, [&](Communicator& c) {
            return select_splitters(c, StringSet{samples[static_cast<std::size_t>(c.rank())]}, cfg).to_vector();
        });
        for (const auto& g : got) EXPECT_EQ(g, (std::vector<std::string>{"alpha", "organ"}));
    }
}

TEST(SelectSplitters, SinglePeIsEmpty) {
    const auto got = spawn(1, [](Communicator& c) { return select_splitters(c, StringSet{"x"}, {}).size(); });
    EXPECT_EQ(got[0], 0u);
}

TEST(SelectSplitters, PadsWhenSamplesAreScarce) {
    const auto got = spawn(4, [](Communicator& c) {
        return select_splitters(c, c.rank() == 2 ? StringSet{"m"} : StringSet{}, {}).to_vector();
    });
    for (const auto& g : got) EXPECT_EQ(g, (std::vector<std::string>{"m", "m", "m"}));
    const auto none = spawn(3, [](Communicator& c) { return select_splitters(c, StringSet{}, {}).to_vector(); });
    EXPECT_EQ(none[0], (std::vector<std::string>{"", ""}));
}

TEST(SelectSplitters, SixteenPesMatchOfflineRanks) {
    std::mt19937_64 gen(16);
    const int p = 16;
    for (auto sorter : {SplitterSorter::hquick, SplitterSorter::centralized}) {
        for (std::size_t v : {1u, 3u, 16u}) {
            std::vector<std::vector<std::string>> input;
            for (int r = 0; r < p; ++r) input.push_back(sorted_vec(oracle::random_strings(gen, 40, 4, 0, 8)));
            SamplingConfig cfg;
            cfg.v = v;
            cfg.sorter = sorter;
            const auto got = spawn(p, [&](Communicator& c) {
                const StringSet local = oracle::to_set(input[static_cast<std::size_t>(c.rank())]);
                return select_splitters(c, draw_sample(local, cfg, p), cfg).to_vector();
            });
            std::vector<std::string> all;
            for (const auto& pe : input) {
                for (auto i : string_sample_ranks(pe.size(), v)) all.push_back(pe[i]);
            }
            all = sorted_vec(all);
            std::vector<std::string> expect;
            for (auto i : splitter_ranks(all.size(), p)) expect.push_back(all[i]);
            for (const auto& g : got) EXPECT_EQ(g, expect);
        }
    }
}

TEST(Buckets, WorkedExamples) {
    const StringSet splitters{"alpha", "organ"};
    EXPECT_EQ(compute_buckets(StringSet{"algae", "alpha", "alps", "order"}, splitters),
              (std::vector<std::size_t>{0, 2, 4, 4}));
    EXPECT_EQ(compute_buckets(StringSet{"algo", "snow", "sorbet", "sorter"}, splitters),
              (std::vector<std::size_t>{0, 1, 1, 4}));
    EXPECT_EQ(compute_buckets(StringSet{"x", "y"}, StringSet{"a", "b"}), (std::vector<std::size_t>{0, 0, 0, 2}));
    EXPECT_EQ(compute_buckets(StringSet{"b", "b", "c"}, StringSet{"b", "b"}), (std::vector<std::size_t>{0, 2, 2, 3}));
}

TEST(Buckets, ReassemblyAndPredicate) {
    std::mt19937_64 gen(2);
    for (int rep = 0; rep < 50; ++rep) {
        const auto local = sorted_vec(oracle::random_strings(gen, 60, 3, 0, 5));
        auto sp = sorted_vec(oracle::random_strings(gen, 1 + rep % 7, 3, 0, 4));
        const auto bounds = compute_buckets(oracle::to_set(local), oracle::to_set(sp));
        ASSERT_EQ(bounds.size(), sp.size() + 2);
        ASSERT_EQ(bounds.front(), 0u);
        ASSERT_EQ(bounds.back(), local.size());
        for (std::size_t b = 0; b + 1 < bounds.size(); ++b) {
            ASSERT_LE(bounds[b], bounds[b + 1]);
            for (std::size_t i = bounds[b]; i < bounds[b + 1]; ++i) {
                if (b > 0) ASSERT_TRUE(oracle::byte_less(sp[b - 1], local[i]));
                if (b < sp.size()) ASSERT_FALSE(oracle::byte_less(sp[b], local[i]));
            }
        }
    }
}

TEST(BalanceBounds, StringBased) {
    std::mt19937_64 gen(202);
    int instances = 0;
    for (int rep = 0; rep < 14; ++rep) {
        for (int p : {2, 4, 8, 16}) {
            for (std::size_t mult : {1u, 2u}) {
                const std::size_t v = mult * static_cast<std::size_t>(p);
                // half the instances are exactly divisible
                const std::size_t per_pe = rep % 2 == 0 ? (v + 1) * (1 + rep % 5) : 30 + gen() % 90;
                const auto input = distinct_input(gen, p, per_pe, rep % 3 == 0 ? 2 : 26, 12);
                SamplingConfig cfg;
                cfg.v = v;
                const auto t = run_partition(input, cfg);
                const double n = static_cast<double>(per_pe) * p;
                const bool divisible = per_pe % (v + 1) == 0;
                const double bound = n / p + n / static_cast<double>(v) + (divisible ? 0 : p);
                for (auto s : t.strings) ASSERT_LE(static_cast<double>(s), bound) << "p " << p << " v " << v << " n/p " << per_pe;
                ++instances;
            }
        }
    }
    EXPECT_GE(instances, 50);
}

TEST(BalanceBounds, CharacterBased) {
    std::mt19937_64 gen(303);
    int checked = 0;
    for (int rep = 0; rep < 14; ++rep) {
        for (int p : {2, 4, 8, 16}) {
            for (std::size_t mult : {1u, 2u}) {
                const std::size_t v = mult * static_cast<std::size_t>(p);
                const std::size_t per_pe = 40 + gen() % 200;
                const auto input = distinct_input(gen, p, per_pe, rep % 2 == 0 ? 4 : 26, rep % 4 == 0 ? 40 : 10);
                SamplingConfig cfg;
                cfg.mode = SamplingMode::char_based;
                cfg.v = v;
                const auto t = run_partition(input, cfg);
                double N = 0, min_omega = 1e300;
                for (const auto& pe : input) {
                    double ni = 0;
                    for (const auto& s : pe) ni += static_cast<double>(s.size());
                    N += ni;
                    min_omega = std::min(min_omega, ni / static_cast<double>(v + 1));
                }
                const double lhat = static_cast<double>(t.max_len);
                if (lhat > min_omega) continue;
                const double bound = N / p + N / static_cast<double>(v) + static_cast<double>(p + v) * lhat;
                for (auto c : t.chars) ASSERT_LE(static_cast<double>(c), bound) << "p " << p << " v " << v;
                ++checked;
            }
        }
    }
    EXPECT_GE(checked, 50);
}

TEST(SelectSplitters, AgreementUnderAllModes) {
    std::mt19937_64 gen(9);
    for (auto mode : {SamplingMode::string_based, SamplingMode::char_based, SamplingMode::fk_deterministic}) {
        const int p = 5;
        std::vector<std::vector<std::string>> input;
        for (int r = 0; r < p; ++r) input.push_back(sorted_vec(oracle::random_strings(gen, 25, 3, 0, 6)));
        SamplingConfig cfg;
        cfg.mode = mode;
        cfg.v = 3;
        if (mode == SamplingMode::fk_deterministic) cfg.sorter = SplitterSorter::centralized;
        const auto got = spawn(p, [&](Communicator& c) {
            const StringSet local = oracle::to_set(input[static_cast<std::size_t>(c.rank())]);
            const StringSet sample = draw_sample(local, cfg, p);
            if (mode == SamplingMode::fk_deterministic) EXPECT_LE(sample.size(), static_cast<std::size_t>(p - 1));
            return select_splitters(c, sample, cfg).to_vector();
        });
        for (const auto& g : got) {
            EXPECT_EQ(g, got[0]);
            EXPECT_EQ(g.size(), static_cast<std::size_t>(p - 1));
            EXPECT_TRUE(std::is_sorted(g.begin(), g.end(), oracle::byte_less));
        }
    }
}
