#include "dss/bench.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dss/random.hpp"
#include "dss/sequential_sort.hpp"
#include "dss/tagged.hpp"

namespace dss {

std::string to_string(InputKind k) {
    switch (k) {
    case InputKind::dn: return "dn";
    case InputKind::skewed: return "skewed";
    case InputKind::file: return "file";
    case InputKind::suffixes: return "suffixes";
    case InputKind::random: return "random";
    }
    return "unknown";
}

InputKind parse_input_kind(std::string_view name) {
    for (InputKind k : {InputKind::dn, InputKind::skewed, InputKind::file, InputKind::suffixes, InputKind::random})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown input kind: " + std::string(name));
}

std::string to_string(SamplingMode m) {
    switch (m) {
    case SamplingMode::string_based: return "string";
    case SamplingMode::char_based: return "char";
    case SamplingMode::fk_deterministic: return "fk";
    }
    return "unknown";
}

SamplingMode parse_sampling(std::string_view name) {
    for (SamplingMode m : {SamplingMode::string_based, SamplingMode::char_based, SamplingMode::fk_deterministic})
        if (to_string(m) == name) return m;
    throw std::invalid_argument("unknown sampling mode: " + std::string(name));
}

double MetricsRecord::bytes_per_string() const {
    return n == 0 ? 0.0 : static_cast<double>(bytes_sent) / static_cast<double>(n);
}

double MetricsRecord::phase_bytes_per_string(std::string_view phase) const {
    for (const auto& ph : phases)
        if (ph.phase == phase) return n == 0 ? 0.0 : static_cast<double>(ph.bytes_sent) / static_cast<double>(n);
    return 0.0;
}

std::vector<StringSet> make_input(const ExperimentConfig& cfg) {
    const InputSpec& in = cfg.input;
    std::vector<StringSet> parts(static_cast<std::size_t>(cfg.p));
    DNConfig dn;
    dn.strings_per_pe = in.strings_per_pe;
    dn.length = in.length;
    dn.ratio = in.ratio;
    dn.sigma = in.sigma;
    dn.p = cfg.p;
    dn.seed = cfg.seed;
    switch (in.kind) {
    case InputKind::dn:
        for (int r = 0; r < cfg.p; ++r) parts[static_cast<std::size_t>(r)] = gen_dn(dn, r);
        break;
    case InputKind::skewed:
        for (int r = 0; r < cfg.p; ++r) parts[static_cast<std::size_t>(r)] = gen_skewed(dn, r);
        break;
    case InputKind::file: parts = split_by_chars(ingest_lines(in.path, in.filter), cfg.p); break;
    case InputKind::suffixes:
        parts = split_by_chars(gen_suffixes(random_text(in.strings_per_pe * static_cast<std::size_t>(cfg.p),
                                                        in.sigma, cfg.seed)),
                               cfg.p);
        break;
    case InputKind::random:
        for (int r = 0; r < cfg.p; ++r) {
            RandomConfig rc;
            rc.n = in.strings_per_pe;
            rc.min_length = 1;
            rc.max_length = std::max<std::size_t>(in.length, 1);
            rc.sigma = in.sigma;
            rc.seed = pe_seed(cfg.seed, static_cast<std::uint64_t>(r));
            parts[static_cast<std::size_t>(r)] = gen_random(rc);
        }
        break;
    }
    return parts;
}

namespace {

struct GlobalDpre {
    std::vector<std::vector<std::size_t>> per_pe;
    std::uint64_t total = 0;
};

GlobalDpre global_dpre(const std::vector<StringSet>& input) {
    StringSet all;
    std::vector<Origin> ids;
    for (std::size_t pe = 0; pe < input.size(); ++pe) {
        all.append(input[pe]);
        for (std::size_t i = 0; i < input[pe].size(); ++i) ids.push_back({static_cast<std::uint32_t>(pe), i});
    }
    const SortedStrings sorted = sort_with_lcp(all);
    const DistinguishingInfo info = distinguishing_prefixes(sorted.strings, sorted.lcps);
    GlobalDpre g;
    g.per_pe.resize(input.size());
    for (std::size_t pe = 0; pe < input.size(); ++pe) g.per_pe[pe].resize(input[pe].size());
    for (std::size_t k = 0; k < sorted.permutation.size(); ++k) {
        const Origin o = ids[sorted.permutation[k]];
        g.per_pe[o.pe][o.index] = info.dpre[k];
    }
    g.total = info.total;
    return g;
}

std::string show(std::string_view s) {
    std::string out;
    for (std::size_t i = 0; i < s.size() && i < 40; ++i) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c >= 0x20 && c < 0x7f) {
            out.push_back(static_cast<char>(c));
        } else {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\x%02x", c);
            out += buf;
        }
    }
    if (s.size() > 40) out += "...";
    return "\"" + out + "\"";
}

std::string where(std::size_t pe, std::size_t k) {
    return "PE " + std::to_string(pe) + " position " + std::to_string(k);
}

Verdict fail(std::string message) { return {false, std::move(message)}; }

Verdict verify_with(const std::vector<StringSet>& input, const std::vector<SortOutcome>& outcomes,
                    const GlobalDpre* dpre) {
    if (outcomes.size() != input.size()) return fail("outcome count differs from PE count");
    std::vector<std::vector<Origin>> origins;
    try {
        for (const auto& o : outcomes)
            if (o.origins.size() != o.strings.size()) return fail("origin array size mismatch");
        origins = input_origins(outcomes);
    } catch (const std::out_of_range&) {
        return fail("origin refers to a string that does not exist");
    }

    std::vector<std::vector<bool>> seen(input.size());
    std::size_t expected = 0, produced = 0;
    for (std::size_t pe = 0; pe < input.size(); ++pe) {
        seen[pe].assign(input[pe].size(), false);
        expected += input[pe].size();
    }

    bool have_prev = false;
    std::string_view prev_full, prev_out;
    Origin prev_origin{};
    std::size_t prev_pe = 0, prev_k = 0;
    for (std::size_t pe = 0; pe < outcomes.size(); ++pe) {
        const SortOutcome& o = outcomes[pe];
        if (o.lcps.size() != o.strings.size()) return fail("LCP array size mismatch on PE " + std::to_string(pe));
        for (std::size_t k = 0; k < o.strings.size(); ++k) {
            ++produced;
            const std::string_view out = o.strings[k];
            const std::size_t expect_lcp = k == 0 ? 0 : compute_lcp(o.strings[k - 1], out);
            if (o.lcps[k] != expect_lcp)
                return fail("LCP entry " + std::to_string(o.lcps[k]) + " should be " + std::to_string(expect_lcp) +
                            " at " + where(pe, k));

            const Origin src = origins[pe][k];
            if (src.pe >= input.size() || src.index >= input[src.pe].size())
                return fail("origin out of range at " + where(pe, k));
            if (seen[src.pe][src.index])
                return fail("input string " + where(src.pe, src.index) + " delivered twice");
            seen[src.pe][src.index] = true;
            const std::string_view full = input[src.pe][src.index];

            if (o.mode == OutputMode::full_strings) {
                if (out != full) return fail("string at " + where(pe, k) + " differs from its origin");
            } else {
                if (full.substr(0, out.size()) != out)
                    return fail("prefix at " + where(pe, k) + " is not a prefix of its origin");
                const std::size_t need = std::min(dpre->per_pe[src.pe][src.index], full.size());
                if (out.size() < need)
                    return fail("prefix at " + where(pe, k) + " has " + std::to_string(out.size()) +
                                " characters, distinguishing needs " + std::to_string(need));
            }

            if (have_prev) {
                const int c = compare_tagged(prev_full, {}, full, {});
                const int c_out = compare_tagged(prev_out, {}, out, {});
                if (c > 0 || c_out > 0 || (c == 0 && !(prev_origin < src)))
                    return fail("order violated between " + where(prev_pe, prev_k) + " " + show(prev_full) +
                                " and " + where(pe, k) + " " + show(full));
            }
            have_prev = true;
            prev_full = full;
            prev_out = out;
            prev_origin = src;
            prev_pe = pe;
            prev_k = k;
        }
    }
    if (produced != expected)
        return fail("output holds " + std::to_string(produced) + " strings, input " + std::to_string(expected));
    return {};
}

}  // namespace

Verdict verify(const std::vector<StringSet>& input, const std::vector<SortOutcome>& outcomes) {
    const bool prefixes = std::any_of(outcomes.begin(), outcomes.end(),
                                      [](const SortOutcome& o) { return o.mode == OutputMode::prefixes_only; });
    if (!prefixes) return verify_with(input, outcomes, nullptr);
    const GlobalDpre d = global_dpre(input);
    return verify_with(input, outcomes, &d);
}

MetricsRecord run(const ExperimentConfig& cfg) {
    if (cfg.p < 1) throw ConfigError("need at least one PE");
    if (cfg.repetitions < 1) throw ConfigError("need at least one repetition");
    const auto input = make_input(cfg);
    const GlobalDpre dpre = global_dpre(input);

    MetricsRecord rec;
    rec.algorithm = to_string(cfg.algorithm);
    rec.p = cfg.p;
    for (const auto& s : input) {
        rec.n += s.size();
        rec.N += s.char_count();
    }
    rec.D = dpre.total;
    const bool synthetic = cfg.input.kind == InputKind::dn || cfg.input.kind == InputKind::skewed;
    rec.r = synthetic ? cfg.input.ratio : (rec.N == 0 ? 0.0 : static_cast<double>(rec.D) / static_cast<double>(rec.N));

    SorterConfig sc;
    sc.algorithm = cfg.algorithm;
    sc.sampling = cfg.sampling;
    sc.oversampling = cfg.oversampling;
    sc.epsilon = cfg.epsilon;
    sc.seed = cfg.seed;

    rec.verdict = true;
    std::map<std::string, double> seconds;
    for (int rep = 0; rep < cfg.repetitions; ++rep) {
        CommWorld world(cfg.p);
        const auto outcomes =
            world.run([&](Communicator& comm) { return run_sorter(comm, input[static_cast<std::size_t>(comm.rank())], sc); });
        const VolumeReport report = world.report();
        const Verdict v = verify_with(input, outcomes, &dpre);
        if (!v.pass && rec.verdict) {
            rec.verdict = false;
            rec.diagnostic = v.message;
        }
        for (const auto& ph : report.phases) seconds[ph.phase] += ph.seconds;
        if (rep == 0) {
            for (const auto& ph : report.phases) {
                if (ph.phase == "default" && ph.total_sent() == 0) continue;
                rec.phases.push_back({ph.phase, 0.0, ph.total_sent()});
            }
            rec.bytes_sent = report.total_sent();
            rec.bottleneck = report.bottleneck();
            rec.rounds = outcomes.empty() ? 0 : outcomes.front().rounds;
        }
    }
    for (auto& ph : rec.phases) ph.seconds = seconds[ph.phase] / cfg.repetitions;
    return rec;
}

std::vector<MetricsRecord> sweep(const std::vector<ExperimentConfig>& configs) {
    std::vector<MetricsRecord> out;
    for (const auto& cfg : configs) {
        try {
            out.push_back(run(cfg));
        } catch (const std::exception& e) {
            MetricsRecord rec;
            rec.algorithm = to_string(cfg.algorithm);
            rec.p = cfg.p;
            rec.r = cfg.input.ratio;
            rec.verdict = false;
            rec.diagnostic = e.what();
            out.push_back(std::move(rec));
        }
    }
    return out;
}

std::vector<CsvRow> to_rows(const std::vector<MetricsRecord>& records) {
    std::vector<CsvRow> rows;
    for (const auto& rec : records) {
        CsvRow base;
        base.algorithm = rec.algorithm;
        base.p = rec.p;
        base.n = rec.n;
        base.N = rec.N;
        base.D = rec.D;
        base.r = rec.r;
        base.rounds = rec.rounds;
        base.verdict = rec.verdict ? "pass" : "fail";
        auto per_string = [&](std::uint64_t bytes) {
            return rec.n == 0 ? 0.0 : static_cast<double>(bytes) / static_cast<double>(rec.n);
        };
        double total_seconds = 0.0;
        for (const auto& ph : rec.phases) {
            CsvRow row = base;
            row.phase = ph.phase;
            row.seconds = ph.seconds;
            row.bytes_sent = ph.bytes_sent;
            row.bytes_per_string = per_string(ph.bytes_sent);
            total_seconds += ph.seconds;
            rows.push_back(std::move(row));
        }
        CsvRow total = base;
        total.phase = "total";
        total.seconds = total_seconds;
        total.bytes_sent = rec.bytes_sent;
        total.bytes_per_string = per_string(rec.bytes_sent);
        rows.push_back(std::move(total));
    }
    return rows;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t parse_u64(const std::string& s, const char* field) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || s[0] == '-') throw std::runtime_error(std::string("bad ") + field + ": " + s);
    return v;
}

double parse_double(const std::string& s, const char* field) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw std::runtime_error(std::string("bad ") + field + ": " + s);
    return v;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
    out << kCsvHeader << '\n';
    for (const auto& r : rows) {
        out << r.algorithm << ',' << r.p << ',' << r.n << ',' << r.N << ',' << r.D << ',' << fmt_double(r.r) << ','
            << r.phase << ',' << fmt_double(r.seconds) << ',' << r.bytes_sent << ',' << fmt_double(r.bytes_per_string)
            << ',' << r.rounds << ',' << r.verdict << '\n';
    }
}

std::vector<CsvRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::runtime_error("CSV header mismatch");
    std::vector<CsvRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 12) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 12 fields");
        CsvRow r;
        r.algorithm = f[0];
        r.p = static_cast<int>(parse_u64(f[1], "p"));
        r.n = parse_u64(f[2], "n");
        r.N = parse_u64(f[3], "N");
        r.D = parse_u64(f[4], "D");
        r.r = parse_double(f[5], "r");
        r.phase = f[6];
        r.seconds = parse_double(f[7], "seconds");
        r.bytes_sent = parse_u64(f[8], "bytes_sent");
        r.bytes_per_string = parse_double(f[9], "bytes_per_string");
        r.rounds = static_cast<std::uint32_t>(parse_u64(f[10], "rounds"));
        r.verdict = f[11];
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_json(std::ostream& out, const std::vector<CsvRow>& rows) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
        doc.push_back({{"algorithm", r.algorithm},
                       {"p", r.p},
                       {"n", r.n},
                       {"N", r.N},
                       {"D", r.D},
                       {"r", r.r},
                       {"phase", r.phase},
                       {"seconds", r.seconds},
                       {"bytes_sent", r.bytes_sent},
                       {"bytes_per_string", r.bytes_per_string},
                       {"rounds", r.rounds},
                       {"verdict", r.verdict}});
    }
    out << doc.dump(2) << '\n';
}

std::string validate_row(const CsvRow& row) {
    static const char* algorithms[] = {"hquick", "ms-simple", "ms", "pdms", "pdms-golomb", "fk-baseline"};
    if (std::find(std::begin(algorithms), std::end(algorithms), row.algorithm) == std::end(algorithms))
        return "unknown algorithm " + row.algorithm;
    if (row.p < 1) return "p must be positive";
    if (row.phase.empty()) return "empty phase";
    if (row.verdict != "pass" && row.verdict != "fail") return "verdict must be pass or fail";
    if (!(row.seconds >= 0.0)) return "negative time";
    if (!(row.r >= 0.0 && row.r <= 1.0)) return "r outside [0, 1]";
    if (row.D > row.N + row.n) return "D exceeds N + n";
    const double expect = row.n == 0 ? 0.0 : static_cast<double>(row.bytes_sent) / static_cast<double>(row.n);
    if (row.bytes_per_string != expect) return "bytes_per_string does not match bytes_sent / n";
    return {};
}

}  // namespace dss
