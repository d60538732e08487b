#include "dss/sorters.hpp"

#include <numeric>
#include <stdexcept>

#include "dss/lcp_merge.hpp"
#include "dss/sequential_sort.hpp"

namespace dss {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::hquick: return "hquick";
    case Algorithm::ms_simple: return "ms-simple";
    case Algorithm::ms: return "ms";
    case Algorithm::pdms: return "pdms";
    case Algorithm::pdms_golomb: return "pdms-golomb";
    case Algorithm::fk_baseline: return "fk-baseline";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::hquick, Algorithm::ms_simple, Algorithm::ms, Algorithm::pdms,
                        Algorithm::pdms_golomb, Algorithm::fk_baseline})
        if (to_string(a) == name) return a;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

namespace {

// Steps 2-4 shared by MS and PDMS, on an already sorted array.
void partition_exchange_merge(Communicator& comm, const StringSet& sorted, const LcpArray& lcps,
                              const SamplingConfig& sampling, bool compression, SortOutcome& out,
                              SortTrace* trace) {
    StringSet sample;
    {
        Communicator::PhaseScope scope(comm, phase::sample);
        sample = draw_sample(sorted, sampling, comm.size());
    }
    StringSet splitters;
    {
        Communicator::PhaseScope scope(comm, phase::splitter_sort);
        splitters = select_splitters(comm, sample, sampling);
    }
    const auto bounds = compute_buckets(sorted, splitters);

    std::vector<ReceivedRun> runs;
    {
        Communicator::PhaseScope scope(comm, phase::exchange);
        runs = exchange_buckets(comm, sorted, lcps, bounds, compression);
    }

    Communicator::PhaseScope scope(comm, phase::merge);
    std::vector<SortedRun> inputs;
    inputs.reserve(runs.size());
    for (const auto& r : runs) inputs.push_back({&r.strings, &r.lcps});
    MergeOptions mo;
    mo.lcp_aware = compression;
    MergeResult merged = multiway_merge(inputs, mo);
    out.strings = std::move(merged.strings);
    out.lcps = std::move(merged.lcps);
    out.origins.reserve(merged.sources.size());
    for (const auto& src : merged.sources)
        out.origins.push_back({static_cast<std::uint32_t>(src.run), runs[src.run].base + src.index});

    if (trace) {
        trace->sample = std::move(sample);
        trace->splitters = std::move(splitters);
        trace->bucket_bounds = bounds;
        for (std::size_t j = 0; j + 1 < bounds.size(); ++j)
            trace->sent.push_back(bucket_records(sorted, lcps, bounds[j], bounds[j + 1], compression));
        trace->received = std::move(runs);
    }
}

SamplingConfig effective_sampling(SamplingConfig s) {
    if (s.mode == SamplingMode::fk_deterministic) s.sorter = SplitterSorter::centralized;
    if (s.v == 0) throw std::invalid_argument("oversampling factor must be at least 1");
    return s;
}

}  // namespace

SortOutcome ms_sort(Communicator& comm, const StringSet& local, const MsConfig& cfg) {
    SortOutcome out;
    out.mode = OutputMode::full_strings;
    SortedStrings sorted;
    {
        Communicator::PhaseScope scope(comm, phase::local_sort);
        sorted = sort_with_lcp(local);
    }
    out.local_order = sorted.permutation;
    SortTrace trace;
    SortTrace* tp = cfg.keep_trace ? &trace : nullptr;
    partition_exchange_merge(comm, sorted.strings, sorted.lcps, effective_sampling(cfg.sampling), cfg.compression,
                             out, tp);
    if (tp) {
        trace.local_sorted = std::move(sorted.strings);
        trace.local_lcps = std::move(sorted.lcps);
        out.trace = std::move(trace);
    }
    return out;
}

SortOutcome pdms_sort(Communicator& comm, const StringSet& local, const PdmsConfig& cfg) {
    SortOutcome out;
    out.mode = OutputMode::prefixes_only;
    SortedStrings sorted;
    {
        Communicator::PhaseScope scope(comm, phase::local_sort);
        sorted = sort_with_lcp(local);
    }
    out.local_order = sorted.permutation;

    PrefixBound bound;
    {
        Communicator::PhaseScope scope(comm, phase::dupdetect);
        bound = approximate_dprefix(comm, sorted.strings, sorted.lcps, cfg.doubling);
    }
    out.rounds = bound.rounds;

    const std::size_t n = sorted.strings.size();
    StringSet cut;
    LcpArray cut_lcps(n, 0);
    std::size_t chars = 0;
    for (auto len : bound.length) chars += len;
    cut.reserve(n, chars);
    for (std::size_t i = 0; i < n; ++i) {
        cut.push_back_unchecked(sorted.strings[i].data(), bound.length[i]);
        if (i > 0) cut_lcps[i] = std::min({sorted.lcps[i], bound.length[i - 1], bound.length[i]});
    }

    SortTrace trace;
    SortTrace* tp = cfg.keep_trace ? &trace : nullptr;
    partition_exchange_merge(comm, cut, cut_lcps, effective_sampling(cfg.sampling), true, out, tp);
    if (tp) {
        trace.local_sorted = std::move(sorted.strings);
        trace.local_lcps = std::move(sorted.lcps);
        trace.prefix_bound = bound;
        trace.truncated = std::move(cut);
        trace.truncated_lcps = std::move(cut_lcps);
        out.trace = std::move(trace);
    }
    out.prefix_bound = std::move(bound);
    return out;
}

SortOutcome hquick_driver(Communicator& comm, const StringSet& local, const HquickOptions& options) {
    TaggedStrings tagged;
    tagged.strings = local;
    tagged.origins.resize(local.size());
    for (std::size_t i = 0; i < local.size(); ++i)
        tagged.origins[i] = {static_cast<std::uint32_t>(comm.rank()), i};
    HquickOptions opt = options;
    opt.label_phases = true;
    HquickResult r = hquick_sort(comm, std::move(tagged), opt);
    SortOutcome out;
    out.mode = OutputMode::full_strings;
    out.strings = std::move(r.data.strings);
    out.origins = std::move(r.data.origins);
    out.lcps = std::move(r.lcps);
    out.rounds = static_cast<std::uint32_t>(r.dimension);
    return out;
}

SortOutcome run_sorter(Communicator& comm, const StringSet& local, const SorterConfig& cfg) {
    SamplingConfig sampling;
    sampling.mode = cfg.sampling;
    sampling.v = cfg.oversampling == 0 ? static_cast<std::size_t>(comm.size()) : cfg.oversampling;
    sampling.seed = cfg.seed;

    switch (cfg.algorithm) {
    case Algorithm::hquick: {
        HquickOptions opt;
        opt.seed = cfg.seed;
        return hquick_driver(comm, local, opt);
    }
    case Algorithm::ms:
    case Algorithm::ms_simple:
    case Algorithm::fk_baseline: {
        MsConfig ms;
        ms.compression = cfg.algorithm == Algorithm::ms;
        ms.sampling = sampling;
        if (cfg.algorithm == Algorithm::fk_baseline) ms.sampling.mode = SamplingMode::fk_deterministic;
        ms.keep_trace = cfg.keep_trace;
        return ms_sort(comm, local, ms);
    }
    case Algorithm::pdms:
    case Algorithm::pdms_golomb: {
        PdmsConfig pd;
        pd.doubling.epsilon = cfg.epsilon;
        pd.doubling.sigma = cfg.sigma;
        pd.doubling.seed = cfg.seed;
        pd.doubling.golomb = cfg.algorithm == Algorithm::pdms_golomb;
        pd.sampling = sampling;
        if (pd.sampling.mode == SamplingMode::fk_deterministic)
            throw std::invalid_argument("pdms does not support deterministic baseline sampling");
        pd.keep_trace = cfg.keep_trace;
        return pdms_sort(comm, local, pd);
    }
    }
    throw std::invalid_argument("unknown algorithm");
}

std::vector<std::vector<Origin>> input_origins(const std::vector<SortOutcome>& outcomes) {
    std::vector<std::vector<Origin>> out(outcomes.size());
    for (std::size_t pe = 0; pe < outcomes.size(); ++pe) {
        for (const Origin& o : outcomes[pe].origins) {
            const auto& order = outcomes.at(o.pe).local_order;
            if (order.empty()) out[pe].push_back(o);
            else out[pe].push_back({o.pe, order.at(o.index)});
        }
    }
    return out;
}

}  // namespace dss
