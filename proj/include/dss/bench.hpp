#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dss/comm.hpp"
#include "dss/datagen.hpp"
#include "dss/sorters.hpp"

namespace dss {

enum class InputKind { dn, skewed, file, suffixes, random };

std::string to_string(InputKind k);
InputKind parse_input_kind(std::string_view name);
SamplingMode parse_sampling(std::string_view name);
std::string to_string(SamplingMode m);

struct InputSpec {
    InputKind kind = InputKind::dn;
    std::size_t strings_per_pe = 1000;
    std::size_t length = 500;
    double ratio = 0.0;
    std::size_t sigma = 26;
    /// For kind == file.
    std::string path;
    LineFilter filter = LineFilter::none;
};

struct ExperimentConfig {
    Algorithm algorithm = Algorithm::ms;
    int p = 4;
    InputSpec input;
    SamplingMode sampling = SamplingMode::string_based;
    /// Samples per PE; 0 means p.
    std::size_t oversampling = 0;
    double epsilon = 1.0;
    std::uint64_t seed = 1;
    int repetitions = 1;
};

struct PhaseMetric {
    std::string phase;
    double seconds = 0.0;
    std::uint64_t bytes_sent = 0;
};

struct MetricsRecord {
    std::string algorithm;
    int p = 0;
    std::uint64_t n = 0;
    std::uint64_t N = 0;
    std::uint64_t D = 0;
    double r = 0.0;
    std::vector<PhaseMetric> phases;
    std::uint64_t bytes_sent = 0;
    std::uint64_t bottleneck = 0;
    std::uint32_t rounds = 0;
    bool verdict = false;
    std::string diagnostic;

    double bytes_per_string() const;
    /// Bytes sent in `phase` divided by n; 0 for an absent phase.
    double phase_bytes_per_string(std::string_view phase) const;
};

struct Verdict {
    bool pass = true;
    std::string message;
};

/// Per-PE input of an experiment.
std::vector<StringSet> make_input(const ExperimentConfig& cfg);

/// Checks global order across PEs, LCP arrays, that origins form a
/// permutation of the input, that equal strings leave in origin order, and
/// (prefix mode) that each output is a prefix of its origin string no
/// shorter than min(dpre, |s|). The message names the first violation.
Verdict verify(const std::vector<StringSet>& input, const std::vector<SortOutcome>& outcomes);

/// Runs one experiment on a fresh simulated world and verifies it. With
/// several repetitions, phase times are averaged; volumes are identical.
MetricsRecord run(const ExperimentConfig& cfg);

/// Runs every configuration; a failing one yields a record with a false
/// verdict and the error as diagnostic.
std::vector<MetricsRecord> sweep(const std::vector<ExperimentConfig>& configs);

/// Flat metrics row; one per phase of a record plus one with phase "total".
struct CsvRow {
    std::string algorithm;
    int p = 0;
    std::uint64_t n = 0;
    std::uint64_t N = 0;
    std::uint64_t D = 0;
    double r = 0.0;
    std::string phase;
    double seconds = 0.0;
    std::uint64_t bytes_sent = 0;
    double bytes_per_string = 0.0;
    std::uint32_t rounds = 0;
    std::string verdict;

    friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

inline constexpr const char* kCsvHeader =
    "algorithm,p,n,N,D,r,phase,seconds,bytes_sent,bytes_per_string,rounds,verdict";

std::vector<CsvRow> to_rows(const std::vector<MetricsRecord>& records);
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
/// Throws std::runtime_error on a malformed file.
std::vector<CsvRow> read_csv(std::istream& in);
void write_json(std::ostream& out, const std::vector<CsvRow>& rows);
/// Empty when the row is consistent (types, ranges and the bytes per string
/// recomputation); otherwise the reason.
std::string validate_row(const CsvRow& row);

}  // namespace dss
