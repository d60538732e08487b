#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <cstring>
#include <deque>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

namespace dss {

using Bytes = std::vector<std::uint8_t>;

/// Message counters of one PE.
struct Counters {
    std::uint64_t bytes_sent = 0;
    std::uint64_t bytes_received = 0;
    std::uint64_t messages_sent = 0;

    Counters& operator+=(const Counters& o) {
        bytes_sent += o.bytes_sent;
        bytes_received += o.bytes_received;
        messages_sent += o.messages_sent;
        return *this;
    }
};

struct PhaseVolume {
    std::string phase;
    std::vector<Counters> per_pe;
    /// Longest time any PE spent inside the phase.
    double seconds = 0.0;

    std::uint64_t total_sent() const;
    std::uint64_t total_received() const;
    /// max over PEs of sent + received.
    std::uint64_t bottleneck() const;
};

/// Per-phase communication volume of one world run. Phases appear in the
/// order they were first entered.
struct VolumeReport {
    std::vector<PhaseVolume> phases;

    const PhaseVolume* find(std::string_view phase) const;
    std::uint64_t sent(std::string_view phase) const;
    std::uint64_t total_sent() const;
    std::uint64_t total_received() const;
    std::vector<Counters> per_pe_totals() const;
    /// max over PEs of total sent + received across all phases.
    std::uint64_t bottleneck() const;
};

class WorldAborted : public std::runtime_error {
public:
    WorldAborted() : std::runtime_error("world aborted by another PE") {}
};

class DeadlockError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised by CommWorld::run when a PE program throws.
class WorkerError : public std::runtime_error {
public:
    WorkerError(int rank, const std::string& what)
        : std::runtime_error("PE " + std::to_string(rank) + " failed: " + what), rank_(rank) {}
    int rank() const { return rank_; }

private:
    int rank_;
};

struct WorldOptions {
    /// A receive that waits longer than this is reported as a deadlock.
    std::chrono::milliseconds recv_timeout{120000};
    /// Bytes added to the counters for every message (models startup cost).
    std::uint64_t envelope_bytes = 0;
};

/// Message tags. Collectives use fixed kinds; p2p users pick their own tags
/// through user_tag(). Channels are FIFO per (source, tag).
enum class Tag : std::uint64_t {
    barrier = 1,
    broadcast,
    gather,
    allgather,
    alltoall,
    reduce,
    scan,
    user_base = 1 << 16,
};

constexpr Tag user_tag(std::uint64_t t) {
    return static_cast<Tag>(static_cast<std::uint64_t>(Tag::user_base) + t);
}

class CommWorld;

/// Handle a PE program uses to talk to the other PEs of its world.
class Communicator {
public:
    int rank() const { return rank_; }
    int size() const;

    // point-to-point (buffered send, blocking receive)
    void send(int dest, Tag tag, Bytes payload);
    Bytes recv(int src, Tag tag);
    Bytes sendrecv(int partner, Tag tag, Bytes payload);

    // collectives; every PE must call them in the same order
    void barrier();
    Bytes broadcast(int root, Bytes data);
    /// Blocks ordered by rank at the root, empty elsewhere.
    std::vector<Bytes> gather(int root, Bytes data);
    /// Bruck schedule: every PE receives each other PE's block exactly once.
    std::vector<Bytes> allgather(Bytes data);
    /// sends[j] goes to PE j; result[i] came from PE i. The self block is a
    /// local copy and is not counted.
    std::vector<Bytes> alltoallv(std::vector<Bytes> sends);

    template <typename T, typename Op>
    T reduce(int root, T value, Op op);
    template <typename T, typename Op>
    T allreduce(T value, Op op);
    /// Exclusive prefix sum over ranks.
    std::uint64_t prefix_sum(std::uint64_t value);

    /// Counters and timers are attributed to the current phase label.
    void set_phase(std::string phase);
    const std::string& phase() const { return phase_; }

    /// Switches the phase for its lifetime and restores the previous one.
    class PhaseScope {
    public:
        PhaseScope(Communicator& comm, std::string phase);
        ~PhaseScope();
        PhaseScope(const PhaseScope&) = delete;
        PhaseScope& operator=(const PhaseScope&) = delete;

    private:
        Communicator& comm_;
        std::string previous_;
    };

private:
    friend class CommWorld;
    Communicator(CommWorld& world, int rank);

    struct Message {
        std::vector<Bytes> parts;
        std::size_t phase = 0;
    };
    void send_parts(int dest, Tag tag, std::vector<Bytes> parts);
    std::vector<Bytes> recv_parts(int src, Tag tag);
    void close_phase_timer();

    template <typename T>
    static Bytes pack(const T& v) {
        static_assert(std::is_trivially_copyable_v<T>);
        Bytes b(sizeof(T));
        std::memcpy(b.data(), &v, sizeof(T));
        return b;
    }
    template <typename T>
    static T unpack(const Bytes& b) {
        T v;
        if (b.size() != sizeof(T)) throw std::runtime_error("reduce: payload size mismatch");
        std::memcpy(&v, b.data(), sizeof(T));
        return v;
    }

    CommWorld* world_;
    int rank_;
    std::string phase_ = "default";
    std::size_t phase_index_ = 0;
    std::chrono::steady_clock::time_point phase_start_ = std::chrono::steady_clock::now();
};

/// In-process machine of p PEs, one thread each, communicating only through
/// per-PE mailboxes. Counts every byte that crosses PE boundaries.
class CommWorld {
public:
    explicit CommWorld(int p, WorldOptions options = {});
    CommWorld(const CommWorld&) = delete;
    CommWorld& operator=(const CommWorld&) = delete;

    int size() const { return p_; }
    const WorldOptions& options() const { return options_; }

    /// Runs `program(Communicator&)` on every PE and returns the results by
    /// rank. If a PE throws, the others are woken and WorkerError names the
    /// first failing rank.
    template <typename Program>
    auto run(Program&& program) -> std::vector<std::invoke_result_t<Program&, Communicator&>>;

    VolumeReport report() const;
    void reset_counters();

private:
    friend class Communicator;

    struct Mailbox {
        std::mutex mutex;
        std::condition_variable cv;
        std::map<std::pair<int, std::uint64_t>, std::deque<Communicator::Message>> queues;
    };

    std::size_t phase_id(const std::string& name);
    void deliver(int src, int dest, Tag tag, Communicator::Message msg);
    Communicator::Message take(int src, int dest, Tag tag);
    void add_time(int rank, std::size_t phase, double seconds);
    void fail(int rank, const std::string& what);
    void start_run();

    int p_;
    WorldOptions options_;
    std::vector<std::unique_ptr<Mailbox>> mailboxes_;

    mutable std::mutex stats_mutex_;
    std::vector<std::string> phase_names_;
    std::vector<std::vector<Counters>> counters_;  // [phase][pe]
    std::vector<std::vector<double>> seconds_;     // [phase][pe]

    std::mutex fail_mutex_;
    std::optional<std::pair<int, std::string>> failure_;
    std::atomic<bool> aborted_{false};
};

template <typename Program, typename R = std::invoke_result_t<Program&, Communicator&>>
std::vector<R> spawn(int p, Program&& program, WorldOptions options = {}) {
    CommWorld world(p, options);
    return world.run(program);
}

// ---------------------------------------------------------------------------

template <typename Program>
auto CommWorld::run(Program&& program) -> std::vector<std::invoke_result_t<Program&, Communicator&>> {
    using R = std::invoke_result_t<Program&, Communicator&>;
    static_assert(!std::is_void_v<R>, "PE programs must return a value");
    start_run();
    std::vector<std::optional<R>> results(static_cast<std::size_t>(p_));
    {
        std::vector<std::jthread> workers;
        workers.reserve(static_cast<std::size_t>(p_));
        for (int r = 0; r < p_; ++r) {
            workers.emplace_back([this, r, &program, &results] {
                Communicator comm(*this, r);
                try {
                    results[static_cast<std::size_t>(r)].emplace(program(comm));
                    comm.close_phase_timer();
                } catch (const WorldAborted&) {
                    // secondary failure, the original one is already recorded
                } catch (const std::exception& e) {
                    fail(r, e.what());
                } catch (...) {
                    fail(r, "unknown exception");
                }
            });
        }
    }
    if (failure_) throw WorkerError(failure_->first, failure_->second);
    std::vector<R> out;
    out.reserve(results.size());
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
}

template <typename T, typename Op>
T Communicator::reduce(int root, T value, Op op) {
    // binomial tree on ranks relative to root; combines in rank order
    const int p = size();
    const int rel = (rank_ - root + p) % p;
    T acc = value;
    for (int mask = 1; mask < p; mask <<= 1) {
        if (rel & mask) {
            send((rel - mask + root) % p, Tag::reduce, pack(acc));
            return acc;
        }
        const int child = rel + mask;
        if (child < p) acc = op(acc, unpack<T>(recv((child + root) % p, Tag::reduce)));
    }
    return acc;
}

template <typename T, typename Op>
T Communicator::allreduce(T value, Op op) {
    const T r = reduce(0, value, op);
    return unpack<T>(broadcast(0, rank_ == 0 ? pack(r) : Bytes{}));
}

}  // namespace dss
