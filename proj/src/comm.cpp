#include "dss/comm.hpp"

#include <algorithm>

namespace dss {

// ---- VolumeReport ---------------------------------------------------------

std::uint64_t PhaseVolume::total_sent() const {
    std::uint64_t s = 0;
    for (const auto& c : per_pe) s += c.bytes_sent;
    return s;
}

std::uint64_t PhaseVolume::total_received() const {
    std::uint64_t s = 0;
    for (const auto& c : per_pe) s += c.bytes_received;
    return s;
}

std::uint64_t PhaseVolume::bottleneck() const {
    std::uint64_t b = 0;
    for (const auto& c : per_pe) b = std::max(b, c.bytes_sent + c.bytes_received);
    return b;
}

const PhaseVolume* VolumeReport::find(std::string_view phase) const {
    for (const auto& p : phases)
        if (p.phase == phase) return &p;
    return nullptr;
}

std::uint64_t VolumeReport::sent(std::string_view phase) const {
    const PhaseVolume* p = find(phase);
    return p ? p->total_sent() : 0;
}

std::uint64_t VolumeReport::total_sent() const {
    std::uint64_t s = 0;
    for (const auto& p : phases) s += p.total_sent();
    return s;
}

std::uint64_t VolumeReport::total_received() const {
    std::uint64_t s = 0;
    for (const auto& p : phases) s += p.total_received();
    return s;
}

std::vector<Counters> VolumeReport::per_pe_totals() const {
    std::vector<Counters> totals;
    for (const auto& p : phases) {
        if (totals.size() < p.per_pe.size()) totals.resize(p.per_pe.size());
        for (std::size_t i = 0; i < p.per_pe.size(); ++i) totals[i] += p.per_pe[i];
    }
    return totals;
}

std::uint64_t VolumeReport::bottleneck() const {
    std::uint64_t b = 0;
    for (const auto& c : per_pe_totals()) b = std::max(b, c.bytes_sent + c.bytes_received);
    return b;
}

// ---- CommWorld --------------------------------------------------------------

CommWorld::CommWorld(int p, WorldOptions options) : p_(p), options_(options) {
    if (p < 1) throw std::invalid_argument("CommWorld: need at least one PE");
    for (int i = 0; i < p; ++i) mailboxes_.push_back(std::make_unique<Mailbox>());
}

void CommWorld::start_run() {
    failure_.reset();
    aborted_ = false;
    for (auto& mb : mailboxes_) {
        std::lock_guard lock(mb->mutex);
        mb->queues.clear();
    }
}

std::size_t CommWorld::phase_id(const std::string& name) {
    std::lock_guard lock(stats_mutex_);
    for (std::size_t i = 0; i < phase_names_.size(); ++i)
        if (phase_names_[i] == name) return i;
    phase_names_.push_back(name);
    counters_.emplace_back(static_cast<std::size_t>(p_));
    seconds_.emplace_back(static_cast<std::size_t>(p_), 0.0);
    return phase_names_.size() - 1;
}

void CommWorld::deliver(int src, int dest, Tag tag, Communicator::Message msg) {
    if (dest < 0 || dest >= p_) throw std::out_of_range("send: destination rank out of range");
    std::uint64_t bytes = options_.envelope_bytes;
    for (const auto& part : msg.parts) bytes += part.size();
    {
        std::lock_guard lock(stats_mutex_);
        auto& row = counters_[msg.phase];
        row[static_cast<std::size_t>(src)].bytes_sent += bytes;
        row[static_cast<std::size_t>(src)].messages_sent += 1;
        row[static_cast<std::size_t>(dest)].bytes_received += bytes;
    }
    Mailbox& mb = *mailboxes_[static_cast<std::size_t>(dest)];
    {
        std::lock_guard lock(mb.mutex);
        mb.queues[{src, static_cast<std::uint64_t>(tag)}].push_back(std::move(msg));
    }
    mb.cv.notify_all();
}

Communicator::Message CommWorld::take(int src, int dest, Tag tag) {
    if (src < 0 || src >= p_) throw std::out_of_range("recv: source rank out of range");
    Mailbox& mb = *mailboxes_[static_cast<std::size_t>(dest)];
    const auto key = std::make_pair(src, static_cast<std::uint64_t>(tag));
    std::unique_lock lock(mb.mutex);
    const auto deadline = std::chrono::steady_clock::now() + options_.recv_timeout;
    while (true) {
        if (aborted_) throw WorldAborted();
        auto it = mb.queues.find(key);
        if (it != mb.queues.end() && !it->second.empty()) {
            Communicator::Message msg = std::move(it->second.front());
            it->second.pop_front();
            return msg;
        }
        if (mb.cv.wait_until(lock, deadline) == std::cv_status::timeout) {
            it = mb.queues.find(key);
            if (it != mb.queues.end() && !it->second.empty()) continue;
            if (aborted_) throw WorldAborted();
            throw DeadlockError("PE " + std::to_string(dest) + " timed out waiting for PE " +
                                std::to_string(src) + " (tag " +
                                std::to_string(static_cast<std::uint64_t>(tag)) + ")");
        }
    }
}

void CommWorld::add_time(int rank, std::size_t phase, double seconds) {
    std::lock_guard lock(stats_mutex_);
    seconds_[phase][static_cast<std::size_t>(rank)] += seconds;
}

void CommWorld::fail(int rank, const std::string& what) {
    {
        std::lock_guard lock(fail_mutex_);
        if (!failure_) failure_.emplace(rank, what);
    }
    for (auto& mb : mailboxes_) {
        std::lock_guard lock(mb->mutex);
        aborted_ = true;
        mb->cv.notify_all();
    }
}

VolumeReport CommWorld::report() const {
    std::lock_guard lock(stats_mutex_);
    VolumeReport r;
    for (std::size_t i = 0; i < phase_names_.size(); ++i) {
        PhaseVolume pv;
        pv.phase = phase_names_[i];
        pv.per_pe = counters_[i];
        pv.seconds = *std::max_element(seconds_[i].begin(), seconds_[i].end());
        r.phases.push_back(std::move(pv));
    }
    return r;
}

void CommWorld::reset_counters() {
    std::lock_guard lock(stats_mutex_);
    for (auto& row : counters_) std::fill(row.begin(), row.end(), Counters{});
    for (auto& row : seconds_) std::fill(row.begin(), row.end(), 0.0);
}

// ---- Communicator -----------------------------------------------------------

Communicator::Communicator(CommWorld& world, int rank)
    : world_(&world), rank_(rank), phase_index_(world.phase_id("default")) {}

int Communicator::size() const { return world_->size(); }

void Communicator::send_parts(int dest, Tag tag, std::vector<Bytes> parts) {
    world_->deliver(rank_, dest, tag, Message{std::move(parts), phase_index_});
}

std::vector<Bytes> Communicator::recv_parts(int src, Tag tag) {
    return world_->take(src, rank_, tag).parts;
}

void Communicator::send(int dest, Tag tag, Bytes payload) {
    std::vector<Bytes> parts;
    parts.push_back(std::move(payload));
    send_parts(dest, tag, std::move(parts));
}

Bytes Communicator::recv(int src, Tag tag) {
    auto parts = recv_parts(src, tag);
    if (parts.size() != 1) throw std::runtime_error("recv: expected a single-part message");
    return std::move(parts.front());
}

Bytes Communicator::sendrecv(int partner, Tag tag, Bytes payload) {
    send(partner, tag, std::move(payload));
    return recv(partner, tag);
}

void Communicator::barrier() {
    const int p = size();
    for (int dist = 1; dist < p; dist <<= 1) {
        send((rank_ + dist) % p, Tag::barrier, {});
        recv((rank_ - dist + p) % p, Tag::barrier);
    }
}

Bytes Communicator::broadcast(int root, Bytes data) {
    const int p = size();
    const int rel = (rank_ - root + p) % p;
    int mask = 1;
    while (mask < p) {
        if (rel & mask) {
            data = recv((rel - mask + root) % p, Tag::broadcast);
            break;
        }
        mask <<= 1;
    }
    mask >>= 1;
    while (mask > 0) {
        if (rel + mask < p) send((rel + mask + root) % p, Tag::broadcast, data);
        mask >>= 1;
    }
    return data;
}

std::vector<Bytes> Communicator::gather(int root, Bytes data) {
    const int p = size();
    const int rel = (rank_ - root + p) % p;
    // blocks of relative ranks rel, rel+1, ... of this subtree
    std::vector<Bytes> blocks;
    blocks.push_back(std::move(data));
    for (int mask = 1; mask < p; mask <<= 1) {
        if (rel & mask) {
            send_parts((rel - mask + root) % p, Tag::gather, std::move(blocks));
            return {};
        }
        const int child = rel + mask;
        if (child < p) {
            auto sub = recv_parts((child + root) % p, Tag::gather);
            for (auto& b : sub) blocks.push_back(std::move(b));
        }
    }
    std::vector<Bytes> out(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) out[static_cast<std::size_t>((i + root) % p)] = std::move(blocks[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<Bytes> Communicator::allgather(Bytes data) {
    const int p = size();
    std::vector<Bytes> acc;  // blocks of ranks rank, rank+1, ... (mod p)
    acc.push_back(std::move(data));
    for (int dist = 1; dist < p; dist <<= 1) {
        const int count = std::min(dist, p - dist);
        std::vector<Bytes> out(acc.begin(), acc.begin() + count);
        send_parts((rank_ - dist + p) % p, Tag::allgather, std::move(out));
        auto in = recv_parts((rank_ + dist) % p, Tag::allgather);
        for (auto& b : in) acc.push_back(std::move(b));
    }
    std::vector<Bytes> result(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) result[static_cast<std::size_t>((rank_ + i) % p)] = std::move(acc[static_cast<std::size_t>(i)]);
    return result;
}

std::vector<Bytes> Communicator::alltoallv(std::vector<Bytes> sends) {
    const int p = size();
    if (sends.size() != static_cast<std::size_t>(p))
        throw std::invalid_argument("alltoallv: need exactly one buffer per PE");
    std::vector<Bytes> result(static_cast<std::size_t>(p));
    for (int k = 1; k < p; ++k) {
        const int dest = (rank_ + k) % p;
        send(dest, Tag::alltoall, std::move(sends[static_cast<std::size_t>(dest)]));
    }
    result[static_cast<std::size_t>(rank_)] = std::move(sends[static_cast<std::size_t>(rank_)]);
    for (int k = 1; k < p; ++k) {
        const int src = (rank_ - k + p) % p;
        result[static_cast<std::size_t>(src)] = recv(src, Tag::alltoall);
    }
    return result;
}

std::uint64_t Communicator::prefix_sum(std::uint64_t value) {
    const int p = size();
    std::uint64_t inclusive = value;
    for (int dist = 1; dist < p; dist <<= 1) {
        if (rank_ + dist < p) send(rank_ + dist, Tag::scan, pack(inclusive));
        if (rank_ - dist >= 0) inclusive += unpack<std::uint64_t>(recv(rank_ - dist, Tag::scan));
    }
    return inclusive - value;
}

void Communicator::close_phase_timer() {
    const auto now = std::chrono::steady_clock::now();
    const std::size_t id = world_->phase_id(phase_);
    world_->add_time(rank_, id, std::chrono::duration<double>(now - phase_start_).count());
    phase_start_ = now;
}

void Communicator::set_phase(std::string phase) {
    close_phase_timer();
    phase_ = std::move(phase);
    phase_index_ = world_->phase_id(phase_);
}

Communicator::PhaseScope::PhaseScope(Communicator& comm, std::string phase)
    : comm_(comm), previous_(comm.phase()) {
    comm_.set_phase(std::move(phase));
}

Communicator::PhaseScope::~PhaseScope() { comm_.set_phase(previous_); }

}  // namespace dss
