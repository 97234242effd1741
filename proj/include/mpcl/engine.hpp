#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "mpcl/fiber.hpp"
#include "mpcl/field.hpp"
#include "mpcl/shamir.hpp"
#include "mpcl/transport.hpp"

namespace mpcl {

struct PartyConfig {
    int n = 3;
    int t = 1;
    uint64_t seed = 1;
    unsigned kappa = 48;
    std::string transport = "inproc";
    int port_base = 17700;
};

// In-band diagnostics (replaces out-of-band signalling).
enum DiagFlag : uint32_t {
    kDiagPrivateIndexNoBlock = 1u << 0,
    kDiagReleasedCellRead = 1u << 1,
    kDiagNullCandidateRead = 1u << 2,
};

struct RoundStats {
    uint64_t interactive_ops = 0;
    uint64_t rounds = 0;
    std::vector<uint64_t> bytes_per_party;
    double wall_ms = 0;
    // dealer-assisted preprocessing (shared random bits/values); kept
    // separate from the online counters above
    uint64_t dealer_draws = 0;
    uint64_t dealer_bytes = 0;
    uint32_t diag_flags = 0;
};

class Engine;

// Refcounted handle to one secret-shared field element. Handles are
// identical across parties; each party holds its own share in the engine's
// per-party stores.
class SV {
  public:
    SV() = default;
    SV(const SV& o);
    SV(SV&& o) noexcept : e_(o.e_), idx_(o.idx_) { o.e_ = nullptr; }
    SV& operator=(const SV& o);
    SV& operator=(SV&& o) noexcept;
    ~SV();

    bool valid() const { return e_ != nullptr; }
    uint32_t index() const { return idx_; }
    Engine* engine() const { return e_; }

  private:
    friend class Engine;
    SV(Engine* e, uint32_t idx) : e_(e), idx_(idx) {}
    Engine* e_ = nullptr;
    uint32_t idx_ = 0;
};

// A shared value whose plaintext is 0 or 1.
using SharedBit = SV;

// The simulated multi-party runtime: n party states advanced in lockstep,
// message transport, demand-driven round scheduler with batching, a
// randomness dealer, and counters.
//
// Elementary interactive ops (mul, inner product, open) are queued and
// executed in rounds. An op runs when its operands are materialized; a
// demand for an unmaterialized value triggers a flush (or suspends the
// calling batch task until the scheduler flushes). Sequential statements
// are separated by barrier(); inside batch scopes barriers are inert, so
// independent work coalesces into shared rounds.
class Engine {
  public:
    Engine(const FieldParams& fp, const PartyConfig& cfg);
    ~Engine();
    Engine(const Engine&) = delete;

    const FieldParams& params() const { return fp_; }
    const Field& field() const { return F_; }
    int parties() const { return cfg_.n; }
    int threshold() const { return cfg_.t; }
    const PartyConfig& config() const { return cfg_; }

    // --- value introduction ---
    SV share_input(Fe secret);           // dealer-side sharing at ingestion
    SV share_input_signed(long long v);
    SV constant(Fe v);                   // degree-0 sharing of a public value
    SV constant_signed(long long v);

    // --- local linear algebra (no interaction) ---
    SV lincomb(std::span<const Fe> coeffs, std::span<const SV* const> vals,
               Fe constant);
    SV add(const SV& a, const SV& b);
    SV sub(const SV& a, const SV& b);
    SV add_const(const SV& a, Fe c);
    SV scale(Fe c, const SV& a);
    SV negate(const SV& a);
    SV bit_not(const SV& b) { return lincomb_1(F_.neg(Fe{1}), b, Fe{1}); }

    // --- interactive ops (queued; 1 op each) ---
    SV mul(const SV& a, const SV& b);
    SV inner_product(std::span<const SV> xs, std::span<const SV> ys);
    SV inner_product_ptrs(std::span<const SV* const> xs,
                          std::span<const SV* const> ys);
    Fe open(const SV& a);
    long long open_signed(const SV& a);

    // --- dealer (preprocessing aid) ---
    SV dealer_bit();
    std::vector<SV> dealer_bits(size_t count);
    SV dealer_value(unsigned bits);  // uniform in [0, 2^bits)

    // --- scheduling ---
    void barrier();           // flush if outside batch scopes
    void batch_begin();
    void batch_end();
    bool in_batch() const { return batch_depth_ > 0; }
    void parallel_for(size_t count, const std::function<void(size_t)>& body);
    void demand(const SV& v);
    void demand_all();

    // --- accounting ---
    RoundStats& stats() { return stats_; }
    const RoundStats& stats() const { return stats_; }
    void set_diag(DiagFlag f) { stats_.diag_flags |= f; }

    // Test/diagnostic view: reconstruct a value without opening it in the
    // protocol sense (no messages, no counters).
    Fe peek(const SV& v);
    long long peek_signed(const SV& v);

  private:
    friend class SV;

    enum class SlotState : uint8_t { Free, Ready, Pending };
    struct Op {
        enum Kind : uint8_t { Mul, IP, Open } kind;
        uint32_t a = 0, b = 0;  // operands; IP: range in ip_args_
        uint32_t out = 0;       // result slot (Mul/IP) or open key (Open)
    };

    FieldParams fp_;
    Field F_;
    PartyConfig cfg_;
    std::unique_ptr<Transport> transport_;
    FiberScheduler sched_;

    std::vector<std::vector<Fe>> store_;  // [party][slot]
    std::vector<SlotState> state_;
    std::vector<uint32_t> rc_;
    std::vector<uint32_t> freelist_;

    std::vector<Op> pending_;
    std::vector<std::pair<uint32_t, uint32_t>> ip_args_;
    std::unordered_map<uint32_t, Fe> open_vals_;
    uint32_t next_open_key_ = 0;
    uint32_t batch_counter_ = 0;
    int batch_depth_ = 0;

    std::vector<FieldRng> party_rng_;
    std::unique_ptr<FieldRng> dealer_rng_;
    std::vector<Fe> lambda_all_;    // Lagrange at 0 over points 1..n
    std::vector<Fe> lambda_low_;    // over points 1..t+1
    std::vector<Fe> lambda_high_;   // over points n-t..n

    uint32_t new_slot(SlotState st);
    void retain(uint32_t idx) { ++rc_[idx]; }
    void release(uint32_t idx);
    SV wrap_new(uint32_t idx) { return SV(this, idx); }
    SV lincomb_1(Fe c0, const SV& v0, Fe cst);

    SV deal_secret(Fe secret);
    void require_ready(uint32_t idx);
    void flush();
    void execute_round(std::span<const Op> ops);
};

}  // namespace mpcl
