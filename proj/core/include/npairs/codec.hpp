#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "npairs/flows.hpp"
#include "npairs/structure.hpp"

namespace npairs {

// Memoryless source: one symbol drawn from `probs` every `period` time
// steps. The entropy rate per step is the per-symbol entropy divided by
// the period.
struct SourceModel {
    std::vector<Rat> probs;  // positive, sum to one
    int period = 1;

    int alphabet_size() const { return static_cast<int>(probs.size()); }
    // Validation error, or empty when well-formed.
    std::string check() const;
    double entropy_per_symbol_bits() const;
    // Exact per-symbol entropy; available iff every probability is a
    // (negative) power of two.
    std::optional<Rat> exact_entropy_per_symbol() const;
    std::optional<Rat> exact_entropy_rate() const;  // per time step

    // Uniform source over 2^bits symbols, one symbol every `period` steps;
    // entropy rate is exactly bits/period.
    static SourceModel uniform_power_of_two(int bits, int period);
};

// Prefix-free codebook over an integer alphabet. Uniform power-of-two
// alphabets use an implicit fixed-length code (codeword = binary index) so
// large block alphabets stay cheap.
struct Codebook {
    bool fixed_length = false;
    int fixed_bits = 0;
    std::uint64_t symbols = 0;
    std::vector<int> lengths;                    // explicit mode
    std::vector<std::vector<std::uint8_t>> codes;  // explicit mode, bits 0/1

    int length_of(std::uint64_t symbol) const;
    void append(std::uint64_t symbol, std::vector<std::uint8_t>& bits) const;
    // Reads one codeword starting at `pos`; returns symbol and advances
    // `pos`. nullopt when the bits do not complete a codeword.
    std::optional<std::uint64_t> decode_one(const std::vector<std::uint8_t>& bits,
                                            std::size_t& pos) const;
    bool kraft_ok() const;  // Kraft sum <= 1
    Rat expected_length(const std::vector<Rat>& probs) const;
};

// Optimal prefix-free code for the distribution; deterministic tie-breaks
// (weight, then creation order). A single-symbol alphabet gets a one-bit
// code. Weights may be any nonnegative rationals summing to a positive
// value.
Codebook huffman_codebook(const std::vector<Rat>& probs);

struct PathAssignment {
    Path path;
    Rat rate;
};

struct PairSchedule {
    int pair = 0;
    Rat demand;  // equals the sum of path rates
    SourceModel source;
    int symbols_per_block = 0;  // block_length / source.period
    std::vector<PathAssignment> paths;
    Codebook codebook;  // over the product block alphabet
};

struct RoutingSchedule {
    int block_length = 0;  // m
    Rat epsilon;
    std::vector<PairSchedule> pairs;
    std::vector<Rat> assigned_rate;   // per arc: path rates crossing it
    std::vector<Rat> overhead_bound;  // per arc: analytic expected overhead per step
};

// Builds the block-routing schedule from a feasible flow: drops cycle
// components, splits each commodity over its path flows, and picks the
// smallest block length whose per-arc coding overhead fits both the
// capacity slack and the `epsilon` budget. `forced_block_length` skips the
// slack-driven selection (the overhead bound is still reported).
std::variant<RoutingSchedule, std::string> build_schedule(
    const NetworkStructure& s, const MultiFlow& f, const std::vector<SourceModel>& sources,
    const Rat& epsilon, std::optional<int> forced_block_length = std::nullopt,
    const std::vector<Capacity>* caps = nullptr);

// Structural checks on a schedule: rates sum to demands, paths are valid
// source-to-sink paths, codebooks are prefix-free with Kraft sum <= 1, and
// the codeword-length bound holds. Empty result means all hold.
std::vector<std::string> verify_schedule(const NetworkStructure& s, const RoutingSchedule& r);

struct ArcReport {
    int arc = -1;
    std::uint64_t payload_bits = 0;
    std::uint64_t framing_bits = 0;
    Rat empirical_rate;  // payload bits per time step, exact
    Rat assigned_rate;
    Rat overhead_bound;
    double stderr_rate = 0.0;  // standard error of the per-epoch rate
};

struct PairReport {
    int pair = 0;
    std::uint64_t blocks_ok = 0;
    bool reconstruction_ok = false;
    int delay = 0;  // steps from first symbol of a block to its delivery
    std::uint64_t code_bits = 0;
};

struct SimReport {
    std::uint64_t blocks = 0;
    int block_length = 0;
    std::uint64_t seed = 0;
    std::vector<ArcReport> arcs;   // only arcs carrying traffic
    std::vector<PairReport> pairs;

    // Flat key-value lines; keys under "stat." carry floating-point
    // statistics, everything else is exact and golden-file stable.
    std::string to_text(const NetworkStructure& s) const;
};

// Deterministic end-to-end run: draws per-pair source blocks from seeded
// streams, Huffman-encodes, splits into per-path sub-blocks, routes, and
// decodes at the sinks. Reconstruction must be exact for every block;
// a mismatch throws (it would be a bug, not a statistic).
SimReport simulate(const NetworkStructure& s, const RoutingSchedule& schedule,
                   std::uint64_t blocks, std::uint64_t seed);

}  // namespace npairs
