#include "npairs/codec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "npairs/prng.hpp"

namespace npairs {

// ---------------------------------------------------------------------------
// Sources
// ---------------------------------------------------------------------------

std::string SourceModel::check() const {
    if (probs.empty()) return "alphabet is empty";
    Rat sum(0);
    for (const Rat& p : probs) {
        if (p <= 0) return "probabilities must be positive";
        sum += p;
    }
    if (sum != 1) return "probabilities must sum to 1";
    if (period < 1) return "period must be at least 1";
    return {};
}

double SourceModel::entropy_per_symbol_bits() const {
    double h = 0;
    for (const Rat& p : probs) {
        double pd = static_cast<double>(p);
        h -= pd * std::log2(pd);
    }
    return h;
}

namespace {

// p == 1 / 2^k ? returns k.
std::optional<int> negative_dyadic_exponent(const Rat& p) {
    if (numerator(p) != 1) return std::nullopt;
    Int d = denominator(p);
    int k = 0;
    while (d > 1) {
        if (d % 2 != 0) return std::nullopt;
        d /= 2;
        ++k;
    }
    return k;
}

}  // namespace

std::optional<Rat> SourceModel::exact_entropy_per_symbol() const {
    Rat h(0);
    for (const Rat& p : probs) {
        auto k = negative_dyadic_exponent(p);
        if (!k) return std::nullopt;
        h += p * *k;
    }
    return h;
}

std::optional<Rat> SourceModel::exact_entropy_rate() const {
    auto h = exact_entropy_per_symbol();
    if (!h) return std::nullopt;
    return *h / period;
}

SourceModel SourceModel::uniform_power_of_two(int bits, int period) {
    if (bits < 1 || bits > 30) throw std::invalid_argument("source bits out of range");
    SourceModel m;
    m.period = period;
    std::size_t n = std::size_t{1} << bits;
    m.probs.assign(n, Rat(1, Int(1) << bits));
    return m;
}

// ---------------------------------------------------------------------------
// Codebooks
// ---------------------------------------------------------------------------

int Codebook::length_of(std::uint64_t symbol) const {
    if (fixed_length) return fixed_bits;
    return lengths[symbol];
}

void Codebook::append(std::uint64_t symbol, std::vector<std::uint8_t>& bits) const {
    if (fixed_length) {
        for (int b = fixed_bits - 1; b >= 0; --b)
            bits.push_back(static_cast<std::uint8_t>((symbol >> b) & 1));
        return;
    }
    const auto& code = codes[symbol];
    bits.insert(bits.end(), code.begin(), code.end());
}

std::optional<std::uint64_t> Codebook::decode_one(const std::vector<std::uint8_t>& bits,
                                                  std::size_t& pos) const {
    if (fixed_length) {
        if (pos + fixed_bits > bits.size()) return std::nullopt;
        std::uint64_t sym = 0;
        for (int b = 0; b < fixed_bits; ++b) sym = (sym << 1) | bits[pos + b];
        pos += fixed_bits;
        return sym;
    }
    // Walk codeword prefixes; the codebook is small in explicit mode, so a
    // linear prefix match per step is acceptable. Build a trie once for
    // larger alphabets.
    std::size_t remaining = bits.size() - pos;
    for (std::uint64_t sym = 0; sym < symbols; ++sym) {
        const auto& code = codes[sym];
        if (code.size() > remaining) continue;
        if (std::equal(code.begin(), code.end(), bits.begin() + pos)) {
            pos += code.size();
            return sym;
        }
    }
    return std::nullopt;
}

bool Codebook::kraft_ok() const {
    if (fixed_length) return true;  // 2^bits words of equal length
    Rat sum(0);
    for (int len : lengths) sum += Rat(1, Int(1) << len);
    return sum <= 1;
}

Rat Codebook::expected_length(const std::vector<Rat>& probs) const {
    Rat e(0);
    if (fixed_length) {
        for (const Rat& p : probs) e += p * fixed_bits;
        return e;
    }
    for (std::size_t i = 0; i < probs.size(); ++i) e += probs[i] * lengths[i];
    return e;
}

Codebook huffman_codebook(const std::vector<Rat>& probs) {
    if (probs.empty()) throw std::invalid_argument("empty distribution");
    Codebook book;
    book.symbols = probs.size();
    const std::size_t n = probs.size();
    if (n == 1) {
        book.lengths = {1};
        book.codes = {{0}};
        return book;
    }

    // Integer weights over the common denominator keep comparisons exact.
    Int common(1);
    for (const Rat& p : probs) common = lcm(common, denominator(p));
    std::vector<Int> weight(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i)
        weight[i] = numerator(probs[i]) * (common / denominator(probs[i]));

    struct Node {
        Int w;
        std::size_t id;
    };
    auto greater = [](const Node& a, const Node& b) {
        return a.w != b.w ? a.w > b.w : a.id > b.id;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(greater)> heap(greater);
    for (std::size_t i = 0; i < n; ++i) heap.push({weight[i], i});

    std::vector<std::pair<std::size_t, std::size_t>> children(2 * n - 1, {SIZE_MAX, SIZE_MAX});
    std::size_t next_id = n;
    while (heap.size() > 1) {
        Node a = heap.top();
        heap.pop();
        Node b = heap.top();
        heap.pop();
        weight[next_id] = a.w + b.w;
        children[next_id] = {a.id, b.id};
        heap.push({weight[next_id], next_id});
        ++next_id;
    }

    // Depths via a walk from the root.
    book.lengths.assign(n, 0);
    std::vector<std::pair<std::size_t, int>> stack{{next_id - 1, 0}};
    while (!stack.empty()) {
        auto [id, depth] = stack.back();
        stack.pop_back();
        if (children[id].first == SIZE_MAX) {
            book.lengths[id] = std::max(depth, 1);  // lone root degenerates to depth 0
            continue;
        }
        stack.push_back({children[id].first, depth + 1});
        stack.push_back({children[id].second, depth + 1});
    }

    // Canonical codeword assignment from the lengths: symbols sorted by
    // (length, index), consecutive binary values.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return book.lengths[a] != book.lengths[b] ? book.lengths[a] < book.lengths[b] : a < b;
    });
    book.codes.assign(n, {});
    std::uint64_t code = 0;
    int prev_len = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t sym = order[k];
        int len = book.lengths[sym];
        if (k > 0) code = (code + 1) << (len - prev_len);
        prev_len = len;
        auto& bits = book.codes[sym];
        bits.resize(len);
        for (int b = 0; b < len; ++b)
            bits[b] = static_cast<std::uint8_t>((code >> (len - 1 - b)) & 1);
    }
    return book;
}

// ---------------------------------------------------------------------------
// Schedule
// ---------------------------------------------------------------------------

namespace {

Int rat_ceil(const Rat& r) {
    Int num = numerator(r), den = denominator(r);
    Int q = num / den;
    if (q * den < num) ++q;
    return q;
}

// Smallest multiple of `step` that is >= bound.
int round_up_multiple(const Rat& bound, int step) {
    Int k = rat_ceil(bound / step);
    if (k < 1) k = 1;
    Int m = k * step;
    if (m > 1'000'000) throw std::runtime_error("block length overflows the sane range");
    return static_cast<int>(m);
}

constexpr std::uint64_t kMaxExplicitAlphabet = std::uint64_t{1} << 20;
constexpr int kFramingBitsPerSubBlock = 64;  // pair id, path id, length fields

bool is_uniform_power_of_two(const SourceModel& m, int& bits_out) {
    std::size_t n = m.probs.size();
    if ((n & (n - 1)) != 0 || n < 2) return false;
    for (const Rat& p : m.probs)
        if (p != Rat(1, Int(n))) return false;
    bits_out = 0;
    while ((std::size_t{1} << bits_out) < n) ++bits_out;
    return true;
}

}  // namespace

std::variant<RoutingSchedule, std::string> build_schedule(
    const NetworkStructure& s, const MultiFlow& f, const std::vector<SourceModel>& sources,
    const Rat& epsilon, std::optional<int> forced_block_length,
    const std::vector<Capacity>* caps) {
    if (f.pairs() != s.pair_count()) return std::string("flow does not match the pair count");
    if (sources.size() != static_cast<std::size_t>(s.pair_count()))
        return std::string("one source model per pair is required");
    if (epsilon <= 0) return std::string("epsilon must be positive");
    auto cap_of = [&](int a) -> const Capacity& { return caps ? (*caps)[a] : s.capacity(a); };

    RoutingSchedule sched;
    sched.epsilon = epsilon;
    sched.assigned_rate.assign(s.arc_count(), Rat(0));
    sched.overhead_bound.assign(s.arc_count(), Rat(0));

    int period_lcm = 1;
    for (int i = 1; i <= s.pair_count(); ++i) {
        const SourceModel& src = sources[i - 1];
        if (auto err = src.check(); !err.empty())
            return "source model of pair " + std::to_string(i) + ": " + err;
        auto rate = src.exact_entropy_rate();
        if (!rate)
            return "source of pair " + std::to_string(i) +
                   " has no exact entropy rate; use power-of-two probabilities";
        if (*rate <= 0)
            return "source of pair " + std::to_string(i) + " must have positive entropy rate";

        PairSchedule ps;
        ps.pair = i;
        ps.source = src;
        // Cycle components carry nothing into sinks; drop them and keep
        // the path split.
        PathDecomposition d = decompose_flow(s, f.per_pair[i - 1], i);
        Rat demand(0);
        for (auto& pf : d.paths) {
            if (pf.rate == 0) continue;
            demand += pf.rate;
            ps.paths.push_back({std::move(pf.path), std::move(pf.rate)});
        }
        ps.demand = demand;
        if (demand != *rate)
            return "demand of pair " + std::to_string(i) + " (" + rat_to_string(demand) +
                   ") does not equal the source entropy rate (" + rat_to_string(*rate) + ")";
        period_lcm = std::lcm(period_lcm, src.period);
        sched.pairs.push_back(std::move(ps));
    }

    // Per-arc overhead and the block length it dictates: each sub-block
    // crossing an arc costs at most (1 + rate/demand) extra bits per epoch
    // beyond its share of the flow rate.
    std::vector<Rat> per_epoch_extra(s.arc_count(), Rat(0));
    for (const auto& ps : sched.pairs)
        for (const auto& pa : ps.paths)
            for (int a : pa.path.arcs) {
                sched.assigned_rate[a] += pa.rate;
                per_epoch_extra[a] += Rat(1) + pa.rate / ps.demand;
            }

    int m;
    if (forced_block_length) {
        m = *forced_block_length;
        if (m < 1 || m % period_lcm != 0)
            return "forced block length must be a positive multiple of " +
                   std::to_string(period_lcm);
    } else {
        Rat need(0);
        for (int a = 0; a < s.arc_count(); ++a) {
            if (per_epoch_extra[a] == 0) continue;
            // epsilon budget
            Rat by_eps = per_epoch_extra[a] / epsilon;
            if (by_eps > need) need = by_eps;
            if (cap_of(a).is_infinite()) continue;
            Rat slack = cap_of(a).value - sched.assigned_rate[a];
            if (slack <= 0)
                return "no finite block length fits: arc '" + s.arc(a).name +
                       "' has no positive capacity slack (needs > " +
                       rat_to_string(sched.assigned_rate[a]) + ")";
            Rat by_slack = per_epoch_extra[a] / slack;
            if (by_slack > need) need = by_slack;
        }
        m = round_up_multiple(need, period_lcm);
    }
    sched.block_length = m;
    for (int a = 0; a < s.arc_count(); ++a)
        sched.overhead_bound[a] = per_epoch_extra[a] / m;

    // Block codebooks over the product alphabet.
    for (auto& ps : sched.pairs) {
        ps.symbols_per_block = m / ps.source.period;
        int bits = 0;
        if (is_uniform_power_of_two(ps.source, bits)) {
            Codebook book;
            book.fixed_length = true;
            book.fixed_bits = bits * ps.symbols_per_block;
            if (book.fixed_bits > 62)
                return "block alphabet too large for pair " + std::to_string(ps.pair);
            book.symbols = std::uint64_t{1} << book.fixed_bits;
            ps.codebook = std::move(book);
            continue;
        }
        std::uint64_t block_symbols = 1;
        for (int k = 0; k < ps.symbols_per_block; ++k) {
            block_symbols *= ps.source.alphabet_size();
            if (block_symbols > kMaxExplicitAlphabet)
                return "block alphabet too large for pair " + std::to_string(ps.pair) +
                       "; shorten the block or use a uniform source";
        }
        std::vector<Rat> block_probs(block_symbols, Rat(1));
        for (std::uint64_t sym = 0; sym < block_symbols; ++sym) {
            std::uint64_t v = sym;
            for (int k = 0; k < ps.symbols_per_block; ++k) {
                block_probs[sym] *= ps.source.probs[v % ps.source.alphabet_size()];
                v /= ps.source.alphabet_size();
            }
        }
        ps.codebook = huffman_codebook(block_probs);
    }
    return sched;
}

std::vector<std::string> verify_schedule(const NetworkStructure& s, const RoutingSchedule& r) {
    std::vector<std::string> bad;
    for (const auto& ps : r.pairs) {
        Rat total(0);
        for (const auto& pa : ps.paths) {
            total += pa.rate;
            if (pa.rate <= 0) bad.push_back("nonpositive path rate in pair " +
                                            std::to_string(ps.pair));
            if (!path_is_valid(s, pa.path) ||
                pa.path.first_vertex != s.pair(ps.pair).source ||
                path_last_vertex(s, pa.path) != s.pair(ps.pair).sink)
                bad.push_back("schedule path of pair " + std::to_string(ps.pair) +
                              " is not a source-to-sink path");
        }
        if (total != ps.demand)
            bad.push_back("path rates of pair " + std::to_string(ps.pair) +
                          " do not sum to the demand");
        if (!ps.codebook.kraft_ok())
            bad.push_back("codebook of pair " + std::to_string(ps.pair) + " violates Kraft");
        if (r.block_length % ps.source.period != 0)
            bad.push_back("block length not a multiple of the period of pair " +
                          std::to_string(ps.pair));
        // Codeword-length bound: expected length within one bit of the
        // block entropy, checked exactly on the dyadic block distribution.
        if (!ps.codebook.fixed_length) {
            std::vector<Rat> block_probs(ps.codebook.symbols, Rat(1));
            for (std::uint64_t sym = 0; sym < ps.codebook.symbols; ++sym) {
                std::uint64_t v = sym;
                for (int k = 0; k < ps.symbols_per_block; ++k) {
                    block_probs[sym] *= ps.source.probs[v % ps.source.alphabet_size()];
                    v /= ps.source.alphabet_size();
                }
            }
            auto h = ps.source.exact_entropy_per_symbol();
            if (h) {
                Rat bound = *h * ps.symbols_per_block + 1;
                if (ps.codebook.expected_length(block_probs) > bound)
                    bad.push_back("expected codeword length of pair " + std::to_string(ps.pair) +
                                  " exceeds entropy + 1");
            }
        }
    }
    return bad;
}

// ---------------------------------------------------------------------------
// Simulation
// ---------------------------------------------------------------------------

namespace {

// Exact inverse-CDF draw quantized at 2^-64.
std::uint32_t draw_symbol(const SourceModel& src, SplitMix64& rng) {
    static const Int kTwo64 = Int(1) << 64;
    Rat u(Int(rng.next()), kTwo64);
    Rat cum(0);
    for (std::size_t k = 0; k < src.probs.size(); ++k) {
        cum += src.probs[k];
        if (u < cum) return static_cast<std::uint32_t>(k);
    }
    return static_cast<std::uint32_t>(src.probs.size() - 1);
}

struct RunningStat {
    double sum = 0, sum_sq = 0;
    std::uint64_t n = 0;
    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    double stderr_of_mean() const {
        if (n < 2) return 0;
        double mean = sum / n;
        double var = (sum_sq - n * mean * mean) / (n - 1);
        if (var < 0) var = 0;
        return std::sqrt(var / n);
    }
};

}  // namespace

SimReport simulate(const NetworkStructure& s, const RoutingSchedule& schedule,
                   std::uint64_t blocks, std::uint64_t seed) {
    if (blocks == 0) throw std::invalid_argument("block count must be positive");
    if (auto bad = verify_schedule(s, schedule); !bad.empty())
        throw std::invalid_argument("schedule failed verification: " + bad.front());

    SimReport report;
    report.blocks = blocks;
    report.block_length = schedule.block_length;
    report.seed = seed;

    const int m = schedule.block_length;
    std::vector<std::uint64_t> payload(s.arc_count(), 0), framing(s.arc_count(), 0);
    std::vector<RunningStat> arc_stats(s.arc_count());
    std::vector<std::uint64_t> epoch_bits(s.arc_count(), 0);

    std::vector<SplitMix64> streams;
    for (const auto& ps : schedule.pairs) streams.push_back(SplitMix64(seed).fork(ps.pair));

    std::vector<PairReport> pair_reports(schedule.pairs.size());
    std::vector<std::uint32_t> symbols;
    std::vector<std::uint8_t> code_bits, wire_bits;

    for (std::uint64_t epoch = 0; epoch < blocks; ++epoch) {
        std::fill(epoch_bits.begin(), epoch_bits.end(), 0);
        for (std::size_t pi = 0; pi < schedule.pairs.size(); ++pi) {
            const PairSchedule& ps = schedule.pairs[pi];
            PairReport& pr = pair_reports[pi];
            pr.pair = ps.pair;

            // Source block and its codeword.
            symbols.clear();
            std::uint64_t block_value = 0;
            std::uint64_t place = 1;
            for (int k = 0; k < ps.symbols_per_block; ++k) {
                std::uint32_t sym = draw_symbol(ps.source, streams[pi]);
                symbols.push_back(sym);
                block_value += place * sym;
                place *= ps.source.alphabet_size();
            }
            code_bits.clear();
            ps.codebook.append(block_value, code_bits);
            const std::size_t L = code_bits.size();
            pr.code_bits += L;

            // Split into per-path sub-blocks of length ceil(rate/demand * L),
            // padding the tail with zeros.
            std::size_t consumed = 0;
            std::size_t delivered_cursor = 0;
            wire_bits.clear();
            std::vector<std::size_t> sub_lengths;
            for (const auto& pa : ps.paths) {
                Rat exact_len = pa.rate / ps.demand * Rat(Int(L));
                Int len_i = rat_ceil(exact_len);
                std::size_t len = static_cast<std::size_t>(len_i);
                sub_lengths.push_back(len);
                for (std::size_t b = 0; b < len; ++b) {
                    std::uint8_t bit = consumed < L ? code_bits[consumed] : 0;
                    ++consumed;
                    wire_bits.push_back(bit);
                }
            }

            // Route each sub-block along its path; bits land on every arc.
            for (std::size_t k = 0; k < ps.paths.size(); ++k) {
                for (int a : ps.paths[k].path.arcs) {
                    payload[a] += sub_lengths[k];
                    framing[a] += kFramingBitsPerSubBlock;
                    epoch_bits[a] += sub_lengths[k];
                }
            }

            // Sink side: concatenated sub-blocks start with the codeword.
            std::size_t pos = 0;
            auto decoded = ps.codebook.decode_one(wire_bits, pos);
            bool ok = decoded.has_value();
            if (ok) {
                std::uint64_t v = *decoded;
                for (int k = 0; k < ps.symbols_per_block && ok; ++k) {
                    if (static_cast<std::uint32_t>(v % ps.source.alphabet_size()) != symbols[k])
                        ok = false;
                    v /= ps.source.alphabet_size();
                }
            }
            (void)delivered_cursor;
            if (!ok)
                throw std::logic_error("block reconstruction failed for pair " +
                                       std::to_string(ps.pair));
            ++pr.blocks_ok;
        }
        for (int a = 0; a < s.arc_count(); ++a)
            if (schedule.assigned_rate[a] != 0 || epoch_bits[a] != 0)
                arc_stats[a].add(static_cast<double>(epoch_bits[a]) / m);
    }

    for (std::size_t pi = 0; pi < pair_reports.size(); ++pi) {
        pair_reports[pi].reconstruction_ok = pair_reports[pi].blocks_ok == blocks;
        pair_reports[pi].delay = m - 1;
    }
    report.pairs = std::move(pair_reports);

    for (int a = 0; a < s.arc_count(); ++a) {
        if (payload[a] == 0 && schedule.assigned_rate[a] == 0) continue;
        ArcReport ar;
        ar.arc = a;
        ar.payload_bits = payload[a];
        ar.framing_bits = framing[a];
        ar.empirical_rate = Rat(Int(payload[a]), Int(blocks) * m);
        ar.assigned_rate = schedule.assigned_rate[a];
        ar.overhead_bound = schedule.overhead_bound[a];
        ar.stderr_rate = arc_stats[a].stderr_of_mean();
        report.arcs.push_back(std::move(ar));
    }
    return report;
}

std::string SimReport::to_text(const NetworkStructure& s) const {
    std::ostringstream os;
    os << "sim.m " << block_length << "\n";
    os << "sim.blocks " << blocks << "\n";
    os << "sim.seed " << seed << "\n";
    for (const auto& pr : pairs) {
        std::string p = "pair." + std::to_string(pr.pair);
        os << p << ".blocks_ok " << pr.blocks_ok << "\n";
        os << p << ".reconstruction " << (pr.reconstruction_ok ? "exact" : "FAILED") << "\n";
        os << p << ".delay " << pr.delay << "\n";
        os << p << ".code_bits " << pr.code_bits << "\n";
    }
    for (const auto& ar : arcs) {
        std::string a = "arc." + s.arc(ar.arc).name;
        os << a << ".payload_bits " << ar.payload_bits << "\n";
        os << a << ".rate " << rat_to_string(ar.empirical_rate) << "\n";
        os << a << ".assigned " << rat_to_string(ar.assigned_rate) << "\n";
        os << a << ".overhead_bound " << rat_to_string(ar.overhead_bound) << "\n";
        os << a << ".capacity " << ext_to_string(s.capacity(ar.arc).as_ext()) << "\n";
        os << a << ".framing_bits " << ar.framing_bits << "\n";
    }
    for (const auto& ar : arcs) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.9g", ar.stderr_rate);
        os << "stat.arc." << s.arc(ar.arc).name << ".stderr " << buf << "\n";
    }
    return os.str();
}

}  // namespace npairs
