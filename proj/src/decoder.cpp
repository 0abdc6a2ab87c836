#include "colexcode/decoder.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <thread>

#include "colexcode/errors.hpp"
#include "colexcode/rng.hpp"

namespace colexcode {

using gf2::BitMatrix;
using gf2::BitVector;
using gf2::Echelon;

namespace {

// Visits every site subset of weight <= max_weight in order of increasing
// weight (lexicographic within a weight).
void for_each_pattern(int n, int max_weight,
                      const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> sites;
    if (!visit(sites)) return;
    for (int w = 1; w <= max_weight; ++w) {
        sites.assign(w, 0);
        for (int i = 0; i < w; ++i) sites[i] = i;
        for (;;) {
            if (!visit(sites)) return;
            int i = w - 1;
            while (i >= 0 && sites[i] == n - w + i) --i;
            if (i < 0) break;
            sites[i]++;
            for (int j = i + 1; j < w; ++j) sites[j] = sites[j - 1] + 1;
        }
    }
}

BitVector syndrome_key(const BitMatrix& checks, const BitVector& error) {
    BitVector key(checks.rows());
    for (std::size_t r = 0; r < checks.rows(); ++r)
        if (checks.row(r).dot(error)) key.set(r);
    return key;
}

std::uint64_t pattern_count(int n, int t) {
    std::uint64_t total = 0, binom = 1;
    for (int w = 0; w <= t; ++w) {
        total += binom;
        binom = binom * static_cast<std::uint64_t>(n - w) / static_cast<std::uint64_t>(w + 1);
    }
    return total;
}

void fill_table(const BitMatrix& checks, const Echelon& stabilizer_span, int n, int t,
                std::map<BitVector, BitVector>& table, const char* kind) {
    for_each_pattern(n, t, [&](const std::vector<int>& sites) {
        BitVector error(n);
        for (int s : sites) error.set(s);
        BitVector key = syndrome_key(checks, error);
        auto it = table.find(key);
        if (it == table.end()) {
            table.emplace(std::move(key), std::move(error));
        } else if (!stabilizer_span.contains(it->second ^ error)) {
            throw DistanceRefutedError(
                std::string(kind) + " errors of weight " + std::to_string(it->second.weight()) +
                " and " + std::to_string(error.weight()) +
                " share a syndrome but differ by a logical; the assumed distance is overstated");
        }
        return true;
    });
}

}  // namespace

LookupDecoder build_lookup(const CssCode& code, int d, std::size_t table_cap) {
    if (code.k != 1) throw std::invalid_argument("build_lookup: requires k = 1");
    if (d < 1) throw std::invalid_argument("build_lookup: distance must be positive");
    LookupDecoder dec;
    dec.n = code.n;
    dec.d = d;
    dec.t = (d - 1) / 2;
    if (pattern_count(code.n, dec.t) > table_cap)
        throw EnumerationCapError("build_lookup: weight <= " + std::to_string(dec.t) +
                                  " patterns exceed the table cap");
    Echelon hz_span(code.hz), hx_span(code.hx);
    fill_table(code.hx, hz_span, code.n, dec.t, dec.z_table, "Z");
    fill_table(code.hz, hx_span, code.n, dec.t, dec.x_table, "X");
    return dec;
}

namespace {

// Correction for one error type: table hit, else bounded minimum-weight
// search up to t + 2; returns the support and whether it fell back.
std::pair<BitVector, bool> correct_side(const std::map<BitVector, BitVector>& table,
                                        const BitMatrix& checks, int n, int t,
                                        const BitVector& key) {
    auto it = table.find(key);
    if (it != table.end()) return {it->second, false};

    BitVector found(n);
    for_each_pattern(n, t + 2, [&](const std::vector<int>& sites) {
        if (static_cast<int>(sites.size()) <= t) return true;  // already known absent
        BitVector error(n);
        for (int s : sites) error.set(s);
        if (syndrome_key(checks, error) == key) {
            found = error;
            return false;
        }
        return true;
    });
    return {found, true};  // identity plus the flag when even the search failed
}

}  // namespace

DecodeResult decode(const LookupDecoder& dec, const CssCode& code, const Syndrome& s) {
    BitVector z_key(code.hx.rows());
    for (int c : s.cell_defects) z_key.set(c);
    BitVector x_key(code.hz.rows());
    for (int f : s.face_defects) x_key.set(f);

    auto [z_corr, z_fallback] = correct_side(dec.z_table, code.hx, code.n, dec.t, z_key);
    auto [x_corr, x_fallback] = correct_side(dec.x_table, code.hz, code.n, dec.t, x_key);

    DecodeResult out{PauliOp{code.n, x_corr, z_corr, 0}, z_fallback || x_fallback};
    return out;
}

namespace {

struct SamplingBasis {
    std::vector<BitVector> even_rows;  // parity-neutral generators
    BitVector odd_row;                 // flips readout parity; may be empty
    bool has_odd = false;
};

// Basis for uniform sampling of a coset member with prescribed readout parity:
// all generators are made parity-even except at most one designated odd one.
SamplingBasis make_sampling_basis(const BitMatrix& basis) {
    SamplingBasis out;
    BitVector odd;
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        BitVector row = basis.row(r);
        if (row.weight() % 2 == 1) {
            if (!out.has_odd) {
                out.odd_row = row;
                out.has_odd = true;
                continue;
            }
            row ^= out.odd_row;
        }
        out.even_rows.push_back(std::move(row));
    }
    return out;
}

struct TrialContext {
    const CssCode* code;
    const LookupDecoder* dec;
    PauliKind basis;
    // Z basis: codeword sampling over rowspace(Hx); X basis: over ker(Hx).
    SamplingBasis sampler;
    BitVector all_ones;
    const BitMatrix* checks;                         // syndrome checks for the flip type
    const std::map<BitVector, BitVector>* table;     // matching correction table
    BitVector logical_support;                       // readout functional
};

TrialContext make_context(const CssCode& code, const LookupDecoder& dec, PauliKind basis) {
    TrialContext ctx;
    ctx.code = &code;
    ctx.dec = &dec;
    ctx.basis = basis;
    ctx.all_ones = BitVector(code.n);
    for (int i = 0; i < code.n; ++i) ctx.all_ones.set(i);
    if (basis == PauliKind::Z) {
        ctx.sampler = make_sampling_basis(gf2::row_basis(code.hx));
        ctx.checks = &code.hz;
        ctx.table = &dec.x_table;
        ctx.logical_support = code.logical_z.front().z_support;
    } else {
        ctx.sampler = make_sampling_basis(gf2::kernel_basis(code.hx));
        ctx.checks = &code.hx;
        ctx.table = &dec.z_table;
        ctx.logical_support = code.logical_x.front().x_support;
    }
    return ctx;
}

struct TrialResult {
    BitVector raw;
    int decoded = 0;
    bool best_effort = false;
};

TrialResult run_trial(const TrialContext& ctx, int logical, double p, rng::Xoshiro256ss& gen) {
    const CssCode& code = *ctx.code;
    BitVector word(code.n);

    // Uniform coset member. In the Z basis logical 0 samples the X-stabilizer
    // span and logical 1 its all-ones complement; in the X basis the readout
    // parity itself encodes the logical value.
    for (const BitVector& row : ctx.sampler.even_rows)
        if (gen.next() & 1) word ^= row;
    if (ctx.basis == PauliKind::Z) {
        if (ctx.sampler.has_odd && (gen.next() & 1)) word ^= ctx.sampler.odd_row;
        if (logical == 1) word ^= ctx.all_ones;
    } else {
        if (!ctx.sampler.has_odd && logical == 1)
            throw std::logic_error("run_trial: no odd-parity kernel element to encode 1");
        int parity = static_cast<int>(word.weight() % 2);
        if (ctx.sampler.has_odd && parity != logical % 2) word ^= ctx.sampler.odd_row;
    }

    for (int i = 0; i < code.n; ++i)
        if (gen.bernoulli(p)) word.flip(i);

    BitVector key = syndrome_key(*ctx.checks, word);
    TrialResult out;
    auto [corr, fallback] = correct_side(*ctx.table, *ctx.checks, code.n, ctx.dec->t, key);
    out.best_effort = fallback;
    word ^= corr;
    out.decoded = ctx.logical_support.dot(word) ? 1 : 0;
    out.raw = std::move(word);
    return out;
}

}  // namespace

MeasurementOutcome simulate_measurement(const CssCode& code, const LookupDecoder& dec,
                                        int logical, double p, PauliKind basis,
                                        std::uint64_t seed) {
    if (code.k != 1) throw std::invalid_argument("simulate_measurement: requires k = 1");
    if (logical != 0 && logical != 1)
        throw std::invalid_argument("simulate_measurement: logical value must be 0 or 1");
    if (!(p >= 0.0 && p < 0.5))
        throw std::invalid_argument("simulate_measurement: p must lie in [0, 0.5)");
    TrialContext ctx = make_context(code, dec, basis);
    rng::Xoshiro256ss gen = rng::Xoshiro256ss::seeded(seed);
    TrialResult r = run_trial(ctx, logical, p, gen);
    return MeasurementOutcome{std::move(r.raw), r.decoded, r.best_effort};
}

std::vector<MonteCarloReport> monte_carlo(const CssCode& code, const LookupDecoder& dec,
                                          const std::vector<double>& p_grid,
                                          std::uint64_t trials, std::uint64_t seed,
                                          int threads) {
    if (code.k != 1) throw std::invalid_argument("monte_carlo: requires k = 1");
    for (double p : p_grid)
        if (!(p >= 0.0 && p < 0.5))
            throw std::invalid_argument("monte_carlo: grid values must lie in [0, 0.5)");
    if (threads < 1) threads = 1;

    TrialContext ctx = make_context(code, dec, PauliKind::X);

    std::vector<MonteCarloReport> reports;
    for (std::size_t gi = 0; gi < p_grid.size(); ++gi) {
        const double p = p_grid[gi];
        const std::uint64_t grid_stream = rng::derive_stream(seed, gi);

        auto run_range = [&](std::uint64_t begin, std::uint64_t end, std::uint64_t& failures,
                             std::uint64_t& best_effort) {
            for (std::uint64_t ti = begin; ti < end; ++ti) {
                // Trial alternates the prepared logical value so both cosets
                // are exercised.
                int logical = static_cast<int>(ti & 1);
                rng::Xoshiro256ss gen =
                    rng::Xoshiro256ss::seeded(rng::derive_stream(grid_stream, ti));
                TrialResult r = run_trial(ctx, logical, p, gen);
                if (r.decoded != logical) ++failures;
                if (r.best_effort) ++best_effort;
            }
        };

        std::uint64_t failures = 0, best_effort = 0;
        if (threads == 1 || trials < 1024) {
            run_range(0, trials, failures, best_effort);
        } else {
            std::vector<std::uint64_t> fail_parts(threads, 0), be_parts(threads, 0);
            std::vector<std::thread> workers;
            const std::uint64_t chunk = (trials + threads - 1) / threads;
            for (int w = 0; w < threads; ++w) {
                std::uint64_t begin = std::min<std::uint64_t>(w * chunk, trials);
                std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
                workers.emplace_back(run_range, begin, end, std::ref(fail_parts[w]),
                                     std::ref(be_parts[w]));
            }
            for (auto& w : workers) w.join();
            for (int w = 0; w < threads; ++w) {
                failures += fail_parts[w];
                best_effort += be_parts[w];
            }
        }

        MonteCarloReport rep;
        rep.p = p;
        rep.trials = trials;
        rep.failures = failures;
        rep.logical_rate = trials == 0 ? 0.0 : static_cast<double>(failures) / trials;
        rep.seed = seed;
        rep.rng_id = rng::kRngId;
        rep.best_effort_count = best_effort;
        rep.basis = "X";
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace colexcode
