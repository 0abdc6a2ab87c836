#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "colexcode/code.hpp"
#include "colexcode/gf2.hpp"
#include "colexcode/pauli.hpp"

namespace colexcode {

// Syndrome lookup tables for a k = 1 CSS code, one per error type. Every
// error of weight <= t keys the minimal-weight correction in its class.
struct LookupDecoder {
    int n = 0;
    int d = 0;
    int t = 0;  // floor((d-1)/2)
    std::map<gf2::BitVector, gf2::BitVector> z_table;  // cell-defect pattern -> Z support
    std::map<gf2::BitVector, gf2::BitVector> x_table;  // face-defect pattern -> X support
};

// Builds the tables for the given distance. A same-syndrome pair of weight
// <= t errors in different logical classes disproves the distance; that
// throws DistanceRefutedError with the witness pair. Throws
// EnumerationCapError if the table would exceed the cap.
LookupDecoder build_lookup(const CssCode& code, int d, std::size_t table_cap = 1u << 22);

struct DecodeResult {
    PauliOp correction;
    bool best_effort = false;  // syndrome was outside the weight <= t tables
};

DecodeResult decode(const LookupDecoder& dec, const CssCode& code, const Syndrome& s);

struct MeasurementOutcome {
    gf2::BitVector raw;      // physical readout after errors
    int decoded_logical = 0;
    bool best_effort = false;
};

// Destructive transversal measurement with i.i.d. bit flips at rate p.
// Z basis: samples a codeword from V (logical 0) or its complement coset
// (logical 1), applies X-type flips, decodes via face checks. X basis: dual,
// with Z-type flips decoded via cell checks.
MeasurementOutcome simulate_measurement(const CssCode& code, const LookupDecoder& dec,
                                        int logical, double p, PauliKind basis,
                                        std::uint64_t seed);

struct MonteCarloReport {
    double p = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double logical_rate = 0.0;
    std::uint64_t seed = 0;
    std::string rng_id;
    std::uint64_t best_effort_count = 0;
    std::string basis;
};

// Repeated X-basis measurement cycles (the distance-limiting error type for
// the tetrahedral code) across a grid of physical error rates. Deterministic
// for a fixed seed regardless of thread count: every trial derives its own
// generator from (seed, grid index, trial index).
std::vector<MonteCarloReport> monte_carlo(const CssCode& code, const LookupDecoder& dec,
                                          const std::vector<double>& p_grid,
                                          std::uint64_t trials, std::uint64_t seed,
                                          int threads = 1);

}  // namespace colexcode
