#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "colexcode/code.hpp"
#include "colexcode/colex.hpp"
#include "colexcode/decoder.hpp"
#include "colexcode/errors.hpp"

using namespace colexcode;
using gf2::BitVector;

namespace {

struct Fixture {
    CssCode code;
    DistanceReport distance;
    LookupDecoder dec;

    Fixture() {
        code = code_from_colex(puncture(build_tesseract(), 0));
        distance = compute_distance(code);
        dec = build_lookup(code, distance.d);
    }
};

// All site subsets of weight <= t.
std::vector<std::vector<int>> patterns_up_to(int n, int t) {
    std::vector<std::vector<int>> out{{}};
    std::vector<std::vector<int>> frontier{{}};
    for (int w = 0; w < t; ++w) {
        std::vector<std::vector<int>> next;
        for (const auto& p : frontier) {
            int start = p.empty() ? 0 : p.back() + 1;
            for (int s = start; s < n; ++s) {
                auto q = p;
                q.push_back(s);
                next.push_back(q);
                out.push_back(q);
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("lookup builds cleanly at the computed distance") {
    Fixture f;
    CHECK(f.distance.d == 3);
    CHECK(f.dec.t == 1);
    CHECK(f.dec.z_table.size() == 16);  // every cell-defect pattern is reachable
    CHECK(f.dec.x_table.size() == 16);
}

TEST_CASE("building for the published distance claim of 5 reports a collision") {
    Fixture f;
    CHECK_THROWS_AS(build_lookup(f.code, 5), DistanceRefutedError);
}

TEST_CASE("every error of weight <= t is corrected exactly") {
    Fixture f;
    for (const auto& sites : patterns_up_to(f.code.n, f.dec.t)) {
        PauliOp ez = PauliOp::from_support(PauliKind::Z, sites, f.code.n);
        DecodeResult rz = decode(f.dec, f.code, syndrome(f.code, ez));
        CHECK_FALSE(rz.best_effort);
        CHECK(equivalent_mod_stabilizers(
            f.code, PauliOp::from_bits(PauliKind::Z, rz.correction.z_support), ez));

        PauliOp ex = PauliOp::from_support(PauliKind::X, sites, f.code.n);
        DecodeResult rx = decode(f.dec, f.code, syndrome(f.code, ex));
        CHECK_FALSE(rx.best_effort);
        CHECK(equivalent_mod_stabilizers(
            f.code, PauliOp::from_bits(PauliKind::X, rx.correction.x_support), ex));
    }
}

TEST_CASE("corrections reproduce the syndrome they were asked to fix") {
    Fixture f;
    // Includes weight t+1 errors, which may fall back to bounded search.
    for (const auto& sites : patterns_up_to(f.code.n, f.dec.t + 1)) {
        PauliOp e = PauliOp::from_support(PauliKind::X, sites, f.code.n);
        Syndrome s = syndrome(f.code, e);
        DecodeResult r = decode(f.dec, f.code, s);
        CHECK(syndrome(f.code, r.correction) == s);
    }
}

TEST_CASE("empty syndrome decodes to the identity") {
    Fixture f;
    DecodeResult r = decode(f.dec, f.code, Syndrome{});
    CHECK(r.correction.is_identity());
    CHECK_FALSE(r.best_effort);
}

TEST_CASE("weight t+1 X errors fall back to best effort") {
    Fixture f;
    // A weight-2 X error has an 18-bit face syndrome outside the weight <= 1
    // table whenever no single-site error shares it.
    bool saw_best_effort = false;
    for (int a = 0; a < f.code.n && !saw_best_effort; ++a)
        for (int b = a + 1; b < f.code.n && !saw_best_effort; ++b) {
            PauliOp e = PauliOp::from_support(PauliKind::X, {a, b}, f.code.n);
            DecodeResult r = decode(f.dec, f.code, syndrome(f.code, e));
            saw_best_effort = r.best_effort;
        }
    CHECK(saw_best_effort);
}

TEST_CASE("p = 0 measurements always decode correctly") {
    Fixture f;
    for (int logical : {0, 1}) {
        for (PauliKind basis : {PauliKind::Z, PauliKind::X}) {
            for (std::uint64_t seed = 0; seed < 20; ++seed) {
                MeasurementOutcome out =
                    simulate_measurement(f.code, f.dec, logical, 0.0, basis, seed);
                CHECK(out.decoded_logical == logical);
            }
        }
    }
}

TEST_CASE("deterministically injected weight <= t flips decode correctly") {
    Fixture f;
    // Z-basis readout with one X flip injected by hand.
    for (int flip = 0; flip < f.code.n; ++flip) {
        BitVector word(f.code.n);  // the all-zero codeword, logical 0
        word.flip(flip);
        Syndrome s;
        for (std::size_t r = 0; r < f.code.hz.rows(); ++r)
            if (f.code.hz.row(r).dot(word)) s.face_defects.push_back(static_cast<int>(r));
        DecodeResult dr = decode(f.dec, f.code, s);
        BitVector corrected = word ^ dr.correction.x_support;
        CHECK(f.code.logical_z.front().z_support.dot(corrected) == 0);
    }
}

TEST_CASE("simulate_measurement argument guards") {
    Fixture f;
    CHECK_THROWS_AS(simulate_measurement(f.code, f.dec, 2, 0.0, PauliKind::Z, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_measurement(f.code, f.dec, 0, 0.5, PauliKind::Z, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_measurement(f.code, f.dec, 0, -0.1, PauliKind::Z, 1),
                    std::invalid_argument);
}

TEST_CASE("monte carlo: zero trials, p = 0, reproducibility") {
    Fixture f;
    auto empty = monte_carlo(f.code, f.dec, {0.01}, 0, 42);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].failures == 0);
    CHECK(empty[0].logical_rate == 0.0);

    auto zero_p = monte_carlo(f.code, f.dec, {0.0}, 2000, 42);
    CHECK(zero_p[0].failures == 0);

    auto a = monte_carlo(f.code, f.dec, {0.01, 0.02}, 5000, 42);
    auto b = monte_carlo(f.code, f.dec, {0.01, 0.02}, 5000, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].failures == b[i].failures);
        CHECK(a[i].best_effort_count == b[i].best_effort_count);
        CHECK(a[i].rng_id == std::string("xoshiro256ss-splitmix64"));
    }

    // Thread count must not change the results.
    auto c = monte_carlo(f.code, f.dec, {0.01, 0.02}, 5000, 42, 2);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].failures == c[i].failures);
}

TEST_CASE("monte carlo monotonicity spot check") {
    Fixture f;
    auto reports = monte_carlo(f.code, f.dec, {0.01, 0.05}, 100000, 7);
    CHECK(reports[0].logical_rate < reports[1].logical_rate);
}

TEST_CASE("lookup guards") {
    Fixture f;
    CssCode torus = code_from_colex(build_torus(2));
    CHECK_THROWS_AS(build_lookup(torus, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_lookup(f.code, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_lookup(f.code, 15, /*table_cap=*/10), EnumerationCapError);
}
