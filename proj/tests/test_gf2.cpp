#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "colexcode/colex.hpp"
#include "colexcode/code.hpp"
#include "colexcode/errors.hpp"
#include "colexcode/gf2.hpp"
#include "colexcode/rng.hpp"

using namespace colexcode;
using gf2::BitMatrix;
using gf2::BitVector;

namespace {

BitVector vec(std::size_t len, std::initializer_list<std::size_t> ones) {
    return BitVector::from_indices(len, std::vector<std::size_t>(ones));
}

BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.row(i).set(i);
    return m;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, rng::Xoshiro256ss& gen) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            if (gen.next() & 1) m.row(r).set(c);
    return m;
}

// Independent oracle: membership by brute-force subset sums over the rows.
bool in_row_space_bruteforce(const BitMatrix& m, const BitVector& v) {
    const std::size_t rows = m.rows();
    REQUIRE(rows <= 12);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows); ++mask) {
        BitVector acc(m.cols());
        for (std::size_t r = 0; r < rows; ++r)
            if ((mask >> r) & 1) acc ^= m.row(r);
        if (acc == v) return true;
    }
    return false;
}

// Independent oracle: rank from the number of distinct subset sums.
std::size_t rank_bruteforce(const BitMatrix& m) {
    std::set<std::vector<std::size_t>> distinct;
    const std::size_t rows = m.rows();
    REQUIRE(rows <= 12);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rows); ++mask) {
        BitVector acc(m.cols());
        for (std::size_t r = 0; r < rows; ++r)
            if ((mask >> r) & 1) acc ^= m.row(r);
        distinct.insert(acc.ones());
    }
    std::size_t size = distinct.size(), log2 = 0;
    while (size > 1) {
        size >>= 1;
        ++log2;
    }
    return log2;
}

CssCode tetra_code() {
    return code_from_colex(puncture(build_tesseract(), 0));
}

}  // namespace

TEST_CASE("rank on fixed matrices") {
    CHECK(gf2::rank(identity(3)) == 3);
    CHECK(gf2::rank(BitMatrix(4, 7)) == 0);

    BitMatrix m(0, 4);
    m.append_row(vec(4, {0, 1}));
    m.append_row(vec(4, {1, 2}));
    m.append_row(vec(4, {0, 2}));  // sum of the first two
    CHECK(gf2::rank(m) == 2);
    CHECK(rank_bruteforce(m) == 2);
}

TEST_CASE("rank of the punctured-tesseract cell matrix is 4") {
    CssCode code = tetra_code();
    REQUIRE(code.hx.rows() == 4);
    for (std::size_t r = 0; r < 4; ++r) CHECK(code.hx.row(r).weight() == 8);
    CHECK(gf2::rank(code.hx) == 4);
    CHECK(rank_bruteforce(code.hx) == 4);
}

TEST_CASE("rank equals transpose rank on random matrices") {
    rng::Xoshiro256ss gen = rng::Xoshiro256ss::seeded(7);
    for (int trial = 0; trial < 50; ++trial) {
        BitMatrix m = random_matrix(1 + gen.next() % 8, 1 + gen.next() % 8, gen);
        CHECK(gf2::rank(m) == gf2::rank(m.transposed()));
    }
}

TEST_CASE("in_row_space") {
    BitMatrix m = identity(3);
    CHECK(gf2::in_row_space(m, vec(3, {})));
    CHECK(gf2::in_row_space(m, vec(3, {0, 1})));

    CssCode code = tetra_code();
    for (std::size_t f = 0; f < code.hz.rows(); ++f)
        CHECK(gf2::in_row_space(code.hz, code.hz.row(f)));

    CHECK_THROWS_AS(gf2::in_row_space(m, vec(5, {0})), std::invalid_argument);
}

TEST_CASE("in_row_space agrees with brute force on random matrices") {
    rng::Xoshiro256ss gen = rng::Xoshiro256ss::seeded(11);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t rows = 1 + gen.next() % 6, cols = 1 + gen.next() % 7;
        BitMatrix m = random_matrix(rows, cols, gen);
        for (int probe = 0; probe < 8; ++probe) {
            BitVector v(cols);
            for (std::size_t c = 0; c < cols; ++c)
                if (gen.next() & 1) v.set(c);
            CHECK(gf2::in_row_space(m, v) == in_row_space_bruteforce(m, v));
        }
    }
}

TEST_CASE("kernel_basis") {
    CHECK(gf2::kernel_basis(identity(3)).rows() == 0);
    CHECK(gf2::kernel_basis(BitMatrix(2, 3)).rows() == 3);

    CssCode code = tetra_code();
    CHECK(gf2::kernel_basis(code.hx).rows() == 11);  // 15 - rank 4

    // Every span element of the kernel basis really lies in the kernel.
    rng::Xoshiro256ss gen = rng::Xoshiro256ss::seeded(23);
    for (int trial = 0; trial < 20; ++trial) {
        BitMatrix m = random_matrix(1 + gen.next() % 5, 1 + gen.next() % 8, gen);
        BitMatrix kernel = gf2::kernel_basis(m);
        CHECK(kernel.rows() == m.cols() - gf2::rank(m));
        gf2::enumerate_span(kernel, [&](const BitVector& v) {
            for (std::size_t r = 0; r < m.rows(); ++r) CHECK_FALSE(m.row(r).dot(v));
        });
    }
}

TEST_CASE("enumerate_span basics") {
    BitMatrix empty(0, 3);
    int count = 0;
    gf2::enumerate_span(empty, [&](const BitVector& v) {
        CHECK_FALSE(v.any());
        ++count;
    });
    CHECK(count == 1);

    BitMatrix basis(0, 2);
    basis.append_row(vec(2, {0}));
    basis.append_row(vec(2, {1}));
    std::set<std::string> seen;
    BitVector prev(2);
    bool first = true;
    gf2::enumerate_span(basis, [&](const BitVector& v) {
        seen.insert(v.to_string());
        if (first) {
            CHECK_FALSE(v.any());  // starts at zero
            first = false;
        } else {
            CHECK((prev ^ v).weight() == 1);  // Gray steps flip one basis row
        }
        prev = v;
    });
    CHECK(seen.size() == 4);
}

TEST_CASE("enumerate_span of the tetrahedral cell rows: 16 vectors, weight 0 mod 8") {
    CssCode code = tetra_code();
    int count = 0;
    gf2::enumerate_span(code.hx, [&](const BitVector& v) {
        ++count;
        CHECK(v.weight() % 8 == 0);
    });
    CHECK(count == 16);
}

TEST_CASE("enumerate_span cap") {
    BitMatrix wide(30, 40);
    for (std::size_t r = 0; r < 30; ++r) wide.row(r).set(r);
    CHECK_THROWS_AS(gf2::enumerate_span(wide, [](const BitVector&) {}), EnumerationCapError);
}

TEST_CASE("weight xor identities") {
    rng::Xoshiro256ss gen = rng::Xoshiro256ss::seeded(5);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t len = 1 + gen.next() % 70;
        BitVector u(len), v(len);
        for (std::size_t i = 0; i < len; ++i) {
            if (gen.next() & 1) u.set(i);
            if (gen.next() & 1) v.set(i);
        }
        CHECK((u ^ u).weight() == 0);
        CHECK((u ^ v).weight() % 2 == (u.weight() + v.weight()) % 2);
    }
}
