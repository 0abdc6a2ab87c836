#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace colexcode::gf2 {

// Packed bit vector over the two-element field.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t length)
        : len_(length), words_((length + 63) / 64, 0) {}

    static BitVector from_indices(std::size_t length, const std::vector<std::size_t>& ones);

    std::size_t size() const { return len_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i, bool value = true) {
        if (value)
            words_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    // Number of 1 bits.
    std::size_t weight() const;
    bool any() const;
    // Parity of the AND with another vector of equal length.
    bool dot(const BitVector& other) const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    BitVector operator&(const BitVector& other) const;

    bool operator==(const BitVector& other) const = default;
    bool operator<(const BitVector& other) const;

    std::vector<std::size_t> ones() const;
    std::string to_string() const;  // e.g. "0110"

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : cols_(cols), rows_(rows, BitVector(cols)) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    BitVector& row(std::size_t i) { return rows_[i]; }
    const BitVector& row(std::size_t i) const { return rows_[i]; }

    void append_row(BitVector v);
    BitMatrix transposed() const;

    bool operator==(const BitMatrix& other) const = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

// Row-echelon form kept around for repeated membership and reduction queries.
class Echelon {
public:
    Echelon() = default;
    explicit Echelon(const BitMatrix& m);

    std::size_t rank() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }

    // True iff v is a sum of rows of the original matrix.
    bool contains(const BitVector& v) const { return !reduce(v).any(); }
    // Canonical coset representative of v modulo the row space.
    BitVector reduce(BitVector v) const;
    // Returns false if v was already in the span, true if it was added.
    bool add(BitVector v);

    const std::vector<BitVector>& basis_rows() const { return rows_; }

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

std::size_t rank(const BitMatrix& m);
bool in_row_space(const BitMatrix& m, const BitVector& v);
// Basis of {v : M v = 0}; row count = cols - rank(M).
BitMatrix kernel_basis(const BitMatrix& m);
// Echelonized basis of the row space.
BitMatrix row_basis(const BitMatrix& m);

inline constexpr std::size_t kDefaultCapLog2 = 24;

// Visits all 2^rows span elements exactly once in Gray-code order, starting
// with the zero vector; consecutive elements differ by a single basis row.
// Rows must be linearly independent. Throws EnumerationCapError if
// rows > cap_log2.
void enumerate_span(const BitMatrix& basis,
                    const std::function<void(const BitVector&)>& visit,
                    std::size_t cap_log2 = kDefaultCapLog2);

}  // namespace colexcode::gf2
