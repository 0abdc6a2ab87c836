#include "colexcode/gf2.hpp"

#include <bit>
#include <stdexcept>

#include "colexcode/errors.hpp"

namespace colexcode::gf2 {

BitVector BitVector::from_indices(std::size_t length, const std::vector<std::size_t>& ones) {
    BitVector v(length);
    for (std::size_t i : ones) {
        if (i >= length) throw std::invalid_argument("bit index out of range");
        v.set(i);
    }
    return v;
}

std::size_t BitVector::weight() const {
    std::size_t w = 0;
    for (std::uint64_t word : words_) w += std::popcount(word);
    return w;
}

bool BitVector::any() const {
    for (std::uint64_t word : words_)
        if (word) return true;
    return false;
}

bool BitVector::dot(const BitVector& other) const {
    if (len_ != other.len_) throw std::invalid_argument("BitVector::dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (len_ != other.len_) throw std::invalid_argument("BitVector::operator^=: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector BitVector::operator&(const BitVector& other) const {
    if (len_ != other.len_) throw std::invalid_argument("BitVector::operator&: length mismatch");
    BitVector out(len_);
    for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
    return out;
}

bool BitVector::operator<(const BitVector& other) const {
    if (len_ != other.len_) return len_ < other.len_;
    for (std::size_t i = words_.size(); i-- > 0;)
        if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
    return false;
}

std::vector<std::size_t> BitVector::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t word = words_[w];
        while (word) {
            out.push_back(w * 64 + std::countr_zero(word));
            word &= word - 1;
        }
    }
    return out;
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

void BitMatrix::append_row(BitVector v) {
    if (rows_.empty() && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw std::invalid_argument("BitMatrix::append_row: column mismatch");
    rows_.push_back(std::move(v));
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c : rows_[r].ones()) out.row(c).set(r);
    return out;
}

Echelon::Echelon(const BitMatrix& m) : cols_(m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) add(m.row(r));
}

BitVector Echelon::reduce(BitVector v) const {
    if (v.size() != cols_) throw std::invalid_argument("Echelon::reduce: length mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.get(pivots_[i])) v ^= rows_[i];
    return v;
}

bool Echelon::add(BitVector v) {
    if (cols_ == 0 && rows_.empty()) cols_ = v.size();
    v = reduce(std::move(v));
    if (!v.any()) return false;
    std::size_t pivot = v.ones().front();
    // Keep earlier rows reduced against the new pivot.
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (rows_[i].get(pivot)) rows_[i] ^= v;
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    // Maintain ascending pivot order for deterministic reduce().
    for (std::size_t i = rows_.size() - 1; i > 0 && pivots_[i] < pivots_[i - 1]; --i) {
        std::swap(pivots_[i], pivots_[i - 1]);
        std::swap(rows_[i], rows_[i - 1]);
    }
    return true;
}

std::size_t rank(const BitMatrix& m) { return Echelon(m).rank(); }

bool in_row_space(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.cols()) throw std::invalid_argument("in_row_space: length mismatch");
    return Echelon(m).contains(v);
}

BitMatrix kernel_basis(const BitMatrix& m) {
    const std::size_t n = m.cols();
    // Eliminate on a working copy, remembering pivot columns.
    std::vector<BitVector> work;
    work.reserve(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) work.push_back(m.row(r));

    std::vector<std::size_t> pivot_col;
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < n && next_row < work.size(); ++c) {
        std::size_t p = next_row;
        while (p < work.size() && !work[p].get(c)) ++p;
        if (p == work.size()) continue;
        std::swap(work[p], work[next_row]);
        for (std::size_t r = 0; r < work.size(); ++r)
            if (r != next_row && work[r].get(c)) work[r] ^= work[next_row];
        pivot_col.push_back(c);
        ++next_row;
    }

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    BitMatrix basis(0, n);
    for (std::size_t c = 0; c < n; ++c) {
        if (is_pivot[c]) continue;
        BitVector v(n);
        v.set(c);
        for (std::size_t i = 0; i < pivot_col.size(); ++i)
            if (work[i].get(c)) v.set(pivot_col[i]);
        basis.append_row(std::move(v));
    }
    return basis;
}

BitMatrix row_basis(const BitMatrix& m) {
    Echelon e(m);
    BitMatrix out(0, m.cols());
    for (const BitVector& r : e.basis_rows()) out.append_row(r);
    return out;
}

void enumerate_span(const BitMatrix& basis,
                    const std::function<void(const BitVector&)>& visit,
                    std::size_t cap_log2) {
    const std::size_t r = basis.rows();
    if (r > cap_log2)
        throw EnumerationCapError("enumerate_span: 2^" + std::to_string(r) +
                                  " elements exceeds cap 2^" + std::to_string(cap_log2));
    BitVector current(basis.cols());
    visit(current);
    const std::uint64_t total = std::uint64_t{1} << r;
    for (std::uint64_t i = 1; i < total; ++i) {
        current ^= basis.row(std::countr_zero(i));
        visit(current);
    }
}

}  // namespace colexcode::gf2
