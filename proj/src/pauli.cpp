#include "colexcode/pauli.hpp"

#include <stdexcept>

namespace colexcode {

PauliOp PauliOp::identity(int n) {
    return PauliOp{n, gf2::BitVector(n), gf2::BitVector(n), 0};
}

PauliOp PauliOp::from_support(PauliKind kind, const std::vector<int>& sites, int n) {
    gf2::BitVector support(n);
    for (int s : sites) {
        if (s < 0 || s >= n) throw std::invalid_argument("PauliOp::from_support: index out of range");
        support.set(static_cast<std::size_t>(s));
    }
    return from_bits(kind, std::move(support));
}

PauliOp PauliOp::from_bits(PauliKind kind, gf2::BitVector support) {
    const int n = static_cast<int>(support.size());
    PauliOp op = identity(n);
    if (kind == PauliKind::X)
        op.x_support = std::move(support);
    else
        op.z_support = std::move(support);
    return op;
}

int PauliOp::weight() const {
    return static_cast<int>(x_support.weight() + z_support.weight() -
                            (x_support & z_support).weight());
}

bool commutes(const PauliOp& p, const PauliOp& q) {
    if (p.n != q.n) throw std::invalid_argument("commutes: qubit count mismatch");
    return (p.x_support.dot(q.z_support) ^ p.z_support.dot(q.x_support)) == 0;
}

PauliOp multiply(const PauliOp& p, const PauliOp& q) {
    if (p.n != q.n) throw std::invalid_argument("multiply: qubit count mismatch");
    PauliOp out;
    out.n = p.n;
    out.x_support = p.x_support ^ q.x_support;
    out.z_support = p.z_support ^ q.z_support;
    // Reorder Z(p.z) past X(q.x): each overlap contributes a factor -1 = i^2.
    out.phase = static_cast<std::uint8_t>(
        (p.phase + q.phase + 2 * (p.z_support.dot(q.x_support) ? 1 : 0)) % 4);
    return out;
}

PauliOp conjugate_by_transversal_cnot(const PauliOp& p) {
    if (p.n % 2 != 0)
        throw std::invalid_argument("conjugate_by_transversal_cnot: odd total qubit count");
    const int half = p.n / 2;
    PauliOp out = p;
    // Per pair: X(c) -> X(c)X(t), Z(t) -> Z(c)Z(t); the X and Z images stay
    // pure-type, so the stored phase carries over unchanged.
    for (int i = 0; i < half; ++i) {
        if (p.x_support.get(i)) out.x_support.flip(half + i);
        if (p.z_support.get(half + i)) out.z_support.flip(i);
    }
    return out;
}

std::string to_string(const PauliOp& p) {
    // XZ on one qubit prints as Y, which absorbs a factor of i.
    int y_count = 0;
    std::string letters(p.n, 'I');
    for (int i = 0; i < p.n; ++i) {
        bool x = p.x_support.get(i), z = p.z_support.get(i);
        if (x && z) {
            letters[i] = 'Y';
            ++y_count;
        } else if (x) {
            letters[i] = 'X';
        } else if (z) {
            letters[i] = 'Z';
        }
    }
    static const char* prefixes[4] = {"", "i", "-", "-i"};
    int printed_phase = ((p.phase - y_count) % 4 + 4) % 4;
    return std::string(prefixes[printed_phase]) + letters;
}

}  // namespace colexcode
