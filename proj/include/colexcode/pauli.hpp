#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colexcode/gf2.hpp"

namespace colexcode {

enum class PauliKind { X, Z };

// n-qubit Pauli operator stored as i^phase * X(x_support) * Z(z_support),
// with the X part written to the left of the Z part on every qubit. Y shows
// up implicitly where the supports overlap.
struct PauliOp {
    int n = 0;
    gf2::BitVector x_support;
    gf2::BitVector z_support;
    std::uint8_t phase = 0;  // power of i, mod 4

    static PauliOp identity(int n);
    static PauliOp from_support(PauliKind kind, const std::vector<int>& sites, int n);
    static PauliOp from_bits(PauliKind kind, gf2::BitVector support);

    // Number of qubits acted on nontrivially.
    int weight() const;
    bool is_x_type() const { return !z_support.any(); }
    bool is_z_type() const { return !x_support.any(); }
    bool is_identity() const { return !x_support.any() && !z_support.any(); }

    bool operator==(const PauliOp&) const = default;
};

// Symplectic commutation test: true iff the operators commute.
bool commutes(const PauliOp& p, const PauliOp& q);

// Operator product with the i-power phase tracked exactly.
PauliOp multiply(const PauliOp& p, const PauliOp& q);

// Conjugation by the layer of CNOTs acting pairwise between the first and
// second halves of a 2n-qubit register (first half controls).
PauliOp conjugate_by_transversal_cnot(const PauliOp& p);

// Rendering over {I,X,Y,Z} with an exact phase prefix ("", "i", "-", "-i").
std::string to_string(const PauliOp& p);

}  // namespace colexcode
