#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "colexcode/code.hpp"
#include "colexcode/pauli.hpp"

#include "json.hpp"

namespace colexcode {

// Dense state vector; qubit i is bit i of the amplitude index.
class StateVector {
public:
    static constexpr int kMaxQubits = 20;

    explicit StateVector(int n);  // |0...0>
    static StateVector computational_basis(int n, std::uint32_t index);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::complex<double> amplitude(std::uint32_t index) const { return amps_[index]; }
    void set_amplitude(std::uint32_t index, std::complex<double> a) { amps_[index] = a; }

    double norm() const;
    void normalize();

    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }

private:
    int n_;
    std::vector<std::complex<double>> amps_;
};

// Uniform superposition over the X-stabilizer span applied to |0...0>, i.e.
// the encoded zero of a k = 1 CSS code.
StateVector encode_zero(const CssCode& code);

StateVector apply_pauli(const StateVector& state, const PauliOp& op);

// Applies diag(1, e^{i pi/4})^{x repetitions} on every qubit: each basis
// amplitude picks up e^{i pi/4 * weight(index) * repetitions}.
StateVector apply_transversal_k_half(const StateVector& state, int repetitions);

std::complex<double> overlap(const StateVector& a, const StateVector& b);

// True iff every stabilizer generator has expectation +1 within tol.
bool check_ground_conditions(const StateVector& state, const CssCode& code, double tol = 1e-10);

// Expectation of -(sum of cell ops) - (sum of face ops).
double energy_expectation(const StateVector& state, const CssCode& code);

struct TransversalPhaseReport {
    int l = 0;            // n mod 8
    int repetitions = 0;  // r with r*l = 1 mod 8
    std::complex<double> single_application_one_phase;  // measured phase on encoded one
    double max_fidelity_error = 1.0;
    bool logical_k_half = false;
};

// Checks that the repeated transversal phase gate acts as the logical
// square-root-of-K on the encoded basis and on the superposition state.
// Throws ValidationError if the weight congruence fails (the gate would not
// be logical) and std::invalid_argument for k != 1 or n over the cap.
TransversalPhaseReport verify_transversal_t(const CssCode& code);

// Nonzero amplitudes as [[index, re, im], ...] ordered by basis index.
nlohmann::ordered_json nonzero_amplitudes_json(const StateVector& state, double tol = 1e-12);

}  // namespace colexcode
