#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "colexcode/colex.hpp"
#include "colexcode/gf2.hpp"
#include "colexcode/pauli.hpp"

namespace colexcode {

// CSS stabilizer code with X generators on cells and Z generators on faces.
struct CssCode {
    int n = 0;
    gf2::BitMatrix hx;  // one row per cell, row = cell site indicator
    gf2::BitMatrix hz;  // one row per face
    int rank_hx = 0;
    int rank_hz = 0;
    int k = 0;
    std::vector<PauliOp> logical_x;
    std::vector<PauliOp> logical_z;
    std::shared_ptr<const Colex> colex;  // null for codes built from raw matrices

    PauliOp x_stabilizer(int cell) const;
    PauliOp z_stabilizer(int face) const;
};

// Throws ValidationError if the colex fails its axioms.
CssCode code_from_colex(const Colex& colex);
// For synthetic codes and test fixtures; requires Hx Hz^T = 0.
CssCode code_from_matrices(gf2::BitMatrix hx, gf2::BitMatrix hz);

struct Syndrome {
    std::vector<int> cell_defects;  // sorted ids of violated X generators
    std::vector<int> face_defects;  // sorted ids of violated Z generators

    bool empty() const { return cell_defects.empty() && face_defects.empty(); }
    bool operator==(const Syndrome&) const = default;
};

Syndrome syndrome(const CssCode& code, const PauliOp& error);

// Commuting-term energy bookkeeping: -(|C|+|F|) + 2 * (#defects).
int energy(const CssCode& code, const Syndrome& s);

struct DistanceReport {
    int dx = 0;  // min weight X logical
    int dz = 0;  // min weight Z logical
    int d = 0;
    gf2::BitVector min_x_logical;
    gf2::BitVector min_z_logical;
};

// Exhaustive minimum-distance search over the stabilizer kernels (Gray-code
// enumeration of 2^(n-rank) vectors). Authoritative for any code it accepts.
// Throws if k = 0 or the kernel dimension exceeds the cap.
DistanceReport compute_distance(const CssCode& code,
                                std::size_t cap_log2 = gf2::kDefaultCapLog2);

struct CongruenceReport {
    bool all_weights_mod8_zero = false;
    bool lemma_shared_sites_ok = false;
    std::vector<std::string> counterexamples;
    std::set<std::size_t> observed_weights;
    std::set<std::size_t> observed_shared_mod8;
    std::size_t span_size = 0;

    bool passed() const {
        return all_weights_mod8_zero && lemma_shared_sites_ok && counterexamples.empty();
    }
};

// Enumerates V = span(Hx rows) and checks every weight is 0 mod 8; also checks
// that each cell shares 0 or 4 sites (mod 8) with every product of other cells.
CongruenceReport check_weight_congruence(const CssCode& code,
                                         std::size_t cap_log2 = gf2::kDefaultCapLog2);

struct CnotReport {
    int stabilizer_images_checked = 0;
    bool all_stabilizer_images_in_group = false;
    bool x1_to_x1x2 = false;  // X.I -> X.X
    bool x2_fixed = false;    // I.X -> I.X
    bool z1_fixed = false;    // Z.I -> Z.I
    bool z2_to_z1z2 = false;  // I.Z -> Z.Z

    bool passed() const {
        return all_stabilizer_images_in_group && x1_to_x1x2 && x2_fixed && z1_fixed && z2_to_z1z2;
    }
};

// Conjugates every doubled stabilizer generator and both logical pairs by the
// pairwise CNOT layer and checks the images against the doubled group.
// Requires k = 1.
CnotReport verify_transversal_cnot(const CssCode& code);

// True iff the two operators (both pure X type or both pure Z type) differ by
// a stabilizer, i.e. act identically on the code space.
bool equivalent_mod_stabilizers(const CssCode& code, const PauliOp& p, const PauliOp& q);

}  // namespace colexcode
