#pragma once

#include <array>
#include <optional>
#include <vector>

#include "colexcode/code.hpp"
#include "colexcode/colex.hpp"
#include "colexcode/pauli.hpp"

namespace colexcode {

// A q-string: a set of q-colored links. Its operator is Z on every site the
// links touch; endpoints (odd-incidence q-cells) carry the excitations.
struct ColorString {
    Color color;
    std::vector<int> link_ids;
};

// A pq-membrane: a set of pq-colored faces. Its operator is X on the parity
// of the face site sets (pq-faces are pairwise disjoint, so parity = union).
struct Membrane {
    ColorPair colors;
    std::vector<int> face_ids;
};

PauliOp string_operator(const Colex& colex, const ColorString& s);
PauliOp membrane_operator(const Colex& colex, const Membrane& m);

// Cells of the string's color with odd link incidence; equal to the cell
// defects of the string operator's syndrome.
std::vector<int> endpoints(const Colex& colex, const ColorString& s);

struct PairCrossing {
    bool commute = false;
    bool overlap_even = false;  // support-overlap parity, the crossing count mod 2
    bool colors_disjoint = false;

    // Commutation must always equal the overlap parity, and disjoint colors
    // force commutation.
    bool consistent() const {
        return commute == overlap_even && (!colors_disjoint || commute);
    }
};

// Crossing relation of one string/membrane pair.
PairCrossing crossing_check(const Colex& colex, const ColorString& s, const Membrane& m);

struct CrossingReport {
    int disjoint_pairs_checked = 0;
    bool disjoint_colors_always_commute = false;
    bool overlap_parity_matches_commutation = false;
    bool found_shared_color_anticommuting_pair = false;
    bool deformation_preserves_commutation = false;

    bool passed() const {
        return disjoint_colors_always_commute && overlap_parity_matches_commutation &&
               found_shared_color_anticommuting_pair && deformation_preserves_commutation;
    }
};

// Checks the crossing rules over systematically sampled string/membrane
// pairs: disjoint-color pairs always commute, commutation always equals the
// support-overlap parity, some shared-color pair anticommutes, and deforming
// a string by a face boundary never changes commutation.
CrossingReport crossing_anticommutation_check(const Colex& colex, const CssCode& code);

struct ColorCombinationReport {
    std::array<int, 4> string_class_rank{};  // per color, rank in the logical quotient
    int rank_rgb = 0;                        // rank of r+g+b classes together (expect 9)
    bool rgb_product_equals_y = false;
    bool y_components_all_nontrivial = false;
    bool single_color_square_trivial = false;

    bool passed() const {
        return rank_rgb == 9 && rgb_product_equals_y && y_components_all_nontrivial &&
               single_color_square_trivial;
    }
};

// On a torus colex: finds closed nontrivial strings of every color from the
// fundamental cycles of the cell graphs, verifies that r, g and b string
// classes span the full 9-dimensional Z-logical quotient, and certifies a
// concrete r*g*b = y combination modulo stabilizers.
ColorCombinationReport color_combination_check(const CssCode& code, const Colex& colex);

// Smallest-by-construction closed string of the given color with a homology
// class outside the stabilizer group, if one exists.
std::optional<ColorString> find_nontrivial_closed_string(const CssCode& code, const Colex& colex,
                                                         Color color);

// A nonempty closed pq-membrane (empty syndrome), if one exists.
std::optional<Membrane> find_closed_membrane(const CssCode& code, const Colex& colex,
                                             ColorPair colors);

struct StringNet {
    int branch_site = -1;
    std::array<std::vector<int>, 4> path_links;  // per color
    PauliOp op;                                  // Z on the union of path sites
};

// Z logical of a tetrahedral (punctured) code built as four colored paths
// meeting at a branch site, each running into the region of a missing cell.
// Throws ValidationError if no branch site works.
StringNet tetra_string_net(const CssCode& code, const Colex& colex);

struct MembraneNet {
    std::vector<int> face_ids;
    PauliOp op;  // X on the union of the face sites
};

// X logical of a tetrahedral code assembled as a union of faces that wraps a
// missing cell; equivalent to the all-ones X operator.
MembraneNet tetra_membrane_net(const CssCode& code, const Colex& colex);

struct ExcitationReport {
    int sites_checked = 0;
    bool single_z_four_cells_one_per_color = false;
    bool single_x_six_faces_all_pairs = false;
    bool fluxes_group_into_four_color_loops = false;

    bool passed() const {
        return single_z_four_cells_one_per_color && single_x_six_faces_all_pairs &&
               fluxes_group_into_four_color_loops;
    }
};

// Elementary excitation structure over every site of a closed colex: a single
// Z excites the 4 cells at the site (one per color), a single X excites the 6
// faces at the site (all color pairs), and for each color q the three defect
// faces containing q close up around the site's q-cell.
ExcitationReport elementary_excitation_check(const CssCode& code, const Colex& colex);

}  // namespace colexcode
