#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace colexcode {

enum class Color : std::uint8_t { R = 0, G = 1, B = 2, Y = 3 };

inline constexpr std::array<Color, 4> kColors = {Color::R, Color::G, Color::B, Color::Y};

char to_char(Color c);
std::optional<Color> color_from_char(char ch);

// Unordered color pair, stored with first < second.
struct ColorPair {
    Color first;
    Color second;

    ColorPair(Color a, Color b);
    bool contains(Color c) const { return c == first || c == second; }
    bool operator==(const ColorPair&) const = default;
    std::string to_string() const;
};

// The two colors not in {a, b}.
ColorPair complement_pair(Color a, Color b);

// Undirected colored link, stored with a < b.
struct Link {
    int a;
    int b;
    Color color;

    Link(int a_, int b_, Color c);
    bool operator==(const Link&) const = default;
    bool operator<(const Link& o) const;
};

// A 2-color subgraph component that closes into a cycle. The color pair is the
// complement of the component's link colors; sites are in cyclic boundary order.
struct Face {
    ColorPair colors;
    std::vector<int> sites;
};

// A 3-color subgraph component whose boundary net is 3-valent; colored by the
// missing fourth color.
struct Cell {
    Color color;
    std::vector<int> sites;  // sorted
    std::vector<int> faces;  // face ids, sorted
};

struct Colex {
    int n_sites = 0;
    std::vector<Link> links;  // canonical sorted order
    bool closed = true;
    std::optional<int> first_betti_number;

    // Derived from (n_sites, links) at construction time.
    std::vector<Face> faces;
    std::vector<Cell> cells;

    // neighbor[s][color] = site reached along the color link at s, or -1.
    std::vector<std::array<int, 4>> neighbor;
    // cell_of[s][color] = cell id of that color containing s, or -1.
    std::vector<std::array<int, 4>> cell_of;
    // face ids incident to each site, sorted.
    std::vector<std::vector<int>> faces_at;

    bool structurally_equal(const Colex& other) const;
};

// Builds the derived structure. Malformed inputs (duplicate colors at a site
// and the like) still construct; validate() reports the violations.
Colex make_colex(int n_sites, std::vector<Link> links, bool closed,
                 std::optional<int> first_betti_number = std::nullopt);

// The boundary complex of the 4-cube: sites are 4-bit strings, links join
// strings at Hamming distance 1, link color = flipped bit index.
Colex build_tesseract();

// Closed 3-colex on the 3-torus with period L per axis (L even): sites are the
// tetrahedra of the tetragonal-disphenoid triangulation of the torus, cells the
// lattice points they share, with the cell 4-coloring found by backtracking.
Colex build_torus(int period);

// Removes a site together with its incident links; the 6 faces and 4 cells
// through it disappear from the derived structure. Remaining sites are
// renumbered densely: ids below the removed site are unchanged, ids above
// shift down by one.
Colex puncture(const Colex& colex, int site);

enum class ColexMode { Closed, Punctured };

struct ValidationReport {
    struct Violation {
        std::string axiom;
        std::string witness;
    };

    bool passed = false;
    std::vector<Violation> violations;
    int n_sites = 0;
    int n_links = 0;
    int n_faces = 0;
    int n_cells = 0;
    std::string parity;  // "even" or "odd"

    nlohmann::ordered_json to_json() const;
};

ValidationReport validate(const Colex& colex, ColexMode mode);

void save_colex(const Colex& colex, const std::filesystem::path& path);
// Throws ParseError on malformed files, ValidationError if the loaded complex
// fails the axioms for its declared mode.
Colex load_colex(const std::filesystem::path& path);

Colex colex_from_json(const nlohmann::json& j, const std::string& origin);
nlohmann::ordered_json colex_to_json(const Colex& colex);

}  // namespace colexcode
