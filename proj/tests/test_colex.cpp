#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "colexcode/colex.hpp"
#include "colexcode/errors.hpp"

using namespace colexcode;

namespace {

// Independent oracle for face/cell counts: connected components of color
// subgraphs computed from scratch on plain adjacency sets.
int count_components(int n_sites, const std::vector<Link>& links, const std::set<int>& colors) {
    std::map<int, std::vector<int>> adj;
    std::set<int> active;
    for (const Link& l : links) {
        if (!colors.count(static_cast<int>(l.color))) continue;
        adj[l.a].push_back(l.b);
        adj[l.b].push_back(l.a);
        active.insert(l.a);
        active.insert(l.b);
    }
    std::set<int> visited;
    int components = 0;
    for (int s : active) {
        if (visited.count(s)) continue;
        ++components;
        std::vector<int> stack{s};
        visited.insert(s);
        while (!stack.empty()) {
            int at = stack.back();
            stack.pop_back();
            for (int nxt : adj[at])
                if (!visited.count(nxt)) {
                    visited.insert(nxt);
                    stack.push_back(nxt);
                }
        }
    }
    (void)n_sites;
    return components;
}

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("tesseract counts: 16 sites, 32 links, 24 faces, 8 cells") {
    Colex cx = build_tesseract();
    CHECK(cx.n_sites == 16);
    CHECK(cx.links.size() == 32);
    CHECK(cx.faces.size() == 24);
    CHECK(cx.cells.size() == 8);
    CHECK(cx.first_betti_number == 0);

    // Oracle: enumerate the 2-color and 3-color subgraph components directly.
    int face_components = 0;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q)
            face_components += count_components(cx.n_sites, cx.links, {p, q});
    CHECK(face_components == 24);
    int cell_components = 0;
    for (int missing = 0; missing < 4; ++missing) {
        std::set<int> colors{0, 1, 2, 3};
        colors.erase(missing);
        cell_components += count_components(cx.n_sites, cx.links, colors);
    }
    CHECK(cell_components == 8);
}

TEST_CASE("tesseract face and cell sizes: multiples of four and eight") {
    Colex cx = build_tesseract();
    for (const Face& f : cx.faces) CHECK(f.sites.size() == 4);
    for (const Cell& c : cx.cells) CHECK(c.sites.size() == 8);
}

TEST_CASE("tesseract passes closed validation") {
    ValidationReport rep = validate(build_tesseract(), ColexMode::Closed);
    CHECK(rep.passed);
    CHECK(rep.parity == "even");
    CHECK(rep.violations.empty());
}

TEST_CASE("per-site color incidence and face/cell partition invariants") {
    for (const Colex& cx : {build_tesseract(), build_torus(2)}) {
        for (int s = 0; s < cx.n_sites; ++s)
            for (int c = 0; c < 4; ++c) CHECK(cx.neighbor[s][c] >= 0);

        // Every link lies in exactly 3 faces.
        std::map<std::pair<int, int>, int> link_faces;
        for (const Face& f : cx.faces)
            for (std::size_t i = 0; i < f.sites.size(); ++i) {
                int a = f.sites[i], b = f.sites[(i + 1) % f.sites.size()];
                link_faces[{std::min(a, b), std::max(a, b)}]++;
            }
        for (const Link& l : cx.links) CHECK(link_faces[{l.a, l.b}] == 3);

        // Every face lies in exactly 2 cells.
        std::vector<int> face_cells(cx.faces.size(), 0);
        for (const Cell& c : cx.cells)
            for (int f : c.faces) face_cells[f]++;
        for (int count : face_cells) CHECK(count == 2);
    }
}

TEST_CASE("recolored link breaks the distinct-colors axiom") {
    Colex cx = build_tesseract();
    std::vector<Link> links = cx.links;
    // Recolor one link to collide with another color at its endpoints.
    for (Link& l : links) {
        if (l.color == Color::R) {
            l = Link(l.a, l.b, Color::G);
            break;
        }
    }
    Colex bad = make_colex(16, links, true, 0);
    ValidationReport rep = validate(bad, ColexMode::Closed);
    CHECK_FALSE(rep.passed);
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.axiom == "distinct link colors at site") found = true;
    CHECK(found);
}

TEST_CASE("puncture removes 1 site, 4 links, 6 faces, 4 cells at every site") {
    Colex cx = build_tesseract();
    for (int site = 0; site < cx.n_sites; ++site) {
        Colex p = puncture(cx, site);
        CHECK(p.n_sites == 15);
        CHECK(p.links.size() == 28);
        CHECK(p.faces.size() == 18);
        CHECK(p.cells.size() == 4);
        CHECK_FALSE(p.closed);
        for (const Cell& c : p.cells) CHECK(c.sites.size() == 8);
    }
}

TEST_CASE("punctured tesseract validates with odd parity") {
    Colex p = puncture(build_tesseract(), 0);
    ValidationReport rep = validate(p, ColexMode::Punctured);
    CHECK(rep.passed);
    CHECK(rep.parity == "odd");
}

TEST_CASE("puncture bookkeeping holds on the torus too") {
    Colex t = build_torus(2);
    Colex p = puncture(t, 17);
    CHECK(p.n_sites == t.n_sites - 1);
    CHECK(p.links.size() == t.links.size() - 4);
    CHECK(p.faces.size() == t.faces.size() - 6);
    CHECK(p.cells.size() == t.cells.size() - 4);
    CHECK(validate(p, ColexMode::Punctured).passed);
}

TEST_CASE("puncture argument errors") {
    Colex cx = build_tesseract();
    CHECK_THROWS_AS(puncture(cx, -1), std::invalid_argument);
    CHECK_THROWS_AS(puncture(cx, 16), std::invalid_argument);
    Colex p = puncture(cx, 3);
    CHECK_THROWS_AS(puncture(p, 0), std::invalid_argument);
}

TEST_CASE("torus L=2: closed, even, validates") {
    Colex t = build_torus(2);
    CHECK(t.n_sites == 96);
    CHECK(t.n_sites % 2 == 0);
    CHECK(t.links.size() == 192);
    CHECK(t.faces.size() == 112);
    CHECK(t.cells.size() == 16);
    CHECK(t.first_betti_number == 3);
    CHECK(validate(t, ColexMode::Closed).passed);
}

TEST_CASE("torus rejects odd or tiny periods") {
    CHECK_THROWS_AS(build_torus(3), std::invalid_argument);
    CHECK_THROWS_AS(build_torus(1), std::invalid_argument);
    CHECK_THROWS_AS(build_torus(0), std::invalid_argument);
}

TEST_CASE("save/load round-trips the builders") {
    auto path = temp_file("colexcode_roundtrip.json");
    for (const Colex& cx : {build_tesseract(), puncture(build_tesseract(), 5), build_torus(2)}) {
        save_colex(cx, path);
        Colex loaded = load_colex(path);
        CHECK(loaded.structurally_equal(cx));
        CHECK(loaded.faces.size() == cx.faces.size());
        CHECK(loaded.cells.size() == cx.cells.size());
    }
    std::filesystem::remove(path);
}

TEST_CASE("loader rejects unknown color tokens as parse errors") {
    auto path = temp_file("colexcode_badcolor.json");
    {
        std::ofstream out(path);
        out << R"({"version":1,"n_sites":2,"links":[[0,1,"q"]],"closed":true})";
    }
    CHECK_THROWS_AS(load_colex(path), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("loader rejects malformed JSON as parse errors") {
    auto path = temp_file("colexcode_malformed.json");
    {
        std::ofstream out(path);
        out << "{\"version\":1,";
    }
    CHECK_THROWS_AS(load_colex(path), ParseError);
    std::filesystem::remove(path);
}

TEST_CASE("loader rejects a degree-5 site as a validation error") {
    Colex cx = build_tesseract();
    nlohmann::ordered_json j = colex_to_json(cx);
    // Append a fifth link at site 0 (duplicate color there).
    j["n_sites"] = 17;
    j["links"].push_back({0, 16, "r"});
    auto path = temp_file("colexcode_degree5.json");
    {
        std::ofstream out(path);
        out << j.dump();
    }
    CHECK_THROWS_AS(load_colex(path), ValidationError);
    std::filesystem::remove(path);
}

TEST_CASE("validation report serializes") {
    ValidationReport rep = validate(build_tesseract(), ColexMode::Closed);
    auto j = rep.to_json();
    CHECK(j["passed"] == true);
    CHECK(j["counts"]["sites"] == 16);
    CHECK(j["parity"] == "even");
}
