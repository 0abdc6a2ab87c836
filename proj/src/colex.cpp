#include "colexcode/colex.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "colexcode/errors.hpp"

namespace colexcode {

char to_char(Color c) {
    switch (c) {
        case Color::R: return 'r';
        case Color::G: return 'g';
        case Color::B: return 'b';
        case Color::Y: return 'y';
    }
    return '?';
}

std::optional<Color> color_from_char(char ch) {
    switch (ch) {
        case 'r': return Color::R;
        case 'g': return Color::G;
        case 'b': return Color::B;
        case 'y': return Color::Y;
        default: return std::nullopt;
    }
}

ColorPair::ColorPair(Color a, Color b) {
    if (a == b) throw std::invalid_argument("ColorPair: colors must differ");
    first = std::min(a, b);
    second = std::max(a, b);
}

std::string ColorPair::to_string() const {
    return std::string{to_char(first), to_char(second)};
}

ColorPair complement_pair(Color a, Color b) {
    if (a == b) throw std::invalid_argument("complement_pair: colors must differ");
    std::array<bool, 4> used{};
    used[static_cast<int>(a)] = used[static_cast<int>(b)] = true;
    std::array<Color, 2> rest{};
    int j = 0;
    for (Color c : kColors)
        if (!used[static_cast<int>(c)]) rest[j++] = c;
    return ColorPair(rest[0], rest[1]);
}

Link::Link(int a_, int b_, Color c) : a(std::min(a_, b_)), b(std::max(a_, b_)), color(c) {}

bool Link::operator<(const Link& o) const {
    return std::tie(a, b, color) < std::tie(o.a, o.b, o.color);
}

namespace {

// Traces the {p,q} 2-color component containing `start` through the per-site
// neighbor table; reports the sites in boundary order and whether the
// component closed into a cycle. Open components are face remnants along a
// puncture boundary and are returned with is_cycle = false.
struct ComponentWalk {
    std::vector<int> sites;
    bool is_cycle = false;
};

ComponentWalk walk_two_color(const std::vector<std::array<int, 4>>& neighbor, int start,
                             Color p, Color q) {
    auto step = [&](int site, Color c) { return neighbor[site][static_cast<int>(c)]; };
    auto toggle = [&](Color c) { return c == p ? q : p; };

    ComponentWalk out;
    Color first = step(start, p) >= 0 ? p : q;

    out.sites.push_back(start);
    int site = start;
    Color use = first;
    std::size_t guard = 2 * neighbor.size() + 4;
    bool open = false;
    for (;;) {
        if (out.sites.size() > guard) return out;  // malformed component
        int nxt = step(site, use);
        if (nxt < 0) {
            open = true;
            break;
        }
        Color arrive_next = toggle(use);
        if (nxt == start) {
            if (arrive_next == first) {
                out.is_cycle = true;
                return out;
            }
            // Arrived back along the link we would have left by; malformed.
            return out;
        }
        out.sites.push_back(nxt);
        site = nxt;
        use = arrive_next;
    }

    if (open) {
        // Walk the other direction from `start` to pick up the rest of the path.
        site = start;
        use = toggle(first);
        std::set<int> seen(out.sites.begin(), out.sites.end());
        for (;;) {
            int nxt = step(site, use);
            if (nxt < 0 || seen.count(nxt)) break;
            out.sites.insert(out.sites.begin(), nxt);
            seen.insert(nxt);
            site = nxt;
            use = toggle(use);
        }
    }
    return out;
}

}  // namespace

Colex make_colex(int n_sites, std::vector<Link> links, bool closed,
                 std::optional<int> first_betti_number) {
    if (n_sites < 0) throw std::invalid_argument("make_colex: negative site count");
    for (const Link& l : links) {
        if (l.a < 0 || l.b >= n_sites)
            throw std::invalid_argument("make_colex: link endpoint out of range");
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());

    Colex cx;
    cx.n_sites = n_sites;
    cx.links = std::move(links);
    cx.closed = closed;
    cx.first_betti_number = first_betti_number;

    cx.neighbor.assign(n_sites, {-1, -1, -1, -1});
    for (const Link& l : cx.links) {
        if (l.a == l.b) continue;  // self loops flagged by validate
        int c = static_cast<int>(l.color);
        // First link of a color wins; duplicates are validation failures.
        if (cx.neighbor[l.a][c] == -1) cx.neighbor[l.a][c] = l.b;
        if (cx.neighbor[l.b][c] == -1) cx.neighbor[l.b][c] = l.a;
    }

    // Faces: cycle components of each 2-color subgraph.
    for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
            std::vector<bool> visited(n_sites, false);
            for (int s = 0; s < n_sites; ++s) {
                if (visited[s]) continue;
                if (cx.neighbor[s][p] < 0 && cx.neighbor[s][q] < 0) {
                    visited[s] = true;
                    continue;
                }
                Color cp = static_cast<Color>(p), cq = static_cast<Color>(q);
                ComponentWalk w = walk_two_color(cx.neighbor, s, cp, cq);
                for (int site : w.sites) visited[site] = true;
                if (w.is_cycle)
                    cx.faces.push_back(Face{complement_pair(cp, cq), w.sites});
            }
        }
    }

    // Cells: components of each 3-color subgraph in which every site carries
    // all three colors.
    for (int missing = 0; missing < 4; ++missing) {
        std::array<int, 3> use{};
        int j = 0;
        for (int c = 0; c < 4; ++c)
            if (c != missing) use[j++] = c;

        std::vector<bool> visited(n_sites, false);
        for (int s = 0; s < n_sites; ++s) {
            if (visited[s]) continue;
            bool touches = false;
            for (int c : use) touches = touches || cx.neighbor[s][c] >= 0;
            if (!touches) {
                visited[s] = true;
                continue;
            }
            std::vector<int> component{s};
            visited[s] = true;
            bool regular = true;
            for (std::size_t head = 0; head < component.size(); ++head) {
                int at = component[head];
                for (int c : use) {
                    int nxt = cx.neighbor[at][c];
                    if (nxt < 0) {
                        regular = false;
                        continue;
                    }
                    if (!visited[nxt]) {
                        visited[nxt] = true;
                        component.push_back(nxt);
                    }
                }
            }
            if (!regular) continue;  // boundary remnant, not a cell
            std::sort(component.begin(), component.end());
            cx.cells.push_back(Cell{static_cast<Color>(missing), std::move(component), {}});
        }
    }

    cx.cell_of.assign(n_sites, {-1, -1, -1, -1});
    for (std::size_t ci = 0; ci < cx.cells.size(); ++ci)
        for (int s : cx.cells[ci].sites)
            cx.cell_of[s][static_cast<int>(cx.cells[ci].color)] = static_cast<int>(ci);

    cx.faces_at.assign(n_sites, {});
    for (std::size_t fi = 0; fi < cx.faces.size(); ++fi) {
        const Face& f = cx.faces[fi];
        for (int s : f.sites) cx.faces_at[s].push_back(static_cast<int>(fi));
        // A face of pair {p,q} lies in the p-cell and the q-cell around it.
        for (Color fc : {f.colors.first, f.colors.second}) {
            int cell = cx.cell_of[f.sites.front()][static_cast<int>(fc)];
            if (cell >= 0) cx.cells[cell].faces.push_back(static_cast<int>(fi));
        }
    }
    for (auto& fs : cx.faces_at) std::sort(fs.begin(), fs.end());
    for (Cell& cell : cx.cells) std::sort(cell.faces.begin(), cell.faces.end());

    return cx;
}

bool Colex::structurally_equal(const Colex& other) const {
    return n_sites == other.n_sites && closed == other.closed &&
           first_betti_number == other.first_betti_number && links == other.links;
}

Colex build_tesseract() {
    std::vector<Link> links;
    for (int x = 0; x < 16; ++x)
        for (int bit = 0; bit < 4; ++bit) {
            int y = x ^ (1 << bit);
            if (x < y) links.emplace_back(x, y, static_cast<Color>(bit));
        }
    return make_colex(16, std::move(links), /*closed=*/true, /*first_betti_number=*/0);
}

namespace {

// Torus builder internals. Sites are the tetrahedra of the tetragonal
// disphenoid triangulation of the 3-torus; lattice points (the future cells)
// carry coordinates mod m = 2L, with both-even and both-odd parity classes.
// Tetrahedra keep unwrapped vertex coordinates: at small periods distinct
// simplices can project onto the same vertex set, so identity questions are
// settled on canonical lifts, never on wrapped ids.
struct Vec3 {
    int x, y, z;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    bool operator<(const Vec3& o) const {
        return std::tie(x, y, z) < std::tie(o.x, o.y, o.z);
    }
    bool operator==(const Vec3& o) const = default;

    int& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    int operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

Vec3 axis_step(int axis, int amount) {
    Vec3 v{0, 0, 0};
    v[axis] = amount;
    return v;
}

struct TorusGrid {
    int m;

    int wrap(int v) const { return ((v % m) + m) % m; }
    Vec3 wrap(Vec3 v) const { return {wrap(v.x), wrap(v.y), wrap(v.z)}; }
    int point_id(Vec3 v) const {
        v = wrap(v);
        return (v.x * m + v.y) * m + v.z;
    }
};

// Canonical representative of a vertex tuple under translations by (mZ)^3:
// shift so the minimum coordinate on each axis lies in [0, m), then sort.
std::vector<Vec3> canonical_lift(std::vector<Vec3> verts, int m) {
    for (int axis = 0; axis < 3; ++axis) {
        int lo = verts[0][axis];
        for (const Vec3& v : verts) lo = std::min(lo, v[axis]);
        // Translate so the minimum coordinate lands in [0, m); the shift is a
        // multiple of m, so this picks one representative per orbit.
        int shift = ((lo % m) + m) % m - lo;
        for (Vec3& v : verts) v[axis] += shift;
    }
    std::sort(verts.begin(), verts.end());
    return verts;
}

// Proper 4-coloring of the point adjacency graph by deterministic backtracking.
std::vector<int> four_color(const std::vector<std::vector<int>>& adj) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> color(n, -1);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return adj[a].size() > adj[b].size(); });

    std::vector<int> choice(n, -1);
    int depth = 0;
    while (depth < n) {
        int v = order[depth];
        int picked = -1;
        for (int c = choice[depth] + 1; c < 4; ++c) {
            bool ok = true;
            for (int u : adj[v])
                if (color[u] == c) {
                    ok = false;
                    break;
                }
            if (ok) {
                picked = c;
                break;
            }
        }
        if (picked >= 0) {
            choice[depth] = picked;
            color[v] = picked;
            ++depth;
        } else {
            choice[depth] = -1;
            color[v] = -1;
            --depth;
            if (depth < 0) throw std::runtime_error("four_color: graph is not 4-colorable");
            color[order[depth]] = -1;
        }
    }
    return color;
}

}  // namespace

Colex build_torus(int period) {
    if (period < 2 || period % 2 != 0)
        throw std::invalid_argument(
            "build_torus: period must be even and >= 2 (cell 4-coloring needs even periods)");
    const TorusGrid grid{2 * period};
    const int m = grid.m;

    // Lattice points, densely indexed in id order.
    std::map<int, int> point_index;
    std::vector<Vec3> points;
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            for (int z = 0; z < m; ++z)
                if (x % 2 == y % 2 && y % 2 == z % 2) {
                    point_index[grid.point_id({x, y, z})] = static_cast<int>(points.size());
                    points.push_back({x, y, z});
                }

    // Tetrahedra: every even-sublattice axis edge (base, base + 2e_i), taken as
    // 3L^3 directed-from-base edges, pairs with 4 perpendicular odd-sublattice
    // edges. Each tetrahedron arises from exactly one such pairing.
    struct Tet {
        std::array<Vec3, 4> verts;  // unwrapped
    };
    std::vector<Tet> tets;
    for (const Vec3& base : points) {
        if (base.x % 2 != 0) continue;
        for (int axis = 0; axis < 3; ++axis) {
            for (int k = 0; k < 3; ++k) {
                if (k == axis) continue;
                int j = 3 - axis - k;
                for (int delta : {-1, 1}) {
                    Vec3 o = base + axis_step(axis, 1) + axis_step(j, delta) + axis_step(k, -1);
                    tets.push_back(
                        Tet{{base, base + axis_step(axis, 2), o, o + axis_step(k, 2)}});
                }
            }
        }
    }

    // Links join tetrahedra sharing a triangle; triangles are keyed by their
    // canonical lift so wrapped coordinates cannot conflate distinct ones.
    struct TriangleUse {
        int tet;
        Vec3 opposite;
    };
    std::map<std::vector<Vec3>, std::vector<TriangleUse>> triangles;
    for (std::size_t t = 0; t < tets.size(); ++t) {
        for (int skip = 0; skip < 4; ++skip) {
            std::vector<Vec3> tri;
            for (int i = 0; i < 4; ++i)
                if (i != skip) tri.push_back(tets[t].verts[i]);
            triangles[canonical_lift(std::move(tri), m)].push_back(
                TriangleUse{static_cast<int>(t), tets[t].verts[skip]});
        }
    }

    // Color the lattice points so that points joined by a triangulation edge
    // (axis step of 2 or diagonal step (+-1,+-1,+-1)) differ.
    std::vector<std::vector<int>> adj(points.size());
    auto add_adj = [&](int a, int b) {
        if (a == b) return;
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vec3& c = points[i];
        for (int axis = 0; axis < 3; ++axis)
            add_adj(static_cast<int>(i), point_index.at(grid.point_id(c + axis_step(axis, 2))));
        if (c.x % 2 == 0)
            for (int dx : {-1, 1})
                for (int dy : {-1, 1})
                    for (int dz : {-1, 1})
                        add_adj(static_cast<int>(i),
                                point_index.at(grid.point_id(c + Vec3{dx, dy, dz})));
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    const std::vector<int> point_color = four_color(adj);
    auto color_at = [&](const Vec3& v) { return point_color[point_index.at(grid.point_id(v))]; };

    std::vector<Link> links;
    for (const auto& [tri, owners] : triangles) {
        if (owners.size() != 2)
            throw std::runtime_error("build_torus: triangle not shared by exactly two tets");
        int c0 = color_at(owners[0].opposite);
        int c1 = color_at(owners[1].opposite);
        if (c0 != c1)
            throw std::runtime_error("build_torus: opposite vertices disagree on color");
        links.emplace_back(owners[0].tet, owners[1].tet, static_cast<Color>(c0));
    }

    Colex cx = make_colex(static_cast<int>(tets.size()), std::move(links), /*closed=*/true,
                          /*first_betti_number=*/3);
    ValidationReport report = validate(cx, ColexMode::Closed);
    if (!report.passed)
        throw std::runtime_error("build_torus: constructed complex failed validation: " +
                                 report.violations.front().axiom);
    return cx;
}

Colex puncture(const Colex& colex, int site) {
    if (site < 0 || site >= colex.n_sites)
        throw std::invalid_argument("puncture: site id out of range");
    if (!colex.closed) throw std::invalid_argument("puncture: colex must be closed");

    std::vector<Link> links;
    links.reserve(colex.links.size());
    auto remap = [site](int s) { return s > site ? s - 1 : s; };
    for (const Link& l : colex.links) {
        if (l.a == site || l.b == site) continue;
        links.emplace_back(remap(l.a), remap(l.b), l.color);
    }
    return make_colex(colex.n_sites - 1, std::move(links), /*closed=*/false);
}

ValidationReport validate(const Colex& colex, ColexMode mode) {
    ValidationReport rep;
    rep.n_sites = colex.n_sites;
    rep.n_links = static_cast<int>(colex.links.size());
    rep.n_faces = static_cast<int>(colex.faces.size());
    rep.n_cells = static_cast<int>(colex.cells.size());
    rep.parity = colex.n_sites % 2 == 0 ? "even" : "odd";

    auto fail = [&rep](std::string axiom, std::string witness) {
        rep.violations.push_back({std::move(axiom), std::move(witness)});
    };

    std::vector<std::array<int, 4>> color_count(colex.n_sites, {0, 0, 0, 0});
    std::vector<int> degree(colex.n_sites, 0);
    for (const Link& l : colex.links) {
        if (l.a == l.b) {
            fail("no self links", "site " + std::to_string(l.a));
            continue;
        }
        degree[l.a]++;
        degree[l.b]++;
        color_count[l.a][static_cast<int>(l.color)]++;
        color_count[l.b][static_cast<int>(l.color)]++;
    }

    int degree3 = 0;
    std::array<int, 4> missing_color_count{0, 0, 0, 0};
    for (int s = 0; s < colex.n_sites; ++s) {
        for (int c = 0; c < 4; ++c) {
            if (color_count[s][c] > 1)
                fail("distinct link colors at site",
                     "site " + std::to_string(s) + " has " + std::to_string(color_count[s][c]) +
                         " links of color " + std::string(1, to_char(static_cast<Color>(c))));
        }
        if (mode == ColexMode::Closed) {
            if (degree[s] != 4)
                fail("coordination number 4",
                     "site " + std::to_string(s) + " has degree " + std::to_string(degree[s]));
        } else {
            if (degree[s] != 4 && degree[s] != 3)
                fail("punctured degrees in {3,4}",
                     "site " + std::to_string(s) + " has degree " + std::to_string(degree[s]));
            if (degree[s] == 3) {
                ++degree3;
                for (int c = 0; c < 4; ++c)
                    if (color_count[s][c] == 0) missing_color_count[c]++;
            }
        }
    }

    if (mode == ColexMode::Punctured) {
        if (degree3 != 4)
            fail("exactly four boundary sites",
                 "found " + std::to_string(degree3) + " sites of degree 3");
        else
            for (int c = 0; c < 4; ++c)
                if (missing_color_count[c] != 1)
                    fail("boundary misses each color once",
                         "color " + std::string(1, to_char(static_cast<Color>(c))) +
                             " missing at " + std::to_string(missing_color_count[c]) +
                             " boundary sites");
        if (colex.n_sites % 2 != 1)
            fail("odd site count after puncture", std::to_string(colex.n_sites) + " sites");
    } else {
        if (colex.n_sites % 2 != 0)
            fail("even number of sites", std::to_string(colex.n_sites) + " sites");
    }

    for (const Face& f : colex.faces) {
        if (f.sites.size() % 2 != 0)
            fail("faces are even cycles", "face of size " + std::to_string(f.sites.size()));
    }

    if (mode == ColexMode::Closed) {
        // Every link lies in one face per color pair containing its color.
        std::map<std::pair<int, int>, int> link_face_count;
        for (const Face& f : colex.faces) {
            const int len = static_cast<int>(f.sites.size());
            for (int i = 0; i < len; ++i) {
                int a = f.sites[i], b = f.sites[(i + 1) % len];
                link_face_count[{std::min(a, b), std::max(a, b)}]++;
            }
        }
        for (const Link& l : colex.links) {
            auto it = link_face_count.find({l.a, l.b});
            int count = it == link_face_count.end() ? 0 : it->second;
            if (count != 3)
                fail("every link lies in 3 faces", "link (" + std::to_string(l.a) + "," +
                                                       std::to_string(l.b) + ") lies in " +
                                                       std::to_string(count));
        }

        std::vector<int> face_cell_count(colex.faces.size(), 0);
        for (const Cell& cell : colex.cells)
            for (int f : cell.faces) face_cell_count[f]++;
        for (std::size_t f = 0; f < colex.faces.size(); ++f)
            if (face_cell_count[f] != 2)
                fail("every face lies between 2 cells",
                     "face " + std::to_string(f) + " lies in " +
                         std::to_string(face_cell_count[f]) + " cells");
    }

    rep.passed = rep.violations.empty();
    return rep;
}

nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["passed"] = passed;
    j["violations"] = nlohmann::ordered_json::array();
    for (const Violation& v : violations)
        j["violations"].push_back({{"axiom", v.axiom}, {"witness", v.witness}});
    j["counts"] = {{"sites", n_sites}, {"links", n_links}, {"faces", n_faces}, {"cells", n_cells}};
    j["parity"] = parity;
    return j;
}

nlohmann::ordered_json colex_to_json(const Colex& colex) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["n_sites"] = colex.n_sites;
    auto links = nlohmann::ordered_json::array();
    for (const Link& l : colex.links)
        links.push_back({l.a, l.b, std::string(1, to_char(l.color))});
    j["links"] = std::move(links);
    j["closed"] = colex.closed;
    if (colex.first_betti_number) j["first_betti_number"] = *colex.first_betti_number;
    return j;
}

Colex colex_from_json(const nlohmann::json& j, const std::string& origin) {
    auto require = [&](const char* field) {
        if (!j.contains(field)) throw ParseError(origin + ": missing field '" + field + "'");
    };
    require("version");
    require("n_sites");
    require("links");
    require("closed");
    if (!j["version"].is_number_integer() || j["version"].get<int>() != 1)
        throw ParseError(origin + ": unsupported version");
    if (!j["n_sites"].is_number_integer() || j["n_sites"].get<int>() < 0)
        throw ParseError(origin + ": field 'n_sites' must be a nonnegative integer");
    if (!j["closed"].is_boolean()) throw ParseError(origin + ": field 'closed' must be boolean");
    if (!j["links"].is_array()) throw ParseError(origin + ": field 'links' must be an array");

    const int n = j["n_sites"].get<int>();
    std::vector<Link> links;
    int index = 0;
    for (const auto& entry : j["links"]) {
        std::string where = origin + ": links[" + std::to_string(index++) + "]";
        if (!entry.is_array() || entry.size() != 3)
            throw ParseError(where + " must be [site, site, color]");
        if (!entry[0].is_number_integer() || !entry[1].is_number_integer())
            throw ParseError(where + " endpoints must be integers");
        int a = entry[0].get<int>(), b = entry[1].get<int>();
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw ParseError(where + " endpoint out of range");
        if (!entry[2].is_string() || entry[2].get<std::string>().size() != 1)
            throw ParseError(where + " color must be one of \"r\",\"g\",\"b\",\"y\"");
        auto color = color_from_char(entry[2].get<std::string>()[0]);
        if (!color)
            throw ParseError(where + " unknown color token \"" + entry[2].get<std::string>() +
                             "\"");
        links.emplace_back(a, b, *color);
    }

    std::optional<int> betti;
    if (j.contains("first_betti_number")) {
        if (!j["first_betti_number"].is_number_integer())
            throw ParseError(origin + ": field 'first_betti_number' must be an integer");
        betti = j["first_betti_number"].get<int>();
    }

    Colex cx = make_colex(n, std::move(links), j["closed"].get<bool>(), betti);
    ValidationReport rep = validate(cx, cx.closed ? ColexMode::Closed : ColexMode::Punctured);
    if (!rep.passed)
        throw ValidationError(origin + ": " + rep.violations.front().axiom + " (" +
                              rep.violations.front().witness + ")");
    return cx;
}

void save_colex(const Colex& colex, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    out << colex_to_json(colex).dump(2) << "\n";
}

Colex load_colex(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return colex_from_json(j, path.string());
}

}  // namespace colexcode
