#include "colexcode/nets.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "colexcode/errors.hpp"

namespace colexcode {

using gf2::BitMatrix;
using gf2::BitVector;
using gf2::Echelon;

PauliOp string_operator(const Colex& colex, const ColorString& s) {
    BitVector support(colex.n_sites);
    for (int id : s.link_ids) {
        if (id < 0 || id >= static_cast<int>(colex.links.size()))
            throw std::invalid_argument("string_operator: link id out of range");
        const Link& l = colex.links[id];
        if (l.color != s.color)
            throw std::invalid_argument("string_operator: link " + std::to_string(id) +
                                        " is not " + std::string(1, to_char(s.color)) +
                                        "-colored");
        support.flip(l.a);
        support.flip(l.b);
    }
    return PauliOp::from_bits(PauliKind::Z, std::move(support));
}

PauliOp membrane_operator(const Colex& colex, const Membrane& m) {
    BitVector support(colex.n_sites);
    for (int id : m.face_ids) {
        if (id < 0 || id >= static_cast<int>(colex.faces.size()))
            throw std::invalid_argument("membrane_operator: face id out of range");
        const Face& f = colex.faces[id];
        if (!(f.colors == m.colors))
            throw std::invalid_argument("membrane_operator: face " + std::to_string(id) +
                                        " is not a " + m.colors.to_string() + "-face");
        for (int s : f.sites) support.flip(s);
    }
    return PauliOp::from_bits(PauliKind::X, std::move(support));
}

std::vector<int> endpoints(const Colex& colex, const ColorString& s) {
    const int q = static_cast<int>(s.color);
    std::map<int, int> incidence;
    for (int id : s.link_ids) {
        if (id < 0 || id >= static_cast<int>(colex.links.size()))
            throw std::invalid_argument("endpoints: link id out of range");
        const Link& l = colex.links[id];
        if (l.color != s.color) throw std::invalid_argument("endpoints: wrong-color link");
        for (int site : {l.a, l.b}) {
            int cell = colex.cell_of[site][q];
            if (cell >= 0) incidence[cell] ^= 1;
        }
    }
    std::vector<int> out;
    for (const auto& [cell, parity] : incidence)
        if (parity) out.push_back(cell);
    return out;
}

namespace {

// --- closed-string machinery -------------------------------------------------

// Per-color view of the cell graph: nodes are q-cells, edges are q-links.
struct CellGraph {
    std::vector<int> nodes;                        // cell ids of color q
    std::map<int, int> node_index;                 // cell id -> dense index
    std::vector<int> link_ids;                     // q-link ids
    std::vector<std::pair<int, int>> link_cells;   // dense endpoints per link
};

CellGraph build_cell_graph(const Colex& colex, Color color) {
    CellGraph g;
    for (std::size_t c = 0; c < colex.cells.size(); ++c)
        if (colex.cells[c].color == color) {
            g.node_index[static_cast<int>(c)] = static_cast<int>(g.nodes.size());
            g.nodes.push_back(static_cast<int>(c));
        }
    const int q = static_cast<int>(color);
    for (std::size_t l = 0; l < colex.links.size(); ++l) {
        if (colex.links[l].color != color) continue;
        int ca = colex.cell_of[colex.links[l].a][q];
        int cb = colex.cell_of[colex.links[l].b][q];
        if (ca < 0 || cb < 0) continue;  // boundary link of a punctured colex
        g.link_ids.push_back(static_cast<int>(l));
        g.link_cells.emplace_back(g.node_index.at(ca), g.node_index.at(cb));
    }
    return g;
}

// Fundamental cycles of a BFS spanning forest, as q-link id sets.
std::vector<std::vector<int>> fundamental_cycles(const CellGraph& g) {
    const int n = static_cast<int>(g.nodes.size());
    std::vector<int> parent(n, -1), parent_edge(n, -1), depth(n, 0);
    std::vector<bool> visited(n, false);
    std::vector<bool> tree_edge(g.link_ids.size(), false);

    for (int root = 0; root < n; ++root) {
        if (visited[root]) continue;
        visited[root] = true;
        std::queue<int> frontier;
        frontier.push(root);
        while (!frontier.empty()) {
            int at = frontier.front();
            frontier.pop();
            for (std::size_t e = 0; e < g.link_cells.size(); ++e) {
                auto [a, b] = g.link_cells[e];
                int other = -1;
                if (a == at) other = b;
                if (b == at) other = a;
                if (other < 0 || visited[other]) continue;
                visited[other] = true;
                parent[other] = at;
                parent_edge[other] = static_cast<int>(e);
                depth[other] = depth[at] + 1;
                tree_edge[e] = true;
                frontier.push(other);
            }
        }
    }

    std::vector<std::vector<int>> cycles;
    for (std::size_t e = 0; e < g.link_cells.size(); ++e) {
        if (tree_edge[e]) continue;
        auto [a, b] = g.link_cells[e];
        std::set<int> edge_set{g.link_ids[e]};
        // Walk both endpoints to their common ancestor.
        int u = a, v = b;
        auto lift = [&](int& node) {
            edge_set.insert(g.link_ids[parent_edge[node]]);
            node = parent[node];
        };
        while (depth[u] > depth[v]) lift(u);
        while (depth[v] > depth[u]) lift(v);
        while (u != v) {
            lift(u);
            lift(v);
        }
        if (a == b) edge_set = {g.link_ids[e]};  // self loop in the cell graph
        cycles.emplace_back(edge_set.begin(), edge_set.end());
    }
    return cycles;
}

// Nontrivial string classes of one color: greedily collected fundamental
// cycles whose operators lie outside the Z-stabilizer span, with canonical
// class representatives for quotient arithmetic.
struct StringClassBasis {
    std::vector<BitVector> class_reps;
    std::vector<std::vector<int>> links;
};

StringClassBasis string_classes(const Colex& colex, Color color, const Echelon& hz_span) {
    StringClassBasis basis;
    Echelon quotient_span;
    CellGraph g = build_cell_graph(colex, color);
    for (const std::vector<int>& cycle : fundamental_cycles(g)) {
        ColorString s{color, cycle};
        BitVector rep = hz_span.reduce(string_operator(colex, s).z_support);
        if (!rep.any()) continue;
        if (quotient_span.add(rep)) {
            basis.class_reps.push_back(rep);
            basis.links.push_back(cycle);
        }
    }
    return basis;
}

std::vector<int> xor_link_sets(const std::vector<int>& a, const std::vector<int>& b) {
    std::set<int> acc(a.begin(), a.end());
    for (int id : b) {
        auto [it, inserted] = acc.insert(id);
        if (!inserted) acc.erase(it);
    }
    return {acc.begin(), acc.end()};
}

}  // namespace

std::optional<ColorString> find_nontrivial_closed_string(const CssCode& code, const Colex& colex,
                                                         Color color) {
    Echelon hz_span(code.hz);
    CellGraph g = build_cell_graph(colex, color);
    for (const std::vector<int>& cycle : fundamental_cycles(g)) {
        ColorString s{color, cycle};
        if (hz_span.reduce(string_operator(colex, s).z_support).any()) return s;
    }
    return std::nullopt;
}

std::optional<Membrane> find_closed_membrane(const CssCode& code, const Colex& colex,
                                             ColorPair colors) {
    std::vector<int> candidates;
    for (std::size_t f = 0; f < colex.faces.size(); ++f)
        if (colex.faces[f].colors == colors) candidates.push_back(static_cast<int>(f));
    if (candidates.empty()) return std::nullopt;

    // Subsets whose combined support commutes with every face operator are the
    // kernel of the face-overlap matrix.
    BitMatrix overlap(0, candidates.size());
    for (std::size_t f = 0; f < code.hz.rows(); ++f) {
        BitVector row(candidates.size());
        for (std::size_t j = 0; j < candidates.size(); ++j)
            if (code.hz.row(f).dot(code.hz.row(candidates[j]))) row.set(j);
        overlap.append_row(std::move(row));
    }
    BitMatrix kernel = gf2::kernel_basis(overlap);

    Echelon hx_span(code.hx);
    std::optional<Membrane> fallback;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        if (!kernel.row(r).any()) continue;
        Membrane m{colors, {}};
        for (std::size_t j : kernel.row(r).ones()) m.face_ids.push_back(candidates[j]);
        PauliOp op = membrane_operator(colex, m);
        if (!op.x_support.any()) continue;  // faces cancelled pairwise
        if (!fallback) fallback = m;
        // Prefer a membrane that is a logical rather than a stabilizer product.
        if (!hx_span.contains(op.x_support)) return m;
    }
    return fallback;
}

PairCrossing crossing_check(const Colex& colex, const ColorString& s, const Membrane& m) {
    PauliOp bs = string_operator(colex, s);
    PauliOp bm = membrane_operator(colex, m);
    PairCrossing out;
    out.commute = commutes(bs, bm);
    out.overlap_even = ((bs.z_support & bm.x_support).weight() % 2) == 0;
    out.colors_disjoint = !m.colors.contains(s.color);
    return out;
}

CrossingReport crossing_anticommutation_check(const Colex& colex, const CssCode& code) {
    CrossingReport rep;
    rep.disjoint_colors_always_commute = true;
    rep.overlap_parity_matches_commutation = true;
    rep.deformation_preserves_commutation = true;

    // Systematic sample: a couple of single-link strings per color and a
    // couple of single-face membranes per pair, plus one two-element variant
    // of each.
    std::vector<ColorString> strings;
    for (Color c : kColors) {
        std::vector<int> of_color;
        for (std::size_t l = 0; l < colex.links.size(); ++l)
            if (colex.links[l].color == c) of_color.push_back(static_cast<int>(l));
        for (std::size_t i = 0; i < of_color.size() && i < 3; ++i)
            strings.push_back(ColorString{c, {of_color[i]}});
        if (of_color.size() >= 2) strings.push_back(ColorString{c, {of_color[0], of_color[1]}});
    }
    std::vector<Membrane> membranes;
    for (int p = 0; p < 4; ++p)
        for (int q = p + 1; q < 4; ++q) {
            ColorPair pair(static_cast<Color>(p), static_cast<Color>(q));
            std::vector<int> of_pair;
            for (std::size_t f = 0; f < colex.faces.size(); ++f)
                if (colex.faces[f].colors == pair) of_pair.push_back(static_cast<int>(f));
            for (std::size_t i = 0; i < of_pair.size() && i < 3; ++i)
                membranes.push_back(Membrane{pair, {of_pair[i]}});
            if (of_pair.size() >= 2)
                membranes.push_back(Membrane{pair, {of_pair[0], of_pair[1]}});
        }

    for (const ColorString& s : strings) {
        for (const Membrane& m : membranes) {
            PairCrossing pc = crossing_check(colex, s, m);
            if (pc.commute != pc.overlap_even) rep.overlap_parity_matches_commutation = false;
            if (pc.colors_disjoint) {
                ++rep.disjoint_pairs_checked;
                if (!pc.commute) rep.disjoint_colors_always_commute = false;
            } else if (!pc.commute) {
                rep.found_shared_color_anticommuting_pair = true;
            }
        }
    }

    // Deforming a string by a face boundary keeps its syndrome, and keeps its
    // commutation with operators that commute with the stabilizer group; we
    // use a closed membrane as the probe when one exists.
    std::optional<Membrane> closed;
    for (int p = 0; p < 4 && !closed; ++p)
        for (int q = p + 1; q < 4 && !closed; ++q)
            closed = find_closed_membrane(code, colex,
                                          ColorPair(static_cast<Color>(p), static_cast<Color>(q)));
    std::optional<PauliOp> probe;
    if (closed) probe = membrane_operator(colex, *closed);

    for (std::size_t i = 0; i < strings.size() && i < 4; ++i) {
        PauliOp bs = string_operator(colex, strings[i]);
        for (std::size_t f = 0; f < code.hz.rows() && f < 6; ++f) {
            PauliOp deformed = multiply(bs, code.z_stabilizer(static_cast<int>(f)));
            if (!(syndrome(code, deformed) == syndrome(code, bs)))
                rep.deformation_preserves_commutation = false;
            if (probe && commutes(deformed, *probe) != commutes(bs, *probe))
                rep.deformation_preserves_commutation = false;
        }
    }
    return rep;
}

ColorCombinationReport color_combination_check(const CssCode& code, const Colex& colex) {
    ColorCombinationReport rep;
    Echelon hz_span(code.hz);

    std::array<StringClassBasis, 4> bases;
    for (Color c : kColors) {
        bases[static_cast<int>(c)] = string_classes(colex, c, hz_span);
        rep.string_class_rank[static_cast<int>(c)] =
            static_cast<int>(bases[static_cast<int>(c)].class_reps.size());
    }

    // Rank of the r, g, b classes together in the logical quotient.
    Echelon rgb_span;
    struct Generator {
        int color;
        int index;
    };
    std::vector<Generator> generators;
    std::vector<BitVector> gen_reps;
    for (int c : {0, 1, 2}) {
        for (std::size_t i = 0; i < bases[c].class_reps.size(); ++i) {
            rgb_span.add(bases[c].class_reps[i]);
            generators.push_back({c, static_cast<int>(i)});
            gen_reps.push_back(bases[c].class_reps[i]);
        }
    }
    rep.rank_rgb = static_cast<int>(rgb_span.rank());

    if (bases[3].class_reps.empty()) return rep;  // no nontrivial y-string found

    // Express the first y class over the r/g/b generators: Gaussian
    // elimination with combination tracking.
    const std::size_t g = generators.size();
    std::vector<BitVector> rows = gen_reps;
    std::vector<BitVector> combos;
    for (std::size_t i = 0; i < g; ++i) {
        BitVector c(g);
        c.set(i);
        combos.push_back(c);
    }
    // Forward elimination into an echelon list.
    std::vector<std::size_t> pivots;
    std::vector<BitVector> ech_rows, ech_combos;
    for (std::size_t i = 0; i < g; ++i) {
        BitVector v = rows[i], comb = combos[i];
        for (std::size_t e = 0; e < ech_rows.size(); ++e)
            if (v.get(pivots[e])) {
                v ^= ech_rows[e];
                comb ^= ech_combos[e];
            }
        if (!v.any()) continue;
        pivots.push_back(v.ones().front());
        ech_rows.push_back(v);
        ech_combos.push_back(comb);
    }
    BitVector target = bases[3].class_reps.front();
    BitVector target_combo(g);
    for (std::size_t e = 0; e < ech_rows.size(); ++e)
        if (target.get(pivots[e])) {
            target ^= ech_rows[e];
            target_combo ^= ech_combos[e];
        }
    if (target.any()) return rep;  // y class not in the rgb span

    // Assemble the per-color strings from the selected generators.
    std::array<std::vector<int>, 3> color_links;
    std::array<BitVector, 3> color_class{BitVector(code.n), BitVector(code.n), BitVector(code.n)};
    for (std::size_t j : target_combo.ones()) {
        const Generator& gen = generators[j];
        color_links[gen.color] =
            xor_link_sets(color_links[gen.color], bases[gen.color].links[gen.index]);
        color_class[gen.color] ^= bases[gen.color].class_reps[gen.index];
    }
    rep.y_components_all_nontrivial =
        color_class[0].any() && color_class[1].any() && color_class[2].any();

    ColorString sr{Color::R, color_links[0]}, sg{Color::G, color_links[1]},
        sb{Color::B, color_links[2]};
    ColorString sy{Color::Y, bases[3].links.front()};
    PauliOp product = multiply(multiply(string_operator(colex, sr), string_operator(colex, sg)),
                               string_operator(colex, sb));
    rep.rgb_product_equals_y = equivalent_mod_stabilizers(code, product, string_operator(colex, sy));

    PauliOp square = multiply(string_operator(colex, sr), string_operator(colex, sr));
    rep.single_color_square_trivial = square.is_identity() && square.phase == 0;
    return rep;
}

StringNet tetra_string_net(const CssCode& code, const Colex& colex) {
    if (colex.closed)
        throw std::invalid_argument("tetra_string_net: requires a punctured colex");
    if (code.k != 1 || code.logical_x.empty())
        throw std::invalid_argument("tetra_string_net: requires k = 1");

    // Prefer interior branch sites, where all four colored strings are
    // nonempty and genuinely meet at the branch; boundary-adjacent sites give
    // degenerate nets and are tried last.
    std::vector<int> candidates;
    for (int pass = 0; pass < 2; ++pass)
        for (int s = 0; s < colex.n_sites; ++s) {
            bool interior = true;
            for (int q = 0; q < 4; ++q) interior = interior && colex.cell_of[s][q] >= 0;
            if ((pass == 0) == interior) candidates.push_back(s);
        }

    for (int branch : candidates) {
        std::array<std::vector<int>, 4> paths;
        std::set<int> net_sites{branch};
        bool feasible = true;

        for (int q = 0; q < 4 && feasible; ++q) {
            if (colex.cell_of[branch][q] < 0) continue;  // already in the missing-q region

            // First hop: the branch site's q-link.
            int far = colex.neighbor[branch][q];
            if (far < 0) {
                feasible = false;
                break;
            }
            int first_link = -1;
            for (std::size_t l = 0; l < colex.links.size(); ++l) {
                const Link& lk = colex.links[l];
                if (lk.color == static_cast<Color>(q) &&
                    ((lk.a == branch && lk.b == far) || (lk.a == far && lk.b == branch)))
                    first_link = static_cast<int>(l);
            }
            paths[q].push_back(first_link);
            net_sites.insert(branch);
            net_sites.insert(far);
            if (colex.cell_of[far][q] < 0) continue;  // path reaches the missing cell

            // BFS over q-cells until a link exits into the missing-cell region.
            std::map<int, std::pair<int, int>> entered_via;  // cell -> (prev cell, link id)
            std::queue<int> frontier;
            int start_cell = colex.cell_of[far][q];
            entered_via[start_cell] = {-1, first_link};
            frontier.push(start_cell);
            int exit_link = -1, exit_cell = -1;
            while (!frontier.empty() && exit_link < 0) {
                int at = frontier.front();
                frontier.pop();
                for (int site : colex.cells[at].sites) {
                    int other = colex.neighbor[site][q];
                    if (other < 0) continue;
                    int link_id = -1;
                    for (std::size_t l = 0; l < colex.links.size(); ++l) {
                        const Link& lk = colex.links[l];
                        if (lk.color == static_cast<Color>(q) &&
                            ((lk.a == site && lk.b == other) || (lk.a == other && lk.b == site)))
                            link_id = static_cast<int>(l);
                    }
                    int next_cell = colex.cell_of[other][q];
                    if (next_cell == at) continue;  // the link we entered through
                    if (next_cell < 0) {
                        exit_link = link_id;
                        exit_cell = at;
                        break;
                    }
                    if (!entered_via.count(next_cell)) {
                        entered_via[next_cell] = {at, link_id};
                        frontier.push(next_cell);
                    }
                }
            }
            if (exit_link < 0) {
                feasible = false;
                break;
            }
            // Reconstruct the chain of links from start_cell to the exit.
            std::vector<int> chain{exit_link};
            for (int cell = exit_cell; cell != start_cell; cell = entered_via.at(cell).first)
                chain.push_back(entered_via.at(cell).second);
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
                if (*it == first_link) continue;
                paths[q].push_back(*it);
                net_sites.insert(colex.links[*it].a);
                net_sites.insert(colex.links[*it].b);
            }
        }
        if (!feasible) continue;

        BitVector support(colex.n_sites);
        for (int s : net_sites) support.set(s);
        PauliOp op = PauliOp::from_bits(PauliKind::Z, support);
        if (!syndrome(code, op).empty()) continue;
        if (commutes(op, code.logical_x.front())) continue;
        return StringNet{branch, paths, op};
    }
    throw ValidationError("tetra_string_net: no branch site produced a valid string net");
}

MembraneNet tetra_membrane_net(const CssCode& code, const Colex& colex) {
    if (colex.closed)
        throw std::invalid_argument("tetra_membrane_net: requires a punctured colex");
    if (code.k != 1 || code.logical_x.empty())
        throw std::invalid_argument("tetra_membrane_net: requires k = 1");

    for (std::size_t cell = 0; cell < colex.cells.size(); ++cell) {
        std::set<int> region;
        for (int s = 0; s < colex.n_sites; ++s) region.insert(s);
        for (int s : colex.cells[cell].sites) region.erase(s);

        // Union of all faces contained in the complement of the cell.
        std::vector<int> face_ids;
        std::set<int> covered;
        for (std::size_t f = 0; f < colex.faces.size(); ++f) {
            bool inside = true;
            for (int s : colex.faces[f].sites) inside = inside && region.count(s) > 0;
            if (!inside) continue;
            face_ids.push_back(static_cast<int>(f));
            for (int s : colex.faces[f].sites) covered.insert(s);
        }
        if (covered != region) continue;

        BitVector support(colex.n_sites);
        for (int s : region) support.set(s);
        PauliOp op = PauliOp::from_bits(PauliKind::X, support);
        if (!syndrome(code, op).empty()) continue;
        if (!equivalent_mod_stabilizers(code, op, code.logical_x.front())) continue;
        return MembraneNet{face_ids, op};
    }
    throw ValidationError("tetra_membrane_net: no cell complement forms a membrane net");
}

ExcitationReport elementary_excitation_check(const CssCode& code, const Colex& colex) {
    ExcitationReport rep;
    rep.single_z_four_cells_one_per_color = true;
    rep.single_x_six_faces_all_pairs = true;
    rep.fluxes_group_into_four_color_loops = true;

    for (int site = 0; site < colex.n_sites; ++site) {
        ++rep.sites_checked;
        Syndrome sz = syndrome(code, PauliOp::from_support(PauliKind::Z, {site}, code.n));
        if (sz.cell_defects.size() != 4 || !sz.face_defects.empty()) {
            rep.single_z_four_cells_one_per_color = false;
        } else {
            std::set<Color> colors;
            for (int c : sz.cell_defects) colors.insert(colex.cells[c].color);
            if (colors.size() != 4) rep.single_z_four_cells_one_per_color = false;
            for (int q = 0; q < 4; ++q) {
                if (std::find(sz.cell_defects.begin(), sz.cell_defects.end(),
                              colex.cell_of[site][q]) == sz.cell_defects.end())
                    rep.single_z_four_cells_one_per_color = false;
            }
        }

        Syndrome sx = syndrome(code, PauliOp::from_support(PauliKind::X, {site}, code.n));
        if (sx.face_defects.size() != 6 || !sx.cell_defects.empty()) {
            rep.single_x_six_faces_all_pairs = false;
            continue;
        }
        std::set<std::pair<Color, Color>> pairs;
        for (int f : sx.face_defects)
            pairs.insert({colex.faces[f].colors.first, colex.faces[f].colors.second});
        if (pairs.size() != 6) rep.single_x_six_faces_all_pairs = false;

        // Flux grouping: for each color q the three defect faces whose pair
        // contains q all wrap around the site's q-cell.
        for (int q = 0; q < 4; ++q) {
            std::vector<int> with_q;
            for (int f : sx.face_defects)
                if (colex.faces[f].colors.contains(static_cast<Color>(q))) with_q.push_back(f);
            if (with_q.size() != 3) {
                rep.fluxes_group_into_four_color_loops = false;
                continue;
            }
            int qcell = colex.cell_of[site][q];
            if (qcell < 0) {
                rep.fluxes_group_into_four_color_loops = false;
                continue;
            }
            const std::vector<int>& cell_faces = colex.cells[qcell].faces;
            std::set<Color> partners;
            for (int f : with_q) {
                if (!std::binary_search(cell_faces.begin(), cell_faces.end(), f))
                    rep.fluxes_group_into_four_color_loops = false;
                const ColorPair& pc = colex.faces[f].colors;
                partners.insert(pc.first == static_cast<Color>(q) ? pc.second : pc.first);
            }
            if (partners.size() != 3) rep.fluxes_group_into_four_color_loops = false;
        }
    }
    return rep;
}

}  // namespace colexcode
