#include "colexcode/code.hpp"

#include <algorithm>
#include <stdexcept>

#include "colexcode/errors.hpp"

namespace colexcode {

using gf2::BitMatrix;
using gf2::BitVector;
using gf2::Echelon;

PauliOp CssCode::x_stabilizer(int cell) const {
    return PauliOp::from_bits(PauliKind::X, hx.row(cell));
}

PauliOp CssCode::z_stabilizer(int face) const {
    return PauliOp::from_bits(PauliKind::Z, hz.row(face));
}

namespace {

// Coset representatives of ker(stab_kernel_of) modulo rowspace(stab_modulo):
// a basis of the logical classes on one side of a CSS code.
std::vector<BitVector> logical_class_basis(const BitMatrix& kernel_of, const BitMatrix& modulo) {
    Echelon span(modulo);
    std::vector<BitVector> out;
    BitMatrix kernel = gf2::kernel_basis(kernel_of);
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        if (span.add(kernel.row(r))) out.push_back(kernel.row(r));
    }
    return out;
}

// Pair X and Z logical class representatives so that x[i] anticommutes with
// z[j] exactly when i = j (symplectic Gram-Schmidt over GF(2)).
void pair_logicals(std::vector<BitVector>& xs, std::vector<BitVector>& zs) {
    const std::size_t k = xs.size();
    for (std::size_t i = 0; i < k; ++i) {
        // Find a z partner anticommuting with xs[i].
        std::size_t partner = i;
        while (partner < k && !xs[i].dot(zs[partner])) ++partner;
        if (partner == k)
            throw std::logic_error("pair_logicals: degenerate symplectic pairing");
        std::swap(zs[i], zs[partner]);
        for (std::size_t j = 0; j < k; ++j) {
            if (j != i && xs[i].dot(zs[j])) zs[j] ^= zs[i];
            if (j > i && xs[j].dot(zs[i])) xs[j] ^= xs[i];
        }
    }
}

void extract_logicals(CssCode& code) {
    if (code.k == 0) return;
    std::vector<BitVector> zs = logical_class_basis(code.hx, code.hz);
    std::vector<BitVector> xs = logical_class_basis(code.hz, code.hx);
    if (static_cast<int>(zs.size()) != code.k || static_cast<int>(xs.size()) != code.k)
        throw std::logic_error("extract_logicals: class count does not match k");

    // Tetrahedral normal form: with a single encoded qubit and an odd site
    // count, the all-ones X and Z operators are the natural logical pair,
    // provided they commute with the opposite-type generators and are not
    // themselves stabilizers.
    if (code.k == 1 && code.n % 2 == 1) {
        BitVector ones(code.n);
        for (int i = 0; i < code.n; ++i) ones.set(i);
        auto in_kernel = [&](const BitMatrix& m, const BitVector& v) {
            for (std::size_t r = 0; r < m.rows(); ++r)
                if (m.row(r).dot(v)) return false;
            return true;
        };
        Echelon hx_span(code.hx), hz_span(code.hz);
        if (in_kernel(code.hz, ones) && !hx_span.contains(ones) && in_kernel(code.hx, ones) &&
            !hz_span.contains(ones)) {
            xs = {ones};
            zs = {ones};
        }
    }

    pair_logicals(xs, zs);
    for (const BitVector& v : xs) code.logical_x.push_back(PauliOp::from_bits(PauliKind::X, v));
    for (const BitVector& v : zs) code.logical_z.push_back(PauliOp::from_bits(PauliKind::Z, v));
}

CssCode finish_code(CssCode code) {
    for (std::size_t c = 0; c < code.hx.rows(); ++c)
        for (std::size_t f = 0; f < code.hz.rows(); ++f)
            if (code.hx.row(c).dot(code.hz.row(f)))
                throw ValidationError("CSS condition violated: cell " + std::to_string(c) +
                                      " and face " + std::to_string(f) +
                                      " share an odd number of sites");
    code.rank_hx = static_cast<int>(gf2::rank(code.hx));
    code.rank_hz = static_cast<int>(gf2::rank(code.hz));
    code.k = code.n - code.rank_hx - code.rank_hz;
    extract_logicals(code);
    return code;
}

}  // namespace

CssCode code_from_colex(const Colex& colex) {
    ValidationReport rep =
        validate(colex, colex.closed ? ColexMode::Closed : ColexMode::Punctured);
    if (!rep.passed)
        throw ValidationError("code_from_colex: invalid colex: " + rep.violations.front().axiom);

    CssCode code;
    code.n = colex.n_sites;
    code.hx = BitMatrix(0, code.n);
    code.hz = BitMatrix(0, code.n);
    for (const Cell& cell : colex.cells) {
        BitVector row(code.n);
        for (int s : cell.sites) row.set(s);
        code.hx.append_row(std::move(row));
    }
    for (const Face& face : colex.faces) {
        BitVector row(code.n);
        for (int s : face.sites) row.set(s);
        code.hz.append_row(std::move(row));
    }
    code.colex = std::make_shared<Colex>(colex);
    return finish_code(std::move(code));
}

CssCode code_from_matrices(gf2::BitMatrix hx, gf2::BitMatrix hz) {
    if (hx.cols() != hz.cols())
        throw std::invalid_argument("code_from_matrices: column mismatch");
    CssCode code;
    code.n = static_cast<int>(hx.cols());
    code.hx = std::move(hx);
    code.hz = std::move(hz);
    return finish_code(std::move(code));
}

Syndrome syndrome(const CssCode& code, const PauliOp& error) {
    if (error.n != code.n) throw std::invalid_argument("syndrome: qubit count mismatch");
    Syndrome s;
    for (std::size_t c = 0; c < code.hx.rows(); ++c)
        if (code.hx.row(c).dot(error.z_support)) s.cell_defects.push_back(static_cast<int>(c));
    for (std::size_t f = 0; f < code.hz.rows(); ++f)
        if (code.hz.row(f).dot(error.x_support)) s.face_defects.push_back(static_cast<int>(f));
    return s;
}

int energy(const CssCode& code, const Syndrome& s) {
    const int total = static_cast<int>(code.hx.rows() + code.hz.rows());
    return -total + 2 * static_cast<int>(s.cell_defects.size() + s.face_defects.size());
}

namespace {

// Minimum weight over ker(commute_with) \ rowspace(stabilizers).
std::pair<int, BitVector> min_weight_logical(const BitMatrix& commute_with,
                                             const BitMatrix& stabilizers,
                                             std::size_t cap_log2) {
    BitMatrix kernel = gf2::kernel_basis(commute_with);
    Echelon stab_span(stabilizers);
    int best = -1;
    BitVector best_vec(commute_with.cols());
    gf2::enumerate_span(
        kernel,
        [&](const BitVector& v) {
            int w = static_cast<int>(v.weight());
            if (w == 0 || (best >= 0 && w >= best)) return;
            if (!stab_span.contains(v)) {
                best = w;
                best_vec = v;
            }
        },
        cap_log2);
    if (best < 0) throw std::logic_error("min_weight_logical: no logical found despite k > 0");
    return {best, best_vec};
}

}  // namespace

DistanceReport compute_distance(const CssCode& code, std::size_t cap_log2) {
    if (code.k <= 0)
        throw std::invalid_argument("compute_distance: code has no logical qubits (k = 0)");
    DistanceReport rep;
    auto [dz, zvec] = min_weight_logical(code.hx, code.hz, cap_log2);
    auto [dx, xvec] = min_weight_logical(code.hz, code.hx, cap_log2);
    rep.dz = dz;
    rep.dx = dx;
    rep.d = std::min(dx, dz);
    rep.min_z_logical = zvec;
    rep.min_x_logical = xvec;
    return rep;
}

CongruenceReport check_weight_congruence(const CssCode& code, std::size_t cap_log2) {
    CongruenceReport rep;
    BitMatrix basis = gf2::row_basis(code.hx);

    rep.all_weights_mod8_zero = true;
    std::size_t count = 0;
    gf2::enumerate_span(
        basis,
        [&](const BitVector& v) {
            ++count;
            std::size_t w = v.weight();
            rep.observed_weights.insert(w);
            if (w % 8 != 0) {
                rep.all_weights_mod8_zero = false;
                if (rep.counterexamples.size() < 8)
                    rep.counterexamples.push_back("span element of weight " + std::to_string(w));
            }
        },
        cap_log2);
    rep.span_size = count;

    // Shared-sites lemma: each cell meets every product of the other cells in
    // 0 or 4 sites mod 8.
    rep.lemma_shared_sites_ok = true;
    const std::size_t cells = code.hx.rows();
    if (cells > cap_log2 + 1)
        throw EnumerationCapError("check_weight_congruence: too many cells for lemma check");
    for (std::size_t c = 0; c < cells; ++c) {
        BitMatrix others(0, code.n);
        for (std::size_t o = 0; o < cells; ++o)
            if (o != c) others.append_row(code.hx.row(o));
        gf2::enumerate_span(
            others,
            [&](const BitVector& product) {
                std::size_t shared = (product & code.hx.row(c)).weight();
                rep.observed_shared_mod8.insert(shared % 8);
                if (shared % 8 != 0 && shared % 8 != 4) {
                    rep.lemma_shared_sites_ok = false;
                    if (rep.counterexamples.size() < 8)
                        rep.counterexamples.push_back(
                            "cell " + std::to_string(c) + " shares " + std::to_string(shared) +
                            " sites with a product of other cells");
                }
            },
            cap_log2);
    }
    return rep;
}

CnotReport verify_transversal_cnot(const CssCode& code) {
    if (code.k != 1)
        throw std::invalid_argument("verify_transversal_cnot: requires k = 1");
    const int n = code.n;
    CnotReport rep;

    // Doubled check matrices: block-diagonal copies.
    BitMatrix hx2(0, 2 * n), hz2(0, 2 * n);
    auto doubled = [n](const BitVector& v, bool second) {
        BitVector out(2 * n);
        for (std::size_t i : v.ones()) out.set(second ? i + n : i);
        return out;
    };
    for (std::size_t r = 0; r < code.hx.rows(); ++r) {
        hx2.append_row(doubled(code.hx.row(r), false));
        hx2.append_row(doubled(code.hx.row(r), true));
    }
    for (std::size_t r = 0; r < code.hz.rows(); ++r) {
        hz2.append_row(doubled(code.hz.row(r), false));
        hz2.append_row(doubled(code.hz.row(r), true));
    }
    Echelon x_span(hx2), z_span(hz2);

    rep.all_stabilizer_images_in_group = true;
    auto check_image = [&](const PauliOp& op) {
        PauliOp image = conjugate_by_transversal_cnot(op);
        bool ok = !image.x_support.any() || x_span.contains(image.x_support);
        ok = ok && (!image.z_support.any() || z_span.contains(image.z_support));
        ok = ok && image.phase == 0;
        rep.stabilizer_images_checked++;
        if (!ok) rep.all_stabilizer_images_in_group = false;
    };
    for (std::size_t r = 0; r < code.hx.rows(); ++r) {
        check_image(PauliOp::from_bits(PauliKind::X, doubled(code.hx.row(r), false)));
        check_image(PauliOp::from_bits(PauliKind::X, doubled(code.hx.row(r), true)));
    }
    for (std::size_t r = 0; r < code.hz.rows(); ++r) {
        check_image(PauliOp::from_bits(PauliKind::Z, doubled(code.hz.row(r), false)));
        check_image(PauliOp::from_bits(PauliKind::Z, doubled(code.hz.row(r), true)));
    }

    // Logical truth table on Pauli frames. Equality holds modulo the doubled
    // stabilizer group.
    const BitVector lx = code.logical_x.front().x_support;
    const BitVector lz = code.logical_z.front().z_support;
    auto x_equiv = [&](const BitVector& a, const BitVector& b) {
        return x_span.contains(a ^ b);
    };
    auto z_equiv = [&](const BitVector& a, const BitVector& b) {
        return z_span.contains(a ^ b);
    };

    PauliOp x1 = PauliOp::from_bits(PauliKind::X, doubled(lx, false));
    PauliOp x2 = PauliOp::from_bits(PauliKind::X, doubled(lx, true));
    PauliOp z1 = PauliOp::from_bits(PauliKind::Z, doubled(lz, false));
    PauliOp z2 = PauliOp::from_bits(PauliKind::Z, doubled(lz, true));

    BitVector x1x2 = doubled(lx, false) ^ doubled(lx, true);
    BitVector z1z2 = doubled(lz, false) ^ doubled(lz, true);

    rep.x1_to_x1x2 = x_equiv(conjugate_by_transversal_cnot(x1).x_support, x1x2);
    rep.x2_fixed = x_equiv(conjugate_by_transversal_cnot(x2).x_support, x2.x_support);
    rep.z1_fixed = z_equiv(conjugate_by_transversal_cnot(z1).z_support, z1.z_support);
    rep.z2_to_z1z2 = z_equiv(conjugate_by_transversal_cnot(z2).z_support, z1z2);
    return rep;
}

bool equivalent_mod_stabilizers(const CssCode& code, const PauliOp& p, const PauliOp& q) {
    if (p.n != code.n || q.n != code.n)
        throw std::invalid_argument("equivalent_mod_stabilizers: qubit count mismatch");
    if (p.is_x_type() && q.is_x_type())
        return gf2::in_row_space(code.hx, p.x_support ^ q.x_support);
    if (p.is_z_type() && q.is_z_type())
        return gf2::in_row_space(code.hz, p.z_support ^ q.z_support);
    throw std::invalid_argument(
        "equivalent_mod_stabilizers: operators must both be X type or both Z type");
}

}  // namespace colexcode
