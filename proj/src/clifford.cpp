#include "cliffdec/clifford.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>
#include <string>

namespace cliffdec {

namespace {

// --- small GF(2) kit on packed rows -----------------------------------------

using BitRow = std::vector<uint64_t>;

BitRow zero_row(uint32_t width) { return BitRow((width + 63) / 64, 0); }

bool get_bit(const BitRow& r, uint32_t j) { return (r[j >> 6] >> (j & 63)) & 1; }

void set_bit(BitRow& r, uint32_t j, bool v) {
    uint64_t m = uint64_t(1) << (j & 63);
    if (v) r[j >> 6] |= m; else r[j >> 6] &= ~m;
}

void xor_row(BitRow& a, const BitRow& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

// symplectic coordinates of a Pauli: bits [0,n) = x, [n,2n) = z
BitRow coords_of(const PauliString& p) {
    uint32_t n = p.n();
    BitRow r = zero_row(2 * n);
    for (uint32_t q = 0; q < n; ++q) {
        if (p.x(q)) set_bit(r, q, true);
        if (p.z(q)) set_bit(r, n + q, true);
    }
    return r;
}

PauliString pauli_from_coords(uint32_t n, const BitRow& r) {
    PauliString p(n);
    uint32_t y = 0;
    for (uint32_t q = 0; q < n; ++q) {
        bool xb = get_bit(r, q), zb = get_bit(r, n + q);
        if (xb) p.set_x(q, true);
        if (zb) p.set_z(q, true);
        if (xb && zb) ++y;
    }
    p.set_raw_phase(uint8_t(y & 3));  // positive letters
    return p;
}

// <u, v> = sum_q u.x_q v.z_q + u.z_q v.x_q: the dual row of u swaps halves
BitRow symplectic_dual(const BitRow& u, uint32_t n) {
    BitRow d = zero_row(2 * n);
    for (uint32_t q = 0; q < n; ++q) {
        set_bit(d, q, get_bit(u, n + q));
        set_bit(d, n + q, get_bit(u, q));
    }
    return d;
}

// particular solution of rows[i] . x = rhs[i], free variables zeroed;
// returns false when inconsistent
bool solve_gf2(std::vector<BitRow> rows, std::vector<bool> rhs, uint32_t width, BitRow& solution) {
    std::vector<int> pivot_of_row(rows.size(), -1);
    size_t rank = 0;
    for (uint32_t col = 0; col < width && rank < rows.size(); ++col) {
        size_t sel = rank;
        while (sel < rows.size() && !get_bit(rows[sel], col)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        std::swap(rhs[rank], rhs[sel]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != rank && get_bit(rows[i], col)) {
                xor_row(rows[i], rows[rank]);
                rhs[i] = rhs[i] ^ rhs[rank];
            }
        pivot_of_row[rank] = int(col);
        ++rank;
    }
    for (size_t i = rank; i < rows.size(); ++i)
        if (rhs[i]) return false;
    solution = zero_row(width);
    for (size_t i = 0; i < rank; ++i)
        if (rhs[i]) set_bit(solution, uint32_t(pivot_of_row[i]), true);
    return true;
}

// invert a width x width matrix given as rows; throws on singular input
std::vector<BitRow> invert_gf2(std::vector<BitRow> m, uint32_t width) {
    std::vector<BitRow> inv(width);
    for (uint32_t i = 0; i < width; ++i) {
        inv[i] = zero_row(width);
        set_bit(inv[i], i, true);
    }
    for (uint32_t col = 0; col < width; ++col) {
        uint32_t sel = col;
        while (sel < width && !get_bit(m[sel], col)) ++sel;
        if (sel == width) throw std::logic_error("invert_gf2: singular matrix");
        std::swap(m[col], m[sel]);
        std::swap(inv[col], inv[sel]);
        for (uint32_t i = 0; i < width; ++i)
            if (i != col && get_bit(m[i], col)) {
                xor_row(m[i], m[col]);
                xor_row(inv[i], inv[col]);
            }
    }
    return inv;
}

}  // namespace

// --- CliffordTableau ---------------------------------------------------------

CliffordTableau::CliffordTableau(uint32_t n) : n_(n) {
    x_img_.reserve(n);
    z_img_.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        x_img_.push_back(PauliString::single_x(n, i));
        z_img_.push_back(PauliString::single_z(n, i));
    }
}

CliffordTableau CliffordTableau::from_circuit(uint32_t n, const std::vector<Gate>& gates) {
    CliffordTableau t(n);
    for (const Gate& g : gates) t.apply_gate(g);
    return t;
}

void CliffordTableau::set_x_image(uint32_t i, PauliString p) {
    if (p.n() != n_) throw std::invalid_argument("tableau row: size mismatch");
    x_img_[i] = std::move(p);
}

void CliffordTableau::set_z_image(uint32_t i, PauliString p) {
    if (p.n() != n_) throw std::invalid_argument("tableau row: size mismatch");
    z_img_[i] = std::move(p);
}

void CliffordTableau::apply_gate(const Gate& g) {
    // U <- g U, so the new row for generator G is the old image of g† G g
    uint32_t a = g.q0, b = g.q1;
    if (a >= n_ || (g.is_two_qubit() && b >= n_))
        throw std::invalid_argument("apply_gate: qubit index out of range");
    switch (g.kind) {
        case GateKind::H:
            std::swap(x_img_[a], z_img_[a]);
            break;
        case GateKind::S: {
            // S† X S = -Y = i^3 X Z
            PauliString r = multiply(x_img_[a], z_img_[a]);
            r.set_raw_phase(r.raw_phase() + 3);
            x_img_[a] = std::move(r);
            break;
        }
        case GateKind::CX:
            x_img_[a].mul_inplace(x_img_[b]);  // X_c -> X_c X_t
            z_img_[b].mul_inplace(z_img_[a]);  // Z_t -> Z_c Z_t
            break;
        case GateKind::SWAP:
            std::swap(x_img_[a], x_img_[b]);
            std::swap(z_img_[a], z_img_[b]);
            break;
        case GateKind::X:
            z_img_[a].negate();
            break;
        case GateKind::Y:
            x_img_[a].negate();
            z_img_[a].negate();
            break;
        case GateKind::Z:
            x_img_[a].negate();
            break;
        case GateKind::T:
            throw std::invalid_argument("CliffordTableau: T is not a Clifford gate");
    }
}

PauliString CliffordTableau::conjugate(const PauliString& p) const {
    if (p.n() != n_) throw std::invalid_argument("conjugate: size mismatch");
    PauliString out = PauliString::identity(n_);
    out.set_raw_phase(p.raw_phase());
    for (uint32_t q = 0; q < n_; ++q)
        if (p.x(q)) out.mul_inplace(x_img_[q]);
    for (uint32_t q = 0; q < n_; ++q)
        if (p.z(q)) out.mul_inplace(z_img_[q]);
    return out;
}

bool CliffordTableau::is_valid() const {
    for (uint32_t i = 0; i < n_; ++i) {
        if (!x_img_[i].is_hermitian() || !z_img_[i].is_hermitian()) return false;
        if (x_img_[i].commutes_with(z_img_[i])) return false;
        for (uint32_t j = i + 1; j < n_; ++j) {
            if (!x_img_[i].commutes_with(x_img_[j])) return false;
            if (!x_img_[i].commutes_with(z_img_[j])) return false;
            if (!z_img_[i].commutes_with(x_img_[j])) return false;
            if (!z_img_[i].commutes_with(z_img_[j])) return false;
        }
    }
    return true;
}

bool CliffordTableau::supported_on(const SubsystemMask& mask) const {
    for (uint32_t q = 0; q < n_; ++q) {
        if (mask.contains(q)) {
            if (!x_img_[q].support().subset_of(mask)) return false;
            if (!z_img_[q].support().subset_of(mask)) return false;
        } else {
            if (x_img_[q] != PauliString::single_x(n_, q)) return false;
            if (z_img_[q] != PauliString::single_z(n_, q)) return false;
        }
    }
    return true;
}

size_t CliffordTableau::hash() const {
    uint64_t h = 0x6a09e667f3bcc908ull + n_;
    for (uint32_t i = 0; i < n_; ++i) {
        h = h * 0x100000001b3ull ^ x_img_[i].hash();
        h = h * 0x100000001b3ull ^ z_img_[i].hash();
    }
    return size_t(h);
}

CliffordTableau compose(const CliffordTableau& u, const CliffordTableau& w) {
    if (u.n() != w.n()) throw std::invalid_argument("compose: size mismatch");
    CliffordTableau out(u.n());
    for (uint32_t i = 0; i < u.n(); ++i) {
        out.set_x_image(i, w.conjugate(u.x_image(i)));
        out.set_z_image(i, w.conjugate(u.z_image(i)));
    }
    return out;
}

CliffordTableau inverse(const CliffordTableau& t) {
    uint32_t n = t.n();
    // invert the symplectic image matrix, then repair each sign by one
    // forward conjugation
    std::vector<BitRow> m(2 * n);
    for (uint32_t i = 0; i < n; ++i) {
        m[i] = coords_of(t.x_image(i));
        m[n + i] = coords_of(t.z_image(i));
    }
    std::vector<BitRow> mi = invert_gf2(std::move(m), 2 * n);
    CliffordTableau out(n);
    for (uint32_t r = 0; r < 2 * n; ++r) {
        PauliString q = pauli_from_coords(n, mi[r]);
        PauliString check = t.conjugate(q);  // = +-(generator r)
        if (check.is_negative()) q.negate();
        if (r < n) out.set_x_image(r, std::move(q));
        else out.set_z_image(r - n, std::move(q));
    }
    return out;
}

CliffordTableau conjugated(const CliffordTableau& t) {
    // generators are real matrices, so rows conjugate entrywise
    CliffordTableau out(t.n());
    for (uint32_t i = 0; i < t.n(); ++i) {
        out.set_x_image(i, t.x_image(i).conj());
        out.set_z_image(i, t.z_image(i).conj());
    }
    return out;
}

CliffordTableau transposed(const CliffordTableau& t) { return inverse(conjugated(t)); }

// --- uniform sampling ---------------------------------------------------------

CliffordTableau sample_uniform(uint32_t n, Rng& rng) {
    // Build a uniformly random symplectic basis (v_1,w_1,...,v_n,w_n):
    // v_k is uniform over the nonzero vectors of the remaining symplectic
    // complement, w_k uniform over the solutions of <v_k, w> = 1 inside it.
    // The choice counts multiply to prod_j (4^j - 1) 2^(2j-1) = |Sp(2n, F2)|,
    // and distinct choices give distinct bases, so the draw is exactly uniform.
    std::vector<PauliString> basis;
    basis.reserve(2 * n);
    for (uint32_t q = 0; q < n; ++q) basis.push_back(PauliString::single_x(n, q));
    for (uint32_t q = 0; q < n; ++q) basis.push_back(PauliString::single_z(n, q));

    CliffordTableau out(n);
    for (uint32_t k = 0; k < n; ++k) {
        size_t d = basis.size();
        PauliString v(n);
        for (;;) {
            uint64_t any = 0;
            v = PauliString::identity(n);
            for (size_t i = 0; i < d; ++i) {
                uint64_t bit = rng.next_u64() & 1;
                any |= bit;
                if (bit) v.mul_inplace(basis[i]);
            }
            if (any) break;
        }
        v = v.letters();

        std::vector<uint8_t> s(d);
        size_t pivot = d;
        for (size_t i = 0; i < d; ++i) {
            s[i] = !v.commutes_with(basis[i]);
            if (s[i] && pivot == d) pivot = i;
        }
        assert(pivot < d);
        PauliString w = PauliString::identity(n);
        bool acc = false;
        for (size_t i = 0; i < d; ++i) {
            if (i == pivot) continue;
            if (rng.next_bool()) {
                w.mul_inplace(basis[i]);
                acc ^= s[i];
            }
        }
        if (!acc) w.mul_inplace(basis[pivot]);  // force <v, w> = 1
        w = w.letters();

        PauliString vi = v, wi = w;
        if (rng.next_bool()) vi.negate();
        if (rng.next_bool()) wi.negate();
        out.set_x_image(k, std::move(vi));
        out.set_z_image(k, std::move(wi));

        // corrected complement: b + <b,w> v + <b,v> w, re-extracted as an
        // independent set of size d - 2
        std::vector<PauliString> corrected;
        corrected.reserve(d);
        for (const PauliString& b : basis) {
            PauliString c = b;
            if (!c.commutes_with(w)) c.mul_inplace(v);
            if (!c.commutes_with(v)) c.mul_inplace(w);
            corrected.push_back(c.letters());
        }
        PauliSubgroup span = subgroup_close(n, corrected);
        basis.assign(span.generators().begin(), span.generators().end());
        assert(basis.size() == d - 2);
    }
    return out;
}

// --- circuit synthesis ---------------------------------------------------------

namespace {

// synthesis works by prepending gates (U <- U h), which conjugates every row
struct Reducer {
    CliffordTableau t;
    std::vector<Gate> prepended;

    void prepend(Gate g) {
        for (uint32_t i = 0; i < t.n(); ++i) {
            PauliString px = t.x_image(i), pz = t.z_image(i);
            conjugate_by_gate(px, g);
            conjugate_by_gate(pz, g);
            t.set_x_image(i, std::move(px));
            t.set_z_image(i, std::move(pz));
        }
        prepended.push_back(g);
    }
};

}  // namespace

std::vector<Gate> CliffordTableau::to_circuit() const {
    Reducer red{*this, {}};
    uint32_t n = n_;
    for (uint32_t j = 0; j < n; ++j) {
        // rows j commute with every earlier fixed generator, so their support
        // is already confined to qubits >= j
        {
            const PauliString& row = red.t.x_image(j);
            uint32_t k = n;
            for (uint32_t q = j; q < n; ++q)
                if (row.x(q)) { k = q; break; }
            if (k == n) {
                for (uint32_t q = j; q < n; ++q)
                    if (row.z(q)) { k = q; break; }
                assert(k < n);
                red.prepend({GateKind::H, k});
            }
            if (red.t.x_image(j).z(k)) red.prepend({GateKind::S, k});  // Y -> X
            if (k != j) red.prepend({GateKind::SWAP, j, k});
        }
        for (uint32_t m = j + 1; m < n; ++m) {
            bool xm = red.t.x_image(j).x(m), zm = red.t.x_image(j).z(m);
            if (xm && zm) red.prepend({GateKind::S, m});       // Y -> X
            else if (!xm && zm) red.prepend({GateKind::H, m}); // Z -> X
            if (red.t.x_image(j).x(m)) red.prepend({GateKind::CX, j, m});
        }
        // z row anticommutes with X_j, so it carries Z at j; clear a possible
        // Y at j with the X-preserving sequence H S H (Y -> -Z)
        if (red.t.z_image(j).x(j)) {
            red.prepend({GateKind::H, j});
            red.prepend({GateKind::S, j});
            red.prepend({GateKind::H, j});
        }
        for (uint32_t m = j + 1; m < n; ++m) {
            bool xm = red.t.z_image(j).x(m), zm = red.t.z_image(j).z(m);
            if (xm && zm) { red.prepend({GateKind::S, m}); red.prepend({GateKind::H, m}); }  // Y -> X -> Z
            else if (xm && !zm) red.prepend({GateKind::H, m});                               // X -> Z
            if (red.t.z_image(j).z(m)) red.prepend({GateKind::CX, m, j});
        }
        if (red.t.x_image(j).is_negative()) red.prepend({GateKind::Z, j});
        if (red.t.z_image(j).is_negative()) red.prepend({GateKind::X, j});
        assert(red.t.x_image(j) == PauliString::single_x(n, j));
        assert(red.t.z_image(j) == PauliString::single_z(n, j));
    }
    // U h_1 ... h_k = 1, so U = h_k† ... h_1†: daggered gates in emission order
    std::vector<Gate> circuit;
    circuit.reserve(red.prepended.size());
    for (const Gate& g : red.prepended) append_inverse_gate(circuit, g);
    return circuit;
}

// --- symplectic completion -----------------------------------------------------

void PartialPauliMap::add(PauliString source, PauliString target) {
    if (n == 0) n = source.n();
    if (source.n() != n || target.n() != n)
        throw std::invalid_argument("PartialPauliMap: size mismatch");
    sources.push_back(std::move(source));
    targets.push_back(std::move(target));
}

namespace {

struct TrackedRow {
    PauliString src, tgt;
    void mul(const TrackedRow& o) {
        src.mul_inplace(o.src);
        tgt.mul_inplace(o.tgt);
    }
};

// deterministic vector from the solution set of <basis_i, d> = pattern_i
BitRow solve_pairing(const std::vector<BitRow>& basis_coords, const std::vector<bool>& pattern, uint32_t n) {
    std::vector<BitRow> rows;
    rows.reserve(basis_coords.size());
    for (const BitRow& b : basis_coords) rows.push_back(symplectic_dual(b, n));
    BitRow sol;
    if (!solve_gf2(rows, pattern, 2 * n, sol))
        throw std::logic_error("symplectic completion: pairing system inconsistent");
    return sol;
}

}  // namespace

CliffordTableau complete_to_clifford(const PartialPauliMap& m) {
    uint32_t n = m.n;
    if (n == 0) throw std::invalid_argument("complete_to_clifford: empty map without size");
    size_t k = m.sources.size();
    if (k > 2 * size_t(n)) throw not_completable_error("complete_to_clifford: more pairs than 2n");

    for (size_t i = 0; i < k; ++i) {
        if (!m.sources[i].is_hermitian() || !m.targets[i].is_hermitian())
            throw not_completable_error("complete_to_clifford: pair " + std::to_string(i) + " is not Hermitian");
        if (m.sources[i].is_identity_letters() || m.targets[i].is_identity_letters())
            throw not_completable_error("complete_to_clifford: pair " + std::to_string(i) + " maps identity");
    }
    for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
            if (m.sources[i].commutes_with(m.sources[j]) != m.targets[i].commutes_with(m.targets[j]))
                throw not_completable_error("not completable: commutation mismatch between pairs " +
                                            std::to_string(i) + " and " + std::to_string(j));
    {
        PauliSubgroup span(n);
        for (size_t i = 0; i < k; ++i)
            if (!span.add(m.sources[i]))
                throw not_completable_error("not completable: source " + std::to_string(i) +
                                            " depends on earlier sources");
    }

    // symplectic Gram-Schmidt over tracked (source, target) rows: greedy
    // first-anticommuting-partner in input order
    std::vector<TrackedRow> work;
    work.reserve(k);
    for (size_t i = 0; i < k; ++i) work.push_back({m.sources[i], m.targets[i]});

    std::vector<std::pair<TrackedRow, TrackedRow>> hyper;
    std::vector<TrackedRow> iso;
    while (!work.empty()) {
        TrackedRow a = std::move(work.front());
        work.erase(work.begin());
        size_t partner = work.size();
        for (size_t i = 0; i < work.size(); ++i)
            if (!a.src.commutes_with(work[i].src)) { partner = i; break; }
        if (partner == work.size()) {
            iso.push_back(std::move(a));
            continue;
        }
        TrackedRow b = std::move(work[partner]);
        work.erase(work.begin() + long(partner));
        for (TrackedRow& w : work) {
            if (!w.src.commutes_with(b.src)) w.mul(a);
            if (!w.src.commutes_with(a.src)) w.mul(b);
        }
        hyper.emplace_back(std::move(a), std::move(b));
    }

    // full source/target bases grown in lockstep; every extension solves the
    // same Gram pattern on both sides
    std::vector<PauliString> sb, tb;
    auto push_pair = [&](const PauliString& s, const PauliString& t) {
        sb.push_back(s.letters());
        tb.push_back(t.letters());
    };
    for (const auto& [a, b] : hyper) {
        push_pair(a.src, a.tgt);
        push_pair(b.src, b.tgt);
    }

    auto coords_list = [&](const std::vector<PauliString>& v) {
        std::vector<BitRow> out;
        out.reserve(v.size());
        for (const PauliString& p : v) out.push_back(coords_of(p));
        return out;
    };

    for (const TrackedRow& c : iso) {
        // partner must anticommute with c and commute with everything else
        std::vector<bool> pat_s(sb.size() + 1, false), pat_t(tb.size() + 1, false);
        pat_s.back() = pat_t.back() = true;
        auto bs = coords_list(sb);
        bs.push_back(coords_of(c.src));
        auto bt = coords_list(tb);
        bt.push_back(coords_of(c.tgt));
        PauliString ds = pauli_from_coords(n, solve_pairing(bs, pat_s, n));
        PauliString dt = pauli_from_coords(n, solve_pairing(bt, pat_t, n));
        push_pair(c.src, c.tgt);
        push_pair(ds, dt);
    }

    // free directions: deterministic basis of the symplectic complement
    while (sb.size() < 2 * size_t(n)) {
        auto pick_free = [&](const std::vector<PauliString>& have) {
            // lexicographically first nonzero solution of <have_i, f> = 0
            // outside span(have)
            PauliSubgroup span = subgroup_close(n, have);
            std::vector<BitRow> rows;
            for (const PauliString& b : have) rows.push_back(symplectic_dual(coords_of(b), n));
            // nullspace walk: try unit vectors and their completions
            for (uint32_t j = 0; j < 2 * n; ++j) {
                std::vector<BitRow> sys = rows;
                std::vector<bool> rhs(rows.size(), false);
                BitRow pin = zero_row(2 * n);
                set_bit(pin, j, true);
                sys.push_back(pin);
                rhs.push_back(true);
                BitRow sol;
                if (!solve_gf2(sys, rhs, 2 * n, sol)) continue;
                PauliString f = pauli_from_coords(n, sol);
                if (!span.contains(f)) return f;
            }
            throw std::logic_error("symplectic completion: no free direction found");
        };
        PauliString fs = pick_free(sb);
        PauliString ft = pick_free(tb);
        {
            std::vector<bool> pat(sb.size() + 1, false);
            pat.back() = true;
            auto bs = coords_list(sb);
            bs.push_back(coords_of(fs));
            auto bt = coords_list(tb);
            bt.push_back(coords_of(ft));
            PauliString gs = pauli_from_coords(n, solve_pairing(bs, pat, n));
            PauliString gt = pauli_from_coords(n, solve_pairing(bt, pat, n));
            push_pair(fs, ft);
            push_pair(gs, gt);
        }
    }

    // images of the standard generators: rows of Ms^{-1} Mt, positive signs
    std::vector<BitRow> ms, mt;
    for (const PauliString& p : sb) ms.push_back(coords_of(p));
    for (const PauliString& p : tb) mt.push_back(coords_of(p));
    std::vector<BitRow> msi = invert_gf2(std::move(ms), 2 * n);
    CliffordTableau out(n);
    for (uint32_t r = 0; r < 2 * n; ++r) {
        BitRow img = zero_row(2 * n);
        for (uint32_t j = 0; j < 2 * n; ++j)
            if (get_bit(msi[r], j)) xor_row(img, mt[j]);
        PauliString p = pauli_from_coords(n, img);
        if (r < n) out.set_x_image(r, std::move(p));
        else out.set_z_image(r - n, std::move(p));
    }

    // Pauli correction layer: signs are fixable exactly because commutation is
    // already preserved; solve <C, U† s_i U> = flip_i and negate matching rows
    std::vector<BitRow> crows;
    std::vector<bool> flips;
    for (size_t i = 0; i < k; ++i) {
        PauliString got = out.conjugate(m.sources[i]);
        if (!got.same_letters(m.targets[i]))
            throw std::logic_error("symplectic completion: letter mismatch on pair " + std::to_string(i));
        crows.push_back(symplectic_dual(coords_of(got), n));
        flips.push_back(got.sign_exponent() != m.targets[i].sign_exponent());
    }
    if (k > 0) {
        BitRow c;
        if (!solve_gf2(crows, flips, 2 * n, c))
            throw std::logic_error("symplectic completion: sign system inconsistent");
        PauliString cp = pauli_from_coords(n, c);
        for (uint32_t i = 0; i < n; ++i) {
            if (!cp.commutes_with(out.x_image(i))) {
                PauliString p = out.x_image(i);
                out.set_x_image(i, p.negate());
            }
            if (!cp.commutes_with(out.z_image(i))) {
                PauliString p = out.z_image(i);
                out.set_z_image(i, p.negate());
            }
        }
    }

    for (size_t i = 0; i < k; ++i)
        if (out.conjugate(m.sources[i]) != m.targets[i])
            throw std::logic_error("symplectic completion failed to reproduce pair " + std::to_string(i));
    return out;
}

}  // namespace cliffdec
