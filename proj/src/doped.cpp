#include "cliffdec/doped.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace cliffdec {

// --- SqrtCoeff -----------------------------------------------------------------

double SqrtCoeff::value() const {
    return std::ldexp(double(a) + double(b) * std::sqrt(2.0), -int(e));
}

SqrtCoeff& SqrtCoeff::normalize() {
    if (a == 0 && b == 0) {
        e = 0;
        return *this;
    }
    while (e > 0 && (a & 1) == 0 && (b & 1) == 0) {
        a >>= 1;
        b >>= 1;
        --e;
    }
    return *this;
}

SqrtCoeff& SqrtCoeff::negate() {
    a = -a;
    b = -b;
    return *this;
}

SqrtCoeff& SqrtCoeff::div_sqrt2() {
    // (a + b sqrt2)/sqrt2 = (2b + a sqrt2)/2
    int64_t na = 2 * b, nb = a;
    a = na;
    b = nb;
    ++e;
    return normalize();
}

SqrtCoeff SqrtCoeff::plus(const SqrtCoeff& o) const {
    uint32_t ee = std::max(e, o.e);
    SqrtCoeff r{(a << (ee - e)) + (o.a << (ee - o.e)), (b << (ee - e)) + (o.b << (ee - o.e)), ee};
    return r.normalize(), r;
}

SqrtCoeff SqrtCoeff::times(const SqrtCoeff& o) const {
    SqrtCoeff r{a * o.a + 2 * b * o.b, a * o.b + b * o.a, e + o.e};
    return r.normalize(), r;
}

// --- PauliSum --------------------------------------------------------------------

namespace {

// strict order on letter parts
bool letters_less(const PauliString& lhs, const PauliString& rhs) {
    if (lhs.x_words() != rhs.x_words()) return lhs.x_words() < rhs.x_words();
    return lhs.z_words() < rhs.z_words();
}

bool letters_equal(const PauliString& lhs, const PauliString& rhs) { return lhs.same_letters(rhs); }

}  // namespace

PauliSum PauliSum::of(const PauliString& p) {
    PauliSum s(p.n());
    s.add_term(p, SqrtCoeff::one());
    return s;
}

void PauliSum::add_term(const PauliString& op, SqrtCoeff c) {
    if (op.n() != n_) throw std::invalid_argument("PauliSum: dimension mismatch");
    if (!op.is_hermitian()) throw std::invalid_argument("PauliSum: non-Hermitian term");
    if (op.is_negative()) c.negate();
    PauliString key = op.letters();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const PauliTerm& t, const PauliString& k) { return letters_less(t.op, k); });
    if (it != terms_.end() && letters_equal(it->op, key)) {
        it->coeff = it->coeff.plus(c);
        if (it->coeff.is_zero()) terms_.erase(it);
    } else if (!c.is_zero()) {
        terms_.insert(it, {std::move(key), c});
    }
}

SqrtCoeff PauliSum::coeff_of(const PauliString& p) const {
    if (p.n() != n_) throw std::invalid_argument("PauliSum: dimension mismatch");
    if (!p.is_hermitian()) throw std::invalid_argument("PauliSum: non-Hermitian query");
    PauliString key = p.letters();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const PauliTerm& t, const PauliString& k) { return letters_less(t.op, k); });
    if (it == terms_.end() || !letters_equal(it->op, key)) return SqrtCoeff::zero();
    SqrtCoeff c = it->coeff;
    if (p.is_negative()) c.negate();
    return c;
}

SqrtCoeff PauliSum::norm2() const {
    SqrtCoeff acc = SqrtCoeff::zero();
    for (const PauliTerm& t : terms_) acc = acc.plus(t.coeff.squared());
    return acc;
}

std::optional<PauliString> PauliSum::as_single_pauli() const {
    if (terms_.size() != 1) return std::nullopt;
    const SqrtCoeff& c = terms_.front().coeff;
    if (c.b != 0 || c.e != 0 || (c.a != 1 && c.a != -1)) return std::nullopt;
    PauliString p = terms_.front().op;
    if (c.a == -1) p.negate();
    return p;
}

// --- DopedCircuit ------------------------------------------------------------------

DopedCircuit::DopedCircuit(uint32_t n, std::vector<Gate> gates) : n_(n), gates_(std::move(gates)), t_count_(0) {
    for (const Gate& g : gates_) {
        if (g.q0 >= n || (g.is_two_qubit() && (g.q1 >= n || g.q1 == g.q0)))
            throw std::invalid_argument("DopedCircuit: gate qubit out of range");
        if (g.kind == GateKind::T) ++t_count_;
    }
}

CliffordTableau DopedCircuit::to_tableau() const {
    if (t_count_ != 0) throw std::invalid_argument("to_tableau: circuit contains T gates");
    return CliffordTableau::from_circuit(n_, gates_);
}

// --- propagation -------------------------------------------------------------------

PauliSum propagate(const DopedCircuit& c, const PauliString& p) {
    if (p.n() != c.n()) throw std::invalid_argument("propagate: dimension mismatch");
    if (!p.is_hermitian()) throw std::invalid_argument("propagate: non-Hermitian operator");
    PauliSum sum = PauliSum::of(p);
    // U† P U for U = g_k ... g_1 conjugates by the last gate first
    const auto& gates = c.gates();
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        const Gate& g = *it;
        PauliSum next(c.n());
        if (g.kind == GateKind::T) {
            for (const PauliTerm& term : sum.terms()) {
                if (!term.op.x(g.q0)) {
                    next.add_term(term.op, term.coeff);
                    continue;
                }
                // T† P T = (P - i P Z_q)/sqrt2 on the anticommuting part
                SqrtCoeff half = term.coeff;
                half.div_sqrt2();
                next.add_term(term.op, half);
                PauliString rotated = term.op;
                rotated.set_z(g.q0, !rotated.z(g.q0));
                rotated.set_raw_phase(rotated.raw_phase() + 3);
                next.add_term(rotated, half);
            }
        } else {
            for (const PauliTerm& term : sum.terms()) {
                PauliString moved = term.op;
                conjugate_by_gate(moved, g);
                next.add_term(moved, term.coeff);
            }
        }
        sum = std::move(next);
    }
    assert(sum.norm2() == SqrtCoeff::one());
    return sum;
}

std::optional<PauliString> is_preserved(const DopedCircuit& c, const PauliString& p) {
    return propagate(c, p).as_single_pauli();
}

// --- OTOC -------------------------------------------------------------------------

namespace {

// inner OTOC value for one P_Y: sum of squared coefficients over terms of
// U† P_Y U whose support misses X (the P_X average is exactly the support
// indicator by Pauli character orthogonality)
double otoc_inner(const DopedCircuit& c, const SubsystemMask& x, const PauliString& p_y) {
    PauliSum sum = propagate(c, p_y);
    double acc = 0.0;
    for (const PauliTerm& term : sum.terms())
        if (term.op.support().disjoint_from(x)) {
            double v = term.coeff.value();
            acc += v * v;
        }
    return acc;
}

}  // namespace

OtocResult otoc(const DopedCircuit& c, const SubsystemMask& x, const SubsystemMask& y, const OtocOptions& opts) {
    if (x.n() != c.n() || y.n() != c.n()) throw std::invalid_argument("otoc: mask dimension mismatch");
    uint32_t total = x.popcount() + y.popcount();
    bool within_cap = total < 32 && (uint64_t(1) << (2 * total)) <= opts.exact_cap;
    OtocResult res;
    if (within_cap) {
        uint64_t count = uint64_t(1) << (2 * y.popcount());
        double acc = 0.0;
        for (uint64_t code = 0; code < count; ++code) acc += otoc_inner(c, x, pauli_on_mask(y, code));
        res.value = acc / double(count);
        res.exact = true;
        return res;
    }
    if (!opts.monte_carlo) throw std::length_error("otoc: exact cap exceeded and Monte Carlo disabled");
    if (y.popcount() >= 32) throw std::length_error("otoc: Y mask too large");
    uint64_t count = uint64_t(1) << (2 * y.popcount());
    std::unordered_map<uint64_t, double> cache;
    double sum = 0.0, sum_sq = 0.0;
    for (size_t k = 0; k < opts.samples; ++k) {
        Rng draw_rng = Rng::for_trial(opts.seed, k);
        uint64_t code = draw_rng.next_below(count);
        auto it = cache.find(code);
        double v;
        if (it != cache.end()) {
            v = it->second;
        } else {
            v = otoc_inner(c, x, pauli_on_mask(y, code));
            cache.emplace(code, v);
        }
        sum += v;
        sum_sq += v * v;
    }
    double nd = double(opts.samples);
    res.value = sum / nd;
    double var = std::max(0.0, (sum_sq - sum * sum / nd) / std::max(1.0, nd - 1.0));
    res.std_error = std::sqrt(var / nd);
    res.exact = false;
    res.samples = opts.samples;
    return res;
}

ScramblerReport is_scrambler(const DopedCircuit& c, const SubsystemMask& a, const SubsystemMask& d,
                             double tolerance, const OtocOptions& opts) {
    ScramblerReport rep;
    rep.tolerance = tolerance;
    OtocResult r = otoc(c, a, d, opts);
    rep.omega = r.value;
    double pa = std::ldexp(1.0, -2 * int(a.popcount()));
    double pd = std::ldexp(1.0, -2 * int(d.popcount()));
    rep.reference = pa + pd - pa * pd;
    rep.deviation = std::abs(rep.omega - rep.reference);
    rep.scrambles = rep.deviation <= tolerance;
    rep.mutual_information = double(a.popcount()) + std::log2(rep.omega / pa);
    return rep;
}

// --- ensembles ----------------------------------------------------------------------

namespace {

void append_remapped(std::vector<Gate>& out, const std::vector<Gate>& local, const std::vector<uint32_t>& wires) {
    for (Gate g : local) {
        g.q0 = wires[g.q0];
        if (g.is_two_qubit()) g.q1 = wires[g.q1];
        out.push_back(g);
    }
}

void append_uniform_clifford(std::vector<Gate>& out, const std::vector<uint32_t>& wires, Rng& rng) {
    CliffordTableau t = sample_uniform(uint32_t(wires.size()), rng);
    append_remapped(out, t.to_circuit(), wires);
}

std::vector<Gate> sample_generic(uint32_t n, uint32_t t, uint32_t depth, Rng& rng) {
    // brickwork layers, then T gates spliced at uniform (layer, qubit) slots
    std::vector<std::vector<Gate>> layers(depth);
    for (uint32_t l = 0; l < depth; ++l) {
        uint32_t q = l % 2;
        if (n == 1) q = 0;
        for (; q + 1 < n; q += 2) append_uniform_clifford(layers[l], {q, q + 1}, rng);
        if (q < n) append_uniform_clifford(layers[l], {q}, rng);
    }
    std::vector<std::vector<Gate>> doping(depth + 1);
    for (uint32_t k = 0; k < t; ++k) {
        uint32_t slot = uint32_t(rng.next_below(depth + 1));
        doping[slot].push_back({GateKind::T, uint32_t(rng.next_below(n))});
    }
    std::vector<Gate> gates;
    for (uint32_t l = 0; l < depth; ++l) {
        for (const Gate& g : doping[l]) gates.push_back(g);
        for (const Gate& g : layers[l]) gates.push_back(g);
    }
    for (const Gate& g : doping[depth]) gates.push_back(g);
    return gates;
}

// Commuting-W construction: C0' (scrambling input side), one non-Clifford
// block H T H T per doped qubit, then an output-side Clifford that factors as
// (uniform Clifford on undoped wires) x (uniform 1-qubit Cliffords on doped
// wires).  The factored output side keeps each block's cut directions a
// single-qubit anticommuting pair, so the preserved group restricted to any
// readout mask is a full Pauli group on a sub-mask: E1 == E2 by construction.
std::vector<Gate> sample_simplified(uint32_t n, uint32_t t, Rng& rng) {
    if (t % 2 != 0) throw std::invalid_argument("simplified-class ensemble requires even t");
    if (t / 2 > n) throw std::invalid_argument("simplified-class ensemble requires t/2 <= n");
    std::vector<uint32_t> all_wires(n);
    std::iota(all_wires.begin(), all_wires.end(), 0);

    std::vector<Gate> gates;
    append_uniform_clifford(gates, all_wires, rng);  // C0'
    if (t == 0) {
        append_uniform_clifford(gates, all_wires, rng);  // C0 unrestricted
        return gates;
    }
    std::vector<uint32_t> pool = all_wires;
    std::vector<uint32_t> doped;
    for (uint32_t k = 0; k < t / 2; ++k) {
        size_t pick = size_t(rng.next_below(pool.size()));
        doped.push_back(pool[pick]);
        pool.erase(pool.begin() + long(pick));
    }
    for (uint32_t q : doped) {
        gates.push_back({GateKind::H, q});
        gates.push_back({GateKind::T, q});
        gates.push_back({GateKind::H, q});
        gates.push_back({GateKind::T, q});
    }
    if (!pool.empty()) append_uniform_clifford(gates, pool, rng);  // C0 on undoped wires
    for (uint32_t q : doped) append_uniform_clifford(gates, {q}, rng);
    return gates;
}

}  // namespace

DopedCircuit sample_doped_circuit(uint32_t n, uint32_t t, Ensemble ensemble, uint32_t depth, Rng& rng) {
    if (n == 0) throw std::invalid_argument("sample_doped_circuit: empty register");
    if (t > 16) throw std::invalid_argument("sample_doped_circuit: t > 16 unsupported (exact propagation)");
    switch (ensemble) {
        case Ensemble::generic:
            if (depth == 0) throw std::invalid_argument("sample_doped_circuit: generic ensemble needs depth >= 1");
            return DopedCircuit(n, sample_generic(n, t, depth, rng));
        case Ensemble::simplified_class:
            return DopedCircuit(n, sample_simplified(n, t, rng));
    }
    throw std::invalid_argument("sample_doped_circuit: unknown ensemble");
}

}  // namespace cliffdec
