#include "cliffdec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cliffdec {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

void apply_single(std::complex<double>* a, uint64_t size, GateKind kind, uint32_t w,
                  bool conj_phase) {
    const uint64_t m = uint64_t(1) << w;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    switch (kind) {
        case GateKind::H:
            for (uint64_t i = 0; i < size; ++i)
                if (!(i & m)) {
                    const auto lo = a[i], hi = a[i | m];
                    a[i] = (lo + hi) * inv_sqrt2;
                    a[i | m] = (lo - hi) * inv_sqrt2;
                }
            break;
        case GateKind::S: {
            const std::complex<double> p = conj_phase ? -kImag : kImag;
            for (uint64_t i = 0; i < size; ++i)
                if (i & m) a[i] *= p;
            break;
        }
        case GateKind::T: {
            const std::complex<double> p =
                std::polar(1.0, conj_phase ? -std::numbers::pi / 4 : std::numbers::pi / 4);
            for (uint64_t i = 0; i < size; ++i)
                if (i & m) a[i] *= p;
            break;
        }
        case GateKind::X:
            for (uint64_t i = 0; i < size; ++i)
                if (!(i & m)) std::swap(a[i], a[i | m]);
            break;
        case GateKind::Y:
            // Y* = Y^T = -Y: the sign is a global phase here, so one branch serves all modes
            for (uint64_t i = 0; i < size; ++i)
                if (!(i & m)) {
                    const auto lo = a[i], hi = a[i | m];
                    a[i] = -kImag * hi;
                    a[i | m] = kImag * lo;
                }
            break;
        case GateKind::Z:
            for (uint64_t i = 0; i < size; ++i)
                if (i & m) a[i] = -a[i];
            break;
        default:
            throw std::logic_error("apply_single: two-qubit gate");
    }
}

void apply_one(std::complex<double>* a, uint64_t size, const Gate& g,
               const std::vector<uint32_t>& wire_map, bool conj_phase) {
    if (g.kind == GateKind::CX) {
        const uint64_t cm = uint64_t(1) << wire_map.at(g.q0);
        const uint64_t tm = uint64_t(1) << wire_map.at(g.q1);
        for (uint64_t i = 0; i < size; ++i)
            if ((i & cm) && !(i & tm)) std::swap(a[i], a[i | tm]);
        return;
    }
    if (g.kind == GateKind::SWAP) {
        const uint64_t um = uint64_t(1) << wire_map.at(g.q0);
        const uint64_t vm = uint64_t(1) << wire_map.at(g.q1);
        for (uint64_t i = 0; i < size; ++i)
            if ((i & um) && !(i & vm)) std::swap(a[i], a[i ^ um ^ vm]);
        return;
    }
    apply_single(a, size, g.kind, wire_map.at(g.q0), conj_phase);
}

std::vector<uint32_t> identity_wires(uint32_t k) {
    std::vector<uint32_t> w(k);
    for (uint32_t i = 0; i < k; ++i) w[i] = i;
    return w;
}

std::vector<std::pair<uint32_t, uint32_t>> d_pairs(const RegisterMap& regs,
                                                   const SubsystemMask& d) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t q : d.qubits()) pairs.emplace_back(q, regs.primed_wire(q));
    return pairs;
}

std::vector<std::pair<uint32_t, uint32_t>> r_pairs(const RegisterMap& regs) {
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    for (uint32_t k = 0; k < regs.a_size; ++k)
        pairs.emplace_back(regs.r_wire(k), regs.r_prime_wire(k));
    return pairs;
}

DecodeOutcome finish_projection(Eigen::VectorXcd& amps, const RegisterMap& regs,
                                const SubsystemMask& d) {
    const uint32_t k = regs.total_qubits();
    const double pi_v = project_bell_pairs(amps, k, d_pairs(regs, d));
    if (pi_v <= 1e-15)
        throw impossible_outcome_error("decoding projection has zero probability");
    const double fid = project_bell_pairs(amps, k, r_pairs(regs)) / pi_v;
    return {fid, pi_v};
}

}  // namespace

std::vector<uint32_t> RegisterMap::system_wires() const { return identity_wires(n); }

std::vector<uint32_t> RegisterMap::r_wires() const {
    std::vector<uint32_t> w;
    for (uint32_t k = 0; k < a_size; ++k) w.push_back(r_wire(k));
    return w;
}

std::vector<uint32_t> RegisterMap::r_prime_wires() const {
    std::vector<uint32_t> w;
    for (uint32_t k = 0; k < a_size; ++k) w.push_back(r_prime_wire(k));
    return w;
}

std::vector<uint32_t> RegisterMap::b_prime_wires() const {
    std::vector<uint32_t> w;
    for (uint32_t j = 0; j < n; ++j)
        if (!a.contains(j)) w.push_back(primed[j]);
    return w;
}

std::vector<uint32_t> RegisterMap::primed_wires_of(const SubsystemMask& m) const {
    std::vector<uint32_t> w;
    for (uint32_t q : m.qubits()) w.push_back(primed[q]);
    return w;
}

DenseState build_scrambled_state(const DopedCircuit& c, const SubsystemMask& a, uint32_t cap) {
    const uint32_t n = c.n();
    if (a.n() != n) throw std::invalid_argument("build_scrambled_state: mask size mismatch");
    const uint32_t a_size = a.popcount();
    if (a_size == 0) throw std::invalid_argument("build_scrambled_state: A is empty");
    const uint32_t total = 2 * n + 2 * a_size;
    if (total > cap || total > 30)
        throw std::length_error("build_scrambled_state: 2n + 2|A| exceeds the dense cap");

    RegisterMap regs;
    regs.n = n;
    regs.a_size = a_size;
    regs.a = a;
    regs.primed.resize(n);
    uint32_t a_seen = 0, b_seen = 0;
    for (uint32_t j = 0; j < n; ++j) {
        if (a.contains(j))
            regs.primed[j] = 2 * n + a_seen++;
        else
            regs.primed[j] = n + a_size + b_seen++;
    }

    DenseState s;
    s.regs = regs;
    s.amps = Eigen::VectorXcd::Zero(int64_t(1) << total);
    s.amps[0] = 1.0;

    std::vector<Gate> pair_gates;
    auto add_pair = [&pair_gates](uint32_t u, uint32_t v) {
        pair_gates.push_back({GateKind::H, u});
        pair_gates.push_back({GateKind::CX, u, v});
    };
    uint32_t a_idx = 0;
    for (uint32_t j = 0; j < n; ++j) {
        if (a.contains(j))
            add_pair(j, regs.r_wire(a_idx++));
        else
            add_pair(j, regs.primed[j]);
    }
    for (uint32_t k = 0; k < a_size; ++k) add_pair(2 * n + k, regs.r_prime_wire(k));
    apply_gates(s.amps, total, pair_gates, identity_wires(total));

    apply_gates(s.amps, total, c.gates(), identity_wires(n));
    return s;
}

void apply_gates(Eigen::VectorXcd& amps, uint32_t total_qubits, const std::vector<Gate>& gates,
                 const std::vector<uint32_t>& wire_map, ApplyMode mode) {
    const uint64_t size = uint64_t(1) << total_qubits;
    if (uint64_t(amps.size()) != size)
        throw std::invalid_argument("apply_gates: amplitude vector size mismatch");
    for (uint32_t w : wire_map)
        if (w >= total_qubits) throw std::invalid_argument("apply_gates: wire out of range");
    const bool reversed = mode == ApplyMode::dagger || mode == ApplyMode::transpose;
    const bool conj_phase = mode == ApplyMode::dagger || mode == ApplyMode::conjugate;
    std::complex<double>* a = amps.data();
    if (reversed) {
        for (auto it = gates.rbegin(); it != gates.rend(); ++it)
            apply_one(a, size, *it, wire_map, conj_phase);
    } else {
        for (const Gate& g : gates) apply_one(a, size, g, wire_map, conj_phase);
    }
}

double project_bell_pairs(Eigen::VectorXcd& amps, uint32_t total_qubits,
                          const std::vector<std::pair<uint32_t, uint32_t>>& pairs) {
    const uint64_t size = uint64_t(1) << total_qubits;
    if (uint64_t(amps.size()) != size)
        throw std::invalid_argument("project_bell_pairs: amplitude vector size mismatch");
    std::complex<double>* a = amps.data();
    for (auto [u, v] : pairs) {
        if (u >= total_qubits || v >= total_qubits || u == v)
            throw std::invalid_argument("project_bell_pairs: bad wire pair");
        const uint64_t um = uint64_t(1) << u;
        const uint64_t vm = uint64_t(1) << v;
        for (uint64_t i = 0; i < size; ++i)
            if (!(i & um) && !(i & vm)) {
                const auto avg = (a[i] + a[i | um | vm]) * 0.5;
                a[i] = avg;
                a[i | um | vm] = avg;
                a[i | um] = 0.0;
                a[i | vm] = 0.0;
            }
    }
    return amps.squaredNorm();
}

double bell_projection_probability(const DenseState& s,
                                   const std::vector<std::pair<uint32_t, uint32_t>>& pairs) {
    Eigen::VectorXcd amps = s.amps;
    return project_bell_pairs(amps, s.regs.total_qubits(), pairs);
}

DecodeOutcome decode_and_project(const DenseState& s, const DecoderBundle& bundle) {
    if (bundle.n != s.regs.n)
        throw std::invalid_argument("decode_and_project: bundle size mismatch");
    const uint32_t k = s.regs.total_qubits();
    Eigen::VectorXcd amps = s.amps;
    const std::vector<uint32_t> sys = s.regs.system_wires();
    const std::vector<uint32_t>& primed = s.regs.primed;
    const std::vector<Gate> diag_gates = bundle.diagonalizer.to_circuit();
    apply_gates(amps, k, diag_gates, sys, ApplyMode::dagger);                      // D† on D
    apply_gates(amps, k, bundle.decrypter.to_circuit(), primed, ApplyMode::conjugate);  // V′*
    apply_gates(amps, k, diag_gates, primed, ApplyMode::transpose);                // D^T on D′
    apply_gates(amps, k, bundle.randomizer.to_circuit(), primed, ApplyMode::conjugate);  // R*
    return finish_projection(amps, s.regs, bundle.d());
}

DecodeOutcome decode_and_project(const DenseState& s, const CliffordTableau& decoder,
                                 const SubsystemMask& d) {
    if (decoder.n() != s.regs.n)
        throw std::invalid_argument("decode_and_project: decoder size mismatch");
    if (d.n() != s.regs.n)
        throw std::invalid_argument("decode_and_project: mask size mismatch");
    const uint32_t k = s.regs.total_qubits();
    Eigen::VectorXcd amps = s.amps;
    apply_gates(amps, k, decoder.to_circuit(), s.regs.primed, ApplyMode::transpose);
    return finish_projection(amps, s.regs, d);
}

Eigen::MatrixXcd reduced_density(const DenseState& s, const std::vector<uint32_t>& wires) {
    const uint32_t k = s.regs.total_qubits();
    const uint32_t m = uint32_t(wires.size());
    if (m > 14) throw std::length_error("reduced_density: marginal exceeds 14 qubits");
    std::vector<int> pos(k, -1);
    for (uint32_t j = 0; j < m; ++j) {
        if (wires[j] >= k) throw std::invalid_argument("reduced_density: wire out of range");
        if (pos[wires[j]] != -1) throw std::invalid_argument("reduced_density: duplicate wire");
        pos[wires[j]] = int(j);
    }
    const uint64_t dim = uint64_t(1) << m;
    const uint64_t rest_dim = uint64_t(1) << (k - m);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(int64_t(dim), int64_t(rest_dim));
    const uint64_t size = uint64_t(1) << k;
    for (uint64_t i = 0; i < size; ++i) {
        uint64_t w = 0, r = 0;
        uint32_t r_bits = 0;
        for (uint32_t q = 0; q < k; ++q) {
            const uint64_t bit = (i >> q) & 1;
            if (pos[q] >= 0)
                w |= bit << pos[q];
            else
                r |= bit << r_bits++;
        }
        v(int64_t(w), int64_t(r)) += s.amps[int64_t(i)];
    }
    return v * v.adjoint();
}

double entanglement_entropy(const DenseState& s, const std::vector<uint32_t>& wires) {
    const uint32_t k = s.regs.total_qubits();
    std::vector<bool> in_set(k, false);
    for (uint32_t w : wires) {
        if (w >= k) throw std::invalid_argument("entanglement_entropy: wire out of range");
        in_set[w] = true;
    }
    std::vector<uint32_t> side = wires;
    if (2 * wires.size() > k) {
        side.clear();
        for (uint32_t q = 0; q < k; ++q)
            if (!in_set[q]) side.push_back(q);
    }
    const Eigen::MatrixXcd rho = reduced_density(s, side);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (int64_t i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lam = solver.eigenvalues()[i];
        if (lam > 1e-12) entropy -= lam * std::log2(lam);
    }
    return entropy;
}

double mutual_information(const DenseState& s, const std::vector<uint32_t>& p,
                          const std::vector<uint32_t>& q) {
    std::vector<uint32_t> joint = p;
    joint.insert(joint.end(), q.begin(), q.end());
    std::vector<uint32_t> sorted = joint;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("mutual_information: blocks overlap");
    return entanglement_entropy(s, p) + entanglement_entropy(s, q) -
           entanglement_entropy(s, joint);
}

}  // namespace cliffdec
