#include "cliffdec/synth.hpp"

#include <json.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace cliffdec {

namespace {

// place a k-qubit tableau onto the given wires of an n-qubit identity; exact
// because to_circuit reproduces row signs
CliffordTableau embed_tableau(const CliffordTableau& small, uint32_t n,
                              const std::vector<uint32_t>& wires) {
    std::vector<Gate> gates = small.to_circuit();
    for (Gate& g : gates) {
        g.q0 = wires[g.q0];
        if (g.is_two_qubit()) g.q1 = wires[g.q1];
    }
    return CliffordTableau::from_circuit(n, gates);
}

// greedy symplectic Gram-Schmidt: first anticommuting partner, lexicographic
// over the incoming basis order; leftovers are the radical
struct PairBasis {
    std::vector<std::pair<PauliString, PauliString>> pairs;
    uint32_t radical = 0;
};

PairBasis symplectic_pairs(std::vector<PauliString> basis) {
    for (PauliString& p : basis) p = p.letters();
    PairBasis out;
    while (true) {
        size_t ai = basis.size(), bi = basis.size();
        for (size_t i = 0; i < basis.size() && ai == basis.size(); ++i)
            for (size_t j = i + 1; j < basis.size(); ++j)
                if (!commutes(basis[i], basis[j])) {
                    ai = i;
                    bi = j;
                    break;
                }
        if (ai == basis.size()) break;
        PauliString a = basis[ai], b = basis[bi];
        basis.erase(basis.begin() + long(bi));
        basis.erase(basis.begin() + long(ai));
        for (PauliString& v : basis) {
            bool hit_a = !commutes(v, a);
            bool hit_b = !commutes(v, b);
            if (hit_a) v = (v * b).letters();
            if (hit_b) v = (v * a).letters();
        }
        out.pairs.emplace_back(a, b);
    }
    out.radical = uint32_t(basis.size());
    return out;
}

// echelon rows over the learned generators that remember, for each reduced
// letter vector, an exact signed product of generators and its exact image:
// the invariant U† prod U = img survives every multiplication
struct TrackedRow {
    PauliString vec;   // positive letters, pivot = lowest symplectic coordinate
    PauliString prod;  // signed product of original generators
    PauliString img;   // its signed image under U
};

class TrackedBasis {
  public:
    explicit TrackedBasis(uint32_t n) : n_(n) {}

    void insert(const PauliString& gen, const PauliString& img) {
        TrackedRow row{gen.letters(), gen, img};
        reduce(row);
        if (row.vec.is_identity_letters()) return;  // dependent generator
        rows_.push_back(std::move(row));
        std::sort(rows_.begin(), rows_.end(), [](const TrackedRow& a, const TrackedRow& b) {
            return a.vec.lowest_coordinate() < b.vec.lowest_coordinate();
        });
    }

    // signed image of an arbitrary group element: s = i^(w-k) · prod, so
    // U† s U = i^(w-k) · img with w, k the sign exponents of s and prod
    PauliString image_of(const PauliString& s) const {
        TrackedRow acc{s.letters(), PauliString::identity(s.n()), PauliString::identity(s.n())};
        reduce(acc);
        if (!acc.vec.is_identity_letters())
            throw not_completable_error("element is outside the learned group: " + s.str());
        // acc.prod has s's letters; transfer the phase mismatch onto the image
        uint8_t w = s.sign_exponent();
        uint8_t k = acc.prod.sign_exponent();
        PauliString out = acc.img;
        out.set_raw_phase(uint8_t((out.raw_phase() + w + 4 - k) & 3));
        return out;
    }

  private:
    void reduce(TrackedRow& row) const {
        for (const TrackedRow& r : rows_) {
            if (row.vec.is_identity_letters()) break;
            if (r.vec.lowest_coordinate() != row.vec.lowest_coordinate()) continue;
            row.vec = (row.vec * r.vec).letters();
            row.prod = row.prod * r.prod;
            row.img = row.img * r.img;
        }
    }

    uint32_t n_;
    std::vector<TrackedRow> rows_;
};

}  // namespace

std::pair<CliffordTableau, SubsystemMask> build_diagonalizer(
    const LearnedGroups& groups, std::optional<SubsystemMask> e_choice, bool truncate) {
    const uint32_t n = groups.d.n();
    const std::vector<uint32_t> dq = groups.d.qubits();
    const uint32_t dsz = uint32_t(dq.size());

    std::vector<PauliString> restricted;
    for (const PauliString& g : groups.generators) {
        if (!g.restricted_to(groups.d.complement()).is_identity_letters())
            throw std::invalid_argument("learned generator leaks outside D: " + g.str());
        restricted.push_back(g.restricted_to(groups.d));
    }
    PairBasis pb = symplectic_pairs(restricted);
    if (pb.radical != 0 && !truncate)
        throw degenerate_group_error("learned group has " + std::to_string(pb.radical) +
                                     " central direction(s); no subsystem E carries it exactly");
    const uint32_t h = uint32_t(pb.pairs.size());

    SubsystemMask e(n);
    if (e_choice) {
        e = *e_choice;
        if (e.n() != n || !e.subset_of(groups.d) || e.popcount() != h)
            throw std::invalid_argument("E choice must pick exactly " + std::to_string(h) +
                                        " qubits of D");
    } else {
        for (uint32_t j = 0; j < h; ++j) e.add(dq[j]);
    }

    // position of each E qubit inside D, ascending; pair j gets slot j
    std::vector<uint32_t> slots;
    for (uint32_t i = 0; i < dsz; ++i)
        if (e.contains(dq[i])) slots.push_back(i);

    PartialPauliMap m;
    m.n = dsz;
    for (uint32_t j = 0; j < h; ++j) {
        m.add(pb.pairs[j].first, PauliString::single_x(dsz, slots[j]));
        m.add(pb.pairs[j].second, PauliString::single_z(dsz, slots[j]));
    }
    return {embed_tableau(complete_to_clifford(m), n, dq), e};
}

CliffordTableau build_decrypter(const LearnedGroups& groups, const CliffordTableau& diagonalizer,
                                const SubsystemMask& e) {
    const uint32_t n = groups.d.n();
    if (diagonalizer.n() != n || e.n() != n)
        throw std::invalid_argument("decrypter inputs disagree on qubit count");

    TrackedBasis basis(n);
    for (size_t i = 0; i < groups.generators.size(); ++i)
        basis.insert(groups.generators[i], groups.images[i]);

    CliffordTableau d_inv = inverse(diagonalizer);
    PartialPauliMap m;
    m.n = n;
    for (uint32_t q : e.qubits()) {
        for (const PauliString& p :
             {PauliString::single_x(n, q), PauliString::single_z(n, q)}) {
            PauliString s = d_inv.conjugate(p);  // D p D†, a signed element of G_D
            m.add(s, basis.image_of(s));
        }
    }
    return complete_to_clifford(m);
}

CliffordTableau build_randomizer(uint32_t n, const SubsystemMask& f, const SubsystemMask& c,
                                 Rng& rng) {
    if (f.n() != n || c.n() != n) throw std::invalid_argument("mask size mismatch");
    if (!f.disjoint_from(c)) throw std::invalid_argument("F and C overlap");
    if (f.popcount() == 0) return CliffordTableau(n);  // nothing to hide
    std::vector<uint32_t> wires = f.unioned(c).qubits();
    return embed_tableau(sample_uniform(uint32_t(wires.size()), rng), n, wires);
}

DecoderBundle assemble(const CliffordTableau& diagonalizer, const CliffordTableau& randomizer,
                       const CliffordTableau& decrypter, const SubsystemMask& e,
                       const SubsystemMask& f) {
    const uint32_t n = diagonalizer.n();
    if (randomizer.n() != n || decrypter.n() != n || e.n() != n || f.n() != n)
        throw std::invalid_argument("bundle parts disagree on qubit count");
    if (!e.disjoint_from(f)) throw std::invalid_argument("E and F overlap");
    if (!diagonalizer.supported_on(e.unioned(f)))
        throw std::invalid_argument("diagonalizer acts outside D");
    if (!randomizer.supported_on(e.complement()))
        throw std::invalid_argument("randomizer acts on E");

    DecoderBundle b;
    b.n = n;
    b.diagonalizer = diagonalizer;
    b.randomizer = randomizer;
    b.decrypter = decrypter;
    b.e = e;
    b.f = f;
    return b;
}

CliffordTableau composite_tableau(const DecoderBundle& b) {
    return compose(b.diagonalizer,
                   compose(b.randomizer, compose(inverse(b.diagonalizer), b.decrypter)));
}

std::string bundle_to_text(const DecoderBundle& b) {
    nlohmann::json j;
    j["n"] = b.n;
    j["e"] = b.e.qubits();
    j["f"] = b.f.qubits();
    j["randomizer_seed"] = b.randomizer_seed;
    j["diagonalizer"] = serialize_circuit(b.diagonalizer.to_circuit());
    j["randomizer"] = serialize_circuit(b.randomizer.to_circuit());
    j["decrypter"] = serialize_circuit(b.decrypter.to_circuit());
    return j.dump(2);
}

DecoderBundle bundle_from_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const uint32_t n = j.at("n").get<uint32_t>();
    DecoderBundle b;
    b.n = n;
    b.e = SubsystemMask::from_indices(n, j.at("e").get<std::vector<uint32_t>>());
    b.f = SubsystemMask::from_indices(n, j.at("f").get<std::vector<uint32_t>>());
    b.randomizer_seed = j.at("randomizer_seed").get<uint64_t>();
    b.diagonalizer =
        CliffordTableau::from_circuit(n, parse_circuit(j.at("diagonalizer").get<std::string>()));
    b.randomizer =
        CliffordTableau::from_circuit(n, parse_circuit(j.at("randomizer").get<std::string>()));
    b.decrypter =
        CliffordTableau::from_circuit(n, parse_circuit(j.at("decrypter").get<std::string>()));
    return b;
}

}  // namespace cliffdec
