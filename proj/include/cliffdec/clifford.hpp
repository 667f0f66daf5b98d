#pragma once

#include <stdexcept>
#include <vector>

#include "cliffdec/gates.hpp"
#include "cliffdec/pauli.hpp"
#include "cliffdec/rng.hpp"

namespace cliffdec {

// Stabilizer tableau for an n-qubit Clifford U: the 2n signed Pauli images
// U† X_i U and U† Z_i U. Rows determine U up to global phase. apply_* appends
// a gate to the circuit (U <- g U) in O(n/64) word operations.

class CliffordTableau {
public:
    explicit CliffordTableau(uint32_t n);
    static CliffordTableau identity(uint32_t n) { return CliffordTableau(n); }
    static CliffordTableau from_circuit(uint32_t n, const std::vector<Gate>& gates);

    uint32_t n() const { return n_; }
    const PauliString& x_image(uint32_t i) const { return x_img_[i]; }
    const PauliString& z_image(uint32_t i) const { return z_img_[i]; }
    void set_x_image(uint32_t i, PauliString p);
    void set_z_image(uint32_t i, PauliString p);

    void apply_gate(const Gate& g);
    void apply_h(uint32_t q) { apply_gate({GateKind::H, q}); }
    void apply_s(uint32_t q) { apply_gate({GateKind::S, q}); }
    void apply_cx(uint32_t c, uint32_t t) { apply_gate({GateKind::CX, c, t}); }

    // U† p U for an arbitrary signed Pauli, exact phase
    PauliString conjugate(const PauliString& p) const;

    // rows pairwise satisfy the X/Z commutation pattern and are Hermitian
    bool is_valid() const;

    // identity outside `mask`: rows off the mask are untouched generators and
    // rows on the mask have images supported inside it
    bool supported_on(const SubsystemMask& mask) const;

    bool operator==(const CliffordTableau&) const = default;
    size_t hash() const;

    // canonical gate sequence rebuilding this tableau exactly (including row
    // signs); length O(n^2)
    std::vector<Gate> to_circuit() const;

private:
    uint32_t n_;
    std::vector<PauliString> x_img_, z_img_;
};

// tableau of U W (W applied first)
CliffordTableau compose(const CliffordTableau& u, const CliffordTableau& w);
// tableau of U†
CliffordTableau inverse(const CliffordTableau& t);
// tableau of U* (entrywise conjugate in the computational basis)
CliffordTableau conjugated(const CliffordTableau& t);
// tableau of U^T = (U*)†
CliffordTableau transposed(const CliffordTableau& t);

// Exactly uniform over the 2^(n^2+2n) prod_j (4^j - 1) Cliffords mod phase:
// a random symplectic basis is built pair by pair (each step uniform over its
// full solution set), then 2n uniform sign bits.
CliffordTableau sample_uniform(uint32_t n, Rng& rng);

// Partially specified Clifford conjugation action: source_i -> target_i.
// Sources must be independent modulo phase, everything Hermitian, and targets
// must reproduce the sources' pairwise commutation pattern.
struct PartialPauliMap {
    uint32_t n = 0;
    std::vector<PauliString> sources;
    std::vector<PauliString> targets;

    void add(PauliString source, PauliString target);
};

struct not_completable_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Any Clifford U with U† source_i U = target_i exactly (signs included);
// unspecified directions are completed deterministically, then a Pauli
// correction layer repairs the constrained signs. Throws not_completable_error
// naming the first offending pair.
CliffordTableau complete_to_clifford(const PartialPauliMap& m);

}  // namespace cliffdec
