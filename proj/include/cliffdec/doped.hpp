#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cliffdec/clifford.hpp"
#include "cliffdec/gates.hpp"
#include "cliffdec/pauli.hpp"
#include "cliffdec/rng.hpp"

namespace cliffdec {

// Exact element of Z[sqrt(2)] scaled by a power of two:
//
//     value = (a + b*sqrt(2)) / 2^e
//
// closed under addition, multiplication and division by sqrt(2), which is all
// that conjugating through Clifford+T circuits requires. Kept normalized
// (a, b not both even unless e = 0), so equality is plain field comparison and
// preservation tests involve no floating-point tolerance.
struct SqrtCoeff {
    int64_t a = 0;
    int64_t b = 0;
    uint32_t e = 0;

    static SqrtCoeff zero() { return {}; }
    static SqrtCoeff one() { return {1, 0, 0}; }

    bool is_zero() const { return a == 0 && b == 0; }
    double value() const;

    SqrtCoeff& normalize();
    SqrtCoeff& negate();
    SqrtCoeff& div_sqrt2();  // multiply by 1/sqrt(2)
    SqrtCoeff plus(const SqrtCoeff& o) const;
    SqrtCoeff times(const SqrtCoeff& o) const;
    SqrtCoeff squared() const { return times(*this); }

    bool operator==(const SqrtCoeff&) const = default;
};

// One term of a real Pauli combination: canonical positive letters, the sign
// folded into the coefficient.
struct PauliTerm {
    PauliString op;  // sign_exponent() == 0
    SqrtCoeff coeff;
};

// Real linear combination of Hermitian Pauli strings with distinct letter
// parts, ordered deterministically by symplectic coordinates.
class PauliSum {
public:
    explicit PauliSum(uint32_t n) : n_(n) {}
    // single Hermitian Pauli, its sign absorbed into the coefficient
    static PauliSum of(const PauliString& p);

    uint32_t n() const { return n_; }
    size_t term_count() const { return terms_.size(); }
    const std::vector<PauliTerm>& terms() const { return terms_; }

    // merge-add a term (op may carry a sign; it is folded in); zero
    // coefficients are dropped
    void add_term(const PauliString& op, SqrtCoeff c);

    // signed exact coefficient of the term whose letters match p (p's own sign
    // multiplies the result); zero when absent
    SqrtCoeff coeff_of(const PauliString& p) const;

    // exact sum of squared coefficients; equals one after any unitary
    // conjugation of a single Pauli
    SqrtCoeff norm2() const;

    // the single term, when term_count() == 1 and the coefficient is ±1,
    // reassembled as a signed Pauli
    std::optional<PauliString> as_single_pauli() const;

private:
    uint32_t n_;
    std::vector<PauliTerm> terms_;  // sorted by (x_words, z_words)
};

// Clifford + T circuit; t counts the T gates.
class DopedCircuit {
public:
    DopedCircuit(uint32_t n, std::vector<Gate> gates);

    uint32_t n() const { return n_; }
    const std::vector<Gate>& gates() const { return gates_; }
    uint32_t t_count() const { return t_count_; }

    // exact tableau of a t = 0 circuit
    CliffordTableau to_tableau() const;

private:
    uint32_t n_;
    std::vector<Gate> gates_;
    uint32_t t_count_;
};

// exact U† p U as a Pauli sum: Clifford gates permute terms, every T gate
// splits terms that anticommute with Z on its qubit into two 1/sqrt(2) parts,
// like terms merged
PauliSum propagate(const DopedCircuit& c, const PauliString& p);

// the signed image Pauli when U† p U is a single Pauli string, else empty
std::optional<PauliString> is_preserved(const DopedCircuit& c, const PauliString& p);

struct OtocOptions {
    // exact double Pauli-group sum when 4^(|X|+|Y|) is at most this
    uint64_t exact_cap = uint64_t(1) << 16;
    bool monte_carlo = false;  // permit sampling above the cap
    size_t samples = 10000;
    uint64_t seed = 0;
};

struct OtocResult {
    double value = 0.0;
    double std_error = 0.0;  // zero for exact evaluation
    bool exact = true;
    size_t samples = 0;
};

// 2^{-n} <tr(P_X U† P_Y U P_X U† P_Y U)> averaged over the full local Pauli
// groups on X and Y (identity included)
OtocResult otoc(const DopedCircuit& c, const SubsystemMask& x, const SubsystemMask& y,
                const OtocOptions& opts = {});

struct ScramblerReport {
    double omega = 0.0;
    double reference = 0.0;  // 2^{-2|A|} + 2^{-2|D|} - 2^{-2(|A|+|D|)}
    double deviation = 0.0;
    double tolerance = 0.0;
    // |A| + log2(2^{2|A|} Omega_AD), in the source normalization where a
    // perfectly recoverable |A| gives |A|
    double mutual_information = 0.0;
    bool scrambles = false;
};

ScramblerReport is_scrambler(const DopedCircuit& c, const SubsystemMask& a, const SubsystemMask& d,
                             double tolerance, const OtocOptions& opts = {});

enum class Ensemble { generic, simplified_class };

// generic: `depth` brickwork layers of uniform two-qubit Cliffords with t T
// gates spliced at random positions; simplified_class: scrambling Clifford,
// then one H T H T block on each of t/2 distinct qubits, then a Clifford that
// factors over doped/undoped wires — the preserved group on any readout mask
// is exactly the full Pauli group on the mask minus its doped qubits, so its
// symplectic form never degenerates (depth is ignored for this ensemble)
DopedCircuit sample_doped_circuit(uint32_t n, uint32_t t, Ensemble ensemble, uint32_t depth, Rng& rng);

}  // namespace cliffdec
