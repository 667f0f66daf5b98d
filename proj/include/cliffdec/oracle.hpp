#pragma once

#include <cliffdec/doped.hpp>
#include <cliffdec/gates.hpp>
#include <cliffdec/pauli.hpp>
#include <cliffdec/synth.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cliffdec {

// Dense statevector reference: builds the mirrored-register decoding state
// exactly on small systems, with no stabilizer shortcuts.  Wire layout
// (amplitude index bit q = wire q, wire 0 least significant):
//
//   [0, n)               system (inputs A ∪ B, outputs C ∪ D)
//   [n, n+|A|)           R   — EPR partners of the A inputs
//   [n+|A|, 2n)          B′  — EPR partners of the B inputs
//   [2n, 2n+|A|)         A′  — mirror inputs
//   [2n+|A|, 2n+2|A|)    R′  — EPR partners of A′
struct RegisterMap {
    uint32_t n = 0;
    uint32_t a_size = 0;
    SubsystemMask a{1};
    std::vector<uint32_t> primed;  // primed_wire of each system wire

    uint32_t total_qubits() const { return 2 * n + 2 * a_size; }
    uint32_t r_wire(uint32_t k) const { return n + k; }
    uint32_t r_prime_wire(uint32_t k) const { return 2 * n + a_size + k; }
    // mirror slot of system wire j: A-wires map into A′, B-wires into B′
    uint32_t primed_wire(uint32_t j) const { return primed[j]; }

    std::vector<uint32_t> system_wires() const;
    std::vector<uint32_t> r_wires() const;
    std::vector<uint32_t> r_prime_wires() const;
    std::vector<uint32_t> b_prime_wires() const;
    std::vector<uint32_t> primed_wires_of(const SubsystemMask& m) const;
};

struct DenseState {
    RegisterMap regs;
    Eigen::VectorXcd amps;
};

// EPR pairs on (A,R), (B,B′), (A′,R′), then the circuit on the system wires.
// Total qubit count 2n + 2|A| must not exceed cap.
DenseState build_scrambled_state(const DopedCircuit& c, const SubsystemMask& a,
                                 uint32_t cap = 24);

// How a gate list maps onto the dense state: as written, U†, U*, or U^T.
enum class ApplyMode { normal, dagger, conjugate, transpose };

// Applies the gates (kind-level semantics identical to the tableau side) on
// wires wire_map[q0], wire_map[q1].  Modes dagger/transpose reverse the
// order; dagger/conjugate conjugate the S and T phases.  Y picks up a global
// phase under conjugate/transpose, which cancels in all probabilities.
void apply_gates(Eigen::VectorXcd& amps, uint32_t total_qubits, const std::vector<Gate>& gates,
                 const std::vector<uint32_t>& wire_map, ApplyMode mode = ApplyMode::normal);

// Projects each (u,v) pair onto the Bell state (|00⟩+|11⟩)/√2, in place and
// without renormalizing; returns the Born probability of the projection.
double project_bell_pairs(Eigen::VectorXcd& amps, uint32_t total_qubits,
                          const std::vector<std::pair<uint32_t, uint32_t>>& pairs);

// Born probability of the Bell projection without mutating the state.
double bell_projection_probability(const DenseState& s,
                                   const std::vector<std::pair<uint32_t, uint32_t>>& pairs);

struct impossible_outcome_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecodeOutcome {
    double fidelity = 0.0;
    double pi_v = 0.0;
};

// Full decoding protocol for a bundle: D† on the D wires, V′* on the primed
// system, D^T on D′, R* on (F∪C)′, projection onto the DD′ Bell pairs
// (probability pi_v; zero raises impossible_outcome_error), then the RR′
// Bell expectation of the normalized state.
DecodeOutcome decode_and_project(const DenseState& s, const DecoderBundle& bundle);

// Plain-tableau protocol: the decoder W acts as W^T on the primed system
// wires (so W = U† decodes a t = 0 scrambler U perfectly), then DD′
// projection and RR′ expectation as above.  Equivalent to the bundle path
// when W is the inverse of the bundle's composite tableau.
DecodeOutcome decode_and_project(const DenseState& s, const CliffordTableau& decoder,
                                 const SubsystemMask& d);

// Reduced density matrix on the given wires (at most 14 qubits).
Eigen::MatrixXcd reduced_density(const DenseState& s, const std::vector<uint32_t>& wires);

// Von Neumann entropy in bits of the marginal on `wires`, computed on the
// smaller of the set and its complement (pure global state).
double entanglement_entropy(const DenseState& s, const std::vector<uint32_t>& wires);

// I(P:Q) = S(P) + S(Q) − S(PQ) in bits; a maximally entangled pair of |A|
// qubits between P and Q gives 2|A|.  P and Q must be disjoint.
double mutual_information(const DenseState& s, const std::vector<uint32_t>& p,
                          const std::vector<uint32_t>& q);

}  // namespace cliffdec
