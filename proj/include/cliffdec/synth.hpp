#pragma once

#include <cliffdec/clifford.hpp>
#include <cliffdec/learner.hpp>
#include <cliffdec/pauli.hpp>
#include <cliffdec/rng.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace cliffdec {

// Thrown when the learned group cannot host a full Pauli group on any
// sub-register (odd symplectic rank or central elements), i.e. the clean
// E1 == E2 setting does not hold and strict synthesis refuses to guess.
struct degenerate_group_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The three Clifford factors of the decoder V = D·R·D†·V′ plus the masks
// they were built for.  All tableaux are n-qubit; diagonalizer is supported
// on D = E ∪ F, randomizer on F ∪ C.
struct DecoderBundle {
    uint32_t n = 0;
    CliffordTableau diagonalizer;
    CliffordTableau randomizer;
    CliffordTableau decrypter;
    SubsystemMask e;
    SubsystemMask f;
    uint64_t randomizer_seed = 0;

    DecoderBundle() : diagonalizer(1), randomizer(1), decrypter(1), e(1), f(1) {}
    SubsystemMask d() const { return e.unioned(f); }
};

// Clifford on D mapping G_D onto the full Pauli group of E (D† g D spans
// P_E exactly).  E defaults to the lowest-index qubits of D; pass e_choice
// to place it elsewhere (|e_choice| must equal the hyperbolic size).
// Degenerate groups throw degenerate_group_error unless truncate = true, in
// which case the largest hyperbolic subgroup is used and the leftover
// central directions are ignored.
std::pair<CliffordTableau, SubsystemMask> build_diagonalizer(
    const LearnedGroups& groups, std::optional<SubsystemMask> e_choice = std::nullopt,
    bool truncate = false);

// n-qubit Clifford V′ with (D†V′)† P_E (D†V′) = image(P_E) sign-exact on
// every generator of P_E, built through complete_to_clifford.
CliffordTableau build_decrypter(const LearnedGroups& groups, const CliffordTableau& diagonalizer,
                                const SubsystemMask& e);

// Uniform random Clifford supported on F ∪ C, identity elsewhere; exactly
// identity when F is empty (nothing to hide).
CliffordTableau build_randomizer(uint32_t n, const SubsystemMask& f, const SubsystemMask& c,
                                 Rng& rng);

DecoderBundle assemble(const CliffordTableau& diagonalizer, const CliffordTableau& randomizer,
                       const CliffordTableau& decrypter, const SubsystemMask& e,
                       const SubsystemMask& f);

// Tableau of the operator product D·R·D†·V′ (decrypter applied first).
CliffordTableau composite_tableau(const DecoderBundle& b);

// Serialization: JSON header (n, masks, seed) followed by the three tableaux
// in circuit text format.
std::string bundle_to_text(const DecoderBundle& b);
DecoderBundle bundle_from_text(const std::string& text);

}  // namespace cliffdec
