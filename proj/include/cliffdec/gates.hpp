#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cliffdec/pauli.hpp"

namespace cliffdec {

// Gate set: the Clifford generators plus T. Circuit text format is one gate
// per line, "NAME q" or "NAME q r", e.g.
//
//     H 0
//     CX 0 1
//     T 1
//
// parse(serialize(gates)) round-trips exactly.

enum class GateKind : uint8_t { H, S, CX, SWAP, X, Y, Z, T };

struct Gate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = 0;  // used by CX (control=q0, target=q1) and SWAP

    bool is_two_qubit() const { return kind == GateKind::CX || kind == GateKind::SWAP; }
    bool is_clifford() const { return kind != GateKind::T; }
    bool operator==(const Gate&) const = default;
};

const char* gate_name(GateKind k);

std::vector<Gate> parse_circuit(std::string_view text);
std::string serialize_circuit(const std::vector<Gate>& gates);

// highest qubit index used, plus one; 0 for an empty list
uint32_t min_qubit_count(const std::vector<Gate>& gates);

// In-place Heisenberg update p -> g† p g for a Clifford gate g (errors on T).
// This is the action of appending g to a circuit and pulling a Pauli back
// through it; sign bookkeeping is exact.
void conjugate_by_gate(PauliString& p, const Gate& g);

// gates realizing g†, first-applied-first (S† expands to S S S)
void append_inverse_gate(std::vector<Gate>& out, const Gate& g);

}  // namespace cliffdec
