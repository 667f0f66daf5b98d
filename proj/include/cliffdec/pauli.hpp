#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cliffdec {

// Binary-symplectic Pauli operators.
//
// A PauliString on n qubits is stored as packed x/z bit vectors plus a phase
// exponent k, and denotes the operator
//
//     i^k * prod_q X_q^{x_q} * prod_q Z_q^{z_q}
//
// (all X factors first, then all Z factors; factors on distinct qubits
// commute, so only the X-before-Z order matters). In this encoding
// Y = i * X Z, so the canonical letter string "Y" is (x=1, z=1, k=1).
// Multiplication and commutation reduce to word-parallel XORs and popcounts.

class SubsystemMask;

class PauliString {
public:
    PauliString() : n_(0), phase_(0) {}
    explicit PauliString(uint32_t n) : n_(n), phase_(0), x_(words_for(n)), z_(words_for(n)) {}

    static PauliString identity(uint32_t n) { return PauliString(n); }
    static PauliString single_x(uint32_t n, uint32_t q);
    static PauliString single_y(uint32_t n, uint32_t q);
    static PauliString single_z(uint32_t n, uint32_t q);

    // text form: optional sign prefix (+, -, +i, -i), then one of IXYZ per
    // qubit, leftmost letter = qubit 0; e.g. "-iXYZI"
    static PauliString parse(std::string_view text);
    std::string str() const;

    uint32_t n() const { return n_; }
    bool x(uint32_t q) const { return (x_[q >> 6] >> (q & 63)) & 1; }
    bool z(uint32_t q) const { return (z_[q >> 6] >> (q & 63)) & 1; }
    void set_x(uint32_t q, bool v);
    void set_z(uint32_t q, bool v);

    // phase exponent k of the i^k X^x Z^z form
    uint8_t raw_phase() const { return phase_; }
    void set_raw_phase(uint8_t k) { phase_ = k & 3; }

    // exponent w with *this == i^w * (plain letter string); w is even exactly
    // for Hermitian operators, and the sign prefix printed by str() is i^w
    uint8_t sign_exponent() const;
    bool is_hermitian() const { return (sign_exponent() & 1) == 0; }
    bool is_negative() const { return sign_exponent() == 2; }

    bool is_identity_letters() const;  // all letters I, any phase
    uint32_t weight() const;           // number of non-I letters
    SubsystemMask support() const;

    // true when the letter strings agree and only the sign may differ
    bool same_letters(const PauliString& other) const;

    PauliString& mul_inplace(const PauliString& rhs);
    PauliString& negate() { phase_ = (phase_ + 2) & 3; return *this; }
    PauliString& times_i() { phase_ = (phase_ + 1) & 3; return *this; }

    // drop the phase: canonical positive letter string
    PauliString letters() const;

    // complex conjugate in the computational basis (X*, Z* real, Y* = -Y)
    PauliString conj() const;

    // restriction to the qubits of `mask`, reindexed to a mask.popcount()-qubit
    // string in ascending qubit order; phase kept
    PauliString restricted_to(const SubsystemMask& mask) const;
    // inverse of restricted_to: place this string's letters on the qubits of
    // `mask` inside an n-qubit identity
    PauliString embedded_in(uint32_t n, const SubsystemMask& mask) const;

    bool commutes_with(const PauliString& other) const;

    // identical operator, including phase
    bool operator==(const PauliString& other) const {
        return n_ == other.n_ && phase_ == other.phase_ && x_ == other.x_ && z_ == other.z_;
    }
    bool operator!=(const PauliString& other) const { return !(*this == other); }

    const std::vector<uint64_t>& x_words() const { return x_; }
    const std::vector<uint64_t>& z_words() const { return z_; }

    // symplectic coordinate j: j < n is x_j, j >= n is z_{j-n};
    // lowest set coordinate or n*2 when the letter string is identity
    uint32_t lowest_coordinate() const;
    bool coordinate(uint32_t j) const { return j < n_ ? x(j) : z(j - n_); }

    size_t hash() const;

private:
    static size_t words_for(uint32_t n) { return (size_t(n) + 63) / 64; }

    uint32_t n_;
    uint8_t phase_;
    std::vector<uint64_t> x_, z_;
};

PauliString multiply(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return multiply(a, b); }
bool commutes(const PauliString& a, const PauliString& b);

// Subset of qubit indices on an n-qubit register.
class SubsystemMask {
public:
    SubsystemMask() : n_(0) {}
    explicit SubsystemMask(uint32_t n) : n_(n), bits_((size_t(n) + 63) / 64) {}
    SubsystemMask(uint32_t n, std::initializer_list<uint32_t> qubits);
    static SubsystemMask range(uint32_t n, uint32_t first, uint32_t count);
    static SubsystemMask from_indices(uint32_t n, const std::vector<uint32_t>& qubits);
    static SubsystemMask full(uint32_t n) { return range(n, 0, n); }

    uint32_t n() const { return n_; }
    bool contains(uint32_t q) const { return (bits_[q >> 6] >> (q & 63)) & 1; }
    void add(uint32_t q) { bits_[q >> 6] |= uint64_t(1) << (q & 63); }
    void remove(uint32_t q) { bits_[q >> 6] &= ~(uint64_t(1) << (q & 63)); }
    uint32_t popcount() const;
    std::vector<uint32_t> qubits() const;  // ascending
    SubsystemMask complement() const;
    SubsystemMask unioned(const SubsystemMask& other) const;
    SubsystemMask intersected(const SubsystemMask& other) const;
    bool disjoint_from(const SubsystemMask& other) const;
    bool subset_of(const SubsystemMask& other) const;
    bool operator==(const SubsystemMask& other) const = default;
    std::string str() const;  // e.g. "{0,2,5}"

private:
    uint32_t n_;
    std::vector<uint64_t> bits_;
};

// the code-th Pauli (base-4 digits, ascending mask qubits, digit order I,X,Z,Y)
// supported on `mask`, as an n-qubit string with positive sign;
// code < 4^mask.popcount() enumerates the local Pauli group on the mask
PauliString pauli_on_mask(const SubsystemMask& mask, uint64_t code);

// Unsigned Pauli subgroup: membership is phase-blind (P and -P are the same
// element). Stores an independent, GF(2)-row-reduced generating set.
class PauliSubgroup {
public:
    explicit PauliSubgroup(uint32_t n) : n_(n) {}

    uint32_t n() const { return n_; }
    uint32_t rank() const { return uint32_t(basis_.size()); }
    // log2 of the unsigned group order
    uint32_t log2_size() const { return rank(); }
    const std::vector<PauliString>& generators() const { return basis_; }

    bool contains(const PauliString& p) const;
    // reduce p against the basis; true (and basis grows) when p was new.
    bool add(const PauliString& p);

private:
    friend PauliSubgroup subgroup_close(uint32_t n, const std::vector<PauliString>& generators);
    uint32_t n_;
    std::vector<PauliString> basis_;  // row-reduced: strictly increasing pivots
};

// Closure of the given elements under multiplication (phases ignored).
// Dependent inputs are reduced away, not rejected; idempotent.
PauliSubgroup subgroup_close(uint32_t n, const std::vector<PauliString>& generators);

}  // namespace cliffdec
