#include "cliffdec/pauli.hpp"

#include <algorithm>
#include <stdexcept>

namespace cliffdec {

namespace {

uint32_t popcount_words(const std::vector<uint64_t>& w) {
    uint32_t c = 0;
    for (uint64_t v : w) c += uint32_t(std::popcount(v));
    return c;
}

uint32_t popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
    uint32_t c = 0;
    for (size_t i = 0; i < a.size(); ++i) c += uint32_t(std::popcount(a[i] & b[i]));
    return c;
}

}  // namespace

PauliString PauliString::single_x(uint32_t n, uint32_t q) {
    PauliString p(n);
    p.set_x(q, true);
    return p;
}

PauliString PauliString::single_y(uint32_t n, uint32_t q) {
    PauliString p(n);
    p.set_x(q, true);
    p.set_z(q, true);
    p.set_raw_phase(1);
    return p;
}

PauliString PauliString::single_z(uint32_t n, uint32_t q) {
    PauliString p(n);
    p.set_z(q, true);
    return p;
}

void PauliString::set_x(uint32_t q, bool v) {
    if (q >= n_) throw std::invalid_argument("PauliString: qubit index out of range");
    uint64_t m = uint64_t(1) << (q & 63);
    if (v) x_[q >> 6] |= m; else x_[q >> 6] &= ~m;
}

void PauliString::set_z(uint32_t q, bool v) {
    if (q >= n_) throw std::invalid_argument("PauliString: qubit index out of range");
    uint64_t m = uint64_t(1) << (q & 63);
    if (v) z_[q >> 6] |= m; else z_[q >> 6] &= ~m;
}

uint8_t PauliString::sign_exponent() const {
    // letters = i^y X^x Z^z with y = #Y letters, so i^k X^x Z^z = i^(k-y) letters
    uint32_t y = popcount_and(x_, z_);
    return uint8_t((phase_ + 4 - (y & 3)) & 3);
}

bool PauliString::is_identity_letters() const {
    for (size_t i = 0; i < x_.size(); ++i)
        if (x_[i] | z_[i]) return false;
    return true;
}

uint32_t PauliString::weight() const {
    uint32_t c = 0;
    for (size_t i = 0; i < x_.size(); ++i) c += uint32_t(std::popcount(x_[i] | z_[i]));
    return c;
}

SubsystemMask PauliString::support() const {
    SubsystemMask m(n_);
    for (uint32_t q = 0; q < n_; ++q)
        if (x(q) || z(q)) m.add(q);
    return m;
}

bool PauliString::same_letters(const PauliString& other) const {
    return n_ == other.n_ && x_ == other.x_ && z_ == other.z_;
}

PauliString& PauliString::mul_inplace(const PauliString& rhs) {
    if (n_ != rhs.n_) throw std::invalid_argument("PauliString multiply: size mismatch");
    // i^k1 X^x1 Z^z1 * i^k2 X^x2 Z^z2: moving Z^z1 past X^x2 costs (-1)^(z1.x2)
    uint32_t swaps = popcount_and(z_, rhs.x_);
    phase_ = uint8_t((phase_ + rhs.phase_ + 2 * (swaps & 1)) & 3);
    for (size_t i = 0; i < x_.size(); ++i) {
        x_[i] ^= rhs.x_[i];
        z_[i] ^= rhs.z_[i];
    }
    return *this;
}

PauliString PauliString::letters() const {
    PauliString p = *this;
    p.phase_ = uint8_t(popcount_and(x_, z_) & 3);  // i^y X^x Z^z = plain letters
    return p;
}

PauliString PauliString::conj() const {
    // (i^k X^x Z^z)* = i^(-k) X^x Z^z: the letter matrices are real
    PauliString p = *this;
    p.phase_ = uint8_t((4 - phase_) & 3);
    return p;
}

PauliString PauliString::restricted_to(const SubsystemMask& mask) const {
    if (mask.n() != n_) throw std::invalid_argument("restricted_to: mask size mismatch");
    auto qs = mask.qubits();
    PauliString p(uint32_t(qs.size()));
    for (uint32_t i = 0; i < qs.size(); ++i) {
        p.set_x(i, x(qs[i]));
        p.set_z(i, z(qs[i]));
    }
    // keep the operator's sign: adjust for Y-count bookkeeping of dropped qubits
    uint32_t y_here = 0;
    for (uint32_t i = 0; i < qs.size(); ++i) y_here += (p.x(i) && p.z(i));
    p.phase_ = uint8_t((sign_exponent() + y_here) & 3);
    return p;
}

PauliString PauliString::embedded_in(uint32_t n, const SubsystemMask& mask) const {
    if (mask.n() != n) throw std::invalid_argument("embedded_in: mask size mismatch");
    auto qs = mask.qubits();
    if (qs.size() != n_) throw std::invalid_argument("embedded_in: mask popcount != string size");
    PauliString p(n);
    for (uint32_t i = 0; i < qs.size(); ++i) {
        p.set_x(qs[i], x(i));
        p.set_z(qs[i], z(i));
    }
    uint32_t y = 0;
    for (uint32_t i = 0; i < n_; ++i) y += (x(i) && z(i));
    p.phase_ = uint8_t((sign_exponent() + y) & 3);
    return p;
}

bool PauliString::commutes_with(const PauliString& other) const {
    if (n_ != other.n_) throw std::invalid_argument("commutes: size mismatch");
    uint32_t s = popcount_and(x_, other.z_) + popcount_and(z_, other.x_);
    return (s & 1) == 0;
}

uint32_t PauliString::lowest_coordinate() const {
    for (uint32_t w = 0; w < x_.size(); ++w)
        if (x_[w]) return w * 64 + uint32_t(std::countr_zero(x_[w]));
    for (uint32_t w = 0; w < z_.size(); ++w)
        if (z_[w]) return n_ + w * 64 + uint32_t(std::countr_zero(z_[w]));
    return 2 * n_;
}

size_t PauliString::hash() const {
    uint64_t h = 0x243f6a8885a308d3ull ^ (uint64_t(n_) << 2) ^ phase_;
    auto mix = [&h](uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (uint64_t v : x_) mix(v);
    for (uint64_t v : z_) mix(v);
    return size_t(h);
}

PauliString PauliString::parse(std::string_view text) {
    size_t pos = 0;
    uint8_t w = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        w = (text[pos] == '-') ? 2 : 0;
        ++pos;
        if (pos < text.size() && text[pos] == 'i') {
            w = uint8_t((w + 1) & 3);  // +i -> 1, -i -> 3
            ++pos;
        }
    }
    std::string_view body = text.substr(pos);
    if (body.empty()) throw std::invalid_argument("Pauli literal: empty letter string");
    PauliString p(uint32_t(body.size()));
    uint32_t y = 0;
    for (uint32_t q = 0; q < body.size(); ++q) {
        switch (body[q]) {
            case 'I': break;
            case 'X': p.set_x(q, true); break;
            case 'Z': p.set_z(q, true); break;
            case 'Y': p.set_x(q, true); p.set_z(q, true); ++y; break;
            default:
                throw std::invalid_argument(std::string("Pauli literal: bad letter '") + body[q] + "'");
        }
    }
    p.phase_ = uint8_t((w + y) & 3);
    return p;
}

std::string PauliString::str() const {
    static const char* prefix[4] = {"+", "+i", "-", "-i"};
    std::string s = prefix[sign_exponent()];
    s.reserve(s.size() + n_);
    for (uint32_t q = 0; q < n_; ++q) {
        bool xb = x(q), zb = z(q);
        s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
    }
    return s;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
    PauliString r = a;
    r.mul_inplace(b);
    return r;
}

bool commutes(const PauliString& a, const PauliString& b) { return a.commutes_with(b); }

SubsystemMask::SubsystemMask(uint32_t n, std::initializer_list<uint32_t> qubits) : SubsystemMask(n) {
    for (uint32_t q : qubits) {
        if (q >= n) throw std::invalid_argument("SubsystemMask: qubit index out of range");
        add(q);
    }
}

SubsystemMask SubsystemMask::range(uint32_t n, uint32_t first, uint32_t count) {
    if (first + count > n) throw std::invalid_argument("SubsystemMask::range out of bounds");
    SubsystemMask m(n);
    for (uint32_t q = first; q < first + count; ++q) m.add(q);
    return m;
}

SubsystemMask SubsystemMask::from_indices(uint32_t n, const std::vector<uint32_t>& qubits) {
    SubsystemMask m(n);
    for (uint32_t q : qubits) {
        if (q >= n) throw std::invalid_argument("SubsystemMask: qubit index out of range");
        m.add(q);
    }
    return m;
}

uint32_t SubsystemMask::popcount() const { return popcount_words(bits_); }

std::vector<uint32_t> SubsystemMask::qubits() const {
    std::vector<uint32_t> qs;
    qs.reserve(popcount());
    for (uint32_t q = 0; q < n_; ++q)
        if (contains(q)) qs.push_back(q);
    return qs;
}

SubsystemMask SubsystemMask::complement() const {
    SubsystemMask m(n_);
    for (uint32_t q = 0; q < n_; ++q)
        if (!contains(q)) m.add(q);
    return m;
}

SubsystemMask SubsystemMask::unioned(const SubsystemMask& other) const {
    if (n_ != other.n_) throw std::invalid_argument("mask union: size mismatch");
    SubsystemMask m(n_);
    for (size_t i = 0; i < bits_.size(); ++i) m.bits_[i] = bits_[i] | other.bits_[i];
    return m;
}

SubsystemMask SubsystemMask::intersected(const SubsystemMask& other) const {
    if (n_ != other.n_) throw std::invalid_argument("mask intersection: size mismatch");
    SubsystemMask m(n_);
    for (size_t i = 0; i < bits_.size(); ++i) m.bits_[i] = bits_[i] & other.bits_[i];
    return m;
}

bool SubsystemMask::disjoint_from(const SubsystemMask& other) const {
    return intersected(other).popcount() == 0;
}

bool SubsystemMask::subset_of(const SubsystemMask& other) const {
    return intersected(other).popcount() == popcount();
}

std::string SubsystemMask::str() const {
    std::string s = "{";
    bool first = true;
    for (uint32_t q : qubits()) {
        if (!first) s += ',';
        s += std::to_string(q);
        first = false;
    }
    return s + "}";
}

PauliString pauli_on_mask(const SubsystemMask& mask, uint64_t code) {
    PauliString p(mask.n());
    uint32_t y = 0;
    for (uint32_t q : mask.qubits()) {
        uint32_t digit = code & 3;  // 0:I 1:X 2:Z 3:Y
        code >>= 2;
        if (digit & 1) p.set_x(q, true);
        if (digit & 2) p.set_z(q, true);
        if (digit == 3) ++y;
    }
    if (code != 0) throw std::invalid_argument("pauli_on_mask: code exceeds 4^|mask|");
    p.set_raw_phase(uint8_t(y & 3));  // positive sign
    return p;
}

bool PauliSubgroup::contains(const PauliString& p) const {
    PauliString r = p;
    for (const PauliString& b : basis_) {
        uint32_t pivot = b.lowest_coordinate();
        if (r.coordinate(pivot)) r.mul_inplace(b);
    }
    return r.is_identity_letters();
}

bool PauliSubgroup::add(const PauliString& p) {
    if (p.n() != n_) throw std::invalid_argument("PauliSubgroup: size mismatch");
    PauliString r = p;
    for (const PauliString& b : basis_) {
        uint32_t pivot = b.lowest_coordinate();
        if (r.coordinate(pivot)) r.mul_inplace(b);
    }
    if (r.is_identity_letters()) return false;
    // echelon invariant: each row's pivot is its lowest coordinate, rows sorted
    // by pivot; later rows are automatically zero at the new pivot
    uint32_t pivot = r.lowest_coordinate();
    auto it = std::lower_bound(basis_.begin(), basis_.end(), pivot,
                               [](const PauliString& b, uint32_t pv) { return b.lowest_coordinate() < pv; });
    basis_.insert(it, r);
    return true;
}

PauliSubgroup subgroup_close(uint32_t n, const std::vector<PauliString>& generators) {
    PauliSubgroup g(n);
    for (const PauliString& p : generators) g.add(p);
    return g;
}

}  // namespace cliffdec
