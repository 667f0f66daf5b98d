#include "cliffdec/gates.hpp"

#include <sstream>
#include <stdexcept>

namespace cliffdec {

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::CX: return "CX";
        case GateKind::SWAP: return "SWAP";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::T: return "T";
    }
    return "?";
}

namespace {

bool kind_from_name(std::string_view name, GateKind& out) {
    if (name == "H") out = GateKind::H;
    else if (name == "S") out = GateKind::S;
    else if (name == "CX") out = GateKind::CX;
    else if (name == "SWAP") out = GateKind::SWAP;
    else if (name == "X") out = GateKind::X;
    else if (name == "Y") out = GateKind::Y;
    else if (name == "Z") out = GateKind::Z;
    else if (name == "T") out = GateKind::T;
    else return false;
    return true;
}

}  // namespace

std::vector<Gate> parse_circuit(std::string_view text) {
    std::vector<Gate> gates;
    size_t line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        std::istringstream ss{std::string(line)};
        std::string name;
        if (!(ss >> name)) continue;  // blank line
        if (name[0] == '#') continue;

        Gate g{};
        if (!kind_from_name(name, g.kind))
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": unknown gate '" + name + "'");
        long q0 = -1, q1 = -1;
        if (!(ss >> q0) || q0 < 0)
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": missing qubit index");
        g.q0 = uint32_t(q0);
        if (g.is_two_qubit()) {
            if (!(ss >> q1) || q1 < 0)
                throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + name + " needs two qubits");
            g.q1 = uint32_t(q1);
            if (g.q0 == g.q1)
                throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + name + " qubits must differ");
        }
        std::string extra;
        if (ss >> extra)
            throw std::invalid_argument("circuit line " + std::to_string(line_no) + ": trailing token '" + extra + "'");
        gates.push_back(g);
    }
    return gates;
}

std::string serialize_circuit(const std::vector<Gate>& gates) {
    std::string out;
    for (const Gate& g : gates) {
        out += gate_name(g.kind);
        out += ' ';
        out += std::to_string(g.q0);
        if (g.is_two_qubit()) {
            out += ' ';
            out += std::to_string(g.q1);
        }
        out += '\n';
    }
    return out;
}

uint32_t min_qubit_count(const std::vector<Gate>& gates) {
    uint32_t n = 0;
    for (const Gate& g : gates) {
        n = std::max(n, g.q0 + 1);
        if (g.is_two_qubit()) n = std::max(n, g.q1 + 1);
    }
    return n;
}

void conjugate_by_gate(PauliString& p, const Gate& g) {
    uint32_t a = g.q0, b = g.q1;
    switch (g.kind) {
        case GateKind::H: {
            // X^u Z^v -> Z^u X^v = (-1)^{uv} X^v Z^u
            bool u = p.x(a), v = p.z(a);
            p.set_x(a, v);
            p.set_z(a, u);
            if (u && v) p.set_raw_phase(p.raw_phase() + 2);
            break;
        }
        case GateKind::S: {
            // X^u Z^v -> i^{3u} X^u Z^{u^v}
            bool u = p.x(a), v = p.z(a);
            if (u) {
                p.set_z(a, !v);
                p.set_raw_phase(p.raw_phase() + 3);
            }
            break;
        }
        case GateKind::CX:
            // X_c -> X_c X_t, Z_t -> Z_c Z_t; phase-free in the X^x Z^z form
            p.set_x(b, p.x(b) ^ p.x(a));
            p.set_z(a, p.z(a) ^ p.z(b));
            break;
        case GateKind::SWAP: {
            bool xa = p.x(a), za = p.z(a), xb = p.x(b), zb = p.z(b);
            p.set_x(a, xb); p.set_z(a, zb);
            p.set_x(b, xa); p.set_z(b, za);
            break;
        }
        case GateKind::X:
            if (p.z(a)) p.set_raw_phase(p.raw_phase() + 2);
            break;
        case GateKind::Y:
            if (p.x(a) ^ p.z(a)) p.set_raw_phase(p.raw_phase() + 2);
            break;
        case GateKind::Z:
            if (p.x(a)) p.set_raw_phase(p.raw_phase() + 2);
            break;
        case GateKind::T:
            throw std::invalid_argument("conjugate_by_gate: T is not a Clifford gate");
    }
}

void append_inverse_gate(std::vector<Gate>& out, const Gate& g) {
    if (g.kind == GateKind::S) {
        out.push_back(g);
        out.push_back(g);
        out.push_back(g);
    } else if (g.kind == GateKind::T) {
        throw std::invalid_argument("append_inverse_gate: T has no inverse in the gate set");
    } else {
        out.push_back(g);  // H, CX, SWAP, X, Y, Z are self-inverse
    }
}

}  // namespace cliffdec
