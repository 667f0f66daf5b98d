#include "cliffdec/learner.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <utility>

namespace cliffdec {

namespace {

// exhaustive probing is meant for small readout masks
constexpr uint64_t kExhaustiveCap = uint64_t(1) << 24;

}  // namespace

QueryOracle::QueryOracle(DopedCircuit circuit, QueryMode mode, uint32_t shots_per_query,
                         uint64_t seed)
    : circuit_(std::move(circuit)), mode_(mode), shots_(shots_per_query), rng_(seed) {}

std::optional<PauliString> QueryOracle::test_pauli(const PauliString& p, uint32_t shots) {
    if (p.n() != circuit_.n()) throw std::invalid_argument("probe size does not match the oracle");
    if (mode_ == QueryMode::exact) {
        ++queries_;
        return is_preserved(circuit_, p);
    }

    uint32_t budget = shots ? shots : shots_;
    if (budget < 2)
        throw inconclusive_error(
            "sampled mode needs at least two shots: one Bell sample and one sign measurement", {});

    PauliSum expansion = propagate(circuit_, p);
    const auto& terms = expansion.terms();
    std::vector<double> cumulative(terms.size());
    double acc = 0.0;
    for (size_t i = 0; i < terms.size(); ++i) {
        acc += terms[i].coeff.squared().value();
        cumulative[i] = acc;
    }
    auto draw = [&]() -> size_t {
        double u = rng_.next_double() * acc;
        return size_t(std::lower_bound(cumulative.begin(), cumulative.end(), u) -
                      cumulative.begin());
    };

    // budget-1 Bell samples; any second distinct outcome disproves preservation
    size_t first = draw();
    ++queries_;
    for (uint32_t s = 1; s + 1 < budget; ++s) {
        size_t got = draw();
        ++queries_;
        if (got != first) return std::nullopt;
    }

    // point mass: spend the last shot measuring the image's sign.  The
    // stabilizer expectation equals the (real) coefficient, so the outcome is
    // deterministic exactly when p really is preserved.
    ++queries_;
    double c = terms[first].coeff.value();
    bool plus = rng_.next_double() < (1.0 + c) / 2.0;
    PauliString image = terms[first].op;
    if (!plus) image.negate();
    return image;
}

namespace {

// symplectic Gram-Schmidt over the learned basis: count hyperbolic pairs and
// detect a nonempty radical (elements commuting with the whole group)
std::pair<uint32_t, bool> hyperbolic_structure(std::vector<PauliString> basis) {
    uint32_t pairs = 0;
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
        ++pairs;
        basis.erase(basis.begin() + long(bi));
        basis.erase(basis.begin() + long(ai));
        for (PauliString& v : basis) {
            bool hit_a = !commutes(v, a);
            bool hit_b = !commutes(v, b);
            if (hit_a) v = (v * b).letters();
            if (hit_b) v = (v * a).letters();
        }
    }
    return {pairs, !basis.empty()};
}

}  // namespace

LearnedGroups learn_groups(QueryOracle& oracle, const SubsystemMask& d, ProbeStrategy strategy,
                           uint64_t budget) {
    if (d.n() != oracle.n()) throw std::invalid_argument("mask size does not match the oracle");
    const uint32_t dsz = d.popcount();
    if (dsz == 0) throw std::invalid_argument("readout mask is empty");

    LearnedGroups out;
    out.d = d;
    out.g_d = PauliSubgroup(oracle.n());
    const uint64_t start = oracle.query_count();
    auto over_budget = [&] { return budget != 0 && oracle.query_count() - start >= budget; };

    auto probe_once = [&](const PauliString& probe) -> bool {
        std::optional<PauliString> image = oracle.test_pauli(probe);
        out.transcript.push_back({probe, image, oracle.query_count()});
        if (!image) return false;
        if (!out.g_d.add(probe)) return false;
        out.generators.push_back(probe);
        out.images.push_back(*image);
        return true;
    };

    if (strategy == ProbeStrategy::exhaustive) {
        if (dsz >= 12 || (uint64_t(1) << (2 * dsz)) > kExhaustiveCap)
            throw std::length_error("readout mask too large for exhaustive probing");
        const uint64_t total = uint64_t(1) << (2 * dsz);
        for (uint64_t code = 1; code < total; ++code) {
            if (over_budget()) {
                out.incomplete = true;
                break;
            }
            probe_once(pauli_on_mask(d, code));
        }
    } else {
        Rng rng(0x70726f6265ull + dsz);  // fixed stream: probe order is reproducible
        uint32_t misses = 0;
        const uint32_t patience = 40 * dsz;
        while (out.g_d.rank() < 2 * dsz && misses < patience) {
            if (over_budget()) {
                out.incomplete = true;
                break;
            }
            uint64_t code = 0;
            for (uint32_t j = 0; j < dsz; ++j) code |= rng.next_below(4) << (2 * j);
            if (code == 0) continue;
            if (probe_once(pauli_on_mask(d, code)))
                misses = 0;
            else
                ++misses;
        }
    }

    auto [pairs, radical] = hyperbolic_structure(out.g_d.generators());
    out.e_size = pairs;
    out.degenerate = radical;
    out.query_count = oracle.query_count() - start;
    return out;
}

std::string transcript_to_json(const LearnedGroups& g) {
    nlohmann::json j;
    j["d"] = g.d.qubits();
    j["rank"] = g.g_d.rank();
    j["e_size"] = g.e_size;
    j["query_count"] = g.query_count;
    j["incomplete"] = g.incomplete;
    j["degenerate"] = g.degenerate;
    j["probes"] = nlohmann::json::array();
    for (const ProbeRecord& r : g.transcript) {
        nlohmann::json entry;
        entry["probe"] = r.probe.str();
        entry["preserved"] = r.image.has_value();
        if (r.image) entry["image"] = r.image->str();
        entry["queries_after"] = r.queries_after;
        j["probes"].push_back(entry);
    }
    j["generators"] = nlohmann::json::array();
    for (size_t i = 0; i < g.generators.size(); ++i) {
        nlohmann::json entry;
        entry["generator"] = g.generators[i].str();
        entry["image"] = g.images[i].str();
        j["generators"].push_back(entry);
    }
    return j.dump(2);
}

}  // namespace cliffdec
