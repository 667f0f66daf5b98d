#pragma once

#include <cliffdec/doped.hpp>
#include <cliffdec/pauli.hpp>
#include <cliffdec/rng.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cliffdec {

enum class QueryMode { exact, sampled };

// Thrown by sampled-mode preservation tests when the observed statistics
// cannot support a decision (e.g. no shots granted); carries the observed
// output-Pauli histogram for diagnostics.
struct inconclusive_error : std::runtime_error {
    inconclusive_error(const std::string& msg, std::vector<std::pair<PauliString, uint32_t>> hist)
        : std::runtime_error(msg), histogram(std::move(hist)) {}
    std::vector<std::pair<PauliString, uint32_t>> histogram;
};

// Black-box query access to a hidden doped circuit.  Callers may only ask
// preservation questions; the circuit never leaves the oracle, so learning
// code cannot peek at gates.  Every use of the hidden unitary increments the
// monotone query counter.
//
// exact mode: one query per test, answered by exact Pauli propagation.
// sampled mode: each shot Bell-samples the two-copy Choi state of U with the
//   probe Pauli applied to the output register; outcome Q occurs with
//   probability |2^{-n} tr(U† P U · Q)|².  The probe is declared preserved
//   iff the Q-marginal is a point mass across all shots, and the sign of the
//   image is then resolved with one extra stabilizer measurement.
class QueryOracle {
  public:
    QueryOracle(DopedCircuit circuit, QueryMode mode, uint32_t shots_per_query, uint64_t seed);

    uint32_t n() const { return circuit_.n(); }
    QueryMode mode() const { return mode_; }
    uint32_t shots_per_query() const { return shots_; }
    uint64_t query_count() const { return queries_; }

    // Returns the signed image U† p U when p is preserved, empty otherwise.
    // shots = 0 uses the per-query default.  Throws inconclusive_error when
    // sampled mode has no data to decide on.
    std::optional<PauliString> test_pauli(const PauliString& p, uint32_t shots = 0);

  private:
    DopedCircuit circuit_;
    QueryMode mode_;
    uint32_t shots_;
    uint64_t queries_ = 0;
    Rng rng_;
};

enum class ProbeStrategy { exhaustive, random_probe };

struct ProbeRecord {
    PauliString probe;                  // positive Pauli supported on D
    std::optional<PauliString> image;   // signed image when preserved
    uint64_t queries_after = 0;
};

struct LearnedGroups {
    SubsystemMask d;
    PauliSubgroup g_d{1};                 // membership structure (echelon basis)
    std::vector<PauliString> generators;  // independent probed generators on D
    std::vector<PauliString> images;      // signed n-qubit images, aligned
    uint32_t e_size = 0;                  // hyperbolic pairs in G_D (= rank/2 unless degenerate)
    uint64_t query_count = 0;
    bool incomplete = false;   // probe budget ran out before stabilization
    bool degenerate = false;   // odd rank or central elements: E1 != E2 territory
    std::vector<ProbeRecord> transcript;
};

// Learns G_D(U) and the signed image of each generator through the oracle.
// exhaustive: probes all 4^|D| Paulis on D (requires 4^|D| <= probe cap).
// random_probe: uniform probes until rank 2|D| is reached or 40·|D|
// consecutive probes add nothing.  budget = 0 means unlimited queries.
LearnedGroups learn_groups(QueryOracle& oracle, const SubsystemMask& d, ProbeStrategy strategy,
                           uint64_t budget = 0);

// JSON rendering of the learning transcript (probes, outcomes, query counts,
// final generators as Pauli literals).
std::string transcript_to_json(const LearnedGroups& g);

}  // namespace cliffdec
