#pragma once

#include <cliffdec/learner.hpp>
#include <cliffdec/oracle.hpp>
#include <cliffdec/statistics.hpp>
#include <cliffdec/synth.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cliffdec {

// decoding succeeds when F >= 1/(1 + 2^(2|A|+t-2|D|))
double fidelity_bound(uint32_t a_size, uint32_t t, uint32_t d_size);
// fraction of circuit draws expected to reach the bound: 1 - 2^(t-2(n-|D|))
double success_floor(uint32_t n, uint32_t t, uint32_t d_size);

// Exact Pauli-average evaluation of the decoder fidelity and the projection
// probability, as group sums over the readout mask D = bundle.d():
//
//   v(P)  = 2^-n tr[ (D†U)† P (D†U) · (RD†V')† P (RD†V') ]   (exact ring value)
//   N1    = 2^-2|D| Σ_P v(P)                  = 2^2|A| π_V F
//   N2    = 2^-2|D| 4^|A| Σ_P v(P)·[P̂ trivial on A]  = 2^2|A| π_V
//
// with P̂ the mirror-side image of P.  F = N1/N2.
struct FidelityBreakdown {
    double fidelity = 0.0;
    double pi_v = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
};

// Throws impossible_outcome_error when N2 vanishes (the projection outcome
// has probability zero) and std::length_error past the exact-sum cap.
FidelityBreakdown fidelity_formula_parts(const DopedCircuit& c, const DecoderBundle& bundle,
                                         const SubsystemMask& a,
                                         uint64_t cap = uint64_t(1) << 24);
double fidelity_formula(const DopedCircuit& c, const DecoderBundle& bundle,
                        const SubsystemMask& a, uint64_t cap = uint64_t(1) << 24);

// Randomizer-free evaluation restricted to E: what the decoder achieves after
// the randomizer has (on average) traced out the F side.  Requires the
// decrypter to mimic the hidden unitary on every generator of P_E; a
// violation throws with the failing generator named.
double fidelity_post_randomizer(const DopedCircuit& c, const DecoderBundle& bundle,
                                const SubsystemMask& a);

struct ExperimentConfig {
    uint32_t n = 6;
    uint32_t t = 0;
    uint32_t a_size = 1;
    uint32_t d_size = 3;
    Ensemble ensemble = Ensemble::generic;
    uint32_t depth = 0;  // brickwork layers; 0 means 3n
    uint32_t trials = 20;
    uint32_t shots = 200;  // per sampled-learner probe
    uint64_t seed = 1;     // master seed; per-trial streams derive from it
    QueryMode learner_mode = QueryMode::exact;
    enum class OracleUse { on, off, automatic };
    OracleUse oracle = OracleUse::automatic;  // dense cross-check per trial
    std::string out_dir;                      // empty: no files written

    void validate() const;  // throws std::invalid_argument
};

struct TrialRecord {
    uint64_t trial = 0;
    uint32_t e_size = 0;
    double fidelity_formula = 0.0;
    std::optional<double> fidelity_oracle;
    double pi_v = 0.0;
    double fidelity_bound = 0.0;
    bool success = false;
    uint64_t query_count = 0;
    double wall_ms = 0.0;  // excluded from CSV so output is bit-reproducible
    std::string error;     // empty for completed trials
};

struct ExperimentSummary {
    uint32_t trials = 0;
    uint32_t completed = 0;
    double success_rate = 0.0;  // mean of per-trial success flags
    double success_floor = 0.0;
    double ci_low = 0.0;  // Wilson 95% on the success rate
    double ci_high = 0.0;
    double mean_fidelity = 0.0;
    double median_fidelity = 0.0;
    bool breakdown_regime = false;  // t > n: decoding expected to fail
};

struct ExperimentResult {
    std::vector<TrialRecord> records;
    ExperimentSummary summary;
};

// Per trial: sample circuit -> learn -> synthesize -> evaluate -> compare to
// the bound.  A = first |A| qubits, D = last |D| qubits.  Individual trial
// failures are recorded, never abort the batch.
ExperimentResult run_decoding_experiment(const ExperimentConfig& config);

struct StatisticsRecord {
    std::vector<double> n1_samples;
    std::vector<double> n2_samples;
    std::vector<double> f_samples;
    double mean_n1 = 0.0;
    double mean_n2 = 0.0;
    double stderr_n1 = 0.0;
    double stderr_n2 = 0.0;
    double var_f = 0.0;
    double pred_n1 = 0.0;      // 2^-2|F|
    double pred_n2 = 0.0;      // 2^-2|D| (2^2|E| + 2^2|A| - 1)
    double var_scale = 0.0;    // 2^-2|C|
    uint32_t f_size = 0;
    uint32_t e_size = 0;
    uint32_t c_size = 0;
};

// Fixes one circuit and learned decoder, then resamples only the randomizer
// config.trials times, recording N1, N2 and F per draw.
StatisticsRecord randomizer_statistics(const ExperimentConfig& config);

// CSV of trial rows under a versioned header comment; bit-identical for
// identical config + seed
std::string trials_to_csv(const std::vector<TrialRecord>& records);
std::string summary_to_json(const ExperimentConfig& config, const ExperimentSummary& summary);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

}  // namespace cliffdec
