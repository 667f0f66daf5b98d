#include "cliffdec/harness.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <sstream>
#include <utility>

namespace cliffdec {

double fidelity_bound(uint32_t a_size, uint32_t t, uint32_t d_size) {
    return 1.0 / (1.0 + std::exp2(2.0 * double(a_size) + double(t) - 2.0 * double(d_size)));
}

double success_floor(uint32_t n, uint32_t t, uint32_t d_size) {
    if (d_size > n) throw std::invalid_argument("D larger than the register");
    // can be negative or zero for t near 2|C|: an honest "no guarantee"
    return 1.0 - std::exp2(double(t) - 2.0 * double(n - d_size));
}

FidelityBreakdown fidelity_formula_parts(const DopedCircuit& c, const DecoderBundle& bundle,
                                         const SubsystemMask& a, uint64_t cap) {
    const uint32_t n = c.n();
    if (bundle.n != n || a.n() != n)
        throw std::invalid_argument("circuit, bundle and A disagree on qubit count");
    const uint32_t asz = a.popcount();
    if (asz == 0) throw std::invalid_argument("A is empty");
    const SubsystemMask d = bundle.d();
    const uint32_t dsz = d.popcount();
    if (dsz == 0) throw std::invalid_argument("D is empty");
    if (2 * (dsz + asz) >= 63 || (uint64_t(1) << (2 * (dsz + asz))) > cap)
        throw std::length_error("exact Pauli sum too large for the configured cap");

    const CliffordTableau d_inv = inverse(bundle.diagonalizer);
    const CliffordTableau t_w =
        compose(bundle.randomizer, compose(d_inv, bundle.decrypter));  // R D† V'

    SqrtCoeff num = SqrtCoeff::zero();
    SqrtCoeff den = SqrtCoeff::zero();
    const uint64_t total = uint64_t(1) << (2 * dsz);
    for (uint64_t code = 0; code < total; ++code) {
        PauliString p = pauli_on_mask(d, code);
        PauliSum tilde = propagate(c, d_inv.conjugate(p));
        PauliString q = t_w.conjugate(p);
        SqrtCoeff v = tilde.coeff_of(q);
        if (v.is_zero()) continue;
        num = num.plus(v);
        if (q.restricted_to(a).is_identity_letters()) den = den.plus(v);
    }

    FidelityBreakdown out;
    const double scale = std::exp2(-2.0 * double(dsz));
    out.n1 = num.value() * scale;
    out.n2 = den.value() * scale * std::exp2(2.0 * double(asz));
    out.pi_v = out.n2 * std::exp2(-2.0 * double(asz));
    if (out.n2 <= 1e-15)
        throw impossible_outcome_error("decoder projection outcome has probability zero");
    out.fidelity = out.n1 / out.n2;
    return out;
}

double fidelity_formula(const DopedCircuit& c, const DecoderBundle& bundle,
                        const SubsystemMask& a, uint64_t cap) {
    return fidelity_formula_parts(c, bundle, a, cap).fidelity;
}

double fidelity_post_randomizer(const DopedCircuit& c, const DecoderBundle& bundle,
                                const SubsystemMask& a) {
    const uint32_t n = c.n();
    if (bundle.n != n || a.n() != n)
        throw std::invalid_argument("circuit, bundle and A disagree on qubit count");
    const uint32_t asz = a.popcount();
    if (asz == 0) throw std::invalid_argument("A is empty");
    const SubsystemMask e = bundle.e;
    const CliffordTableau d_inv = inverse(bundle.diagonalizer);
    const CliffordTableau frame = compose(d_inv, bundle.decrypter);  // D† V'

    for (uint32_t q : e.qubits()) {
        for (const PauliString& p :
             {PauliString::single_x(n, q), PauliString::single_z(n, q)}) {
            auto truth = is_preserved(c, d_inv.conjugate(p));
            if (!truth || frame.conjugate(p) != *truth)
                throw std::runtime_error("decrypter does not mimic the circuit on generator " +
                                         p.str());
        }
    }

    SqrtCoeff num = SqrtCoeff::zero();
    SqrtCoeff den = SqrtCoeff::zero();
    const uint64_t total = uint64_t(1) << (2 * e.popcount());
    for (uint64_t code = 0; code < total; ++code) {
        PauliString p = pauli_on_mask(e, code);
        PauliSum tilde = propagate(c, d_inv.conjugate(p));
        PauliString q = frame.conjugate(p);
        SqrtCoeff v = tilde.coeff_of(q);
        if (v.is_zero()) continue;
        num = num.plus(v);
        if (q.restricted_to(a).is_identity_letters()) den = den.plus(v);
    }
    if (den.is_zero()) throw impossible_outcome_error("restricted projection has probability zero");
    return num.value() / (den.value() * std::exp2(2.0 * double(asz)));
}

void ExperimentConfig::validate() const {
    if (n == 0 || n > 32) throw std::invalid_argument("n out of range");
    if (a_size == 0 || a_size > n) throw std::invalid_argument("|A| out of range");
    if (d_size == 0 || d_size > n) throw std::invalid_argument("|D| out of range");
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    if (ensemble == Ensemble::simplified_class && (t % 2 != 0 || t / 2 > n))
        throw std::invalid_argument("simplified ensemble needs even t with t/2 <= n");
    if (learner_mode == QueryMode::sampled && shots < 2)
        throw std::invalid_argument("sampled learner needs at least two shots per probe");
}

namespace {

struct SynthesizedTrial {
    DopedCircuit circuit;
    DecoderBundle bundle;
    LearnedGroups groups;
};

// sample -> learn -> synthesize with the trial's own random stream
SynthesizedTrial prepare_trial(const ExperimentConfig& config, uint32_t trial,
                               const SubsystemMask& d, Rng& rng) {
    DopedCircuit c = sample_doped_circuit(config.n, config.t, config.ensemble,
                                          config.depth ? config.depth : 3 * config.n, rng);
    QueryOracle oracle(c, config.learner_mode, config.shots, rng.next_u64());
    LearnedGroups groups = learn_groups(oracle, d, ProbeStrategy::exhaustive);
    auto [diag, e] = build_diagonalizer(groups, std::nullopt, /*truncate=*/true);
    CliffordTableau dec = build_decrypter(groups, diag, e);
    SubsystemMask f(config.n);
    for (uint32_t q : d.qubits())
        if (!e.contains(q)) f.add(q);
    CliffordTableau r = build_randomizer(config.n, f, d.complement(), rng);
    DecoderBundle b = assemble(diag, r, dec, e, f);
    b.randomizer_seed = config.seed ^ trial;
    return {std::move(c), std::move(b), std::move(groups)};
}

}  // namespace

ExperimentResult run_decoding_experiment(const ExperimentConfig& config) {
    config.validate();
    const uint32_t n = config.n;
    const SubsystemMask a = SubsystemMask::range(n, 0, config.a_size);
    const SubsystemMask d = SubsystemMask::range(n, n - config.d_size, config.d_size);
    const double bound = fidelity_bound(config.a_size, config.t, config.d_size);
    const bool fits_dense = 2 * n + 2 * config.a_size <= 24;

    ExperimentResult out;
    for (uint32_t trial = 0; trial < config.trials; ++trial) {
        TrialRecord rec;
        rec.trial = trial;
        rec.fidelity_bound = bound;
        const auto start = std::chrono::steady_clock::now();
        try {
            Rng rng = Rng::for_trial(config.seed, trial);
            SynthesizedTrial st = prepare_trial(config, trial, d, rng);
            rec.e_size = st.groups.e_size;
            rec.query_count = st.groups.query_count;

            FidelityBreakdown fb = fidelity_formula_parts(st.circuit, st.bundle, a);
            rec.fidelity_formula = fb.fidelity;
            rec.pi_v = fb.pi_v;

            bool use_oracle = config.oracle == ExperimentConfig::OracleUse::on ||
                              (config.oracle == ExperimentConfig::OracleUse::automatic &&
                               fits_dense);
            if (use_oracle) {
                DenseState state = build_scrambled_state(st.circuit, a);
                rec.fidelity_oracle = decode_and_project(state, st.bundle).fidelity;
            }
            double f = rec.fidelity_oracle ? *rec.fidelity_oracle : rec.fidelity_formula;
            rec.success = f >= bound;
        } catch (const std::exception& ex) {
            rec.error = ex.what();
            rec.success = false;
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        out.records.push_back(std::move(rec));
    }

    ExperimentSummary& s = out.summary;
    s.trials = config.trials;
    uint64_t successes = 0;
    std::vector<double> fidelities;
    for (const TrialRecord& r : out.records) {
        if (r.error.empty()) {
            ++s.completed;
            fidelities.push_back(r.fidelity_oracle ? *r.fidelity_oracle : r.fidelity_formula);
        }
        if (r.success) ++successes;
    }
    s.success_rate = double(successes) / double(config.trials);
    s.success_floor = success_floor(n, config.t, config.d_size);
    auto [lo, hi] = wilson_interval(successes, config.trials);
    s.ci_low = lo;
    s.ci_high = hi;
    if (!fidelities.empty()) {
        s.mean_fidelity = mean(fidelities);
        s.median_fidelity = median(fidelities);
    }
    s.breakdown_regime = config.t > n;
    return out;
}

StatisticsRecord randomizer_statistics(const ExperimentConfig& config) {
    config.validate();
    const uint32_t n = config.n;
    const SubsystemMask a = SubsystemMask::range(n, 0, config.a_size);
    const SubsystemMask d = SubsystemMask::range(n, n - config.d_size, config.d_size);

    Rng rng = Rng::for_trial(config.seed, 0);
    DopedCircuit c = sample_doped_circuit(n, config.t, config.ensemble,
                                          config.depth ? config.depth : 3 * n, rng);
    QueryOracle oracle(c, config.learner_mode, config.shots, rng.next_u64());
    LearnedGroups groups = learn_groups(oracle, d, ProbeStrategy::exhaustive);
    auto [diag, e] = build_diagonalizer(groups, std::nullopt, /*truncate=*/true);
    CliffordTableau dec = build_decrypter(groups, diag, e);
    SubsystemMask f(n);
    for (uint32_t q : d.qubits())
        if (!e.contains(q)) f.add(q);

    StatisticsRecord out;
    out.e_size = e.popcount();
    out.f_size = f.popcount();
    out.c_size = n - d.popcount();
    out.pred_n1 = std::exp2(-2.0 * double(out.f_size));
    out.pred_n2 = std::exp2(-2.0 * double(d.popcount())) *
                  (std::exp2(2.0 * double(out.e_size)) + std::exp2(2.0 * double(config.a_size)) -
                   1.0);
    out.var_scale = std::exp2(-2.0 * double(out.c_size));

    for (uint32_t draw = 0; draw < config.trials; ++draw) {
        CliffordTableau r = build_randomizer(n, f, d.complement(), rng);
        DecoderBundle b = assemble(diag, r, dec, e, f);
        FidelityBreakdown fb = fidelity_formula_parts(c, b, a);
        out.n1_samples.push_back(fb.n1);
        out.n2_samples.push_back(fb.n2);
        out.f_samples.push_back(fb.fidelity);
    }
    out.mean_n1 = mean(out.n1_samples);
    out.mean_n2 = mean(out.n2_samples);
    out.stderr_n1 = std::sqrt(variance(out.n1_samples) / double(config.trials));
    out.stderr_n2 = std::sqrt(variance(out.n2_samples) / double(config.trials));
    out.var_f = variance(out.f_samples);
    return out;
}

namespace {

std::string format_double(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

std::string sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n') c = ';';
    return s;
}

const char* ensemble_name(Ensemble e) {
    return e == Ensemble::generic ? "generic" : "simplified";
}

const char* mode_name(QueryMode m) { return m == QueryMode::exact ? "exact" : "sampled"; }

const char* oracle_name(ExperimentConfig::OracleUse o) {
    switch (o) {
        case ExperimentConfig::OracleUse::on: return "on";
        case ExperimentConfig::OracleUse::off: return "off";
        default: return "auto";
    }
}

}  // namespace

std::string trials_to_csv(const std::vector<TrialRecord>& records) {
    std::ostringstream os;
    os << "# cliffdec-trials v1\n";
    os << "trial,e_size,fidelity_formula,fidelity_oracle,pi_v,fidelity_bound,success,query_count,"
          "error\n";
    for (const TrialRecord& r : records) {
        os << r.trial << ',' << r.e_size << ',' << format_double(r.fidelity_formula) << ',';
        if (r.fidelity_oracle) os << format_double(*r.fidelity_oracle);
        os << ',' << format_double(r.pi_v) << ',' << format_double(r.fidelity_bound) << ','
           << (r.success ? 1 : 0) << ',' << r.query_count << ',' << sanitize(r.error) << '\n';
    }
    return os.str();
}

std::string summary_to_json(const ExperimentConfig& config, const ExperimentSummary& summary) {
    nlohmann::json j;
    j["config"] = nlohmann::json::parse(config_to_json(config));
    j["trials"] = summary.trials;
    j["completed"] = summary.completed;
    j["success_rate"] = summary.success_rate;
    j["success_floor"] = summary.success_floor;
    j["wilson_ci"] = {summary.ci_low, summary.ci_high};
    j["mean_fidelity"] = summary.mean_fidelity;
    j["median_fidelity"] = summary.median_fidelity;
    j["breakdown_regime"] = summary.breakdown_regime;
    return j.dump(2);
}

std::string config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["n"] = config.n;
    j["t"] = config.t;
    j["a_size"] = config.a_size;
    j["d_size"] = config.d_size;
    j["ensemble"] = ensemble_name(config.ensemble);
    j["depth"] = config.depth;
    j["trials"] = config.trials;
    j["shots"] = config.shots;
    j["seed"] = config.seed;
    j["mode"] = mode_name(config.learner_mode);
    j["oracle"] = oracle_name(config.oracle);
    if (!config.out_dir.empty()) j["out_dir"] = config.out_dir;
    return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ExperimentConfig c;
    if (j.contains("n")) c.n = j["n"].get<uint32_t>();
    if (j.contains("t")) c.t = j["t"].get<uint32_t>();
    if (j.contains("a_size")) c.a_size = j["a_size"].get<uint32_t>();
    if (j.contains("d_size")) c.d_size = j["d_size"].get<uint32_t>();
    if (j.contains("ensemble")) {
        std::string e = j["ensemble"].get<std::string>();
        if (e == "generic")
            c.ensemble = Ensemble::generic;
        else if (e == "simplified")
            c.ensemble = Ensemble::simplified_class;
        else
            throw std::invalid_argument("unknown ensemble: " + e);
    }
    if (j.contains("depth")) c.depth = j["depth"].get<uint32_t>();
    if (j.contains("trials")) c.trials = j["trials"].get<uint32_t>();
    if (j.contains("shots")) c.shots = j["shots"].get<uint32_t>();
    if (j.contains("seed")) c.seed = j["seed"].get<uint64_t>();
    if (j.contains("mode")) {
        std::string m = j["mode"].get<std::string>();
        if (m == "exact")
            c.learner_mode = QueryMode::exact;
        else if (m == "sampled")
            c.learner_mode = QueryMode::sampled;
        else
            throw std::invalid_argument("unknown mode: " + m);
    }
    if (j.contains("oracle")) {
        std::string o = j["oracle"].get<std::string>();
        if (o == "on")
            c.oracle = ExperimentConfig::OracleUse::on;
        else if (o == "off")
            c.oracle = ExperimentConfig::OracleUse::off;
        else if (o == "auto")
            c.oracle = ExperimentConfig::OracleUse::automatic;
        else
            throw std::invalid_argument("unknown oracle setting: " + o);
    }
    if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
    c.validate();
    return c;
}

}  // namespace cliffdec
