#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cliffdec/learner.hpp>

#include <json.hpp>

#include <algorithm>

using namespace cliffdec;

namespace {

DopedCircuit random_circuit(uint32_t n, uint32_t t, uint64_t seed) {
    Rng rng(seed);
    return sample_doped_circuit(n, t, Ensemble::generic, 3 * n, rng);
}

bool same_group(const LearnedGroups& a, const LearnedGroups& b) {
    if (a.g_d.rank() != b.g_d.rank()) return false;
    return std::all_of(a.generators.begin(), a.generators.end(),
                       [&](const PauliString& g) { return b.g_d.contains(g); });
}

}  // namespace

TEST_CASE("t = 0: everything on D is preserved, images match the tableau") {
    DopedCircuit c = random_circuit(4, 0, 31);
    CliffordTableau tab = c.to_tableau();
    QueryOracle oracle(c, QueryMode::exact, 0, 0);
    SubsystemMask d(4, {1, 2});

    LearnedGroups g = learn_groups(oracle, d, ProbeStrategy::exhaustive);
    CHECK(g.g_d.rank() == 4);
    CHECK(g.e_size == 2);
    CHECK_FALSE(g.degenerate);
    CHECK_FALSE(g.incomplete);
    CHECK(g.query_count == 15);  // 4^2 - 1 probes, one query each
    CHECK(g.transcript.size() == 15);
    for (size_t i = 0; i < g.generators.size(); ++i)
        CHECK(g.images[i] == tab.conjugate(g.generators[i]));
}

TEST_CASE("a single T gate kills the anticommuting directions") {
    DopedCircuit c(2, {{GateKind::T, 0}});
    QueryOracle oracle(c, QueryMode::exact, 0, 0);

    // the expansion behind the refusal: two equal-weight branches
    PauliSum split = propagate(c, PauliString::parse("XI"));
    REQUIRE(split.term_count() == 2);
    for (const PauliTerm& term : split.terms())
        CHECK(term.coeff.squared().value() == doctest::Approx(0.5));

    CHECK_FALSE(oracle.test_pauli(PauliString::parse("XI")).has_value());
    CHECK_FALSE(oracle.test_pauli(PauliString::parse("YI")).has_value());
    CHECK(oracle.test_pauli(PauliString::parse("ZI")) == PauliString::parse("ZI"));

    LearnedGroups g = learn_groups(oracle, SubsystemMask(2, {0}), ProbeStrategy::exhaustive);
    CHECK(g.g_d.rank() == 1);
    CHECK(g.e_size == 0);
    CHECK(g.degenerate);  // Z alone commutes with the whole group
}

TEST_CASE("simplified-class circuit with the doped qubit inside D") {
    // seed chosen so one H T H T block lands on a qubit of D
    for (uint64_t seed = 1;; ++seed) {
        Rng rng(seed);
        DopedCircuit c = sample_doped_circuit(6, 2, Ensemble::simplified_class, 0, rng);
        QueryOracle oracle(c, QueryMode::exact, 0, 0);
        SubsystemMask d(6, {0, 1, 2});
        LearnedGroups g = learn_groups(oracle, d, ProbeStrategy::exhaustive);
        CHECK(g.g_d.rank() % 2 == 0);
        CHECK_FALSE(g.degenerate);
        CHECK(g.e_size == g.g_d.rank() / 2);
        if (g.g_d.rank() == 4) {  // doped qubit inside D: 2|D| - t
            CHECK(g.e_size == 2);
            break;
        }
        REQUIRE(g.g_d.rank() == 6);  // doped qubit outside D
        REQUIRE(seed < 32);          // a hit is overwhelmingly likely long before this
    }
}

TEST_CASE("learned images preserve commutation") {
    DopedCircuit c = random_circuit(6, 2, 77);
    QueryOracle oracle(c, QueryMode::exact, 0, 0);
    LearnedGroups g = learn_groups(oracle, SubsystemMask(6, {0, 1, 2}), ProbeStrategy::exhaustive);
    REQUIRE(g.generators.size() >= 2);
    for (size_t i = 0; i < g.generators.size(); ++i)
        for (size_t j = i + 1; j < g.generators.size(); ++j)
            CHECK(commutes(g.generators[i], g.generators[j]) ==
                  commutes(g.images[i], g.images[j]));
}

TEST_CASE("exhaustive and random-probe learn the same group") {
    DopedCircuit c = random_circuit(5, 2, 123);
    SubsystemMask d(5, {1, 3});

    QueryOracle o1(c, QueryMode::exact, 0, 0);
    LearnedGroups a = learn_groups(o1, d, ProbeStrategy::exhaustive);
    QueryOracle o2(c, QueryMode::exact, 0, 0);
    LearnedGroups b = learn_groups(o2, d, ProbeStrategy::random_probe);

    CHECK_FALSE(a.incomplete);
    CHECK_FALSE(b.incomplete);
    CHECK(same_group(a, b));
    CHECK(same_group(b, a));
}

TEST_CASE("exact-mode learning is deterministic") {
    DopedCircuit c = random_circuit(5, 4, 9);
    SubsystemMask d(5, {0, 4});
    QueryOracle o1(c, QueryMode::exact, 0, 0);
    QueryOracle o2(c, QueryMode::exact, 0, 0);
    LearnedGroups a = learn_groups(o1, d, ProbeStrategy::exhaustive);
    LearnedGroups b = learn_groups(o2, d, ProbeStrategy::exhaustive);
    REQUIRE(a.transcript.size() == b.transcript.size());
    for (size_t i = 0; i < a.transcript.size(); ++i) {
        CHECK(a.transcript[i].probe == b.transcript[i].probe);
        CHECK(a.transcript[i].image == b.transcript[i].image);
    }
}

TEST_CASE("sampled mode agrees with exact mode and respects the query bound") {
    int disagreements = 0;
    for (uint64_t seed = 0; seed < 10; ++seed) {
        DopedCircuit c = random_circuit(6, 2, 1000 + seed);
        QueryOracle exact(c, QueryMode::exact, 0, 0);
        QueryOracle sampled(c, QueryMode::sampled, 200, 4242 + seed);
        SubsystemMask d(6, {0, 1, 2});
        for (uint64_t code = 1; code < 64; ++code) {
            PauliString probe = pauli_on_mask(d, code);
            auto e = exact.test_pauli(probe);
            auto s = sampled.test_pauli(probe);
            if (e.has_value() != s.has_value())
                ++disagreements;
            else if (e && *e != *s)
                ++disagreements;  // sign must match too
        }
        CHECK(sampled.query_count() <= 64ull * 200ull);
    }
    CHECK(disagreements == 0);
}

TEST_CASE("sampled mode resolves negative image signs") {
    // conjugating Z through X flips its sign deterministically
    DopedCircuit c(1, {{GateKind::X, 0}});
    QueryOracle oracle(c, QueryMode::sampled, 16, 7);
    auto img = oracle.test_pauli(PauliString::parse("Z"));
    REQUIRE(img.has_value());
    CHECK(*img == PauliString::parse("-Z"));
    CHECK(oracle.query_count() == 16);
}

TEST_CASE("budget exhaustion yields a partial result with the flag set") {
    DopedCircuit c = random_circuit(4, 0, 8);
    QueryOracle oracle(c, QueryMode::exact, 0, 0);
    LearnedGroups g = learn_groups(oracle, SubsystemMask(4, {0, 1}), ProbeStrategy::exhaustive, 5);
    CHECK(g.incomplete);
    CHECK(g.query_count == 5);
    CHECK(g.transcript.size() == 5);
    CHECK(g.g_d.rank() <= 4);
}

TEST_CASE("too few shots to decide raises the inconclusive error") {
    DopedCircuit c = random_circuit(3, 0, 4);
    QueryOracle oracle(c, QueryMode::sampled, 1, 0);
    CHECK_THROWS_AS((void)oracle.test_pauli(PauliString::parse("XII")), inconclusive_error);
}

TEST_CASE("transcript serializes to parseable JSON") {
    DopedCircuit c = random_circuit(4, 2, 55);
    QueryOracle oracle(c, QueryMode::exact, 0, 0);
    LearnedGroups g = learn_groups(oracle, SubsystemMask(4, {2, 3}), ProbeStrategy::exhaustive);

    nlohmann::json j = nlohmann::json::parse(transcript_to_json(g));
    CHECK(j["d"] == std::vector<uint32_t>{2, 3});
    CHECK(j["rank"] == g.g_d.rank());
    CHECK(j["query_count"] == g.query_count);
    CHECK(j["probes"].size() == g.transcript.size());
    CHECK(j["generators"].size() == g.generators.size());
    for (const auto& entry : j["generators"])
        CHECK_FALSE(entry["image"].get<std::string>().empty());
}
