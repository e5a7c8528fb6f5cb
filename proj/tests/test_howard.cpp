#include <doctest.h>

#include <json.hpp>

#include "dmdp/worstcase.hpp"
#include "test_util.hpp"

using namespace dmdp;

namespace {

Vertex named(const Dmdp& d, const std::string& name) { return *d.find_vertex(name); }

}  // namespace

TEST_SUITE("howard") {

TEST_CASE("appraisal worked values on the n=3 instance") {
    Dmdp d = worst_case_instance(3);
    Evaluation e = evaluate(d, funnel_policy(3, 2));

    Appraisal loop = appraise(d, e, named(d, "t2"), named(d, "t2"));
    CHECK(loop.gain == Rational(14));
    CHECK(loop.bias == Rational(0));

    Appraisal lane = appraise(d, e, named(d, "t3"), named(d, "b1"));
    CHECK(lane.gain == Rational(14));
    CHECK(lane.bias == Rational(16 - 2 * 14));

    CHECK_THROWS_AS(appraise(d, e, named(d, "t1"), named(d, "b3")), std::invalid_argument);
}

TEST_CASE("appraisal of an all-zero world is (0,0)") {
    Dmdp d = Dmdp::parse("vertex a\nvertex b\nedge a b 0\nedge b b 0");
    Policy s{1, 1};
    Evaluation e = evaluate(d, s);
    Appraisal ap = appraise(d, e, 0, 1);
    CHECK(ap.gain == Rational(0));
    CHECK(ap.bias == Rational(0));
}

TEST_CASE("appraisals order lexicographically") {
    Appraisal a{Rational(1), Rational(100)};
    Appraisal b{Rational(2), Rational(-100)};
    CHECK(a < b);
    CHECK(Appraisal{Rational(1), Rational(1)} < Appraisal{Rational(1), Rational(2)});
    CHECK(Appraisal{Rational(1), Rational(1)} == Appraisal{Rational(1), Rational(1)});
}

TEST_CASE("single improvement steps on the n=3 instance") {
    Dmdp d = worst_case_instance(3);

    BellmanResult from_start = bellman(d, funnel_policy(3, 1));
    CHECK(from_start.policy == lane_policy(3, 1, 1));

    BellmanResult at_fixpoint = bellman(d, lane_policy(3, 3, 2));
    CHECK(at_fixpoint.policy == lane_policy(3, 3, 2));
    CHECK(at_fixpoint.switched.empty());

    BellmanResult after_takeover = bellman(d, takeover_policy(3, 1));
    CHECK(after_takeover.policy == funnel_policy(3, 2));
    CHECK_FALSE(after_takeover.switched.empty());
}

TEST_CASE("switched lists exactly the changed vertices") {
    Dmdp d = worst_case_instance(3);
    Policy before = funnel_policy(3, 1);
    BellmanResult step = bellman(d, before);
    std::vector<Vertex> changed;
    for (std::size_t v = 0; v < before.size(); ++v)
        if (step.policy[v] != before[v]) changed.push_back(static_cast<Vertex>(v));
    CHECK(step.switched == changed);
}

TEST_CASE("tie-breaking keeps the incumbent and otherwise takes least index") {
    std::mt19937_64 rng(31);
    for (int round = 0; round < 150; ++round) {
        RandomSpec spec;
        spec.n = 2 + static_cast<int>(rng() % 7);
        spec.out_degree_min = 1;
        spec.out_degree_max = std::min(spec.n, 3);
        spec.weight_min = -4;
        spec.weight_max = 4;
        spec.seed = rng();
        Dmdp d = random_dmdp(spec);
        Policy s = test::random_policy(d, rng);
        Evaluation e = evaluate(d, s);
        BellmanResult step = bellman(d, s);
        for (std::size_t v = 0; v < s.size(); ++v) {
            Appraisal chosen = appraise(d, e, static_cast<Vertex>(v), step.policy[v]);
            bool incumbent_is_max = true;
            Appraisal incumbent = appraise(d, e, static_cast<Vertex>(v), s[v]);
            for (const Edge& edge : d.out(static_cast<Vertex>(v))) {
                Appraisal ap = appraise(d, e, static_cast<Vertex>(v), edge.to);
                CHECK(ap <= chosen);  // chosen is a maximizer
                if (ap > incumbent) incumbent_is_max = false;
            }
            if (incumbent_is_max) {
                CHECK(step.policy[v] == s[v]);  // tie rule part 1
            } else {
                // least-index maximizer wins
                for (const Edge& edge : d.out(static_cast<Vertex>(v))) {
                    if (edge.to >= step.policy[v]) break;
                    CHECK(appraise(d, e, static_cast<Vertex>(v), edge.to) < chosen);
                }
            }
        }
    }
}

TEST_CASE("initial policies") {
    Dmdp d = worst_case_instance(3);
    CHECK(initial_policy(d, InitMode::LowestIndex) == funnel_policy(3, 1));

    Policy greedy = initial_policy(d, InitMode::GreedyWeight);
    Vertex b1 = named(d, "b1"), t1 = named(d, "t1");
    for (std::size_t v = 0; v < greedy.size(); ++v) {
        if (static_cast<Vertex>(v) == b1)
            CHECK(greedy[v] == t1);  // all of b1's edges weigh 0; least index wins
        else
            CHECK(greedy[v] == b1);  // the heavy lane edge, least index among ties
    }

    Dmdp two = Dmdp::parse("vertex a\nvertex b\nedge a b 1\nedge b a 1");
    CHECK(initial_policy(two, InitMode::LowestIndex) == Policy{1, 0});
    CHECK(initial_policy(two, InitMode::GreedyWeight) == Policy{1, 0});
}

TEST_CASE("full runs on the hard family") {
    Dmdp p3 = worst_case_instance(3);
    IterationTrace low = run_howard(p3, initial_policy(p3, InitMode::LowestIndex));
    CHECK(low.iterations == 12);
    CHECK(low.final_step().policy == lane_policy(3, 3, 2));
    CHECK(static_cast<std::int64_t>(low.steps.size()) == low.iterations);
    CHECK(low.final_step().switched.empty());
    for (std::size_t k = 0; k + 1 < low.steps.size(); ++k) {
        CHECK_FALSE(low.steps[k].switched.empty());
        CHECK(bellman(p3, low.steps[k].policy).policy == low.steps[k + 1].policy);
    }
    CHECK(test::trace_vals_nondecreasing(low));
    CHECK(test::trace_policies_distinct(low));

    IterationTrace greedy = run_howard(p3, initial_policy(p3, InitMode::GreedyWeight));
    CHECK(greedy.iterations == 11);

    Dmdp p1 = worst_case_instance(1);
    IterationTrace tiny = run_howard(p1, initial_policy(p1, InitMode::LowestIndex));
    CHECK(tiny.iterations == 1);
    CHECK(tiny.steps.size() == 1);
    CHECK(tiny.final_step().switched.empty());
}

TEST_CASE("fixpoint policies maximize every appraisal") {
    Dmdp d = worst_case_instance(4);
    IterationTrace trace = run_howard(d, initial_policy(d, InitMode::LowestIndex));
    const Policy& best = trace.final_step().policy;
    Evaluation e = evaluate(d, best);
    for (std::size_t v = 0; v < best.size(); ++v) {
        Appraisal chosen = appraise(d, e, static_cast<Vertex>(v), best[v]);
        for (const Edge& edge : d.out(static_cast<Vertex>(v)))
            CHECK(appraise(d, e, static_cast<Vertex>(v), edge.to) <= chosen);
    }
}

TEST_CASE("identical runs produce identical traces") {
    Dmdp d = worst_case_instance(4);
    IterationTrace a = run_howard(d, initial_policy(d, InitMode::LowestIndex));
    IterationTrace b = run_howard(d, initial_policy(d, InitMode::LowestIndex));
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
        CHECK(a.steps[k].policy == b.steps[k].policy);
        CHECK(a.steps[k].switched == b.steps[k].switched);
        CHECK(values_equal(a.steps[k].eval, b.steps[k].eval));
    }
    CHECK(trace_to_jsonl(a) == trace_to_jsonl(b));
}

TEST_CASE("iteration limit raises a diagnostic with the partial trace") {
    Dmdp d = worst_case_instance(3);
    try {
        run_howard(d, initial_policy(d, InitMode::LowestIndex), 3);
        FAIL("expected IterationLimitError");
    } catch (const IterationLimitError& e) {
        CHECK(e.partial.steps.size() == 3);
        CHECK(e.partial.iterations == 3);
        CHECK(std::string(e.what()).find("limit of 3") != std::string::npos);
    }
}

TEST_CASE("trace serializes to one JSON object per step") {
    Dmdp d = worst_case_instance(2);
    IterationTrace trace = run_howard(d, initial_policy(d, InitMode::LowestIndex));
    std::string jsonl = trace_to_jsonl(trace);
    std::vector<std::string> lines;
    for (std::size_t pos = 0; pos < jsonl.size();) {
        auto eol = jsonl.find('\n', pos);
        lines.push_back(jsonl.substr(pos, eol - pos));
        pos = eol + 1;
    }
    REQUIRE(lines.size() == trace.steps.size());
    for (std::size_t k = 0; k < lines.size(); ++k) {
        auto j = nlohmann::json::parse(lines[k]);
        CHECK(j["k"] == k);
        CHECK(j["policy"].size() == d.num_vertices());
        CHECK(j["val"].size() == d.num_vertices());
        CHECK(j["pot"].size() == d.num_vertices());
        CHECK(j["val"][0].is_string());
        CHECK(j["switched"].is_array());
    }
    auto last = nlohmann::json::parse(lines.back());
    CHECK(last["switched"].empty());
    CHECK(last["val"][0] == "8");  // optimum of the n=2 instance
}

}
