#pragma once

// Assume-guarantee specifications:  (/\ assumptions) -> (/\ guarantees),
// plus the declarative pattern library used to draw random specifications,
// guarantee splitting, and assumption shuffling.

#include <string>
#include <vector>

#include "cnml/ltl.hpp"
#include "cnml/rng.hpp"
#include "cnml/util.hpp"

namespace cnml {

struct AssumeGuaranteeSpec {
    std::vector<LtlPtr> assumptions;
    std::vector<LtlPtr> guarantees;  // nonempty
};

// Conjoin left-to-right in list order: ((f1 & f2) & f3) ...
inline LtlPtr conjoin(const std::vector<LtlPtr>& fs) {
    LtlPtr acc = nullptr;
    for (const auto& f : fs) acc = acc ? Ltl::conj(acc, f) : f;
    return acc;
}

inline LtlPtr flatten(const AssumeGuaranteeSpec& s) {
    if (s.guarantees.empty())
        throw std::invalid_argument("specification has no guarantees");
    LtlPtr g = conjoin(s.guarantees);
    if (s.assumptions.empty()) return g;
    return Ltl::implies(conjoin(s.assumptions), g);
}

inline std::string spec_text(const AssumeGuaranteeSpec& s) { return render_ltl(flatten(s)); }

// One spec per guarantee, assumptions preserved verbatim. Sound weakening:
// any circuit satisfying the input satisfies every output.
inline std::vector<AssumeGuaranteeSpec> split_spec(const AssumeGuaranteeSpec& s) {
    std::vector<AssumeGuaranteeSpec> out;
    out.reserve(s.guarantees.size());
    for (const auto& g : s.guarantees) out.push_back({s.assumptions, {g}});
    return out;
}

inline AssumeGuaranteeSpec shuffle_assumptions(const AssumeGuaranteeSpec& s, Rng& rng) {
    AssumeGuaranteeSpec out = s;
    rng.shuffle(out.assumptions);
    return out;
}

// ---------------------------------------------------------------------------
// Pattern library. Triggers are input literals, targets are outputs; this
// keeps every guarantee realizable by a small circuit template.

enum class SpecPattern : int {
    Response = 0,      // G (trig -> F out)
    Invariance = 1,    // G (trig -> out)
    NextResponse = 2,  // G (trig -> X out)
    Mutex = 3,         // G !(out_a & out_b)
    Eventuality = 4,   // F out
};
constexpr int kNumSpecPatterns = 5;

inline const char* pattern_name(SpecPattern p) {
    switch (p) {
        case SpecPattern::Response: return "response";
        case SpecPattern::Invariance: return "invariance";
        case SpecPattern::NextResponse: return "next_response";
        case SpecPattern::Mutex: return "mutex";
        case SpecPattern::Eventuality: return "eventuality";
    }
    return "?";
}

enum class AssumePattern : int {
    GloballyInput = 0,  // G in
    EventuallyInput = 1 // F in
};

struct GuaranteeInstance {
    SpecPattern pattern;
    int trigger_input = -1;    // index into inputs; -1 when unused
    bool trigger_negated = false;
    int out_a = -1;            // primary target output index
    int out_b = -1;            // second output (Mutex only)
};

struct AssumptionInstance {
    AssumePattern pattern;
    int input = -1;
};

struct SpecGenConfig {
    int num_inputs = 3;   // alphabet i0..i{n-1}
    int num_outputs = 3;  // alphabet o1..o{m}
    int min_assumptions = 0;
    int max_assumptions = 2;
    int min_guarantees = 1;
    int max_guarantees = 3;
    // Weights aligned with SpecPattern order.
    std::vector<double> pattern_weights = {1, 1, 1, 1, 1};
    // Give each guarantee exclusive target outputs so per-pattern circuit
    // templates compose without conflicting on a wire.
    bool distinct_guarantee_outputs = true;
};

inline std::string input_name(int k) { return "i" + std::to_string(k); }
// Outputs are conventionally numbered from 1 (o1 is the first output).
inline std::string output_name(int k) { return "o" + std::to_string(k + 1); }

struct SpecDraw {
    AssumeGuaranteeSpec spec;
    std::vector<AssumptionInstance> assumption_instances;
    std::vector<GuaranteeInstance> guarantee_instances;
    int num_inputs = 0;
    int num_outputs = 0;
};

inline LtlPtr guarantee_formula(const GuaranteeInstance& g) {
    auto trig = [&]() -> LtlPtr {
        LtlPtr a = Ltl::atom(input_name(g.trigger_input));
        return g.trigger_negated ? Ltl::neg(a) : a;
    };
    switch (g.pattern) {
        case SpecPattern::Response:
            return Ltl::globally(Ltl::implies(trig(), Ltl::eventually(Ltl::atom(output_name(g.out_a)))));
        case SpecPattern::Invariance:
            return Ltl::globally(Ltl::implies(trig(), Ltl::atom(output_name(g.out_a))));
        case SpecPattern::NextResponse:
            return Ltl::globally(Ltl::implies(trig(), Ltl::next(Ltl::atom(output_name(g.out_a)))));
        case SpecPattern::Mutex:
            return Ltl::globally(Ltl::neg(
                Ltl::conj(Ltl::atom(output_name(g.out_a)), Ltl::atom(output_name(g.out_b)))));
        case SpecPattern::Eventuality:
            return Ltl::eventually(Ltl::atom(output_name(g.out_a)));
    }
    throw std::logic_error("unreachable");
}

inline LtlPtr assumption_formula(const AssumptionInstance& a) {
    switch (a.pattern) {
        case AssumePattern::GloballyInput: return Ltl::globally(Ltl::atom(input_name(a.input)));
        case AssumePattern::EventuallyInput: return Ltl::eventually(Ltl::atom(input_name(a.input)));
    }
    throw std::logic_error("unreachable");
}

inline void validate(const SpecGenConfig& cfg) {
    if (cfg.num_inputs < 1 || cfg.num_outputs < 1)
        throw config_error("spec generation needs a nonempty alphabet");
    if (cfg.min_guarantees < 1 || cfg.max_guarantees < cfg.min_guarantees)
        throw config_error("spec generation needs at least one guarantee");
    if (cfg.min_assumptions < 0 || cfg.max_assumptions < cfg.min_assumptions)
        throw config_error("invalid assumption count range");
    if (cfg.pattern_weights.size() != kNumSpecPatterns)
        throw config_error("pattern_weights must have 5 entries");
}

// Draw a random specification from the pattern library. Deterministic in rng.
inline SpecDraw generate_spec(const SpecGenConfig& cfg, Rng& rng) {
    validate(cfg);
    SpecDraw d;
    d.num_inputs = cfg.num_inputs;
    d.num_outputs = cfg.num_outputs;

    int n_assume = static_cast<int>(rng.range(cfg.min_assumptions, cfg.max_assumptions));
    int n_guar = static_cast<int>(rng.range(cfg.min_guarantees, cfg.max_guarantees));

    for (int i = 0; i < n_assume; ++i) {
        AssumptionInstance a;
        a.pattern = rng.coin() ? AssumePattern::GloballyInput : AssumePattern::EventuallyInput;
        a.input = static_cast<int>(rng.below(cfg.num_inputs));
        d.assumption_instances.push_back(a);
        d.spec.assumptions.push_back(assumption_formula(a));
    }

    // Pool of output indices handed out to guarantees; Mutex consumes two.
    std::vector<int> free_outputs;
    for (int k = 0; k < cfg.num_outputs; ++k) free_outputs.push_back(k);
    rng.shuffle(free_outputs);

    auto take_output = [&]() -> int {
        if (cfg.distinct_guarantee_outputs) {
            int k = free_outputs.back();
            free_outputs.pop_back();
            return k;
        }
        return static_cast<int>(rng.below(cfg.num_outputs));
    };

    for (int i = 0; i < n_guar; ++i) {
        GuaranteeInstance g;
        int needed = 1;
        for (int tries = 0;; ++tries) {
            g.pattern = static_cast<SpecPattern>(rng.weighted(cfg.pattern_weights));
            needed = g.pattern == SpecPattern::Mutex ? 2 : 1;
            if (!cfg.distinct_guarantee_outputs ||
                static_cast<int>(free_outputs.size()) >= needed)
                break;
            if (tries > 32) break;  // fall through; outputs exhausted below
        }
        if (cfg.distinct_guarantee_outputs &&
            static_cast<int>(free_outputs.size()) < needed)
            break;  // cannot place more guarantees
        g.trigger_input = static_cast<int>(rng.below(cfg.num_inputs));
        g.trigger_negated = rng.coin(0.3);
        g.out_a = take_output();
        if (g.pattern == SpecPattern::Mutex) g.out_b = take_output();
        d.guarantee_instances.push_back(g);
        d.spec.guarantees.push_back(guarantee_formula(g));
    }
    if (d.spec.guarantees.empty()) {
        // Output pool too small for the drawn patterns; fall back to one
        // eventuality so the guarantee list is never empty.
        GuaranteeInstance g;
        g.pattern = SpecPattern::Eventuality;
        g.trigger_input = static_cast<int>(rng.below(cfg.num_inputs));
        g.out_a = static_cast<int>(rng.below(cfg.num_outputs));
        d.guarantee_instances.push_back(g);
        d.spec.guarantees.push_back(guarantee_formula(g));
    }
    return d;
}

inline std::set<std::string> spec_alphabet(int num_inputs, int num_outputs) {
    std::set<std::string> s;
    for (int k = 0; k < num_inputs; ++k) s.insert(input_name(k));
    for (int k = 0; k < num_outputs; ++k) s.insert(output_name(k));
    return s;
}

}  // namespace cnml
