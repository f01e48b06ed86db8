#pragma once

// ASCII AIGER (aag) circuits: parsing, canonical serialization, sequential
// simulation, and wire padding. Literal conventions follow the format:
// 0/1 are the constants FALSE/TRUE, an odd literal negates the preceding
// even literal, inputs/latch outputs/gate outputs are distinct even
// literals.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cnml/rng.hpp"
#include "cnml/util.hpp"

namespace cnml {

struct Circuit {
    struct Latch {
        unsigned lit;   // even literal defined by this latch
        unsigned next;  // next-state literal
    };
    struct AndGate {
        unsigned lhs;   // even literal defined by this gate
        unsigned rhs0;
        unsigned rhs1;
    };

    unsigned max_var = 0;  // M in the header
    std::vector<unsigned> inputs;
    std::vector<Latch> latches;
    std::vector<unsigned> outputs;
    std::vector<AndGate> and_gates;

    // Resolved names (symbol table entries or the defaults i0.., L0.., o1..).
    std::vector<std::string> input_names;
    std::vector<std::string> latch_names;
    std::vector<std::string> output_names;

    // Gate indices in dependency order; computed at validation time since
    // simulation is the hot path.
    std::vector<unsigned> topo_order;

    std::size_t num_inputs() const { return inputs.size(); }
    std::size_t num_latches() const { return latches.size(); }
    std::size_t num_outputs() const { return outputs.size(); }
};

inline std::string default_input_name(std::size_t k) { return "i" + std::to_string(k); }
inline std::string default_latch_name(std::size_t k) { return "L" + std::to_string(k); }
// Output naming starts at o1; the first output of a circuit is o1.
inline std::string default_output_name(std::size_t k) { return "o" + std::to_string(k + 1); }

namespace detail {

// Validates structural invariants and fills names/topo order.
inline void finalize_circuit(Circuit& c, bool names_from_symbols) {
    enum class Def : std::uint8_t { None, Const, Input, Latch, Gate };
    std::vector<Def> def(c.max_var + 1, Def::None);
    std::vector<unsigned> gate_of(c.max_var + 1, 0);
    def[0] = Def::Const;

    auto var_of = [&](unsigned lit, const char* what) -> unsigned {
        unsigned v = lit >> 1;
        if (v > c.max_var)
            throw parse_error(std::string(what) + " literal " + std::to_string(lit) +
                                  " exceeds max variable index",
                              0);
        return v;
    };
    auto define = [&](unsigned lit, Def kind, const char* what) {
        if (lit & 1)
            throw parse_error(std::string("odd literal ") + std::to_string(lit) +
                                  " cannot be defined as " + what,
                              0);
        unsigned v = var_of(lit, what);
        if (v == 0)
            throw parse_error("constant literal cannot be redefined", 0);
        if (def[v] != Def::None)
            throw parse_error("literal " + std::to_string(lit) + " defined twice", 0);
        def[v] = kind;
    };

    for (unsigned lit : c.inputs) define(lit, Def::Input, "input");
    for (const auto& l : c.latches) define(l.lit, Def::Latch, "latch");
    for (std::size_t gi = 0; gi < c.and_gates.size(); ++gi) {
        define(c.and_gates[gi].lhs, Def::Gate, "and-gate");
        gate_of[c.and_gates[gi].lhs >> 1] = static_cast<unsigned>(gi);
    }

    auto check_used = [&](unsigned lit, const char* what) {
        unsigned v = var_of(lit, what);
        if (def[v] == Def::None)
            throw parse_error(std::string(what) + " references undefined literal " +
                                  std::to_string(lit),
                              0);
    };
    for (const auto& l : c.latches) check_used(l.next, "latch next-state");
    for (unsigned lit : c.outputs) check_used(lit, "output");
    for (const auto& g : c.and_gates) {
        check_used(g.rhs0, "and-gate operand");
        check_used(g.rhs1, "and-gate operand");
    }

    // Topological order over gates; combinational cycles are invalid
    // (cycles are legal only through latches).
    c.topo_order.clear();
    c.topo_order.reserve(c.and_gates.size());
    std::vector<std::uint8_t> mark(c.and_gates.size(), 0);  // 0 new, 1 open, 2 done
    std::vector<unsigned> stack;
    for (unsigned root = 0; root < c.and_gates.size(); ++root) {
        if (mark[root]) continue;
        stack.push_back(root);
        while (!stack.empty()) {
            unsigned gi = stack.back();
            if (mark[gi] == 2) {
                stack.pop_back();
                continue;
            }
            bool ready = true;
            for (unsigned operand : {c.and_gates[gi].rhs0, c.and_gates[gi].rhs1}) {
                unsigned v = operand >> 1;
                if (def[v] != Def::Gate) continue;
                unsigned dep = gate_of[v];
                if (mark[dep] == 2) continue;
                if (mark[dep] == 1)
                    throw parse_error("combinational cycle through literal " +
                                          std::to_string(c.and_gates[gi].lhs),
                                      0);
                stack.push_back(dep);
                ready = false;
            }
            if (ready) {
                if (mark[gi] == 1) {
                    mark[gi] = 2;
                    c.topo_order.push_back(gi);
                    stack.pop_back();
                } else {
                    mark[gi] = 1;
                }
            } else {
                mark[gi] = 1;
            }
        }
    }

    if (!names_from_symbols) {
        c.input_names.clear();
        c.latch_names.clear();
        c.output_names.clear();
    }
    c.input_names.resize(c.inputs.size());
    c.latch_names.resize(c.latches.size());
    c.output_names.resize(c.outputs.size());
    for (std::size_t k = 0; k < c.inputs.size(); ++k)
        if (c.input_names[k].empty()) c.input_names[k] = default_input_name(k);
    for (std::size_t k = 0; k < c.latches.size(); ++k)
        if (c.latch_names[k].empty()) c.latch_names[k] = default_latch_name(k);
    for (std::size_t k = 0; k < c.outputs.size(); ++k)
        if (c.output_names[k].empty()) c.output_names[k] = default_output_name(k);
}

}  // namespace detail

inline Circuit parse_aag(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;

    auto next_line = [&](const char* what) -> std::string {
        if (!std::getline(in, line))
            throw parse_error(std::string("unexpected end of file, expected ") + what +
                                  " at line " + std::to_string(lineno + 1),
                              lineno + 1);
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };

    std::string header = next_line("header");
    std::istringstream hs(header);
    std::string magic;
    unsigned m = 0, i = 0, l = 0, o = 0, a = 0;
    if (!(hs >> magic >> m >> i >> l >> o >> a) || magic != "aag")
        throw parse_error("malformed header '" + header + "' (expected: aag M I L O A)", 1);
    std::string extra;
    if (hs >> extra)
        throw parse_error("trailing header fields in '" + header + "'", 1);

    Circuit c;
    c.max_var = m;

    auto parse_uints = [&](const std::string& s, std::size_t want, const char* what) {
        std::istringstream ls(s);
        std::vector<unsigned> vals;
        long long v;
        while (ls >> v) {
            if (v < 0)
                throw parse_error(std::string("negative literal in ") + what + " line " +
                                      std::to_string(lineno),
                                  lineno);
            vals.push_back(static_cast<unsigned>(v));
        }
        if (!ls.eof() || vals.size() != want)
            throw parse_error(std::string("malformed ") + what + " line " +
                                  std::to_string(lineno) + ": '" + s + "'",
                              lineno);
        return vals;
    };

    for (unsigned k = 0; k < i; ++k)
        c.inputs.push_back(parse_uints(next_line("input"), 1, "input")[0]);
    for (unsigned k = 0; k < l; ++k) {
        auto v = parse_uints(next_line("latch"), 2, "latch");
        c.latches.push_back({v[0], v[1]});
    }
    for (unsigned k = 0; k < o; ++k)
        c.outputs.push_back(parse_uints(next_line("output"), 1, "output")[0]);
    for (unsigned k = 0; k < a; ++k) {
        auto v = parse_uints(next_line("and-gate"), 3, "and-gate");
        c.and_gates.push_back({v[0], v[1], v[2]});
    }

    // Optional symbol table, terminated by EOF or a comment section.
    c.input_names.resize(i);
    c.latch_names.resize(l);
    c.output_names.resize(o);
    bool have_symbols = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == 'c') break;  // comment section; ignored
        std::size_t sp = line.find(' ');
        if (sp == std::string::npos || sp < 2)
            throw parse_error("malformed symbol line " + std::to_string(lineno) + ": '" + line +
                                  "'",
                              lineno);
        char kind = line[0];
        unsigned idx = 0;
        try {
            idx = static_cast<unsigned>(std::stoul(line.substr(1, sp - 1)));
        } catch (const std::exception&) {
            throw parse_error("malformed symbol index in line " + std::to_string(lineno), lineno);
        }
        std::string name = line.substr(sp + 1);
        auto assign = [&](std::vector<std::string>& names, std::size_t limit) {
            if (idx >= limit)
                throw parse_error("symbol index out of range in line " + std::to_string(lineno),
                                  lineno);
            names[idx] = name;
        };
        switch (kind) {
            case 'i': assign(c.input_names, i); break;
            case 'l': assign(c.latch_names, l); break;
            case 'o': assign(c.output_names, o); break;
            default:
                throw parse_error("unknown symbol kind in line " + std::to_string(lineno), lineno);
        }
        have_symbols = true;
    }

    detail::finalize_circuit(c, have_symbols);
    return c;
}

// Canonical serialization: header, definition lines in stored order, then
// symbol lines only for names that differ from the defaults.
inline std::string render_aag(const Circuit& c) {
    std::ostringstream out;
    out << "aag " << c.max_var << ' ' << c.inputs.size() << ' ' << c.latches.size() << ' '
        << c.outputs.size() << ' ' << c.and_gates.size() << '\n';
    for (unsigned lit : c.inputs) out << lit << '\n';
    for (const auto& l : c.latches) out << l.lit << ' ' << l.next << '\n';
    for (unsigned lit : c.outputs) out << lit << '\n';
    for (const auto& g : c.and_gates) out << g.lhs << ' ' << g.rhs0 << ' ' << g.rhs1 << '\n';
    for (std::size_t k = 0; k < c.input_names.size(); ++k)
        if (c.input_names[k] != default_input_name(k))
            out << 'i' << k << ' ' << c.input_names[k] << '\n';
    for (std::size_t k = 0; k < c.latch_names.size(); ++k)
        if (c.latch_names[k] != default_latch_name(k))
            out << 'l' << k << ' ' << c.latch_names[k] << '\n';
    for (std::size_t k = 0; k < c.output_names.size(); ++k)
        if (c.output_names[k] != default_output_name(k))
            out << 'o' << k << ' ' << c.output_names[k] << '\n';
    return out.str();
}

using LatchState = std::vector<bool>;

inline LatchState initial_state(const Circuit& c) { return LatchState(c.latches.size(), false); }

struct StepResult {
    std::vector<bool> outputs;
    LatchState next_state;
};

// One synchronous step: combinational evaluation in topological order,
// outputs read from their literals, latches load their next-state literals.
inline StepResult simulate_step(const Circuit& c, const LatchState& state,
                                const std::vector<bool>& input_bits) {
    if (input_bits.size() != c.inputs.size())
        throw std::invalid_argument("input vector length mismatch");
    if (state.size() != c.latches.size())
        throw std::invalid_argument("latch state length mismatch");

    std::vector<bool> value(c.max_var + 1, false);
    for (std::size_t k = 0; k < c.inputs.size(); ++k) value[c.inputs[k] >> 1] = input_bits[k];
    for (std::size_t k = 0; k < c.latches.size(); ++k) value[c.latches[k].lit >> 1] = state[k];

    auto lit_value = [&](unsigned lit) -> bool {
        bool v = value[lit >> 1];
        return (lit & 1) ? !v : v;
    };
    // Constant literals: variable 0 holds FALSE, so lit 0 -> false, lit 1 -> true.

    for (unsigned gi : c.topo_order) {
        const auto& g = c.and_gates[gi];
        value[g.lhs >> 1] = lit_value(g.rhs0) && lit_value(g.rhs1);
    }

    StepResult r;
    r.outputs.reserve(c.outputs.size());
    for (unsigned lit : c.outputs) r.outputs.push_back(lit_value(lit));
    r.next_state.reserve(c.latches.size());
    for (const auto& l : c.latches) r.next_state.push_back(lit_value(l.next));
    return r;
}

// Append fresh unused inputs and constant-FALSE outputs up to the targets.
// Behavior on the pre-existing wires is untouched.
inline Circuit pad_wires(const Circuit& c, std::size_t target_inputs, std::size_t target_outputs) {
    if (target_inputs < c.inputs.size() || target_outputs < c.outputs.size())
        throw std::invalid_argument("pad_wires target below current wire count");
    Circuit p = c;
    while (p.inputs.size() < target_inputs) {
        p.max_var += 1;
        p.inputs.push_back(p.max_var * 2);
        p.input_names.push_back(default_input_name(p.inputs.size() - 1));
    }
    while (p.outputs.size() < target_outputs) {
        p.outputs.push_back(0);
        p.output_names.push_back(default_output_name(p.outputs.size() - 1));
    }
    return p;
}

// Random well-formed circuit; used by round-trip property tests, the
// rejection-sampling generator, and the verifier stress suites.
inline Circuit random_circuit(Rng& rng, int max_inputs, int max_latches, int max_gates,
                              int max_outputs) {
    Circuit c;
    int ni = static_cast<int>(rng.range(1, max_inputs));
    int nl = static_cast<int>(rng.range(0, max_latches));
    int na = static_cast<int>(rng.range(0, max_gates));
    int no = static_cast<int>(rng.range(1, max_outputs));

    unsigned var = 0;
    for (int k = 0; k < ni; ++k) c.inputs.push_back(2 * ++var);
    std::vector<unsigned> latch_vars;
    for (int k = 0; k < nl; ++k) {
        latch_vars.push_back(++var);
        c.latches.push_back({2 * latch_vars.back(), 0});
    }
    std::vector<unsigned> defined = {0};  // variable indices usable as operands
    for (unsigned lit : c.inputs) defined.push_back(lit >> 1);
    for (unsigned v : latch_vars) defined.push_back(v);

    auto random_literal = [&]() -> unsigned {
        unsigned v = defined[rng.below(defined.size())];
        return 2 * v + static_cast<unsigned>(rng.below(2));
    };

    for (int k = 0; k < na; ++k) {
        unsigned lhs_var = ++var;
        unsigned r0 = random_literal();
        unsigned r1 = random_literal();
        c.and_gates.push_back({2 * lhs_var, r0, r1});
        defined.push_back(lhs_var);
    }
    for (auto& l : c.latches) l.next = random_literal();
    for (int k = 0; k < no; ++k) c.outputs.push_back(random_literal());
    c.max_var = var;
    detail::finalize_circuit(c, false);
    return c;
}

}  // namespace cnml
