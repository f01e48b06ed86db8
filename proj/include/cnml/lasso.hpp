#pragma once

// Ultimately periodic words (prefix + loop) over AP valuations, and LTL
// evaluation on them. Evaluation fills a truth table per (subformula,
// position) bottom-up; positions past the prefix are reduced modulo the
// loop length, so fixpoints for U/R are solved on the loop itself.

#include <map>
#include <string>
#include <vector>

#include "cnml/ltl.hpp"
#include "cnml/util.hpp"

namespace cnml {

struct Lasso {
    std::vector<std::string> aps;             // declared alphabet, fixed order
    std::vector<std::vector<bool>> prefix;    // each entry has aps.size() bits
    std::vector<std::vector<bool>> loop;      // nonempty

    std::size_t period_start() const { return prefix.size(); }
    std::size_t table_size() const { return prefix.size() + loop.size(); }

    const std::vector<bool>& at(std::size_t pos) const {
        if (pos < prefix.size()) return prefix[pos];
        return loop[(pos - prefix.size()) % loop.size()];
    }

    // Successor in the finite unrolling [0, prefix+loop): the last loop
    // position wraps to the first.
    std::size_t succ(std::size_t pos) const {
        return pos + 1 < table_size() ? pos + 1 : period_start();
    }
};

namespace detail {

// Distinct subformulas in children-first order.
inline void collect_subformulas(const LtlPtr& f, std::vector<LtlPtr>& order,
                                std::map<LtlPtr, int, LtlLess>& index) {
    if (index.count(f)) return;
    if (f->lhs) collect_subformulas(f->lhs, order, index);
    if (f->rhs) collect_subformulas(f->rhs, order, index);
    index.emplace(f, static_cast<int>(order.size()));
    order.push_back(f);
}

}  // namespace detail

inline std::size_t ltl_closure_size(const LtlPtr& f) {
    std::vector<LtlPtr> order;
    std::map<LtlPtr, int, LtlLess> index;
    detail::collect_subformulas(f, order, index);
    return order.size();
}

inline bool eval_on_lasso(const LtlPtr& f, const Lasso& w) {
    if (w.loop.empty()) throw std::invalid_argument("lasso loop must be nonempty");

    std::vector<LtlPtr> order;
    std::map<LtlPtr, int, LtlLess> index;
    detail::collect_subformulas(f, order, index);

    std::map<std::string, int> ap_pos;
    for (std::size_t i = 0; i < w.aps.size(); ++i) ap_pos[w.aps[i]] = static_cast<int>(i);

    const std::size_t n = w.table_size();
    const std::size_t p0 = w.period_start();
    std::vector<std::vector<char>> truth(order.size(), std::vector<char>(n, 0));

    for (std::size_t fi = 0; fi < order.size(); ++fi) {
        const Ltl& g = *order[fi];
        auto sub = [&](const LtlPtr& s) -> const std::vector<char>& {
            return truth[static_cast<std::size_t>(index.at(s))];
        };
        auto& row = truth[fi];
        switch (g.op) {
            case LtlOp::True:
                row.assign(n, 1);
                break;
            case LtlOp::False:
                row.assign(n, 0);
                break;
            case LtlOp::Atom: {
                auto it = ap_pos.find(g.name);
                if (it == ap_pos.end())
                    throw std::invalid_argument("proposition '" + g.name +
                                                "' is not valued by the lasso");
                for (std::size_t i = 0; i < n; ++i) row[i] = w.at(i)[it->second];
                break;
            }
            case LtlOp::Not: {
                const auto& a = sub(g.lhs);
                for (std::size_t i = 0; i < n; ++i) row[i] = !a[i];
                break;
            }
            case LtlOp::And: {
                const auto& a = sub(g.lhs);
                const auto& b = sub(g.rhs);
                for (std::size_t i = 0; i < n; ++i) row[i] = a[i] && b[i];
                break;
            }
            case LtlOp::Or: {
                const auto& a = sub(g.lhs);
                const auto& b = sub(g.rhs);
                for (std::size_t i = 0; i < n; ++i) row[i] = a[i] || b[i];
                break;
            }
            case LtlOp::Implies: {
                const auto& a = sub(g.lhs);
                const auto& b = sub(g.rhs);
                for (std::size_t i = 0; i < n; ++i) row[i] = !a[i] || b[i];
                break;
            }
            case LtlOp::Next: {
                const auto& a = sub(g.lhs);
                for (std::size_t i = 0; i < n; ++i) row[i] = a[w.succ(i)];
                break;
            }
            case LtlOp::Globally: {
                // From any loop position every loop position recurs, so the
                // value is constant on the loop: AND over the loop.
                const auto& a = sub(g.lhs);
                char all = 1;
                for (std::size_t i = p0; i < n; ++i) all = all && a[i];
                for (std::size_t i = p0; i < n; ++i) row[i] = all;
                for (std::size_t i = p0; i-- > 0;) row[i] = a[i] && row[i + 1];
                break;
            }
            case LtlOp::Eventually: {
                const auto& a = sub(g.lhs);
                char any = 0;
                for (std::size_t i = p0; i < n; ++i) any = any || a[i];
                for (std::size_t i = p0; i < n; ++i) row[i] = any;
                for (std::size_t i = p0; i-- > 0;) row[i] = a[i] || row[i + 1];
                break;
            }
            case LtlOp::Until: {
                // Least fixpoint of  u(i) = b(i) | (a(i) & u(succ(i))).
                // A witness wraps the loop at most once, so two backward
                // sweeps over the loop converge.
                const auto& a = sub(g.lhs);
                const auto& b = sub(g.rhs);
                for (std::size_t i = p0; i < n; ++i) row[i] = b[i];
                for (int sweep = 0; sweep < 2; ++sweep)
                    for (std::size_t i = n; i-- > p0;)
                        row[i] = b[i] || (a[i] && row[w.succ(i)]);
                for (std::size_t i = p0; i-- > 0;) row[i] = b[i] || (a[i] && row[i + 1]);
                break;
            }
            case LtlOp::Release: {
                // Greatest fixpoint of  r(i) = b(i) & (a(i) | r(succ(i))).
                const auto& a = sub(g.lhs);
                const auto& b = sub(g.rhs);
                for (std::size_t i = p0; i < n; ++i) row[i] = b[i];
                for (int sweep = 0; sweep < 2; ++sweep)
                    for (std::size_t i = n; i-- > p0;)
                        row[i] = b[i] && (a[i] || row[w.succ(i)]);
                for (std::size_t i = p0; i-- > 0;) row[i] = b[i] && (a[i] || row[i + 1]);
                break;
            }
        }
    }
    return truth[index.at(f)][0] != 0;
}

// Random lasso over the given alphabet; used by property tests and the
// automaton membership sampler.
inline Lasso random_lasso(Rng& rng, const std::vector<std::string>& aps, std::size_t max_prefix,
                          std::size_t max_loop) {
    Lasso w;
    w.aps = aps;
    std::size_t pre = rng.below(max_prefix + 1);
    std::size_t loop = 1 + rng.below(max_loop);
    auto random_valuation = [&] {
        std::vector<bool> v(aps.size());
        for (std::size_t i = 0; i < aps.size(); ++i) v[i] = rng.coin();
        return v;
    };
    for (std::size_t i = 0; i < pre; ++i) w.prefix.push_back(random_valuation());
    for (std::size_t i = 0; i < loop; ++i) w.loop.push_back(random_valuation());
    return w;
}

}  // namespace cnml
