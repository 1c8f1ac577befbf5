#pragma once

// Per-prompt selection primitives shared by the metric, inference and
// routing modules. Random tie-breaking is always evaluated as the exact
// expectation over the judge's argmax tie set, never sampled.

#include <span>
#include <string>
#include <vector>

#include "jaudit/errors.hpp"
#include "jaudit/stats.hpp"
#include "jaudit/types.hpp"

namespace jaudit {

inline void require_labeled(const PromptGroup& g) {
    for (const auto& c : g.candidates)
        if (!c.labeled || !c.oracle_label)
            throw UnlabeledError("prompt '" + g.prompt_id + "' candidate '" + c.candidate_id +
                                 "' lacks an oracle label");
}

inline void require_labeled(const PointwiseDataset& ds) {
    for (const auto& g : ds.groups) require_labeled(g);
}

inline std::vector<double> judge_scores(const PromptGroup& g) {
    std::vector<double> s;
    s.reserve(g.candidates.size());
    for (const auto& c : g.candidates) s.push_back(c.judge_score);
    return s;
}

inline std::vector<double> oracle_labels(const PromptGroup& g) {
    require_labeled(g);
    std::vector<double> o;
    o.reserve(g.candidates.size());
    for (const auto& c : g.candidates) o.push_back(*c.oracle_label);
    return o;
}

inline std::vector<std::size_t> judge_argmax_set(const PromptGroup& g) {
    return argmax_set(judge_scores(g));
}

// Expected oracle value of judge-greedy selection under uniform random
// tie-breaking: the mean oracle label over the judge argmax tie set,
// accumulated in candidate order.
inline double prompt_judge_value(const PromptGroup& g) {
    require_labeled(g);
    const auto scores = judge_scores(g);
    const auto ties = argmax_set(scores);
    double sum = 0.0;
    for (std::size_t i : ties) sum += *g.candidates[i].oracle_label;
    return sum / static_cast<double>(ties.size());
}

inline double prompt_oracle_best(const PromptGroup& g) {
    require_labeled(g);
    double best = *g.candidates[0].oracle_label;
    for (const auto& c : g.candidates) best = std::max(best, *c.oracle_label);
    return best;
}

inline double prompt_mean_oracle(const PromptGroup& g) {
    require_labeled(g);
    double s = 0.0;
    for (const auto& c : g.candidates) s += *c.oracle_label;
    return s / static_cast<double>(g.candidates.size());
}

inline double prompt_mean_judge(const PromptGroup& g) {
    double s = 0.0;
    for (const auto& c : g.candidates) s += c.judge_score;
    return s / static_cast<double>(g.candidates.size());
}

// Probability that a uniform draw from the judge tie set attains the oracle
// maximum: |argmax(S) intersect argmax(O)| / |argmax(S)|.
inline double prompt_pcs(const PromptGroup& g) {
    require_labeled(g);
    const auto s_ties = argmax_set(judge_scores(g));
    const auto o_ties = argmax_set(oracle_labels(g));
    std::size_t hits = 0;
    for (std::size_t i : s_ties)
        for (std::size_t j : o_ties)
            if (i == j) {
                ++hits;
                break;
            }
    return static_cast<double>(hits) / static_cast<double>(s_ties.size());
}

inline double prompt_margin(const PromptGroup& g) {
    return top1_margin(judge_scores(g));
}

} // namespace jaudit
