#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jaudit/errors.hpp"

namespace jaudit {

// ── Pointwise records ─────────────────────────────────────────────

// One (prompt, candidate) row. `judge_score` is always stored on the [0,1]
// scale; 0-100 inputs are rescaled at load time. `labeled` is the oracle
// query indicator R; `query_prob` is the query probability pi(W) required
// in partial-label mode.
struct CandidateRecord {
    std::string prompt_id;
    std::string candidate_id;
    double judge_score = 0.0;
    std::optional<double> oracle_label;
    bool labeled = false;
    std::optional<double> query_prob;
    std::map<std::string, double> features;
    std::vector<double> resample_scores;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

// All candidates for one prompt, in file order. The prompt is the
// clustering and decision unit everywhere downstream.
struct PromptGroup {
    std::string prompt_id;
    std::vector<CandidateRecord> candidates;
};

struct PointwiseDataset {
    std::vector<PromptGroup> groups;
    std::optional<int> n_per_prompt;
    // Simulation output is not confined to [0,1]; this flag relaxes the
    // range invariants while keeping all structural ones.
    bool unbounded = false;

    std::size_t record_count() const {
        std::size_t n = 0;
        for (const auto& g : groups) n += g.candidates.size();
        return n;
    }

    bool fully_labeled() const {
        for (const auto& g : groups)
            for (const auto& c : g.candidates)
                if (!c.labeled) return false;
        return true;
    }
};

// ── Pairwise records ──────────────────────────────────────────────

enum class Choice { A, B, Tie };

inline std::string to_string(Choice c) {
    switch (c) {
        case Choice::A: return "A";
        case Choice::B: return "B";
        default: return "TIE";
    }
}

inline Choice parse_choice(std::string s) {
    for (auto& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (s == "A") return Choice::A;
    if (s == "B") return Choice::B;
    if (s == "TIE") return Choice::Tie;
    throw ParseError("invalid choice value '" + s + "' (expected A, B, or TIE)");
}

// One judged A/B comparison with optional confidence signals.
struct PairwiseRecord {
    std::string prompt_id;
    std::string candidate_a;
    std::string candidate_b;
    Choice judge_choice = Choice::Tie;
    Choice oracle_choice = Choice::Tie;
    std::optional<int> confidence; // 1-5 scale, carried but never converted
    std::optional<double> stated_prob_a;
};

struct PairwiseDataset {
    std::vector<PairwiseRecord> records;
};

} // namespace jaudit
