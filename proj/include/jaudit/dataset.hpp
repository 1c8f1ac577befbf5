#pragma once

// Loading, validation and serialization of evaluation records. JSONL is one
// record per line; CSV needs a header row with the same field names and
// JSON-encodes list/map-valued cells. Judge scores above 1 mark a 0-100
// scale file and are divided by 100 at ingestion, uniformly per file;
// mixing both scales in one file is an error rather than a guess.

#include <cmath>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "jaudit/csv.hpp"
#include "jaudit/errors.hpp"
#include "jaudit/types.hpp"

namespace jaudit {

enum class Format { jsonl, csv };

inline Format parse_format(const std::string& s) {
    if (s == "jsonl") return Format::jsonl;
    if (s == "csv") return Format::csv;
    throw ConfigError("unknown format '" + s + "' (expected jsonl or csv)");
}

namespace detail {

inline std::string record_ref(const CandidateRecord& r, long line) {
    std::string ref = "prompt '" + r.prompt_id + "' candidate '" + r.candidate_id + "'";
    if (line > 0) ref += " (line " + std::to_string(line) + ")";
    return ref;
}

inline void check_unit_interval(double v, const std::string& what, const std::string& ref) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError(what + " " + nlohmann::json(v).dump() + " outside [0,1] at " + ref);
}

inline void validate_record(const CandidateRecord& r, bool unbounded, long line) {
    const std::string ref = record_ref(r, line);
    if (r.prompt_id.empty()) throw ValidationError("empty prompt_id at " + ref);
    if (r.candidate_id.empty()) throw ValidationError("empty candidate_id at " + ref);
    if (!std::isfinite(r.judge_score))
        throw ValidationError("non-finite judge_score at " + ref);
    if (!unbounded) check_unit_interval(r.judge_score, "judge_score", ref);
    if (r.labeled && !r.oracle_label)
        throw ValidationError("labeled record without oracle_label at " + ref);
    if (!r.labeled && r.oracle_label)
        throw ValidationError("oracle_label present on unlabeled record at " + ref);
    if (r.oracle_label) {
        if (!std::isfinite(*r.oracle_label))
            throw ValidationError("non-finite oracle_label at " + ref);
        if (!unbounded) check_unit_interval(*r.oracle_label, "oracle_label", ref);
    }
    if (r.query_prob && !(*r.query_prob > 0.0 && *r.query_prob <= 1.0))
        throw ValidationError("query_prob outside (0,1] at " + ref);
    if (!unbounded)
        for (double s : r.resample_scores) check_unit_interval(s, "resample_scores entry", ref);
    if (r.ci_low && !unbounded) check_unit_interval(*r.ci_low, "ci_low", ref);
    if (r.ci_high && !unbounded) check_unit_interval(*r.ci_high, "ci_high", ref);
    if (r.ci_low && r.ci_high && *r.ci_low > *r.ci_high)
        throw ValidationError("ci_low > ci_high at " + ref);
}

} // namespace detail

// Groups records by prompt_id (first-appearance order, candidates in input
// order) and enforces every dataset invariant. `lines` optionally carries
// 1-based source lines for error messages, aligned with `records`.
inline PointwiseDataset build_pointwise(std::vector<CandidateRecord> records, bool unbounded = false,
                                        const std::vector<long>* lines = nullptr) {
    PointwiseDataset ds;
    ds.unbounded = unbounded;
    std::unordered_map<std::string, std::size_t> group_index;
    bool any_unlabeled = false;
    bool all_have_query_prob = true;
    for (std::size_t i = 0; i < records.size(); ++i) {
        const long line = lines ? (*lines)[i] : 0;
        detail::validate_record(records[i], unbounded, line);
        any_unlabeled = any_unlabeled || !records[i].labeled;
        all_have_query_prob = all_have_query_prob && records[i].query_prob.has_value();
        auto [it, inserted] = group_index.try_emplace(records[i].prompt_id, ds.groups.size());
        if (inserted) ds.groups.push_back(PromptGroup{records[i].prompt_id, {}});
        auto& group = ds.groups[it->second];
        for (const auto& c : group.candidates)
            if (c.candidate_id == records[i].candidate_id)
                throw ValidationError("duplicate candidate_id at " + detail::record_ref(records[i], line));
        group.candidates.push_back(std::move(records[i]));
    }
    if (any_unlabeled && !all_have_query_prob)
        throw ValidationError(
            "dataset has unlabeled records but not every record carries query_prob; "
            "partial-label mode requires an explicit query-probability plan");
    std::optional<int> uniform;
    bool first = true;
    for (const auto& g : ds.groups) {
        if (g.candidates.size() < 2)
            throw ValidationError("prompt '" + g.prompt_id + "' has fewer than 2 candidates");
        const int n = static_cast<int>(g.candidates.size());
        if (first) {
            uniform = n;
            first = false;
        } else if (uniform && *uniform != n) {
            uniform.reset();
        }
    }
    ds.n_per_prompt = uniform;
    return ds;
}

// ── JSONL / CSV parsing ───────────────────────────────────────────

namespace detail {

inline std::string json_to_id(const nlohmann::json& v, const char* field, long line) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ParseError(std::string(field) + " must be a string (line " + std::to_string(line) + ")");
}

inline double json_to_number(const nlohmann::json& v, const char* field, long line) {
    if (!v.is_number())
        throw ParseError(std::string(field) + " must be a number (line " + std::to_string(line) + ")");
    return v.get<double>();
}

inline CandidateRecord pointwise_from_json(const nlohmann::json& j, long line) {
    if (!j.is_object()) throw ParseError("record is not a JSON object (line " + std::to_string(line) + ")");
    CandidateRecord r;
    if (!j.contains("prompt_id") || !j.contains("candidate_id") || !j.contains("judge_score"))
        throw ParseError("missing required field prompt_id/candidate_id/judge_score (line " +
                         std::to_string(line) + ")");
    r.prompt_id = json_to_id(j.at("prompt_id"), "prompt_id", line);
    r.candidate_id = json_to_id(j.at("candidate_id"), "candidate_id", line);
    r.judge_score = json_to_number(j.at("judge_score"), "judge_score", line);
    if (j.contains("oracle_label") && !j.at("oracle_label").is_null())
        r.oracle_label = json_to_number(j.at("oracle_label"), "oracle_label", line);
    if (j.contains("labeled") && !j.at("labeled").is_null()) {
        if (!j.at("labeled").is_boolean())
            throw ParseError("labeled must be a boolean (line " + std::to_string(line) + ")");
        r.labeled = j.at("labeled").get<bool>();
        if (r.labeled != r.oracle_label.has_value())
            throw ValidationError("labeled flag inconsistent with oracle_label presence (line " +
                                  std::to_string(line) + ")");
    } else {
        r.labeled = r.oracle_label.has_value();
    }
    if (j.contains("query_prob") && !j.at("query_prob").is_null())
        r.query_prob = json_to_number(j.at("query_prob"), "query_prob", line);
    if (j.contains("features") && !j.at("features").is_null()) {
        if (!j.at("features").is_object())
            throw ParseError("features must be an object (line " + std::to_string(line) + ")");
        for (const auto& [k, v] : j.at("features").items())
            r.features[k] = json_to_number(v, "features entry", line);
    }
    if (j.contains("resample_scores") && !j.at("resample_scores").is_null()) {
        if (!j.at("resample_scores").is_array())
            throw ParseError("resample_scores must be an array (line " + std::to_string(line) + ")");
        for (const auto& v : j.at("resample_scores"))
            r.resample_scores.push_back(json_to_number(v, "resample_scores entry", line));
    }
    if (j.contains("ci_low") && !j.at("ci_low").is_null())
        r.ci_low = json_to_number(j.at("ci_low"), "ci_low", line);
    if (j.contains("ci_high") && !j.at("ci_high").is_null())
        r.ci_high = json_to_number(j.at("ci_high"), "ci_high", line);
    return r;
}

inline double parse_cell_number(const std::string& cell, const char* field, long line) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
        if (pos != cell.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string(field) + " '" + cell + "' is not a number (line " +
                         std::to_string(line) + ")");
    }
}

inline bool parse_cell_bool(std::string cell, const char* field, long line) {
    for (auto& c : cell) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (cell == "true" || cell == "1") return true;
    if (cell == "false" || cell == "0") return false;
    throw ParseError(std::string(field) + " '" + cell + "' is not a boolean (line " +
                     std::to_string(line) + ")");
}

struct CsvHeader {
    std::unordered_map<std::string, std::size_t> index;
    const std::string* cell(const csv::Row& row, const std::string& name) const {
        auto it = index.find(name);
        if (it == index.end() || it->second >= row.cells.size()) return nullptr;
        const std::string& c = row.cells[it->second];
        return c.empty() ? nullptr : &c;
    }
};

inline CsvHeader csv_header(const csv::Row& row, const std::vector<std::string>& required) {
    CsvHeader h;
    for (std::size_t i = 0; i < row.cells.size(); ++i) h.index[row.cells[i]] = i;
    for (const auto& name : required)
        if (!h.index.count(name))
            throw ParseError("csv header missing required column '" + name + "'");
    return h;
}

inline nlohmann::json parse_cell_json(const std::string& cell, const char* field, long line) {
    try {
        return nlohmann::json::parse(cell);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string(field) + " cell is not valid JSON (line " +
                         std::to_string(line) + "): " + e.what());
    }
}

} // namespace detail

inline PointwiseDataset load_pointwise(std::istream& in, Format format, bool unbounded = false) {
    std::vector<CandidateRecord> records;
    std::vector<long> lines;
    if (format == Format::jsonl) {
        std::string line_text;
        long line = 0;
        while (std::getline(in, line_text)) {
            ++line;
            if (line_text.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line_text);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("malformed JSON (line " + std::to_string(line) + "): " + e.what());
            }
            records.push_back(detail::pointwise_from_json(j, line));
            lines.push_back(line);
        }
    } else {
        auto rows = csv::read(in);
        if (rows.empty()) throw ParseError("csv file has no header row");
        const auto header = detail::csv_header(rows[0], {"prompt_id", "candidate_id", "judge_score"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            CandidateRecord r;
            const auto* p = header.cell(row, "prompt_id");
            const auto* c = header.cell(row, "candidate_id");
            const auto* s = header.cell(row, "judge_score");
            if (!p || !c || !s)
                throw ParseError("missing prompt_id/candidate_id/judge_score value (line " +
                                 std::to_string(row.line) + ")");
            r.prompt_id = *p;
            r.candidate_id = *c;
            r.judge_score = detail::parse_cell_number(*s, "judge_score", row.line);
            if (const auto* v = header.cell(row, "oracle_label"))
                r.oracle_label = detail::parse_cell_number(*v, "oracle_label", row.line);
            if (const auto* v = header.cell(row, "labeled")) {
                r.labeled = detail::parse_cell_bool(*v, "labeled", row.line);
                if (r.labeled != r.oracle_label.has_value())
                    throw ValidationError("labeled flag inconsistent with oracle_label presence (line " +
                                          std::to_string(row.line) + ")");
            } else {
                r.labeled = r.oracle_label.has_value();
            }
            if (const auto* v = header.cell(row, "query_prob"))
                r.query_prob = detail::parse_cell_number(*v, "query_prob", row.line);
            if (const auto* v = header.cell(row, "features")) {
                const auto j = detail::parse_cell_json(*v, "features", row.line);
                if (!j.is_object()) throw ParseError("features cell must be a JSON object (line " +
                                                     std::to_string(row.line) + ")");
                for (const auto& [k, val] : j.items())
                    r.features[k] = detail::json_to_number(val, "features entry", row.line);
            }
            if (const auto* v = header.cell(row, "resample_scores")) {
                const auto j = detail::parse_cell_json(*v, "resample_scores", row.line);
                if (!j.is_array()) throw ParseError("resample_scores cell must be a JSON array (line " +
                                                    std::to_string(row.line) + ")");
                for (const auto& val : j)
                    r.resample_scores.push_back(detail::json_to_number(val, "resample_scores entry", row.line));
            }
            if (const auto* v = header.cell(row, "ci_low"))
                r.ci_low = detail::parse_cell_number(*v, "ci_low", row.line);
            if (const auto* v = header.cell(row, "ci_high"))
                r.ci_high = detail::parse_cell_number(*v, "ci_high", row.line);
            records.push_back(std::move(r));
            lines.push_back(row.line);
        }
    }
    if (records.empty()) throw ValidationError("input contains no records");

    if (!unbounded) {
        // Per-file scale detection on judge scores only; the same factor is
        // applied to resample scores and CI bounds, which live on the judge
        // score scale.
        bool any_gt1 = false, any_le1 = false;
        for (const auto& r : records) (r.judge_score > 1.0 ? any_gt1 : any_le1) = true;
        if (any_gt1 && any_le1)
            throw MixedScaleError("file mixes judge scores <= 1 and > 1; cannot infer scale");
        if (any_gt1) {
            for (auto& r : records) {
                r.judge_score /= 100.0;
                for (auto& s : r.resample_scores) s /= 100.0;
                if (r.ci_low) *r.ci_low /= 100.0;
                if (r.ci_high) *r.ci_high /= 100.0;
            }
        }
    }
    return build_pointwise(std::move(records), unbounded, &lines);
}

inline PointwiseDataset load_pointwise(const std::string& path, Format format, bool unbounded = false) {
    std::ifstream in(path);
    if (!in) throw ParseError("no such input: " + path);
    return load_pointwise(in, format, unbounded);
}

inline PairwiseDataset load_pairwise(std::istream& in, Format format) {
    PairwiseDataset ds;
    auto validate = [](const PairwiseRecord& r, long line) {
        const std::string at = " (line " + std::to_string(line) + ")";
        if (r.candidate_a == r.candidate_b)
            throw ValidationError("candidate_a equals candidate_b" + at);
        if (r.confidence && (*r.confidence < 1 || *r.confidence > 5))
            throw ValidationError("confidence outside 1-5" + at);
        if (r.stated_prob_a && !(*r.stated_prob_a >= 0.0 && *r.stated_prob_a <= 1.0))
            throw ValidationError("stated_prob_a outside [0,1]" + at);
    };
    if (format == Format::jsonl) {
        std::string line_text;
        long line = 0;
        while (std::getline(in, line_text)) {
            ++line;
            if (line_text.find_first_not_of(" \t\r") == std::string::npos) continue;
            nlohmann::json j;
            try {
                j = nlohmann::json::parse(line_text);
            } catch (const nlohmann::json::exception& e) {
                throw ParseError("malformed JSON (line " + std::to_string(line) + "): " + e.what());
            }
            for (const char* f : {"prompt_id", "candidate_a", "candidate_b", "judge_choice", "oracle_choice"})
                if (!j.contains(f))
                    throw ParseError(std::string("missing required field ") + f + " (line " +
                                     std::to_string(line) + ")");
            PairwiseRecord r;
            r.prompt_id = detail::json_to_id(j.at("prompt_id"), "prompt_id", line);
            r.candidate_a = detail::json_to_id(j.at("candidate_a"), "candidate_a", line);
            r.candidate_b = detail::json_to_id(j.at("candidate_b"), "candidate_b", line);
            r.judge_choice = parse_choice(detail::json_to_id(j.at("judge_choice"), "judge_choice", line));
            r.oracle_choice = parse_choice(detail::json_to_id(j.at("oracle_choice"), "oracle_choice", line));
            if (j.contains("confidence") && !j.at("confidence").is_null())
                r.confidence = static_cast<int>(detail::json_to_number(j.at("confidence"), "confidence", line));
            if (j.contains("stated_prob_a") && !j.at("stated_prob_a").is_null())
                r.stated_prob_a = detail::json_to_number(j.at("stated_prob_a"), "stated_prob_a", line);
            validate(r, line);
            ds.records.push_back(std::move(r));
        }
    } else {
        auto rows = csv::read(in);
        if (rows.empty()) throw ParseError("csv file has no header row");
        const auto header = detail::csv_header(
            rows[0], {"prompt_id", "candidate_a", "candidate_b", "judge_choice", "oracle_choice"});
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& row = rows[i];
            PairwiseRecord r;
            const auto* p = header.cell(row, "prompt_id");
            const auto* a = header.cell(row, "candidate_a");
            const auto* b = header.cell(row, "candidate_b");
            const auto* jc = header.cell(row, "judge_choice");
            const auto* oc = header.cell(row, "oracle_choice");
            if (!p || !a || !b || !jc || !oc)
                throw ParseError("missing required pairwise value (line " + std::to_string(row.line) + ")");
            r.prompt_id = *p;
            r.candidate_a = *a;
            r.candidate_b = *b;
            r.judge_choice = parse_choice(*jc);
            r.oracle_choice = parse_choice(*oc);
            if (const auto* v = header.cell(row, "confidence"))
                r.confidence = static_cast<int>(detail::parse_cell_number(*v, "confidence", row.line));
            if (const auto* v = header.cell(row, "stated_prob_a"))
                r.stated_prob_a = detail::parse_cell_number(*v, "stated_prob_a", row.line);
            validate(r, row.line);
            ds.records.push_back(std::move(r));
        }
    }
    if (ds.records.empty()) throw ValidationError("input contains no records");
    return ds;
}

inline PairwiseDataset load_pairwise(const std::string& path, Format format) {
    std::ifstream in(path);
    if (!in) throw ParseError("no such input: " + path);
    return load_pairwise(in, format);
}

// ── Serialization ─────────────────────────────────────────────────

namespace detail {

inline nlohmann::ordered_json pointwise_to_json(const CandidateRecord& r) {
    nlohmann::ordered_json j;
    j["prompt_id"] = r.prompt_id;
    j["candidate_id"] = r.candidate_id;
    j["judge_score"] = r.judge_score;
    if (r.oracle_label) j["oracle_label"] = *r.oracle_label;
    j["labeled"] = r.labeled;
    if (r.query_prob) j["query_prob"] = *r.query_prob;
    if (!r.features.empty()) j["features"] = r.features;
    if (!r.resample_scores.empty()) j["resample_scores"] = r.resample_scores;
    if (r.ci_low) j["ci_low"] = *r.ci_low;
    if (r.ci_high) j["ci_high"] = *r.ci_high;
    return j;
}

inline std::string number_cell(double v) { return nlohmann::json(v).dump(); }

} // namespace detail

inline void save_pointwise(const PointwiseDataset& ds, std::ostream& os, Format format) {
    if (format == Format::jsonl) {
        for (const auto& g : ds.groups)
            for (const auto& c : g.candidates) os << detail::pointwise_to_json(c).dump() << '\n';
        return;
    }
    static const std::vector<std::string> header = {
        "prompt_id", "candidate_id", "judge_score", "oracle_label", "labeled",
        "query_prob", "features",    "resample_scores", "ci_low",   "ci_high"};
    csv::write_row(os, header);
    for (const auto& g : ds.groups) {
        for (const auto& c : g.candidates) {
            std::vector<std::string> cells(header.size());
            cells[0] = c.prompt_id;
            cells[1] = c.candidate_id;
            cells[2] = detail::number_cell(c.judge_score);
            if (c.oracle_label) cells[3] = detail::number_cell(*c.oracle_label);
            cells[4] = c.labeled ? "true" : "false";
            if (c.query_prob) cells[5] = detail::number_cell(*c.query_prob);
            if (!c.features.empty()) cells[6] = nlohmann::json(c.features).dump();
            if (!c.resample_scores.empty()) cells[7] = nlohmann::json(c.resample_scores).dump();
            if (c.ci_low) cells[8] = detail::number_cell(*c.ci_low);
            if (c.ci_high) cells[9] = detail::number_cell(*c.ci_high);
            csv::write_row(os, cells);
        }
    }
}

inline void save_pointwise(const PointwiseDataset& ds, const std::string& path, Format format) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open output file: " + path);
    save_pointwise(ds, os, format);
}

inline void save_pairwise(const PairwiseDataset& ds, std::ostream& os, Format format) {
    if (format == Format::jsonl) {
        for (const auto& r : ds.records) {
            nlohmann::ordered_json j;
            j["prompt_id"] = r.prompt_id;
            j["candidate_a"] = r.candidate_a;
            j["candidate_b"] = r.candidate_b;
            j["judge_choice"] = to_string(r.judge_choice);
            j["oracle_choice"] = to_string(r.oracle_choice);
            if (r.confidence) j["confidence"] = *r.confidence;
            if (r.stated_prob_a) j["stated_prob_a"] = *r.stated_prob_a;
            os << j.dump() << '\n';
        }
        return;
    }
    static const std::vector<std::string> header = {
        "prompt_id", "candidate_a", "candidate_b", "judge_choice",
        "oracle_choice", "confidence", "stated_prob_a"};
    csv::write_row(os, header);
    for (const auto& r : ds.records) {
        std::vector<std::string> cells(header.size());
        cells[0] = r.prompt_id;
        cells[1] = r.candidate_a;
        cells[2] = r.candidate_b;
        cells[3] = to_string(r.judge_choice);
        cells[4] = to_string(r.oracle_choice);
        if (r.confidence) cells[5] = std::to_string(*r.confidence);
        if (r.stated_prob_a) cells[6] = detail::number_cell(*r.stated_prob_a);
        csv::write_row(os, cells);
    }
}

inline void save_pairwise(const PairwiseDataset& ds, const std::string& path, Format format) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open output file: " + path);
    save_pairwise(ds, os, format);
}

// Structural equality, used by the round-trip property tests.
inline bool operator==(const CandidateRecord& a, const CandidateRecord& b) {
    return a.prompt_id == b.prompt_id && a.candidate_id == b.candidate_id &&
           a.judge_score == b.judge_score && a.oracle_label == b.oracle_label &&
           a.labeled == b.labeled && a.query_prob == b.query_prob && a.features == b.features &&
           a.resample_scores == b.resample_scores && a.ci_low == b.ci_low && a.ci_high == b.ci_high;
}

inline bool operator==(const PromptGroup& a, const PromptGroup& b) {
    return a.prompt_id == b.prompt_id && a.candidates == b.candidates;
}

inline bool operator==(const PointwiseDataset& a, const PointwiseDataset& b) {
    return a.groups == b.groups && a.n_per_prompt == b.n_per_prompt && a.unbounded == b.unbounded;
}

inline bool operator==(const PairwiseRecord& a, const PairwiseRecord& b) {
    return a.prompt_id == b.prompt_id && a.candidate_a == b.candidate_a &&
           a.candidate_b == b.candidate_b && a.judge_choice == b.judge_choice &&
           a.oracle_choice == b.oracle_choice && a.confidence == b.confidence &&
           a.stated_prob_a == b.stated_prob_a;
}

inline bool operator==(const PairwiseDataset& a, const PairwiseDataset& b) {
    return a.records == b.records;
}

} // namespace jaudit
