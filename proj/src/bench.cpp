#include "secretscan/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "secretscan/csv.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

namespace {

// Unbiased integer in [0, n) from a 64-bit engine; independent of the
// standard library's distribution implementation.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

bool parse_label(std::string_view s, std::size_t row) {
    if (s == "1" || s == "true" || s == "TRUE" || s == "True" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "FALSE" || s == "False" || s == "no") return false;
    throw ParseError("label file row " + std::to_string(row) + ": invalid label '" + std::string(s) + "'");
}

std::size_t parse_offset(const std::string& s, std::size_t row) {
    try {
        std::size_t used = 0;
        const auto v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
        throw ParseError("label file row " + std::to_string(row) + ": invalid offset '" + s + "'");
    }
}

}  // namespace

std::string CandidateKey::to_string() const {
    return report_id + ":" + std::to_string(span.start) + "-" + std::to_string(span.end) + ":" + pattern_name;
}

void LabelFile::validate() const {
    std::set<CandidateKey> seen;
    for (const auto& e : entries) {
        if (!seen.insert(e.key).second) {
            throw ValidationError("label file '" + rater_id + "' repeats key " + e.key.to_string());
        }
    }
}

std::map<CandidateKey, bool> LabelFile::as_map() const {
    std::map<CandidateKey, bool> out;
    for (const auto& e : entries) out.emplace(e.key, e.label);
    return out;
}

LabelFile parse_label_file(std::string_view text, std::string rater_id) {
    const auto records = csv::parse(text);
    LabelFile f;
    f.rater_id = std::move(rater_id);
    if (records.empty()) return f;
    const csv::Header h(records.front());
    const auto c_report = h.require("report_id");
    const auto c_start = h.require("start");
    const auto c_end = h.require("end");
    const auto c_pattern = h.require("pattern_name");
    const auto c_label = h.require("label");
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.fields.size() != records.front().fields.size()) {
            throw ParseError("label file row " + std::to_string(r.row) + ": wrong number of fields");
        }
        if (r.fields[c_label].empty()) throw ParseError("label file row " + std::to_string(r.row) + ": unlabeled entry");
        LabelEntry e;
        e.key.report_id = r.fields[c_report];
        e.key.span = {parse_offset(r.fields[c_start], r.row), parse_offset(r.fields[c_end], r.row)};
        e.key.pattern_name = r.fields[c_pattern];
        if (e.key.span.start >= e.key.span.end) {
            throw ParseError("label file row " + std::to_string(r.row) + ": empty span");
        }
        e.label = parse_label(r.fields[c_label], r.row);
        f.entries.push_back(std::move(e));
    }
    f.validate();
    return f;
}

LabelFile load_label_file(const std::filesystem::path& path) {
    return parse_label_file(read_file(path), path.stem().string());
}

std::string format_label_file(const LabelFile& f) {
    std::string out = csv::format_row({"report_id", "start", "end", "pattern_name", "label"});
    for (const auto& e : f.entries) {
        out += csv::format_row({e.key.report_id, std::to_string(e.key.span.start), std::to_string(e.key.span.end),
                                e.key.pattern_name, e.label ? "1" : "0"});
    }
    return out;
}

void write_label_file(const LabelFile& f, const std::filesystem::path& path) { write_file(path, format_label_file(f)); }

std::string format_label_template(const std::vector<CandidateSecret>& candidates) {
    std::string out = csv::format_row({"report_id", "start", "end", "pattern_name", "label", "candidate_text"});
    for (const auto& c : candidates) {
        out += csv::format_row({c.report_id, std::to_string(c.span.start), std::to_string(c.span.end), c.pattern_name,
                                "", c.text});
    }
    return out;
}

std::vector<CandidateSecret> sample_candidates(const std::vector<CandidateSecret>& candidates, double fraction,
                                               std::uint64_t seed, const std::set<CandidateKey>& exclude) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw ValidationError("sampling fraction must lie in (0, 1], got " + std::to_string(fraction));
    }
    std::vector<const CandidateSecret*> pool;
    for (const auto& c : candidates) {
        if (!exclude.contains(CandidateKey::of(c))) pool.push_back(&c);
    }
    if (pool.empty()) throw ValidationError("no candidates left to sample");

    const auto n = pool.size();
    const auto k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
        const auto j = i + bounded(rng, n - i);
        std::swap(pool[i], pool[j]);
    }
    std::vector<CandidateSecret> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(*pool[i]);
    return out;
}

namespace {

std::string join_keys(const std::vector<CandidateKey>& keys) {
    std::string out;
    for (const auto& k : keys) {
        if (!out.empty()) out += ", ";
        out += k.to_string();
    }
    return out;
}

}  // namespace

UnresolvedDisagreements::UnresolvedDisagreements(std::vector<CandidateKey> keys)
    : ValidationError(std::to_string(keys.size()) + " unresolved disagreement(s): " + join_keys(keys)),
      keys_(std::move(keys)) {}

BenchmarkResult build_benchmark(const LabelFile& primary, const std::optional<LabelFile>& secondary,
                                const std::vector<LabelEntry>& resolutions) {
    if (primary.entries.empty()) throw ValidationError("primary label file is empty");
    primary.validate();
    const auto primary_map = primary.as_map();

    std::map<CandidateKey, bool> resolved;
    for (const auto& r : resolutions) {
        if (!primary_map.contains(r.key)) throw ValidationError("resolution for unknown key " + r.key.to_string());
        resolved[r.key] = r.label;
    }

    BenchmarkResult out;
    if (secondary) {
        secondary->validate();
        AgreementMatrix m;
        for (const auto& e : secondary->entries) {
            const auto it = primary_map.find(e.key);
            if (it == primary_map.end()) continue;
            const bool r1 = it->second;
            const bool r2 = e.label;
            if (r1 && r2) ++m.both_pos;
            else if (r1) ++m.r1pos_r2neg;
            else if (r2) ++m.r1neg_r2pos;
            else ++m.both_neg;
            if (r1 != r2) out.disagreements.push_back(e.key);
        }
        if (m.total() == 0) throw ValidationError("label files share no candidates");
        std::sort(out.disagreements.begin(), out.disagreements.end());
        std::vector<CandidateKey> unresolved;
        for (const auto& k : out.disagreements) {
            if (!resolved.contains(k)) unresolved.push_back(k);
        }
        if (!unresolved.empty()) throw UnresolvedDisagreements(std::move(unresolved));
        out.agreement = m;
    }

    out.entries.reserve(primary.entries.size());
    for (const auto& e : primary.entries) {
        const auto it = resolved.find(e.key);
        out.entries.push_back({e.key, it == resolved.end() ? e.label : it->second});
    }
    return out;
}

std::vector<LabeledCandidate> attach_text(const std::vector<LabelEntry>& entries,
                                          const std::map<std::string, std::string>& cleaned_bodies) {
    std::vector<LabeledCandidate> out;
    out.reserve(entries.size());
    for (const auto& e : entries) {
        const auto it = cleaned_bodies.find(e.key.report_id);
        if (it == cleaned_bodies.end()) throw ValidationError("no report with id '" + e.key.report_id + "'");
        out.push_back({e.key.report_id, unicode::substr(it->second, e.key.span.start, e.key.span.end), e.key.span,
                       e.key.pattern_name, e.label});
    }
    return out;
}

}  // namespace secretscan
