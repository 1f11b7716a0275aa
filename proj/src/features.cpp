#include "coanet/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "coanet/csv.hpp"
#include "coanet/util.hpp"

namespace coanet {

int FeatureMatrix::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < column_names.size(); ++i)
        if (column_names[i] == name) return static_cast<int>(i);
    return -1;
}

const std::vector<std::string>& feature_schema() {
    static const std::vector<std::string> schema = [] {
        std::vector<std::string> s;
        for (const auto& name : metric_names()) s.push_back(name);
        s.push_back("firstAuthorIndex");
        s.push_back("contributionIndex");
        s.push_back("seniorityIndex");
        return s;
    }();
    return schema;
}

FeatureMatrix assemble_matrix(std::span<const SampleRecord> samples) {
    if (samples.empty()) throw EmptyInput("no samples");
    FeatureMatrix m;
    m.column_names = feature_schema();
    const std::size_t ncols = m.column_names.size();

    std::vector<std::vector<bool>> missing(samples.size(), std::vector<bool>(ncols, false));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SampleRecord& s = samples[i];
        std::vector<double> row(ncols, 0.0);
        for (int f = 0; f < kMetricCount; ++f) {
            const MetricValue& v = s.report.values[static_cast<std::size_t>(f)];
            if (v.is_missing())
                missing[i][static_cast<std::size_t>(f)] = true;
            else
                row[static_cast<std::size_t>(f)] = v.value();
        }
        row[static_cast<std::size_t>(kMetricCount) + 0] = s.indexes.first_author;
        row[static_cast<std::size_t>(kMetricCount) + 1] = s.indexes.contribution;
        row[static_cast<std::size_t>(kMetricCount) + 2] = s.indexes.seniority;
        m.rows.push_back(std::move(row));
        m.labels.push_back(std::to_string(s.grade));
        m.sample_ids.push_back(s.id);
    }

    // mean imputation over the defined entries of each column
    for (std::size_t c = 0; c < ncols; ++c) {
        double sum = 0;
        long defined = 0;
        for (std::size_t r = 0; r < m.rows.size(); ++r) {
            if (!missing[r][c]) {
                sum += m.rows[r][c];
                ++defined;
            }
        }
        double fill = defined > 0 ? sum / static_cast<double>(defined) : 0.0;
        for (std::size_t r = 0; r < m.rows.size(); ++r)
            if (missing[r][c]) m.rows[r][c] = fill;
    }
    return m;
}

FeatureMatrix minmax_normalize(const FeatureMatrix& m) {
    FeatureMatrix out = m;
    for (std::size_t c = 0; c < m.feature_count(); ++c) {
        double lo = 0, hi = 0;
        for (std::size_t r = 0; r < m.rows.size(); ++r) {
            double v = m.rows[r][c];
            if (r == 0 || v < lo) lo = v;
            if (r == 0 || v > hi) hi = v;
        }
        for (std::size_t r = 0; r < m.rows.size(); ++r)
            out.rows[r][c] = hi > lo ? (m.rows[r][c] - lo) / (hi - lo) : 0.0;
    }
    return out;
}

std::vector<std::string> regroup(const std::vector<std::string>& labels, ClassScheme scheme) {
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (const std::string& label : labels) {
        if (label.size() != 1 || label[0] < '3' || label[0] > '7')
            throw InvalidGrade("label '" + label + "' is not a grade in 3..7");
        if (scheme == ClassScheme::FiveClass) {
            out.push_back(label);
        } else {
            char g = label[0];
            out.push_back(g <= '4' ? "C" : g == '5' ? "B" : "A");
        }
    }
    return out;
}

FeatureMatrix regroup(const FeatureMatrix& m, ClassScheme scheme) {
    FeatureMatrix out = m;
    out.labels = regroup(m.labels, scheme);
    return out;
}

std::vector<FeatureMatrix> balance_subsets(const FeatureMatrix& m, int subset_size) {
    if (subset_size < 1) throw std::invalid_argument("subset_size must be >= 1");

    std::map<std::string, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < m.sample_count(); ++i) by_class[m.labels[i]].push_back(i);

    // chunk each over-represented class alphabetically by program name
    std::map<std::string, std::vector<std::vector<std::size_t>>> chunks;
    std::size_t subset_count = 1;
    for (auto& [label, idxs] : by_class) {
        if (idxs.size() <= static_cast<std::size_t>(subset_size)) continue;
        std::vector<std::size_t> sorted = idxs;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
            const SampleId& sa = m.sample_ids[a];
            const SampleId& sb = m.sample_ids[b];
            return std::tie(sa.program_name, sa.program_id, sa.period_label) <
                   std::tie(sb.program_name, sb.program_id, sb.period_label);
        });
        std::vector<std::vector<std::size_t>> cs;
        for (std::size_t start = 0; start < sorted.size(); start += static_cast<std::size_t>(subset_size)) {
            std::size_t end = std::min(sorted.size(), start + static_cast<std::size_t>(subset_size));
            cs.emplace_back(sorted.begin() + static_cast<long>(start), sorted.begin() + static_cast<long>(end));
        }
        subset_count = std::max(subset_count, cs.size());
        chunks.emplace(label, std::move(cs));
    }

    std::vector<FeatureMatrix> out;
    for (std::size_t s = 0; s < subset_count; ++s) {
        std::set<std::size_t> keep;
        for (const auto& [label, idxs] : by_class) {
            auto it = chunks.find(label);
            if (it == chunks.end()) {
                keep.insert(idxs.begin(), idxs.end());
            } else {
                const auto& cs = it->second;
                const auto& chunk = cs[s % cs.size()];  // shorter lists recycle
                keep.insert(chunk.begin(), chunk.end());
            }
        }
        FeatureMatrix sub;
        sub.column_names = m.column_names;
        for (std::size_t i : keep) {  // std::set iterates ascending: original row order
            sub.rows.push_back(m.rows[i]);
            sub.labels.push_back(m.labels[i]);
            sub.sample_ids.push_back(m.sample_ids[i]);
        }
        out.push_back(std::move(sub));
    }
    return out;
}

std::string write_feature_matrix(const FeatureMatrix& m, std::uint64_t run_seed) {
    std::string out = strf("# seed %llu\n", static_cast<unsigned long long>(run_seed));
    std::vector<std::string> header = {"sample_id", "period"};
    for (const auto& c : m.column_names) header.push_back(c);
    header.push_back("grade");
    append_csv_row(out, header);
    for (std::size_t r = 0; r < m.sample_count(); ++r) {
        std::vector<std::string> fields = {m.sample_ids[r].program_id, m.sample_ids[r].period_label};
        for (double v : m.rows[r]) fields.push_back(format_double(v));
        fields.push_back(m.labels[r]);
        append_csv_row(out, fields);
    }
    return out;
}

FeatureMatrix read_feature_matrix(std::string_view text) {
    auto rows = parse_csv(text);
    if (rows.size() < 1 || rows.front().size() < 3) throw std::runtime_error("bad feature matrix");
    FeatureMatrix m;
    const auto& header = rows.front();
    if (header.front() != "sample_id" || header[1] != "period" || header.back() != "grade")
        throw std::runtime_error("bad feature matrix header");
    m.column_names.assign(header.begin() + 2, header.end() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& row = rows[i];
        if (row.size() != header.size()) throw std::runtime_error("bad feature matrix row");
        SampleId id;
        id.program_id = row[0];
        id.period_label = row[1];
        m.sample_ids.push_back(std::move(id));
        std::vector<double> values;
        for (std::size_t c = 2; c + 1 < row.size(); ++c) values.push_back(std::stod(row[c]));
        m.rows.push_back(std::move(values));
        m.labels.push_back(row.back());
    }
    return m;
}

}  // namespace coanet
