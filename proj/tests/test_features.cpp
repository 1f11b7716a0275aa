#include <doctest.h>

#include <set>

#include "coanet/features.hpp"
#include "coanet/util.hpp"

using namespace coanet;

namespace {

// a sample whose metric fields are all present with the given base value
SampleRecord sample(std::string program, std::string period, int grade, double base,
                    std::string program_name = "") {
    SampleRecord s;
    s.id = {std::move(program), std::move(period),
            program_name.empty() ? "Program " + std::to_string(grade) : std::move(program_name)};
    s.grade = grade;
    for (int f = 0; f < kMetricCount; ++f)
        s.report.values[static_cast<std::size_t>(f)] = MetricValue::of(base + f);
    s.indexes = {0.5, 0.25, 0.25};
    return s;
}

FeatureMatrix tiny_matrix() {
    std::vector<SampleRecord> samples = {sample("P1", "a", 3, 1.0), sample("P2", "a", 5, 2.0),
                                         sample("P3", "a", 7, 3.0)};
    return assemble_matrix(samples);
}

}  // namespace

TEST_CASE("assemble_matrix lays out the documented schema") {
    FeatureMatrix m = tiny_matrix();
    CHECK(m.column_names == feature_schema());
    CHECK(m.feature_count() == 19);
    CHECK(m.sample_count() == 3);
    CHECK(m.labels == std::vector<std::string>{"3", "5", "7"});
    CHECK(m.rows[0][0] == doctest::Approx(1.0));
    CHECK(m.rows[1][1] == doctest::Approx(3.0));
    CHECK(m.rows[0][m.feature_count() - 3] == doctest::Approx(0.5));   // firstAuthorIndex
    CHECK(m.rows[0][m.feature_count() - 1] == doctest::Approx(0.25));  // seniorityIndex
    CHECK_THROWS_AS(assemble_matrix(std::vector<SampleRecord>{}), EmptyInput);
}

TEST_CASE("missing metric cells impute to the column mean of defined entries") {
    std::vector<SampleRecord> samples = {sample("P1", "a", 3, 1.0), sample("P2", "a", 4, 5.0),
                                         sample("P3", "a", 5, 9.0)};
    samples[1].report[Metric::AssortCoefficient] = MetricValue::missing(MissingReason::NoEdges);
    FeatureMatrix m = assemble_matrix(samples);
    int col = m.column_index("assortCoefficient");
    REQUIRE(col >= 0);
    double defined_mean = (samples[0].report[Metric::AssortCoefficient].value() +
                           samples[2].report[Metric::AssortCoefficient].value()) /
                          2.0;
    CHECK(m.rows[1][static_cast<std::size_t>(col)] == doctest::Approx(defined_mean));
}

TEST_CASE("assembly order tracks input order and sorting restores identity") {
    std::vector<SampleRecord> samples = {sample("P2", "a", 4, 2.0), sample("P1", "a", 3, 1.0)};
    FeatureMatrix forward = assemble_matrix(samples);
    std::swap(samples[0], samples[1]);
    FeatureMatrix backward = assemble_matrix(samples);
    CHECK(forward.sample_ids[0].program_id == "P2");
    CHECK(backward.sample_ids[0].program_id == "P1");
    CHECK(forward.rows[0] == backward.rows[1]);
    CHECK(forward.rows[1] == backward.rows[0]);
}

TEST_CASE("minmax_normalize maps each column onto [0,1]") {
    std::vector<SampleRecord> samples = {sample("P1", "a", 3, 2.0), sample("P2", "a", 4, 4.0),
                                         sample("P3", "a", 5, 6.0)};
    FeatureMatrix m = assemble_matrix(samples);
    FeatureMatrix n = minmax_normalize(m);
    // first metric column held 2, 4, 6
    CHECK(n.rows[0][0] == doctest::Approx(0.0));
    CHECK(n.rows[1][0] == doctest::Approx(0.5));
    CHECK(n.rows[2][0] == doctest::Approx(1.0));
    // index columns were constant: they collapse to zero
    CHECK(n.rows[0][n.feature_count() - 1] == 0.0);
    CHECK(n.rows[2][n.feature_count() - 1] == 0.0);
    // labels untouched
    CHECK(n.labels == m.labels);

    SUBCASE("idempotent cell for cell") {
        FeatureMatrix again = minmax_normalize(n);
        for (std::size_t r = 0; r < n.sample_count(); ++r)
            for (std::size_t c = 0; c < n.feature_count(); ++c) CHECK(again.rows[r][c] == n.rows[r][c]);
        CHECK(again.labels == n.labels);
    }
}

TEST_CASE("regroup maps grades onto the three-class scheme") {
    std::vector<std::string> grades = {"3", "4", "5", "6", "7"};
    CHECK(regroup(grades, ClassScheme::ThreeClass) ==
          std::vector<std::string>{"C", "C", "B", "A", "A"});
    CHECK(regroup(grades, ClassScheme::FiveClass) == grades);
    CHECK_THROWS_AS(regroup({"2"}, ClassScheme::ThreeClass), InvalidGrade);
    CHECK_THROWS_AS(regroup({"8"}, ClassScheme::FiveClass), InvalidGrade);
    CHECK_THROWS_AS(regroup({"A"}, ClassScheme::ThreeClass), InvalidGrade);

    FeatureMatrix m = tiny_matrix();
    FeatureMatrix g = regroup(m, ClassScheme::ThreeClass);
    CHECK(g.labels == std::vector<std::string>{"C", "B", "A"});
    CHECK(g.sample_ids.size() == m.sample_ids.size());
    CHECK(g.rows == m.rows);
}

namespace {

FeatureMatrix labeled_matrix(const std::vector<std::pair<std::string, std::string>>& label_name) {
    std::vector<SampleRecord> samples;
    int i = 0;
    for (const auto& [grade, name] : label_name) {
        SampleRecord s = sample(strf("P%02d", i), "a", grade[0] - '0', static_cast<double>(i), name);
        samples.push_back(s);
        ++i;
    }
    return assemble_matrix(samples);
}

}  // namespace

TEST_CASE("balance_subsets splits over-represented classes alphabetically") {
    // 7 samples of grade 3 against 2 of grade 7, subset size 3
    std::vector<std::pair<std::string, std::string>> spec;
    const char* names[] = {"Delta", "Alpha", "Foxtrot", "Bravo", "Echo", "Golf", "Charlie"};
    for (const char* name : names) spec.push_back({"3", name});
    spec.push_back({"7", "Yankee"});
    spec.push_back({"7", "Zulu"});
    FeatureMatrix m = labeled_matrix(spec);

    auto subsets = balance_subsets(m, 3);
    REQUIRE(subsets.size() == 3);  // ceil(7 / 3)

    // chunks follow program-name order: [Alpha,Bravo,Charlie], [Delta,Echo,Foxtrot], [Golf]
    auto class3_names = [&](const FeatureMatrix& sub) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < sub.sample_count(); ++i)
            if (sub.labels[i] == "3") out.push_back(sub.sample_ids[i].program_name);
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(class3_names(subsets[0]) == std::vector<std::string>{"Alpha", "Bravo", "Charlie"});
    CHECK(class3_names(subsets[1]) == std::vector<std::string>{"Delta", "Echo", "Foxtrot"});
    CHECK(class3_names(subsets[2]) == std::vector<std::string>{"Golf"});  // short tail kept

    // the under-represented class rides along unsplit in every subset
    for (const auto& sub : subsets) {
        long sevens = static_cast<long>(std::count(sub.labels.begin(), sub.labels.end(), "7"));
        CHECK(sevens == 2);
    }

    SUBCASE("class chunks cover the class exactly once") {
        std::multiset<std::string> seen;
        for (const auto& sub : subsets)
            for (std::size_t i = 0; i < sub.sample_count(); ++i)
                if (sub.labels[i] == "3") seen.insert(sub.sample_ids[i].program_id);
        CHECK(seen.size() == 7);
        CHECK(std::set<std::string>(seen.begin(), seen.end()).size() == 7);
    }
}

TEST_CASE("balance_subsets pairs chunks of two over-represented classes by index") {
    std::vector<std::pair<std::string, std::string>> spec;
    for (int i = 0; i < 6; ++i) spec.push_back({"3", strf("ThreeProg %c", 'A' + i)});
    for (int i = 0; i < 4; ++i) spec.push_back({"4", strf("FourProg %c", 'A' + i)});
    spec.push_back({"7", "Lone"});
    FeatureMatrix m = labeled_matrix(spec);

    auto subsets = balance_subsets(m, 2);
    REQUIRE(subsets.size() == 3);  // max(3 chunks of grade 3, 2 chunks of grade 4)
    // the shorter chunk list recycles: subset 2 reuses grade-4 chunk 0
    long fours_in_last = static_cast<long>(
        std::count(subsets[2].labels.begin(), subsets[2].labels.end(), "4"));
    CHECK(fours_in_last == 2);
    for (const auto& sub : subsets)
        CHECK(std::count(sub.labels.begin(), sub.labels.end(), "7") == 1);
}

TEST_CASE("seventy-five samples of one class split into five chunks of fifteen") {
    std::vector<std::pair<std::string, std::string>> spec;
    for (int i = 0; i < 75; ++i) spec.push_back({"3", strf("Prog %03d", i)});
    for (int i = 0; i < 9; ++i) spec.push_back({"6", strf("Rare %d", i)});
    FeatureMatrix m = labeled_matrix(spec);
    auto subsets = balance_subsets(m, 15);
    REQUIRE(subsets.size() == 5);
    for (const auto& sub : subsets) {
        CHECK(std::count(sub.labels.begin(), sub.labels.end(), "3") == 15);
        CHECK(std::count(sub.labels.begin(), sub.labels.end(), "6") == 9);
    }
}

TEST_CASE("balance_subsets without over-represented classes returns the matrix unchanged") {
    FeatureMatrix m = tiny_matrix();
    auto subsets = balance_subsets(m, 15);
    REQUIRE(subsets.size() == 1);
    CHECK(subsets[0].rows == m.rows);
    CHECK(subsets[0].labels == m.labels);
}

TEST_CASE("feature matrix files round trip") {
    FeatureMatrix m = minmax_normalize(tiny_matrix());
    std::string text = write_feature_matrix(m, 31);
    FeatureMatrix back = read_feature_matrix(text);
    CHECK(back.column_names == m.column_names);
    CHECK(back.labels == m.labels);
    REQUIRE(back.sample_count() == m.sample_count());
    for (std::size_t r = 0; r < m.sample_count(); ++r)
        for (std::size_t c = 0; c < m.feature_count(); ++c)
            CHECK(back.rows[r][c] == doctest::Approx(m.rows[r][c]).epsilon(1e-11));
}
