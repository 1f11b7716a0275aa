#include <doctest.h>

#include <filesystem>
#include <set>

#include "coanet/corpus.hpp"
#include "coanet/ingest.hpp"
#include "coanet/util.hpp"

using namespace coanet;

namespace {

const char* kMinimalResume = R"(<?xml version="1.0" encoding="UTF-8"?>
<resume id="r0042">
  <general-data full-name="Ana Beatriz Souza"/>
  <productions>
    <publication kind="EVENT" nature="COMPLETE" title="A Study of Caching" year="2008">
      <author name="Ana Beatriz Souza"/>
      <author name="Carlos Lima"/>
    </publication>
  </productions>
</resume>
)";

std::filesystem::path fixture_dir() {
    return std::filesystem::path(COANET_FIXTURE_DIR) / "corpus";
}

}  // namespace

TEST_CASE("parse_resume keeps author order and fields") {
    ResumeRecord record = parse_resume(kMinimalResume);
    CHECK(record.researcher_id == "r0042");
    CHECK(record.full_name == "Ana Beatriz Souza");
    REQUIRE(record.publications.size() == 1);
    const Publication& pub = record.publications.front();
    CHECK(pub.title == "A Study of Caching");
    CHECK(pub.year == 2008);
    CHECK(pub.kind == PublicationKind::EventPaper);
    CHECK(pub.nature == PublicationNature::Complete);
    CHECK(pub.authors == std::vector<std::string>{"Ana Beatriz Souza", "Carlos Lima"});
}

TEST_CASE("parse_resume accepts an empty productions section") {
    ResumeRecord record = parse_resume(
        "<resume id=\"r1\"><general-data full-name=\"Ana\"/><productions/></resume>");
    CHECK(record.publications.empty());
}

TEST_CASE("parse_resume error cases") {
    CHECK_THROWS_AS(parse_resume("<resume id=\"x\"><productions/>"), MalformedRecord);
    CHECK_THROWS_AS(parse_resume("<cv id=\"x\"/>"), MalformedRecord);
    CHECK_THROWS_AS(parse_resume("<resume id=\"x\"><productions/></resume>"), MissingName);
    CHECK_THROWS_AS(
        parse_resume("<resume id=\"x\"><general-data/><productions/></resume>"), MissingName);
    CHECK_THROWS_AS(parse_resume("<resume><general-data full-name=\"A\"/><productions/></resume>"),
                    MalformedRecord);
}

TEST_CASE("parse_resume drops publications with unusable fields and counts them") {
    std::string raw = R"(<resume id="r1"><general-data full-name="Ana"/><productions>
      <publication kind="EVENT" nature="COMPLETE" title="no year"><author name="Ana"/></publication>
      <publication kind="EVENT" nature="COMPLETE" title="bad year" year="1492"><author name="Ana"/></publication>
      <publication kind="EVENT" title="no nature" year="2008"><author name="Ana"/></publication>
      <publication kind="TALK" nature="COMPLETE" title="bad kind" year="2008"><author name="Ana"/></publication>
      <publication kind="EVENT" nature="COMPLETE" title="no authors" year="2008"/>
      <publication kind="JOURNAL" nature="OTHER" title="keeper" year="2009"><author name="Ana"/></publication>
    </productions></resume>)";
    ParseStats stats;
    ResumeRecord record = parse_resume(raw, &stats);
    REQUIRE(record.publications.size() == 1);
    CHECK(record.publications[0].title == "keeper");
    CHECK(stats.dropped_missing_year == 1);
    CHECK(stats.dropped_bad_year == 1);
    CHECK(stats.dropped_missing_nature == 1);
    CHECK(stats.dropped_bad_kind == 1);
    CHECK(stats.dropped_no_authors == 1);
}

TEST_CASE("record files tolerate comments, entities and CRLF") {
    std::string raw =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\r\n"
        "<!-- exported record -->\r\n"
        "<resume id=\"r7\">\r\n"
        "  <general-data full-name=\"Jo&#xe3;o &amp; Maria\"/>\r\n"
        "  <!-- empty season -->\r\n"
        "  <productions>\r\n"
        "    <publication kind=\"EVENT\" nature=\"COMPLETE\" title=\"A &lt;tagged&gt; title\" year=\"2008\">\r\n"
        "      <author name=\"Jo&#227;o &amp; Maria\"/>\r\n"
        "    </publication>\r\n"
        "  </productions>\r\n"
        "</resume>\r\n";
    ResumeRecord record = parse_resume(raw);
    CHECK(record.full_name == "João & Maria");
    REQUIRE(record.publications.size() == 1);
    CHECK(record.publications[0].title == "A <tagged> title");
    CHECK(record.publications[0].authors[0] == "João & Maria");
    CHECK(parse_resume(serialize_resume(record)) == record);
}

TEST_CASE("resume parse then serialize then parse is the identity") {
    ResumeRecord record = parse_resume(kMinimalResume);
    ResumeRecord again = parse_resume(serialize_resume(record));
    CHECK(record == again);

    // attribute escaping survives the round trip
    ResumeRecord tricky;
    tricky.researcher_id = "r9";
    tricky.full_name = "Ana \"Quotes\" & <Angles>";
    Publication pub;
    pub.title = "On A&B <c> \"quoted\"";
    pub.year = 2010;
    pub.authors = {"Ana \"Quotes\" & <Angles>", "Outro Autor"};
    tricky.publications.push_back(pub);
    CHECK(parse_resume(serialize_resume(tricky)) == tricky);
}

TEST_CASE("bundled fixture resume_0001 parses with the hand-counted publication total") {
    ResumeRecord record =
        parse_resume(read_file(fixture_dir() / "resumes" / "resume_0001.xml"));
    CHECK(record.researcher_id == "r0001");
    CHECK(record.publications.size() == 12);
}

namespace {

const char* kRosterHeader =
    "program_id,program_name,institution,area,modality,researcher_name,period_label,grade\n";

}  // namespace

TEST_CASE("parse_rosters groups rows and applies filters") {
    std::string raw = std::string(kRosterHeader) +
                      "P1,Prog One,Uni A,Computer Science,Academic,Ana Souza,2007-2009,4\n"
                      "P1,Prog One,Uni A,Computer Science,Academic,Beatriz Lima,2007-2009,4\n"
                      "P1,Prog One,Uni A,Computer Science,Academic,Ana Souza,2010-2012,5\n";
    auto rosters = parse_rosters(raw, "Computer Science", Modality::Academic);
    REQUIRE(rosters.size() == 1);
    CHECK(rosters[0].program_id == "P1");
    CHECK(rosters[0].researcher_names == std::vector<std::string>{"Ana Souza", "Beatriz Lima"});
    CHECK(rosters[0].grades.at("2007-2009") == 4);
    CHECK(rosters[0].grades.at("2010-2012") == 5);
}

TEST_CASE("parse_rosters excludes professional rows under the academic filter") {
    std::string raw = std::string(kRosterHeader) +
                      "P1,Prog One,Uni A,Computer Science,Academic,Ana Souza,2007-2009,4\n"
                      "P2,Prog Two,Uni B,Computer Science,Professional,Caio Neves,2007-2009,5\n"
                      "P3,Prog Three,Uni C,Mathematics,Academic,Davi Rocha,2007-2009,6\n";
    auto rosters = parse_rosters(raw, "Computer Science", Modality::Academic);
    REQUIRE(rosters.size() == 1);
    CHECK(rosters[0].program_id == "P1");
}

TEST_CASE("roster tables may quote fields with commas and newlines") {
    std::string raw = std::string(kRosterHeader) +
                      "P1,\"Computing, Applied\",\"Uni\n(Main Campus)\",Computer Science,Academic,"
                      "\"Souza, Ana\",2007-2009,4\n";
    auto rosters = parse_rosters(raw, "", Modality::Academic);
    REQUIRE(rosters.size() == 1);
    CHECK(rosters[0].program_name == "Computing, Applied");
    CHECK(rosters[0].institution == "Uni\n(Main Campus)");
    CHECK(rosters[0].researcher_names == std::vector<std::string>{"Souza, Ana"});
}

TEST_CASE("parse_rosters deduplicates repeated researcher rows") {
    std::string raw = std::string(kRosterHeader) +
                      "P1,Prog,Uni,Computer Science,Academic,Ana Souza,2007-2009,4\n"
                      "P1,Prog,Uni,Computer Science,Academic,Ana Souza,2007-2009,4\n";
    auto rosters = parse_rosters(raw, "", Modality::Academic);
    REQUIRE(rosters.size() == 1);
    CHECK(rosters[0].researcher_names.size() == 1);
}

TEST_CASE("parse_rosters rejects malformed tables") {
    CHECK_THROWS_AS(parse_rosters("", "", Modality::Academic), MalformedTable);
    CHECK_THROWS_AS(parse_rosters("a,b,c\n", "", Modality::Academic), MalformedTable);
    CHECK_THROWS_AS(parse_rosters(std::string(kRosterHeader) + "P1,Prog,Uni,CS,Academic,Ana,x,9\n",
                                  "", Modality::Academic),
                    MalformedTable);
    CHECK_THROWS_AS(parse_rosters(std::string(kRosterHeader) +
                                      "P1,Prog,Uni,CS,PartTime,Ana,2007-2009,4\n",
                                  "", Modality::Academic),
                    UnknownModality);
    // conflicting grade for the same program and period
    CHECK_THROWS_AS(parse_rosters(std::string(kRosterHeader) +
                                      "P1,Prog,Uni,CS,Academic,Ana,2007-2009,4\n"
                                      "P1,Prog,Uni,CS,Academic,Bia,2007-2009,5\n",
                                  "", Modality::Academic),
                    MalformedTable);
}

TEST_CASE("filter_publications keeps complete works inside the window") {
    EvaluationPeriod period{2007, 2009, "2007-2009"};
    Publication keeper{"k", 2008, PublicationKind::EventPaper, PublicationNature::Complete, {"A"}};
    Publication other_nature{"o", 2008, PublicationKind::EventPaper, PublicationNature::Other, {"A"}};
    Publication boundary{"b", 2009, PublicationKind::JournalArticle, PublicationNature::Complete, {"A"}};
    Publication before{"x", 2006, PublicationKind::EventPaper, PublicationNature::Complete, {"A"}};

    auto out = filter_publications({keeper, other_nature, boundary, before}, period);
    REQUIRE(out.size() == 2);
    CHECK(out[0].title == "k");
    CHECK(out[1].title == "b");  // end year inclusive

    SUBCASE("idempotent and order preserving") {
        auto again = filter_publications(out, period);
        CHECK(again == out);
    }
}

TEST_CASE("generate_corpus is deterministic per seed") {
    CorpusSpec spec = fixture_corpus_spec();
    auto a = generate_corpus_files(11, spec);
    auto b = generate_corpus_files(11, spec);
    CHECK(a == b);
    auto c = generate_corpus_files(12, spec);
    CHECK(a != c);
}

TEST_CASE("generate_corpus sizes rosters by grade") {
    CorpusSpec spec;
    spec.grade_samples = {{3, 3}, {4, 3}, {5, 3}, {6, 3}, {7, 3}};
    spec.include_chaff = false;
    auto files = generate_corpus_files(5, spec);
    auto rosters = parse_rosters(files.at("roster.csv"), "Computer Science", Modality::Academic);
    REQUIRE(rosters.size() == 5);
    std::map<int, std::size_t> size_by_grade;
    for (const auto& roster : rosters)
        size_by_grade[roster.grades.begin()->second] = roster.researcher_names.size();
    CHECK(size_by_grade.at(7) > size_by_grade.at(3));
}

TEST_CASE("generate_corpus rejects invalid size parameters") {
    CorpusSpec empty;
    empty.grade_samples.clear();
    CHECK_THROWS_AS(generate_corpus_files(1, empty), InvalidSpec);
    CorpusSpec zero;
    zero.grade_samples = {{3, 0}};
    CHECK_THROWS_AS(generate_corpus_files(1, zero), InvalidSpec);
    CorpusSpec no_periods;
    no_periods.periods.clear();
    CHECK_THROWS_AS(generate_corpus_files(1, no_periods), InvalidSpec);
}

TEST_CASE("generated corpora parse cleanly end to end") {
    CorpusSpec spec = fixture_corpus_spec();
    auto files = generate_corpus_files(21, spec);
    ParseStats stats;
    int resumes = 0;
    for (const auto& [path, content] : files) {
        if (!starts_with(path, "resumes/")) continue;
        ResumeRecord record = parse_resume(content, &stats);
        ResumeRecord again = parse_resume(serialize_resume(record), &stats);
        CHECK(record == again);
        ++resumes;
    }
    CHECK(resumes > 50);
    CHECK(stats.total_dropped() == 0);
    auto rosters = parse_rosters(files.at("roster.csv"), "Computer Science", Modality::Academic);
    CHECK(rosters.size() == 6);
    // every (program, period) sample carries a grade in range
    for (const auto& roster : rosters)
        for (const auto& [label, grade] : roster.grades) {
            CHECK(grade >= 3);
            CHECK(grade <= 7);
        }
}

TEST_CASE("default corpus spec reproduces the target grade histogram") {
    CorpusSpec spec = default_corpus_spec();
    long total = 0;
    for (const auto& [grade, count] : spec.grade_samples) total += count;
    CHECK(total == 171);
    CHECK(spec.grade_samples.at(3) == 75);
    CHECK(spec.grade_samples.at(4) == 58);
    CHECK(spec.grade_samples.at(5) == 14);
    CHECK(spec.grade_samples.at(6) == 9);
    CHECK(spec.grade_samples.at(7) == 15);
}
