#include <catch_amalgamated.hpp>

#include <sstream>

#include "fixtures.hpp"
#include "lqa/corpus.hpp"

using namespace lqa;

TEST_CASE("parse_statutes extracts id, title and body") {
    Corpus c = parse_statutes("(Manager's Claims)\nArticle 702 If a Manager has incurred useful expenses");
    REQUIRE(c.articles.size() == 1);
    const Article& a = c.articles.at("702");
    CHECK(a.id == "702");
    REQUIRE(a.title.has_value());
    CHECK(*a.title == "Manager's Claims");
    CHECK(a.body == "If a Manager has incurred useful expenses");
    CHECK(a.full_text() == "Manager's Claims If a Manager has incurred useful expenses");
}

TEST_CASE("parse_statutes on empty input yields empty corpus") {
    Corpus c = parse_statutes("");
    CHECK(c.articles.empty());
    CHECK(c.unresolved.empty());
}

TEST_CASE("parse_statutes records references") {
    Corpus c = parse_statutes(
        "Article 650 The mandatary may claim reimbursement.\n"
        "Article 702 The provisions of Paragraph 2 of Article 650 shall apply.\n");
    CHECK(c.articles.at("702").refs == IdSet{"650"});
    CHECK(c.articles.at("650").refs.empty());
    CHECK(c.unresolved.empty());
}

TEST_CASE("parse_statutes rejects duplicates and empty bodies") {
    CHECK_THROWS(parse_statutes("Article 1 first.\nArticle 1 again.\n"));
    CHECK_THROWS(parse_statutes("Article 1\nArticle 2 fine.\n"));
}

TEST_CASE("parse_statutes handles multi-line bodies and header-attached text") {
    Corpus c = parse_statutes(
        "(Heading)\nArticle 697(1)A person who commences management.\n(2)The Manager must engage.\n");
    const Article& a = c.articles.at("697");
    CHECK(a.body == "(1)A person who commences management.\n(2)The Manager must engage.");
    CHECK(*a.title == "Heading");
}

TEST_CASE("unresolved references are recorded, not dropped") {
    Corpus c = parse_statutes("Article 1 See Article 99 for details.\n");
    CHECK(c.articles.at("1").refs == IdSet{"99"});
    REQUIRE(c.unresolved.size() == 1);
    CHECK(c.unresolved[0] == std::pair<std::string, std::string>{"1", "99"});
}

TEST_CASE("detect_references patterns") {
    CHECK(detect_references("The provisions of Paragraph 2 of Article 650 shall apply") ==
          IdSet{"650"});
    CHECK(detect_references("no citation here").empty());
    CHECK(detect_references("Articles 3 to 5") == IdSet{"3", "4", "5"});
    CHECK(detect_references("Articles 12 and 15") == IdSet{"12", "15"});
    CHECK(detect_references("Article 255-2 applies") == IdSet{"255-2"});
}

TEST_CASE("article id ordering is numeric then lexicographic") {
    ArticleIdLess less;
    CHECK(less("9", "10"));
    CHECK(less("255", "255-2"));
    CHECK_FALSE(less("255-2", "255"));
    CHECK(less("255-2", "256"));
}

TEST_CASE("load_pairs parses the JSONL format") {
    Corpus c = fixtures::statutes();
    std::istringstream in(
        R"({"qid":"H18-2-4","question":"a question","relevant":["702"],"label":"Y"})" "\n"
        R"({"qid":"X","question":"no label","relevant":["650"]})" "\n");
    auto pairs = load_pairs(in, c);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].qid == "H18-2-4");
    CHECK(pairs[0].relevant == std::vector<std::string>{"702"});
    REQUIRE(pairs[0].label.has_value());
    CHECK(*pairs[0].label == true);
    CHECK_FALSE(pairs[1].label.has_value());
}

TEST_CASE("load_pairs empty file") {
    Corpus c;
    std::istringstream in("");
    CHECK(load_pairs(in, c).empty());
}

TEST_CASE("load_pairs reports malformed records with line numbers") {
    Corpus c;
    std::istringstream in(
        R"({"qid":"ok","question":"q","relevant":["1"]})" "\n"
        "not json\n");
    CHECK_THROWS_WITH(load_pairs(in, c), Catch::Matchers::ContainsSubstring("line 2"));

    std::istringstream in2(R"({"qid":"bad","question":"q","relevant":[]})");
    CHECK_THROWS(load_pairs(in2, c));

    std::istringstream in3(R"({"qid":"bad","question":"q","relevant":["1"],"label":"MAYBE"})");
    CHECK_THROWS(load_pairs(in3, c));
}

TEST_CASE("load_pairs flags unresolved ids but keeps the pair") {
    Corpus c = fixtures::tiny();
    std::istringstream in(R"({"qid":"u","question":"q","relevant":["1","999"]})");
    std::ostringstream warnings;
    auto pairs = load_pairs(in, c, &warnings);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].unresolved == std::vector<std::string>{"999"});
    CHECK(warnings.str().find("999") != std::string::npos);
}

TEST_CASE("corpus JSON round-trip is identity") {
    Corpus c = fixtures::statutes();
    Corpus back = corpus_from_json(corpus_to_json(c));
    CHECK(back == c);
}

TEST_CASE("parsing is deterministic") {
    std::string text = fixtures::slurp(fixtures::data_dir() + "/statutes_fixture.txt");
    CHECK(parse_statutes(text) == parse_statutes(text));
}

TEST_CASE("reference closure holds on the fixture") {
    Corpus c = fixtures::statutes();
    for (const auto& [id, art] : c.articles) {
        IdSet detected = detect_references(art.body);
        detected.erase(id);
        CHECK(detected == art.refs);
    }
}
