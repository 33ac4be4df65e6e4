#include "qadder/documents.hpp"

#include <cmath>
#include <string>

#include "gtest/gtest.h"

using namespace qadder;

namespace {

// Line and column from a "<source>:<line>:<column>: ..." message.
std::pair<int, int> where(const std::string &message) {
    const auto a = message.find(':');
    const auto b = message.find(':', a + 1);
    const auto c = message.find(':', b + 1);
    return {std::stoi(message.substr(a + 1, b - a - 1)), std::stoi(message.substr(b + 1, c - b - 1))};
}

std::pair<int, int> error_position(const std::string &text) {
    try {
        parse_code_file(text, "f.json");
    } catch (const DocumentError &e) {
        return where(e.what());
    }
    ADD_FAILURE() << "no error for:\n" << text;
    return {0, 0};
}

}  // namespace

TEST(region_document, round_trip) {
    for (const auto &tag : {"classical", "ghz", "two_ebit_unitary", "ss_maximal"}) {
        const auto d = make_region_document(tag, named_region(tag));
        EXPECT_EQ(parse_region_document(to_json(d)), d) << tag;
    }
    const auto ss = make_region_document("ss:0.8", time_sharing_region(time_sharing_params(0.8)));
    ASSERT_EQ(ss.notes.size(), 1u);
    EXPECT_EQ(parse_region_document(to_json(ss)), ss);
}

TEST(region_document, csv) {
    const auto csv = to_csv(make_region_document("classical", named_region("classical")));
    EXPECT_EQ(csv,
              "kind,a,b,c,note\n"
              "constraint,1,0,1,\n"
              "constraint,0,1,1,\n"
              "constraint,1,1,1.5,\n"
              "vertex,0,0,,\n"
              "vertex,1,0,,\n"
              "vertex,1,0.5,,\n"
              "vertex,0.5,1,,\n"
              "vertex,0,1,,\n");
}

TEST(optimize_document, round_trip_all_label_kinds) {
    OptimizeDocument d;
    d.scenario = "ss:0.8";
    d.mode = "unitary";
    d.alpha = 0.8;
    d.seed = 7;
    d.restarts = 3;
    d.budget = 100;
    d.best_value = 1.0 / 3.0;
    d.evaluations = 290;
    d.best_restart = 2;
    d.sender1 = {{0.25, 0.75}, {UnitaryAngles{0.1, 0.2, 0.3}, UnitaryAngles{std::acos(-1.0), 1e-300, -2.5}}};
    d.sender2 = {{1.0}, {PauliIndex{3}}};
    EXPECT_EQ(parse_optimize_document(to_json(d)), d);
    d.sender2 = {{0.5, 0.5}, {BlochPoint{0.3, 0.1}, BlochPoint{2.0, 6.1}}};
    EXPECT_EQ(parse_optimize_document(to_json(d)), d);
}

TEST(rate_sum_document, round_trip_and_csv) {
    const RateSumDocument d{rate_sum_table({1, 2, 3, 4, 5, 512})};
    EXPECT_EQ(parse_rate_sum_document(to_json(d)), d);
    const auto csv = to_csv(d);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "L,quantum_sum,classical_sum,asymptote,oracle");
    EXPECT_NE(csv.find("\n2,3.18872188,1.5,1.5,3.18872188\n"), std::string::npos);
    EXPECT_NE(csv.find("\n5,"), std::string::npos);
    // no oracle past four senders
    const auto last = csv.substr(csv.rfind("\n512,"));
    EXPECT_EQ(last.back(), '\n');
    EXPECT_EQ(last[last.size() - 2], ',');
}

TEST(simulation_document, round_trip) {
    const auto perf = summarize({{0, 0}, {1, 0}});
    auto d = make_simulation_document("wrap:x.json", 1, {1, 1}, perf);
    EXPECT_FALSE(d.zero_error);
    EXPECT_EQ(parse_simulation_document(to_json(d)), d);
    d.base_average_error = 0.25;
    EXPECT_EQ(parse_simulation_document(to_json(d)), d);
    EXPECT_EQ(to_csv(d), "m1,m2,error\n0,0,0\n0,1,0\n1,0,1\n1,1,0\n");

    const auto clean = make_simulation_document("dense", 1, {2, 0}, summarize({{1e-13}}));
    EXPECT_TRUE(clean.zero_error);
}

TEST(verify_document, round_trip) {
    VerifyDocument d;
    d.seed = 9;
    d.suites = {{"a", 10, 0, 1e-15, ""}, {"b", 4, 1, 0.5, "state 3"}};
    d.passed = false;
    EXPECT_EQ(parse_verify_document(to_json(d)), d);
    EXPECT_EQ(to_csv(d), "suite,checked,failed,worst,passed\na,10,0,1e-15,true\nb,4,1,0.5,false\n");
}

TEST(documents, reject_wrong_version_or_kind) {
    const auto d = make_region_document("ghz", named_region("ghz"));
    auto text = to_json(d);
    EXPECT_THROW(parse_rate_sum_document(text), DocumentError);
    const auto at = text.find("\"schema_version\": 1");
    ASSERT_NE(at, std::string::npos);
    text.replace(at, 19, "\"schema_version\": 2");
    EXPECT_THROW(parse_region_document(text), DocumentError);
    EXPECT_THROW(parse_region_document("{"), DocumentError);
    EXPECT_THROW(parse_region_document(R"({"schema_version": 1, "document": "region"})"), DocumentError);
}

TEST(code_file, parses_books_and_decoder) {
    const auto c = parse_code_file(R"({"n": 2, "book1": ["00", "11"], "book2": ["00", "01", "10"]})");
    EXPECT_EQ(c.n(), 2u);
    ASSERT_EQ(c.book1().size(), 2u);
    EXPECT_EQ(c.book1()[1], BitWord(2, 1));
    EXPECT_EQ(c.book2().size(), 3u);
    EXPECT_TRUE(zero_error_check(c).zero_error);

    const auto b = parse_code_file(
        R"({"n": 1, "book1": ["0", "1"], "book2": ["0", "1"], "decoder": {"0": [0, 0], "1": [0, 1], "2": [1, 1]}})");
    EXPECT_EQ(b.decoder().size(), 3u);
    // map order: sums 0, 1, 2
    EXPECT_EQ(std::next(b.decoder().begin())->second, (MessagePair{0, 1}));

    const auto two = parse_code_file(R"({"n": 2, "book1": ["01"], "book2": ["10"], "decoder": {"1,1": [0, 0]}})");
    ASSERT_EQ(two.decoder().size(), 1u);
    EXPECT_EQ(two.decoder().begin()->first, SumWord(2, 1));
}

TEST(code_file, round_trip_through_writer) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto c = random_adder_code(seed, 4, 6, seed % 2 == 0);
        const auto back = parse_code_file(code_file_json(c));
        EXPECT_EQ(back.n(), c.n());
        EXPECT_EQ(back.book1(), c.book1());
        EXPECT_EQ(back.book2(), c.book2());
        EXPECT_EQ(back.decoder(), c.decoder());
    }
}

TEST(code_file, syntax_errors_carry_line_and_column) {
    EXPECT_EQ(error_position("{\n  \"n\": 2,\n  \"book1\": [\"00\",\n  ]\n}\n"), std::make_pair(4, 3));
    EXPECT_EQ(error_position("{\"n\": 1 \"book1\": []}"), std::make_pair(1, 9));
    EXPECT_EQ(error_position("{\n\n  \"n\": tru\n}"), std::make_pair(3, 8));
}

TEST(code_file, semantic_errors_point_at_the_field) {
    EXPECT_EQ(error_position("{\n  \"n\": 2,\n  \"book1\": [\"00\", \"1\"],\n  \"book2\": [\"00\"]\n}"),
              std::make_pair(3, 19));
    EXPECT_EQ(error_position("{\n  \"n\": 0,\n  \"book1\": [\"0\"],\n  \"book2\": [\"0\"]\n}"), std::make_pair(2, 3));
    EXPECT_EQ(error_position("{\n  \"n\": 1,\n  \"book1\": [\"0\", \"0\"],\n  \"book2\": [\"0\"]\n}").first, 3);
    EXPECT_EQ(error_position("{\n  \"n\": 1,\n  \"book1\": [\"0\"],\n  \"book2\": []\n}").first, 4);
    EXPECT_EQ(error_position("{\n  \"n\": 1,\n  \"book1\": [\"0\"],\n  \"book2\": [\"1\"],\n  \"colour\": 3\n}").first, 5);
    EXPECT_EQ(error_position("{\n  \"n\": 1,\n  \"book1\": [\"0\"]\n}").first, 1);
    const std::string decoder_head = "{\n  \"n\": 1,\n  \"book1\": [\"0\"],\n  \"book2\": [\"1\"],\n  \"decoder\": {\n";
    EXPECT_EQ(error_position(decoder_head + "    \"3\": [0, 0]\n  }\n}").first, 6);
    EXPECT_EQ(error_position(decoder_head + "    \"1\": [0, 0],\n    \"2\": [0, 5]\n  }\n}").first, 7);
    EXPECT_EQ(error_position(decoder_head + "    \"1,1\": [0, 0]\n  }\n}").first, 6);
    EXPECT_EQ(error_position(decoder_head + "    \"1\": [0]\n  }\n}").first, 6);
    EXPECT_EQ(error_position("[1, 2]"), std::make_pair(1, 1));
}
