#include "cycloset/enumerate.hpp"
#include "cycloset/io.hpp"
#include "properties.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace cycloset;

TEST(Json, Schema)
{
    const auto doc = make_document(enumerate_cosets(5, 16));
    const auto json = nlohmann::json::parse(to_json(doc));
    EXPECT_EQ(json["q"], 5);
    EXPECT_EQ(json["n"], 16);
    EXPECT_EQ(json["total"], 16);
    ASSERT_EQ(json["cosets"].size(), 8u);
    EXPECT_EQ(json["cosets"][1]["representative"], 1);
    EXPECT_EQ(json["cosets"][1]["size"], 4);
    EXPECT_FALSE(json["cosets"][1].contains("leader"));
}

TEST(Json, RoundTrip)
{
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const u64 q = props::field_sizes()[rng() % props::field_sizes().size()];
        const u64 n = 1 + rng() % 5000;
        if (std::gcd(q, n) != 1)
            continue;
        const auto partition = enumerate_cosets(q, n);
        const bool leaders = rng() % 2 == 0;
        const auto doc = make_document(partition, leaders);
        const auto back = parse_json(to_json(doc));
        ASSERT_EQ(back.records, doc.records);
        ASSERT_EQ(back.to_partition().cosets, partition.cosets);
        ASSERT_EQ(back.q, q);
        ASSERT_EQ(back.n, n);
    }
}

TEST(Json, LargeIntegersAreStrings)
{
    const u64 big = (u64{1} << 60) + 3;
    PartitionDocument doc{7, big, {{big - 1, std::nullopt, 1}}};
    const auto json = nlohmann::json::parse(to_json(doc));
    EXPECT_TRUE(json["n"].is_string());
    EXPECT_EQ(json["n"], std::to_string(big));
    EXPECT_TRUE(json["cosets"][0]["representative"].is_string());
    EXPECT_TRUE(json["cosets"][0]["size"].is_number());
    EXPECT_EQ(parse_json(to_json(doc)).records, doc.records);
}

TEST(Json, RejectsMalformed)
{
    EXPECT_THROW(parse_json("{"), error);
    EXPECT_THROW(parse_json(R"({"q":5})"), error);
    EXPECT_THROW(parse_json(R"({"q":5,"n":2,"cosets":[{"representative":"x","size":1}]})"), error);
    EXPECT_THROW(parse_json(R"({"q":5,"n":2,"cosets":[{"representative":0,"size":1}],"total":2})"), error);
}

TEST(Csv, SameRecordsAsJson)
{
    for (bool leaders : {false, true}) {
        const auto doc = make_document(enumerate_cosets(5, 3888), leaders);
        const auto from_csv = parse_csv(to_csv(doc));
        const auto from_json = parse_json(to_json(doc)).records;
        EXPECT_EQ(from_csv, from_json);
        EXPECT_EQ(from_csv.size(), 68u);
    }
}

TEST(Csv, Trailer)
{
    const std::string csv = to_csv(make_document(enumerate_cosets(5, 16)));
    EXPECT_EQ(csv.rfind("# total,16\n"), csv.size() - std::string("# total,16\n").size());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "representative,size");
}

TEST(Records, SortedByLeaderWhenRequested)
{
    const auto doc = make_document(enumerate_cosets(5, 3888), true);
    EXPECT_TRUE(std::is_sorted(doc.records.begin(), doc.records.end(),
                               [](const auto& a, const auto& b) { return *a.leader < *b.leader; }));
    for (const auto& r : doc.records)
        EXPECT_LE(*r.leader, r.representative);
}

TEST(Table, ListsEveryCoset)
{
    const std::string table = to_table(make_document(enumerate_cosets(5, 16)));
    EXPECT_NE(table.find("8 cosets"), std::string::npos);
    EXPECT_NE(table.find("total: 16"), std::string::npos);
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 8 + 3);
}
