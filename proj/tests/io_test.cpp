#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "gfe/io.hpp"

using gfe::BigInt;
using gfe::Solution;
namespace io = gfe::io;

TEST(SolutionJson, DecimalStringFields) {
    const Solution s{43, 8, 96222, 3, BigInt("30042907"), 2};
    const auto j = io::solution_to_json(s);
    EXPECT_EQ(j.dump(), R"({"x":"43","p":"8","y":"96222","q":"3","z":"30042907","r":"2"})");
    EXPECT_EQ(io::solution_from_json(j), s);
}

TEST(SolutionJson, RoundTripsArbitraryValues) {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 500; ++i) {
        const Solution s{BigInt(rng()) << (rng() % 200), static_cast<gfe::Exponent>(rng() % 1000),
                         BigInt(rng()), static_cast<gfe::Exponent>(rng() % 1000), BigInt(rng()) * rng(),
                         static_cast<gfe::Exponent>(rng() % 1000)};
        EXPECT_EQ(io::solution_from_json(io::Json::parse(io::solution_to_json(s).dump())), s);
    }
}

TEST(SolutionJson, AcceptsIntegersAndRejectsGarbage) {
    EXPECT_EQ(io::solution_from_json(io::Json::parse(R"({"x":2,"p":5,"y":7,"q":2,"z":3,"r":4})")),
              (Solution{2, 5, 7, 2, 3, 4}));
    EXPECT_THROW(io::solution_from_json(io::Json::parse(R"({"x":"2","p":"5","y":"7","q":"2","z":"3"})")),
                 gfe::ParseError);
    EXPECT_THROW(io::solution_from_json(io::Json::parse(R"({"x":"-2","p":"5","y":"7","q":"2","z":"3","r":"4"})")),
                 gfe::ParseError);
    EXPECT_THROW(io::solution_from_json(io::Json::parse(R"({"x":"2a","p":"5","y":"7","q":"2","z":"3","r":"4"})")),
                 gfe::ParseError);
    EXPECT_THROW(io::solution_from_json(io::Json::parse("[]")), gfe::ParseError);
}

TEST(Catalog, ParseAndVerify) {
    const auto cat = gfe::known_catalog();
    const auto j = io::catalog_to_json(cat);
    EXPECT_EQ(io::parse_catalog(j), cat);

    auto bad = j;
    bad[0]["r"] = "5";
    EXPECT_THROW(io::parse_catalog(bad), gfe::CatalogCorrupt);
    EXPECT_THROW(io::parse_catalog(io::Json::object()), gfe::ParseError);
}

TEST(Catalog, LoadFromFile) {
    const std::string path = testing::TempDir() + "gfe_catalog.json";
    {
        std::ofstream out(path);
        out << io::catalog_to_json(gfe::known_catalog()).dump(2);
    }
    EXPECT_EQ(io::load_catalog(path), gfe::known_catalog());
    {
        std::ofstream out(path);
        out << "[{";
    }
    EXPECT_THROW(io::load_catalog(path), gfe::ParseError);
    std::remove(path.c_str());
    EXPECT_THROW(io::load_catalog(path), gfe::ParseError);
}

TEST(OutputRecord, SchemaRoundTrip) {
    io::OutputRecord rec{"bound"};
    rec.inputs["z"] = "3";
    rec.inputs["r"] = "4";
    rec.outputs["lower_bound_L"] = 0.028766863781514204;
    rec.outputs["wong_ok"] = true;
    rec.status = io::RecordStatus::contradiction;
    const std::string text = io::dump(rec);
    EXPECT_EQ(text,
              R"({"command":"bound","inputs":{"z":"3","r":"4"},"outputs":{"lower_bound_L":0.028766863781514204,"wong_ok":true},"status":"contradiction"})");
    EXPECT_EQ(io::record_from_json(io::Json::parse(text)), rec);
    EXPECT_EQ(io::record_from_json(io::Json::parse(text)).outputs["lower_bound_L"].get<double>(),
              0.028766863781514204);
}

TEST(OutputRecord, RejectsMalformed) {
    EXPECT_THROW(io::record_from_json(io::Json::parse(R"({"command":"x","inputs":{},"outputs":{}})")),
                 gfe::ParseError);
    EXPECT_THROW(io::record_from_json(
                     io::Json::parse(R"({"command":"x","inputs":{"a":[1]},"outputs":{},"status":"ok"})")),
                 gfe::ParseError);
    EXPECT_THROW(
        io::record_from_json(io::Json::parse(R"({"command":"x","inputs":{},"outputs":{},"status":"maybe"})")),
        gfe::ParseError);
}

TEST(OutputRecord, NewlineDelimitedStream) {
    std::stringstream ss;
    std::vector<io::OutputRecord> recs;
    for (int i = 0; i < 3; ++i) {
        io::OutputRecord r{"table1"};
        r.outputs["i"] = i;
        recs.push_back(r);
        ss << io::dump(r) << '\n';
    }
    EXPECT_EQ(io::parse_records(ss), recs);
}

TEST(Reports, SweepRecordCountsSteps) {
    const auto sum = gfe::consistency_sweep(gfe::known_catalog());
    const auto rec = io::sweep_record(sum);
    EXPECT_EQ(rec.status, io::RecordStatus::ok);
    EXPECT_EQ(rec.outputs["solutions"], 9);
    EXPECT_EQ(rec.outputs["final_pass"], 9);
    EXPECT_EQ(rec.outputs["contradictions"], 0);
    EXPECT_NO_THROW(io::record_from_json(io::to_json(rec)));
}
