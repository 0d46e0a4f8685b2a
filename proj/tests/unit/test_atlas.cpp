#include "metaprop/atlas/demos.hpp"

#include <gtest/gtest.h>

using namespace metaprop;
using namespace metaprop::atlas;
using P = PropertyId;

namespace {

const Atlas& the_atlas() {
    static const Atlas a = Atlas::load(default_matrix_path());
    return a;
}

}  // namespace

TEST(Atlas, LoadsAndValidates) {
    EXPECT_EQ(the_atlas().edges().size(), 132u);
    EXPECT_EQ(the_atlas().count(Status::open), 6u);
    EXPECT_EQ(the_atlas().count(Status::implies) + the_atlas().count(Status::not_implies), 126u);
    EXPECT_EQ(validate(the_atlas()), std::vector<std::string>{});
}

TEST(Atlas, QueryExamples) {
    auto e = the_atlas().query(P::Rosser, P::EI);
    EXPECT_EQ(e.status, Status::implies);
    EXPECT_EQ(e.citation, "Theorem \"relation about EI\"(1)");
    e = the_atlas().query(P::EI, P::Rosser);
    EXPECT_EQ(e.status, Status::not_implies);
    EXPECT_EQ(e.citation, "Theorem \"EI does not imply REW\"(1)");
    e = the_atlas().query(P::TP, P::RI);
    EXPECT_EQ(e.status, Status::open);
    EXPECT_EQ(e.citation, "Question (1)");
    EXPECT_THROW(the_atlas().query(P::RI, P::RI), SamePair);
    // drawn red in one diagram, settled by a lemma
    EXPECT_EQ(the_atlas().query(P::REW, P::Creative).status, Status::implies);
}

TEST(Atlas, OpenEdgesAreTheSixQuestions) {
    std::set<std::pair<P, P>> open;
    for (const auto& e : the_atlas().edges())
        if (e.status == Status::open)
            open.insert({e.from, e.to});
    std::set<std::pair<P, P>> want{{P::TP, P::RI},   {P::Rosser, P::REW}, {P::RFD, P::TP},
                                   {P::RSS, P::TP},  {P::RFD, P::EHU},    {P::EHU, P::RSW}};
    EXPECT_EQ(open, want);
}

TEST(Atlas, Chains) {
    EXPECT_TRUE(the_atlas().has_chain({P::Rosser, P::EI, P::RI, P::EU}));
    EXPECT_TRUE(the_atlas().has_chain({P::RFD, P::RSS, P::RSW}));
    EXPECT_TRUE(the_atlas().has_chain({P::REW, P::RSW}));
    EXPECT_FALSE(the_atlas().has_chain({P::EU, P::RI}));
}

TEST(Atlas, ParseProperty) {
    EXPECT_EQ(parse_property("rosser"), P::Rosser);
    EXPECT_EQ(parse_property("0'"), P::ZeroPrime);
    EXPECT_EQ(parse_property("ZeroPrime"), P::ZeroPrime);
    EXPECT_THROW(parse_property("HU"), UnknownProperty);
}

TEST(Atlas, CitationRecognition) {
    EXPECT_EQ(cited_result("Theorem \"thm on EI\"(15)"), "Theorem \"thm on EI\"");
    EXPECT_TRUE(cites_known_result("Lemma \"REW imply creative\""));
    EXPECT_FALSE(cites_known_result("Theorem \"made up\"(1)"));
    EXPECT_TRUE(cites_open_question("Question (6)"));
    EXPECT_FALSE(cites_open_question("Question (7)"));
}

TEST(Atlas, RejectsBadData) {
    auto j = nlohmann::json::parse(std::ifstream(default_matrix_path()));
    auto broken = j;
    broken["edges"][0]["citation"] = "Theorem \"made up\"";
    EXPECT_FALSE(validate(Atlas::from_json(broken)).empty());
    broken = j;
    broken["edges"].erase(broken["edges"].begin() + 5);
    EXPECT_FALSE(validate(Atlas::from_json(broken)).empty());
    broken = j;
    broken["edges"].push_back(j["edges"][0]);
    EXPECT_THROW(Atlas::from_json(broken), BadAtlasData);
    broken = j;
    broken["version"] = 2;
    EXPECT_THROW(Atlas::from_json(broken), BadAtlasData);
    // flipping a black edge breaks closure somewhere
    broken = j;
    for (auto& e : broken["edges"])
        if (e["from"] == "EI" && e["to"] == "RI")
            e["status"] = "not_implies";
    auto problems = validate(Atlas::from_json(broken));
    EXPECT_FALSE(problems.empty());
}

TEST(Atlas, DotExport) {
    auto dot = export_dot(the_atlas());
    EXPECT_EQ(dot, export_dot(Atlas::load(default_matrix_path())));
    auto count = [&](const std::string& needle) {
        std::size_t c = 0;
        for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1))
            ++c;
        return c;
    };
    EXPECT_EQ(count(" -> "), 132u);
    EXPECT_EQ(count("color=green"), 6u);
    EXPECT_EQ(count("color=black"), 27u);
    EXPECT_EQ(count("[label="), 12u);
    EXPECT_NE(dot.find("ZeroPrime [label=\"0'\"]"), std::string::npos);
    auto focus = export_dot(the_atlas(), P::RSW);
    EXPECT_EQ(std::count(focus.begin(), focus.end(), '\n'), 2 + 12 + 22 + 1);
}

TEST(Demos, WitnessHintsNameExistingDemos) {
    std::set<std::string> names;
    for (const auto& d : demo_registry())
        names.insert(d.name);
    for (const auto& e : the_atlas().edges())
        if (e.witness_hint) {
            EXPECT_TRUE(names.count(*e.witness_hint)) << *e.witness_hint;
        }
    EXPECT_THROW(run_demo("nonexistent"), UnknownDemo);
}

TEST(Demos, AllPass) {
    for (const auto& d : demo_registry()) {
        auto r = run_demo(d.name);
        EXPECT_TRUE(r.passed) << d.name;
        for (const auto& line : r.lines)
            EXPECT_EQ(line.rfind("FAIL", 0), std::string::npos) << d.name << ": " << line;
    }
}
