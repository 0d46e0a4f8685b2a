#pragma once

// The implication matrix between the twelve properties of RE theories.
// Edge statuses are curated data loaded from atlas_matrix.json; nothing
// here derives an edge.

#include "metaprop/natural.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace metaprop::atlas {

enum class PropertyId { Rosser, EI, RI, TP, EHU, EU, Creative, ZeroPrime, REW, RFD, RSS, RSW };

inline constexpr std::size_t property_count = 12;

inline const std::array<PropertyId, property_count>& all_properties() {
    using P = PropertyId;
    static const std::array<PropertyId, property_count> ps{P::Rosser,    P::EI,  P::RI,  P::TP,  P::EHU, P::EU,
                                                           P::Creative,  P::ZeroPrime, P::REW, P::RFD, P::RSS, P::RSW};
    return ps;
}

inline const char* to_string(PropertyId p) {
    static const char* names[] = {"Rosser", "EI", "RI", "TP", "EHU", "EU", "Creative", "ZeroPrime", "REW", "RFD", "RSS", "RSW"};
    return names[static_cast<int>(p)];
}

// DOT label; 0' for the degree property
inline std::string display_name(PropertyId p) { return p == PropertyId::ZeroPrime ? "0'" : to_string(p); }

class UnknownProperty : public Error {
public:
    using Error::Error;
};

class SamePair : public Error {
public:
    using Error::Error;
};

class BadAtlasData : public Error {
public:
    using Error::Error;
};

// Accepts the canonical names case-insensitively, plus 0' and 0prime.
inline PropertyId parse_property(const std::string& s) {
    std::string low;
    for (char c : s)
        low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (low == "0'" || low == "0prime" || low == "zero'")
        return PropertyId::ZeroPrime;
    for (auto p : all_properties()) {
        std::string name = to_string(p);
        std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
        if (name == low)
            return p;
    }
    throw UnknownProperty("unknown property: " + s);
}

enum class Status { implies, not_implies, open };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::implies: return "implies";
    case Status::not_implies: return "not_implies";
    case Status::open: return "open";
    }
    return "?";
}

inline Status parse_status(const std::string& s) {
    if (s == "implies")
        return Status::implies;
    if (s == "not_implies")
        return Status::not_implies;
    if (s == "open")
        return Status::open;
    throw BadAtlasData("unknown status: " + s);
}

inline const char* color(Status s) {
    switch (s) {
    case Status::implies: return "black";
    case Status::not_implies: return "red";
    case Status::open: return "green";
    }
    return "black";
}

struct Edge {
    PropertyId from, to;
    Status status;
    std::string citation;
    std::string summary;  // the summary-theorem item covering the pair, when citation names another result
    std::optional<std::string> witness_hint;
};

// Labelled results of the source document that a citation may name. The
// summary theorem for RFD, RSS and RSW has no label of its own.
inline const std::set<std::string>& known_results() {
    static const std::set<std::string> s{
        "Fact \"fact on Q\"", "Fact \"key fact about R\"", "Lemma \"comparision lemma\"", "Theorem \"R is Rosser\"",
        "Theorem \"EI thm\"", "Fact \"fact on creative\"", "Theorem \"relation about EI\"", "Lemma \"RFD imply RSS\"",
        "Theorem \"property of R\"", "Theorem \"EHU CT\"", "Proposition \"coro of R-like\"", "Fact \"special rf\"",
        "Example \"Putnam E\"", "Theorem \"R-like imply HU\"", "Theorem \"Rosser not imply R-like\"",
        "Theorem \"J thm\"", "Theorem \"EI not R\"", "Theorem \"Shoenfield first\"", "Theorem \"thm on TP original\"",
        "Theorem \"RBM key thm\"", "Theorem \"Shoenfield EU\"", "Theorem \"Thm on EHU\"", "Theorem \"EHU degree\"",
        "Theorem \"REW not imply R-like\"", "Theorem \"Shoefield theory\"", "Theorem \"thm on R-like\"",
        "Fact \"fact on Succ\"", "Theorem \"thm on Succ\"", "Lemma \"Rosser implies RSS\"",
        "Theorem \"EI does not imply REW\"", "Theorem \"EI BRI\"", "Theorem \"BRI HU\"",
        "Theorem \"creative not imply EU\"", "Theorem \"Vaught test\"", "Fact \"EU CT\"", "Theorem \"REW not imply EU\"",
        "Theorem \"thm on Rosser\"", "Fact \"universal recursive set\"", "Theorem \"RSS imply RI\"",
        "Theorem \"thm on EI\"", "Example \"EU not imply TP\"", "Example \"Ehrenfeucht\"", "Theorem \"EHU not imply RI\"",
        "Theorem \"thm on RI\"", "Lemma \"RSW imply undecidable\"", "Theorem \"REW not imply TP\"",
        "Theorem \"thm on TP\"", "Lemma \"REW imply creative\"", "Theorem \"RSS not imply EHU\"",
        "Theorem \"thm on EHU\"", "Fact \"fact on EU\"", "Theorem \"thm on EU\"", "Fact \"tt-degree in zero sharp\"",
        "Theorem \"zero sharp does not imply creative\"", "Theorem \"thm on creative\"", "Theorem \"thm on zero\"",
        "Theorem \"thm on REW\"", "the unlabeled summary theorem on RFD, RSS and RSW",
    };
    return s;
}

// The result a citation names, without its item number: `Theorem "x"(3)` -> `Theorem "x"`.
inline std::string cited_result(const std::string& citation) {
    auto close = citation.rfind('"');
    if (close != std::string::npos && citation.find('"') < close)
        return citation.substr(0, close + 1);
    auto paren = citation.find('(');
    return paren == std::string::npos ? citation : citation.substr(0, paren);
}

inline bool cites_known_result(const std::string& citation) { return known_results().count(cited_result(citation)) > 0; }

// Open questions 1..6 of the closing question list.
inline bool cites_open_question(const std::string& citation) {
    return citation.size() == 12 && citation.rfind("Question (", 0) == 0 && citation[10] >= '1' && citation[10] <= '6' &&
           citation[11] == ')';
}

class Atlas {
public:
    static Atlas from_json(const nlohmann::json& j) {
        Atlas a;
        if (!j.contains("version") || j["version"] != 1)
            throw BadAtlasData("unsupported atlas version");
        std::vector<PropertyId> props;
        for (const auto& p : j.at("properties"))
            props.push_back(parse_property(p.get<std::string>()));
        if (props.size() != property_count || !std::equal(props.begin(), props.end(), all_properties().begin()))
            throw BadAtlasData("property list differs from the twelve properties");
        for (const auto& e : j.at("edges")) {
            Edge edge{parse_property(e.at("from")), parse_property(e.at("to")), parse_status(e.at("status")),
                      e.at("citation"), e.value("summary", ""), std::nullopt};
            if (e.contains("witness_hint"))
                edge.witness_hint = e["witness_hint"].get<std::string>();
            if (edge.from == edge.to)
                throw BadAtlasData("self edge for " + std::string(to_string(edge.from)));
            if (!a.edges_.emplace(std::pair{edge.from, edge.to}, edge).second)
                throw BadAtlasData("duplicate edge " + std::string(to_string(edge.from)) + "->" + to_string(edge.to));
        }
        return a;
    }

    static Atlas load(const std::string& path) {
        std::ifstream in(path);
        if (!in)
            throw BadAtlasData("cannot open " + path);
        try {
            return from_json(nlohmann::json::parse(in));
        } catch (const nlohmann::json::exception& e) {
            throw BadAtlasData(std::string("malformed atlas data: ") + e.what());
        }
    }

    const Edge& query(PropertyId p, PropertyId q) const {
        if (p == q)
            throw SamePair("query needs two different properties");
        auto it = edges_.find({p, q});
        if (it == edges_.end())
            throw BadAtlasData("missing edge " + std::string(to_string(p)) + "->" + to_string(q));
        return it->second;
    }

    // Edges in property order.
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (const auto& [k, e] : edges_)
            out.push_back(e);
        return out;
    }

    std::size_t count(Status s) const {
        return std::count_if(edges_.begin(), edges_.end(), [s](const auto& kv) { return kv.second.status == s; });
    }

    // Directed path along implies edges through every listed property in turn.
    bool has_chain(const std::vector<PropertyId>& chain) const {
        for (std::size_t k = 0; k + 1 < chain.size(); ++k)
            if (query(chain[k], chain[k + 1]).status != Status::implies)
                return false;
        return true;
    }

private:
    std::map<std::pair<PropertyId, PropertyId>, Edge> edges_;
};

// Closure checks on the data, for distinct x, y, z:
//   x => y, y => z          forces x => z
//   x => y, x =/=> z        forces y =/=> z
//   y => z, x =/=> z        forces x =/=> y
inline std::vector<std::string> closure_violations(const Atlas& a) {
    std::vector<std::string> bad;
    auto st = [&](PropertyId p, PropertyId q) { return a.query(p, q).status; };
    auto name = [](PropertyId x, PropertyId y, PropertyId z) {
        return std::string(to_string(x)) + "," + to_string(y) + "," + to_string(z);
    };
    for (auto x : all_properties())
        for (auto y : all_properties())
            for (auto z : all_properties()) {
                if (x == y || y == z || x == z)
                    continue;
                if (st(x, y) == Status::implies && st(y, z) == Status::implies && st(x, z) != Status::implies)
                    bad.push_back("transitivity " + name(x, y, z));
                if (st(x, y) == Status::implies && st(x, z) == Status::not_implies && st(y, z) != Status::not_implies)
                    bad.push_back("upper contrapositive " + name(x, y, z));
                if (st(y, z) == Status::implies && st(x, z) == Status::not_implies && st(x, y) != Status::not_implies)
                    bad.push_back("lower contrapositive " + name(x, y, z));
            }
    return bad;
}

// Problems with the matrix as a whole; empty when it is total and well cited.
inline std::vector<std::string> validate(const Atlas& a) {
    std::vector<std::string> problems;
    for (auto p : all_properties())
        for (auto q : all_properties()) {
            if (p == q)
                continue;
            const Edge* e = nullptr;
            try {
                e = &a.query(p, q);
            } catch (const BadAtlasData& err) {
                problems.push_back(err.what());
                continue;
            }
            std::string pair = std::string(to_string(p)) + "->" + to_string(q);
            if (e->status == Status::open ? !cites_open_question(e->citation) : !cites_known_result(e->citation))
                problems.push_back(pair + ": citation not recognized: " + e->citation);
            if (!e->summary.empty() && !cites_known_result(e->summary))
                problems.push_back(pair + ": summary not recognized: " + e->summary);
        }
    if (problems.empty())
        for (auto& v : closure_violations(a))
            problems.push_back(std::move(v));
    return problems;
}

// ---- DOT -----------------------------------------------------------------------------

// Whole graph, or the edges touching `focus`. Output depends only on the data.
inline std::string export_dot(const Atlas& a, std::optional<PropertyId> focus = std::nullopt) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\')
                q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "digraph atlas {\n";
    out << "  node [shape=box];\n";
    for (auto p : all_properties())
        out << "  " << to_string(p) << " [label=" << quote(display_name(p)) << "];\n";
    for (const auto& e : a.edges()) {
        if (focus && e.from != *focus && e.to != *focus)
            continue;
        out << "  " << to_string(e.from) << " -> " << to_string(e.to) << " [color=" << color(e.status)
            << ", tooltip=" << quote(e.citation) << "];\n";
    }
    out << "}\n";
    return out.str();
}

// ---- data location ---------------------------------------------------------------

#ifndef METAPROP_DATA_DIR
#define METAPROP_DATA_DIR "data"
#endif

// $METAPROP_DATA_DIR overrides the directory fixed at build time.
inline std::string default_matrix_path() {
    const char* env = std::getenv("METAPROP_DATA_DIR");
    return std::string(env && *env ? env : METAPROP_DATA_DIR) + "/atlas_matrix.json";
}

inline nlohmann::json to_json(const Edge& e) {
    nlohmann::json j{{"from", to_string(e.from)},
                     {"to", to_string(e.to)},
                     {"status", to_string(e.status)},
                     {"citation", e.citation}};
    if (!e.summary.empty())
        j["summary"] = e.summary;
    if (e.witness_hint)
        j["witness_hint"] = *e.witness_hint;
    return j;
}

}  // namespace metaprop::atlas
