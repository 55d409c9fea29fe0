#pragma once

// JSON, CSV and plain-table encodings of a coset partition.
//
// JSON: {"q", "n", "cosets": [{"representative", "size", "leader"?}], "total"}.
// Integers above 2^53 are written as decimal strings.

#include "cycloset/cosets.hpp"

#include <json.hpp>

#include <algorithm>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace cycloset {

struct OutputRecord {
    u64 representative = 0;
    std::optional<u64> leader;
    u64 size = 1;

    bool operator==(const OutputRecord&) const = default;
};

struct PartitionDocument {
    u64 q = 0;
    u64 n = 1;
    std::vector<OutputRecord> records;

    u64 total() const
    {
        u64 sum = 0;
        for (const auto& r : records)
            sum += r.size;
        return sum;
    }

    CosetPartition to_partition() const
    {
        CosetPartition p{q, n, {}};
        for (const auto& r : records)
            p.cosets.push_back({q, n, r.representative, r.size, std::nullopt});
        p.sort_by_representative();
        return p;
    }
};

/// Records sorted by representative, or by leader when leaders are requested.
inline PartitionDocument make_document(const CosetPartition& partition, bool with_leaders = false)
{
    PartitionDocument doc{partition.q, partition.n, {}};
    doc.records.reserve(partition.cosets.size());
    for (const auto& c : partition.cosets)
        doc.records.push_back({c.rep, with_leaders ? std::optional<u64>(leader(c)) : std::nullopt, c.size});
    if (with_leaders)
        std::sort(doc.records.begin(), doc.records.end(),
                  [](const OutputRecord& a, const OutputRecord& b) { return *a.leader < *b.leader; });
    else
        std::sort(doc.records.begin(), doc.records.end(),
                  [](const OutputRecord& a, const OutputRecord& b) { return a.representative < b.representative; });
    return doc;
}

namespace detail {

inline constexpr u64 json_safe_integer = u64{1} << 53;

inline nlohmann::ordered_json json_integer(u64 value)
{
    if (value > json_safe_integer)
        return std::to_string(value);
    return value;
}

inline u64 read_integer(const nlohmann::json& value, const char* field)
{
    if (value.is_number_unsigned())
        return value.get<u64>();
    if (value.is_number_integer() && value.get<i64>() >= 0)
        return static_cast<u64>(value.get<i64>());
    if (value.is_string()) {
        const std::string& text = value.get_ref<const std::string&>();
        std::size_t used = 0;
        u64 parsed = 0;
        try {
            parsed = std::stoull(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == text.size() && used > 0)
            return parsed;
    }
    fail(errc::precondition, std::string("malformed integer in field ") + field);
}

} // namespace detail

inline std::string to_json(const PartitionDocument& doc, int indent = 2)
{
    using detail::json_integer;
    nlohmann::ordered_json root;
    root["q"] = json_integer(doc.q);
    root["n"] = json_integer(doc.n);
    auto& cosets = root["cosets"] = nlohmann::ordered_json::array();
    for (const auto& r : doc.records) {
        nlohmann::ordered_json item;
        item["representative"] = json_integer(r.representative);
        item["size"] = json_integer(r.size);
        if (r.leader)
            item["leader"] = json_integer(*r.leader);
        cosets.push_back(std::move(item));
    }
    root["total"] = json_integer(doc.total());
    return root.dump(indent) + "\n";
}

inline PartitionDocument parse_json(const std::string& text)
{
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::precondition, std::string("invalid JSON: ") + e.what());
    }
    require(root.is_object() && root.contains("q") && root.contains("n") && root.contains("cosets") &&
                root["cosets"].is_array(),
            errc::precondition, "JSON partition needs q, n and a cosets array");
    PartitionDocument doc{detail::read_integer(root["q"], "q"), detail::read_integer(root["n"], "n"), {}};
    for (const auto& item : root["cosets"]) {
        require(item.is_object() && item.contains("representative") && item.contains("size"), errc::precondition,
                "coset record needs representative and size");
        OutputRecord r{detail::read_integer(item["representative"], "representative"), std::nullopt,
                       detail::read_integer(item["size"], "size")};
        if (item.contains("leader"))
            r.leader = detail::read_integer(item["leader"], "leader");
        doc.records.push_back(r);
    }
    if (root.contains("total"))
        require(detail::read_integer(root["total"], "total") == doc.total(), errc::precondition,
                "total does not match the sum of sizes");
    return doc;
}

/// Header row, one row per coset, then a "# total,<sum>" trailer.
inline std::string to_csv(const PartitionDocument& doc)
{
    const bool leaders = !doc.records.empty() && doc.records.front().leader.has_value();
    std::ostringstream out;
    out << "representative,size" << (leaders ? ",leader" : "") << "\n";
    for (const auto& r : doc.records) {
        out << r.representative << ',' << r.size;
        if (leaders)
            out << ',' << *r.leader;
        out << "\n";
    }
    out << "# total," << doc.total() << "\n";
    return out.str();
}

inline std::vector<OutputRecord> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    require(static_cast<bool>(std::getline(in, line)), errc::precondition, "empty CSV");
    const bool leaders = line == "representative,size,leader";
    require(leaders || line == "representative,size", errc::precondition, "unexpected CSV header");
    std::vector<OutputRecord> records;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#')
            continue;
        std::istringstream row(line);
        OutputRecord r;
        char comma = 0;
        row >> r.representative >> comma >> r.size;
        if (leaders) {
            u64 value = 0;
            row >> comma >> value;
            r.leader = value;
        }
        require(static_cast<bool>(row), errc::precondition, "malformed CSV row");
        records.push_back(r);
    }
    return records;
}

inline std::string to_table(const PartitionDocument& doc)
{
    const bool leaders = !doc.records.empty() && doc.records.front().leader.has_value();
    std::size_t width = std::string("representative").size();
    for (const auto& r : doc.records)
        width = std::max(width, std::to_string(r.representative).size());
    std::ostringstream out;
    out << "q = " << doc.q << ", n = " << doc.n << ", " << doc.records.size() << " cosets\n";
    out << std::setw(static_cast<int>(width)) << "representative" << "  " << std::setw(static_cast<int>(width))
        << "size";
    if (leaders)
        out << "  " << std::setw(static_cast<int>(width)) << "leader";
    out << "\n";
    for (const auto& r : doc.records) {
        out << std::setw(static_cast<int>(width)) << r.representative << "  " << std::setw(static_cast<int>(width))
            << r.size;
        if (leaders)
            out << "  " << std::setw(static_cast<int>(width)) << *r.leader;
        out << "\n";
    }
    out << "total: " << doc.total() << "\n";
    return out.str();
}

} // namespace cycloset
