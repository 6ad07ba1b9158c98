#pragma once

// JSON documents for structures and posets, and the SHA-256 digest used in reports.
// Needs nlohmann/json and OpenSSL (libcrypto).

#include "typesimp/error.hpp"
#include "typesimp/sset.hpp"
#include "typesimp/structure.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace typesimp
{

using ordered_json = nlohmann::ordered_json;

namespace detail
{

inline void reject_unknown_keys(const nlohmann::json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    if (!obj.is_object())
        throw invalid_argument(where + " must be a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.contains(key))
            throw invalid_argument(where + ": unknown key '" + key + "'");
}

inline std::vector<std::string> string_array(const nlohmann::json& v, const std::string& where)
{
    if (!v.is_array())
        throw invalid_argument(where + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v)
    {
        if (!e.is_string())
            throw invalid_argument(where + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

} // namespace detail

/// Parse a structure document: {"universe", "relations", "constants", "parameters"}.
inline finite_structure structure_from_json(const nlohmann::json& doc)
{
    detail::reject_unknown_keys(doc, { "universe", "relations", "constants", "parameters" }, "structure");
    if (!doc.contains("universe"))
        throw invalid_argument("structure: missing key 'universe'");
    finite_structure::spec s;
    s.universe = detail::string_array(doc.at("universe"), "universe");
    if (doc.contains("relations"))
    {
        const auto& rels = doc.at("relations");
        if (!rels.is_object())
            throw invalid_argument("relations must be an object");
        for (const auto& [name, r] : rels.items())
        {
            const auto where = "relation '" + name + "'";
            detail::reject_unknown_keys(r, { "arity", "tuples" }, where);
            if (!r.contains("arity") || !r.at("arity").is_number_integer())
                throw invalid_argument(where + ": 'arity' must be an integer");
            auto& entry = s.relations[name];
            entry.first = r.at("arity").get<int>();
            if (r.contains("tuples"))
            {
                if (!r.at("tuples").is_array())
                    throw invalid_argument(where + ": 'tuples' must be an array");
                for (const auto& t : r.at("tuples"))
                    entry.second.push_back(detail::string_array(t, where + " tuple"));
            }
        }
    }
    if (doc.contains("constants"))
    {
        const auto& cs = doc.at("constants");
        if (!cs.is_object())
            throw invalid_argument("constants must be an object");
        for (const auto& [name, v] : cs.items())
        {
            if (!v.is_string())
                throw invalid_argument("constant '" + name + "' must name a universe element");
            s.constants[name] = v.get<std::string>();
        }
    }
    if (doc.contains("parameters"))
        s.parameters = detail::string_array(doc.at("parameters"), "parameters");
    return finite_structure::make(s);
}

/// Canonical form: keys in the order universe, relations, constants, parameters;
/// relations and constants by name; tuples and parameters in universe order.
inline ordered_json structure_to_json(const finite_structure& m)
{
    ordered_json doc;
    doc["universe"] = m.universe();
    doc["relations"] = ordered_json::object();
    for (const auto& [name, r] : m.relations())
    {
        ordered_json rows = ordered_json::array();
        for (const auto& t : r.tuples)
        {
            ordered_json row = ordered_json::array();
            for (auto e : t)
                row.push_back(m.name_of(e));
            rows.push_back(std::move(row));
        }
        doc["relations"][name] = ordered_json{ { "arity", r.arity }, { "tuples", std::move(rows) } };
    }
    doc["constants"] = ordered_json::object();
    for (const auto& [name, e] : m.constants())
        doc["constants"][name] = m.name_of(e);
    doc["parameters"] = ordered_json::array();
    for (auto e : m.parameters())
        doc["parameters"].push_back(m.name_of(e));
    return doc;
}

inline std::string serialize(const ordered_json& j) { return j.dump(2) + "\n"; }

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw invalid_argument("cannot open '" + path + "'");
    return { std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>() };
}

inline nlohmann::json parse_json(const std::string& text, const std::string& what)
{
    try
    {
        return nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error& e)
    {
        throw invalid_argument("malformed JSON in " + what + ": " + e.what());
    }
}

inline finite_structure load_structure(const std::string& path)
{
    return structure_from_json(parse_json(read_file(path), path));
}

/// {"elements": [...], "less": [[a, b], ...]}.
inline poset_spec poset_from_json(const nlohmann::json& doc)
{
    detail::reject_unknown_keys(doc, { "elements", "less" }, "poset");
    poset_spec p;
    if (doc.contains("elements"))
        p.elements = detail::string_array(doc.at("elements"), "elements");
    if (doc.contains("less"))
    {
        if (!doc.at("less").is_array())
            throw invalid_argument("poset: 'less' must be an array of pairs");
        for (const auto& pair : doc.at("less"))
        {
            const auto v = detail::string_array(pair, "poset pair");
            if (v.size() != 2)
                throw invalid_argument("poset: each entry of 'less' must have two elements");
            p.less.emplace_back(v[0], v[1]);
        }
    }
    std::set<std::string> all(p.elements.begin(), p.elements.end());
    for (const auto& [a, b] : p.less)
    {
        all.insert(a);
        all.insert(b);
    }
    if (all.size() != p.elements.size() && !p.elements.empty())
        throw invalid_argument("poset: 'less' mentions elements missing from 'elements'");
    p.elements.assign(all.begin(), all.end());
    if (p.elements.empty())
        throw invalid_argument("poset: no elements");
    return p;
}

inline ordered_json poset_to_json(const poset_spec& p)
{
    ordered_json doc;
    doc["elements"] = p.elements;
    doc["less"] = ordered_json::array();
    for (const auto& [a, b] : p.less)
        doc["less"].push_back(ordered_json::array({ a, b }));
    return doc;
}

inline std::string sha256_hex(const std::string& data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i)
    {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 0xF];
    }
    return out;
}

} // namespace typesimp
