#pragma once

// Command dispatch for the typesimp tool. run() never exits the process, so tests
// can drive it in-process.
//
// Exit codes: 0 when the queried property holds (or an enumeration succeeds),
// 1 when a checked property fails, 2 on input errors. A report is written to `out`
// for exit codes 0 and 1; errors go to `err` as a single line.

#include "typesimp/error.hpp"
#include "typesimp/io.hpp"
#include "typesimp/lifting.hpp"
#include "typesimp/sset.hpp"
#include "typesimp/structure.hpp"
#include "typesimp/type_algebra.hpp"
#include "typesimp/type_calculus.hpp"
#include "typesimp/type_space.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace typesimp
{

inline constexpr const char* version_string = "0.1.0";

namespace cli
{

struct options
{
    std::string structure;
    std::optional<int> depth;
    std::string mode = "count";
    std::size_t budget = 1'000'000;
    std::size_t max_universe = default_max_universe;
    std::vector<std::string> witnesses;
    std::optional<int> steps;
    std::vector<std::string> drop_relations;
    std::optional<std::string> params_keep;
    std::string preset;
    std::string poset;
    std::string subset;
    int level = 1;
    std::string index_class_name = "all";
};

struct outcome
{
    ordered_json result = ordered_json::object();
    ordered_json checks = ordered_json::array();
    bool holds = true;

    void check(const std::string& name, bool passed)
    {
        checks.push_back(ordered_json{ { "name", name }, { "passed", passed } });
    }

    [[nodiscard]] bool all_checks_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.at("passed").template get<bool>(); });
    }
};

inline std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

class session
{
public:
    explicit session(options o) : opt_{ std::move(o) } {}

    [[nodiscard]] const options& opt() const { return opt_; }

    const finite_structure& structure()
    {
        if (!structure_)
        {
            if (opt_.structure.empty())
                throw invalid_argument("--structure is required for this command");
            structure_.emplace(load_structure(opt_.structure));
            input_ = structure_to_json(*structure_);
        }
        return *structure_;
    }

    void set_input(ordered_json doc) { input_ = std::move(doc); }
    [[nodiscard]] const ordered_json& input() const { return input_; }

    [[nodiscard]] type_space_options space_options() const { return { opt_.budget, opt_.max_universe }; }

    type_space space(int depth)
    {
        if (depth < 1)
            throw invalid_argument("--depth must be positive");
        return type_space::build(structure(), depth, space_options());
    }

    int universe() { return static_cast<int>(structure().size()); }

    /// --depth as a family depth, defaulting to full depth |universe|.
    int family_depth()
    {
        const int d = opt_.depth.value_or(universe());
        if (d < 1)
            throw invalid_argument("--depth must be positive");
        return d;
    }

    [[nodiscard]] index_class cls() const
    {
        if (opt_.index_class_name == "all")
            return index_class::all;
        if (opt_.index_class_name == "monotone")
            return index_class::monotone;
        throw invalid_argument("--index-class must be 'all' or 'monotone'");
    }

    [[nodiscard]] solve_mode mode() const
    {
        if (opt_.mode == "one")
            return solve_mode::find_one;
        if (opt_.mode == "count")
            return solve_mode::count;
        if (opt_.mode == "enumerate")
            return solve_mode::enumerate;
        throw invalid_argument("--mode must be one of one, count, enumerate");
    }

    element element_named(const std::string& name) { return structure().index_of(name); }

    std::vector<element> witness_elements()
    {
        std::vector<element> out;
        for (const auto& w : opt_.witnesses)
            out.push_back(element_named(w));
        return out;
    }

    std::vector<element> subset_elements()
    {
        if (opt_.subset.empty())
            throw invalid_argument("--subset is required for this command");
        std::vector<element> out;
        for (const auto& s : split_csv(opt_.subset))
            out.push_back(element_named(s));
        if (out.empty())
            throw invalid_argument("--subset must name at least one element");
        return out;
    }

    reduct_result make_reduct(const type_space& t)
    {
        const auto& m = structure();
        std::set<std::string> keep_rel;
        for (const auto& [name, r] : m.relations())
            keep_rel.insert(name);
        for (const auto& d : opt_.drop_relations)
        {
            if (!keep_rel.contains(d))
                throw invalid_argument("--drop-relation: no relation named '" + d + "'");
            keep_rel.erase(d);
        }
        std::set<std::string> keep_const;
        for (const auto& [name, c] : m.constants())
            keep_const.insert(name);
        std::set<std::string> keep_params;
        if (opt_.params_keep)
            for (const auto& p : split_csv(*opt_.params_keep))
                keep_params.insert(p);
        else
            for (auto b : m.parameters())
                keep_params.insert(m.name_of(b));
        return reduct(t, keep_rel, keep_const, keep_params, space_options());
    }

private:
    options opt_;
    std::optional<finite_structure> structure_;
    ordered_json input_ = ordered_json::object();
};

inline ordered_json names_of(const finite_structure& m, const tuple& t)
{
    ordered_json a = ordered_json::array();
    for (auto e : t)
        a.push_back(m.name_of(e));
    return a;
}

/// {"(c)": "(a,c)", ...} per level.
inline ordered_json transformation_json(const natural_transformation& w)
{
    ordered_json levels = ordered_json::array();
    for (int n = 1; n <= w.depth(); ++n)
    {
        ordered_json values = ordered_json::object();
        for (std::size_t x = 0; x < w.source().level_size(n); ++x)
            values[w.source().label(n, x)] = w.target().label(n, w(n, x));
        levels.push_back(ordered_json{ { "level", n }, { "values", std::move(values) } });
    }
    return levels;
}

inline ordered_json family_json(const section_family& f)
{
    return ordered_json{ { "head", f.space().label(1, f.head()) }, { "levels", transformation_json(f.pi()) } };
}

// ---- commands ----

inline outcome cmd_orbits(session& s)
{
    outcome o;
    const int depth = s.opt().depth.value_or(3);
    const auto t = s.space(depth);
    const auto& m = t.structure();
    o.result["depth"] = depth;
    o.result["group_order"] = t.group().order();
    ordered_json levels = ordered_json::array();
    for (int n = 1; n <= depth; ++n)
    {
        ordered_json orbits = ordered_json::array();
        for (std::size_t r = 0; r < t.orbit_count(n); ++r)
            orbits.push_back(ordered_json{ { "id", r },
                                           { "representative", names_of(m, t.representative(n, r)) },
                                           { "size", t.orbit_size(n, r) } });
        const auto b = burnside_count(t.group(), n);
        levels.push_back(ordered_json{
            { "level", n }, { "count", t.orbit_count(n) }, { "burnside", b }, { "orbits", std::move(orbits) } });
        o.check("burnside_level_" + std::to_string(n), b == t.orbit_count(n));
    }
    o.result["counts"] = ordered_json::array();
    for (int n = 1; n <= depth; ++n)
        o.result["counts"].push_back(t.orbit_count(n));
    o.result["levels"] = std::move(levels);
    return o;
}

inline outcome cmd_automorphisms(session& s)
{
    outcome o;
    const auto& m = s.structure();
    const auto g = automorphisms(m, s.opt().max_universe);
    o.result["order"] = g.order();
    o.result["generators"] = ordered_json::array();
    for (const auto& p : generating_set(g))
        o.result["generators"].push_back(cycle_notation(m, p));
    o.result["elements"] = ordered_json::array();
    bool all_auto = true;
    for (const auto& p : g.elements())
    {
        o.result["elements"].push_back(cycle_notation(m, p));
        all_auto = all_auto && is_automorphism(m, p);
    }
    o.check("elements_are_automorphisms", all_auto);
    return o;
}

inline outcome cmd_sections(session& s)
{
    outcome o;
    const int d = s.family_depth();
    const auto t = s.space(d + 1);
    const auto mode = s.mode();
    const auto r = enumerate_coherent_families(t, d, mode, s.cls());
    o.result["depth"] = d;
    o.result["index_class"] = to_string(s.cls());
    o.result["mode"] = s.opt().mode;
    o.result["count"] = r.count;
    if (mode != solve_mode::count)
    {
        o.result["families"] = ordered_json::array();
        for (const auto& f : r.families)
            o.result["families"].push_back(family_json(f));
    }
    if (r.count == 0)
        o.result["deepest_level"] = r.deepest_level;
    if (mode == solve_mode::find_one)
        o.holds = r.count > 0;
    return o;
}

inline outcome cmd_invariant_witnesses(session& s)
{
    outcome o;
    const int depth = s.opt().depth.value_or(s.universe() + 1);
    const auto t = s.space(depth);
    o.result["depth"] = depth;
    o.result["witnesses"] = ordered_json::array();
    for (auto a : invariant_witnesses(t))
        o.result["witnesses"].push_back(t.structure().name_of(a));
    return o;
}

inline outcome cmd_bijection_check(session& s)
{
    outcome o;
    const auto t = s.space(s.universe() + 1);
    const auto r = witness_family_bijection(t, s.cls());
    o.result["depth"] = r.depth;
    o.result["witnesses"] = r.witnesses.size();
    o.result["families"] = r.families.size();
    o.result["matched"] = r.matched;
    o.result["pairing"] = ordered_json::array();
    for (std::size_t i = 0; i < r.witnesses.size(); ++i)
        o.result["pairing"].push_back(ordered_json{
            { "witness", t.structure().name_of(r.witnesses[i]) },
            { "family", r.pairing[i] ? ordered_json(*r.pairing[i]) : ordered_json(nullptr) } });
    o.check("pairing_is_bijection", r.matched);
    o.holds = r.matched;
    return o;
}

inline outcome cmd_stable_check(session& s)
{
    outcome o;
    const int d = s.family_depth();
    const auto t = s.space(d + 1);
    const auto r = stable_check(t, d, s.cls());
    o.result["depth"] = d;
    o.result["stable"] = r.stable;
    o.result["heads_covered"] = r.heads_covered.size();
    o.result["heads_total"] = r.heads_total;
    o.result["covered_heads"] = ordered_json::array();
    for (auto h : r.heads_covered)
        o.result["covered_heads"].push_back(t.label(1, h));
    o.result["by_lifting"] = r.by_lifting;
    o.result["by_heads"] = r.by_heads;
    o.result["witness_liftings"] = ordered_json::array();
    for (const auto& f : r.witness_liftings)
        o.result["witness_liftings"].push_back(family_json(f));
    o.check("formulations_agree", r.formulations_agree);
    o.holds = r.stable;
    return o;
}

inline outcome cmd_relative_stable_check(session& s)
{
    outcome o;
    const int d = s.family_depth();
    const auto t = s.space(d + 1);
    const auto red = s.make_reduct(t);
    const auto r = relative_stable_check(t, red, d);
    o.result["depth"] = d;
    o.result["reduct"] = structure_to_json(red.reduced);
    o.result["exists"] = r.exists;
    if (r.witness)
        o.result["witness"] = transformation_json(r.witness->map());
    else
        o.result["deepest_level"] = r.deepest_level;
    o.check("reduct_morphism_natural", verify_naturality(red.rho).ok());
    o.holds = r.exists;
    return o;
}

inline std::vector<section_family> witness_families(session& s, const type_space& t, int d)
{
    std::vector<section_family> out;
    for (auto a : s.witness_elements())
        out.push_back(section_from_witness(t, a, d, s.cls()));
    return out;
}

inline outcome cmd_product(session& s)
{
    outcome o;
    if (s.opt().witnesses.size() < 2 || s.opt().witnesses.size() > 3)
        throw invalid_argument("product needs two --witness flags (three to also check associativity)");
    const int d = s.family_depth();
    const auto t = s.space(d + 1);
    const auto fams = witness_families(s, t, d);
    const auto pr = product_type(fams[0], fams[1]);
    o.result["depth"] = d;
    o.result["factors"] = s.opt().witnesses;
    o.result["two_type"] = t.label(2, pr.two_type);
    o.result["composite"] = transformation_json(pr.family.composite());
    if (fams.size() == 3)
    {
        const bool assoc = check_associativity(fams[0], fams[1], fams[2]);
        o.result["associative"] = assoc;
        o.check("associativity", assoc);
        o.holds = assoc;
    }
    return o;
}

inline outcome cmd_morley(session& s)
{
    outcome o;
    if (s.opt().witnesses.size() != 1)
        throw invalid_argument("morley needs exactly one --witness");
    const int d = s.family_depth();
    const int k = s.opt().steps.value_or(2);
    const auto t = s.space(d + 1);
    const auto p = witness_families(s, t, d).front();
    const auto m = morley(p, k);
    const bool ind = check_indiscernible(t, k, m);
    o.result["depth"] = d;
    o.result["steps"] = k;
    o.result["orbit"] = t.label(k, m);
    o.result["indiscernible"] = ind;
    o.check("indiscernible", ind);
    o.holds = ind;
    return o;
}

inline outcome cmd_genstable(session& s)
{
    outcome o;
    const int d = s.family_depth();
    const auto t = s.space(d + 1);
    std::vector<element> ws = s.witness_elements();
    if (ws.empty())
        for (auto a : invariant_witnesses(t))
            ws.push_back(a);
    std::vector<section_family> fams;
    for (auto a : ws)
        fams.push_back(section_from_witness(t, a, d, s.cls()));
    o.result["depth"] = d;
    o.result["families"] = ordered_json::array();
    bool all = true;
    for (std::size_t i = 0; i < fams.size(); ++i)
    {
        const bool gs = check_generically_stable(fams[i]);
        all = all && gs;
        o.result["families"].push_back(
            ordered_json{ { "witness", t.structure().name_of(ws[i]) }, { "generically_stable", gs } });
    }
    o.result["commuting_pairs"] = ordered_json::array();
    bool all_commute = true;
    for (std::size_t i = 0; i < fams.size(); ++i)
        for (std::size_t j = 0; j < fams.size(); ++j)
        {
            const bool c = check_stable_commutation(fams[i], fams[j]);
            all_commute = all_commute && c;
            o.result["commuting_pairs"].push_back(ordered_json{ { "p", t.structure().name_of(ws[i]) },
                                                                { "q", t.structure().name_of(ws[j]) },
                                                                { "commute", c } });
        }
    o.check("generically_stable", all);
    o.check("pairwise_commutation", all_commute);
    o.holds = all && all_commute;
    return o;
}

inline outcome cmd_reduct(session& s)
{
    outcome o;
    const int depth = s.opt().depth.value_or(3);
    const auto t = s.space(depth);
    const auto red = s.make_reduct(t);
    o.result["depth"] = depth;
    o.result["reduct"] = structure_to_json(red.reduced);
    o.result["orbit_counts"] = ordered_json::array();
    o.result["reduct_orbit_counts"] = ordered_json::array();
    for (int n = 1; n <= depth; ++n)
    {
        o.result["orbit_counts"].push_back(t.orbit_count(n));
        o.result["reduct_orbit_counts"].push_back(red.reduced_space.orbit_count(n));
    }
    o.result["morphism"] = transformation_json(red.rho);
    o.check("morphism_natural", verify_naturality(red.rho).ok());
    return o;
}

inline outcome cmd_borel(session& s)
{
    outcome o;
    const int n = s.opt().level;
    const auto t = s.space(s.opt().depth.value_or(n + 1));
    const auto r = borel(t, n, s.opt().budget);
    o.result["level"] = n;
    o.result["configurations"] = r.configurations;
    o.result["classes"] = r.class_count;
    o.result["group_order"] = t.group().order();
    o.result["convention"] = r.convention.describe();
    o.result["well_defined"] = r.well_defined;
    o.result["invariant_by_convention"] = ordered_json::array();
    const auto cvs = borel_conventions();
    for (std::size_t i = 0; i < cvs.size(); ++i)
        o.result["invariant_by_convention"].push_back(
            ordered_json{ { "convention", cvs[i].describe() }, { "class_invariant", bool(r.invariant_by_convention[i]) } });
    o.result["image_property"] = r.image_property;
    ordered_json image = ordered_json::array();
    for (auto v : r.comparison)
        image.push_back(t.label(n + 1, v));
    o.result["comparison"] = std::move(image);
    o.check("well_defined", r.well_defined);
    o.check("image_property", r.image_property);
    return o;
}

inline outcome cmd_diagram(session& s)
{
    outcome o;
    const int depth = s.opt().depth.value_or(2);
    const auto t = s.space(depth);
    const auto w = diagram_of(t, s.subset_elements());
    o.result["depth"] = depth;
    o.result["subset"] = split_csv(s.opt().subset);
    o.result["levels"] = transformation_json(w);
    o.check("natural", verify_naturality(w).ok());
    return o;
}

inline outcome cmd_lift_type(session& s)
{
    outcome o;
    if (s.opt().witnesses.size() != 1)
        throw invalid_argument("lift-type needs exactly one --witness");
    const int depth = s.opt().depth.value_or(2);
    const auto t = s.space(depth);
    const auto w = type_as_lifting(t, s.witness_elements().front(), s.subset_elements());
    o.result["depth"] = depth;
    o.result["witness"] = s.opt().witnesses.front();
    o.result["subset"] = split_csv(s.opt().subset);
    o.result["levels"] = transformation_json(w);
    o.check("natural", verify_naturality(w).ok());
    return o;
}

inline outcome cmd_sset(session& s)
{
    outcome o;
    const int d = s.opt().depth.value_or(2);
    if (d < 1)
        throw invalid_argument("--depth must be positive");
    std::optional<simplicial_set> ss;
    ordered_json input{ { "preset", s.opt().preset } };
    if (!s.opt().poset.empty())
    {
        if (s.opt().preset != "nerve-poset")
            throw invalid_argument("--poset goes with --preset nerve-poset");
        const auto p = poset_from_json(parse_json(read_file(s.opt().poset), s.opt().poset));
        input["poset"] = poset_to_json(p);
        ss.emplace(nerve_of(p, d + 1, s.opt().budget));
    }
    else
    {
        if (s.opt().preset.empty())
            throw invalid_argument("--preset is required for sset");
        ss.emplace(build_preset(s.opt().preset, d + 1, s.opt().budget));
    }
    s.set_input(std::move(input));
    const auto r = contractibility_probe(*ss, d);
    o.result["preset"] = s.opt().preset;
    o.result["depth"] = d;
    o.result["truncation"] = ss->top();
    o.result["sizes"] = ordered_json::array();
    for (int k = 0; k <= ss->top(); ++k)
        o.result["sizes"].push_back(ss->size(k));
    o.result["section_exists"] = r.section_exists;
    if (!r.section_exists)
        o.result["failure_level"] = r.failure_level;
    o.result["per_component"] = ordered_json::array();
    for (const auto& c : r.per_component)
    {
        ordered_json vs = ordered_json::array();
        for (auto v : c.vertices)
            vs.push_back(ss->label(0, v));
        ordered_json entry{ { "vertices", std::move(vs) }, { "section_exists", c.section_exists } };
        if (!c.section_exists)
            entry["failure_level"] = c.failure_level;
        o.result["per_component"].push_back(std::move(entry));
    }
    if (r.witness)
    {
        ordered_json levels = ordered_json::array();
        const auto& w = r.witness->map();
        for (int n = 1; n <= w.depth(); ++n)
        {
            ordered_json values = ordered_json::object();
            for (std::size_t x = 0; x < w.source().level_size(n); ++x)
                values[w.source().label(n, x)] = w.target().label(n, w(n, x));
            levels.push_back(ordered_json{ { "simplicial_level", n - 1 }, { "values", std::move(values) } });
        }
        o.result["witness"] = std::move(levels);
    }
    o.check("simplicial_identities", check_simplicial_identities(*ss).empty());
    const bool union_stable =
        r.section_exists == std::all_of(r.per_component.begin(), r.per_component.end(),
                                        [](const component_probe& c) { return c.section_exists; });
    o.check("union_stable", union_stable);
    o.holds = r.section_exists;
    return o;
}

using command_fn = std::function<outcome(session&)>;

inline const std::vector<std::pair<std::string, std::pair<std::string, command_fn>>>& commands()
{
    static const std::vector<std::pair<std::string, std::pair<std::string, command_fn>>> table{
        { "orbits", { "orbit counts and representatives per level, with Burnside check", cmd_orbits } },
        { "automorphisms", { "the automorphism group fixing parameters and constants", cmd_automorphisms } },
        { "sections", { "coherent section families of the decalage projection", cmd_sections } },
        { "invariant-witnesses", { "elements whose type over the parameters is invariant", cmd_invariant_witnesses } },
        { "bijection-check", { "witnesses vs coherent families at full depth", cmd_bijection_check } },
        { "stable-check", { "stability as a lifting problem and as head surjectivity", cmd_stable_check } },
        { "relative-stable-check", { "lifting along the morphism to a reduct", cmd_relative_stable_check } },
        { "product", { "product of two witness types (three: associativity)", cmd_product } },
        { "morley", { "Morley sequence of a witness type and its indiscernibility", cmd_morley } },
        { "genstable", { "generic stability and pairwise commutation of witness types", cmd_genstable } },
        { "reduct", { "the reduct and its type-space morphism", cmd_reduct } },
        { "borel", { "Borel construction classes and comparison map", cmd_borel } },
        { "sset", { "extra-degeneracy probe on a preset simplicial set", cmd_sset } },
        { "diagram", { "complete diagram of a parameter subset", cmd_diagram } },
        { "lift-type", { "type of an element as a lifting of a subset's diagram", cmd_lift_type } },
    };
    return table;
}

inline std::string single_line(std::string s)
{
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace cli

/// Run one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{ "typesimp: type spaces of finite structures as truncated simplicial objects", "typesimp" };
    app.set_version_flag("--version", version_string);
    app.require_subcommand(1);
    cli::options opt;

    std::map<CLI::App*, const cli::command_fn*> dispatch;
    for (const auto& [name, entry] : cli::commands())
    {
        auto* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--structure", opt.structure, "structure JSON document");
        sub->add_option("--depth", opt.depth, "depth (see README for per-command meaning)");
        sub->add_option("--mode", opt.mode, "one|count|enumerate");
        sub->add_option("--budget", opt.budget, "tuple / configuration / simplex budget");
        sub->add_option("--max-universe", opt.max_universe, "largest universe accepted");
        sub->add_option("--witness", opt.witnesses, "witness element (repeatable)");
        sub->add_option("--steps", opt.steps, "Morley sequence length");
        sub->add_option("--drop-relation", opt.drop_relations, "relation forgotten by the reduct (repeatable)");
        sub->add_option("--params-keep", opt.params_keep, "parameters kept by the reduct, comma separated");
        sub->add_option("--preset", opt.preset, "simplex:k|boundary:k|circle|discrete:k|nerve-poset:a<b,...");
        sub->add_option("--poset", opt.poset, "poset JSON for --preset nerve-poset");
        sub->add_option("--subset", opt.subset, "parameter subset, comma separated");
        sub->add_option("--level", opt.level, "Borel level n");
        sub->add_option("--index-class", opt.index_class_name, "all|monotone");
        dispatch[sub] = &entry.second;
    }

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::CallForVersion&)
    {
        out << version_string << "\n";
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << "typesimp: error: " << cli::single_line(e.what()) << "\n";
        return 2;
    }

    CLI::App* chosen = app.get_subcommands().front();
    try
    {
        cli::session s{ opt };
        auto o = (*dispatch.at(chosen))(s);
        ordered_json report;
        report["command"] = chosen->get_name();
        report["input_digest"] = sha256_hex(serialize(s.input()));
        report["result"] = std::move(o.result);
        report["checks"] = o.checks;
        report["version"] = version_string;
        out << serialize(report);
        return o.holds && o.all_checks_pass() ? 0 : 1;
    }
    catch (const std::exception& e)
    {
        err << "typesimp: error: " << cli::single_line(e.what()) << "\n";
        return 2;
    }
}

} // namespace typesimp
