#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "ellcov/report.hpp"

namespace ellcov {
namespace cli {

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace detail {

inline std::vector<GroupElement> parse_element_list(const std::string& text, const FinAbGroup& g) {
    std::vector<GroupElement> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) out.push_back(parse_element(item, g));
    if (out.empty()) throw domain_error("ParseError", "no elements in list: " + text);
    return out;
}

inline long long now_ms_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
}

// ---- payload builders (shared by direct subcommands and batch rows) ----

inline json group_report(const std::string& group_str, bool with_subgroups, int max_rank) {
    FinAbGroup g = parse_group(group_str);
    CanonicalForm cf = canonical_form(g);
    json payload{{"group", group_json(g)},
                 {"canonical", group_json(cf.group)},
                 {"order", g.order()},
                 {"exponent", g.exponent()},
                 {"min_generators", min_generator_count(g)}};
    if (with_subgroups) {
        json subs = json::array();
        for (const auto& rec : subgroups_up_to_rank(g, max_rank)) {
            json gens = json::array();
            for (const auto& x : rec.gens) gens.push_back(element_literal(x));
            subs.push_back(json{{"orders", rec.iso_type.orders},
                                {"order", rec.iso_type.order()},
                                {"rank", rec.rank},
                                {"generators", gens}});
        }
        payload["subgroups"] = subs;
    }
    json echo{{"group", g.to_string()}};
    if (with_subgroups) echo["subgroups_rank"] = max_rank;
    return make_report("group", echo, payload);
}

inline json basis_report(const std::string& group_str, const std::string& gens_str) {
    FinAbGroup g = parse_group(group_str);
    std::vector<GroupElement> gens = parse_element_list(gens_str, g);
    AdaptedBasis ab = adapted_basis(g, gens);
    json basis = json::array();
    for (std::size_t i = 0; i < ab.basis.size(); ++i)
        basis.push_back(json{{"element", element_literal(ab.basis[i])},
                             {"order", ab.basis_orders[i]}});
    json reorder = json::array();
    for (std::size_t t : ab.reordering) reorder.push_back(t + 1);
    json rows = json::array();
    for (std::size_t r : nonvanishing_failures(ab)) rows.push_back(r);
    json payload{{"reordering", reorder},
                 {"basis", basis},
                 {"b_matrix", mat_json(ab.b_matrix)},
                 {"unit_upper_triangular", is_unitriangular(ab.b_matrix)},
                 {"nonvanishing_failures", rows}};
    json echo{{"group", g.to_string()}, {"gens", ram_literal(gens)}};
    return make_report("basis", echo, payload);
}

inline json covers_report(const std::string& group_str, const std::string& ram_str,
                          long long base_genus) {
    FinAbGroup g = parse_group(group_str);
    RamificationData data(g, parse_element_list(ram_str, g), base_genus);
    auto split = ramification_split(data);
    SplitCoefficients sc = split_coefficients(data);
    json payload{{"R", group_json(split.R)},
                 {"E", group_json(split.E)},
                 {"totally_ramified", is_totally_ramified(data)},
                 {"realizable", is_realizable(data)},
                 {"k", sc.k},
                 {"b", mat_json(sc.b)},
                 {"c", mat_json(sc.c)}};
    payload["genus"] = is_realizable(data) ? json(rh_genus(data)) : json(nullptr);
    json mi = json::array();
    for (std::size_t i : sc.minimal_indices) mi.push_back(i + 1);
    payload["minimal_indices"] = mi;
    json po = json::array();
    for (std::size_t i : sc.point_order) po.push_back(i + 1);
    payload["point_order"] = po;
    json br = json::array();
    for (std::size_t i = 0; i < sc.basis_R.size(); ++i)
        br.push_back(json{{"element", element_literal(sc.basis_R[i])},
                          {"order", sc.orders_R[i]}});
    payload["basis_R"] = br;
    if (!g.is_trivial()) {
        std::vector<GroupElement> std_basis;
        for (std::size_t t = 0; t < g.factor_count(); ++t) {
            std::vector<long long> c(g.factor_count(), 0);
            c[t] = 1;
            std_basis.push_back(GroupElement(g, c));
        }
        payload["lambda"] = mat_json(lambda_matrix(data, std_basis));
    } else {
        payload["lambda"] = json::array();
    }
    json echo{{"group", g.to_string()}, {"ram", ram_literal(data.h)}, {"base_genus", base_genus}};
    return make_report("covers", echo, payload);
}

inline json classify_report(const std::string& group_str, const std::string& ram_str,
                            bool with_oracle, long long max_states) {
    FinAbGroup g = parse_group(group_str);
    RamificationData data(g, parse_element_list(ram_str, g));
    auto [k, indices] = minimal_k(data);
    auto comps = classify_components(data);
    json arr = json::array();
    for (const auto& c : comps) {
        json entry{{"type", ktype_name(c.k_type)},
                   {"base_label", c.base_label},
                   {"k", c.k},
                   {"excluded_loci_count", c.excluded_loci_count},
                   {"gerbe_band", group_json(c.gerbe_band)},
                   {"subgroup_order", c.subgroup_points.size()}};
        if (c.k_type == KType::cyclic) entry["N"] = c.N;
        if (c.k_type == KType::bicyclic) {
            entry["M"] = c.M;
            entry["N"] = c.N;
            entry["weil_index"] = c.weil_index;
        }
        arr.push_back(entry);
    }
    json payload{{"n", data.n()},
                 {"k", k},
                 {"realizable", is_realizable(data)},
                 {"component_count", comps.size()},
                 {"components", arr}};
    if (with_oracle) {
        if (k == data.n()) {
            payload["oracle"] = json{{"skipped", "empty moduli (k = n)"}};
        } else {
            auto t0 = std::chrono::steady_clock::now();
            long long orbits =
                oracle::orbit_count(oracle::build_monodromy_problem(data), max_states);
            payload["oracle"] = json{{"orbit_count", orbits},
                                     {"agrees", orbits == static_cast<long long>(comps.size())},
                                     {"wall_ms", now_ms_since(t0)}};
        }
    }
    json echo{{"group", g.to_string()}, {"ram", ram_literal(data.h)}};
    if (with_oracle) echo["oracle"] = true;
    return make_report("classify", echo, payload);
}

inline json picard_report(const std::string& group_str, const std::string& ram_str,
                          long long max_states) {
    FinAbGroup g = parse_group(group_str);
    RamificationData data(g, parse_element_list(ram_str, g));
    SplitCoefficients sc = split_coefficients(data);
    auto m = lincomb_matrix(data);
    long long o = sc.orders_R[sc.k - 1];
    auto inv = invertibility_check(m, o);
    long long r = relation_count(data, max_states);
    BoundaryBasis bb = boundary_basis(data.n(), sc.k);
    json labels = json::array();
    for (auto [j, i] : bb.labels)
        labels.push_back("B_{" + std::to_string(j) + "," + std::to_string(i) + "}");
    json sums = json::array();
    for (const Rat& s : inv.normalized_row_sums) sums.push_back(rat_to_string(s));
    json loci = json::array();
    for (const auto& l : excluded_loci(data, true, max_states)) {
        json entry{{"peeled_position", l.peeled_position},
                   {"j", l.j},
                   {"variables", l.variables},
                   {"coefficients", l.coefficients},
                   {"gcd", l.count.gcd},
                   {"divisor_count_reading", l.count.divisor_count_reading},
                   {"totient_reading", l.count.totient_reading},
                   {"component_count", *l.count.oracle_count}};
        loci.push_back(entry);
    }
    json payload{{"boundary_basis", labels},
                 {"lincomb", rat_mat_json(m)},
                 {"determinant", rat_to_string(inv.determinant)},
                 {"is_invertible", inv.is_invertible},
                 {"o_rk", o},
                 {"normalized_row_sums", sums},
                 {"excluded_loci", loci},
                 {"relation_count", r},
                 {"open_moduli_rank", 0},
                 {"iterated_curve_rank", bb.labels.size()}};
    bool bielliptic_shape = g.orders == std::vector<long long>{2} && data.n() % 2 == 0;
    if (bielliptic_shape)
        for (const auto& x : data.h)
            if (x.is_zero()) bielliptic_shape = false;
    if (bielliptic_shape) {
        long long genus = static_cast<long long>(data.n()) / 2 + 1;
        payload["compactified_rank"] = picard_number_ordered(genus);
    }
    json echo{{"group", g.to_string()}, {"ram", ram_literal(data.h)}};
    return make_report("picard", echo, payload);
}

inline json bielliptic_report(long long genus, bool with_strata, bool with_picard) {
    json payload{{"genus", genus},
                 {"n", 2 * genus - 2},
                 {"stratum_count", stratum_count(genus)},
                 {"picard_ordered", picard_number_ordered(genus)},
                 {"picard_unordered", picard_number_unordered(genus)}};
    auto [down, up] = invariant_boundary_counts(genus);
    payload["invariant_boundary"] = json{{"ordered_space", down}, {"unordered_space", up}};
    if (with_strata) {
        json arr = json::array();
        for (const auto& s : boundary_strata(genus)) {
            json entry{{"kind", stratum_kind_name(s.kind)}, {"I", s.I}};
            if (s.g1 >= 0) {
                entry["g1"] = s.g1;
                entry["g2"] = s.g2;
            }
            arr.push_back(entry);
        }
        payload["strata"] = arr;
        json census = json::array();
        for (auto& [key, count] : sn_orbit_census(genus))
            census.push_back(json{{"kind", key.first}, {"subset_size", key.second},
                                  {"count", count}});
        payload["orbit_census"] = census;
    }
    if (with_picard) {
        long long r = relation_count(bielliptic_data(genus));
        payload["relation_count"] = r;
        payload["census_consistent"] = stratum_count(genus) - r == picard_number_ordered(genus);
    }
    json echo{{"genus", genus}, {"strata", with_strata}, {"picard", with_picard}};
    return make_report("bielliptic", echo, payload);
}

inline json oracle_report(const std::string& mode, const std::string& group_str,
                          const std::string& ram_str, const std::string& a_str,
                          long long max_order, long long max_states) {
    auto t0 = std::chrono::steady_clock::now();
    json payload{{"mode", mode}};
    json echo{{"mode", mode}};
    if (mode == "monodromy") {
        FinAbGroup g = parse_group(group_str);
        RamificationData data(g, parse_element_list(ram_str, g));
        auto p = oracle::build_monodromy_problem(data);
        payload["state_count"] = p.state_count();
        payload["generator_count"] = p.translations.size() + p.linear_actions.size();
        payload["orbit_count"] = oracle::orbit_count(p, max_states);
        echo["group"] = g.to_string();
        echo["ram"] = ram_literal(data.h);
    } else if (mode == "torsion-locus") {
        std::vector<long long> a;
        std::stringstream ss(a_str);
        std::string item;
        while (std::getline(ss, item, ';'))
            if (!item.empty()) a.push_back(std::stoll(item));
        long long d = a.empty() ? 0 : (a.back() < 0 ? -a.back() : a.back());
        payload["a"] = a;
        payload["state_count"] = d * d;
        payload["generator_count"] = 2 * (a.empty() ? 0 : a.size() - 1) + 2;
        payload["orbit_count"] = oracle::torsion_locus_orbit_count(a, max_states);
        long long g = 0;
        for (long long v : a) g = gcd_ll(g, v);
        payload["divisor_count_reading"] = divisor_count(g);
        payload["totient_reading"] = euler_totient(g);
        echo["a"] = a_str;
    } else if (mode == "basis") {
        auto rep = oracle::exhaustive_adapted_basis_check(max_order);
        payload["max_order"] = rep.max_order;
        payload["groups_checked"] = rep.groups_checked;
        payload["sequences_checked"] = rep.sequences_checked;
        payload["counterexample_count"] = rep.counterexamples.size();
        payload["triangular_failures_pgroup"] = rep.triangular_failures_pgroup.size();
        payload["triangular_failures_cyclic"] = rep.triangular_failures_cyclic.size();
        json cex = json::array();
        std::size_t shown = 0;
        for (const auto& c : rep.counterexamples) {
            if (shown++ >= 10) break;
            cex.push_back(json{{"group", c.group_shape}, {"generators", c.generator_indices},
                               {"reason", c.reason}});
        }
        for (const auto& c : rep.triangular_failures_cyclic) {
            if (shown++ >= 10) break;
            cex.push_back(json{{"group", c.group_shape}, {"generators", c.generator_indices},
                               {"reason", c.reason}});
        }
        payload["examples"] = cex;
        echo["max_order"] = max_order;
    } else if (mode == "subgroups") {
        FinAbGroup g = parse_group(group_str);
        payload["subgroup_count"] = oracle::subgroup_census(g);
        echo["group"] = g.to_string();
    } else {
        throw domain_error("ParseError", "unknown oracle mode: " + mode);
    }
    payload["wall_ms"] = now_ms_since(t0);
    return make_report("oracle", echo, payload);
}

// evaluate one batch row (a flat json object with a "command" key)
inline json eval_row(const json& row, long long max_states) {
    std::string cmd = row.value("command", "");
    try {
        if (cmd == "group")
            return group_report(row.value("group", ""), row.contains("subgroups_rank"),
                                row.value("subgroups_rank", -1));
        if (cmd == "basis") return basis_report(row.value("group", ""), row.value("gens", ""));
        if (cmd == "covers")
            return covers_report(row.value("group", ""), row.value("ram", ""),
                                 row.value("base_genus", 1LL));
        if (cmd == "classify")
            return classify_report(row.value("group", ""), row.value("ram", ""),
                                   row.value("oracle", false), max_states);
        if (cmd == "picard")
            return picard_report(row.value("group", ""), row.value("ram", ""), max_states);
        if (cmd == "bielliptic")
            return bielliptic_report(row.value("genus", 0LL), row.value("strata", false),
                                     row.value("picard", false));
        if (cmd == "oracle")
            return oracle_report(row.value("mode", ""), row.value("group", ""),
                                 row.value("ram", ""), row.value("a", ""),
                                 row.value("max_order", 12LL), max_states);
        return make_error_report(cmd, "ParseError", "unknown command in batch row");
    } catch (const domain_error& e) {
        return make_error_report(cmd, e.code(), e.what());
    } catch (const std::exception& e) {
        return make_error_report(cmd, "InternalError", e.what());
    }
}

// plain-text rendering of a report
inline void render_text(const json& v, std::ostream& os, int indent = 0) {
    std::string pad(indent, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (it.value().is_object() || (it.value().is_array() && !it.value().empty() &&
                                           (it.value()[0].is_object() || it.value()[0].is_array()))) {
                os << pad << it.key() << ":\n";
                render_text(it.value(), os, indent + 2);
            } else {
                os << pad << it.key() << ": " << it.value().dump() << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (item.is_object() || item.is_array()) {
                os << pad << "-\n";
                render_text(item, os, indent + 2);
            } else {
                os << pad << "- " << item.dump() << "\n";
            }
        }
    } else {
        os << pad << v.dump() << "\n";
    }
}

}  // namespace detail

inline RunResult run(const std::vector<std::string>& args) {
    RunResult result;
    CLI::App app{"exact invariants of moduli of abelian covers of elliptic curves"};
    app.require_subcommand(1);

    bool text = false;
    long long max_states = 1000000;
    long long seed = 0;
    app.add_flag("--text", text, "human-readable output instead of JSON")
        ->envname("ELLCOV_TEXT");
    app.add_flag("--json", "machine-readable JSON output (default)");
    app.add_option("--max-states", max_states, "orbit enumeration state bound")
        ->envname("ELLCOV_MAX_STATES");
    app.add_option("--seed", seed, "seed for randomized verification suites")
        ->envname("ELLCOV_SEED");

    std::string group_str, ram_str, gens_str, a_str, mode, spec_path, out_path;
    long long genus = 0, base_genus = 1, max_order = 12;
    int subgroups_rank = -1;
    bool with_subgroups = false, with_oracle = false, with_strata = false, with_picard = false;

    auto* c_group = app.add_subcommand("group", "canonical form and subgroup catalog");
    c_group->add_option("--group", group_str, "group literal, e.g. \"Z/2 x Z/4\"")->required();
    c_group->add_flag("--subgroups", with_subgroups, "include the subgroup catalog");
    c_group->add_option("--max-rank", subgroups_rank, "cap on subgroup rank (-1 = none)");

    auto* c_basis = app.add_subcommand("basis", "adapted basis of a minimal generating set");
    c_basis->add_option("--group", group_str)->required();
    c_basis->add_option("--gens", gens_str, "elements separated by ';'")->required();

    auto* c_covers = app.add_subcommand("covers", "ramification split, genus, building data");
    c_covers->add_option("--group", group_str)->required();
    c_covers->add_option("--ram", ram_str, "ramification elements separated by ';'")->required();
    c_covers->add_option("--base-genus", base_genus, "genus of the covered curve");

    auto* c_classify = app.add_subcommand("classify", "irreducible component catalog");
    c_classify->add_option("--group", group_str)->required();
    c_classify->add_option("--ram", ram_str)->required();
    c_classify->add_flag("--oracle", with_oracle, "cross-check against the orbit oracle");

    auto* c_picard = app.add_subcommand("picard", "divisor classes and relation counts");
    c_picard->add_option("--group", group_str)->required();
    c_picard->add_option("--ram", ram_str)->required();

    auto* c_biell = app.add_subcommand("bielliptic", "boundary strata and Picard numbers");
    c_biell->add_option("--genus", genus)->required();
    c_biell->add_flag("--strata", with_strata, "list the boundary strata");
    c_biell->add_flag("--picard", with_picard, "include the relation-count cross-check");

    auto* c_oracle = app.add_subcommand("oracle", "brute-force verification modes");
    c_oracle->add_option("--mode", mode, "monodromy|torsion-locus|basis|subgroups")->required();
    c_oracle->add_option("--group", group_str);
    c_oracle->add_option("--ram", ram_str);
    c_oracle->add_option("--a", a_str, "integer coefficients separated by ';'");
    c_oracle->add_option("--max-order", max_order, "bound for the exhaustive basis check");

    auto* c_batch = app.add_subcommand("batch", "evaluate a table of inputs");
    c_batch->add_option("--spec", spec_path, "JSON file with a rows array")->required();
    c_batch->add_option("--out", out_path, "output file (default: stdout)");

    std::vector<const char*> cargv;
    cargv.push_back("ellcov");
    for (const auto& a : args) cargv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        result.out = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string(e.what()) + "\n";
        result.exit_code = 2;
        return result;
    }

    json report;
    std::string command;
    try {
        if (app.got_subcommand(c_group)) {
            command = "group";
            report = detail::group_report(group_str, with_subgroups, subgroups_rank);
        } else if (app.got_subcommand(c_basis)) {
            command = "basis";
            report = detail::basis_report(group_str, gens_str);
        } else if (app.got_subcommand(c_covers)) {
            command = "covers";
            report = detail::covers_report(group_str, ram_str, base_genus);
        } else if (app.got_subcommand(c_classify)) {
            command = "classify";
            report = detail::classify_report(group_str, ram_str, with_oracle, max_states);
        } else if (app.got_subcommand(c_picard)) {
            command = "picard";
            report = detail::picard_report(group_str, ram_str, max_states);
        } else if (app.got_subcommand(c_biell)) {
            command = "bielliptic";
            report = detail::bielliptic_report(genus, with_strata, with_picard);
        } else if (app.got_subcommand(c_oracle)) {
            command = "oracle";
            report = detail::oracle_report(mode, group_str, ram_str, a_str, max_order, max_states);
        } else if (app.got_subcommand(c_batch)) {
            command = "batch";
            std::ifstream in(spec_path);
            if (!in) throw domain_error("BadSpec", "cannot open spec file: " + spec_path);
            json spec;
            try {
                in >> spec;
            } catch (const std::exception& e) {
                throw domain_error("BadSpec", std::string("invalid spec JSON: ") + e.what());
            }
            std::ostringstream lines;
            for (const auto& row : spec.value("rows", json::array()))
                lines << detail::eval_row(row, max_states).dump() << "\n";
            if (!out_path.empty()) {
                std::ofstream outf(out_path);
                if (!outf) throw domain_error("BadSpec", "cannot open output file: " + out_path);
                outf << lines.str();
            } else {
                result.out = lines.str();
            }
            result.exit_code = 0;
            return result;
        }
    } catch (const domain_error& e) {
        json err_report = make_error_report(command, e.code(), e.what());
        result.out = err_report.dump() + "\n";
        result.err = std::string(e.code()) + ": " + e.what() + "\n";
        result.exit_code = 3;
        return result;
    } catch (const std::exception& e) {
        result.err = std::string("internal error: ") + e.what() + "\n";
        result.exit_code = 1;
        return result;
    }

    if (text) {
        std::ostringstream os;
        detail::render_text(report, os);
        result.out = os.str();
    } else {
        result.out = report.dump() + "\n";
    }
    result.exit_code = 0;
    return result;
}

}  // namespace cli
}  // namespace ellcov
