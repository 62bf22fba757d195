#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>

#include "ellcov/covers.hpp"

namespace ellcov {
namespace oracle {

// Finite state set prod_i (Z/d_i)^2 with group-action generators: per-factor
// translations and 2x2 unimodular matrices acting on every factor's pair of
// coordinates simultaneously. Deliberately dumb: explicit states, union-find.
struct OrbitProblem {
    std::vector<long long> factor_orders;               // d_1..d_l
    std::vector<std::vector<std::array<long long, 2>>> translations;  // per gen, per factor
    std::vector<std::array<long long, 4>> linear_actions;             // row-major 2x2

    long long state_count() const {
        long long n = 1;
        for (long long d : factor_orders) n *= d * d;
        return n;
    }
};

inline constexpr std::array<long long, 4> kS = {0, -1, 1, 0};
inline constexpr std::array<long long, 4> kT = {1, 1, 0, 1};

namespace detail {

struct UnionFind {
    std::vector<std::int64_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::int64_t find(std::int64_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(std::int64_t a, std::int64_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace detail

inline void validate_problem(const OrbitProblem& p) {
    for (const auto& t : p.translations)
        if (t.size() != p.factor_orders.size())
            throw std::logic_error("orbit problem: translation arity mismatch");
    for (const auto& m : p.linear_actions) {
        long long d = m[0] * m[3] - m[1] * m[2];
        for (long long q : p.factor_orders)
            if (mod_reduce(d, q) != 1 % q)
                throw domain_error("InvalidGenerator", "linear action must be unimodular mod every factor");
    }
}

// Exact orbit count of the generated group on the state space.
inline long long orbit_count(const OrbitProblem& p, long long max_states = 1000000) {
    validate_problem(p);
    long long n = p.state_count();
    if (n > max_states)
        throw domain_error("StateSpaceTooLarge",
                           "state space " + std::to_string(n) + " exceeds bound " +
                               std::to_string(max_states));
    const std::size_t l = p.factor_orders.size();
    detail::UnionFind uf(static_cast<std::size_t>(n));
    std::vector<long long> digits(2 * l, 0);  // (u_1, v_1, u_2, v_2, ...)
    auto encode = [&](const std::vector<long long>& dg) {
        long long idx = 0;
        for (std::size_t i = 0; i < l; ++i)
            idx = (idx * p.factor_orders[i] + dg[2 * i]) * p.factor_orders[i] + dg[2 * i + 1];
        return idx;
    };
    std::vector<long long> scratch(2 * l, 0);
    for (long long s = 0; s < n; ++s) {
        // decode s
        long long rem = s;
        for (std::size_t i = l; i-- > 0;) {
            digits[2 * i + 1] = rem % p.factor_orders[i];
            rem /= p.factor_orders[i];
            digits[2 * i] = rem % p.factor_orders[i];
            rem /= p.factor_orders[i];
        }
        for (const auto& t : p.translations) {
            for (std::size_t i = 0; i < l; ++i) {
                scratch[2 * i] = mod_reduce(digits[2 * i] + t[i][0], p.factor_orders[i]);
                scratch[2 * i + 1] = mod_reduce(digits[2 * i + 1] + t[i][1], p.factor_orders[i]);
            }
            uf.unite(s, encode(scratch));
        }
        for (const auto& m : p.linear_actions) {
            for (std::size_t i = 0; i < l; ++i) {
                long long u = digits[2 * i], v = digits[2 * i + 1];
                scratch[2 * i] = mod_reduce(m[0] * u + m[1] * v, p.factor_orders[i]);
                scratch[2 * i + 1] = mod_reduce(m[2] * u + m[3] * v, p.factor_orders[i]);
            }
            uf.unite(s, encode(scratch));
        }
    }
    long long orbits = 0;
    for (long long s = 0; s < n; ++s)
        if (uf.find(s) == s) ++orbits;
    return orbits;
}

// Monodromy problem of a ramification datum over a genus-1 base: states are
// the degree-0 parts of the reduced building data over the stored factor
// basis of G; moving marked point j around either loop class shifts factor i
// by lambda_ij, and the mapping-class action is the diagonal S, T.
inline OrbitProblem build_monodromy_problem(const RamificationData& data) {
    if (data.base_genus != 1)
        throw domain_error("InvalidData", "monodromy problem requires base genus 1");
    OrbitProblem p;
    p.factor_orders = data.G.orders;
    for (const auto& h : data.h) {
        std::vector<std::array<long long, 2>> xi0, xi1;
        for (std::size_t i = 0; i < data.G.factor_count(); ++i) {
            long long lam = h.coords[i];
            xi0.push_back({lam, 0});
            xi1.push_back({0, lam});
        }
        p.translations.push_back(xi0);
        p.translations.push_back(xi1);
    }
    p.linear_actions = {kS, kT};
    return p;
}

// Orbit count of the torsion-locus system sum_i a_i x_i ≡ 0, solving for the
// last variable: states (Z/|a_n|)^2 under translations by the other
// coefficients and the diagonal S, T action. This is the authoritative
// component count consumed by classify.
inline long long torsion_locus_orbit_count(const std::vector<long long>& a,
                                           long long max_states = 1000000) {
    if (a.empty() || std::all_of(a.begin(), a.end(), [](long long v) { return v == 0; }))
        throw domain_error("DegenerateVector", "all coefficients vanish");
    long long an = a.back();
    if (an == 0) throw domain_error("DegenerateVector", "last coefficient must be nonzero");
    long long d = an < 0 ? -an : an;
    OrbitProblem p;
    p.factor_orders = {d};
    for (std::size_t i = 0; i + 1 < a.size(); ++i) {
        long long t = mod_reduce(a[i], d);
        p.translations.push_back({{t, 0}});
        p.translations.push_back({{0, t}});
    }
    p.linear_actions = {kS, kT};
    return orbit_count(p, max_states);
}

// Independent subgroup census: grow the set of known subgroups by joining
// each with every cyclic subgroup until stable (a different enumeration
// strategy from the groups-module worklist).
inline long long subgroup_census(const FinAbGroup& g, long long order_bound = 10000) {
    long long n = g.order();
    if (n > order_bound) throw domain_error("GroupTooLarge", "census bound exceeded");
    // own breadth-first closure over generator index seeds
    auto close = [&](const std::vector<std::uint64_t>& seeds) {
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        std::vector<std::uint64_t> work{0};
        in[0] = 1;
        std::vector<GroupElement> gens;
        for (std::uint64_t s : seeds) gens.push_back(element_from_index(g, s));
        for (std::size_t head = 0; head < work.size(); ++head) {
            GroupElement x = element_from_index(g, work[head]);
            for (const auto& h : gens) {
                std::uint64_t t = element_index(add(x, h));
                if (!in[t]) {
                    in[t] = 1;
                    work.push_back(t);
                }
            }
        }
        std::sort(work.begin(), work.end());
        return work;
    };
    // points -> a small generating seed for that subgroup
    std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>> subgroups;
    std::vector<std::uint64_t> cyclic_gens;
    for (long long e = 0; e < n; ++e) {
        auto c = close({static_cast<std::uint64_t>(e)});
        if (subgroups.emplace(c, std::vector<std::uint64_t>{static_cast<std::uint64_t>(e)}).second)
            cyclic_gens.push_back(static_cast<std::uint64_t>(e));
    }
    std::vector<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>> work(
        subgroups.begin(), subgroups.end());
    while (!work.empty()) {
        decltype(work) next;
        for (const auto& [pts, seed] : work)
            for (std::uint64_t c : cyclic_gens) {
                if (std::binary_search(pts.begin(), pts.end(), c)) continue;
                std::vector<std::uint64_t> joined_seed = seed;
                joined_seed.push_back(c);
                auto joined = close(joined_seed);
                if (subgroups.emplace(joined, joined_seed).second)
                    next.push_back({joined, joined_seed});
            }
        work = std::move(next);
    }
    return static_cast<long long>(subgroups.size());
}

// ---- exhaustive appendix verification ------------------------------------

// All abelian groups of order <= max_order, as factor lists in primary form.
inline std::vector<std::vector<long long>> abelian_group_shapes_up_to(long long max_order) {
    std::vector<std::vector<long long>> shapes = {{}};
    for (long long n = 2; n <= max_order; ++n) {
        // partitions of each prime exponent
        std::vector<std::vector<std::vector<long long>>> per_prime;
        for (auto [p, e] : factorize(n)) {
            std::vector<std::vector<long long>> parts;
            std::vector<long long> cur;
            std::function<void(int, int)> gen = [&](int left, int max_part) {
                if (left == 0) {
                    std::vector<long long> f;
                    long long pw = 1;
                    for (long long m : cur) {
                        pw = 1;
                        for (long long t = 0; t < m; ++t) pw *= p;
                        f.push_back(pw);
                    }
                    parts.push_back(f);
                    return;
                }
                for (int m = std::min(left, max_part); m >= 1; --m) {
                    cur.push_back(m);
                    gen(left - m, m);
                    cur.pop_back();
                }
            };
            gen(e, e);
            per_prime.push_back(parts);
        }
        std::vector<std::vector<long long>> combined = {{}};
        for (const auto& parts : per_prime) {
            std::vector<std::vector<long long>> next;
            for (const auto& base : combined)
                for (const auto& p : parts) {
                    std::vector<long long> merged = base;
                    merged.insert(merged.end(), p.begin(), p.end());
                    next.push_back(merged);
                }
            combined = std::move(next);
        }
        for (auto& f : combined) {
            std::sort(f.begin(), f.end());
            shapes.push_back(f);
        }
    }
    return shapes;
}

// All inclusion-minimal generating sets of g, as ascending element-index
// tuples (sequences up to permutation symmetry).
inline std::vector<std::vector<std::uint64_t>> minimal_generating_sets(const FinAbGroup& g) {
    long long n = g.order();
    std::vector<std::vector<std::uint64_t>> out;
    if (n == 1) {
        out.push_back({});
        return out;
    }
    std::vector<std::uint64_t> cur;
    std::function<void(std::uint64_t, const std::vector<std::uint64_t>&)> rec =
        [&](std::uint64_t start, const std::vector<std::uint64_t>& cl) {
            if (static_cast<long long>(cl.size()) == n) {
                // inclusion minimality: dropping any element must lose generation
                for (std::size_t d = 0; d < cur.size(); ++d) {
                    std::vector<std::uint64_t> rest;
                    for (std::size_t j = 0; j < cur.size(); ++j)
                        if (j != d) rest.push_back(cur[j]);
                    if (static_cast<long long>(closure_of(g, rest).size()) == n) return;
                }
                out.push_back(cur);
                return;
            }
            for (std::uint64_t e = start; e < static_cast<std::uint64_t>(n); ++e) {
                if (std::binary_search(cl.begin(), cl.end(), e)) continue;
                std::vector<std::uint64_t> seed = cur;
                seed.push_back(e);
                cur.push_back(e);
                rec(e + 1, closure_of(g, seed));
                cur.pop_back();
            }
        };
    rec(1, closure_of(g, {}));
    return out;
}

struct AdaptedBasisCounterexample {
    std::vector<long long> group_shape;
    std::vector<std::uint64_t> generator_indices;
    std::string reason;
};

struct AdaptedBasisReport {
    long long max_order = 0;
    long long groups_checked = 0;
    long long sequences_checked = 0;
    std::vector<AdaptedBasisCounterexample> counterexamples;           // validate/nonvanishing failures
    std::vector<AdaptedBasisCounterexample> triangular_failures_pgroup;
    std::vector<AdaptedBasisCounterexample> triangular_failures_cyclic;
};

// For every abelian group of order <= max_order and every minimal generating
// sequence up to permutation: adapted_basis succeeds, validate_adapted
// passes, nonvanishing_failures is nonempty. Triangularity is recorded
// separately for p-group and cyclic inputs.
inline AdaptedBasisReport exhaustive_adapted_basis_check(long long max_order) {
    AdaptedBasisReport report;
    report.max_order = max_order;
    for (const auto& shape : abelian_group_shapes_up_to(max_order)) {
        FinAbGroup g(shape);
        ++report.groups_checked;
        bool is_pgroup = factorize(std::max<long long>(g.order(), 1)).size() == 1 && g.order() > 1;
        bool is_cyclic = min_generator_count(g) <= 1;
        for (const auto& set : minimal_generating_sets(g)) {
            ++report.sequences_checked;
            std::vector<GroupElement> gens;
            for (std::uint64_t idx : set) gens.push_back(element_from_index(g, idx));
            AdaptedBasisCounterexample ce{shape, set, ""};
            try {
                AdaptedBasis ab = adapted_basis(g, gens);
                if (!validate_adapted(ab, gens)) {
                    ce.reason = "validator rejected construction";
                    report.counterexamples.push_back(ce);
                    continue;
                }
                if (!gens.empty() && nonvanishing_failures(ab).empty()) {
                    ce.reason = "all row sums vanish";
                    report.counterexamples.push_back(ce);
                }
                if (!is_unitriangular(ab.b_matrix) && !gens.empty()) {
                    if (is_pgroup) {
                        ce.reason = "p-group basis not unit upper triangular";
                        report.triangular_failures_pgroup.push_back(ce);
                    } else if (is_cyclic) {
                        ce.reason = "cyclic basis not unit upper triangular";
                        report.triangular_failures_cyclic.push_back(ce);
                    }
                }
            } catch (const std::exception& e) {
                ce.reason = std::string("exception: ") + e.what();
                report.counterexamples.push_back(ce);
            }
        }
    }
    return report;
}

}  // namespace oracle
}  // namespace ellcov
