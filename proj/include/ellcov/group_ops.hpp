#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>

#include "ellcov/group.hpp"

namespace ellcov {

// ---- element indexing (mixed radix, coords in lex order) ---------------

inline std::uint64_t element_index(const GroupElement& x) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < x.coords.size(); ++i)
        idx = idx * static_cast<std::uint64_t>(x.parent.orders[i]) +
              static_cast<std::uint64_t>(x.coords[i]);
    return idx;
}

inline GroupElement element_from_index(const FinAbGroup& g, std::uint64_t idx) {
    std::vector<long long> c(g.factor_count(), 0);
    for (std::size_t i = g.factor_count(); i-- > 0;) {
        c[i] = static_cast<long long>(idx % static_cast<std::uint64_t>(g.orders[i]));
        idx /= static_cast<std::uint64_t>(g.orders[i]);
    }
    return GroupElement(g, c);
}

inline std::vector<GroupElement> enumerate_elements(const FinAbGroup& g) {
    long long n = g.order();
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i)
        out.push_back(element_from_index(g, static_cast<std::uint64_t>(i)));
    return out;
}

// ---- canonical form -----------------------------------------------------

struct CanonicalForm {
    FinAbGroup group;   // invariant factors d1 | d2 | ..., all >= 2
    Mat to_canonical;   // unimodular, acts on stored coords
    Mat from_canonical; // its inverse
    std::vector<std::size_t> kept;  // rows of to_canonical with order > 1
    std::vector<long long> full_orders;  // canonical orders including 1s

    GroupElement convert(const GroupElement& x) const {
        std::vector<Int> y = mat_apply(to_canonical, std::vector<Int>(x.coords.begin(), x.coords.end()));
        std::vector<long long> c;
        c.reserve(kept.size());
        for (std::size_t t : kept) {
            Int r = y[t] % full_orders[t];
            if (r < 0) r += full_orders[t];
            c.push_back(static_cast<long long>(r));
        }
        return GroupElement(group, c);
    }

    GroupElement convert_back(const GroupElement& y) const {
        std::vector<Int> full(full_orders.size(), Int(0));
        for (std::size_t i = 0; i < kept.size(); ++i) full[kept[i]] = y.coords[i];
        std::vector<Int> x = mat_apply(from_canonical, full);
        std::vector<long long> c(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            // original factor orders live in from_canonical.rows order
            Int r = x[i] % original_orders[i];
            if (r < 0) r += original_orders[i];
            c[i] = static_cast<long long>(r);
        }
        return GroupElement(FinAbGroup(original_orders), c);
    }

    std::vector<long long> original_orders;
};

inline CanonicalForm canonical_form(const FinAbGroup& g) {
    CanonicalForm cf;
    cf.original_orders = g.orders;
    const std::size_t l = g.factor_count();
    Mat A(l, l);
    for (std::size_t i = 0; i < l; ++i) A.at(i, i) = g.orders[i];
    SmithForm s = smith_normal_form(A);
    cf.to_canonical = s.U;
    cf.from_canonical = unimodular_inverse(s.U);
    std::vector<long long> inv_factors;
    cf.full_orders.resize(l);
    for (std::size_t i = 0; i < l; ++i) {
        long long d = static_cast<long long>(s.D.at(i, i));
        cf.full_orders[i] = d;
        if (d > 1) {
            cf.kept.push_back(i);
            inv_factors.push_back(d);
        }
    }
    cf.group = FinAbGroup(inv_factors);
    return cf;
}

inline std::size_t min_generator_count(const FinAbGroup& g) {
    return canonical_form(g).group.factor_count();
}

// ---- solving over generators -------------------------------------------

// One integer solution of sum_j x_j gens[j] = target in G, if any.
inline std::optional<std::vector<Int>> solve_over_gens(const FinAbGroup& g,
                                                       const std::vector<GroupElement>& gens,
                                                       const GroupElement& target) {
    const std::size_t l = g.factor_count(), m = gens.size();
    Mat A(l, m);
    for (std::size_t j = 0; j < m; ++j) {
        if (gens[j].parent != g) throw std::logic_error("solve_over_gens: wrong parent");
        for (std::size_t i = 0; i < l; ++i) A.at(i, j) = gens[j].coords[i];
    }
    std::vector<Int> b(target.coords.begin(), target.coords.end());
    std::vector<Int> mods(l);
    for (std::size_t i = 0; i < l; ++i) mods[i] = g.orders[i];
    return solve_congruences(A, b, mods);
}

// Coordinates of target over an internal direct-sum basis, reduced into
// [0, order(basis_i)). Unique by directness. Small spans are walked
// incrementally; larger ones fall back to the congruence solver.
inline std::vector<long long> express_over_basis(const FinAbGroup& g,
                                                 const std::vector<GroupElement>& basis,
                                                 const GroupElement& target) {
    const std::size_t k = basis.size();
    std::vector<long long> orders(k);
    long long span = 1;
    for (std::size_t i = 0; i < k; ++i) {
        orders[i] = element_order(basis[i]);
        span *= orders[i];
    }
    std::vector<long long> c(k, 0);
    if (span <= 65536) {
        // walk coefficient tuples in mixed-radix order, updating the running
        // sum by one basis step at a time
        GroupElement acc = zero_element(g);
        for (;;) {
            if (acc == target) return c;
            std::size_t i = k;
            bool carried_out = true;
            while (i > 0) {
                --i;
                if (c[i] + 1 < orders[i]) {
                    ++c[i];
                    acc = add(acc, basis[i]);
                    carried_out = false;
                    break;
                }
                acc = sub(acc, scale(orders[i] - 1, basis[i]));
                c[i] = 0;
            }
            if (carried_out) throw std::logic_error("express_over_basis: element not in span");
        }
    }
    auto sol = solve_over_gens(g, basis, target);
    if (!sol) throw std::logic_error("express_over_basis: element not in span");
    for (std::size_t i = 0; i < k; ++i) {
        Int r = (*sol)[i] % orders[i];
        if (r < 0) r += orders[i];
        c[i] = static_cast<long long>(r);
    }
    GroupElement acc = zero_element(g);
    for (std::size_t i = 0; i < k; ++i) acc = add(acc, scale(c[i], basis[i]));
    if (!(acc == target)) throw std::logic_error("express_over_basis: reconstruction failed");
    return c;
}

// ---- subgroup / quotient structure --------------------------------------

struct SubgroupSplit {
    FinAbGroup subgroup;     // canonical form of <gens>
    Homomorphism inclusion;  // subgroup -> ambient
};

struct QuotientSplit {
    FinAbGroup quotient;      // canonical form of G/<gens>
    Homomorphism projection;  // ambient -> quotient
};

inline SubgroupSplit subgroup_generated(const FinAbGroup& g, const std::vector<GroupElement>& gens) {
    const std::size_t l = g.factor_count(), m = gens.size();
    if (l == 0) {
        return SubgroupSplit{FinAbGroup(), Homomorphism(FinAbGroup(), g, Mat(0, 0))};
    }
    // lattice M = A Z^m + diag(d) Z^l; columns of B form a basis of M
    Mat W(l, m + l);
    for (std::size_t j = 0; j < m; ++j) {
        if (gens[j].parent != g) throw std::logic_error("subgroup_generated: wrong parent");
        for (std::size_t i = 0; i < l; ++i) W.at(i, j) = gens[j].coords[i];
    }
    for (std::size_t i = 0; i < l; ++i) W.at(i, m + i) = g.orders[i];
    SmithForm s = smith_normal_form(W);
    Mat Uinv = unimodular_inverse(s.U);
    Mat B(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) B.at(i, j) = Uinv.at(i, j) * s.D.at(j, j);
    // C = B^{-1} diag(d), entries (U diag(d))_{ij} / D_{ii}; integral since diag(d)Z^l ⊆ M
    Mat C(l, l);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < l; ++j) {
            Int num = s.U.at(i, j) * g.orders[j];
            if (num % s.D.at(i, i) != 0) throw std::logic_error("subgroup_generated: lattice bug");
            C.at(i, j) = num / s.D.at(i, i);
        }
    SmithForm s2 = smith_normal_form(C);
    Mat U2inv = unimodular_inverse(s2.U);
    std::vector<long long> type;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < l; ++i) {
        long long d = static_cast<long long>(s2.D.at(i, i));
        if (d > 1) {
            type.push_back(d);
            kept.push_back(i);
        }
    }
    FinAbGroup H(type);
    Mat incl(l, H.factor_count());
    Mat BU2inv = mat_mul(B, U2inv);
    for (std::size_t t = 0; t < kept.size(); ++t)
        for (std::size_t i = 0; i < l; ++i) {
            Int r = BU2inv.at(i, kept[t]) % g.orders[i];
            if (r < 0) r += g.orders[i];
            incl.at(i, t) = r;
        }
    return SubgroupSplit{H, Homomorphism(H, g, incl)};
}

inline QuotientSplit quotient(const FinAbGroup& g, const std::vector<GroupElement>& gens) {
    const std::size_t l = g.factor_count(), m = gens.size();
    Mat W(l, l + m);
    for (std::size_t i = 0; i < l; ++i) W.at(i, i) = g.orders[i];
    for (std::size_t j = 0; j < m; ++j) {
        if (gens[j].parent != g) throw std::logic_error("quotient: wrong parent");
        for (std::size_t i = 0; i < l; ++i) W.at(i, l + j) = gens[j].coords[i];
    }
    SmithForm s = smith_normal_form(W);
    std::vector<long long> type;
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < l; ++i) {
        long long d = static_cast<long long>(s.D.at(i, i));
        if (d > 1) {
            type.push_back(d);
            kept.push_back(i);
        }
    }
    FinAbGroup Q(type);
    Mat proj(Q.factor_count(), l);
    for (std::size_t t = 0; t < kept.size(); ++t)
        for (std::size_t j = 0; j < l; ++j) {
            Int r = s.U.at(kept[t], j) % Q.orders[t];
            if (r < 0) r += Q.orders[t];
            proj.at(t, j) = r;
        }
    return QuotientSplit{Q, Homomorphism(g, Q, proj)};
}

// ---- subgroup enumeration (closure over element subsets) ----------------

inline std::vector<std::uint64_t> closure_of(const FinAbGroup& g,
                                             const std::vector<std::uint64_t>& seed) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.order());
    std::vector<char> in(n, 0);
    std::vector<std::uint64_t> work;
    in[0] = 1;
    work.push_back(0);
    std::vector<GroupElement> gens;
    gens.reserve(seed.size());
    for (std::uint64_t s : seed) gens.push_back(element_from_index(g, s));
    std::size_t head = 0;
    while (head < work.size()) {
        GroupElement x = element_from_index(g, work[head++]);
        for (const GroupElement& h : gens) {
            std::uint64_t idx = element_index(add(x, h));
            if (!in[idx]) {
                in[idx] = 1;
                work.push_back(idx);
            }
        }
    }
    std::sort(work.begin(), work.end());
    return work;
}

// Marks vector of the subgroup generated by gens (index -> membership).
inline std::vector<char> closure_marks(const FinAbGroup& g, const std::vector<GroupElement>& gens,
                                       std::size_t* size_out = nullptr) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.order());
    std::vector<char> in(n, 0);
    std::vector<std::uint64_t> work;
    in[0] = 1;
    work.push_back(0);
    std::size_t head = 0;
    while (head < work.size()) {
        GroupElement x = element_from_index(g, work[head++]);
        for (const GroupElement& h : gens) {
            std::uint64_t idx = element_index(add(x, h));
            if (!in[idx]) {
                in[idx] = 1;
                work.push_back(idx);
            }
        }
    }
    if (size_out) *size_out = work.size();
    return in;
}

struct SubgroupRecord {
    std::vector<std::uint64_t> points;    // sorted element indices
    std::vector<GroupElement> gens;       // some generating set
    FinAbGroup iso_type;                  // canonical form
    std::size_t rank = 0;                 // minimal generator count
};

// Every subgroup, reached by closing generator sets one element at a time,
// deduplicated as point sets.
inline std::vector<SubgroupRecord> all_subgroups(const FinAbGroup& g, long long order_bound = 100000) {
    if (g.order() > order_bound)
        throw domain_error("GroupTooLarge", "subgroup enumeration bound exceeded");
    std::map<std::vector<std::uint64_t>, std::vector<GroupElement>> found;
    std::vector<std::vector<std::uint64_t>> queue;
    std::vector<std::uint64_t> triv = closure_of(g, {});
    found.emplace(triv, std::vector<GroupElement>{});
    queue.push_back(triv);
    long long n = g.order();
    std::size_t head = 0;
    while (head < queue.size()) {
        std::vector<std::uint64_t> base = queue[head++];
        std::set<std::uint64_t> base_set(base.begin(), base.end());
        std::vector<GroupElement> base_gens = found.at(base);
        for (long long e = 1; e < n; ++e) {
            std::uint64_t idx = static_cast<std::uint64_t>(e);
            if (base_set.count(idx)) continue;
            std::vector<std::uint64_t> seed = base;
            seed.push_back(idx);
            std::vector<std::uint64_t> cl = closure_of(g, seed);
            if (!found.count(cl)) {
                std::vector<GroupElement> gens = base_gens;
                gens.push_back(element_from_index(g, idx));
                found.emplace(cl, gens);
                queue.push_back(cl);
            }
        }
    }
    std::vector<SubgroupRecord> out;
    out.reserve(found.size());
    for (auto& [points, gens] : found) {
        SubgroupRecord rec;
        rec.points = points;
        rec.gens = gens;
        std::vector<GroupElement> elems;
        for (std::uint64_t p : points) elems.push_back(element_from_index(g, p));
        rec.iso_type = subgroup_generated(g, elems).subgroup;
        rec.rank = rec.iso_type.factor_count();
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const SubgroupRecord& a, const SubgroupRecord& b) {
        if (a.points.size() != b.points.size()) return a.points.size() < b.points.size();
        if (a.iso_type.orders != b.iso_type.orders) return a.iso_type.orders < b.iso_type.orders;
        return a.points < b.points;
    });
    return out;
}

// One entry per distinct subgroup whose minimal generator count is at most
// max_rank; max_rank < 0 means no bound.
inline std::vector<SubgroupRecord> subgroups_up_to_rank(const FinAbGroup& g, int max_rank) {
    std::vector<SubgroupRecord> all = all_subgroups(g);
    if (max_rank < 0) return all;
    std::vector<SubgroupRecord> out;
    for (auto& rec : all)
        if (rec.rank <= static_cast<std::size_t>(max_rank)) out.push_back(rec);
    return out;
}

// ---- characters ----------------------------------------------------------
//
// Characters are coordinate vectors over the dual basis of the stored
// factors (the coordinatewise identification G ≅ G∨); all values are
// exponent residues, no roots of unity are materialized.

// Smallest a >= 0 with chi restricted to <h> equal to psi^a, where psi is
// the distinguished generator of <h>∨ (psi(h) = omega_{o(h)}).
inline long long character_exponent_a(const GroupElement& chi, const GroupElement& h) {
    if (chi.parent != h.parent) throw std::logic_error("character_exponent_a: mixed parents");
    long long o = element_order(h);
    Int acc = 0;
    for (std::size_t i = 0; i < h.coords.size(); ++i) {
        Int num = Int(o) * h.coords[i];
        if (num % h.parent.orders[i] != 0)
            throw std::logic_error("character_exponent_a: order bookkeeping bug");
        acc += Int(chi.coords[i]) * (num / h.parent.orders[i]);
    }
    Int r = acc % o;
    if (r < 0) r += o;
    return static_cast<long long>(r);
}

// ---- primary decomposition ----------------------------------------------

// Projection onto the p-primary part, as multiplication by an idempotent
// scalar (1 mod p^a, 0 mod the complementary part of the exponent).
inline GroupElement primary_projection(const GroupElement& x, long long p) {
    long long e = x.parent.exponent();
    if (e == 1) return x;
    long long q = 1;
    while (e % p == 0) {
        e /= p;
        q *= p;
    }
    if (q == 1) return zero_element(x.parent);
    long long m = e;  // complementary exponent part
    long long scalar = m * mod_inverse(m % q, q);  // ≡ 1 mod q, ≡ 0 mod m
    return scale(scalar, x);
}

}  // namespace ellcov
