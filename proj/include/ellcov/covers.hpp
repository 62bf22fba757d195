#pragma once

#include "ellcov/adapted_basis.hpp"

namespace ellcov {

// Group with ordered ramification elements h_1..h_n; zero entries are
// unramified marked points. base_genus is 1 for every classification
// operation and kept general for the genus formula.
struct RamificationData {
    FinAbGroup G;
    std::vector<GroupElement> h;
    long long base_genus = 1;

    RamificationData() = default;
    RamificationData(FinAbGroup g, std::vector<GroupElement> ram, long long genus = 1)
        : G(std::move(g)), h(std::move(ram)), base_genus(genus) {
        if (h.empty()) throw domain_error("InvalidData", "at least one marked point required");
        for (const auto& x : h)
            if (x.parent != G) throw domain_error("InvalidData", "ramification element not in G");
        if (base_genus < 0) throw domain_error("InvalidData", "negative base genus");
    }

    std::size_t n() const { return h.size(); }
};

struct RamificationSplit {
    FinAbGroup R;               // <h_1..h_n>, canonical form
    Homomorphism inclusion;     // R -> G
    FinAbGroup E;               // G/R, canonical form
    Homomorphism projection;    // G -> E
};

inline RamificationSplit ramification_split(const RamificationData& data) {
    auto sub = subgroup_generated(data.G, data.h);
    auto quo = quotient(data.G, data.h);
    if (sub.subgroup.order() * quo.quotient.order() != data.G.order())
        throw std::logic_error("ramification_split: exactness violated");
    return RamificationSplit{sub.subgroup, sub.inclusion, quo.quotient, quo.projection};
}

inline bool is_totally_ramified(const RamificationData& data) {
    return subgroup_generated(data.G, data.h).subgroup.order() == data.G.order();
}

// The cover datum admits a solution iff the ramification elements sum to
// zero (abelianized monodromy relation over a genus-1 base).
inline bool is_realizable(const RamificationData& data) {
    GroupElement sum = zero_element(data.G);
    for (const auto& x : data.h) sum = add(sum, x);
    return sum.is_zero();
}

// Genus of the covering curve via Riemann-Hurwitz:
//   2g - 2 = |G|(2h - 2) + sum_j |G| (1 - 1/|<h_j>|)
inline long long rh_genus(const RamificationData& data) {
    Rat rhs = Rat(data.G.order()) * Rat(2 * data.base_genus - 2);
    for (const auto& x : data.h) {
        long long o = element_order(x);
        rhs += Rat(data.G.order()) * (Rat(1) - Rat(1, o));
    }
    Rat g = (rhs + 2) / 2;
    if (boost::multiprecision::denominator(g) != 1)
        throw std::logic_error("rh_genus: formula did not produce an integer");
    Int num = boost::multiprecision::numerator(g);
    if (num < 0) throw std::logic_error("rh_genus: negative genus");
    return static_cast<long long>(num);
}

// 0 when a_{chi1} + a_{chi2} < |<h_j>|, else 1.
inline int epsilon_coefficient(const GroupElement& chi1, const GroupElement& chi2,
                               const GroupElement& h_j) {
    long long o = element_order(h_j);
    return character_exponent_a(chi1, h_j) + character_exponent_a(chi2, h_j) >= o ? 1 : 0;
}

// Coordinates of every h_j over a direct-sum basis of G: column j satisfies
// h_j = sum_i lambda_ij g_i with 0 <= lambda_ij < order(g_i).
inline Mat lambda_matrix(const RamificationData& data, const std::vector<GroupElement>& basis) {
    long long prod = 1;
    for (const auto& b : basis) {
        if (b.parent != data.G) throw domain_error("InvalidBasis", "basis element not in G");
        prod *= element_order(b);
    }
    if (prod != data.G.order() ||
        subgroup_generated(data.G, basis).subgroup.order() != data.G.order())
        throw domain_error("InvalidBasis", "not an internal direct-sum basis of G");
    Mat lambda(basis.size(), data.n());
    for (std::size_t j = 0; j < data.n(); ++j) {
        std::vector<long long> c = express_over_basis(data.G, basis, data.h[j]);
        for (std::size_t i = 0; i < basis.size(); ++i) lambda.at(i, j) = c[i];
    }
    return lambda;
}

// Smallest-cardinality subset of the h_j generating R, lexicographically
// first among those of minimal size; indices are 0-based positions into h.
inline std::pair<std::size_t, std::vector<std::size_t>> minimal_k(const RamificationData& data) {
    long long r_order = subgroup_generated(data.G, data.h).subgroup.order();
    std::size_t n = data.n();
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        for (;;) {
            std::vector<GroupElement> subset;
            for (std::size_t i : idx) subset.push_back(data.h[i]);
            if (subgroup_generated(data.G, subset).subgroup.order() == r_order)
                return {k, idx};
            // next k-combination in lexicographic order
            std::size_t t = k;
            while (t > 0 && idx[t - 1] == n - k + t - 1) --t;
            if (t == 0) break;
            ++idx[t - 1];
            for (std::size_t i = t; i < k; ++i) idx[i] = idx[i - 1] + 1;
        }
    }
    throw std::logic_error("minimal_k: unreachable");
}

// Split building data of Eq-style reduced compatibilities: adapted basis of
// R over the minimal generating subset, the b-matrix over all n points in
// the reordered presentation, and the c-matrix pairing character lifts
// against the canonical basis of E.
struct SplitCoefficients {
    RamificationSplit split;
    std::size_t k = 0;
    std::vector<std::size_t> minimal_indices;  // 0-based, ascending
    std::vector<std::size_t> point_order;      // position -> original index
    AdaptedBasis adapted;                      // basis of R in R-coordinates
    std::vector<GroupElement> basis_R;         // the same basis, mapped into G
    std::vector<long long> orders_R;
    Mat b;                                     // k x n, columns in point_order
    std::vector<GroupElement> basis_E;         // canonical generators of E
    Mat c;                                     // k x l, 0 <= c_ij < order(e_j)
    std::vector<GroupElement> char_lifts;      // g'_i in G∨-coordinates
};

namespace detail {

// Lexicographically smallest character of G restricting to the dual basis
// vector i on the R-basis (scan order = element index order).
inline GroupElement lift_dual_generator(const FinAbGroup& g,
                                        const std::vector<GroupElement>& basis_in_G,
                                        std::size_t i) {
    long long n = g.order();
    for (long long idx = 0; idx < n; ++idx) {
        GroupElement chi = element_from_index(g, static_cast<std::uint64_t>(idx));
        bool ok = true;
        for (std::size_t s = 0; s < basis_in_G.size() && ok; ++s)
            if (character_exponent_a(chi, basis_in_G[s]) != (s == i ? 1 : 0)) ok = false;
        if (ok) return chi;
    }
    throw std::logic_error("lift_dual_generator: restriction map not surjective");
}

}  // namespace detail

inline SplitCoefficients split_coefficients(const RamificationData& data) {
    SplitCoefficients out;
    out.split = ramification_split(data);
    auto [k, indices] = minimal_k(data);
    out.k = k;
    out.minimal_indices = indices;

    // express the minimal generators in R-coordinates
    std::vector<GroupElement> gens_in_R;
    const FinAbGroup& R = out.split.R;
    for (std::size_t idx : indices) {
        auto sol = solve_over_gens(data.G, [&] {
            std::vector<GroupElement> cols;
            for (std::size_t t = 0; t < R.factor_count(); ++t) {
                std::vector<long long> c(data.G.factor_count());
                for (std::size_t i = 0; i < data.G.factor_count(); ++i)
                    c[i] = static_cast<long long>(out.split.inclusion.matrix.at(i, t));
                cols.push_back(GroupElement(data.G, c));
            }
            return cols;
        }(), data.h[idx]);
        if (!sol) throw std::logic_error("split_coefficients: h_j not in R");
        std::vector<long long> c(R.factor_count());
        for (std::size_t t = 0; t < R.factor_count(); ++t) {
            Int r = (*sol)[t] % R.orders[t];
            if (r < 0) r += R.orders[t];
            c[t] = static_cast<long long>(r);
        }
        gens_in_R.push_back(GroupElement(R, c));
    }
    out.adapted = adapted_basis(R, gens_in_R);

    // point order: non-subset points first (original order), then the
    // minimal subset in the order chosen by the adapted basis
    std::vector<std::size_t> order;
    for (std::size_t j = 0; j < data.n(); ++j)
        if (std::find(indices.begin(), indices.end(), j) == indices.end()) order.push_back(j);
    for (std::size_t t : out.adapted.reordering) order.push_back(indices[t]);
    out.point_order = order;

    for (const auto& r : out.adapted.basis) {
        out.basis_R.push_back(out.split.inclusion.apply(r));
        out.orders_R.push_back(element_order(r));
    }

    // b-matrix over all n points (each h_j lies in R)
    out.b = Mat(k, data.n());
    if (k > 0) {
        for (std::size_t pos = 0; pos < data.n(); ++pos) {
            const GroupElement& hj = data.h[order[pos]];
            std::vector<long long> c = express_over_basis(data.G, out.basis_R, hj);
            for (std::size_t i = 0; i < k; ++i) out.b.at(i, pos) = c[i];
        }
    }

    // canonical basis of E and the c-matrix from character lifts
    const FinAbGroup& E = out.split.E;
    for (std::size_t t = 0; t < E.factor_count(); ++t) {
        std::vector<long long> c(E.factor_count(), 0);
        c[t] = 1;
        out.basis_E.push_back(GroupElement(E, c));
    }
    out.c = Mat(k, E.factor_count());
    if (k > 0 && !E.is_trivial()) {
        // preimages of the canonical E-generators (any choice works: the
        // scaled lifts kill R)
        std::vector<GroupElement> e_preimages;
        for (std::size_t j = 0; j < E.factor_count(); ++j) {
            std::vector<Int> target(E.factor_count(), Int(0));
            target[j] = 1;
            std::vector<Int> mods(E.factor_count());
            for (std::size_t t = 0; t < E.factor_count(); ++t) mods[t] = E.orders[t];
            auto sol = solve_congruences(out.split.projection.matrix, target, mods);
            if (!sol) throw std::logic_error("split_coefficients: projection not surjective");
            std::vector<long long> c(data.G.factor_count());
            for (std::size_t t = 0; t < data.G.factor_count(); ++t) {
                Int r = (*sol)[t] % data.G.orders[t];
                if (r < 0) r += data.G.orders[t];
                c[t] = static_cast<long long>(r);
            }
            e_preimages.push_back(GroupElement(data.G, c));
        }
        for (std::size_t i = 0; i < k; ++i) {
            GroupElement lift = detail::lift_dual_generator(data.G, out.basis_R, i);
            out.char_lifts.push_back(lift);
            GroupElement xi = scale(out.orders_R[i], lift);
            for (std::size_t j = 0; j < E.factor_count(); ++j) {
                long long ov = element_order(e_preimages[j]);
                long long a = character_exponent_a(xi, e_preimages[j]);
                long long num = a * E.orders[j];
                if (num % ov != 0)
                    throw std::logic_error("split_coefficients: xi does not kill R");
                out.c.at(i, j) = mod_reduce(num / ov, E.orders[j]);
            }
        }
    } else if (k > 0) {
        for (std::size_t i = 0; i < k; ++i)
            out.char_lifts.push_back(detail::lift_dual_generator(data.G, out.basis_R, i));
    }
    return out;
}

}  // namespace ellcov
