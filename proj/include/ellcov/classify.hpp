#pragma once

#include "ellcov/oracle.hpp"

namespace ellcov {

enum class KType { trivial = 0, cyclic = 1, bicyclic = 2 };

inline std::string ktype_name(KType t) {
    switch (t) {
        case KType::trivial: return "trivial";
        case KType::cyclic: return "cyclic";
        default: return "bicyclic";
    }
}

// One irreducible component of the moduli of covers: a torsion subgroup K of
// the etale part E of rank <= 2, with a Weil index for rank-2 K.
struct ComponentDescriptor {
    KType k_type = KType::trivial;
    long long M = 0, N = 0;     // cyclic: N; bicyclic: (M, N) with M | N
    long long weil_index = 0;   // unit mod M, bicyclic only
    std::size_t k = 0;          // size of the minimal generating subset
    long long excluded_loci_count = 0;  // k n - k(k+1)/2
    std::string base_label;
    FinAbGroup gerbe_band;      // E/K
    std::vector<std::uint64_t> subgroup_points;  // K as a point set inside E
};

inline long long excluded_loci_count_for(std::size_t k, std::size_t n) {
    return static_cast<long long>(k) * static_cast<long long>(n) -
           static_cast<long long>(k) * static_cast<long long>(k + 1) / 2;
}

namespace detail {

inline std::string base_label_for(KType t, long long M, long long N, std::size_t k,
                                  std::size_t n_minus_k) {
    std::string sup = "^" + std::to_string(k) + "_" + std::to_string(n_minus_k);
    switch (t) {
        case KType::trivial:
            return "C^" + std::to_string(k) + "_(1," + std::to_string(n_minus_k) + ")";
        case KType::cyclic: return "Y1(" + std::to_string(N) + ")" + sup;
        default:
            return "Y1(" + std::to_string(M) + "," + std::to_string(N) + ")" + sup;
    }
}

}  // namespace detail

// The component catalog: empty when k = n; otherwise one descriptor per
// subgroup K <= E of rank <= 2, rank-2 subgroups expanded into phi(M)
// descriptors indexed by the units mod M. Rank >= 3 subgroups support no
// torsion embedding into an elliptic curve and are skipped.
inline std::vector<ComponentDescriptor> classify_components(const RamificationData& data) {
    if (data.base_genus != 1)
        throw domain_error("InvalidData", "classification requires base genus 1");
    auto [k, indices] = minimal_k(data);
    std::vector<ComponentDescriptor> out;
    if (k == data.n()) return out;
    FinAbGroup E = quotient(data.G, data.h).quotient;
    for (const auto& rec : subgroups_up_to_rank(E, 2)) {
        ComponentDescriptor base;
        base.k = k;
        base.excluded_loci_count = excluded_loci_count_for(k, data.n());
        base.subgroup_points = rec.points;
        base.gerbe_band = quotient(E, rec.gens).quotient;
        if (rec.rank == 0) {
            base.k_type = KType::trivial;
            base.base_label = detail::base_label_for(base.k_type, 0, 0, k, data.n() - k);
            out.push_back(base);
        } else if (rec.rank == 1) {
            base.k_type = KType::cyclic;
            base.N = rec.iso_type.orders[0];
            base.base_label = detail::base_label_for(base.k_type, 0, base.N, k, data.n() - k);
            out.push_back(base);
        } else {
            base.k_type = KType::bicyclic;
            base.M = rec.iso_type.orders[0];
            base.N = rec.iso_type.orders[1];
            base.base_label = detail::base_label_for(base.k_type, base.M, base.N, k, data.n() - k);
            for (long long u : units_mod(base.M)) {
                ComponentDescriptor d = base;
                d.weil_index = u;
                out.push_back(d);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ComponentDescriptor& a, const ComponentDescriptor& b) {
        auto key = [](const ComponentDescriptor& d) {
            return std::make_tuple(static_cast<int>(d.k_type), d.M, d.N, d.weil_index,
                                   d.subgroup_points);
        };
        return key(a) < key(b);
    });
    return out;
}

inline long long component_count(const RamificationData& data) {
    return static_cast<long long>(classify_components(data).size());
}

// Modular-curve label catalog of the etale decomposition: Y1(N) per cyclic
// subgroup (Y1(1) for the trivial one), (Y1(M,N),i) per rank-2 subgroup and
// unit i mod M.
inline std::map<std::string, long long> etale_decomposition(const FinAbGroup& E) {
    std::map<std::string, long long> catalog;
    for (const auto& rec : subgroups_up_to_rank(E, 2)) {
        if (rec.rank <= 1) {
            long long N = rec.rank == 0 ? 1 : rec.iso_type.orders[0];
            catalog["Y1(" + std::to_string(N) + ")"] += 1;
        } else {
            long long M = rec.iso_type.orders[0], N = rec.iso_type.orders[1];
            for (long long u : units_mod(M))
                catalog["(Y1(" + std::to_string(M) + "," + std::to_string(N) + ")," +
                        std::to_string(u) + ")"] += 1;
        }
    }
    return catalog;
}

// Both textual readings of the component count of a torsion locus
// sum a_i x_i ≡ 0, plus the authoritative monodromy-orbit count on demand.
struct TorsionLocusCount {
    long long gcd = 0;
    long long divisor_count_reading = 0;
    long long totient_reading = 0;
    std::optional<long long> oracle_count;
};

inline TorsionLocusCount torsion_locus_component_count(const std::vector<long long>& a,
                                                       bool with_oracle = false,
                                                       long long max_states = 1000000) {
    if (a.size() < 2) throw domain_error("DegenerateVector", "need at least two coefficients");
    long long sum = 0, g = 0;
    for (long long v : a) {
        sum += v;
        g = gcd_ll(g, v);
    }
    if (sum != 0) throw domain_error("DegenerateVector", "coefficients must sum to zero");
    if (g == 0) throw domain_error("DegenerateVector", "all coefficients vanish");
    TorsionLocusCount out;
    out.gcd = g;
    out.divisor_count_reading = divisor_count(g);
    out.totient_reading = euler_totient(g);
    if (with_oracle) {
        std::vector<long long> v = a;
        if (v.back() == 0) {
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] != 0) {
                    std::swap(v[i], v.back());
                    break;
                }
        }
        out.oracle_count = oracle::torsion_locus_orbit_count(v, max_states);
    }
    return out;
}

// One excluded codimension-1 locus D_{j,i}: the linear equivalence violated
// when the reconstructed point x_i collides with x_j, as an integer vector
// over (x_1..x_{m-1}, y) with zero coefficient sum.
struct DLocusDescriptor {
    std::size_t peeled_position = 0;  // i, 1-based (current last point)
    std::size_t j = 0;                // colliding point, 1-based
    std::vector<std::string> variables;
    std::vector<long long> coefficients;
    TorsionLocusCount count;
};

// The (n-1) + ... + (n-k) excluded loci of the component description,
// produced level by level: peel the last reordered point via the top basis
// row, emit the collision loci, pass to the reduced datum, repeat.
inline std::vector<DLocusDescriptor> excluded_loci(const RamificationData& data,
                                                   bool with_oracle = false,
                                                   long long max_states = 1000000) {
    if (data.base_genus != 1)
        throw domain_error("InvalidData", "excluded loci require base genus 1");
    auto [k0, indices0] = minimal_k(data);
    if (k0 == data.n())
        throw domain_error("EmptyModuli", "no components: the minimal subset exhausts the points");

    std::vector<DLocusDescriptor> out;
    // work inside R from the start
    auto split0 = ramification_split(data);
    FinAbGroup R = split0.R;
    std::vector<GroupElement> pts;
    {
        std::vector<GroupElement> incl_cols;
        for (std::size_t t = 0; t < R.factor_count(); ++t) {
            std::vector<long long> c(data.G.factor_count());
            for (std::size_t i = 0; i < data.G.factor_count(); ++i)
                c[i] = static_cast<long long>(split0.inclusion.matrix.at(i, t));
            incl_cols.push_back(GroupElement(data.G, c));
        }
        for (const auto& hj : data.h) {
            auto sol = solve_over_gens(data.G, incl_cols, hj);
            if (!sol) throw std::logic_error("excluded_loci: point not in R");
            std::vector<long long> c(R.factor_count());
            for (std::size_t t = 0; t < R.factor_count(); ++t) {
                Int r = (*sol)[t] % R.orders[t];
                if (r < 0) r += R.orders[t];
                c[t] = static_cast<long long>(r);
            }
            pts.push_back(GroupElement(R, c));
        }
    }
    // gens = minimal subset positions; reorder non-gens first once
    std::vector<std::size_t> gen_pos(indices0.begin(), indices0.end());
    {
        std::vector<GroupElement> reordered;
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (std::find(gen_pos.begin(), gen_pos.end(), j) == gen_pos.end())
                reordered.push_back(pts[j]);
        for (std::size_t j : gen_pos) reordered.push_back(pts[j]);
        pts = std::move(reordered);
    }

    std::size_t kt = k0;
    while (kt > 0) {
        const std::size_t m = pts.size();
        std::vector<GroupElement> gens(pts.end() - kt, pts.end());
        AdaptedBasis ab = adapted_basis(R, gens);
        // apply the adapted reordering to the generator tail
        std::vector<GroupElement> tail;
        for (std::size_t t : ab.reordering) tail.push_back(gens[t]);
        std::copy(tail.begin(), tail.end(), pts.end() - kt);
        // bottom row over all current points
        long long o = ab.basis_orders[kt - 1];
        std::vector<long long> row(m);
        long long row_sum = 0;
        for (std::size_t pos = 0; pos < m; ++pos) {
            row[pos] = express_over_basis(R, ab.basis, pts[pos])[kt - 1];
            row_sum += row[pos];
        }
        if (row[m - 1] != 1) throw std::logic_error("excluded_loci: unit diagonal lost");
        for (std::size_t j = 1; j <= m - 1; ++j) {
            DLocusDescriptor d;
            d.peeled_position = m;
            d.j = j;
            std::vector<long long> coeff(m, 0);  // x_1..x_{m-1}, then y
            for (std::size_t s = 0; s + 1 < m; ++s) coeff[s] -= row[s];
            coeff[0] -= o - row_sum;
            coeff[j - 1] -= 1;
            coeff[m - 1] = o;
            for (std::size_t s = 0; s + 1 < m; ++s)
                d.variables.push_back("x" + std::to_string(s + 1));
            d.variables.push_back("y" + std::to_string(kt));
            d.coefficients = coeff;
            d.count = torsion_locus_component_count(coeff, with_oracle, max_states);
            out.push_back(std::move(d));
        }
        // reduce: kill the top basis element, adjust the remaining points
        GroupElement h_last = pts[m - 1];
        std::vector<GroupElement> next_raw;
        for (std::size_t pos = 0; pos + 1 < m; ++pos)
            next_raw.push_back(sub(pts[pos], scale(row[pos], h_last)));
        auto q = quotient(R, {ab.basis[kt - 1]});
        std::vector<GroupElement> next;
        for (const auto& x : next_raw) next.push_back(q.projection.apply(x));
        R = q.quotient;
        pts = std::move(next);
        --kt;
    }
    if (out.size() != static_cast<std::size_t>(excluded_loci_count_for(k0, data.n())))
        throw std::logic_error("excluded_loci: count mismatch");
    return out;
}

}  // namespace ellcov
