#pragma once

#include "ellcov/classify.hpp"

namespace ellcov {

// Boundary divisors B_{j,i} on the k-th iterated universal curve over
// M_{1,n-k}: x_j = y_i for j <= n-k, y-pair diagonals for the rest, with
// B_{n-k+j,i} = B_{n-k+i,j} deduplicated. Labels are 1-based (j, i).
struct BoundaryBasis {
    std::size_t n = 0, k = 0;
    std::vector<std::pair<std::size_t, std::size_t>> labels;
};

inline BoundaryBasis boundary_basis(std::size_t n, std::size_t k) {
    if (k >= n) throw domain_error("InvalidRange", "need 0 <= k < n");
    BoundaryBasis b;
    b.n = n;
    b.k = k;
    for (std::size_t i = 1; i <= k; ++i)
        for (std::size_t j = 1; j <= n - k; ++j) b.labels.push_back({j, i});
    for (std::size_t i1 = 1; i1 <= k; ++i1)
        for (std::size_t i2 = i1 + 1; i2 <= k; ++i2) b.labels.push_back({n - k + i2, i1});
    std::sort(b.labels.begin(), b.labels.end(), [](auto a, auto c) {
        return std::make_pair(a.second, a.first) < std::make_pair(c.second, c.first);
    });
    if (b.labels.size() != static_cast<std::size_t>(excluded_loci_count_for(k, n)))
        throw std::logic_error("boundary_basis: count mismatch");
    return b;
}

struct DivisorClass {
    BoundaryBasis basis;
    std::vector<Rat> coeffs;
};

// Class of the torsion locus a y ≡ sum b_j x_j (a = sum b_j) over the
// B_{j,n} basis of the single universal curve: coefficients a b_j.
inline DivisorClass class_of_torsion_locus(const std::vector<long long>& b) {
    DivisorClass out;
    out.basis = boundary_basis(b.size() + 1, 1);
    long long a = 0;
    for (long long v : b) a += v;
    for (long long v : b) out.coeffs.push_back(Rat(a) * v);
    return out;
}

// Row j expresses [D_{j,n}] over B_{1,n}..B_{n-1,n}:
//   o(r_k) ( e_j + sum_i b_{ki} e_i + (o(r_k) - sum_{s<=n} b_{ks}) e_1 ).
inline std::vector<std::vector<Rat>> lincomb_matrix(const RamificationData& data) {
    if (!is_totally_ramified(data))
        throw domain_error("NotTotallyRamified", "lincomb matrix requires R = G");
    SplitCoefficients sc = split_coefficients(data);
    if (sc.k == 0) throw domain_error("NotTotallyRamified", "need k >= 1");
    const std::size_t n = data.n();
    long long o = sc.orders_R[sc.k - 1];
    std::vector<long long> brow(n);
    long long row_sum = 0;
    for (std::size_t s = 0; s < n; ++s) {
        brow[s] = static_cast<long long>(sc.b.at(sc.k - 1, s));
        row_sum += brow[s];
    }
    std::vector<std::vector<Rat>> m(n - 1, std::vector<Rat>(n - 1, Rat(0)));
    for (std::size_t j = 0; j < n - 1; ++j) {
        for (std::size_t i = 0; i < n - 1; ++i) {
            long long v = (i == j ? 1 : 0) + brow[i] + (i == 0 ? o - row_sum : 0);
            m[j][i] = Rat(o) * v;
        }
    }
    return m;
}

struct InvertibilityResult {
    bool is_invertible = false;
    Rat determinant;
    std::vector<Rat> normalized_row_sums;  // row sums after dividing by o(r_k)
};

inline InvertibilityResult invertibility_check(const std::vector<std::vector<Rat>>& m,
                                               long long o_rk) {
    InvertibilityResult out;
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw std::logic_error("invertibility_check: square matrix required");
    for (const auto& row : m) {
        Rat s = 0;
        for (const Rat& v : row) s += v;
        out.normalized_row_sums.push_back(o_rk == 0 ? s : s / o_rk);
    }
    // exact Gaussian elimination
    std::vector<std::vector<Rat>> w = m;
    Rat det = 1;
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t p = t;
        while (p < n && w[p][t] == 0) ++p;
        if (p == n) {
            out.determinant = 0;
            out.is_invertible = false;
            return out;
        }
        if (p != t) {
            std::swap(w[p], w[t]);
            det = -det;
        }
        det *= w[t][t];
        Rat inv = Rat(1) / w[t][t];
        for (std::size_t j = t; j < n; ++j) w[t][j] *= inv;
        for (std::size_t i = t + 1; i < n; ++i) {
            if (w[i][t] == 0) continue;
            Rat f = w[i][t];
            for (std::size_t j = t; j < n; ++j) w[i][j] -= f * w[t][j];
        }
    }
    out.determinant = det;
    out.is_invertible = det != 0;
    return out;
}

// Independent relations among the boundary divisor classes of the
// compactified totally ramified moduli: total components of the excluded
// loci (oracle-backed) minus the number of loci.
inline long long relation_count(const RamificationData& data, long long max_states = 1000000) {
    if (!is_totally_ramified(data))
        throw domain_error("NotTotallyRamified", "relation count requires R = G");
    auto [k, indices] = minimal_k(data);
    if (k == data.n()) throw domain_error("EmptyModuli", "moduli is empty when k = n");
    long long total = 0;
    for (const auto& locus : excluded_loci(data, true, max_states))
        total += *locus.count.oracle_count;
    long long r = total - excluded_loci_count_for(k, data.n());
    if (r < 0) throw std::logic_error("relation_count: negative relation count");
    return r;
}

// rank bookkeeping for an open substack sitting in a compactification with
// n_boundary divisors and in an auxiliary space of Picard rank m with
// m + extra removed divisors: the resulting rank is n_boundary - extra.
inline long long picard_rank_from_counts(long long n_boundary, long long /*m*/, long long extra) {
    if (extra > n_boundary) throw domain_error("NegativeRank", "more removed classes than boundary");
    return n_boundary - extra;
}

// dim of the relation space predicted for G = Z/p^alpha with a_n = 1:
// phi(p^beta) with p^beta = gcd(a_1..a_{n-1}, p^alpha), zero when beta = 0.
inline long long pgroup_relation_dimension(const std::vector<long long>& a, long long p,
                                           long long alpha) {
    if (a.empty()) throw domain_error("DegenerateVector", "empty coefficient vector");
    long long q = 1;
    for (long long t = 0; t < alpha; ++t) q *= p;
    if (mod_reduce(a.back(), q) != 1 % q)
        throw domain_error("InvalidData", "normalization a_n = 1 required");
    long long g = q;
    for (std::size_t i = 0; i + 1 < a.size(); ++i) g = gcd_ll(g, a[i]);
    if (g == 1) return 0;
    long long beta_pow = g;  // a power of p by construction
    return beta_pow - beta_pow / p;
}

}  // namespace ellcov
