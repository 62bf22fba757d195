#pragma once

#include "ellcov/group_ops.hpp"

namespace ellcov {

// Basis of R adapted to a minimal generating subset: column t of b_matrix
// expresses gens[reordering[t]] over the basis r_1..r_k, with a unit
// coefficient on the diagonal and the successive-quotient surjectivity
// property below (validate_adapted).
struct AdaptedBasis {
    FinAbGroup group;                     // R
    std::vector<std::size_t> reordering;  // position t -> original generator index
    std::vector<GroupElement> basis;      // r_1..r_k, direct sum = R
    std::vector<long long> basis_orders;
    Mat b_matrix;                         // k x k, 0 <= b_ij < order(r_i)
};

namespace detail {

// all arithmetic below is element-level against membership marks, so the
// appendix machinery runs without any matrix algebra on the hot path

inline std::size_t marks_size(const std::vector<char>& marks) {
    std::size_t n = 0;
    for (char c : marks) n += c ? 1 : 0;
    return n;
}

// order of the image of x in R/<marks subgroup>
inline long long order_mod(const FinAbGroup& R, const std::vector<char>& marks,
                           const GroupElement& x) {
    GroupElement acc = x;
    long long o = element_order(x);
    for (long long m = 1; m <= o; ++m) {
        if (marks[element_index(acc)]) return m;
        acc = add(acc, x);
    }
    throw std::logic_error("order_mod: order bookkeeping bug");
}

// Lexicographically smallest element of the coset base + <chosen> whose
// order is target_order and which extends the chosen chain directly.
inline std::optional<GroupElement> direct_lift(const FinAbGroup& R,
                                               const std::vector<GroupElement>& chosen,
                                               const std::vector<char>& kernel_marks,
                                               std::size_t kernel_size,
                                               const GroupElement& base, long long target_order) {
    std::optional<GroupElement> best;
    const std::uint64_t n = static_cast<std::uint64_t>(R.order());
    for (std::uint64_t idx = 0; idx < n; ++idx) {
        if (!kernel_marks[idx]) continue;
        GroupElement cand = add(base, element_from_index(R, idx));
        if (element_order(cand) != target_order) continue;
        if (best && !(cand.coords < best->coords)) continue;
        std::vector<GroupElement> ext = chosen;
        ext.push_back(cand);
        std::size_t sz = 0;
        closure_marks(R, ext, &sz);
        if (sz == kernel_size * static_cast<std::size_t>(target_order)) best = cand;
    }
    return best;
}

// Depth-first search for a chain basis giving an upper-unitriangular
// b_matrix: at each level some remaining generator maps, in the current
// quotient, to a direct-summand generator that lifts compatibly.
inline bool chain_search(const FinAbGroup& R, const std::vector<GroupElement>& gens,
                         std::vector<std::size_t>& order_out,
                         std::vector<GroupElement>& basis_out, std::vector<bool>& used,
                         std::vector<GroupElement>& chosen) {
    if (chosen.size() == gens.size()) {
        long long prod = 1;
        for (const auto& r : chosen) prod *= element_order(r);
        return prod == R.order();
    }
    std::size_t kernel_size = 0;
    std::vector<char> kernel = closure_marks(R, chosen, &kernel_size);
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (used[j]) continue;
        if (kernel[element_index(gens[j])]) continue;  // image vanishes
        long long o = order_mod(R, kernel, gens[j]);
        auto lift = direct_lift(R, chosen, kernel, kernel_size, gens[j], o);
        if (!lift) continue;
        used[j] = true;
        chosen.push_back(*lift);
        order_out.push_back(j);
        basis_out.push_back(*lift);
        if (chain_search(R, gens, order_out, basis_out, used, chosen)) return true;
        used[j] = false;
        chosen.pop_back();
        order_out.pop_back();
        basis_out.pop_back();
    }
    return false;
}

// General construction: batch over the primary parts of the successive
// quotients, assigning each part to the remaining generator of maximal
// projected order (smallest original index on ties).
inline bool batch_construction(const FinAbGroup& R, const std::vector<GroupElement>& gens,
                               std::vector<std::size_t>& order_out,
                               std::vector<GroupElement>& basis_out) {
    std::vector<bool> used(gens.size(), false);
    std::vector<GroupElement> chosen;
    while (chosen.size() < gens.size()) {
        std::size_t kernel_size = 0;
        std::vector<char> kernel = closure_marks(R, chosen, &kernel_size);
        long long q_order = R.order() / static_cast<long long>(kernel_size);
        if (q_order == 1) return false;
        // exponent of the quotient
        long long q_exp = 1;
        for (std::uint64_t idx = 0; idx < static_cast<std::uint64_t>(R.order()); ++idx)
            q_exp = lcm_ll(q_exp, order_mod(R, kernel, element_from_index(R, idx)));
        std::map<std::size_t, std::vector<long long>> assignment;  // gen index -> scalars
        for (auto [p, e] : factorize(q_order)) {
            long long q = 1;
            long long m = q_exp;
            while (m % p == 0) {
                m /= p;
                q *= p;
            }
            long long scalar = (q == 1) ? 0 : m * mod_inverse(m % q, q);
            long long best_order = 0;
            std::size_t best_j = gens.size();
            for (std::size_t j = 0; j < gens.size(); ++j) {
                if (used[j]) continue;
                long long o = order_mod(R, kernel, scale(scalar, gens[j]));
                if (o > best_order) {
                    best_order = o;
                    best_j = j;
                }
            }
            if (best_order <= 1) continue;
            assignment[best_j].push_back(scalar);
        }
        if (assignment.empty()) return false;
        for (auto& [j, scalars] : assignment) {
            GroupElement part = zero_element(R);
            for (long long s : scalars) part = add(part, scale(s, gens[j]));
            long long o = order_mod(R, kernel, part);
            auto lift = direct_lift(R, chosen, kernel, kernel_size, part, o);
            if (!lift) return false;
            used[j] = true;
            chosen.push_back(*lift);
            order_out.push_back(j);
            basis_out.push_back(*lift);
            std::size_t new_size = 0;
            kernel = closure_marks(R, chosen, &new_size);
            kernel_size = new_size;
        }
    }
    long long prod = 1;
    for (const auto& r : chosen) prod *= element_order(r);
    return prod == R.order();
}

}  // namespace detail

inline bool validate_adapted(const AdaptedBasis& ab, const std::vector<GroupElement>& gens);

inline AdaptedBasis adapted_basis(const FinAbGroup& R, const std::vector<GroupElement>& gens) {
    const std::size_t k = gens.size();
    for (const auto& g : gens)
        if (g.parent != R) throw std::logic_error("adapted_basis: generator in wrong group");
    std::size_t full = 0;
    closure_marks(R, gens, &full);
    if (full != static_cast<std::size_t>(R.order()))
        throw domain_error("NotGenerating", "generators do not generate the group");
    for (std::size_t drop = 0; drop < k; ++drop) {
        std::vector<GroupElement> rest;
        for (std::size_t j = 0; j < k; ++j)
            if (j != drop) rest.push_back(gens[j]);
        std::size_t sz = 0;
        closure_marks(R, rest, &sz);
        if (sz == static_cast<std::size_t>(R.order()))
            throw domain_error("NotMinimal", "a proper subset already generates");
    }

    AdaptedBasis ab;
    ab.group = R;
    if (k == 0) {
        ab.b_matrix = Mat(0, 0);
        return ab;
    }

    std::vector<std::size_t> order;
    std::vector<GroupElement> basis;
    std::vector<bool> used(k, false);
    std::vector<GroupElement> chosen;
    bool ok = detail::chain_search(R, gens, order, basis, used, chosen);
    if (!ok) {
        order.clear();
        basis.clear();
        ok = detail::batch_construction(R, gens, order, basis);
    }
    if (!ok) throw std::logic_error("adapted_basis: construction failed");

    ab.reordering = order;
    ab.basis = basis;
    for (const auto& r : basis) ab.basis_orders.push_back(element_order(r));
    ab.b_matrix = Mat(k, k);
    for (std::size_t t = 0; t < k; ++t) {
        std::vector<long long> coeffs = express_over_basis(R, basis, gens[order[t]]);
        for (std::size_t i = 0; i < k; ++i) ab.b_matrix.at(i, t) = coeffs[i];
    }
    if (!validate_adapted(ab, gens)) throw std::logic_error("adapted_basis: validation failed");
    return ab;
}

// True iff: reordering is a permutation, the basis is an internal direct sum
// equal to R, b_matrix reconstructs the reordered generators exactly, the
// image of the t-th reordered generator in R/<r_k,...,r_{t+1}> has unit
// coefficient on r_t, and the first t-1 generators surject onto each
// successive quotient R/<r_k,...,r_t>.
inline bool validate_adapted(const AdaptedBasis& ab, const std::vector<GroupElement>& gens) {
    const std::size_t k = gens.size();
    if (ab.reordering.size() != k || ab.basis.size() != k) return false;
    if (ab.b_matrix.rows != k || ab.b_matrix.cols != k) return false;
    std::vector<bool> seen(k, false);
    for (std::size_t t : ab.reordering) {
        if (t >= k || seen[t]) return false;
        seen[t] = true;
    }
    const FinAbGroup& R = ab.group;
    long long prod = 1;
    for (const auto& r : ab.basis) prod *= element_order(r);
    if (prod != R.order()) return false;
    std::size_t span = 0;
    closure_marks(R, ab.basis, &span);
    if (span != static_cast<std::size_t>(R.order())) return false;

    for (std::size_t t = 0; t < k; ++t) {
        GroupElement acc = zero_element(R);
        for (std::size_t i = 0; i < k; ++i) {
            Int bij = ab.b_matrix.at(i, t);
            if (bij < 0 || bij >= element_order(ab.basis[i])) return false;
            acc = add(acc, scale(static_cast<long long>(bij), ab.basis[i]));
        }
        if (!(acc == gens[ab.reordering[t]])) return false;
    }

    for (std::size_t t = 0; t < k; ++t) {
        // quotient by the tail r_{t+1}..r_k, held as membership marks
        std::vector<GroupElement> tail(ab.basis.begin() + t + 1, ab.basis.end());
        std::size_t tail_size = 0;
        std::vector<char> tail_marks = closure_marks(R, tail, &tail_size);
        long long q_order = R.order() / static_cast<long long>(tail_size);
        std::vector<long long> bar_orders(t + 1);
        long long bar_span = 1;
        for (std::size_t i = 0; i <= t; ++i) {
            bar_orders[i] = detail::order_mod(R, tail_marks, ab.basis[i]);
            bar_span *= bar_orders[i];
        }
        if (bar_span != q_order) return false;  // images stay a direct sum
        // coefficient of r_t in the image of the t-th generator: walk the
        // coefficient tuples; membership in the tail subgroup is equality in
        // the quotient
        {
            std::vector<long long> c(t + 1, 0);
            GroupElement diff = gens[ab.reordering[t]];  // gen - sum(c_i r_i)
            bool found = false;
            for (;;) {
                if (tail_marks[element_index(diff)]) {
                    found = true;
                    break;
                }
                std::size_t i = t + 1;
                bool carried_out = true;
                while (i > 0) {
                    --i;
                    if (c[i] + 1 < bar_orders[i]) {
                        ++c[i];
                        diff = sub(diff, ab.basis[i]);
                        carried_out = false;
                        break;
                    }
                    diff = add(diff, scale(bar_orders[i] - 1, ab.basis[i]));
                    c[i] = 0;
                }
                if (carried_out) break;
            }
            if (!found || c[t] != 1) return false;
        }
        // condition (2): earlier generators surject onto R/<r_t,...,r_k>
        std::vector<GroupElement> tail2(ab.basis.begin() + t, ab.basis.end());
        for (std::size_t s = 0; s < t; ++s) tail2.push_back(gens[ab.reordering[s]]);
        std::size_t sz = 0;
        closure_marks(R, tail2, &sz);
        if (sz != static_cast<std::size_t>(R.order())) return false;
    }
    return true;
}

// Rows i (1-based) whose generator-coefficient sum is nonzero modulo
// order(r_i); nonempty for every adapted basis of a minimal generating set.
inline std::set<std::size_t> nonvanishing_failures(const AdaptedBasis& ab) {
    std::set<std::size_t> rows;
    for (std::size_t i = 0; i < ab.b_matrix.rows; ++i) {
        Int sum = 0;
        for (std::size_t j = 0; j < ab.b_matrix.cols; ++j) sum += ab.b_matrix.at(i, j);
        if (sum % ab.basis_orders[i] != 0) rows.insert(i + 1);
    }
    return rows;
}

// Upper triangular with unit diagonal (the p-group / cyclic shape).
inline bool is_unitriangular(const Mat& b) {
    if (b.rows != b.cols) return false;
    for (std::size_t i = 0; i < b.rows; ++i) {
        if (b.at(i, i) != 1) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (b.at(i, j) != 0) return false;
    }
    return true;
}

}  // namespace ellcov
