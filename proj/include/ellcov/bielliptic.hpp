#pragma once

#include "ellcov/picard.hpp"

namespace ellcov {

// Boundary strata of the admissible compactification of the bielliptic
// moduli with ordered branch points (n = 2g-2): the two components over the
// irreducible-nodal divisor, the two over Delta_{[n]}, and one stratum per
// proper subset I with |I| >= 2, split by parity of |I|.
enum class StratumKind {
    Delta0_branch = 0,
    Delta0_etale = 1,
    Theta_star = 2,
    Theta_full = 3,
    Theta_even = 4,
    Xi_odd = 5
};

inline std::string stratum_kind_name(StratumKind k) {
    switch (k) {
        case StratumKind::Delta0_branch: return "Delta0_br";
        case StratumKind::Delta0_etale: return "Delta0_et";
        case StratumKind::Theta_star: return "Theta_star";
        case StratumKind::Theta_full: return "Theta_full";
        case StratumKind::Theta_even: return "Theta_I";
        default: return "Xi_I";
    }
}

struct BoundaryStratum {
    StratumKind kind;
    std::vector<std::size_t> I;  // 1-based marked-point subset, sorted
    long long g1 = -1, g2 = -1;  // genus split where applicable
};

inline void check_genus(long long g) {
    if (g < 2) throw domain_error("InvalidGenus", "bielliptic strata require genus >= 2");
}

inline std::vector<BoundaryStratum> boundary_strata(long long g) {
    check_genus(g);
    const std::size_t n = static_cast<std::size_t>(2 * g - 2);
    if (n > 30) throw domain_error("InvalidGenus", "stratum enumeration bound exceeded");
    std::vector<BoundaryStratum> out;
    out.push_back({StratumKind::Delta0_branch, {}, -1, -1});
    out.push_back({StratumKind::Delta0_etale, {}, -1, -1});
    out.push_back({StratumKind::Theta_star, {}, -1, -1});
    std::vector<std::size_t> full(n);
    for (std::size_t i = 0; i < n; ++i) full[i] = i + 1;
    out.push_back({StratumKind::Theta_full, full, -1, -1});
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<std::size_t> I;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::uint64_t(1) << i)) I.push_back(i + 1);
        if (I.size() < 2 || I.size() == n) continue;
        BoundaryStratum s;
        s.I = I;
        if (I.size() % 2 == 0) {
            // hyperelliptic tail glued along an involution orbit pair
            s.kind = StratumKind::Theta_even;
            s.g1 = (static_cast<long long>(I.size()) - 2) / 2;
            s.g2 = g - s.g1 - 1;
        } else {
            // glued at two ramification points
            s.kind = StratumKind::Xi_odd;
            s.g1 = (static_cast<long long>(I.size()) - 1) / 2;
            s.g2 = g - s.g1;
        }
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const BoundaryStratum& a, const BoundaryStratum& b) {
        if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        return a.I < b.I;
    });
    return out;
}

inline long long stratum_count(long long g) {
    check_genus(g);
    long long n = 2 * g - 2;
    return (1LL << n) - n + 2;
}

inline long long picard_number_ordered(long long g) {
    check_genus(g);
    long long n = 2 * g - 2;
    if (n > 60) throw domain_error("InvalidGenus", "Picard number exceeds 64-bit range");
    long long delta = g == 2 ? 1 : 0;
    return (1LL << n) + 2 - n - delta;
}

inline long long picard_number_unordered(long long g) {
    check_genus(g);
    return 2 * g - (g == 2 ? 1 : 0);
}

inline std::pair<long long, long long> invariant_boundary_counts(long long g) {
    check_genus(g);
    return {2 * g - 2, 2 * g};
}

// S_n-orbit census of the strata, keyed by (kind, |I|).
inline std::map<std::pair<std::string, std::size_t>, long long> sn_orbit_census(long long g) {
    std::map<std::pair<std::string, std::size_t>, long long> census;
    for (const auto& s : boundary_strata(g)) {
        std::size_t size = s.I.size();
        if (s.kind == StratumKind::Theta_even || s.kind == StratumKind::Xi_odd)
            census[{stratum_kind_name(s.kind), size}] += 1;
        else
            census[{stratum_kind_name(s.kind), size}] = 1;
    }
    return census;
}

// Bielliptic ramification datum: n = 2g-2 branch points over Z/2, plus
// optional extra unramified markings.
inline RamificationData bielliptic_data(long long g, std::size_t extra_unramified = 0) {
    check_genus(g);
    FinAbGroup z2(std::vector<long long>{2});
    std::vector<GroupElement> h(static_cast<std::size_t>(2 * g - 2), GroupElement(z2, {1}));
    for (std::size_t i = 0; i < extra_unramified; ++i) h.push_back(zero_element(z2));
    return RamificationData(z2, h);
}

}  // namespace ellcov
