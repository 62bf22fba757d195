#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ellcov {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Domain errors carry a stable code string so the CLI can map them to
// structured error reports (exit code 3).
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

inline long long gcd_ll(long long a, long long b) {
    a = a < 0 ? -a : a;
    b = b < 0 ? -b : b;
    while (b != 0) {
        long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline long long lcm_ll(long long a, long long b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_ll(a, b) * b;
}

// ax + by = gcd(a,b), gcd >= 0
inline long long ext_gcd(long long a, long long b, long long& x, long long& y) {
    if (b == 0) {
        x = a < 0 ? -1 : 1;
        y = 0;
        return a < 0 ? -a : a;
    }
    long long x1, y1;
    long long g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

inline long long mod_reduce(long long v, long long m) {
    if (m <= 0) throw std::logic_error("mod_reduce: nonpositive modulus");
    long long r = v % m;
    return r < 0 ? r + m : r;
}

inline long long mod_inverse(long long a, long long m) {
    long long x, y;
    long long g = ext_gcd(mod_reduce(a, m), m, x, y);
    if (g != 1) throw std::logic_error("mod_inverse: not a unit");
    return mod_reduce(x, m);
}

inline long long euler_totient(long long n) {
    if (n <= 0) throw std::invalid_argument("euler_totient: n must be positive");
    long long result = n;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

inline long long divisor_count(long long n) {
    if (n <= 0) throw std::invalid_argument("divisor_count: n must be positive");
    long long count = 1;
    long long m = n;
    for (long long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            long long e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            count *= e + 1;
        }
    }
    if (m > 1) count *= 2;
    return count;
}

inline std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> factors;
    for (long long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            factors.push_back({p, e});
        }
    }
    if (n > 1) factors.push_back({n, 1});
    return factors;
}

// Units modulo m, ascending. phi(1) = 1 with the unit represented by 1.
inline std::vector<long long> units_mod(long long m) {
    std::vector<long long> units;
    if (m == 1) {
        units.push_back(1);
        return units;
    }
    for (long long i = 1; i < m; ++i)
        if (gcd_ll(i, m) == 1) units.push_back(i);
    return units;
}

// Canonical rendering for exact rationals: lowest terms, "p" when the
// denominator is 1, otherwise "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace ellcov
