#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "ellcov/matrix.hpp"
#include "ellcov/numeric.hpp"

namespace ellcov {

// Finite abelian group presented by cyclic factor orders Z/d1 x ... x Z/dl.
// Factors of order 1 carry no data and are dropped at construction; the
// trivial group is the empty factor list.
struct FinAbGroup {
    std::vector<long long> orders;

    FinAbGroup() = default;
    explicit FinAbGroup(std::vector<long long> ds) {
        for (long long d : ds) {
            if (d <= 0) throw domain_error("InvalidGroup", "factor orders must be positive");
            if (d > 1) orders.push_back(d);
        }
    }

    std::size_t factor_count() const { return orders.size(); }
    bool is_trivial() const { return orders.empty(); }

    long long order() const {
        long long n = 1;
        for (long long d : orders) n *= d;
        return n;
    }

    long long exponent() const {
        long long e = 1;
        for (long long d : orders) e = lcm_ll(e, d);
        return e;
    }

    bool operator==(const FinAbGroup& o) const { return orders == o.orders; }
    bool operator!=(const FinAbGroup& o) const { return !(*this == o); }

    std::string to_string() const {
        if (orders.empty()) return "Z/1";
        std::string s;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (i) s += " x ";
            s += "Z/" + std::to_string(orders[i]);
        }
        return s;
    }
};

// Element of a FinAbGroup; coords are stored reduced into [0, d_i).
struct GroupElement {
    FinAbGroup parent;
    std::vector<long long> coords;

    GroupElement() = default;
    GroupElement(FinAbGroup g, std::vector<long long> cs) : parent(std::move(g)) {
        if (cs.size() != parent.factor_count())
            throw domain_error("InvalidElement", "coordinate count does not match group");
        coords.reserve(cs.size());
        for (std::size_t i = 0; i < cs.size(); ++i)
            coords.push_back(mod_reduce(cs[i], parent.orders[i]));
    }

    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](long long c) { return c == 0; });
    }

    bool operator==(const GroupElement& o) const {
        return parent == o.parent && coords == o.coords;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(coords[i]);
        }
        return s + ")";
    }
};

inline GroupElement zero_element(const FinAbGroup& g) {
    return GroupElement(g, std::vector<long long>(g.factor_count(), 0));
}

inline GroupElement add(const GroupElement& x, const GroupElement& y) {
    if (x.parent != y.parent) throw std::logic_error("add: mixed parents");
    std::vector<long long> c(x.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mod_reduce(x.coords[i] + y.coords[i], x.parent.orders[i]);
    return GroupElement(x.parent, c);
}

inline GroupElement negate(const GroupElement& x) {
    std::vector<long long> c(x.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = mod_reduce(-x.coords[i], x.parent.orders[i]);
    return GroupElement(x.parent, c);
}

inline GroupElement scale(long long t, const GroupElement& x) {
    std::vector<long long> c(x.coords.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        long long m = x.parent.orders[i];
        c[i] = mod_reduce((t % m) * x.coords[i], m);
    }
    return GroupElement(x.parent, c);
}

inline GroupElement sub(const GroupElement& x, const GroupElement& y) {
    return add(x, negate(y));
}

// Least m >= 1 with m*x = 0.
inline long long element_order(const GroupElement& x) {
    long long m = 1;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        long long d = x.parent.orders[i];
        long long o = d / gcd_ll(x.coords[i], d);
        m = lcm_ll(m, o);
    }
    return m;
}

// Group homomorphism given by the images of the source factor generators
// (matrix column j = image of the j-th source generator, in target coords).
struct Homomorphism {
    FinAbGroup source;
    FinAbGroup target;
    Mat matrix;  // target.factor_count() x source.factor_count()

    Homomorphism() = default;
    Homomorphism(FinAbGroup s, FinAbGroup t, Mat m)
        : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
        if (matrix.rows != target.factor_count() || matrix.cols != source.factor_count())
            throw std::logic_error("Homomorphism: matrix shape mismatch");
        // well-definedness: d_j(source) * column j vanishes in the target
        for (std::size_t j = 0; j < source.factor_count(); ++j)
            for (std::size_t i = 0; i < target.factor_count(); ++i)
                if (source.orders[j] * matrix.at(i, j) % target.orders[i] != 0)
                    throw std::logic_error("Homomorphism: not well defined");
    }

    GroupElement apply(const GroupElement& x) const {
        if (x.parent != source) throw std::logic_error("Homomorphism::apply: wrong parent");
        std::vector<long long> c(target.factor_count(), 0);
        for (std::size_t i = 0; i < target.factor_count(); ++i) {
            Int acc = 0;
            for (std::size_t j = 0; j < source.factor_count(); ++j)
                acc += matrix.at(i, j) * x.coords[j];
            c[i] = static_cast<long long>(acc % target.orders[i]);
            if (c[i] < 0) c[i] += target.orders[i];
        }
        return GroupElement(target, c);
    }
};

// ---- literal grammar --------------------------------------------------
//
// Group literal:   "Z/2 x Z/4"  (case-insensitive, whitespace-tolerant;
//                  "Z/1" and "trivial" denote the trivial group)
// Element literal: "(1,3)"; bare "3" is accepted for one-factor groups and
//                  "0"/"()" denote the identity of any group.

inline FinAbGroup parse_group(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += static_cast<char>(std::tolower(ch));
    if (s.empty()) throw domain_error("ParseError", "empty group literal");
    if (s == "trivial") return FinAbGroup();
    std::vector<long long> orders;
    std::size_t pos = 0;
    while (pos < s.size()) {
        if (s.compare(pos, 2, "z/") != 0)
            throw domain_error("ParseError", "expected 'Z/<n>' in group literal: " + text);
        pos += 2;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw domain_error("ParseError", "missing factor order in: " + text);
        orders.push_back(std::stoll(s.substr(start, pos - start)));
        if (pos < s.size()) {
            if (s[pos] != 'x')
                throw domain_error("ParseError", "expected 'x' between factors in: " + text);
            ++pos;
        }
    }
    return FinAbGroup(orders);
}

inline GroupElement parse_element(const std::string& text, const FinAbGroup& g) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw domain_error("ParseError", "empty element literal");
    if (!s.empty() && s.front() == '(') {
        if (s.back() != ')') throw domain_error("ParseError", "unbalanced parens in: " + text);
        s = s.substr(1, s.size() - 2);
    }
    if (s.empty()) {
        if (!g.is_trivial()) throw domain_error("ParseError", "element arity mismatch: " + text);
        return zero_element(g);
    }
    std::vector<long long> coords;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw domain_error("ParseError", "bad element literal: " + text);
        try {
            coords.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw domain_error("ParseError", "bad coordinate in element literal: " + text);
        }
    }
    if (coords.size() == 1 && coords[0] == 0 && g.factor_count() != 1)
        return zero_element(g);  // "0" as identity shorthand
    if (coords.size() != g.factor_count())
        throw domain_error("ParseError", "element arity mismatch for " + g.to_string() + ": " + text);
    return GroupElement(g, coords);
}

}  // namespace ellcov
