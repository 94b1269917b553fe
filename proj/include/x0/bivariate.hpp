#pragma once

// Sparse bivariate integer polynomials in x (for j) and y (for f).

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "types.hpp"

namespace x0
{

/// x^a y^b.
struct Monomial
{
    int a = 0;
    int b = 0;

    friend auto operator<=>(const Monomial &, const Monomial &) = default;
};

struct Term
{
    Monomial m;
    Integer c;

    friend bool operator==(const Term &, const Term &) = default;
};

class BivariatePoly
{
public:
    /// Builds a polynomial from (monomial, coefficient) pairs; zero coefficients
    /// are dropped, repeated monomials summed. The result must be nonzero.
    BivariatePoly(std::int64_t level, const std::vector<Term> &terms) : level_(level)
    {
        for (const auto &t : terms) {
            if (t.m.a < 0 || t.m.b < 0) {
                throw std::invalid_argument("BivariatePoly: negative exponent");
            }
            terms_[t.m] += t.c;
        }
        std::erase_if(terms_, [](const auto &kv) { return sgn(kv.second) == 0; });
        if (terms_.empty()) {
            throw std::invalid_argument("BivariatePoly: zero polynomial");
        }
    }

    /// Parses the text form produced by to_string(), e.g. "16777216*y^3 - x*y + 1".
    static BivariatePoly parse(std::int64_t level, std::string_view text);

    std::int64_t level() const { return level_; }

    Integer coefficient(int a, int b) const
    {
        auto it = terms_.find({a, b});
        return it == terms_.end() ? Integer(0) : it->second;
    }

    const std::map<Monomial, Integer> &term_map() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    int x_degree() const
    {
        int d = 0;
        for (const auto &[m, c] : terms_) {
            d = std::max(d, m.a);
        }
        return d;
    }

    int y_degree() const
    {
        int d = 0;
        for (const auto &[m, c] : terms_) {
            d = std::max(d, m.b);
        }
        return d;
    }

    int total_degree() const
    {
        int d = 0;
        for (const auto &[m, c] : terms_) {
            d = std::max(d, m.a + m.b);
        }
        return d;
    }

    /// gcd of all coefficients (positive).
    Integer content() const
    {
        Integer g = 0;
        for (const auto &[m, c] : terms_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        }
        return g;
    }

    /// Content 1 and constant term +1.
    bool is_normalized() const { return content() == 1 && coefficient(0, 0) == 1; }

    /// Terms ordered by (b, a) descending; the storage order of the record format.
    std::vector<Term> terms_by_y_desc() const
    {
        std::vector<Term> out;
        for (const auto &[m, c] : terms_) {
            out.push_back({m, c});
        }
        std::sort(out.begin(), out.end(), [](const Term &l, const Term &r) {
            return std::pair(l.m.b, l.m.a) > std::pair(r.m.b, r.m.a);
        });
        return out;
    }

    /// Terms in degree-reverse-lexicographic order with x > y, highest first.
    std::vector<Term> terms_degrevlex() const
    {
        std::vector<Term> out;
        for (const auto &[m, c] : terms_) {
            out.push_back({m, c});
        }
        std::sort(out.begin(), out.end(), [](const Term &l, const Term &r) {
            const int dl = l.m.a + l.m.b, dr = r.m.a + r.m.b;
            if (dl != dr) {
                return dl > dr;
            }
            return l.m.b < r.m.b;
        });
        return out;
    }

    std::string to_string() const
    {
        std::ostringstream os;
        bool first = true;
        for (const auto &[m, c] : terms_degrevlex()) {
            const bool neg = sgn(c) < 0;
            const Integer mag = abs(c);
            if (first) {
                os << (neg ? "-" : "");
            } else {
                os << (neg ? " - " : " + ");
            }
            first = false;
            std::string mono;
            if (m.a > 0) {
                mono += m.a == 1 ? "x" : "x^" + std::to_string(m.a);
            }
            if (m.b > 0) {
                mono += mono.empty() ? "" : "*";
                mono += m.b == 1 ? "y" : "y^" + std::to_string(m.b);
            }
            if (mono.empty()) {
                os << mag;
            } else if (mag == 1) {
                os << mono;
            } else {
                os << mag << "*" << mono;
            }
        }
        return os.str();
    }

    friend bool operator==(const BivariatePoly &l, const BivariatePoly &r)
    {
        return l.level_ == r.level_ && l.terms_ == r.terms_;
    }

private:
    std::int64_t level_;
    std::map<Monomial, Integer> terms_;
};

inline BivariatePoly BivariatePoly::parse(std::int64_t level, std::string_view text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s.push_back(ch);
        }
    }
    auto fail = [&](const std::string &why) {
        throw std::invalid_argument("BivariatePoly::parse: " + why + " in \"" + std::string(text) + "\"");
    };
    std::vector<Term> terms;
    std::size_t i = 0;
    auto read_int = [&]() {
        const std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (start == i) {
            fail("expected digits");
        }
        return s.substr(start, i - start);
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!terms.empty()) {
            fail("expected '+' or '-'");
        }
        Term t{{0, 0}, Integer(1)};
        bool have_factor = false;
        while (i < s.size() && s[i] != '+' && s[i] != '-') {
            if (have_factor) {
                if (s[i] != '*') {
                    fail("expected '*'");
                }
                ++i;
            }
            if (i >= s.size()) {
                fail("dangling '*'");
            }
            if (std::isdigit(static_cast<unsigned char>(s[i]))) {
                t.c *= Integer(read_int());
            } else if (s[i] == 'x' || s[i] == 'y') {
                const char var = s[i++];
                int e = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    e = std::stoi(read_int());
                }
                (var == 'x' ? t.m.a : t.m.b) += e;
            } else {
                fail(std::string("unexpected '") + s[i] + "'");
            }
            have_factor = true;
        }
        if (!have_factor) {
            fail("empty term");
        }
        t.c *= sign;
        terms.push_back(std::move(t));
    }
    return BivariatePoly(level, terms);
}

} // namespace x0
