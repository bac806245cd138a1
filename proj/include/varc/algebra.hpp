#ifndef VARC_ALGEBRA_HPP
#define VARC_ALGEBRA_HPP

#include "varc/audit.hpp"
#include "varc/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace varc {

using GenIdx = std::uint32_t;

// Parity is degree mod 2; odd generators square to zero.
struct Generator {
    std::string name;
    int degree = 0;
    int weight = 0;
    int charge = 0;
    bool odd() const { return ((degree % 2) + 2) % 2 == 1; }
};

// Free graded-commutative algebra presentation: an ordered list of
// generators. The declared order is the canonical order used for monomial
// normal forms; names must be unique.
class Presentation {
public:
    Presentation() = default;
    explicit Presentation(std::vector<Generator> gens) : gens_(std::move(gens)) {
        for (GenIdx i = 0; i < gens_.size(); ++i) {
            auto [it, fresh] = by_name_.emplace(gens_[i].name, i);
            (void)it;
            audit_check(fresh, "duplicate generator name '", gens_[i].name, "'");
        }
    }

    GenIdx add(Generator g) {
        auto [it, fresh] = by_name_.emplace(g.name, static_cast<GenIdx>(gens_.size()));
        (void)it;
        audit_check(fresh, "duplicate generator name '", g.name, "'");
        gens_.push_back(std::move(g));
        return static_cast<GenIdx>(gens_.size() - 1);
    }

    std::size_t size() const { return gens_.size(); }
    const Generator& gen(GenIdx i) const { return gens_[i]; }
    const std::vector<Generator>& gens() const { return gens_; }

    GenIdx index_of(const std::string& name) const {
        auto it = by_name_.find(name);
        audit_check(it != by_name_.end(), "unknown generator '", name, "'");
        return it->second;
    }
    bool has(const std::string& name) const { return by_name_.count(name) != 0; }

private:
    std::vector<Generator> gens_;
    std::map<std::string, GenIdx> by_name_;
};

// Normal-form monomial: factors sorted by generator index, exponents >= 1,
// odd generators with exponent <= 1 (higher powers vanish).
class Monomial {
public:
    using Factor = std::pair<GenIdx, std::uint32_t>;

    Monomial() = default;
    static Monomial one() { return Monomial(); }
    static Monomial var(GenIdx g, std::uint32_t e = 1) {
        Monomial m;
        if (e > 0) m.factors_.push_back({g, e});
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }
    std::size_t num_slots() const { return factors_.size(); }

    std::uint32_t exponent(GenIdx g) const {
        for (auto& [gi, e] : factors_)
            if (gi == g) return e;
        return 0;
    }

    int degree(const Presentation& p) const {
        int d = 0;
        for (auto& [g, e] : factors_) d += p.gen(g).degree * static_cast<int>(e);
        return d;
    }
    int weight(const Presentation& p) const {
        int w = 0;
        for (auto& [g, e] : factors_) w += p.gen(g).weight * static_cast<int>(e);
        return w;
    }
    int charge(const Presentation& p) const {
        int c = 0;
        for (auto& [g, e] : factors_) c += p.gen(g).charge * static_cast<int>(e);
        return c;
    }
    std::uint32_t total_exponent() const {
        std::uint32_t t = 0;
        for (auto& [g, e] : factors_) t += e;
        return t;
    }

    // Map-key order (arbitrary but fixed): lexicographic on factor lists.
    auto operator<=>(const Monomial& o) const = default;

    std::string str(const Presentation& p) const {
        if (factors_.empty()) return "1";
        std::string s;
        for (auto& [g, e] : factors_) {
            if (!s.empty()) s += "*";
            s += p.gen(g).name;
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    // Raw append without normalization; caller guarantees sortedness.
    void push_factor(GenIdx g, std::uint32_t e) { factors_.push_back({g, e}); }

private:
    std::vector<Factor> factors_;
};

// degrevlex comparison within a block: higher total exponent first is NOT
// what we want for a "less-than"; we order by (total exponent asc, then
// reverse-lex: the monomial with the smaller exponent on the last differing
// generator is larger).
inline bool degrevlex_less(const Presentation& p, const Monomial& a, const Monomial& b) {
    auto ta = a.total_exponent(), tb = b.total_exponent();
    if (ta != tb) return ta < tb;
    // Compare exponent vectors from the last generator downwards.
    for (GenIdx g = static_cast<GenIdx>(p.size()); g-- > 0;) {
        auto ea = a.exponent(g), eb = b.exponent(g);
        if (ea != eb) return ea > eb;
    }
    return false;
}

// Sign bookkeeping: every structure map is defined on generators and
// extended by the Koszul rule through the two routines below
// (multiply_monomials and Element arithmetic); no signs are tabulated.
namespace detail {

// Merge two normal-form factor lists, accumulating the Koszul sign of
// commuting right-hand factors past left-hand factors of larger index.
// Returns 0 sign when an odd generator squares.
inline int merge_factors(const Presentation& p, const Monomial& a, const Monomial& b,
                         Monomial& out) {
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    // Suffix degrees of a: deg_suffix[i] = degree of factors fa[i..].
    std::vector<int> deg_suffix(fa.size() + 1, 0);
    for (std::size_t i = fa.size(); i-- > 0;)
        deg_suffix[i] = deg_suffix[i + 1] + p.gen(fa[i].first).degree * static_cast<int>(fa[i].second);

    int sign = 1;
    std::size_t i = 0, j = 0;
    out = Monomial();
    while (i < fa.size() || j < fb.size()) {
        bool take_a;
        if (i == fa.size()) take_a = false;
        else if (j == fb.size()) take_a = true;
        else take_a = fa[i].first <= fb[j].first;
        if (take_a) {
            auto [g, e] = fa[i++];
            if (j < fb.size() && fb[j].first == g) {
                auto e2 = fb[j++].second;
                if (p.gen(g).odd()) return 0;
                out.push_factor(g, e + e2);
            } else {
                out.push_factor(g, e);
            }
        } else {
            auto [g, e] = fb[j++];
            // g moves past the remaining factors of a.
            int passed = deg_suffix[i];
            if ((p.gen(g).degree * static_cast<int>(e)) % 2 != 0 && passed % 2 != 0) sign = -sign;
            if (p.gen(g).odd() && e > 1) return 0;
            out.push_factor(g, e);
        }
    }
    return sign;
}

} // namespace detail

// Sign accumulated when commuting `left` past `right` (the braiding sign
// (-1)^{|left||right|}); multiplicative over factors by construction.
inline int koszul_sign(const Presentation& p, const Monomial& left, const Monomial& right) {
    int dl = left.degree(p), dr = right.degree(p);
    return (dl % 2 != 0 && dr % 2 != 0) ? -1 : 1;
}

// Sparse element of the free graded-commutative algebra.
class Element {
public:
    using Terms = std::map<Monomial, Rational>;

    Element() = default;
    explicit Element(Rational c) {
        if (c != 0) terms_.emplace(Monomial::one(), std::move(c));
    }
    static Element zero() { return Element(); }
    static Element one() { return Element(Rational(1)); }
    static Element monomial(Monomial m, Rational c = Rational(1)) {
        Element e;
        if (c != 0) e.terms_.emplace(std::move(m), std::move(c));
        return e;
    }
    static Element var(GenIdx g, Rational c = Rational(1)) {
        return monomial(Monomial::var(g), std::move(c));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t num_terms() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const {
        Element r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    Element& operator*=(const Rational& c) {
        if (c == 0) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend Element operator*(Element a, const Rational& c) { return a *= c; }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }

    bool operator==(const Element& o) const { return terms_ == o.terms_; }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    bool homogeneous(const Presentation& p, int* degree_out = nullptr) const {
        bool first = true;
        int d = 0;
        for (auto& [m, c] : terms_) {
            int dm = m.degree(p);
            if (first) { d = dm; first = false; }
            else if (dm != d) return false;
        }
        if (degree_out) *degree_out = d;
        return true;
    }
    int degree(const Presentation& p) const {
        int d = 0;
        audit_check(homogeneous(p, &d), "element is not degree-homogeneous");
        return d;
    }

    std::string str(const Presentation& p) const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [m, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + varc::to_string(c) + ")" + (m.is_one() ? "" : "*" + m.str(p));
        }
        return s;
    }

private:
    Terms terms_;
};

inline Element multiply_monomials(const Presentation& p, const Monomial& a, const Monomial& b,
                                  const Rational& coeff) {
    Monomial out;
    int s = detail::merge_factors(p, a, b, out);
    if (s == 0) return Element::zero();
    return Element::monomial(std::move(out), s > 0 ? coeff : -coeff);
}

inline Element multiply(const Presentation& p, const Element& a, const Element& b) {
    Element r;
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms())
            r += multiply_monomials(p, ma, mb, ca * cb);
    return r;
}

inline Element power(const Presentation& p, const Element& a, unsigned n) {
    Element r = Element::one();
    for (unsigned i = 0; i < n; ++i) r = multiply(p, r, a);
    return r;
}

// Graded derivation of fixed (odd/even) operator degree `op_degree`,
// determined by its values on generators and extended by the Leibniz rule:
// the operator picks up the Koszul sign when passing monomial prefixes.
class Derivation {
public:
    Derivation(const Presentation& p, int op_degree)
        : pres_(&p), op_degree_(op_degree), values_(p.size()) {}

    void set_value(GenIdx g, Element v) { values_[g] = std::move(v); }
    const Element& value(GenIdx g) const { return values_[g]; }
    int op_degree() const { return op_degree_; }

    Element apply_monomial(const Monomial& m, const Rational& coeff) const {
        const auto& p = *pres_;
        Element out;
        const auto& fs = m.factors();
        int prefix_deg = 0;
        for (std::size_t t = 0; t < fs.size(); ++t) {
            auto [g, e] = fs[t];
            const Element& val = values_[g];
            int gdeg = p.gen(g).degree;
            if (!val.is_zero()) {
                int sign = (op_degree_ % 2 != 0 && prefix_deg % 2 != 0) ? -1 : 1;
                // prefix * val * g^{e-1} * suffix
                Monomial prefix, rest;
                for (std::size_t s = 0; s < t; ++s) prefix.push_factor(fs[s].first, fs[s].second);
                if (e > 1) rest.push_factor(g, e - 1);
                for (std::size_t s = t + 1; s < fs.size(); ++s) rest.push_factor(fs[s].first, fs[s].second);
                Element term = multiply(p, Element::monomial(prefix), val);
                term = multiply(p, term, Element::monomial(rest));
                out += term * (coeff * Rational(static_cast<long long>(e) * sign));
            }
            prefix_deg += gdeg * static_cast<int>(e);
        }
        return out;
    }

    Element apply(const Element& x) const {
        Element out;
        for (auto& [m, c] : x.terms()) out += apply_monomial(m, c);
        return out;
    }

private:
    const Presentation* pres_;
    int op_degree_;
    std::vector<Element> values_;
};

// Enumerates all normal-form monomials m with weight(m) <= weight_bound and
// |degree(m)| <= degree_bound, assuming every generator either has positive
// weight or is odd (so blocks stay finite). Odd generators of nonpositive
// weight contribute a bounded factor; even generators must have weight >= 1.
inline std::vector<Monomial> enumerate_monomials(const Presentation& p, int weight_bound,
                                                 int degree_bound = 1 << 20) {
    for (GenIdx g = 0; g < p.size(); ++g) {
        const auto& gen = p.gen(g);
        audit_check(gen.odd() || gen.weight >= 1, "generator '", gen.name,
                    "' is even with weight ", gen.weight,
                    " <= 0: weight-truncated blocks would be infinite");
    }
    // How much weight the generators from index g onward can still subtract.
    std::vector<int> neg_capacity(p.size() + 1, 0);
    for (GenIdx g = static_cast<GenIdx>(p.size()); g-- > 0;) {
        int contrib = (p.gen(g).odd() && p.gen(g).weight < 0) ? -p.gen(g).weight : 0;
        neg_capacity[g] = neg_capacity[g + 1] + contrib;
    }

    std::vector<Monomial> out;
    std::vector<Monomial::Factor> cur;
    std::function<void(GenIdx, int, int)> rec = [&](GenIdx g, int w, int d) {
        if (w - (g < p.size() ? neg_capacity[g] : 0) > weight_bound) return;
        if (g == p.size()) {
            if (w <= weight_bound && std::abs(d) <= degree_bound) {
                Monomial m;
                for (auto& [gi, e] : cur) m.push_factor(gi, e);
                out.push_back(std::move(m));
            }
            return;
        }
        const auto& gen = p.gen(g);
        rec(g + 1, w, d);
        unsigned max_e;
        if (gen.odd()) max_e = 1;
        else max_e = static_cast<unsigned>(std::max(0, weight_bound + neg_capacity[g + 1] - w) / gen.weight);
        for (unsigned e = 1; e <= max_e; ++e) {
            cur.push_back({g, e});
            rec(g + 1, w + gen.weight * static_cast<int>(e), d + gen.degree * static_cast<int>(e));
            cur.pop_back();
        }
    };
    rec(0, 0, 0);
    return out;
}

} // namespace varc

#endif
