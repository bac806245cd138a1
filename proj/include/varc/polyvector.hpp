#ifndef VARC_POLYVECTOR_HPP
#define VARC_POLYVECTOR_HPP

#include "varc/poisson.hpp"

#include <memory>
#include <vector>

namespace varc {

// Shifted polyvectors over a free graded-commutative base, in superfield
// form: polynomials in the base generators x_i and contraction symbols xi_i
// with |xi_i| = (n+1) - |x_i|. The polyvector weight is the xi-count.
//
// Operations are defined through evaluation against argument tuples (the
// interior pairing) and reconstruction from generator-tuple evaluations.
// The normalization of superfield coefficients is whatever makes
// reconstruct(evaluations of v) == v; it is fixed once by eval_tuple below
// and validated by the bracket <-> bivector roundtrip tests.
class PolyvectorAlgebra {
public:
    PolyvectorAlgebra(const Presentation& base, int shift_n)
        : base_(&base), n_(shift_n) {
        std::vector<Generator> gens;
        for (GenIdx i = 0; i < base.size(); ++i) gens.push_back(base.gen(i));
        base_count_ = static_cast<GenIdx>(gens.size());
        for (GenIdx i = 0; i < base.size(); ++i) {
            const auto& g = base.gen(i);
            gens.push_back({"xi_" + g.name, (n_ + 1) - g.degree, 0, 0});
        }
        pres_ = std::make_unique<Presentation>(std::move(gens));
    }

    const Presentation& pres() const { return *pres_; }
    const Presentation& base() const { return *base_; }
    int shift_n() const { return n_; }
    GenIdx xi(GenIdx base_gen) const { return base_count_ + base_gen; }
    bool is_xi(GenIdx g) const { return g >= base_count_; }

    // xi-count of a monomial (the polyvector weight).
    int weight(const Monomial& m) const {
        int w = 0;
        for (auto& [g, e] : m.factors())
            if (is_xi(g)) w += static_cast<int>(e);
        return w;
    }
    bool pure_weight(const Element& v, int* w_out = nullptr) const {
        bool first = true;
        int w = 0;
        for (auto& [m, c] : v.terms()) {
            int wm = weight(m);
            if (first) { w = wm; first = false; }
            else if (wm != w) return false;
        }
        if (w_out) *w_out = w;
        return true;
    }

    // Lifts a base element into the superfield algebra (same generator ids).
    Element lift(const Element& a) const { return a; }

    // Contraction with one argument: iota_a = sum_j (da/dx_j) d/dxi_j.
    Element contract(const Element& v, const Element& a) const {
        Element out;
        for (GenIdx j = 0; j < base_count_; ++j) {
            Derivation dxj(*pres_, -base_->gen(j).degree);
            dxj.set_value(j, Element::one());
            Element coeff = dxj.apply(a);
            if (coeff.is_zero()) continue;
            Derivation dxij(*pres_, -(n_ + 1 - base_->gen(j).degree));
            dxij.set_value(xi(j), Element::one());
            out += multiply(*pres_, coeff, dxij.apply(v));
        }
        return out;
    }

    // v(a_1, ..., a_p): apply contractions left to right, keep the xi-free
    // part.
    Element eval_tuple(const Element& v, const std::vector<Element>& args) const {
        Element cur = v;
        for (auto& a : args) cur = contract(cur, a);
        Element out;
        for (auto& [m, c] : cur.terms()) {
            if (weight(m) == 0) out.add_term(m, c);
        }
        return out;
    }

    // Reconstructs the unique polyvector of weight p whose generator-tuple
    // evaluations match `values` (keyed by nondecreasing index tuples).
    // Requires an even base (degree-0 generators), which covers every use in
    // this library; coefficient signs would otherwise depend on coefficient
    // parity.
    Element reconstruct(int p,
                        const std::function<Element(const std::vector<GenIdx>&)>& values) const {
        for (GenIdx i = 0; i < base_count_; ++i)
            audit_check(base_->gen(i).degree % 2 == 0,
                        "polyvector reconstruction requires an even base");
        Element out;
        std::vector<GenIdx> tuple;
        std::function<void(GenIdx)> rec = [&](GenIdx start) {
            if (static_cast<int>(tuple.size()) == p) {
                // candidate superfield monomial xi_{tuple}
                Monomial xis;
                {
                    std::map<GenIdx, std::uint32_t> exp;
                    for (auto g : tuple) ++exp[xi(g)];
                    for (auto& [g, e] : exp) xis.push_factor(g, e);
                }
                // normalization: eval of xi_T against (x_T) as pure monomial
                std::vector<Element> args;
                for (auto g : tuple) args.push_back(Element::var(g));
                Element norm = eval_tuple(Element::monomial(xis), args);
                if (norm.is_zero()) return; // odd xi squared: no such monomial
                Rational nval = norm.coeff(Monomial::one());
                audit_check(nval != 0, "degenerate polyvector normalization");
                Element target = values(tuple);
                if (!target.is_zero())
                    out += multiply(*pres_, target * (Rational(1) / nval), Element::monomial(xis));
                return;
            }
            for (GenIdx g = (tuple.empty() ? 0 : tuple.back()); g < base_count_; ++g) {
                tuple.push_back(g);
                rec(g);
                tuple.pop_back();
            }
        };
        rec(0);
        return out;
    }

    int coh_degree(const Element& v) const { return v.degree(*pres_); }

private:
    // Shuffles sigma in Sh(p, q) represented by the subset of positions
    // taken by the first block, plus sgn(sigma).
    static void shuffles(int p, int q, std::vector<std::pair<std::vector<int>, int>>& out) {
        std::vector<int> first;
        std::function<void(int)> rec = [&](int start) {
            if (static_cast<int>(first.size()) == p) {
                // sgn: count inversions between chosen and complement
                int inv = 0;
                for (int pos = 0, taken = 0; pos < p + q; ++pos) {
                    bool in_first =
                        std::find(first.begin(), first.end(), pos) != first.end();
                    if (in_first) ++taken;
                    else inv += p - taken;
                }
                out.push_back({first, inv % 2 == 0 ? 1 : -1});
                return;
            }
            for (int i = start; i <= p + q - (p - static_cast<int>(first.size())); ++i) {
                first.push_back(i);
                rec(i + 1);
                first.pop_back();
            }
        };
        rec(0);
    }

public:
    // Product of polyvectors per the shuffle formula with signs
    // sgn(sigma)^n and epsilon-bar = |w|(n+1)p + sum |a_i|((n+1)q + |w|);
    // even-argument tuples make the braiding sign trivial.
    Element product(const Element& v, const Element& w) const {
        int p = 0, q = 0;
        audit_check(pure_weight(v, &p) && pure_weight(w, &q),
                    "polyvector product needs pure weights");
        int dv = coh_degree(v), dw = coh_degree(w);
        (void)dv;
        return reconstruct(p + q, [&](const std::vector<GenIdx>& tuple) {
            std::vector<std::pair<std::vector<int>, int>> sh;
            shuffles(p, q, sh);
            Element acc;
            for (auto& [first, sgn] : sh) {
                std::vector<Element> av, aw;
                for (int pos = 0; pos < p + q; ++pos) {
                    bool in_first = std::find(first.begin(), first.end(), pos) != first.end();
                    (in_first ? av : aw).push_back(Element::var(tuple[pos]));
                }
                int sign = 1;
                if (n_ % 2 != 0 && sgn < 0) sign = -sign;
                int eps_bar = dw * (n_ + 1) * p; // |a_i| = 0 on the even base
                if (eps_bar % 2 != 0) sign = -sign;
                Element term = multiply(*pres_, eval_tuple(v, av), eval_tuple(w, aw));
                acc += term * Rational(sign);
            }
            return acc;
        });
    }

    // Schouten bracket per the double-shuffle formula; weight p+q-1,
    // cohomological degree |v|+|w|-(n+1).
    Element schouten(const Element& v, const Element& w) const {
        int p = 0, q = 0;
        audit_check(pure_weight(v, &p) && pure_weight(w, &q),
                    "Schouten bracket needs pure weights");
        int dv = coh_degree(v), dw = coh_degree(w);
        return reconstruct(p + q - 1, [&](const std::vector<GenIdx>& tuple) {
            Element acc;
            // first sum: over Sh(q, p-1): v(w(a_{s1..sq}), a_{s(q+1)..})
            {
                std::vector<std::pair<std::vector<int>, int>> sh;
                shuffles(q, p - 1, sh);
                int eps1 = (n_ + 1) * (dw + q) * (p + 1) + (n_ + 1) * dv;
                for (auto& [first, sgn] : sh) {
                    std::vector<Element> aw, rest;
                    for (int pos = 0; pos < p + q - 1; ++pos) {
                        bool in_first =
                            std::find(first.begin(), first.end(), pos) != first.end();
                        (in_first ? aw : rest).push_back(Element::var(tuple[pos]));
                    }
                    int sign = ((n_ + 1) % 2 != 0 && sgn < 0) ? -1 : 1;
                    if (eps1 % 2 != 0) sign = -sign;
                    Element inner = eval_tuple(w, aw);
                    std::vector<Element> args;
                    args.push_back(inner);
                    for (auto& r : rest) args.push_back(r);
                    acc += eval_tuple(v, args) * Rational(sign);
                }
            }
            // second sum: over Sh(p, q-1): w(v(a_{s1..sp}), ...)
            {
                std::vector<std::pair<std::vector<int>, int>> sh;
                shuffles(p, q - 1, sh);
                int eps2 = (dv - (n_ + 1) * p) * (dw - (n_ + 1) * q) +
                           (n_ + 1) * (p + 1) * (dw + 1) + (n_ + 1) * dv;
                for (auto& [first, sgn] : sh) {
                    std::vector<Element> av, rest;
                    for (int pos = 0; pos < p + q - 1; ++pos) {
                        bool in_first =
                            std::find(first.begin(), first.end(), pos) != first.end();
                        (in_first ? av : rest).push_back(Element::var(tuple[pos]));
                    }
                    int sign = ((n_ + 1) % 2 != 0 && sgn < 0) ? -1 : 1;
                    if (eps2 % 2 != 0) sign = -sign;
                    Element inner = eval_tuple(v, av);
                    std::vector<Element> args;
                    args.push_back(inner);
                    for (auto& r : rest) args.push_back(r);
                    acc -= eval_tuple(w, args) * Rational(sign);
                }
            }
            return acc;
        });
    }

private:
    const Presentation* base_;
    int n_;
    GenIdx base_count_ = 0;
    std::unique_ptr<Presentation> pres_;
};

// The bivector of a generator bracket table: pi with pi(x_i, x_j) =
// {x_i, x_j}. A P_n bracket corresponds to a bivector in Pol(A, n-1).
inline Element bracket_to_bivector(const PolyvectorAlgebra& pv, const BracketTable& table) {
    return pv.reconstruct(2, [&](const std::vector<GenIdx>& t) {
        return pv.lift(table.gen_bracket(t[0], t[1]));
    });
}

struct BivectorBracketResult {
    BracketTable table;
    bool poisson_valid = false; // [pi, pi]_S == 0
    Element schouten_square;
};

// Reads the bracket {a,b} := pi(a,b) off a bivector and reports whether it
// is a valid Poisson structure (vanishing Schouten square).
inline BivectorBracketResult bivector_to_bracket(const PolyvectorAlgebra& pv, const Element& pi) {
    BivectorBracketResult r{BracketTable(pv.base(), pv.shift_n() + 1), false, Element::zero()};
    const auto& base = pv.base();
    for (GenIdx i = 0; i < base.size(); ++i)
        for (GenIdx j = 0; j < base.size(); ++j) {
            Element val = pv.eval_tuple(pi, {Element::var(i), Element::var(j)});
            // values live in the base algebra (xi-free part)
            r.table.set(i, j, val);
        }
    r.schouten_square = pv.schouten(pi, pi);
    r.poisson_valid = r.schouten_square.is_zero();
    return r;
}

} // namespace varc

#endif
