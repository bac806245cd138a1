#ifndef VARC_POISSON_HPP
#define VARC_POISSON_HPP

#include "varc/algebra.hpp"
#include "varc/lie.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace varc {

// Bracket table of a shifted Poisson structure on a free graded-commutative
// algebra: values {x_i, x_j} on generators, extended to arbitrary elements
// by the Leibniz rule. The bracket has intrinsic degree 1 - n; elements are
// compared through their shifted degrees |x| + 1 - n for antisymmetry and
// Jacobi.
class BracketTable {
public:
    BracketTable() = default;
    BracketTable(const Presentation& p, int shift_n)
        : pres_(&p), n_(shift_n), table_(p.size() * p.size()) {}

    const Presentation& pres() const { return *pres_; }
    int shift_n() const { return n_; }

    // Sets {x_i, x_j} and fills {x_j, x_i} by graded antisymmetry unless the
    // transpose was set explicitly (which the audit then cross-checks).
    void set(GenIdx i, GenIdx j, Element v) { table_[i * pres_->size() + j] = std::move(v); }
    void set_pair(GenIdx i, GenIdx j, Element v) {
        Element turned = antisym_transpose(i, j, v);
        set(i, j, std::move(v));
        if (i != j) set(j, i, std::move(turned));
    }

    const Element& gen_bracket(GenIdx i, GenIdx j) const { return table_[i * pres_->size() + j]; }

    int shifted_degree(int deg) const { return deg + 1 - n_; }

    // {a, b} for arbitrary elements, by bilinearity and the Leibniz rule.
    Element bracket(const Element& a, const Element& b) const {
        Element out;
        for (auto& [ma, ca] : a.terms())
            for (auto& [mb, cb] : b.terms()) out += bracket_mono(ma, mb) * (ca * cb);
        return out;
    }

    // Audits (exhaustive over generators): graded antisymmetry, graded
    // Jacobi in the shifted sense, and the Leibniz-compatibility of declared
    // degrees. Throws AuditError naming the offending generators.
    void audit_antisymmetry() const {
        const auto& p = *pres_;
        for (GenIdx i = 0; i < p.size(); ++i)
            for (GenIdx j = 0; j < p.size(); ++j) {
                Element lhs = gen_bracket(i, j);
                Element rhs = antisym_transpose(j, i, gen_bracket(j, i));
                audit_check(lhs == rhs, "bracket antisymmetry fails at ({", p.gen(i).name, ", ",
                            p.gen(j).name, "})");
            }
    }

    void audit_jacobi() const {
        const auto& p = *pres_;
        for (GenIdx i = 0; i < p.size(); ++i)
            for (GenIdx j = 0; j < p.size(); ++j)
                for (GenIdx k = 0; k < p.size(); ++k) {
                    int si = shifted_degree(p.gen(i).degree);
                    int sj = shifted_degree(p.gen(j).degree);
                    int sk = shifted_degree(p.gen(k).degree);
                    auto sgn = [](int a, int b) { return (a % 2 != 0 && b % 2 != 0) ? -1 : 1; };
                    Element x = Element::var(i), y = Element::var(j), z = Element::var(k);
                    Element s = bracket(x, bracket(y, z)) * Rational(sgn(sk, si)) +
                                bracket(y, bracket(z, x)) * Rational(sgn(si, sj)) +
                                bracket(z, bracket(x, y)) * Rational(sgn(sj, sk));
                    audit_check(s.is_zero(), "bracket Jacobi fails at (", p.gen(i).name, ", ",
                                p.gen(j).name, ", ", p.gen(k).name, "): residue ", s.str(p));
                }
    }

    // d{x,y} = {dx,y} + (-1)^{|x|'}{x,dy} with the shifted degree of x.
    void audit_derivation(const Derivation& d) const {
        const auto& p = *pres_;
        for (GenIdx i = 0; i < p.size(); ++i)
            for (GenIdx j = 0; j < p.size(); ++j) {
                Element lhs = d.apply(gen_bracket(i, j));
                int sx = shifted_degree(p.gen(i).degree);
                Element rhs = bracket(d.value(i), Element::var(j)) +
                              bracket(Element::var(i), d.value(j)) *
                                  Rational(sx % 2 != 0 ? -1 : 1);
                audit_check(lhs == rhs, "bracket/differential compatibility fails at ({",
                            p.gen(i).name, ", ", p.gen(j).name, "})");
            }
    }

    void audit_all() const {
        audit_antisymmetry();
        audit_jacobi();
    }

    // Opposite structure: negated bracket, same product.
    BracketTable opposite() const {
        BracketTable r = *this;
        for (auto& e : r.table_) e = -e;
        return r;
    }

private:
    // (-1)^{1 + |x|'|y|'} {x, y}: the value of {y, x} forced by antisymmetry.
    Element antisym_transpose(GenIdx i, GenIdx j, const Element& v) const {
        int si = shifted_degree(pres_->gen(i).degree);
        int sj = shifted_degree(pres_->gen(j).degree);
        int sgn = -1;
        if (si % 2 != 0 && sj % 2 != 0) sgn = 1;
        return v * Rational(sgn);
    }

    // {m1, m2} for normal-form monomials, by double Leibniz recursion.
    // All reordering signs are produced by the canonical multiplication.
    Element bracket_mono(const Monomial& m1, const Monomial& m2) const {
        const auto& p = *pres_;
        if (m1.is_one() || m2.is_one()) return Element::zero();
        if (m1.num_slots() == 1 && m2.num_slots() == 1) {
            auto [g1, e1] = m1.factors()[0];
            auto [g2, e2] = m2.factors()[0];
            const Element& tab = gen_bracket(g1, g2);
            if (tab.is_zero()) return Element::zero();
            Element r = tab * Rational(static_cast<long long>(e1) * e2);
            if (e1 > 1) r = multiply(p, Element::monomial(Monomial::var(g1, e1 - 1)), r);
            if (e2 > 1) r = multiply(p, r, Element::monomial(Monomial::var(g2, e2 - 1)));
            return r;
        }
        if (m1.num_slots() > 1) {
            // {u v, c} = (-1)^{|v|(|c|+1-n)} {u,c} v + (-1)^{|u|(|v|+|c|+1-n)} {v,c} u
            Monomial u = Monomial::var(m1.factors()[0].first, m1.factors()[0].second);
            Monomial v;
            for (std::size_t t = 1; t < m1.factors().size(); ++t)
                v.push_factor(m1.factors()[t].first, m1.factors()[t].second);
            int du = u.degree(p), dv = v.degree(p), dc = m2.degree(p);
            int s1 = (dv % 2 != 0 && (dc + 1 - n_) % 2 != 0) ? -1 : 1;
            int s2 = (du % 2 != 0 && (dv + dc + 1 - n_) % 2 != 0) ? -1 : 1;
            Element t1 = multiply(p, bracket_mono(u, m2), Element::monomial(v)) * Rational(s1);
            Element t2 = multiply(p, bracket_mono(v, m2), Element::monomial(u)) * Rational(s2);
            return t1 + t2;
        }
        // m1 is a single slot, m2 splits: {u, s t} = {u,s} t + (-1)^{|s||t|} {u,t} s
        Monomial s = Monomial::var(m2.factors()[0].first, m2.factors()[0].second);
        Monomial t;
        for (std::size_t q = 1; q < m2.factors().size(); ++q)
            t.push_factor(m2.factors()[q].first, m2.factors()[q].second);
        int ds = s.degree(p), dt = t.degree(p);
        int sg = (ds % 2 != 0 && dt % 2 != 0) ? -1 : 1;
        Element t1 = multiply(p, bracket_mono(m1, s), Element::monomial(t));
        Element t2 = multiply(p, bracket_mono(m1, t), Element::monomial(s)) * Rational(sg);
        return t1 + t2;
    }

    const Presentation* pres_ = nullptr;
    int n_ = 1;
    std::vector<Element> table_;
};

// Lie-Poisson structure: Sym(l) with {x, y} = [x, y] on generators of a
// finite-dimensional (dg) Lie algebra, generators carrying weight 1.
// Heap-backed so the BracketTable's presentation pointer stays valid under
// moves.
class LiePoisson {
public:
    LiePoisson(const DgLieAlgebra& lie, const std::string& prefix = "", bool audit = true)
        : pres_(std::make_unique<Presentation>([&] {
              std::vector<Generator> gens;
              for (std::size_t i = 0; i < lie.dim(); ++i)
                  gens.push_back({prefix + lie.basis(i).name, lie.basis(i).degree, 1, 0});
              return Presentation(std::move(gens));
          }())),
          table_(*pres_, 1) {
        for (std::size_t i = 0; i < lie.dim(); ++i)
            for (std::size_t j = 0; j < lie.dim(); ++j) {
                Element v;
                for (auto& [k, c] : lie.bracket(i, j).nz)
                    v += Element::var(static_cast<GenIdx>(k), c);
                table_.set(static_cast<GenIdx>(i), static_cast<GenIdx>(j), std::move(v));
            }
        if (audit) table_.audit_all();
    }

    const Presentation& pres() const { return *pres_; }
    const BracketTable& table() const { return table_; }

private:
    std::unique_ptr<Presentation> pres_;
    BracketTable table_;
};

inline LiePoisson kirillov_kostant(const DgLieAlgebra& lie, const std::string& prefix = "") {
    return LiePoisson(lie, prefix);
}

// Momentum map data: mu(x_i) in R for each Lie basis element, plus the
// declared action of x_i on the generators of R.
struct MomentumMap {
    const DgLieAlgebra* lie = nullptr;
    std::vector<Element> values; // per Lie basis element

    const Element& operator()(std::size_t i) const { return values[i]; }
};

struct MomentumReport {
    bool ok = true;
    std::string detail;
};

// Verifies {mu(x), r} = a(x)(r) on all (Lie generator, algebra generator)
// pairs and that mu is a Lie map: mu([x,y]) = {mu(x), mu(y)}.
inline MomentumReport check_momentum(const BracketTable& table, const MomentumMap& mu,
                                     const std::vector<Derivation>& action) {
    const auto& lie = *mu.lie;
    const auto& p = table.pres();
    MomentumReport rep;
    for (std::size_t i = 0; i < lie.dim(); ++i) {
        for (GenIdx g = 0; g < p.size(); ++g) {
            Element lhs = table.bracket(mu(i), Element::var(g));
            Element rhs = action[i].value(g);
            if (!(lhs == rhs)) {
                rep.ok = false;
                rep.detail = "momentum equation fails at (" + lie.basis(i).name + ", " +
                             p.gen(g).name + "): {mu(x), r} = " + lhs.str(p) + ", action = " +
                             rhs.str(p);
                return rep;
            }
        }
    }
    for (std::size_t i = 0; i < lie.dim(); ++i)
        for (std::size_t j = 0; j < lie.dim(); ++j) {
            Element lhs;
            for (auto& [k, c] : lie.bracket(i, j).nz) lhs += mu(k) * c;
            Element rhs = table.bracket(mu(i), mu(j));
            if (!(lhs == rhs)) {
                rep.ok = false;
                rep.detail = "mu is not a Lie map at (" + lie.basis(i).name + ", " +
                             lie.basis(j).name + ")";
                return rep;
            }
        }
    return rep;
}

// The coadjoint-type action derivations a(x_i) = {mu(x_i), -} on R.
inline std::vector<Derivation> momentum_action(const BracketTable& table, const MomentumMap& mu) {
    const auto& p = table.pres();
    std::vector<Derivation> out;
    for (std::size_t i = 0; i < mu.lie->dim(); ++i) {
        Derivation d(p, mu.lie->basis(i).degree);
        for (GenIdx g = 0; g < p.size(); ++g)
            d.set_value(g, table.bracket(mu(i), Element::var(g)));
        out.push_back(std::move(d));
    }
    return out;
}

// Relabels an element along a generator-index map.
inline Element remap_element(const Element& e, const std::vector<GenIdx>& map) {
    Element out;
    for (auto& [m, c] : e.terms()) {
        Monomial mm;
        for (auto& [g, ex] : m.factors()) mm.push_factor(map[g], ex);
        out.add_term(mm, c);
    }
    return out;
}

// Tensor of two presentations (disjoint union of generators, right-hand
// names prefixed) with the product bracket: cross brackets vanish.
class TensorPoisson {
public:
    TensorPoisson(const BracketTable& A, const BracketTable& B,
                  const std::string& right_prefix = "'") {
        audit_check(A.shift_n() == B.shift_n(),
                    "tensor of Poisson algebras with different shifts");
        const auto& pa = A.pres();
        const auto& pb = B.pres();
        std::vector<Generator> gens;
        for (GenIdx i = 0; i < pa.size(); ++i) {
            left_map_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back(pa.gen(i));
        }
        for (GenIdx i = 0; i < pb.size(); ++i) {
            Generator g = pb.gen(i);
            g.name = right_prefix + g.name;
            right_map_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back(std::move(g));
        }
        pres_ = std::make_unique<Presentation>(std::move(gens));
        table_ = BracketTable(*pres_, A.shift_n());
        for (GenIdx i = 0; i < pa.size(); ++i)
            for (GenIdx j = 0; j < pa.size(); ++j)
                table_.set(left_map_[i], left_map_[j],
                           remap_element(A.gen_bracket(i, j), left_map_));
        for (GenIdx i = 0; i < pb.size(); ++i)
            for (GenIdx j = 0; j < pb.size(); ++j)
                table_.set(right_map_[i], right_map_[j],
                           remap_element(B.gen_bracket(i, j), right_map_));
    }

    const Presentation& pres() const { return *pres_; }
    const BracketTable& table() const { return table_; }
    const std::vector<GenIdx>& left_map() const { return left_map_; }
    const std::vector<GenIdx>& right_map() const { return right_map_; }

private:
    std::unique_ptr<Presentation> pres_;
    BracketTable table_;
    std::vector<GenIdx> left_map_, right_map_;
};

} // namespace varc

#endif
