#ifndef VARC_LIE_HPP
#define VARC_LIE_HPP

#include "varc/audit.hpp"
#include "varc/complex.hpp"
#include "varc/sparse.hpp"

#include <optional>
#include <string>
#include <vector>

namespace varc {

// Finite-dimensional dg Lie algebra given by structure constants:
// [x_i, x_j] = sum_k c_{ij}^k x_k, plus an optional differential matrix and
// optional invariant-form data for affine constructions. Graded
// antisymmetry, graded Jacobi and the derivation law are audited at
// construction, exhaustively over basis triples.
class DgLieAlgebra {
public:
    struct BasisElement {
        std::string name;
        int degree = 0;
        int weight = 0; // used by t-graded (current-algebra) bases
    };

    DgLieAlgebra() = default;
    DgLieAlgebra(std::vector<BasisElement> basis, std::vector<std::vector<SparseVec>> brackets,
                 std::vector<SparseVec> diff = {}, bool audit = true)
        : basis_(std::move(basis)), bracket_(std::move(brackets)), diff_(std::move(diff)) {
        if (diff_.empty()) diff_.resize(basis_.size());
        audit_check(bracket_.size() == basis_.size(), "bracket table has wrong shape");
        for (auto& row : bracket_)
            audit_check(row.size() == basis_.size(), "bracket table has wrong shape");
        if (audit) audit_all();
    }

    std::size_t dim() const { return basis_.size(); }
    const BasisElement& basis(std::size_t i) const { return basis_[i]; }
    const SparseVec& bracket(std::size_t i, std::size_t j) const { return bracket_[i][j]; }
    const SparseVec& diff(std::size_t i) const { return diff_[i]; }
    bool has_differential() const {
        for (auto& v : diff_)
            if (!v.empty()) return true;
        return false;
    }

    std::optional<Rational> kappa(std::size_t i, std::size_t j) const {
        if (kappa_.empty()) return std::nullopt;
        return kappa_[i * dim() + j];
    }
    void set_invariant_form(std::vector<Rational> kappa, Rational dual_coxeter) {
        audit_check(kappa.size() == dim() * dim(), "invariant form has wrong shape");
        kappa_ = std::move(kappa);
        h_dual_ = std::move(dual_coxeter);
    }
    const Rational& dual_coxeter() const { return h_dual_; }
    bool has_invariant_form() const { return !kappa_.empty(); }

    SparseVec bracket_vec(const SparseVec& a, const SparseVec& b) const {
        SparseVec out;
        for (auto& [i, ca] : a.nz)
            for (auto& [j, cb] : b.nz) out.axpy(ca * cb, bracket_[i][j]);
        return out;
    }
    SparseVec diff_vec(const SparseVec& a) const {
        SparseVec out;
        for (auto& [i, c] : a.nz) out.axpy(c, diff_[i]);
        return out;
    }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < dim(); ++i)
            if (basis_[i].name == name) return i;
        audit_fail("unknown Lie basis element '", name, "'");
    }

    void audit_all() const {
        audit_grading();
        audit_antisymmetry();
        audit_jacobi();
        audit_derivation();
    }

    void audit_grading() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (auto& [k, c] : bracket_[i][j].nz) {
                    audit_check(basis_[k].degree == basis_[i].degree + basis_[j].degree,
                                "bracket [", basis_[i].name, ", ", basis_[j].name,
                                "] is not degree-homogeneous at ", basis_[k].name);
                    audit_check(basis_[k].weight == basis_[i].weight + basis_[j].weight,
                                "bracket [", basis_[i].name, ", ", basis_[j].name,
                                "] is not weight-homogeneous at ", basis_[k].name);
                }
        for (std::size_t i = 0; i < dim(); ++i)
            for (auto& [k, c] : diff_[i].nz)
                audit_check(basis_[k].degree == basis_[i].degree + 1, "d(", basis_[i].name,
                            ") is not of degree +1 at ", basis_[k].name);
    }

    // [x,y] = (-1)^{1+|x||y|} [y,x]
    void audit_antisymmetry() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) {
                int s = (basis_[i].degree % 2 != 0 && basis_[j].degree % 2 != 0) ? 1 : -1;
                SparseVec rhs = bracket_[j][i];
                rhs *= Rational(s);
                audit_check(bracket_[i][j] == rhs, "graded antisymmetry fails at [",
                            basis_[i].name, ", ", basis_[j].name, "]");
            }
    }

    // (-1)^{|z||x|}[x,[y,z]] + (-1)^{|x||y|}[y,[z,x]] + (-1)^{|y||z|}[z,[x,y]] = 0
    void audit_jacobi() const {
        auto sgn = [&](std::size_t a, std::size_t b) {
            return (basis_[a].degree % 2 != 0 && basis_[b].degree % 2 != 0) ? -1 : 1;
        };
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k) {
                    SparseVec sum;
                    SparseVec e_i, e_j, e_k;
                    e_i.add(static_cast<std::uint32_t>(i), Rational(1));
                    e_j.add(static_cast<std::uint32_t>(j), Rational(1));
                    e_k.add(static_cast<std::uint32_t>(k), Rational(1));
                    sum.axpy(Rational(sgn(k, i)), bracket_vec(e_i, bracket_vec(e_j, e_k)));
                    sum.axpy(Rational(sgn(i, j)), bracket_vec(e_j, bracket_vec(e_k, e_i)));
                    sum.axpy(Rational(sgn(j, k)), bracket_vec(e_k, bracket_vec(e_i, e_j)));
                    audit_check(sum.empty(), "graded Jacobi fails at (", basis_[i].name, ", ",
                                basis_[j].name, ", ", basis_[k].name, ")");
                }
    }

    // d[x,y] = [dx,y] + (-1)^{|x|}[x,dy]
    void audit_derivation() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) {
                SparseVec e_i, e_j;
                e_i.add(static_cast<std::uint32_t>(i), Rational(1));
                e_j.add(static_cast<std::uint32_t>(j), Rational(1));
                SparseVec lhs = diff_vec(bracket_[i][j]);
                SparseVec rhs = bracket_vec(diff_[i], e_j);
                rhs.axpy(Rational(basis_[i].degree % 2 != 0 ? -1 : 1),
                         bracket_vec(e_i, diff_[j]));
                audit_check(lhs == rhs, "differential-derivation law fails at [", basis_[i].name,
                            ", ", basis_[j].name, "]");
            }
    }

    // Underlying complex (basis per (degree, weight=0) block unless basis
    // elements carry weights).
    TruncatedComplex underlying_complex() const {
        SpaceDims dims;
        std::vector<std::pair<BlockKey, std::uint32_t>> pos(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            BlockKey k{basis_[i].degree, basis_[i].weight};
            pos[i] = {k, static_cast<std::uint32_t>(dims[k])};
            ++dims[k];
        }
        BlockMap d(dims, dims, {1, 0});
        for (std::size_t i = 0; i < dim(); ++i)
            for (auto& [k2, c] : diff_[i].nz)
                d.block(pos[i].first).add(pos[k2].second, pos[i].second, c);
        int wmax = 0;
        for (auto& [k, n] : dims) wmax = std::max(wmax, k.weight);
        return TruncatedComplex(std::move(dims), std::move(d), wmax);
    }

private:
    std::vector<BasisElement> basis_;
    std::vector<std::vector<SparseVec>> bracket_;
    std::vector<SparseVec> diff_;
    std::vector<Rational> kappa_;
    Rational h_dual_ = 0;
};

// Abelian Lie algebra on n even generators.
inline DgLieAlgebra abelian_lie(unsigned n) {
    std::vector<DgLieAlgebra::BasisElement> basis;
    for (unsigned i = 0; i < n; ++i) basis.push_back({"t" + std::to_string(i), 0, 0});
    std::vector<std::vector<SparseVec>> b(n, std::vector<SparseVec>(n));
    return DgLieAlgebra(std::move(basis), std::move(b));
}

// sl2 with basis (e, h, f): [e,f] = h, [h,e] = 2e, [h,f] = -2f.
// Killing form in this basis and dual Coxeter number h^v = 2.
inline DgLieAlgebra sl2() {
    std::vector<DgLieAlgebra::BasisElement> basis{{"e", 0, 0}, {"h", 0, 0}, {"f", 0, 0}};
    std::vector<std::vector<SparseVec>> b(3, std::vector<SparseVec>(3));
    auto set = [&](std::size_t i, std::size_t j, std::initializer_list<std::pair<int, int>> v) {
        for (auto& [k, c] : v) b[i][j].add(static_cast<std::uint32_t>(k), Rational(c));
    };
    set(0, 2, {{1, 1}});  // [e,f] = h
    set(2, 0, {{1, -1}}); // [f,e] = -h
    set(1, 0, {{0, 2}});  // [h,e] = 2e
    set(0, 1, {{0, -2}}); // [e,h] = -2e
    set(1, 2, {{2, -2}}); // [h,f] = -2f
    set(2, 1, {{2, 2}});  // [f,h] = 2f
    DgLieAlgebra g(std::move(basis), std::move(b));
    // Killing form: kappa(x,y) = 4 tr-form entries: kappa(e,f)=4, kappa(h,h)=8.
    std::vector<Rational> kappa(9, Rational(0));
    kappa[0 * 3 + 2] = 4;
    kappa[2 * 3 + 0] = 4;
    kappa[1 * 3 + 1] = 8;
    g.set_invariant_form(std::move(kappa), Rational(2));
    return g;
}

// Mutates one structure constant (negative control for audits); the result
// deliberately fails Jacobi, so it is returned unaudited.
inline DgLieAlgebra broken_sl2() {
    DgLieAlgebra good = sl2();
    std::vector<DgLieAlgebra::BasisElement> basis;
    std::vector<std::vector<SparseVec>> b(3, std::vector<SparseVec>(3));
    for (std::size_t i = 0; i < 3; ++i) basis.push_back(good.basis(i));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) b[i][j] = good.bracket(i, j);
    // [e,f] = h + e instead of h (and its transpose, keeping antisymmetry).
    b[0][2].add(0, Rational(1));
    b[2][0].add(0, Rational(-1));
    return DgLieAlgebra(std::move(basis), std::move(b), {}, /*audit=*/false);
}

// The acyclic cone on l: basis {xbar_i} (degrees shifted down) followed by
// {x_i}, bracket [(x,y),(x',y')] = ([x,y'] + [y,x'], [y,y']), differential
// d(x,y) = (-dx, x + dy).
inline DgLieAlgebra lie_cone(const DgLieAlgebra& l) {
    std::size_t n = l.dim();
    std::vector<DgLieAlgebra::BasisElement> basis;
    for (std::size_t i = 0; i < n; ++i) {
        auto b = l.basis(i);
        basis.push_back({b.name + "~", b.degree - 1, b.weight});
    }
    for (std::size_t i = 0; i < n; ++i) basis.push_back(l.basis(i));

    auto shift_up = [&](const SparseVec& v) { // into the copy sitting at [0, n)
        SparseVec r = v;
        return r;
    };
    auto embed_lower = [&](const SparseVec& v) { // into the copy at [n, 2n)
        SparseVec r;
        for (auto& [k, c] : v.nz) r.add(k + static_cast<std::uint32_t>(n), c);
        return r;
    };

    std::vector<std::vector<SparseVec>> b(2 * n, std::vector<SparseVec>(2 * n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // [xbar_i, x_j] = bar([x_i, x_j]); [x_i, xbar_j] = bar([x_i, x_j])?
            // From the pairing rule: [(x,0),(0,y')] = ([x,y'], 0) and
            // [(0,y),(x',0)] = ([y,x'], 0); [(0,y),(0,y')] = (0,[y,y']).
            b[i][n + j] = shift_up(l.bracket(i, j));
            b[n + i][j] = shift_up(l.bracket(i, j));
            b[n + i][n + j] = embed_lower(l.bracket(i, j));
        }
    std::vector<SparseVec> d(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        // d(xbar_i) = -bar(d x_i) + x_i; d(x_i) = embed(d x_i)
        d[i] = l.diff(i);
        d[i] *= Rational(-1);
        d[i].add(static_cast<std::uint32_t>(n + i), Rational(1));
        d[n + i] = embed_lower(l.diff(i));
    }
    return DgLieAlgebra(std::move(basis), std::move(b), std::move(d));
}

// Truncated current algebra g (x) k[t]/t^{N+1}: basis x_i t^a with
// [x t^a, y t^b] = [x,y] t^{a+b} (zero beyond the truncation order). The
// t-degree is recorded in the basis weight.
inline DgLieAlgebra current_truncation(const DgLieAlgebra& g, unsigned t_order) {
    std::size_t n = g.dim();
    std::size_t N = n * (t_order + 1);
    std::vector<DgLieAlgebra::BasisElement> basis;
    for (unsigned a = 0; a <= t_order; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            auto b = g.basis(i);
            basis.push_back({b.name + (a ? "t" + std::to_string(a) : ""), b.degree,
                             static_cast<int>(a)});
        }
    auto idx = [&](std::size_t i, unsigned a) { return a * n + i; };
    std::vector<std::vector<SparseVec>> br(N, std::vector<SparseVec>(N));
    for (unsigned a = 0; a <= t_order; ++a)
        for (unsigned c = 0; c <= t_order; ++c)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (a + c > t_order) continue;
                    for (auto& [k, v] : g.bracket(i, j).nz)
                        br[idx(i, a)][idx(j, c)].add(static_cast<std::uint32_t>(idx(k, a + c)),
                                                     v);
                }
    std::vector<SparseVec> d(N);
    for (unsigned a = 0; a <= t_order; ++a)
        for (std::size_t i = 0; i < n; ++i)
            for (auto& [k, v] : g.diff(i).nz)
                d[idx(i, a)].add(static_cast<std::uint32_t>(idx(k, a)), v);
    return DgLieAlgebra(std::move(basis), std::move(br), std::move(d));
}

} // namespace varc

#endif
