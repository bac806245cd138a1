#ifndef VARC_BRST_HPP
#define VARC_BRST_HPP

#include "varc/chevalley_eilenberg.hpp"
#include "varc/poisson.hpp"
#include "varc/quotient.hpp"

#include <memory>
#include <vector>

namespace varc {

// Classical BRST complex of (l, R, mu) for an ordinary finite-dimensional
// Lie algebra l acting on a dg Poisson algebra R through a momentum map mu:
//
//   Cl(l) (x) R with generators psi_i in l[1] (degree -1, charge -1),
//   psi*_i in l*[-1] (degree +1, charge +1), {psi_i, psi*_j} = delta_ij,
//   charge Q = sum mu(x_i) psi*_i - 1/2 sum c_{ij}^k psi*_i psi*_j psi_k,
//   differential d = {Q, -}.
//
// The internal weight is (weight of the R part) + (psi-count): psi_i carry
// weight 1, psi*_i weight 0; d preserves it, which is what makes the
// weight-truncated blocks sound. mu must be weight-1 homogeneous.
class ClassicalBRST {
public:
    ClassicalBRST(const DgLieAlgebra& lie, const Presentation& r_pres,
                  const BracketTable& r_table, const MomentumMap& mu, int weight_bound,
                  bool require_nilpotent = true)
        : lie_(&lie), weight_bound_(weight_bound) {
        for (std::size_t i = 0; i < lie.dim(); ++i)
            audit_check(lie.basis(i).degree == 0,
                        "classical BRST requires a degree-0 Lie algebra basis");
        build_presentation(r_pres);
        build_table(r_table);
        build_charge(mu);
        nilpotency_residue_ = table_->bracket(charge_, charge_);
        if (require_nilpotent)
            audit_check(nilpotency_residue_.is_zero(), "{Q, Q} != 0: ",
                        nilpotency_residue_.str(*pres_));
        space_ = MonomialSpace(*pres_, weight_bound_);
        Derivation d = charge_derivation();
        d_ = derivation_block_map(space_, d, {1, 0});
        // A failed nilpotency residue means this is deliberately not a
        // complex (negative controls); record the skipped d^2 check.
        complex_ = TruncatedComplex(space_.dims(), d_, weight_bound_,
                                    /*skip_d2_check=*/!nilpotency_residue_.is_zero());
    }

    const Presentation& pres() const { return *pres_; }
    const BracketTable& table() const { return *table_; }
    const MonomialSpace& space() const { return space_; }
    const TruncatedComplex& complex() const { return complex_; }
    const Element& charge() const { return charge_; }
    const Element& nilpotency_residue() const { return nilpotency_residue_; }
    bool nilpotent() const { return nilpotency_residue_.is_zero(); }

    GenIdx psi(std::size_t i) const { return psi_[i]; }
    GenIdx psi_star(std::size_t i) const { return psi_star_[i]; }
    GenIdx r_gen(GenIdx old_index) const { return r_map_[old_index]; }
    const std::vector<GenIdx>& r_gens() const { return r_map_; }

    Element bracket_with_charge(const Element& x) const { return table_->bracket(charge_, x); }

    // {Q, -} as a generator-extended derivation (degree +1).
    Derivation charge_derivation() const {
        Derivation d(*pres_, 1);
        for (GenIdx g = 0; g < pres_->size(); ++g)
            d.set_value(g, table_->bracket(charge_, Element::var(g)));
        return d;
    }

    CohomologyTable cohomology_table(unsigned threads = 1) const {
        return varc::cohomology(complex_, threads);
    }

    // Charge grading audit: d raises the ghost charge by exactly 1.
    void audit_charge_grading() const {
        for (GenIdx g = 0; g < pres_->size(); ++g) {
            Element img = table_->bracket(charge_, Element::var(g));
            for (auto& [m, c] : img.terms())
                audit_check(m.charge(*pres_) == pres_->gen(g).charge + 1,
                            "d does not raise charge by 1 at generator ", pres_->gen(g).name);
        }
    }

private:
    void build_presentation(const Presentation& r_pres) {
        std::vector<Generator> gens;
        for (GenIdx i = 0; i < r_pres.size(); ++i) {
            r_map_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back(r_pres.gen(i));
        }
        for (std::size_t i = 0; i < lie_->dim(); ++i) {
            psi_star_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back({"ps*_" + lie_->basis(i).name, 1, 0, 1});
        }
        for (std::size_t i = 0; i < lie_->dim(); ++i) {
            psi_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back({"ps_" + lie_->basis(i).name, -1, 1, -1});
        }
        pres_ = std::make_unique<Presentation>(std::move(gens));
    }

    void build_table(const BracketTable& r_table) {
        table_ = std::make_unique<BracketTable>(*pres_, 1);
        for (GenIdx i = 0; i < r_table.pres().size(); ++i)
            for (GenIdx j = 0; j < r_table.pres().size(); ++j)
                table_->set(r_map_[i], r_map_[j],
                            remap_element(r_table.gen_bracket(i, j), r_map_));
        for (std::size_t i = 0; i < lie_->dim(); ++i)
            for (std::size_t j = 0; j < lie_->dim(); ++j) {
                Element delta = (i == j) ? Element::one() : Element::zero();
                table_->set(psi_[i], psi_star_[j], delta);
                table_->set(psi_star_[j], psi_[i], delta);
            }
    }

    void build_charge(const MomentumMap& mu) {
        charge_ = Element::zero();
        for (std::size_t i = 0; i < lie_->dim(); ++i) {
            Element m = remap_element(mu(i), r_map_);
            for (auto& [mm, c] : m.terms())
                audit_check(mm.weight(*pres_) == 1, "mu(", lie_->basis(i).name,
                            ") is not weight-1 homogeneous; the BRST weight grading fails");
            charge_ += multiply(*pres_, m, Element::var(psi_star_[i]));
        }
        for (std::size_t i = 0; i < lie_->dim(); ++i)
            for (std::size_t j = 0; j < lie_->dim(); ++j)
                for (auto& [k, c] : lie_->bracket(i, j).nz) {
                    Element term = Element::var(psi_star_[i]);
                    term = multiply(*pres_, term, Element::var(psi_star_[j]));
                    term = multiply(*pres_, term, Element::var(psi_[k]));
                    charge_ += term * (c * Rational(-1, 2));
                }
    }

    const DgLieAlgebra* lie_;
    int weight_bound_;
    std::unique_ptr<Presentation> pres_;
    std::unique_ptr<BracketTable> table_;
    std::vector<GenIdx> psi_, psi_star_, r_map_;
    Element charge_;
    Element nilpotency_residue_;
    MonomialSpace space_;
    BlockMap d_;
    TruncatedComplex complex_;
};

// Koszul cdga Sym(l[1]) (x) R: odd generators k_i of degree -1 with
// d(k_i) = mu(x_i), extended as an odd derivation. k_i carries the weight
// of mu(x_i) so the differential is weight-homogeneous.
class KoszulCdga {
public:
    KoszulCdga(const DgLieAlgebra& lie, const Presentation& r_pres, const MomentumMap& mu,
               int weight_bound)
        : lie_(&lie), weight_bound_(weight_bound) {
        std::vector<Generator> gens;
        for (GenIdx i = 0; i < r_pres.size(); ++i) {
            r_map_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back(r_pres.gen(i));
        }
        for (std::size_t i = 0; i < lie.dim(); ++i) {
            int w = 1;
            if (!mu(i).is_zero()) {
                bool first = true;
                for (auto& [m, c] : mu(i).terms()) {
                    int wm = m.weight(r_pres);
                    if (first) { w = wm; first = false; }
                    else audit_check(wm == w, "mu(", lie.basis(i).name,
                                     ") is not weight-homogeneous");
                }
            }
            kos_.push_back(static_cast<GenIdx>(gens.size()));
            gens.push_back({"k_" + lie.basis(i).name, -1, w, 0});
        }
        pres_ = std::make_unique<Presentation>(std::move(gens));
        space_ = MonomialSpace(*pres_, weight_bound_);
        Derivation d(*pres_, 1);
        for (std::size_t i = 0; i < lie.dim(); ++i)
            d.set_value(kos_[i], remap_element(mu(i), r_map_));
        d_ = derivation_block_map(space_, d, {1, 0});
        complex_ = TruncatedComplex(space_.dims(), d_, weight_bound_);
    }

    const Presentation& pres() const { return *pres_; }
    const MonomialSpace& space() const { return space_; }
    const TruncatedComplex& complex() const { return complex_; }
    GenIdx kos_gen(std::size_t i) const { return kos_[i]; }
    GenIdx r_gen(GenIdx old_index) const { return r_map_[old_index]; }
    const std::vector<GenIdx>& r_gens() const { return r_map_; }

    CohomologyTable cohomology_table(unsigned threads = 1) const {
        return varc::cohomology(complex_, threads);
    }

private:
    const DgLieAlgebra* lie_;
    int weight_bound_;
    std::unique_ptr<Presentation> pres_;
    std::vector<GenIdx> kos_, r_map_;
    MonomialSpace space_;
    BlockMap d_;
    TruncatedComplex complex_;
};

// Lie module structure on a truncated Poisson algebra R through a momentum
// map: x_i acts by {mu(x_i), -}.
inline LieModule momentum_module(const DgLieAlgebra& lie, const Presentation& r_pres,
                                 const BracketTable& r_table, const MomentumMap& mu,
                                 int w_bound) {
    LieModule m;
    m.lie = &lie;
    m.pres = std::shared_ptr<const Presentation>(&r_pres, [](const Presentation*) {});
    m.space = MonomialSpace(r_pres, w_bound);
    for (std::size_t i = 0; i < lie.dim(); ++i) {
        Derivation d(r_pres, lie.basis(i).degree);
        for (GenIdx g = 0; g < r_pres.size(); ++g)
            d.set_value(g, r_table.bracket(mu(i), Element::var(g)));
        m.action.push_back(derivation_block_map(m.space, d, {lie.basis(i).degree, 0}));
    }
    m.diff = BlockMap(m.space.dims(), m.space.dims(), {1, 0});
    m.audit();
    return m;
}

// Verification of the ghost-ideal quotient: killing the psi generators and
// the ideal mu(l)R turns the BRST differential into the Chevalley-Eilenberg
// differential of R/mu(l)R. Compares the two induced quotient differentials
// entrywise on every stored block; also checks H^0 maps into the invariant
// part of R/mu(l)R.
struct BrstQuotientReport {
    bool chain_maps_equal = true;
    bool h0_in_invariants = true;
    std::string detail;
};

inline BrstQuotientReport verify_brst_ce_quotient(const ClassicalBRST& brst,
                                                  const DgLieAlgebra& lie,
                                                  const Presentation& r_pres,
                                                  const BracketTable& r_table,
                                                  const MomentumMap& mu, int w_bound) {
    BrstQuotientReport rep;
    // CE complex of R with the momentum action.
    LieModule rmod = momentum_module(lie, r_pres, r_table, mu, w_bound);
    CEComplex ce(lie, rmod);

    // Ideal spans per module block: mu(x_i) * (monomials).
    std::map<BlockKey, std::vector<SparseVec>> ideal;
    for (auto& [k, blk] : rmod.space.basis().blocks()) {
        for (std::uint32_t pos = 0; pos < blk.size(); ++pos) {
            for (std::size_t i = 0; i < lie.dim(); ++i) {
                Element v = multiply(r_pres, mu(i), Element::monomial(*blk[pos]));
                if (v.is_zero()) continue;
                int wv = 0, dv = 0;
                for (auto& [m, c] : v.terms()) { wv = m.weight(r_pres); dv = m.degree(r_pres); }
                if (wv > w_bound) continue;
                BlockKey kv{dv, wv};
                ideal[kv].push_back(rmod.space.coords_in_block(v, kv));
            }
        }
    }
    std::map<BlockKey, BlockQuotient> rbar;
    for (auto& [k, blk] : rmod.space.basis().blocks())
        rbar[k] = BlockQuotient(blk.size(), ideal.count(k) ? ideal[k] : std::vector<SparseVec>{});

    // CE-side induced differential on (wedge (x) rbar): build quotient of the
    // CE complex by the subcomplex (wedge (x) ideal).
    // BRST-side: project BRST columns by killing psi monomials and reducing
    // the R part, with basis identification (psi*-word, r) <-> (wedge, r).
    const auto& p = brst.pres();
    auto classify = [&](const Monomial& m)
        -> std::optional<std::tuple<std::vector<std::uint32_t>, Monomial>> {
        std::vector<std::uint32_t> wedge;
        Monomial r;
        for (auto& [g, e] : m.factors()) {
            // psi generators kill the class
            for (std::size_t i = 0; i < lie.dim(); ++i)
                if (g == brst.psi(i)) return std::nullopt;
            bool is_star = false;
            for (std::size_t i = 0; i < lie.dim(); ++i)
                if (g == brst.psi_star(i)) {
                    wedge.push_back(static_cast<std::uint32_t>(i));
                    is_star = true;
                }
            if (!is_star) r.push_factor(g, e); // R generators come first in brst's pres
        }
        std::sort(wedge.begin(), wedge.end());
        return std::make_tuple(wedge, r);
    };
    // The identification (psi*-word of length p, r) <-> (wedge, r) is a
    // chain map only after the parity twist (-1)^{p(p-1)/2} (the standard
    // sign relating ghost words to alternating cochains); apply it to the
    // BRST side.
    auto twist = [](std::size_t p) { return (p * (p - 1) / 2) % 2 == 0 ? 1 : -1; };
    // Compare: for each BRST basis monomial without psi, apply d_brst,
    // project; apply d_ce to the identified CE label, project; equal?
    for (auto& [k, blk] : brst.space().basis().blocks()) {
        for (std::uint32_t pos = 0; pos < blk.size(); ++pos) {
            auto cls = classify(*blk[pos]);
            if (!cls) continue;
            auto& [wedge, rmono] = *cls;
            int col_twist = twist(wedge.size());
            // BRST image, projected
            Element img = brst.bracket_with_charge(Element::monomial(*blk[pos]));
            std::map<CELabel, Rational> brst_proj;
            for (auto& [m, c0] : img.terms()) {
                auto c2 = classify(m);
                if (!c2) continue;
                auto& [w2, r2] = *c2;
                Rational c = c0 * Rational(twist(w2.size()) * col_twist);
                BlockKey rk{r2.degree(r_pres), r2.weight(r_pres)};
                SparseVec coords = rmod.space.coords_in_block(Element::monomial(r2), rk);
                SparseVec red = rbar[rk].project(coords);
                for (auto& [idx, cc] : red.nz) {
                    CELabel lab2{w2, rmod.space.monomial(rk, rbar[rk].representatives()[idx])};
                    brst_proj[lab2] += c * cc;
                    if (brst_proj[lab2] == 0) brst_proj.erase(lab2);
                }
            }
            // CE image of (wedge, [rmono]), projected the same way
            CELabel lab{wedge, rmono};
            std::map<CELabel, Rational> ce_proj;
            {
                auto [ck, cpos] = ce.basis().locate(lab);
                SparseVec col = ce.d().block(ck).col(cpos);
                BlockKey ck2{ck.degree + 1, ck.weight};
                for (auto& [row, c] : col.nz) {
                    const CELabel& l2 = ce.basis().label(ck2, row);
                    BlockKey rk = rmod.space.basis().locate(l2.mono).first;
                    SparseVec coords = rmod.space.coords_in_block(Element::monomial(l2.mono), rk);
                    SparseVec red = rbar[rk].project(coords);
                    for (auto& [idx, cc] : red.nz) {
                        CELabel l3{l2.wedge, rmod.space.monomial(rk, rbar[rk].representatives()[idx])};
                        ce_proj[l3] += c * cc;
                        if (ce_proj[l3] == 0) ce_proj.erase(l3);
                    }
                }
            }
            if (!(brst_proj == ce_proj)) {
                rep.chain_maps_equal = false;
                rep.detail = "quotient differentials differ at block " + k.str();
                return rep;
            }
        }
    }

    // H^0 into invariants: representatives of H^0 per weight, projected to
    // rbar, must lie in the joint kernel of the induced actions.
    for (auto& [k0, n0] : brst.space().dims()) {
        if (k0.degree != 0 || n0 == 0) continue;
        SparseMat out = brst.complex().d.block(k0);
        auto ker = kernel_basis(out);
        // incoming image
        BlockKey km{k0.degree - 1, k0.weight};
        Echelon img;
        if (brst.space().dims().count(km)) {
            SparseMat into = brst.complex().d.block(km);
            for (std::uint32_t j = 0; j < into.cols(); ++j)
                if (!into.col(j).empty()) img.insert(into.col(j));
        }
        for (auto& v : ker) {
            if (img.contains(v)) continue;
            // project to rbar (weight k0.weight, degree 0 module block)
            BlockKey rk{0, k0.weight};
            if (!rbar.count(rk)) continue;
            SparseVec proj;
            for (auto& [pos, c] : v.nz) {
                auto cls = classify(brst.space().monomial(k0, pos));
                if (!cls) continue;
                auto& [wedge, rmono] = *cls;
                if (!wedge.empty()) continue; // only the pure-R component
                SparseVec coords = rmod.space.coords_in_block(Element::monomial(rmono), rk);
                SparseVec red = rbar[rk].project(coords);
                for (auto& [idx, cc] : red.nz) proj.add(idx, c * cc);
            }
            // check invariance: induced action of every x_i kills proj
            for (std::size_t i = 0; i < lie.dim(); ++i) {
                SparseVec img_i;
                for (auto& [idx, c] : proj.nz) {
                    std::uint32_t amb = rbar[rk].representatives()[idx];
                    SparseVec acted = rmod.action[i].block(rk).col(amb);
                    SparseVec red = rbar[rk].project(acted);
                    img_i.axpy(c, red);
                }
                if (!img_i.empty()) {
                    rep.h0_in_invariants = false;
                    rep.detail = "H^0 class not invariant at weight " +
                                 std::to_string(k0.weight);
                    return rep;
                }
            }
        }
    }
    return rep;
}

} // namespace varc

#endif
