#ifndef VARC_GRADED_SPACE_HPP
#define VARC_GRADED_SPACE_HPP

#include "varc/algebra.hpp"
#include "varc/audit.hpp"
#include "varc/sparse.hpp"

#include <map>
#include <string>
#include <vector>

namespace varc {

// Block index of a graded piece: (cohomological degree, weight).
struct BlockKey {
    int degree = 0;
    int weight = 0;
    auto operator<=>(const BlockKey&) const = default;
    std::string str() const {
        return "(deg " + std::to_string(degree) + ", wt " + std::to_string(weight) + ")";
    }
};

inline BlockKey operator+(BlockKey a, BlockKey b) {
    return {a.degree + b.degree, a.weight + b.weight};
}

using SpaceDims = std::map<BlockKey, std::size_t>;

// Basis-indexed graded space over opaque, ordered labels. Per block the
// basis is a duplicate-free ordered list; lookup gives (block, position).
template <class Label>
class BasisSpace {
public:
    void add(BlockKey k, Label l) {
        auto [it, fresh] = index_.emplace(std::move(l), std::pair{k, std::uint32_t(0)});
        audit_check(fresh, "duplicate basis label in block ", k.str());
        auto& blk = blocks_[k];
        it->second.second = static_cast<std::uint32_t>(blk.size());
        blk.push_back(&it->first);
    }

    bool has_block(BlockKey k) const { return blocks_.count(k) != 0; }
    std::size_t dim(BlockKey k) const {
        auto it = blocks_.find(k);
        return it == blocks_.end() ? 0 : it->second.size();
    }
    const Label& label(BlockKey k, std::uint32_t pos) const { return *blocks_.at(k)[pos]; }

    bool contains(const Label& l) const { return index_.count(l) != 0; }
    std::pair<BlockKey, std::uint32_t> locate(const Label& l) const {
        auto it = index_.find(l);
        audit_check(it != index_.end(), "basis label not found");
        return it->second;
    }

    SpaceDims dims() const {
        SpaceDims d;
        for (auto& [k, v] : blocks_) d[k] = v.size();
        return d;
    }
    const std::map<BlockKey, std::vector<const Label*>>& blocks() const { return blocks_; }
    std::size_t total_dim() const {
        std::size_t t = 0;
        for (auto& [k, v] : blocks_) t += v.size();
        return t;
    }

private:
    std::map<Label, std::pair<BlockKey, std::uint32_t>> index_;
    std::map<BlockKey, std::vector<const Label*>> blocks_;
};

// Graded space whose basis labels are normal-form monomials of a free
// graded-commutative presentation; the workhorse for every complex built on
// polynomial generators. Basis order within a block is degrevlex.
class MonomialSpace {
public:
    MonomialSpace() = default;
    MonomialSpace(const Presentation& p, int weight_bound, int degree_bound = 1 << 20)
        : pres_(&p), weight_bound_(weight_bound) {
        auto monos = enumerate_monomials(p, weight_bound, degree_bound);
        std::map<BlockKey, std::vector<Monomial>> tmp;
        for (auto& m : monos) tmp[{m.degree(p), m.weight(p)}].push_back(m);
        for (auto& [k, v] : tmp) {
            std::sort(v.begin(), v.end(),
                      [&](const Monomial& a, const Monomial& b) { return degrevlex_less(p, a, b); });
            for (auto& m : v) space_.add(k, m);
        }
    }

    const Presentation& pres() const { return *pres_; }
    int weight_bound() const { return weight_bound_; }
    const BasisSpace<Monomial>& basis() const { return space_; }
    SpaceDims dims() const { return space_.dims(); }
    std::size_t dim(BlockKey k) const { return space_.dim(k); }

    // Element -> per-block coordinates. Fails if a term leaves the stored
    // weight range (truncation overflow is an error, not a silent drop).
    std::map<BlockKey, SparseVec> coords(const Element& e) const {
        std::map<BlockKey, SparseVec> out;
        for (auto& [m, c] : e.terms()) {
            BlockKey k{m.degree(*pres_), m.weight(*pres_)};
            audit_check(space_.contains(m), "monomial ", m.str(*pres_),
                        " escapes the truncated space (block ", k.str(), ")");
            auto [kk, pos] = space_.locate(m);
            out[kk].add(pos, c);
        }
        return out;
    }

    // Coordinates of a block-homogeneous element.
    SparseVec coords_in_block(const Element& e, BlockKey k) const {
        SparseVec v;
        for (auto& [m, c] : e.terms()) {
            BlockKey km{m.degree(*pres_), m.weight(*pres_)};
            audit_check(km == k, "element not homogeneous: term in ", km.str(), ", expected ",
                        k.str());
            audit_check(space_.contains(m), "monomial ", m.str(*pres_), " escapes truncation");
            v.add(space_.locate(m).second, c);
        }
        return v;
    }

    Element element(BlockKey k, const SparseVec& v) const {
        Element e;
        for (auto& [i, c] : v.nz) e.add_term(space_.label(k, i), c);
        return e;
    }
    const Monomial& monomial(BlockKey k, std::uint32_t pos) const { return space_.label(k, pos); }

private:
    const Presentation* pres_ = nullptr;
    int weight_bound_ = 0;
    BasisSpace<Monomial> space_;
};

} // namespace varc

#endif
