#ifndef VARC_BLOCK_MAP_HPP
#define VARC_BLOCK_MAP_HPP

#include "varc/graded_space.hpp"
#include "varc/sparse.hpp"

#include <map>
#include <optional>

namespace varc {

// Sparse exact linear map stored per graded block. Block (d, w) of the
// source maps into block (d + shift.degree, w + shift.weight) of the target.
class BlockMap {
public:
    BlockMap() = default;
    BlockMap(SpaceDims src, SpaceDims dst, BlockKey shift)
        : src_(std::move(src)), dst_(std::move(dst)), shift_(shift) {}

    const SpaceDims& src_dims() const { return src_; }
    const SpaceDims& dst_dims() const { return dst_; }
    BlockKey shift() const { return shift_; }

    std::size_t src_dim(BlockKey k) const {
        auto it = src_.find(k);
        return it == src_.end() ? 0 : it->second;
    }
    std::size_t dst_dim(BlockKey k) const {
        auto it = dst_.find(k);
        return it == dst_.end() ? 0 : it->second;
    }

    // The matrix of the block starting at source block k (created lazily).
    SparseMat& block(BlockKey k) {
        auto it = mats_.find(k);
        if (it == mats_.end()) {
            auto m = SparseMat(static_cast<std::uint32_t>(dst_dim(k + shift_)),
                               static_cast<std::uint32_t>(src_dim(k)));
            it = mats_.emplace(k, std::move(m)).first;
        }
        return it->second;
    }
    SparseMat block(BlockKey k) const {
        auto it = mats_.find(k);
        if (it != mats_.end()) return it->second;
        return SparseMat(static_cast<std::uint32_t>(dst_dim(k + shift_)),
                         static_cast<std::uint32_t>(src_dim(k)));
    }
    const std::map<BlockKey, SparseMat>& stored_blocks() const { return mats_; }

    void set_column(BlockKey src_block, std::uint32_t col, const SparseVec& v) {
        block(src_block).col(col) = v;
    }

    SparseVec apply(BlockKey src_block, const SparseVec& v) const {
        auto it = mats_.find(src_block);
        if (it == mats_.end()) return {};
        return it->second.apply(v);
    }

    // g.compose(f) = g after f; shifts add.
    BlockMap compose(const BlockMap& f) const {
        BlockMap r(f.src_, dst_, f.shift_ + shift_);
        for (auto& [k, dim] : f.src_) {
            if (dim == 0) continue;
            SparseMat a = block(k + f.shift_);
            SparseMat b = f.block(k);
            if (a.rows() == 0 || b.is_zero() || a.is_zero()) continue;
            r.mats_.emplace(k, a * b);
        }
        return r;
    }

    BlockMap operator+(const BlockMap& o) const {
        audit_check(shift_ == o.shift_, "block map sum with different shifts");
        BlockMap r = *this;
        for (auto& [k, m] : o.mats_) {
            auto it = r.mats_.find(k);
            if (it == r.mats_.end()) r.mats_.emplace(k, m);
            else it->second = it->second + m;
        }
        return r;
    }
    BlockMap operator-() const {
        BlockMap r = *this;
        for (auto& [k, m] : r.mats_) m *= Rational(-1);
        return r;
    }
    BlockMap& operator*=(const Rational& c) {
        for (auto& [k, m] : mats_) m *= c;
        return *this;
    }

    bool is_zero() const {
        for (auto& [k, m] : mats_)
            if (!m.is_zero()) return false;
        return true;
    }

    // First block where this map and `o` differ (same grading data assumed).
    std::optional<BlockKey> first_difference(const BlockMap& o) const {
        for (auto& [k, dim] : src_) {
            if (dim == 0) continue;
            if (!(block(k) == o.block(k))) return k;
        }
        return std::nullopt;
    }

    // Verifies this.compose(this) == 0; returns first offending block.
    std::optional<BlockKey> square_nonzero_block() const {
        for (auto& [k, dim] : src_) {
            if (dim == 0) continue;
            SparseMat second = block(k + shift_);
            SparseMat first = block(k);
            if (first.is_zero() || second.rows() == 0) continue;
            if (!(second * first).is_zero()) return k;
        }
        return std::nullopt;
    }

private:
    SpaceDims src_, dst_;
    BlockKey shift_{0, 0};
    std::map<BlockKey, SparseMat> mats_;
};

// Builds the BlockMap of a generator-extended derivation acting on a
// truncated monomial space. `image_space` defaults to the source space.
inline BlockMap derivation_block_map(const MonomialSpace& space, const Derivation& d,
                                     BlockKey shift, const MonomialSpace* image_space = nullptr) {
    const MonomialSpace& dst = image_space ? *image_space : space;
    BlockMap out(space.dims(), dst.dims(), shift);
    for (auto& [k, basis] : space.basis().blocks()) {
        for (std::uint32_t j = 0; j < basis.size(); ++j) {
            Element img = d.apply_monomial(*basis[j], Rational(1));
            if (img.is_zero()) continue;
            out.block(k).col(j) = dst.coords_in_block(img, k + shift);
        }
    }
    return out;
}

} // namespace varc

#endif
