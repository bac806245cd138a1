#ifndef VARC_QUOTIENT_HPP
#define VARC_QUOTIENT_HPP

#include "varc/sparse.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace varc {

// Quotient of one coordinate block by the span of a list of vectors.
// Representatives are the non-pivot coordinates; project() rewrites a vector
// in terms of them.
class BlockQuotient {
public:
    BlockQuotient() = default;
    BlockQuotient(std::size_t ambient_dim, const std::vector<SparseVec>& span)
        : ambient_(ambient_dim) {
        for (auto& v : span) ech_.insert(v);
        for (std::uint32_t i = 0; i < ambient_dim; ++i)
            if (!ech_.is_pivot(i)) reps_.push_back(i);
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return reps_.size(); }
    std::size_t subspace_rank() const { return ech_.rank(); }
    const std::vector<std::uint32_t>& representatives() const { return reps_; }

    // Coordinates of [v] on the representative basis.
    SparseVec project(const SparseVec& v) const {
        SparseVec red = ech_.reduce(v);
        SparseVec out;
        for (auto& [i, c] : red.nz) {
            auto it = std::lower_bound(reps_.begin(), reps_.end(), i);
            // reduce() leaves only non-pivot coordinates
            out.add(static_cast<std::uint32_t>(it - reps_.begin()), c);
        }
        return out;
    }

    // Ambient representative of quotient basis vector j.
    SparseVec lift(std::uint32_t j) const {
        SparseVec v;
        v.add(reps_[j], Rational(1));
        return v;
    }

    bool in_subspace(const SparseVec& v) const { return ech_.contains(v); }

private:
    std::size_t ambient_ = 0;
    Echelon ech_;
    std::vector<std::uint32_t> reps_;
};

} // namespace varc

#endif
