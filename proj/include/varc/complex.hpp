#ifndef VARC_COMPLEX_HPP
#define VARC_COMPLEX_HPP

#include "varc/block_map.hpp"
#include "varc/parallel.hpp"

#include <optional>
#include <vector>

namespace varc {

// Weight-truncated complex: graded dims, a differential of degree +1 and
// weight 0, and the truncation bound. d∘d = 0 is asserted at construction
// unless the caller explicitly skips (the skip is recorded, never silent).
struct TruncatedComplex {
    SpaceDims dims;
    BlockMap d; // shift (+1, 0)
    int weight_bound = 0;
    bool d2_verified = false;

    TruncatedComplex() = default;
    TruncatedComplex(SpaceDims dims_, BlockMap d_, int weight_bound_, bool skip_d2_check = false)
        : dims(std::move(dims_)), d(std::move(d_)), weight_bound(weight_bound_) {
        audit_check(d.shift() == BlockKey{1, 0}, "complex differential must have shift (+1, 0)");
        if (!skip_d2_check) {
            if (auto bad = d.square_nonzero_block())
                audit_fail("d^2 != 0 starting at block ", bad->str());
            d2_verified = true;
        }
    }

    std::size_t dim(BlockKey k) const {
        auto it = dims.find(k);
        return it == dims.end() ? 0 : it->second;
    }
};

struct BlockRankInfo {
    std::size_t dim = 0;
    std::size_t rank_out = 0; // rank of d leaving this block
    std::size_t rank_in = 0;  // rank of d entering this block
    std::size_t cohomology() const { return dim - rank_out - rank_in; }
};

struct CohomologyTable {
    std::map<BlockKey, BlockRankInfo> blocks;
    bool d2_verified = false;

    std::size_t dim(BlockKey k) const {
        auto it = blocks.find(k);
        return it == blocks.end() ? 0 : it->second.cohomology();
    }
    std::map<BlockKey, std::size_t> dims() const {
        std::map<BlockKey, std::size_t> out;
        for (auto& [k, info] : blocks) out[k] = info.cohomology();
        return out;
    }
    bool all_zero_except(const std::map<BlockKey, std::size_t>& expected) const {
        for (auto& [k, info] : blocks) {
            auto it = expected.find(k);
            std::size_t want = it == expected.end() ? 0 : it->second;
            if (info.cohomology() != want) return false;
        }
        for (auto& [k, want] : expected) {
            if (want != 0 && dim(k) != want) return false;
        }
        return true;
    }
};

// Exact cohomology dimensions per block. Per-block ranks are independent
// computations and may run in parallel; the result is deterministic.
inline CohomologyTable cohomology(const TruncatedComplex& cx, unsigned threads = 1) {
    std::vector<BlockKey> keys;
    for (auto& [k, n] : cx.dims) keys.push_back(k);

    // Ranks of d on every block (outgoing).
    std::vector<std::size_t> rank_out(keys.size(), 0);
    parallel_for(keys.size(), threads, [&](std::size_t i) {
        SparseMat m = cx.d.block(keys[i]);
        if (m.rows() == 0 || m.cols() == 0 || m.is_zero()) return;
        rank_out[i] = rank(m);
    });

    CohomologyTable out;
    out.d2_verified = cx.d2_verified;
    std::map<BlockKey, std::size_t> rank_out_at;
    for (std::size_t i = 0; i < keys.size(); ++i) rank_out_at[keys[i]] = rank_out[i];
    for (std::size_t i = 0; i < keys.size(); ++i) {
        BlockRankInfo info;
        info.dim = cx.dims.at(keys[i]);
        info.rank_out = rank_out[i];
        BlockKey prev{keys[i].degree - 1, keys[i].weight};
        auto it = rank_out_at.find(prev);
        info.rank_in = it == rank_out_at.end() ? 0 : it->second;
        out.blocks[keys[i]] = info;
    }
    return out;
}

// Mapping cone of a degree-0 chain map f: V -> W. The cone block at k is
// V(k+1) (+) W(k), with differential [[-d_V, 0], [f, d_W]]. Rejects inputs
// where f fails to be a chain map, reporting the first offending block.
struct ConeResult {
    TruncatedComplex complex;
    // Offsets: cone block k = V block (k.degree+1, k.weight) then W block k.
    SpaceDims v_dims, w_dims;
};

inline ConeResult cone(const TruncatedComplex& V, const TruncatedComplex& W, const BlockMap& f) {
    audit_check(f.shift() == BlockKey{0, 0}, "cone input must be a degree-0 map");
    // Chain map check: d_W f = f d_V blockwise.
    BlockMap lhs = W.d.compose(f), rhs = f.compose(V.d);
    if (auto bad = lhs.first_difference(rhs))
        audit_fail("cone input is not a chain map; first offending block ", bad->str());

    SpaceDims dims;
    auto add_dims = [&](const SpaceDims& src, int dshift) {
        for (auto& [k, n] : src)
            if (n > 0) dims[{k.degree + dshift, k.weight}] += n;
    };
    add_dims(V.dims, -1); // V[1]^n = V^{n+1}
    add_dims(W.dims, 0);

    BlockMap d(dims, dims, {1, 0});
    for (auto& [k, n] : dims) {
        BlockKey kv{k.degree + 1, k.weight}; // V block sitting inside cone block k
        std::size_t nv = V.dims.count(kv) ? V.dims.at(kv) : 0;
        std::size_t nw = W.dims.count(k) ? W.dims.at(k) : 0;
        auto& mat = d.block(k);
        // -d_V on the shifted part.
        SparseMat dv = V.d.block(kv);
        for (std::uint32_t j = 0; j < nv; ++j)
            for (auto& [i, c] : dv.col(j).nz) mat.add(i, j, -c);
        // f[1] from V part into W part.
        SparseMat fv = f.block(kv);
        for (std::uint32_t j = 0; j < nv; ++j)
            for (auto& [i, c] : fv.col(j).nz)
                mat.add(static_cast<std::uint32_t>(V.dims.count({k.degree + 2, k.weight})
                                                       ? V.dims.at({k.degree + 2, k.weight})
                                                       : 0) +
                            i,
                        j, c);
        // d_W on the W part.
        SparseMat dw = W.d.block(k);
        std::uint32_t row_off = static_cast<std::uint32_t>(
            V.dims.count({k.degree + 2, k.weight}) ? V.dims.at({k.degree + 2, k.weight}) : 0);
        std::uint32_t col_off = static_cast<std::uint32_t>(nv);
        for (std::uint32_t j = 0; j < nw; ++j)
            for (auto& [i, c] : dw.col(j).nz) mat.add(row_off + i, col_off + j, c);
    }
    ConeResult r;
    r.v_dims = V.dims;
    r.w_dims = W.dims;
    r.complex = TruncatedComplex(std::move(dims), std::move(d),
                                 std::max(V.weight_bound, W.weight_bound));
    return r;
}

inline ConeResult cone_of_identity(const TruncatedComplex& V) {
    BlockMap id(V.dims, V.dims, {0, 0});
    for (auto& [k, n] : V.dims)
        id.block(k) = SparseMat::identity(static_cast<std::uint32_t>(n));
    return cone(V, V, id);
}

// Tensor product of truncated complexes. Basis of block k is the
// lexicographic list of pairs over contributing block pairs (kA, kB) in
// increasing order, row-major in the A index. Weight pairs escaping the
// bound are recorded in `overflow`, never silently dropped.
struct TensorLayout {
    struct Chunk {
        BlockKey ka, kb;
        std::size_t offset, dim_a, dim_b;
    };
    std::map<BlockKey, std::vector<Chunk>> chunks;

    // Index of pair (ia, ib) in the tensor block containing (ka, kb).
    std::pair<BlockKey, std::uint32_t> locate(BlockKey ka, std::uint32_t ia, BlockKey kb,
                                              std::uint32_t ib) const {
        BlockKey k = ka + kb;
        for (auto& ch : chunks.at(k))
            if (ch.ka == ka && ch.kb == kb)
                return {k, static_cast<std::uint32_t>(ch.offset + ia * ch.dim_b + ib)};
        audit_fail("tensor chunk not found for ", ka.str(), " x ", kb.str());
    }
};

struct TensorResult {
    TruncatedComplex complex;
    TensorLayout layout;
    std::vector<std::pair<BlockKey, BlockKey>> overflow; // weight pairs beyond the bound
};

inline TensorResult tensor_complex(const TruncatedComplex& A, const TruncatedComplex& B,
                                   int weight_bound) {
    TensorResult r;
    SpaceDims dims;
    for (auto& [ka, na] : A.dims) {
        if (na == 0) continue;
        for (auto& [kb, nb] : B.dims) {
            if (nb == 0) continue;
            if (ka.weight + kb.weight > weight_bound) {
                r.overflow.push_back({ka, kb});
                continue;
            }
            BlockKey k = ka + kb;
            auto& chunk_list = r.layout.chunks[k];
            chunk_list.push_back({ka, kb, dims[k], na, nb});
            dims[k] += na * nb;
        }
    }
    // d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db
    BlockMap d(dims, dims, {1, 0});
    for (auto& [k, chunk_list] : r.layout.chunks) {
        for (auto& ch : chunk_list) {
            SparseMat da = A.d.block(ch.ka);
            SparseMat db = B.d.block(ch.kb);
            int sign_a = (ch.ka.degree % 2 != 0) ? -1 : 1;
            for (std::uint32_t ia = 0; ia < ch.dim_a; ++ia) {
                for (std::uint32_t ib = 0; ib < ch.dim_b; ++ib) {
                    std::uint32_t col = static_cast<std::uint32_t>(ch.offset + ia * ch.dim_b + ib);
                    for (auto& [ia2, c] : da.col(ia).nz) {
                        auto [kk, row] =
                            r.layout.locate({ch.ka.degree + 1, ch.ka.weight}, ia2, ch.kb, ib);
                        d.block(k).add(row, col, c);
                        (void)kk;
                    }
                    for (auto& [ib2, c] : db.col(ib).nz) {
                        auto [kk, row] =
                            r.layout.locate(ch.ka, ia, {ch.kb.degree + 1, ch.kb.weight}, ib2);
                        d.block(k).add(row, col, sign_a > 0 ? c : -c);
                        (void)kk;
                    }
                }
            }
        }
    }
    r.complex = TruncatedComplex(std::move(dims), std::move(d), weight_bound);
    return r;
}

} // namespace varc

#endif
