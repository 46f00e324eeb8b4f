#pragma once

#include <iosfwd>
#include <map>
#include <vector>

#include "amr/hash.hpp"

namespace amr {

/// Authentication path for one leaf: sibling hashes ordered leaf-to-root.
struct MerklePath {
    std::vector<FieldElement> siblings;
    uint64_t index = 0;
};

/// Fixed-depth accumulator over field elements. Unset leaves hold zero, so an
/// empty tree of depth d has root Z_d where Z_0 = 0 and Z_{i+1} = h_2p(Z_i, Z_i).
/// Small trees keep every node in dense per-level arrays; deep trees fall back
/// to a node map backed by the zero-subtree cache.
class MerkleTree {
  public:
    enum class Storage { Auto, Dense, Sparse };

    MerkleTree(unsigned depth, HashKind kind, Storage storage = Storage::Auto);

    unsigned depth() const { return depth_; }
    HashKind kind() const { return kind_; }
    uint64_t capacity() const { return uint64_t(1) << depth_; }

    const FieldElement& root() const;
    FieldElement leaf(uint64_t index) const;

    /// Sets leaf `index`, recomputes the root path (exactly depth() h_2p
    /// calls) and returns the new root.
    FieldElement update(uint64_t index, const FieldElement& value);
    MerklePath prove(uint64_t index) const;

    static FieldElement empty_root(unsigned depth, HashKind kind);

    // Snapshot text format: depth, hash kind, occupied (index, hex) leaves.
    void write_snapshot(std::ostream& out) const;
    static MerkleTree read_snapshot(std::istream& in);

  private:
    FieldElement node(unsigned level, uint64_t idx) const;
    void set_node(unsigned level, uint64_t idx, const FieldElement& v);

    unsigned depth_;
    HashKind kind_;
    bool dense_;
    std::vector<std::vector<FieldElement>> levels_;            // dense mode
    std::map<std::pair<unsigned, uint64_t>, FieldElement> nodes_; // sparse mode
};

/// Def-2.5-style verification: folds `x` along `path` using the bits of
/// `index` and compares with `root`. The path length must equal `depth`.
bool merkle_verify(HashKind kind, unsigned depth, uint64_t index, const FieldElement& x,
                   const FieldElement& root, const MerklePath& path);

} // namespace amr
