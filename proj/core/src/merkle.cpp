#include "amr/merkle.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace amr {

namespace {

constexpr unsigned kMaxDepth = 32;
constexpr unsigned kDenseDepthLimit = 16;

const std::vector<FieldElement>& zero_cache(HashKind kind) {
    auto build = [](HashKind k) {
        std::vector<FieldElement> z;
        z.reserve(kMaxDepth + 1);
        z.push_back(FieldElement::zero());
        for (unsigned i = 0; i < kMaxDepth; ++i) z.push_back(h_2p(k, z.back(), z.back()));
        return z;
    };
    static const std::vector<FieldElement> mimc = build(HashKind::MiMC);
    static const std::vector<FieldElement> poseidon = build(HashKind::Poseidon);
    return kind == HashKind::MiMC ? mimc : poseidon;
}

} // namespace

MerkleTree::MerkleTree(unsigned depth, HashKind kind, Storage storage)
    : depth_(depth), kind_(kind) {
    if (depth < 1 || depth > kMaxDepth)
        throw Error(Err::BadConfig, "tree depth must be in [1, 32]");
    dense_ = storage == Storage::Dense ||
             (storage == Storage::Auto && depth <= kDenseDepthLimit);
    if (dense_) {
        levels_.resize(depth + 1);
        const auto& zeros = zero_cache(kind);
        for (unsigned l = 0; l <= depth; ++l)
            levels_[l].assign(uint64_t(1) << (depth - l), zeros[l]);
    }
}

FieldElement MerkleTree::node(unsigned level, uint64_t idx) const {
    if (dense_) return levels_[level][idx];
    auto it = nodes_.find({level, idx});
    return it == nodes_.end() ? zero_cache(kind_)[level] : it->second;
}

void MerkleTree::set_node(unsigned level, uint64_t idx, const FieldElement& v) {
    if (dense_) {
        levels_[level][idx] = v;
    } else {
        nodes_[{level, idx}] = v;
    }
}

const FieldElement& MerkleTree::root() const {
    if (dense_) return levels_[depth_][0];
    auto it = nodes_.find({depth_, 0});
    return it == nodes_.end() ? zero_cache(kind_)[depth_] : it->second;
}

FieldElement MerkleTree::leaf(uint64_t index) const {
    if (index >= capacity()) throw Error(Err::BadIndex, "leaf index out of range");
    return node(0, index);
}

FieldElement MerkleTree::update(uint64_t index, const FieldElement& value) {
    if (index >= capacity()) throw Error(Err::BadIndex, "leaf index out of range");
    set_node(0, index, value);
    uint64_t idx = index;
    for (unsigned l = 1; l <= depth_; ++l) {
        idx >>= 1;
        set_node(l, idx, h_2p(kind_, node(l - 1, 2 * idx), node(l - 1, 2 * idx + 1)));
    }
    return root();
}

MerklePath MerkleTree::prove(uint64_t index) const {
    if (index >= capacity()) throw Error(Err::BadIndex, "leaf index out of range");
    MerklePath path;
    path.index = index;
    path.siblings.reserve(depth_);
    uint64_t idx = index;
    for (unsigned l = 0; l < depth_; ++l) {
        path.siblings.push_back(node(l, idx ^ 1));
        idx >>= 1;
    }
    return path;
}

FieldElement MerkleTree::empty_root(unsigned depth, HashKind kind) {
    if (depth < 1 || depth > kMaxDepth)
        throw Error(Err::BadConfig, "tree depth must be in [1, 32]");
    return zero_cache(kind)[depth];
}

bool merkle_verify(HashKind kind, unsigned depth, uint64_t index, const FieldElement& x,
                   const FieldElement& root, const MerklePath& path) {
    if (path.siblings.size() != depth)
        throw Error(Err::MalformedPath, "path length does not match tree depth");
    FieldElement cur = x;
    uint64_t idx = index;
    for (unsigned l = 0; l < depth; ++l) {
        const FieldElement& sib = path.siblings[l];
        cur = (idx & 1) ? h_2p(kind, sib, cur) : h_2p(kind, cur, sib);
        idx >>= 1;
    }
    return cur == root;
}

void MerkleTree::write_snapshot(std::ostream& out) const {
    out << "amr-merkle-snapshot v1\n";
    out << "depth " << depth_ << "\n";
    out << "kind " << hash_kind_name(kind_) << "\n";
    const FieldElement zero = FieldElement::zero();
    if (dense_) {
        for (uint64_t i = 0; i < capacity(); ++i)
            if (levels_[0][i] != zero) out << "leaf " << i << " " << levels_[0][i].to_hex() << "\n";
    } else {
        for (const auto& [key, v] : nodes_)
            if (key.first == 0 && v != zero) out << "leaf " << key.second << " " << v.to_hex() << "\n";
    }
}

MerkleTree MerkleTree::read_snapshot(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "amr-merkle-snapshot v1")
        throw Error(Err::ConfigError, "bad merkle snapshot header");
    unsigned depth = 0;
    std::string kind_name;
    std::vector<std::pair<uint64_t, FieldElement>> leaves;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "depth") {
            ls >> depth;
        } else if (key == "kind") {
            ls >> kind_name;
        } else if (key == "leaf") {
            uint64_t idx;
            std::string hex;
            ls >> idx >> hex;
            if (!ls) throw Error(Err::ConfigError, "malformed merkle snapshot leaf");
            leaves.emplace_back(idx, FieldElement::from_hex(hex));
        } else {
            throw Error(Err::ConfigError, "unknown merkle snapshot key '" + key + "'");
        }
    }
    if (depth == 0 || kind_name.empty())
        throw Error(Err::ConfigError, "merkle snapshot missing depth or kind");
    MerkleTree tree(depth, hash_kind_from_name(kind_name));
    for (const auto& [idx, v] : leaves) tree.update(idx, v);
    return tree;
}

} // namespace amr
