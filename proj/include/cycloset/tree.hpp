#pragma once

// Depth-f preimage tree of the cosets modulo n under the projections
// Z/l^{N+1}nZ -> Z/l^N nZ, with a DOT rendering.

#include "cycloset/enumerate.hpp"
#include "cycloset/system.hpp"

#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace cycloset {

struct TreeNode {
    static constexpr std::size_t no_parent = std::numeric_limits<std::size_t>::max();

    unsigned depth;
    u64 modulus;
    u64 rep;
    u64 size;
    SplitKind kind; ///< behaviour under the next projection
    std::size_t parent = no_parent;
    std::vector<std::size_t> children;
};

struct SplittingTree {
    u64 ell = 0;
    u64 q = 0;
    u64 n = 1;
    unsigned depth = 0;
    std::vector<TreeNode> nodes;
    std::vector<std::vector<std::size_t>> levels; ///< node indices per depth
};

inline SplittingTree splitting_tree(u64 ell, u64 q, u64 n, unsigned depth)
{
    detail::check_tower(ell, q, n);
    detail::check_depth_capacity(ell, n, depth);
    const u64 ord_q = detail::order_mod_prime(q, ell);

    SplittingTree tree{ell, q, n, depth, {}, std::vector<std::vector<std::size_t>>(depth + 1)};
    const auto add = [&](unsigned level, u64 modulus, u64 rep, u64 size, std::size_t parent) {
        const SplitKind kind = detail::classify_known(ell, q, modulus, rep, size, ord_q);
        tree.nodes.push_back({level, modulus, rep, size, kind, parent, {}});
        tree.levels[level].push_back(tree.nodes.size() - 1);
        if (parent != TreeNode::no_parent)
            tree.nodes[parent].children.push_back(tree.nodes.size() - 1);
    };

    for (const auto& c : enumerate_cosets(q, n).cosets)
        add(0, n, c.rep, c.size, TreeNode::no_parent);

    u64 modulus = n;
    for (unsigned level = 0; level < depth; ++level) {
        for (std::size_t index : std::vector<std::size_t>(tree.levels[level])) {
            const TreeNode node = tree.nodes[index];
            for (const auto& child : detail::decompose_known(ell, q, modulus, node.rep, node.size, ord_q, node.kind))
                add(level + 1, child.n, child.rep, child.size, index);
        }
        modulus *= ell;
    }
    return tree;
}

/// One node per coset labelled "rep/size", one rank per depth, edges parent -> child.
inline std::string to_dot(const SplittingTree& tree)
{
    std::ostringstream out;
    const auto id = [&](const TreeNode& node) { return "N" + std::to_string(node.depth) + "_" + std::to_string(node.rep); };
    out << "digraph splitting_tree {\n";
    out << "  // ell=" << tree.ell << " q=" << tree.q << " n=" << tree.n << " depth=" << tree.depth << "\n";
    out << "  node [shape=box];\n";
    for (std::size_t level = 0; level < tree.levels.size(); ++level) {
        out << "  { rank=same;";
        for (std::size_t index : tree.levels[level])
            out << ' ' << id(tree.nodes[index]) << ';';
        out << " }\n";
    }
    for (const auto& node : tree.nodes) {
        out << "  " << id(node) << " [label=\"" << node.rep << '/' << node.size << "\", tooltip=\""
            << to_string(node.kind) << "\"];\n";
    }
    for (const auto& node : tree.nodes) {
        for (std::size_t child : node.children)
            out << "  " << id(node) << " -> " << id(tree.nodes[child]) << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace cycloset
