#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rational.hpp"

namespace lieforge::trees {

// Vertex marks used by line rooted trees.
enum class Mark : uint8_t {
    None = 0,
    Below,     // vertex under the line
    LineI,     // line vertex, leaves only
    LineII,    // line vertex, may carry one subtree above the line
    LineIII,   // line vertex attached to a below-line parent
    Above,     // vertex over the line
};

enum class LeafColor : uint8_t { None = 0, White, Black };

// Immutable interned tree node. One node type serves every family in use:
// rooted trees, planar trees, partitioned trees, weighted trees and line
// rooted trees. Family-specific invariants are enforced by the builders.
//
// A node is a leaf (label >= 0, no children) or a vertex (children, possibly
// none for 0-corollas). Equality of canonical terms is pointer equality.
struct Node {
    bool leaf = false;
    int32_t label = 0;    // leaf label; 0 = anonymous slot
    int32_t weight = 0;   // wPT vertex weight, 0 elsewhere
    bool cut = false;     // vertex starts a new partition block
    LeafColor color = LeafColor::None;
    Mark mark = Mark::None;
    std::vector<const Node*> kids;

    int leaf_count = 0;
    int vertex_count = 0;
    std::string enc;  // canonical textual encoding; also the interning key

    bool is_leaf() const { return leaf; }
    int arity() const { return static_cast<int>(kids.size()); }
};

using NodeRef = const Node*;

// Hash-consing registry. Thread-safe insert-once; canonical nodes live for
// the whole process.
class Interner {
  public:
    static Interner& instance();

    NodeRef leaf(int32_t label, LeafColor color = LeafColor::None);
    NodeRef vertex(std::vector<NodeRef> kids, bool cut = false, int32_t weight = 0,
                   Mark mark = Mark::None);

  private:
    NodeRef intern(Node&& n);

    std::mutex mu_;
    std::unordered_map<std::string, const Node*> table_;
};

NodeRef leaf(int32_t label = 0, LeafColor color = LeafColor::None);

// Vertex with children kept in the given (planar) order.
NodeRef planar_vertex(std::vector<NodeRef> kids, bool cut = false, int32_t weight = 0,
                      Mark mark = Mark::None);

// Vertex with children sorted into canonical order (non-planar families).
NodeRef vertex(std::vector<NodeRef> kids, bool cut = false, int32_t weight = 0,
               Mark mark = Mark::None);

// ---- encodings ----------------------------------------------------------

// Parses the canonical textual encoding, e.g. "(c3 L1 (c2 L2 L3))".
NodeRef parse(const std::string& text);

inline const std::string& encode(NodeRef t) { return t->enc; }

// ---- enumeration --------------------------------------------------------

// Reduced rooted trees with leaves labeled 1..m (every vertex has arity >= 2).
// m = 1 yields the trivial tree, a bare leaf. Deterministic order.
std::vector<NodeRef> enumerate_rooted_trees(int m, int max_vertices = -1);

// Planar rooted trees with vertices of arity >= 0, given leaf and vertex counts.
std::vector<NodeRef> enumerate_planar_trees(int leaves, int vertices);

// Leafless planar rooted trees with exactly k >= 1 vertices (PT_0^{(k)}).
std::vector<NodeRef> enumerate_pt0(int k);

// Partitioned rooted trees with m labeled leaves and at most max_vertices
// vertices; degree_filter, when set, keeps only trees of that degree
// (#blocks - #vertices).
std::vector<NodeRef> enumerate_part(int m, int max_vertices, bool use_degree_filter = false,
                                    int degree_filter = 0);

// Partitioned planar trees with colored leaves (PaPT), all vertices of
// arity >= 1, bounded total vertex count.
std::vector<NodeRef> enumerate_papt(int max_vertices);

// Planarly partitioned rooted trees (PaPRT) with at most max_vertices
// vertices and max_leaves leaves; leaves are anonymous slots. Returned as
// planar trees of blocks: each block node carries its inner tree first (slot
// markers 1001.. point at the following child blocks, in planar order).
std::vector<NodeRef> enumerate_paprt(int max_vertices, int max_leaves);

// Weighted planar rooted trees of total weight k (wPT^{[k]}) with at most
// max_leaves leaves.
std::vector<NodeRef> enumerate_wpt(int total_weight, int max_leaves);

// Line rooted trees with m labeled leaves and at most max_vertices vertices.
std::vector<NodeRef> enumerate_lrt(int m, int max_vertices);

// ---- coefficients -------------------------------------------------------

// C(|) = 1, C(c_m) = m!, C(tau) = m! |tau| prod C(tau_i).
Rat coeff_C(NodeRef t);

// D(tau) = (-1)^k prod C(tilde tau^i) over the k blocks of a PaPT.
Rat coeff_D(NodeRef t);

// W(|) = 1, W(c_m^[k]) = k, W(tau) = K(tau) prod W(tau_i) with K the total weight.
Rat coeff_W(NodeRef t);

// Product of the factorials of the arities of all vertices.
Rat coeff_A(NodeRef t);

// Number of leaf-slot automorphisms of a canonical non-planar tree.
Rat automorphism_count(NodeRef t);

// ---- partitioned-tree structure -----------------------------------------

// Number of blocks of a partitioned tree (root vertex always opens a block).
int block_count(NodeRef t);

// Degree of a PaRT: #blocks - #vertices.
int part_degree(NodeRef t);

// Differential of a partitioned rooted tree: signed sum of block merges and
// in-block vertex splits; every output term has degree one less.
std::vector<std::pair<NodeRef, int>> d_e(NodeRef t);

// The block trees "tilde tau^i" of a PaPT: per block, the planar tree whose
// leaves attached to other blocks or to black leaves become 0-corollas.
std::vector<NodeRef> papt_block_trees(NodeRef t);

// The planar tree underlying a line rooted tree: everything above the line is
// removed, type I vertices become leaves, type II vertices become 0-corollas
// and type III vertices are erased.
NodeRef lrt_bar(NodeRef t);

int lrt_above_count(NodeRef t);

}  // namespace lieforge::trees
