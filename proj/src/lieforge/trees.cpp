#include "trees.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace lieforge::trees {

namespace {

std::string encode_node(const Node& n) {
    if (n.leaf) {
        switch (n.color) {
            case LeafColor::White: return "Lw";
            case LeafColor::Black: return "Lb";
            default: break;
        }
        if (n.label == 0) return "L";
        return "L" + std::to_string(n.label);
    }
    std::string s = "(c" + std::to_string(n.kids.size());
    if (n.weight > 0) s += "^" + std::to_string(n.weight);
    if (n.cut) s += "@";
    switch (n.mark) {
        case Mark::Below: s += "!B"; break;
        case Mark::LineI: s += "!I"; break;
        case Mark::LineII: s += "!II"; break;
        case Mark::LineIII: s += "!III"; break;
        case Mark::Above: s += "!A"; break;
        default: break;
    }
    for (NodeRef k : n.kids) {
        s += ' ';
        s += k->enc;
    }
    s += ')';
    return s;
}

}  // namespace

Interner& Interner::instance() {
    static Interner g;
    return g;
}

NodeRef Interner::intern(Node&& n) {
    n.enc = encode_node(n);
    std::lock_guard<std::mutex> lock(mu_);
    auto it = table_.find(n.enc);
    if (it != table_.end()) return it->second;
    Node* owned = new Node(std::move(n));
    table_.emplace(owned->enc, owned);
    return owned;
}

NodeRef Interner::leaf(int32_t label, LeafColor color) {
    Node n;
    n.leaf = true;
    n.label = label;
    n.color = color;
    n.leaf_count = 1;
    n.vertex_count = 0;
    return intern(std::move(n));
}

NodeRef Interner::vertex(std::vector<NodeRef> kids, bool cut, int32_t weight, Mark mark) {
    Node n;
    n.leaf = false;
    n.cut = cut;
    n.weight = weight;
    n.mark = mark;
    n.leaf_count = 0;
    n.vertex_count = 1;
    for (NodeRef k : kids) {
        n.leaf_count += k->leaf_count;
        n.vertex_count += k->vertex_count;
    }
    n.kids = std::move(kids);
    return intern(std::move(n));
}

NodeRef leaf(int32_t label, LeafColor color) { return Interner::instance().leaf(label, color); }

NodeRef planar_vertex(std::vector<NodeRef> kids, bool cut, int32_t weight, Mark mark) {
    return Interner::instance().vertex(std::move(kids), cut, weight, mark);
}

NodeRef vertex(std::vector<NodeRef> kids, bool cut, int32_t weight, Mark mark) {
    std::sort(kids.begin(), kids.end(),
              [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    return Interner::instance().vertex(std::move(kids), cut, weight, mark);
}

// ---- parsing --------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && s[pos] == ' ') ++pos;
    }

    [[noreturn]] void fail(const std::string& why) {
        throw std::runtime_error("tree parse error at offset " + std::to_string(pos) + ": " + why);
    }

    NodeRef term() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end");
        if (s[pos] == 'L') {
            ++pos;
            if (pos < s.size() && s[pos] == 'w') { ++pos; return leaf(0, LeafColor::White); }
            if (pos < s.size() && s[pos] == 'b') { ++pos; return leaf(0, LeafColor::Black); }
            int32_t label = 0;
            while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
                label = label * 10 + (s[pos++] - '0');
            return leaf(label);
        }
        if (s[pos] != '(') fail("expected '(' or leaf");
        ++pos;
        if (pos >= s.size() || s[pos] != 'c') fail("expected corolla head");
        ++pos;
        int arity = 0;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
            arity = arity * 10 + (s[pos++] - '0');
        int32_t weight = 0;
        bool cut = false;
        Mark mark = Mark::None;
        while (pos < s.size() && (s[pos] == '^' || s[pos] == '@' || s[pos] == '!')) {
            if (s[pos] == '^') {
                ++pos;
                while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos])))
                    weight = weight * 10 + (s[pos++] - '0');
            } else if (s[pos] == '@') {
                cut = true;
                ++pos;
            } else {
                ++pos;
                size_t n = 0;
                while (pos + n < s.size() && s[pos + n] == 'I') ++n;
                if (n >= 1 && n <= 3) {
                    mark = n == 1 ? Mark::LineI : n == 2 ? Mark::LineII : Mark::LineIII;
                    pos += n;
                } else if (pos < s.size() && s[pos] == 'A') {
                    mark = Mark::Above;
                    ++pos;
                } else if (pos < s.size() && s[pos] == 'B') {
                    mark = Mark::Below;
                    ++pos;
                } else {
                    fail("bad mark");
                }
            }
        }
        std::vector<NodeRef> kids;
        for (int i = 0; i < arity; ++i) kids.push_back(term());
        skip_ws();
        if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
        ++pos;
        return planar_vertex(std::move(kids), cut, weight, mark);
    }
};

}  // namespace

NodeRef parse(const std::string& text) {
    Parser p{text};
    NodeRef t = p.term();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return t;
}

// ---- enumeration ----------------------------------------------------------

namespace {

// All partitions of `items` into at least `min_blocks` non-empty blocks.
void set_partitions(const std::vector<int>& items, size_t min_blocks,
                    const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
    std::vector<std::vector<int>> blocks;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == items.size()) {
            if (blocks.size() >= min_blocks) emit(blocks);
            return;
        }
        for (auto& b : blocks) {
            b.push_back(items[i]);
            rec(i + 1);
            b.pop_back();
        }
        blocks.push_back({items[i]});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
}

// Reduced rooted trees on an explicit leaf-label set.
std::vector<NodeRef> rooted_on(const std::vector<int>& labels, int max_vertices) {
    if (labels.size() == 1) return {leaf(labels[0])};
    if (max_vertices == 0) return {};
    std::vector<NodeRef> out;
    set_partitions(labels, 2, [&](const std::vector<std::vector<int>>& blocks) {
        // Each block becomes one child of the root.
        std::vector<std::vector<NodeRef>> choices;
        for (auto& b : blocks)
            choices.push_back(rooted_on(b, max_vertices < 0 ? -1 : max_vertices - 1));
        std::vector<NodeRef> pick(blocks.size());
        std::function<void(size_t, int)> rec = [&](size_t i, int used) {
            if (max_vertices >= 0 && used > max_vertices - 1) return;
            if (i == blocks.size()) {
                out.push_back(vertex(pick));
                return;
            }
            for (NodeRef c : choices[i]) {
                pick[i] = c;
                rec(i + 1, used + c->vertex_count);
            }
        };
        rec(0, 0);
    });
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<NodeRef> enumerate_rooted_trees(int m, int max_vertices) {
    if (m < 1) throw std::invalid_argument("rooted trees need at least one leaf");
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = i + 1;
    return rooted_on(labels, max_vertices);
}

std::vector<NodeRef> enumerate_planar_trees(int leaves, int vertices) {
    if (leaves < 0 || vertices < 0) throw std::invalid_argument("negative size");
    if (vertices == 0) return leaves == 1 ? std::vector<NodeRef>{leaf()} : std::vector<NodeRef>{};
    std::vector<NodeRef> out;
    // Root vertex plus an ordered forest of children holding (leaves, vertices-1).
    std::vector<NodeRef> kids;
    std::function<void(int, int)> rec = [&](int l, int v) {
        if (l == 0 && v == 0) {
            out.push_back(planar_vertex(kids));
            return;
        }
        for (int cl = 0; cl <= l; ++cl)
            for (int cv = 0; cv <= v; ++cv) {
                if (cl == 0 && cv == 0) continue;
                for (NodeRef c : enumerate_planar_trees(cl, cv)) {
                    kids.push_back(c);
                    rec(l - cl, v - cv);
                    kids.pop_back();
                }
            }
    };
    rec(leaves, vertices - 1);
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<NodeRef> enumerate_pt0(int k) {
    if (k < 1) throw std::invalid_argument("PT_0 requires at least one vertex");
    return enumerate_planar_trees(0, k);
}

namespace {

// All trees obtained from `t` by freely assigning block-start bits to the
// non-root vertices (the root always opens a block).
void cut_assignments(NodeRef t, bool is_root, const std::function<void(NodeRef)>& emit) {
    if (t->is_leaf()) {
        emit(t);
        return;
    }
    std::vector<std::vector<NodeRef>> kid_variants(t->kids.size());
    for (size_t i = 0; i < t->kids.size(); ++i)
        cut_assignments(t->kids[i], false, [&](NodeRef v) { kid_variants[i].push_back(v); });
    std::vector<NodeRef> pick(t->kids.size());
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == t->kids.size()) {
            emit(vertex(pick, true));
            if (!is_root) emit(vertex(pick, false));
            return;
        }
        for (NodeRef v : kid_variants[i]) {
            pick[i] = v;
            rec(i + 1);
        }
    };
    rec(0);
}

}  // namespace

std::vector<NodeRef> enumerate_part(int m, int max_vertices, bool use_degree_filter,
                                    int degree_filter) {
    std::vector<NodeRef> out;
    for (NodeRef t : enumerate_rooted_trees(m, max_vertices))
        cut_assignments(t, true, [&](NodeRef v) {
            if (!use_degree_filter || part_degree(v) == degree_filter) out.push_back(v);
        });
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// PaPT sub-trees with exactly v vertices; every vertex has arity >= 1 and
// leaves carry a color.
std::vector<NodeRef> papt_exact(int v, bool is_root) {
    if (v == 0)
        return {leaf(0, LeafColor::White), leaf(0, LeafColor::Black)};
    std::vector<NodeRef> out;
    std::vector<NodeRef> kids;
    std::function<void(int)> rec = [&](int budget) {
        if (!kids.empty() && budget == 0) {
            out.push_back(planar_vertex(kids, true));
            if (!is_root) out.push_back(planar_vertex(kids, false));
            return;
        }
        for (int cv = 0; cv <= budget; ++cv) {
            int spent = cv;
            if (!kids.empty() && spent == 0 && budget != 0) {
                // still fine: leaves spend no vertices
            }
            for (NodeRef c : papt_exact(cv, false)) {
                kids.push_back(c);
                rec(budget - cv);
                kids.pop_back();
            }
        }
    };
    rec(v - 1);
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<NodeRef> enumerate_papt(int max_vertices) {
    std::vector<NodeRef> out;
    for (int v = 1; v <= max_vertices; ++v)
        for (NodeRef t : papt_exact(v, true)) out.push_back(t);
    return out;
}

std::vector<NodeRef> enumerate_wpt(int total_weight, int max_leaves) {
    if (total_weight == 0)
        return max_leaves >= 1 ? std::vector<NodeRef>{leaf()} : std::vector<NodeRef>{};
    std::vector<NodeRef> out;
    // Root of weight w >= 1, ordered children splitting the remaining weight
    // and the leaf budget.
    for (int w = 1; w <= total_weight; ++w) {
        std::vector<NodeRef> kids;
        std::function<void(int, int)> rec = [&](int rem_weight, int rem_leaves) {
            if (rem_weight == 0) out.push_back(planar_vertex(kids, false, w));
            for (int cw = 0; cw <= rem_weight; ++cw) {
                if (cw == 0 && rem_leaves < 1) continue;
                for (NodeRef c : enumerate_wpt(cw, rem_leaves)) {
                    if (c->leaf_count > rem_leaves) continue;
                    kids.push_back(c);
                    rec(rem_weight - cw, rem_leaves - c->leaf_count);
                    kids.pop_back();
                }
            }
        };
        rec(total_weight - w, max_leaves);
    }
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

// Unlabeled reduced tree shapes with a given leaf count.
std::vector<NodeRef> reduced_shapes(int leaves, int max_vertices) {
    if (leaves == 1) return {leaf()};
    if (max_vertices <= 0) return {};
    std::vector<NodeRef> out;
    // Root with k >= 2 children; children sizes form a composition of `leaves`.
    std::vector<NodeRef> kids;
    std::function<void(int, int)> rec = [&](int rem, int vbudget) {
        if (rem == 0) {
            if (kids.size() >= 2) out.push_back(vertex(kids));
            return;
        }
        for (int cl = 1; cl <= rem; ++cl)
            for (NodeRef c : reduced_shapes(cl, vbudget)) {
                kids.push_back(c);
                rec(rem - cl, vbudget - c->vertex_count);
                kids.pop_back();
            }
    };
    rec(leaves, max_vertices - 1);
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

constexpr int32_t kSlotBase = 1000;

// Inner vertices of a block composite (the block wrapper nodes do not count).
int paprt_true_vertices(NodeRef block) {
    int n = block->kids[0]->vertex_count;
    for (size_t i = 1; i < block->kids.size(); ++i) n += paprt_true_vertices(block->kids[i]);
    return n;
}

// Distinct canonical labelings of a shape's leaves: j leaves carry the slot
// markers 1001..1000+j (each once), the rest stay anonymous.
std::vector<NodeRef> slot_labelings(NodeRef shape, int j) {
    int m = shape->leaf_count;
    std::vector<int32_t> labels(m, 0);
    for (int i = 0; i < j; ++i) labels[m - j + i] = kSlotBase + 1 + i;
    std::sort(labels.begin(), labels.end());
    std::set<NodeRef> seen;
    do {
        int idx = 0;
        std::function<NodeRef(NodeRef)> build = [&](NodeRef v) -> NodeRef {
            if (v->is_leaf()) return leaf(labels[idx++]);
            std::vector<NodeRef> kids;
            for (NodeRef k : v->kids) kids.push_back(build(k));
            return vertex(kids);
        };
        seen.insert(build(shape));
    } while (std::next_permutation(labels.begin(), labels.end()));
    return {seen.begin(), seen.end()};
}

int paprt_true_leaves(NodeRef block) {
    int slots = static_cast<int>(block->kids.size()) - 1;
    int n = block->kids[0]->leaf_count - slots;
    for (size_t i = 1; i < block->kids.size(); ++i) n += paprt_true_leaves(block->kids[i]);
    return n;
}

// Planarly partitioned rooted trees, represented as a planar tree of blocks:
// each block node has the block's inner tree first (slot markers point at the
// following child blocks, in planar order) and the child blocks after it.
std::vector<NodeRef> paprt_blocks(int max_vertices, int max_leaves) {
    std::vector<NodeRef> out;
    if (max_vertices < 1) return out;
    out.push_back(planar_vertex({planar_vertex({})}, true));  // 0-corolla block
    for (int m = 2; m <= max_leaves + max_vertices; ++m)
        for (NodeRef shape : reduced_shapes(m, max_vertices))
            for (int j = 0; j <= std::min(m, max_vertices - shape->vertex_count); ++j) {
                if (m - j > max_leaves) continue;
                for (NodeRef inner : slot_labelings(shape, j)) {
                    std::vector<NodeRef> kids{inner};
                    std::function<void(int, int, int)> rec = [&](int slot, int vbudget,
                                                                 int lbudget) {
                        if (slot == j) {
                            out.push_back(planar_vertex(kids, true));
                            return;
                        }
                        for (NodeRef child : paprt_blocks(vbudget, lbudget)) {
                            int used_v = paprt_true_vertices(child);
                            int used_l = paprt_true_leaves(child);
                            if (used_v > vbudget || used_l > lbudget) continue;
                            kids.push_back(child);
                            rec(slot + 1, vbudget - used_v, lbudget - used_l);
                            kids.pop_back();
                        }
                    };
                    rec(0, max_vertices - shape->vertex_count, max_leaves - (m - j));
                }
            }
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<NodeRef> enumerate_paprt(int max_vertices, int max_leaves) {
    return paprt_blocks(max_vertices, max_leaves);
}

// ---- line rooted trees -----------------------------------------------------

namespace {

std::vector<NodeRef> leaves_of(const std::vector<int>& labels) {
    std::vector<NodeRef> ls;
    for (int l : labels) ls.push_back(leaf(l));
    return ls;
}

// Above-the-line sub-trees: every vertex has arity >= 2, marked Above.
std::vector<NodeRef> lrt_above_on(const std::vector<int>& labels, int max_vertices) {
    if (labels.size() == 1) return {leaf(labels[0])};
    if (max_vertices <= 0) return {};
    std::vector<NodeRef> out;
    set_partitions(labels, 2, [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<std::vector<NodeRef>> choices;
        for (auto& b : blocks) choices.push_back(lrt_above_on(b, max_vertices - 1));
        std::vector<NodeRef> pick(blocks.size());
        std::function<void(size_t, int)> rec = [&](size_t i, int used) {
            if (used > max_vertices - 1) return;
            if (i == blocks.size()) {
                out.push_back(vertex(pick, false, 0, Mark::Above));
                return;
            }
            for (NodeRef c : choices[i]) {
                pick[i] = c;
                rec(i + 1, used + c->vertex_count);
            }
        };
        rec(0, 0);
    });
    return out;
}

// Line vertices on a leaf set. allow_iii enables the type III variant used
// under below-line parents.
std::vector<NodeRef> lrt_line_on(const std::vector<int>& labels, int max_vertices,
                                 bool allow_iii) {
    std::vector<NodeRef> out;
    if (max_vertices < 1) return out;
    if (!labels.empty()) {
        out.push_back(vertex(leaves_of(labels), false, 0, Mark::LineI));
        if (allow_iii) out.push_back(vertex(leaves_of(labels), false, 0, Mark::LineIII));
    }
    if (!labels.empty())
        out.push_back(vertex(leaves_of(labels), false, 0, Mark::LineII));
    // Type II with one sub-tree above the line: split off at least two labels.
    std::function<void(size_t, std::vector<int>&, std::vector<int>&)> split =
        [&](size_t i, std::vector<int>& here, std::vector<int>& up) {
            if (i == labels.size()) {
                if (up.size() >= 2) {
                    for (NodeRef a : lrt_above_on(up, max_vertices - 1)) {
                        std::vector<NodeRef> kids = leaves_of(here);
                        kids.push_back(a);
                        out.push_back(vertex(kids, false, 0, Mark::LineII));
                    }
                }
                return;
            }
            here.push_back(labels[i]);
            split(i + 1, here, up);
            here.pop_back();
            up.push_back(labels[i]);
            split(i + 1, here, up);
            up.pop_back();
        };
    std::vector<int> here, up;
    split(0, here, up);
    return out;
}

std::vector<NodeRef> lrt_below_on(const std::vector<int>& labels, int max_vertices);

// Any LRT sub-tree rooted at a child of a below-line vertex.
// kind 0 = below-line sub-tree, 1 = line vertex (non-III), 2 = line III vertex.
std::vector<std::pair<NodeRef, int>> lrt_child_on(const std::vector<int>& labels,
                                                  int max_vertices) {
    std::vector<std::pair<NodeRef, int>> out;
    for (NodeRef t : lrt_below_on(labels, max_vertices)) out.emplace_back(t, 0);
    for (NodeRef t : lrt_line_on(labels, max_vertices, false)) out.emplace_back(t, 1);
    if (!labels.empty())
        out.emplace_back(vertex(leaves_of(labels), false, 0, Mark::LineIII), 2);
    return out;
}

std::vector<NodeRef> lrt_below_on(const std::vector<int>& labels, int max_vertices) {
    std::vector<NodeRef> out;
    if (max_vertices < 1 || labels.size() < 1) return out;
    set_partitions(labels, 2, [&](const std::vector<std::vector<int>>& blocks) {
        std::vector<std::vector<std::pair<NodeRef, int>>> choices;
        for (auto& b : blocks) choices.push_back(lrt_child_on(b, max_vertices - 1));
        std::vector<NodeRef> pick(blocks.size());
        std::vector<int> kind(blocks.size());
        std::function<void(size_t, int)> rec = [&](size_t i, int used) {
            if (used > max_vertices - 1) return;
            if (i == blocks.size()) {
                int lines = 0, threes = 0;
                for (size_t j = 0; j < blocks.size(); ++j) {
                    if (kind[j] != 0) ++lines;
                    if (kind[j] == 2) ++threes;
                }
                // Exactly one III among line children whenever there are any.
                if (lines > 0 ? threes == 1 : threes == 0)
                    out.push_back(vertex(pick, false, 0, Mark::Below));
                return;
            }
            for (auto& [c, k] : choices[i]) {
                pick[i] = c;
                kind[i] = k;
                rec(i + 1, used + c->vertex_count);
            }
        };
        rec(0, 0);
    });
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

std::vector<NodeRef> enumerate_lrt(int m, int max_vertices) {
    if (m < 1) throw std::invalid_argument("line rooted trees need at least one leaf");
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i) labels[i] = i + 1;
    std::vector<NodeRef> out = lrt_below_on(labels, max_vertices);
    for (NodeRef t : lrt_line_on(labels, max_vertices, false)) out.push_back(t);
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- coefficients ----------------------------------------------------------

Rat coeff_C(NodeRef t) {
    if (t->is_leaf()) return 1;
    Rat prod = factorial(static_cast<unsigned>(t->arity()));
    prod *= t->vertex_count;
    for (NodeRef k : t->kids) prod *= coeff_C(k);
    return prod;
}

Rat coeff_A(NodeRef t) {
    if (t->is_leaf()) return 1;
    Rat prod = factorial(static_cast<unsigned>(t->arity()));
    for (NodeRef k : t->kids) prod *= coeff_A(k);
    return prod;
}

namespace {

int total_weight(NodeRef t) {
    if (t->is_leaf()) return 0;
    int w = t->weight;
    for (NodeRef k : t->kids) w += total_weight(k);
    return w;
}

}  // namespace

Rat coeff_W(NodeRef t) {
    if (t->is_leaf()) return 1;
    Rat prod = total_weight(t);
    for (NodeRef k : t->kids) prod *= coeff_W(k);
    return prod;
}

Rat automorphism_count(NodeRef t) {
    if (t->is_leaf()) return 1;
    Rat count = 1;
    size_t i = 0;
    while (i < t->kids.size()) {
        size_t j = i;
        while (j < t->kids.size() && t->kids[j] == t->kids[i]) ++j;
        count *= factorial(static_cast<unsigned>(j - i));
        i = j;
    }
    for (NodeRef k : t->kids) count *= automorphism_count(k);
    return count;
}

int block_count(NodeRef t) {
    if (t->is_leaf()) return 0;
    int n = 1;  // the root opens a block regardless of its bit
    std::function<void(NodeRef)> rec = [&](NodeRef v) {
        for (NodeRef k : v->kids)
            if (!k->is_leaf()) {
                if (k->cut) ++n;
                rec(k);
            }
    };
    rec(t);
    return n;
}

int part_degree(NodeRef t) { return block_count(t) - t->vertex_count; }

// ---- PaPT block trees ------------------------------------------------------

namespace {

// Rebuilds the planar tree of the block containing `v`, replacing leaves that
// touch a black leaf or another block by arity-0 vertices.
NodeRef papt_block_tree_at(NodeRef v) {
    std::vector<NodeRef> kids;
    for (NodeRef k : v->kids) {
        if (k->is_leaf()) {
            if (k->color == LeafColor::Black)
                kids.push_back(planar_vertex({}));
            else
                kids.push_back(leaf());
        } else if (k->cut) {
            kids.push_back(planar_vertex({}));
        } else {
            kids.push_back(papt_block_tree_at(k));
        }
    }
    return planar_vertex(kids);
}

}  // namespace

std::vector<NodeRef> papt_block_trees(NodeRef t) {
    std::vector<NodeRef> out;
    std::function<void(NodeRef)> rec = [&](NodeRef v) {
        if (v->is_leaf()) return;
        out.push_back(papt_block_tree_at(v));
        std::function<void(NodeRef)> descend = [&](NodeRef w) {
            for (NodeRef k : w->kids) {
                if (k->is_leaf()) continue;
                if (k->cut)
                    rec(k);
                else
                    descend(k);
            }
        };
        descend(v);
    };
    rec(t);
    return out;
}

Rat coeff_D(NodeRef t) {
    if (t->is_leaf()) throw std::invalid_argument("D is undefined on the bare leaf symbols");
    std::vector<NodeRef> blocks = papt_block_trees(t);
    Rat prod = blocks.size() % 2 == 0 ? 1 : -1;
    for (NodeRef b : blocks) prod *= coeff_C(b);
    return prod;
}

// ---- d_e -------------------------------------------------------------------

namespace {

// Rebuild `root` with vertex `target` replaced by `repl` (nullptr erases it).
NodeRef replace_vertex(NodeRef root, NodeRef target, NodeRef repl) {
    if (root == target) return repl;
    if (root->is_leaf()) return root;
    std::vector<NodeRef> kids;
    bool changed = false;
    for (NodeRef k : root->kids) {
        NodeRef nk = replace_vertex(k, target, repl);
        if (nk != k) changed = true;
        kids.push_back(nk);
    }
    if (!changed) return root;
    return vertex(kids, root->cut, root->weight, root->mark);
}

// Counts the odd symbols (one per vertex, plus one per block start) that come
// strictly before `target` in depth-first order. `before_s` measures up to the
// block symbol, otherwise up to the vertex symbol itself.
bool symbols_before(NodeRef v, NodeRef target, bool before_s, bool is_root, int& acc) {
    if (v->is_leaf()) return false;
    bool opens = v->cut || is_root;
    if (v == target) {
        if (!before_s && opens) ++acc;
        return true;
    }
    acc += opens ? 2 : 1;
    for (NodeRef k : v->kids)
        if (symbols_before(k, target, before_s, false, acc)) return true;
    return false;
}

int sign_at(NodeRef root, NodeRef target, bool before_s) {
    int acc = 0;
    bool found = symbols_before(root, target, before_s, true, acc);
    assert(found);
    (void)found;
    return acc % 2 == 0 ? 1 : -1;
}

}  // namespace

std::vector<std::pair<NodeRef, int>> d_e(NodeRef t) {
    std::map<NodeRef, int> acc;
    if (t->is_leaf()) return {};

    std::vector<NodeRef> verts;
    std::function<void(NodeRef)> collect = [&](NodeRef v) {
        if (v->is_leaf()) return;
        verts.push_back(v);
        for (NodeRef k : v->kids) collect(k);
    };
    collect(t);

    for (NodeRef v : verts) {
        // Merge: clear the block bit of a non-root block opener.
        if (v != t && v->cut) {
            NodeRef merged = vertex(v->kids, false, v->weight, v->mark);
            acc[replace_vertex(t, v, merged)] -= sign_at(t, v, true);
        }
        // Split: extract a proper sub-multiset of >= 2 children into a new
        // vertex living in the same block.
        int a = v->arity();
        if (a >= 3) {
            int total = 1 << a;
            std::set<NodeRef> seen;
            for (int massk = 0; massk < total; ++massk) {
                int bits = __builtin_popcount(massk);
                if (bits < 2 || bits > a - 1) continue;
                std::vector<NodeRef> inner, outer;
                for (int i = 0; i < a; ++i)
                    (massk >> i & 1 ? inner : outer).push_back(v->kids[i]);
                NodeRef w = vertex(inner, false);
                outer.push_back(w);
                NodeRef split = vertex(outer, v->cut, v->weight, v->mark);
                if (!seen.insert(split).second) continue;
                acc[replace_vertex(t, v, split)] += sign_at(t, v, false);
            }
        }
    }

    std::vector<std::pair<NodeRef, int>> out;
    for (auto& [n, c] : acc)
        if (c != 0) out.emplace_back(n, c);
    return out;
}

// ---- line rooted tree helpers ----------------------------------------------

namespace {

// nullptr means "erase this child".
NodeRef lrt_bar_rec(NodeRef v) {
    switch (v->mark) {
        case Mark::LineI: return leaf();
        case Mark::LineII: return planar_vertex({});
        case Mark::LineIII: return nullptr;
        case Mark::Below: {
            std::vector<NodeRef> kids;
            for (NodeRef k : v->kids) {
                NodeRef b = lrt_bar_rec(k);
                if (b) kids.push_back(b);
            }
            return vertex(kids);
        }
        default: return nullptr;  // leaves and Above sub-trees disappear
    }
}

}  // namespace

NodeRef lrt_bar(NodeRef t) {
    NodeRef b = lrt_bar_rec(t);
    if (!b) throw std::invalid_argument("not a line rooted tree");
    return b;
}

int lrt_above_count(NodeRef t) {
    if (t->is_leaf()) return 0;
    int n = t->mark == Mark::Above ? 1 : 0;
    for (NodeRef k : t->kids) n += lrt_above_count(k);
    return n;
}

}  // namespace lieforge::trees
