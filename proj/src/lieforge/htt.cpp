#include "htt.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <stdexcept>

#include "json.hpp"

namespace lieforge::htt {

using forms::ChainElement;
using forms::Form;
using trees::NodeRef;

namespace {

Form eval_with_inputs(int n, NodeRef t, const std::vector<ChainElement>& inputs, int& slot,
                      bool root) {
    if (t->is_leaf()) {
        ++slot;
        return forms::dupont_i(inputs[slot - 1]);
    }
    Form prod = Form::unit(n);
    for (NodeRef k : t->kids) prod = prod * eval_with_inputs(n, k, inputs, slot, false);
    return root ? prod : forms::dupont_h(prod);
}

}  // namespace

ChainElement mu_tau(int n, NodeRef tree, const std::vector<ChainElement>& inputs) {
    if (tree->is_leaf()) {
        if (inputs.size() != 1) throw std::invalid_argument("arity mismatch");
        return inputs[0];
    }
    if (static_cast<int>(inputs.size()) != tree->leaf_count)
        throw std::invalid_argument("arity mismatch");
    int slot = 0;
    return forms::dupont_p(eval_with_inputs(n, tree, inputs, slot, true));
}

ConstantsCache& ConstantsCache::instance() {
    static ConstantsCache g;
    return g;
}

Form ConstantsCache::eval_subtree(int n, NodeRef t) {
    // value of h(product of children values); leaves carry face masks
    if (t->is_leaf()) return forms::whitney_form(static_cast<uint32_t>(t->label), n);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = sub_memo_.find({n, t});
        if (it != sub_memo_.end()) return it->second;
    }
    Form prod = Form::unit(n);
    for (NodeRef k : t->kids) {
        prod = prod * eval_subtree(n, k);
        if (prod.is_zero()) break;
    }
    Form value = prod.is_zero() ? prod : forms::dupont_h(prod);
    std::lock_guard<std::mutex> lock(mu_);
    sub_memo_.emplace(std::pair{n, t}, value);
    return value;
}

ChainElement ConstantsCache::labeled_mu(int n, NodeRef labeled_tree) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find({n, labeled_tree});
        if (it != memo_.end()) return it->second;
    }
    ChainElement result(n);
    if (labeled_tree->is_leaf()) {
        result.add(static_cast<uint32_t>(labeled_tree->label), 1);
    } else {
        Form prod = Form::unit(n);
        for (NodeRef k : labeled_tree->kids) {
            prod = prod * eval_subtree(n, k);
            if (prod.is_zero()) break;
        }
        result = forms::dupont_p(prod);
    }
    std::lock_guard<std::mutex> lock(mu_);
    memo_.emplace(std::pair{n, labeled_tree}, result);
    return result;
}

Rat ConstantsCache::constant(int n, NodeRef labeled_tree, uint32_t j_mask) {
    return labeled_mu(n, labeled_tree).coeff(j_mask);
}

size_t ConstantsCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return memo_.size();
}

namespace {
constexpr const char* kCacheVersion = "lieforge-constants-1";
}

void ConstantsCache::save(const std::string& path) const {
    nlohmann::json j;
    j["version"] = kCacheVersion;
    auto& entries = j["entries"] = nlohmann::json::array();
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [key, value] : memo_) {
        nlohmann::json e;
        e["n"] = key.first;
        e["tree"] = key.second->enc;
        auto& cs = e["mu"] = nlohmann::json::object();
        for (auto& [mask, c] : value.coeffs()) cs[forms::mask_name(mask)] = c.get_str();
        entries.push_back(std::move(e));
    }
    std::ofstream out(path);
    out << j.dump();
}

bool ConstantsCache::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) return false;
    nlohmann::json j;
    try {
        in >> j;
    } catch (...) {
        return false;
    }
    if (!j.contains("version") || j["version"] != kCacheVersion) return false;
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& e : j["entries"]) {
        int n = e["n"].get<int>();
        NodeRef t = trees::parse(e["tree"].get<std::string>());
        ChainElement value(n);
        for (auto& [name, c] : e["mu"].items()) {
            uint32_t mask = 0;
            for (char ch : name) mask |= 1u << (ch - '0');
            value.add(mask, rat_from_string(c.get<std::string>()));
        }
        memo_.insert_or_assign({n, t}, value);
    }
    return true;
}

// ---- enumeration of labeled trees -------------------------------------------

namespace {

// Distinct canonical trees whose leaves carry the given label multiset.
std::vector<NodeRef> trees_on_labels(const std::vector<int>& labels) {
    if (labels.size() == 1) return {trees::leaf(labels[0])};
    std::set<NodeRef> out;
    std::vector<int> idx(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) idx[i] = static_cast<int>(i);
    std::vector<std::vector<int>> blocks;
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == labels.size()) {
            if (blocks.size() < 2) return;
            std::vector<std::vector<NodeRef>> choices;
            for (auto& b : blocks) {
                std::vector<int> sub;
                for (int p : b) sub.push_back(labels[p]);
                choices.push_back(trees_on_labels(sub));
            }
            std::vector<NodeRef> pick(blocks.size());
            std::function<void(size_t)> assemble = [&](size_t bi) {
                if (bi == blocks.size()) {
                    out.insert(trees::vertex(pick));
                    return;
                }
                for (NodeRef c : choices[bi]) {
                    pick[bi] = c;
                    assemble(bi + 1);
                }
            };
            assemble(0);
            return;
        }
        for (auto& b : blocks) {
            b.push_back(idx[i]);
            rec(i + 1);
            b.pop_back();
        }
        blocks.push_back({idx[i]});
        rec(i + 1);
        blocks.pop_back();
    };
    rec(0);
    return {out.begin(), out.end()};
}

void label_multisets(int count, int lo, int hi, std::vector<int>& cur,
                     const std::function<void(const std::vector<int>&)>& emit) {
    if (count == 0) {
        emit(cur);
        return;
    }
    for (int v = lo; v <= hi; ++v) {
        cur.push_back(v);
        label_multisets(count - 1, v, hi, cur, emit);
        cur.pop_back();
    }
}

}  // namespace

std::vector<NodeRef> enumerate_labeled_trees(int n, int m) {
    std::vector<NodeRef> out;
    int top = (1 << (n + 1)) - 1;
    std::vector<int> cur;
    label_multisets(m, 1, top, cur, [&](const std::vector<int>& labels) {
        for (NodeRef t : trees_on_labels(labels)) out.push_back(t);
    });
    std::sort(out.begin(), out.end(), [](NodeRef a, NodeRef b) { return a->enc < b->enc; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rat tree_coefficient(int n, NodeRef labeled_tree, uint32_t j_mask, DualConvention conv) {
    Rat lambda = ConstantsCache::instance().constant(n, labeled_tree, j_mask);
    if (is_zero(lambda)) return 0;
    int m = labeled_tree->leaf_count;
    // Orbit size of the slot labelings producing this labeled tree.
    NodeRef shape = [&] {
        std::function<NodeRef(NodeRef)> strip = [&](NodeRef t) -> NodeRef {
            if (t->is_leaf()) return trees::leaf();
            std::vector<NodeRef> kids;
            for (NodeRef k : t->kids) kids.push_back(strip(k));
            return trees::vertex(kids);
        };
        return strip(labeled_tree);
    }();
    Rat orbit = trees::automorphism_count(shape) / trees::automorphism_count(labeled_tree);
    Rat base = conv == DualConvention::Transpose ? lambda : 1 / lambda;
    return base * orbit / factorial(static_cast<unsigned>(m));
}

std::vector<CoproductTerm> coalgebra_coproduct(int n, uint32_t j_mask, int m,
                                               DualConvention conv) {
    std::vector<CoproductTerm> out;
    for (NodeRef t : enumerate_labeled_trees(n, m)) {
        Rat c = tree_coefficient(n, t, j_mask, conv);
        if (!is_zero(c)) out.push_back({t, c});
    }
    return out;
}

}  // namespace lieforge::htt
