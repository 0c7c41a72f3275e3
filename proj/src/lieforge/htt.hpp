#pragma once

#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "forms.hpp"
#include "rational.hpp"
#include "trees.hpp"

namespace lieforge::htt {

// Which coefficient the dualization of the transferred structure attaches to
// a tree term of the universal Maurer-Cartan differential. The transpose
// convention multiplies by lambda; the reciprocal one divides by it.
enum class DualConvention { Transpose, Reciprocal };

// mu_tau on C_n: leaves are included into Omega_n, every internal edge is
// composed with the Dupont homotopy, vertices multiply, the root projects
// back. Inputs are matched to the leaves of `tree` in canonical order.
forms::ChainElement mu_tau(int n, trees::NodeRef tree,
                           const std::vector<forms::ChainElement>& inputs);

// A reduced rooted tree whose leaves carry non-empty face masks of [n].
// labeled_mu evaluates mu_tau on the corresponding Whitney generators, with a
// process-wide memo keyed on (n, tree); the cache can be persisted.
class ConstantsCache {
  public:
    static ConstantsCache& instance();

    forms::ChainElement labeled_mu(int n, trees::NodeRef labeled_tree);

    // Structure constant lambda^{tree}_J.
    Rat constant(int n, trees::NodeRef labeled_tree, uint32_t j_mask);

    size_t size() const;
    void save(const std::string& path) const;
    // Returns false when the file is missing or carries a different version.
    bool load(const std::string& path);

  private:
    mutable std::mutex mu_;
    std::map<std::pair<int, trees::NodeRef>, forms::ChainElement> memo_;
    std::map<std::pair<int, trees::NodeRef>, forms::Form> sub_memo_;

    forms::Form eval_subtree(int n, trees::NodeRef t);
};

// All distinct canonical mask-labeled reduced trees with m leaves over the
// non-empty subsets of [n].
std::vector<trees::NodeRef> enumerate_labeled_trees(int n, int m);

struct CoproductTerm {
    trees::NodeRef labeled_tree;  // leaves carry face masks
    Rat coefficient;
};

// Dual-basis expansion of the transferred coalgebra on a_J in arity m.
std::vector<CoproductTerm> coalgebra_coproduct(int n, uint32_t j_mask, int m,
                                               DualConvention conv = DualConvention::Transpose);

// Coefficient attached to one labeled tree in the expansion of d(a_J):
// conv(lambda) * |Aut(shape)| / (|Aut(labeled)| * m!).
Rat tree_coefficient(int n, trees::NodeRef labeled_tree, uint32_t j_mask, DualConvention conv);

}  // namespace lieforge::htt
