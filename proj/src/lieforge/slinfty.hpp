#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "htt.hpp"
#include "rational.hpp"
#include "trees.hpp"

namespace lieforge::slinfty {

struct Generator {
    std::string name;
    int degree = 0;
    int weight = 1;  // filtration weight, >= 1
};

class FreeAlgebra;

// Element of a weight-truncated free complete sLoo algebra: a finite sum of
// canonical rooted trees with leaves labeled by generators (leaf label i
// refers to generator i-1; the bare leaf is the generator itself).
class Element {
  public:
    Element() = default;
    explicit Element(const FreeAlgebra* alg) : alg_(alg) {}

    const FreeAlgebra* algebra() const { return alg_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<trees::NodeRef, Rat>& terms() const { return terms_; }

    void add_term(trees::NodeRef t, const Rat& c);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Rat& c) const;
    Element& operator+=(const Element& o);
    bool operator==(const Element& o) const { return terms_ == o.terms_; }

    // Parts of homogeneous degree / bounded weight.
    Element degree_part(int degree) const;
    Element weight_part(int weight) const;
    Element truncate(int max_weight) const;
    int min_weight() const;  // infinity -> large sentinel
    bool homogeneous(int& degree_out) const;

    std::string str() const;

  private:
    const FreeAlgebra* alg_ = nullptr;
    std::map<trees::NodeRef, Rat> terms_;
};

// Weight-truncated free complete sLoo algebra on named generators, with a
// square-zero differential table on the generators.
class FreeAlgebra {
  public:
    FreeAlgebra(std::vector<Generator> gens, int truncation);

    int truncation() const { return truncation_; }
    const std::vector<Generator>& generators() const { return gens_; }
    int generator_index(const std::string& name) const;

    Element zero() const { return Element(this); }
    Element gen(int idx) const;
    Element gen(const std::string& name) const;

    // Differential table; empty elements by default.
    void set_differential(int idx, Element value);
    const Element& table(int idx) const { return table_[idx]; }

    int term_degree(trees::NodeRef t) const;   // sum of leaf degrees - #vertices
    int term_weight(trees::NodeRef t) const;   // sum of leaf weights

    // Structure operations: graft onto an m-corolla, Koszul-canonicalized,
    // truncated by weight.
    Element ell(const std::vector<Element>& inputs) const;

    // The full differential (generator table + corolla splitting).
    Element d(const Element& x) const;

    Element curvature(const Element& x) const;

    // Substitution morphism: generator i maps to images[i] (degree-preserving).
    Element substitute(const Element& x, const std::vector<Element>& images,
                       const FreeAlgebra* target) const;

    // All canonical basis trees of weight <= truncation (optionally a single
    // degree), in deterministic order.
    std::vector<trees::NodeRef> basis(std::optional<int> degree = std::nullopt) const;

  private:
    std::vector<Generator> gens_;
    int truncation_;
    std::vector<Element> table_;

    Element d_term(trees::NodeRef t) const;
    friend class Element;
};

// The universal Maurer-Cartan algebra mc^n, truncated at weight N. Generators
// are a_I for non-empty I subset of [n], listed by ascending mask.
struct McAlgebra {
    std::shared_ptr<FreeAlgebra> alg;
    int n = 0;
    std::vector<uint32_t> masks;  // generator index -> face mask

    int index_of_mask(uint32_t mask) const;
};

McAlgebra mc_algebra(int n, int truncation,
                     htt::DualConvention conv = htt::DualConvention::Transpose);

// Cosimplicial structure map of mc^* induced by a monotone vertex map
// phi : [source.n] -> [target.n].
Element mc_cosimplicial(const McAlgebra& source, const McAlgebra& target,
                        const std::vector<int>& phi, const Element& x);

// d(a_01) of mc^1 evaluated through the partitioned-planar-tree series.
Element diffmc1_papt(const McAlgebra& mc1);

// Coefficients of the arity-two ladders of d(a_01) after killing every
// operation of arity >= 3: first the a_0-ladders, then the (a_1 - a_0) ones.
std::pair<std::vector<Rat>, std::vector<Rat>> diffmc1_ladder_coefficients(const McAlgebra& mc1,
                                                                          int max_power);

// ---- finite tabulated algebras ---------------------------------------------

using Vec = std::map<int, Rat>;  // sparse coordinates on the tabulated basis

struct BasisVector {
    std::string name;
    int degree = 0;
    int weight = 1;
};

// sLoo algebra with an explicit graded basis, tabulated operations and a
// declared filtration bound (F_{bound+1} = 0).
class Tabulated {
  public:
    Tabulated(std::vector<BasisVector> basis, int bound);

    int dim() const { return static_cast<int>(basis_.size()); }
    int bound() const { return bound_; }
    const std::vector<BasisVector>& basis() const { return basis_; }
    int degree(int i) const { return basis_[i].degree; }
    int weight(int i) const { return basis_[i].weight; }

    void set_ell(int m, const std::vector<int>& sorted_inputs, Vec value);
    void set_d(int i, Vec value);
    int max_arity() const;

    Vec d(const Vec& x) const;
    Vec ell(int m, const std::vector<Vec>& inputs) const;
    // ell_m on basis indices (unsorted; applies Koszul reordering).
    Vec ell_basis(int m, std::vector<int> idx) const;

    Vec zero() const { return {}; }
    Vec e(int i) const { return {{i, Rat(1)}}; }

    int vec_weight(const Vec& x) const;  // minimal weight, bound+1 if zero
    bool degree_homogeneous(const Vec& x, int& deg) const;
    Vec degree_part(const Vec& x, int deg) const;

    Vec curvature(const Vec& x) const;
    bool is_mc(const Vec& x) const { return curvature(x).empty(); }

    // Violations of the homotopy Jacobi relations up to max_arity, as
    // human-readable summaries; empty means the tables are consistent.
    std::vector<std::string> jacobi_violations(int max_m = -1) const;

    // The alpha-twisted algebra (same basis and bound).
    Tabulated twist(const Vec& alpha) const;

    std::string vec_str(const Vec& x) const;

  private:
    std::vector<BasisVector> basis_;
    int bound_;
    std::vector<std::map<std::vector<int>, Vec>> ells_;  // index: arity
    std::vector<Vec> d_;
};

void vec_add(Vec& x, const Vec& y, const Rat& c = 1);
Vec vec_scale(const Vec& x, const Rat& c);
bool vec_eq(const Vec& x, const Vec& y);

// Quotient presentation of a free truncated algebra on its tree basis.
struct TabulatedFree {
    Tabulated algebra;
    std::vector<trees::NodeRef> tree_of_index;
    std::map<trees::NodeRef, int> index_of_tree;
};

TabulatedFree tabulate(const FreeAlgebra& f);

Vec tabulate_element(const TabulatedFree& tf, const Element& x);

// Evaluation morphism out of a free algebra: generator i |-> images[i].
Vec evaluate(const Element& x, const Tabulated& target, const std::vector<Vec>& images);

// ---- homology ----------------------------------------------------------------

struct HomologyResult {
    int dimension = 0;
    std::vector<Vec> representatives;
    int chain_dim = 0, cycle_dim = 0, boundary_dim = 0;
};

HomologyResult homology(const Tabulated& a, int degree);

}  // namespace lieforge::slinfty
