#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rational.hpp"

namespace lieforge::forms {

// Monomial of Omega_n in canonical coordinates: t_0 and dt_0 are eliminated
// via t_0 = 1 - sum t_i, dt_0 = -sum dt_i. The dt factors are kept as a bit
// set read in ascending index order.
struct Mono {
    std::vector<uint8_t> t_exp;  // exponents of t_1..t_n
    uint32_t dt_mask = 0;        // bit (i-1) set <=> dt_i present

    bool operator<(const Mono& o) const {
        if (dt_mask != o.dt_mask) return dt_mask < o.dt_mask;
        return t_exp < o.t_exp;
    }
    bool operator==(const Mono& o) const {
        return dt_mask == o.dt_mask && t_exp == o.t_exp;
    }
};

// Element of Omega_n with exact rational coefficients.
class Form {
  public:
    explicit Form(int n = 0) : n_(n) {}

    static Form zero(int n) { return Form(n); }
    static Form unit(int n);
    static Form t(int n, int i);   // i in 0..n; i = 0 expands the relation
    static Form dt(int n, int i);  // likewise

    int simplex_dim() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Mono, Rat>& terms() const { return terms_; }

    // Homological degree (= -#dt factors); requires homogeneity.
    bool homogeneous(int& degree_out) const;

    void add_term(const Mono& m, const Rat& c);

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator-() const;
    Form operator*(const Form& o) const;
    Form operator*(const Rat& c) const;
    Form& operator+=(const Form& o);
    bool operator==(const Form& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    // de Rham differential, of homological degree -1.
    Form d() const;

    // Pullback along a monotone map phi: [m] -> [target n]; maps Omega_n to
    // Omega_m. phi is given by its values phi(0..m).
    Form pullback(const std::vector<int>& phi, int m) const;

    std::string str() const;
    static Form parse(int n, const std::string& text);

  private:
    int n_;
    std::map<Mono, Rat> terms_;
};

// Element of C_n (the Whitney span) expressed on the dual basis {omega_I}.
class ChainElement {
  public:
    explicit ChainElement(int n = 0) : n_(n) {}

    int simplex_dim() const { return n_; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::map<uint32_t, Rat>& coeffs() const { return coeffs_; }
    void add(uint32_t mask, const Rat& c);
    Rat coeff(uint32_t mask) const;

    ChainElement operator+(const ChainElement& o) const;
    ChainElement operator-(const ChainElement& o) const;
    ChainElement operator*(const Rat& c) const;
    bool operator==(const ChainElement& o) const {
        return n_ == o.n_ && coeffs_ == o.coeffs_;
    }

  private:
    int n_;
    std::map<uint32_t, Rat> coeffs_;
};

// Subset helpers: masks over {0..n} with bit i <=> vertex i.
inline int mask_size(uint32_t mask) { return __builtin_popcount(mask); }
std::vector<int> mask_vertices(uint32_t mask);
std::string mask_name(uint32_t mask);

// omega_I = k! sum_j (-1)^j t_{i_j} dt_{i_0} ... ^dt_{i_j} ... dt_{i_k}.
Form whitney_form(uint32_t mask, int n);

// Exact integral over the face spanned by I, ascending orientation.
Rat integrate_over_face(const Form& f, uint32_t mask);

// The Dupont contraction (i, p, h) on Omega_n.
Form dupont_i(const ChainElement& c);
ChainElement dupont_p(const Form& f);
Form dupont_h(const Form& f);

// Contraction toward a single vertex (building block of dupont_h).
Form vertex_contraction(const Form& f, int vertex);

// Simplicial structure. A monotone map phi: [m] -> [n] acts contravariantly
// on forms (Omega_n -> Omega_m) and on the Whitney span (C_n -> C_m).
ChainElement chain_pullback(const ChainElement& c, const std::vector<int>& phi, int m);

// Face map d_i: [n-1] -> [n] and degeneracy s_i: [n+1] -> [n] as vertex maps.
std::vector<int> face_map(int i, int n);
std::vector<int> degeneracy_map(int i, int n);

// The differential of C_n on the omega basis (restriction of the de Rham d).
ChainElement chain_d(const ChainElement& c);

}  // namespace lieforge::forms
