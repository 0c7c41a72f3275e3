#include "forms.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lieforge::forms {

namespace {

// Sign of dt_A ^ dt_B as a reordering into ascending order; 0 on overlap.
int wedge_sign(uint32_t a, uint32_t b) {
    if (a & b) return 0;
    int swaps = 0;
    for (int i = 0; i < 32; ++i)
        if (b >> i & 1) swaps += __builtin_popcount(a >> (i + 1));
    return swaps % 2 == 0 ? 1 : -1;
}

}  // namespace

void Form::add_term(const Mono& m, const Rat& c) {
    if (lieforge::is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (lieforge::is_zero(it->second)) terms_.erase(it);
    }
}

Form Form::unit(int n) {
    Form f(n);
    Mono m;
    m.t_exp.assign(n, 0);
    f.add_term(m, 1);
    return f;
}

Form Form::t(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("vertex out of range");
    Form f(n);
    Mono m;
    m.t_exp.assign(n, 0);
    if (i == 0) {
        f.add_term(m, 1);  // 1
        for (int j = 1; j <= n; ++j) {
            Mono mj;
            mj.t_exp.assign(n, 0);
            mj.t_exp[j - 1] = 1;
            f.add_term(mj, -1);
        }
    } else {
        m.t_exp[i - 1] = 1;
        f.add_term(m, 1);
    }
    return f;
}

Form Form::dt(int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("vertex out of range");
    Form f(n);
    if (i == 0) {
        for (int j = 1; j <= n; ++j) {
            Mono m;
            m.t_exp.assign(n, 0);
            m.dt_mask = 1u << (j - 1);
            f.add_term(m, -1);
        }
    } else {
        Mono m;
        m.t_exp.assign(n, 0);
        m.dt_mask = 1u << (i - 1);
        f.add_term(m, 1);
    }
    return f;
}

bool Form::homogeneous(int& degree_out) const {
    bool first = true;
    for (auto& [m, c] : terms_) {
        int deg = -__builtin_popcount(m.dt_mask);
        if (first) {
            degree_out = deg;
            first = false;
        } else if (deg != degree_out) {
            return false;
        }
    }
    if (first) degree_out = 0;
    return true;
}

Form Form::operator+(const Form& o) const {
    if (n_ != o.n_) throw std::invalid_argument("mismatched simplex dimensions");
    Form r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Form& Form::operator+=(const Form& o) {
    *this = *this + o;
    return *this;
}

Form Form::operator-(const Form& o) const { return *this + (-o); }

Form Form::operator-() const {
    Form r(n_);
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Form Form::operator*(const Rat& c) const {
    Form r(n_);
    if (lieforge::is_zero(c)) return r;
    for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Form Form::operator*(const Form& o) const {
    if (n_ != o.n_) throw std::invalid_argument("mismatched simplex dimensions");
    Form r(n_);
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) {
            int s = wedge_sign(m1.dt_mask, m2.dt_mask);
            if (s == 0) continue;
            Mono m;
            m.t_exp.resize(n_);
            for (int i = 0; i < n_; ++i)
                m.t_exp[i] = static_cast<uint8_t>(m1.t_exp[i] + m2.t_exp[i]);
            m.dt_mask = m1.dt_mask | m2.dt_mask;
            r.add_term(m, c1 * c2 * s);
        }
    return r;
}

Form Form::d() const {
    Form r(n_);
    for (auto& [m, c] : terms_)
        for (int i = 1; i <= n_; ++i) {
            if (m.t_exp[i - 1] == 0) continue;
            uint32_t bit = 1u << (i - 1);
            if (m.dt_mask & bit) continue;
            Mono dm = m;
            dm.t_exp[i - 1] -= 1;
            // dt_i is created on the left of the existing dt block.
            int below = __builtin_popcount(m.dt_mask & (bit - 1));
            int sign = below % 2 == 0 ? 1 : -1;
            dm.dt_mask = m.dt_mask | bit;
            r.add_term(dm, c * int(m.t_exp[i - 1]) * sign);
        }
    return r;
}

Form Form::pullback(const std::vector<int>& phi, int m) const {
    if (static_cast<int>(phi.size()) != m + 1)
        throw std::invalid_argument("vertex map has wrong source size");
    for (size_t i = 0; i + 1 < phi.size(); ++i)
        if (phi[i] > phi[i + 1]) throw std::invalid_argument("vertex map must be monotone");
    // Images of the source generators.
    std::vector<Form> t_img(n_ + 1, Form(m)), dt_img(n_ + 1, Form(m));
    for (int i = 0; i <= n_; ++i) {
        for (int j = 0; j <= m; ++j)
            if (phi[j] == i) {
                t_img[i] += Form::t(m, j);
                dt_img[i] += Form::dt(m, j);
            }
    }
    Form r(m);
    for (auto& [mono, c] : terms_) {
        Form term = Form::unit(m) * c;
        for (int i = 1; i <= n_; ++i)
            for (int e = 0; e < mono.t_exp[i - 1]; ++e) term = term * t_img[i];
        for (int i = 1; i <= n_; ++i)
            if (mono.dt_mask >> (i - 1) & 1) term = term * dt_img[i];
        r += term;
    }
    return r;
}

std::string Form::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        for (int i = 1; i <= n_; ++i)
            if (m.t_exp[i - 1] > 0) {
                os << " t" << i;
                if (m.t_exp[i - 1] > 1) os << "^" << int(m.t_exp[i - 1]);
            }
        for (int i = 1; i <= n_; ++i)
            if (m.dt_mask >> (i - 1) & 1) os << " dt" << i;
    }
    return os.str();
}

Form Form::parse(int n, const std::string& text) {
    Form r(n);
    std::string s = text;
    // split on '+' at top level; a leading '-' folds into the coefficient
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == '+') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    for (std::string part : parts) {
        std::istringstream is(part);
        std::string tok;
        Rat coeff = 1;
        Mono m;
        m.t_exp.assign(n, 0);
        bool saw_coeff = false;
        while (is >> tok) {
            if (tok == "*") continue;
            if (tok[0] == 't') {
                size_t caret = tok.find('^');
                int idx = std::stoi(tok.substr(1, caret == std::string::npos
                                                       ? std::string::npos
                                                       : caret - 1));
                int e = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
                if (idx < 1 || idx > n) throw std::invalid_argument("bad t index");
                m.t_exp[idx - 1] += e;
            } else if (tok.size() >= 3 && tok[0] == 'd' && tok[1] == 't') {
                int idx = std::stoi(tok.substr(2));
                if (idx < 1 || idx > n) throw std::invalid_argument("bad dt index");
                uint32_t bit = 1u << (idx - 1);
                if (m.dt_mask & bit) {
                    coeff = 0;
                } else {
                    int below = __builtin_popcount(m.dt_mask & ~(bit | (bit - 1)));
                    if (below % 2) coeff = -coeff;
                    m.dt_mask |= bit;
                }
            } else {
                if (saw_coeff) throw std::invalid_argument("two coefficients in one term");
                coeff = coeff * rat_from_string(tok);
                saw_coeff = true;
            }
        }
        r.add_term(m, coeff);
    }
    return r;
}

// ---- chain elements --------------------------------------------------------

void ChainElement::add(uint32_t mask, const Rat& c) {
    if (lieforge::is_zero(c)) return;
    auto it = coeffs_.find(mask);
    if (it == coeffs_.end()) {
        coeffs_.emplace(mask, c);
    } else {
        it->second += c;
        if (lieforge::is_zero(it->second)) coeffs_.erase(it);
    }
}

Rat ChainElement::coeff(uint32_t mask) const {
    auto it = coeffs_.find(mask);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

ChainElement ChainElement::operator+(const ChainElement& o) const {
    ChainElement r = *this;
    for (auto& [m, c] : o.coeffs_) r.add(m, c);
    return r;
}

ChainElement ChainElement::operator-(const ChainElement& o) const {
    ChainElement r = *this;
    for (auto& [m, c] : o.coeffs_) r.add(m, -c);
    return r;
}

ChainElement ChainElement::operator*(const Rat& c) const {
    ChainElement r(n_);
    for (auto& [m, k] : coeffs_) r.add(m, k * c);
    return r;
}

std::vector<int> mask_vertices(uint32_t mask) {
    std::vector<int> v;
    for (int i = 0; i < 32; ++i)
        if (mask >> i & 1) v.push_back(i);
    return v;
}

std::string mask_name(uint32_t mask) {
    std::string s;
    for (int i : mask_vertices(mask)) s += std::to_string(i);
    return s;
}

Form whitney_form(uint32_t mask, int n) {
    if (mask == 0) throw std::invalid_argument("whitney form needs a non-empty subset");
    std::vector<int> I = mask_vertices(mask);
    int k = static_cast<int>(I.size()) - 1;
    Form r(n);
    for (int j = 0; j <= k; ++j) {
        Form term = Form::t(n, I[j]);
        for (int l = 0; l <= k; ++l) {
            if (l == j) continue;
            term = term * Form::dt(n, I[l]);
        }
        if (j % 2) term = -term;
        r += term;
    }
    return r * factorial(static_cast<unsigned>(k));
}

Rat integrate_over_face(const Form& f, uint32_t mask) {
    std::vector<int> I = mask_vertices(mask);
    int k = static_cast<int>(I.size()) - 1;
    // Restrict along delta_I : [k] -> [n], then integrate the top monomials.
    Form g = f.pullback(I, k);
    Rat total = 0;
    uint32_t full = k == 0 ? 0u : (1u << k) - 1;
    for (auto& [m, c] : g.terms()) {
        if (m.dt_mask != full) continue;
        Rat num = 1;
        unsigned s = k;
        for (int i = 0; i < k; ++i) {
            num *= factorial(m.t_exp[i]);
            s += m.t_exp[i];
        }
        total += c * num / factorial(s);
    }
    return total;
}

Form dupont_i(const ChainElement& c) {
    Form r(c.simplex_dim());
    for (auto& [mask, coeff] : c.coeffs()) r += whitney_form(mask, c.simplex_dim()) * coeff;
    return r;
}

ChainElement dupont_p(const Form& f) {
    int n = f.simplex_dim();
    ChainElement r(n);
    for (uint32_t mask = 1; mask < (1u << (n + 1)); ++mask)
        r.add(mask, integrate_over_face(f, mask));
    return r;
}

// ---- vertex contraction ----------------------------------------------------

namespace {

// Monomial of Omega_n[u, du]: a Form monomial together with a u power and an
// optional du factor (kept on the left of the dt block).
struct UMono {
    Mono base;
    int u_exp = 0;
    bool du = false;

    bool operator<(const UMono& o) const {
        if (du != o.du) return du < o.du;
        if (u_exp != o.u_exp) return u_exp < o.u_exp;
        return base < o.base;
    }
};

using UForm = std::map<UMono, Rat>;

void uadd(UForm& f, const UMono& m, const Rat& c) {
    if (lieforge::is_zero(c)) return;
    auto it = f.find(m);
    if (it == f.end()) {
        f.emplace(m, c);
    } else {
        it->second += c;
        if (is_zero(it->second)) f.erase(it);
    }
}

UForm umul(int n, const UForm& a, const UForm& b) {
    UForm r;
    for (auto& [m1, c1] : a)
        for (auto& [m2, c2] : b) {
            if (m1.du && m2.du) continue;
            int sign = 1;
            // Move m2's du to the front: it passes m1's dt block.
            if (m2.du && __builtin_popcount(m1.base.dt_mask) % 2) sign = -sign;
            int ws = wedge_sign(m1.base.dt_mask, m2.base.dt_mask);
            if (ws == 0) continue;
            sign *= ws;
            UMono m;
            m.base.t_exp.resize(n);
            for (int i = 0; i < n; ++i)
                m.base.t_exp[i] = static_cast<uint8_t>(m1.base.t_exp[i] + m2.base.t_exp[i]);
            m.base.dt_mask = m1.base.dt_mask | m2.base.dt_mask;
            m.u_exp = m1.u_exp + m2.u_exp;
            m.du = m1.du || m2.du;
            uadd(r, m, c1 * c2 * sign);
        }
    return r;
}

UForm uform_of(const Form& f) {
    UForm r;
    for (auto& [m, c] : f.terms()) {
        UMono um;
        um.base = m;
        uadd(r, um, c);
    }
    return r;
}

}  // namespace

Form vertex_contraction(const Form& f, int vertex) {
    int n = f.simplex_dim();
    // phi_v(u, t) = (1-u) t + u e_v pulls back the coordinates as
    //   t_i  -> (1-u) t_i + [i=v] u
    //   dt_i -> (1-u) dt_i + ([i=v] - t_i) du ,
    // and the contraction integrates the du component over [0,1].
    std::vector<UForm> t_img(n + 1), dt_img(n + 1);
    for (int i = 0; i <= n; ++i) {
        Form ti = Form::t(n, i), dti = Form::dt(n, i);
        UForm t_one = uform_of(ti);           // t_i
        UForm t_u;                            // -u t_i  (+ u if i = v)
        for (auto& [m, c] : t_one) {
            UMono mu = m;
            mu.u_exp += 1;
            uadd(t_u, mu, -c);
        }
        if (i == vertex) {
            UMono mu;
            mu.base.t_exp.assign(n, 0);
            mu.u_exp = 1;
            uadd(t_u, mu, 1);
        }
        t_img[i] = t_one;
        for (auto& [m, c] : t_u) uadd(t_img[i], m, c);

        UForm d_one = uform_of(dti);  // dt_i
        UForm d_all;
        for (auto& [m, c] : d_one) {
            uadd(d_all, m, c);
            UMono mu = m;
            mu.u_exp += 1;
            uadd(d_all, mu, -c);  // -u dt_i
        }
        // ([i=v] - t_i) du
        {
            UForm coef = uform_of(i == vertex ? Form::unit(n) - Form::t(n, i)
                                              : -Form::t(n, i));
            for (auto& [m, c] : coef) {
                UMono mu = m;
                mu.du = true;
                uadd(d_all, mu, c);
            }
        }
        dt_img[i] = d_all;
    }

    UForm acc;
    {
        UMono one;
        one.base.t_exp.assign(n, 0);
        acc.emplace(one, 1);
    }
    Form result(n);
    for (auto& [mono, c] : f.terms()) {
        UForm term;
        UMono one;
        one.base.t_exp.assign(n, 0);
        term.emplace(one, c);
        for (int i = 1; i <= n; ++i)
            for (int e = 0; e < mono.t_exp[i - 1]; ++e) term = umul(n, term, t_img[i]);
        for (int i = 1; i <= n; ++i)
            if (mono.dt_mask >> (i - 1) & 1) term = umul(n, term, dt_img[i]);
        // integrate the du part over u in [0,1]
        for (auto& [m, coeff] : term) {
            if (!m.du) continue;
            result.add_term(m.base, coeff / (m.u_exp + 1));
        }
    }
    return result;
}

Form dupont_h(const Form& f) {
    int n = f.simplex_dim();
    Form r(n);
    for (uint32_t mask = 1; mask < (1u << (n + 1)); ++mask) {
        std::vector<int> I = mask_vertices(mask);
        int k = static_cast<int>(I.size()) - 1;
        Form g = f;
        for (int j = 0; j <= k; ++j) g = vertex_contraction(g, I[j]);
        if (g.is_zero()) continue;
        r += whitney_form(mask, n) * g;
    }
    return r;
}

ChainElement chain_pullback(const ChainElement& c, const std::vector<int>& phi, int m) {
    ChainElement r(m);
    for (auto& [mask, coeff] : c.coeffs()) {
        int size = mask_size(mask);
        for (uint32_t j = 1; j < (1u << (m + 1)); ++j) {
            if (mask_size(j) != size) continue;
            uint32_t image = 0;
            bool inj = true;
            for (int v = 0; v <= m && inj; ++v)
                if (j >> v & 1) {
                    uint32_t bit = 1u << phi[v];
                    if (image & bit) inj = false;
                    image |= bit;
                }
            if (inj && image == mask) r.add(j, coeff);
        }
    }
    return r;
}

std::vector<int> face_map(int i, int n) {
    // d_i : [n-1] -> [n], skipping i.
    std::vector<int> phi;
    for (int v = 0; v <= n; ++v)
        if (v != i) phi.push_back(v);
    return phi;
}

std::vector<int> degeneracy_map(int i, int n) {
    // s_i : [n+1] -> [n], repeating i.
    std::vector<int> phi;
    for (int v = 0; v <= n; ++v) {
        phi.push_back(v);
        if (v == i) phi.push_back(v);
    }
    return phi;
}

ChainElement chain_d(const ChainElement& c) {
    // d(omega_I) computed exactly inside Omega_n and projected back; the
    // Whitney span is a sub-complex so p recovers the coordinates.
    return dupont_p(dupont_i(c).d());
}

}  // namespace lieforge::forms
