// Fit the Dupont homotopy composite: order, per-level sign, side, h_j sign.
#include <cstdio>
#include <functional>
#include <vector>
#include "lieforge/forms.hpp"
using namespace lieforge;
using namespace lieforge::forms;

Form dupont_h_variant(const Form& f, bool desc_first, bool alt_sign, bool left_mul,
                      bool neg_hj) {
    int n = f.simplex_dim();
    Form r(n);
    for (uint32_t mask = 1; mask < (1u << (n + 1)); ++mask) {
        std::vector<int> I = mask_vertices(mask);
        int k = (int)I.size() - 1;
        Form g = f;
        if (desc_first)
            for (int j = k; j >= 0; --j) g = vertex_contraction(g, I[j]);
        else
            for (int j = 0; j <= k; ++j) g = vertex_contraction(g, I[j]);
        if (neg_hj && (k + 1) % 2) g = -g;  // per-contraction sign
        if (g.is_zero()) continue;
        Form w = whitney_form(mask, n);
        Form term = left_mul ? w * g : g * w;
        if (alt_sign && k % 2) term = -term;
        r += term;
    }
    return r;
}

std::vector<Form> spanning(int n, int max_poly_deg) {
    std::vector<Form> out;
    for (uint32_t m1 = 1; m1 < (1u << (n + 1)); ++m1) {
        out.push_back(whitney_form(m1, n));
        for (uint32_t m2 = m1; m2 < (1u << (n + 1)); ++m2)
            out.push_back(whitney_form(m1, n) * whitney_form(m2, n));
    }
    std::vector<uint8_t> e;
    std::function<void(int, int)> rec = [&](int i, int rem) {
        if (i == n) {
            for (uint32_t dm = 0; dm < (1u << n); ++dm) {
                Form f(n);
                Mono m; m.t_exp = e; m.dt_mask = dm;
                f.add_term(m, 1);
                out.push_back(f);
            }
            return;
        }
        for (int k = 0; k <= rem; ++k) { e.push_back((uint8_t)k); rec(i + 1, rem - k); e.pop_back(); }
    };
    rec(0, 3);
    return out;
}

int main() {
    for (int mask = 0; mask < 16; ++mask) {
        bool desc = mask & 1, alt = mask & 2, left = mask & 4, neg = mask & 8;
        bool ok = true;
        for (int n = 1; n <= 2 && ok; ++n) {
            for (const Form& f : spanning(n, 3)) {
                auto H = [&](const Form& x) { return dupont_h_variant(x, desc, alt, left, neg); };
                Form hf = H(f);
                if (!(dupont_i(dupont_p(f)) - f == hf.d() + H(f.d()))) { ok = false; break; }
                if (!H(hf).is_zero()) { ok = false; break; }
                if (!dupont_h_variant(dupont_i(dupont_p(hf)), desc, alt, left, neg).is_zero() &&
                    false) { ok = false; break; }
            }
        }
        if (ok) printf("PASS desc=%d alt=%d left=%d neg=%d\n", desc, alt, left, neg);
    }
    return 0;
}
