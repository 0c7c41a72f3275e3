// Dev scratch: verify the Dupont contraction side conditions.
#include <cstdio>
#include <vector>
#include "lieforge/forms.hpp"
using namespace lieforge;
using namespace lieforge::forms;

// spanning set: all whitney forms, their products, and t-monomials * dt-subsets
std::vector<Form> spanning(int n, int max_poly_deg) {
    std::vector<Form> out;
    for (uint32_t m = 1; m < (1u << (n + 1)); ++m) out.push_back(whitney_form(m, n));
    // products of two whitney forms
    for (uint32_t m1 = 1; m1 < (1u << (n + 1)); ++m1)
        for (uint32_t m2 = m1; m2 < (1u << (n + 1)); ++m2)
            out.push_back(whitney_form(m1, n) * whitney_form(m2, n));
    // monomials
    std::vector<std::vector<uint8_t>> exps;
    std::function<void(std::vector<uint8_t>&, int, int)> rec = [&](std::vector<uint8_t>& e, int i, int rem) {
        if (i == n) { exps.push_back(e); return; }
        for (int k = 0; k <= rem; ++k) { e.push_back((uint8_t)k); rec(e, i + 1, rem - k); e.pop_back(); }
    };
    std::vector<uint8_t> e;
    rec(e, 0, max_poly_deg);
    for (auto& ex : exps)
        for (uint32_t dm = 0; dm < (1u << n); ++dm) {
            Form f(n);
            Mono m; m.t_exp = ex; m.dt_mask = dm;
            f.add_term(m, 1);
            out.push_back(f);
        }
    return out;
}

int main() {
    for (int n = 0; n <= 3; ++n) {
        int bad_pi = 0, bad_ip = 0, bad_hh = 0, bad_ph = 0, bad_hi = 0, bad_dsub = 0;
        // p i = id on C_n
        for (uint32_t m = 1; m < (1u << (n + 1)); ++m) {
            ChainElement c(n);
            c.add(m, 1);
            if (!(dupont_p(dupont_i(c)) == c)) ++bad_pi;
            // h i = 0
            if (!dupont_h(dupont_i(c)).is_zero()) ++bad_hi;
            // C_* is a subcomplex: d(i(c)) lands in the whitney span
            Form di = dupont_i(c).d();
            if (!(dupont_i(dupont_p(di)) == di)) ++bad_dsub;
        }
        for (const Form& f : spanning(n, 3)) {
            Form hf = dupont_h(f);
            // i p - id = d h + h d
            Form lhs = dupont_i(dupont_p(f)) - f;
            Form rhs = hf.d() + dupont_h(f.d());
            if (!(lhs == rhs)) ++bad_ip;
            if (!dupont_h(hf).is_zero()) ++bad_hh;
            bool allz = true;
            for (auto& [mask, c] : dupont_p(hf).coeffs()) (void)mask, (void)c, allz = false;
            if (!allz) ++bad_ph;
        }
        printf("n=%d  pi=%d ip=%d hh=%d ph=%d hi=%d dsub=%d\n", n, bad_pi, bad_ip, bad_hh,
               bad_ph, bad_hi, bad_dsub);
    }
    return 0;
}
