#include "cayleyiso/cogrowth.hpp"

#include <cmath>
#include <stdexcept>

namespace cayleyiso {

CogrowthCounts reduced_word_counts(int m, const std::vector<Element>& images,
                                   const Group& target, int k_max) {
    if (m < 1) throw std::invalid_argument("free rank must be >= 1");
    if ((int)images.size() != m)
        throw std::invalid_argument("need one image per free generator");
    if (!target.is_finite())
        throw std::domain_error("reduced_word_counts needs a finite target");
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

    const int letters = 2 * m;  // 0..m-1 generators, m..2m-1 inverses
    std::vector<Element> letter_img(letters);
    for (int i = 0; i < m; ++i) {
        letter_img[i] = images[i];
        letter_img[m + i] = target.inv(images[i]);
    }
    auto inverse_letter = [m](int l) { return l < m ? l + m : l - m; };

    // lazily indexed elements of the subgroup the images generate
    ElementMap<int> index;
    std::vector<Element> elems;
    auto idx_of = [&](const Element& e) {
        auto it = index.find(e);
        if (it != index.end()) return it->second;
        int id = (int)elems.size();
        index[e] = id;
        elems.push_back(e);
        return id;
    };
    int id0 = idx_of(target.identity());

    // w[state] with state = elem_index * letters + last_letter
    std::vector<BigInt> w;
    auto at = [&](std::vector<BigInt>& v, int elem, int l) -> BigInt& {
        size_t need = (size_t)(elem + 1) * letters;
        if (v.size() < need) v.resize(need);
        return v[(size_t)elem * letters + l];
    };
    for (int l = 0; l < letters; ++l) at(w, idx_of(letter_img[l]), l) += 1;

    CogrowthCounts out;
    out.m = m;
    BigInt total_expected = letters;  // 2m (2m-1)^{k-1}
    for (int k = 1; k <= k_max; ++k) {
        BigInt ck = 0, total = 0;
        for (size_t st = 0; st < w.size(); ++st) {
            if (w[st] == 0) continue;
            total += w[st];
            if ((int)(st / letters) == id0) ck += w[st];
        }
        out.counts.push_back(ck);
        out.conserved.push_back(total == total_expected);
        if (k == k_max) break;

        std::vector<BigInt> next;
        next.reserve(w.size());
        for (size_t st = 0; st < w.size(); ++st) {
            if (w[st] == 0) continue;
            int elem = (int)(st / letters), last = (int)(st % letters);
            for (int l = 0; l < letters; ++l) {
                if (l == inverse_letter(last)) continue;
                int nelem = idx_of(target.mul(elems[elem], letter_img[l]));
                at(next, nelem, l) += w[st];
            }
        }
        w = std::move(next);
        total_expected *= (letters - 1);
    }
    return out;
}

CogrowthEstimate cogrowth_estimate(const CogrowthCounts& c) {
    CogrowthEstimate est;
    est.trivial_kernel = true;
    for (const BigInt& v : c.counts)
        if (v > 0) { est.trivial_kernel = false; break; }
    if (est.trivial_kernel) return est;

    for (size_t i = 0; i < c.counts.size(); ++i) {
        if (c.counts[i] == 0) continue;
        double root = std::exp(std::log(c.counts[i].convert_to<double>()) / (double)(i + 1));
        est.alpha_root = std::max(est.alpha_root, root);
    }
    // ratio estimator on the parity class of the largest k with c_k > 0
    int last_k = 0;
    for (size_t i = 0; i < c.counts.size(); ++i)
        if (c.counts[i] > 0) last_k = (int)(i + 1);
    std::vector<double> ratios;
    for (int k = last_k; k >= 3; k -= 2) {
        if (c.counts[k - 1] == 0 || c.counts[k - 3] == 0) break;
        ratios.push_back(std::sqrt(c.counts[k - 1].convert_to<double>() /
                                   c.counts[k - 3].convert_to<double>()));
    }
    if (!ratios.empty()) {
        est.alpha_ratio = ratios.front();
        est.ratio_k = last_k;
        est.ratio_available = true;
        est.ratio_fluctuation =
            ratios.size() >= 2 ? std::fabs(ratios[0] - ratios[1]) : 0.1;
    } else {
        est.alpha_ratio = est.alpha_root;
        est.ratio_available = false;
        est.ratio_fluctuation = 0.1;
    }
    double lo = std::sqrt(2.0 * c.m - 1.0), hi = 2.0 * c.m - 1.0;
    double tol = est.ratio_fluctuation + 1e-9;
    est.within_lower = est.alpha_ratio >= lo - tol;
    est.within_upper = est.alpha_ratio <= hi + tol;
    return est;
}

GrigorchukResult grigorchuk_rho(double alpha, int m) {
    if (m < 2) throw std::invalid_argument("grigorchuk_rho needs m >= 2");
    double lo = std::sqrt(2.0 * m - 1.0), hi = 2.0 * m - 1.0;
    if (alpha < lo - 1e-12 || alpha > hi + 1e-12)
        throw std::domain_error("alpha outside [sqrt(2m-1), 2m-1]");
    alpha = std::min(std::max(alpha, lo), hi);
    GrigorchukResult r;
    r.rho = (lo / (2.0 * m)) * (lo / alpha + alpha / lo);
    r.weak_bound = std::min(alpha / (double)m, 1.0);
    r.at_lower_boundary = std::fabs(alpha - lo) <= 1e-9;
    return r;
}

BurnsideBounds burnside_bounds(int m, long long a, std::optional<double> delta) {
    if (m < 2) throw std::invalid_argument("burnside_bounds needs m >= 2");
    if (a < 665 || a % 2 == 0)
        throw std::invalid_argument("burnside_bounds needs exponent a >= 665 and odd");
    BurnsideBounds b;
    b.m = m;
    b.a = a;
    b.delta = delta.value_or(2.0 / 3.0);
    if (!(b.delta > 0) || !(b.delta < 1))
        throw std::invalid_argument("delta must lie in (0,1)");
    b.alpha_ub = std::pow(2.0 * m - 1.0, b.delta);
    b.rho_ub = std::min(b.alpha_ub / (double)m, 1.0);
    b.r_lb = Rational(1, 3);
    b.lit_lb = Rational(3, 2);
    return b;
}

} // namespace cayleyiso
