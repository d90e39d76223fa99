#include "cayleyiso/spectral.hpp"

#include <Eigen/Sparse>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace cayleyiso {

using boost::multiprecision::cpp_int;

std::vector<ReturnProbability> return_probability_bounds(const Group& g,
                                                         const SymmetricSet& s,
                                                         int k_max,
                                                         size_t support_cap,
                                                         int exact_cap) {
    if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
    std::vector<ReturnProbability> out;

    FiniteSupportFunction<cpp_int> mu;  // unnormalized counts, one per element of S
    for (const Element& e : s.elems) mu.values[e] += 1;
    const FiniteSupportFunction<cpp_int> two_step = convolve(g, mu, mu);
    FiniteSupportFunction<cpp_int> cur = two_step;

    cpp_int denom = cpp_int(s.size()) * cpp_int(s.size());
    const cpp_int denom_step = denom;
    const Element id = g.identity();
    const double log_set = std::log((double)s.size());

    bool exact_mode = true;
    FunctionD curf, two_stepf;
    size_t prev_support = 1;

    for (int k = 1; k <= k_max; ++k) {
        ReturnProbability rp;
        rp.steps = 2 * k;
        if (exact_mode) {
            cpp_int count = 0;
            if (auto it = cur.values.find(id); it != cur.values.end()) count = it->second;
            cpp_int total = 0;
            for (auto& [e, v] : cur.values) total += v;
            rp.exact = true;
            rp.conserved = (total == denom);
            rp.count = count.str();
            if (count > 0) {
                double logp = std::log(count.convert_to<double>()) - 2.0 * k * log_set;
                rp.probability = std::exp(logp);
                rp.bound = std::exp(logp / (2.0 * k));
            }
        } else {
            double p = 0;
            if (auto it = curf.values.find(id); it != curf.values.end()) p = it->second;
            rp.probability = p;
            rp.bound = p <= 0 ? 0.0 : std::pow(p, 1.0 / (2.0 * k));
        }
        out.push_back(rp);
        if (k == k_max) break;

        // stop before the next power outgrows the desk-scale cap; predicted
        // from the observed per-step support growth
        size_t cur_support = exact_mode ? cur.support_size() : curf.support_size();
        double growth = (double)cur_support / (double)std::max<size_t>(1, prev_support);
        if ((double)cur_support * std::max(1.0, growth) > (double)support_cap) break;
        prev_support = cur_support;

        if (exact_mode && 2 * (k + 1) > exact_cap) {
            double scale = std::exp(-2.0 * k * log_set);
            for (auto& [e, v] : cur.values)
                curf.values[e] = v.convert_to<double>() * scale;
            double scale2 = 1.0 / double(s.size() * s.size());
            for (auto& [e, v] : two_step.values)
                two_stepf.values[e] = v.convert_to<double>() * scale2;
            exact_mode = false;
        }
        if (exact_mode) {
            cur = convolve(g, cur, two_step);
            denom *= denom_step;
        } else {
            curf = convolve(g, curf, two_stepf);
        }
    }
    return out;
}

std::optional<double> analytic_rho(const Group& g, const SymmetricSet& s,
                                   std::string* note) {
    if (g.is_finite()) {
        if (note) *note = "finite group: the constant vector is a top eigenvector";
        return 1.0;
    }
    if ((g.kind() == GroupKind::free_abelian || g.kind() == GroupKind::lamplighter) &&
        is_standard_set(g, s)) {
        if (note) *note = "amenable backend with standard set";
        return 1.0;
    }
    if (g.kind() == GroupKind::free_group && is_standard_set(g, s) && g.free_rank() >= 1) {
        double m = g.free_rank();
        if (note) *note = "free group, standard set: sqrt(2m-1)/m";
        return std::sqrt(2.0 * m - 1.0) / m;
    }
    return std::nullopt;
}

double operator_norm_lb(const Group& g, const SymmetricSet& s, const FunctionD& f,
                        int radius, bool* exact) {
    for (auto& [e, v] : f.values)
        if (v < 0) throw std::invalid_argument("operator_norm_lb needs f >= 0");
    if (f.values.empty()) return 0.0;
    auto verts = ball(g, s, radius);
    ElementMap<int> index;
    for (size_t i = 0; i < verts.size(); ++i) index[verts[i]] = (int)i;
    bool saturated = true;
    std::vector<Eigen::Triplet<double>> trips;
    for (size_t i = 0; i < verts.size(); ++i) {
        for (auto& [u, fu] : f.values) {
            // A(x, z) = f(x z^-1) is nonzero at z = u^-1 x
            Element z = g.mul(g.inv(u), verts[i]);
            auto it = index.find(z);
            if (it != index.end()) trips.push_back({(int)i, it->second, fu});
            else saturated = false;
        }
    }
    if (exact) *exact = g.is_finite() && saturated && verts.size() == (size_t)g.order();
    int n = (int)verts.size();
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseMatrix<double> at = a.transpose();

    Eigen::VectorXd v = Eigen::VectorXd::Ones(n);
    v /= v.norm();
    double sigma = 0;
    for (int iter = 0; iter < 10000; ++iter) {
        Eigen::VectorXd u = a * v;
        double ns = u.norm();
        if (ns == 0) return 0.0;
        Eigen::VectorXd w = at * u;
        double nw = w.norm();
        if (nw == 0) return ns;
        v = w / nw;
        double prev = sigma;
        sigma = ns;
        if (iter > 0 && std::fabs(sigma - prev) <= 1e-10 * std::max(1.0, sigma)) break;
    }
    return sigma;
}

MoharReport mohar_check(const Group& g, const SymmetricSet& s) {
    auto h = analytic_h(g, s);
    auto rho = analytic_rho(g, s);
    bool solvable =
        g.is_finite() ||
        ((g.kind() == GroupKind::free_abelian || g.kind() == GroupKind::free_group) &&
         is_standard_set(g, s));
    if (!solvable || !h || !rho)
        throw std::domain_error(
            "mohar_check needs an instance with exact h and rho; one-sided "
            "bounds would make the inequality directions unsound");
    MoharReport r;
    r.set_size = (double)s.size();
    r.h = h->to_double();
    r.rho = *rho;
    r.left = r.set_size * (1.0 - r.rho);
    r.right = r.set_size * std::sqrt(std::max(0.0, 1.0 - r.rho * r.rho));
    r.left_slack = r.h - r.left;
    r.right_slack = r.right - r.h;
    const double tol = 1e-9;
    r.left_holds = r.left <= r.h + tol;
    r.right_holds = r.h <= r.right + tol;
    r.e = 1.0 - r.h / r.set_size;
    r.e_le_rho = r.e <= r.rho + tol;
    r.e_ge_half_rho2 = r.e >= 0.5 * r.rho * r.rho - tol;
    return r;
}

namespace {

int saturation_radius(const Group& g, const SymmetricSet& s, int cap = 64) {
    size_t prev = 0;
    for (int r = 1; r <= cap; ++r) {
        size_t n = ball(g, s, r).size();
        if (n == prev) return r - 1;
        prev = n;
    }
    return cap;
}

} // namespace

std::vector<RdRatioRow> rd_ratio_scan(const Group& g, const SymmetricSet& s,
                                      int d_max, int trials, uint64_t seed) {
    if (d_max < 1) throw std::invalid_argument("d_max must be >= 1");
    std::vector<RdRatioRow> rows;
    for (int d = 1; d <= d_max; ++d) {
        auto supp = ball(g, s, d);
        int trunc = g.is_finite() ? saturation_radius(g, s) : 2 * d + 2;
        RdRatioRow row;
        row.d = d;
        row.ball_size = supp.size();
        FunctionD ind;
        for (const Element& e : supp) ind.set(e, 1.0);
        row.indicator_ratio = operator_norm_lb(g, s, ind, trunc) / lp_norm(ind, 2.0);
        row.max_random_ratio = 0;
        std::mt19937_64 rng(seed + (uint64_t)d * 0x9e3779b97f4a7c15ull);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int t = 0; t < trials; ++t) {
            FunctionD a;
            for (const Element& e : supp) {
                double v = unif(rng);
                if (v > 0) a.set(e, v);
            }
            double ratio = operator_norm_lb(g, s, a, trunc) / lp_norm(a, 2.0);
            row.max_random_ratio = std::max(row.max_random_ratio, ratio);
        }
        row.sanity_cap = std::sqrt((double)supp.size());
        double worst = std::max(row.indicator_ratio, row.max_random_ratio);
        row.sanity_ok = worst <= row.sanity_cap * (1.0 + 1e-9);
        rows.push_back(row);
    }
    return rows;
}

double kesten_lower_bound(size_t set_size) {
    return std::sqrt((double)set_size - 1.0) / (double)set_size;
}

} // namespace cayleyiso
