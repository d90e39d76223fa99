#include "cayleyiso/littlewood.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace cayleyiso {

namespace {

// (sum, size) ratios compared by cross multiplication; integer-valued sums at
// desk scale stay below 2^53, so the comparison is exact in that mode.
struct QBest {
    bool has = false;
    double sum = 0;
    long long size = 0;
    std::vector<int> indices;
    size_t evaluated = 0;

    void offer(double s, long long n, std::vector<int> idx) {
        ++evaluated;
        if (!has) {
            has = true;
        } else {
            double lhs = s * (double)size;
            double rhs = sum * (double)n;
            if (lhs < rhs) return;
            if (lhs == rhs &&
                !(n < size || (n == size && idx < indices)))
                return;
        }
        sum = s;
        size = n;
        indices = std::move(idx);
    }
    double value() const { return size == 0 ? 0.0 : sum / (double)size; }
};

void exhaustive_subsets(const std::vector<std::vector<double>>& w, QBest& best) {
    int n = (int)w.size();
    std::vector<int> cur;
    // include/exclude recursion with incremental pair sums
    std::function<void(int, double)> rec = [&](int i, double sum) {
        if (i == n) {
            if (!cur.empty()) best.offer(sum, (long long)cur.size(), cur);
            return;
        }
        rec(i + 1, sum);
        double add = w[i][i];
        for (int a : cur) add += w[a][i] + w[i][a];
        cur.push_back(i);
        rec(i + 1, sum + add);
        cur.pop_back();
    };
    rec(0, 0.0);
}

void local_search_max(const std::vector<std::vector<double>>& w, uint64_t seed,
                      int steps, QBest& best) {
    int n = (int)w.size();
    std::mt19937_64 rng(seed);
    std::vector<char> in_set(n, 0);
    std::vector<int> members{0};
    in_set[0] = 1;
    double sum = w[0][0];
    best.offer(sum, 1, {0});
    std::uniform_int_distribution<int> dv(0, n - 1);
    auto delta = [&](int v) {
        double d = w[v][v];
        for (int a : members)
            if (a != v) d += w[a][v] + w[v][a];
        return d;
    };
    auto better = [](double s1, long long n1, double s2, long long n2) {
        return s1 * (double)n2 > s2 * (double)n1;
    };
    for (int step = 0; step < steps; ++step) {
        int v = dv(rng);
        long long sz = (long long)members.size();
        if (in_set[v]) {
            if (sz == 1) continue;
            double ns = sum - delta(v);
            // removal shrinks |F|: accept on ties as well
            if (better(ns, sz - 1, sum, sz) || ns * (double)sz == sum * (double)(sz - 1)) {
                in_set[v] = 0;
                members.erase(std::find(members.begin(), members.end(), v));
                sum = ns;
                std::vector<int> idx = members;
                std::sort(idx.begin(), idx.end());
                best.offer(sum, sz - 1, std::move(idx));
            }
        } else {
            double ns = sum + delta(v);
            if (better(ns, sz + 1, sum, sz)) {
                in_set[v] = 1;
                members.push_back(v);
                sum = ns;
                std::vector<int> idx = members;
                std::sort(idx.begin(), idx.end());
                best.offer(sum, sz + 1, std::move(idx));
            }
        }
    }
}

} // namespace

LittlewoodEstimate nprime_lower(const Group& g, const FunctionD& f,
                                const SearchConfig& cfg) {
    if (cfg.pool_radius < 0) throw std::invalid_argument("pool radius must be >= 0");
    if (f.values.empty()) throw std::invalid_argument("empty function");

    // pool = ball in the metric of the symmetrized support
    std::vector<Element> pool;
    {
        ElementSet supp;
        for (auto& [e, v] : f.values) {
            supp.insert(e);
            supp.insert(g.inv(e));
        }
        supp.erase(g.identity());
        if (supp.empty()) {
            pool = {g.identity()};
        } else {
            SymmetricSet metric =
                make_symmetric_set(g, std::vector<Element>(supp.begin(), supp.end()));
            pool = ball(g, metric, cfg.pool_radius);
        }
    }
    if (pool.empty()) throw std::invalid_argument("empty candidate pool");
    if (pool.size() > 4000)
        throw std::invalid_argument("candidate pool too large for the subset search");

    bool integer_valued = true;
    for (auto& [e, v] : f.values)
        if (v != std::floor(v)) { integer_valued = false; break; }

    int n = (int)pool.size();
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        Element ai = g.inv(pool[i]);
        for (int j = 0; j < n; ++j)
            w[i][j] = std::fabs(f.at(g.mul(ai, pool[j])));
    }

    QBest best;
    bool covered_pool = false;
    if (n <= 24) {
        exhaustive_subsets(w, best);
        covered_pool = cfg.max_subset == 0 || cfg.max_subset >= n;
    } else {
        // whole pool and nested prefixes (the BFS order makes these balls)
        double acc = 0;
        std::vector<int> idx;
        for (int i = 0; i < n; ++i) {
            double add = w[i][i];
            for (int a : idx) add += w[a][i] + w[i][a];
            acc += add;
            idx.push_back(i);
            best.offer(acc, (long long)idx.size(), idx);
        }
        local_search_max(w, cfg.seed, cfg.local_steps, best);
    }

    LittlewoodEstimate out;
    out.value = best.value();
    out.candidates_evaluated = best.evaluated;
    for (int i : best.indices) out.witness.push_back(pool[i]);
    std::sort(out.witness.begin(), out.witness.end());
    if (integer_valued) {
        long long sum = (long long)std::llround(best.sum);
        out.value_exact = Rational(sum, best.size);
        out.value = out.value_exact->to_double();
    }
    if (g.is_finite() && covered_pool && (long long)pool.size() == g.order())
        out.exact = true;
    return out;
}

double zeta_value(double s) {
    if (!(s > 1.0)) throw std::invalid_argument("zeta_value needs s > 1");
    static thread_local std::unordered_map<double, double> cache;
    if (auto it = cache.find(s); it != cache.end()) return it->second;
    const long long n = 100000;
    double sum = 0;
    for (long long k = n; k >= 1; --k) sum += std::pow((double)k, -s);
    double nn = (double)n;
    sum += std::pow(nn, 1.0 - s) / (s - 1.0);   // integral tail
    sum -= 0.5 * std::pow(nn, -s);              // Euler-Maclaurin half term
    sum += s * std::pow(nn, -s - 1.0) / 12.0;   // next correction
    cache[s] = sum;
    return sum;
}

BoxResult box_trick(const FunctionD& f, double p, double q) {
    if (!(q > 0) || !(p > q)) throw std::invalid_argument("box_trick needs 0 < q < p");
    if (f.values.empty()) throw std::invalid_argument("empty function");
    std::vector<std::pair<double, Element>> vals;
    for (auto& [e, v] : f.values) {
        if (v < 0) throw std::invalid_argument("box_trick needs f >= 0");
        vals.push_back({v, e});
    }
    std::sort(vals.begin(), vals.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return b.second < a.second;  // descending value, then canonical order
    });
    size_t best_n = 1;
    double best_qnorm = -1;
    for (size_t k = 1; k <= vals.size(); ++k) {
        double qn = vals[k - 1].first * std::pow((double)k, 1.0 / q);
        if (qn > best_qnorm) {
            best_qnorm = qn;
            best_n = k;
        }
    }
    BoxResult out;
    out.height = vals[best_n - 1].first;
    for (size_t k = 0; k < best_n; ++k) out.support.push_back(vals[k].second);
    std::sort(out.support.begin(), out.support.end());
    out.q_norm = best_qnorm;
    double psum = 0;
    for (auto& [v, e] : vals) psum += std::pow(v, p);
    out.f_p_norm = std::pow(psum, 1.0 / p);
    out.guarantee = std::pow(zeta_value(p / q), -1.0 / p) * out.f_p_norm;
    out.satisfied = out.q_norm >= out.guarantee * (1.0 - 1e-12);
    return out;
}

DecompositionCertificate free_t1_certificate(const Group& g, const SymmetricSet& s,
                                             int truncation) {
    if (g.kind() != GroupKind::free_group)
        throw std::domain_error("free_t1_certificate needs a free group backend");
    if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
    auto verts = ball(g, standard_set(g), truncation);
    ElementMap<int> index;
    for (size_t i = 0; i < verts.size(); ++i) index[verts[i]] = (int)i;
    // word length of a freely reduced word is its code length
    std::vector<long long> row(verts.size(), 0), col(verts.size(), 0);
    for (size_t i = 0; i < verts.size(); ++i) {
        size_t lx = verts[i].code.size();
        for (const Element& e : s.elems) {
            Element y = g.mul(verts[i], e);
            auto it = index.find(y);
            if (it == index.end()) continue;  // outside the truncated square
            size_t ly = y.code.size();
            if (ly <= lx) row[i] += 1;        // shorter target, ties included
            else col[it->second] += 1;        // remainder, bounded per column
        }
    }
    DecompositionCertificate cert;
    cert.truncation = truncation;
    for (long long v : row) cert.row_sup = std::max(cert.row_sup, v);
    for (long long v : col) cert.col_sup = std::max(cert.col_sup, v);
    cert.t1_bound = cert.row_sup + cert.col_sup;
    return cert;
}

FunctionD quotient_lift(const FunctionD& f, const QuotientData& q) {
    FunctionD out;
    ElementSet reps;
    for (const Element& lam : f.sorted_support()) {
        Element r = q.section(lam);
        if (!(q.pi(r) == lam))
            throw std::invalid_argument("section does not split the quotient map");
        if (!reps.insert(r).second)
            throw std::invalid_argument("section is not injective over distinct cosets");
        out.set(r, f.at(lam));
    }
    return out;
}

} // namespace cayleyiso
