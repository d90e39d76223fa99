#include "cayleyiso/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace cayleyiso {

ExponentReport exponent_terms(const Group& g, const std::vector<SymmetricSet>& family,
                              const ExponentConfig& cfg) {
    if (family.size() < 2)
        throw std::invalid_argument("exponent family needs at least two sets");
    {
        std::set<size_t> sizes;
        for (const auto& s : family) sizes.insert(s.size());
        if (sizes.size() < 2)
            throw std::invalid_argument("exponent family needs two distinct set sizes");
    }

    ExponentReport rep;
    for (const SymmetricSet& s : family) {
        if (s.size() < 2)
            throw std::invalid_argument("exponent terms need |S| >= 2");
        ExponentTerm t;
        t.set_size = s.size();
        double ln_s = std::log((double)s.size());

        if (auto h = analytic_h(g, s)) {
            t.e_value = 1.0 - h->to_double() / (double)s.size();
            t.e_exact = true;
        } else {
            CheegerResult c = cheeger_upper(g, s, cfg.cheeger);
            t.e_value = c.e.to_double();
            t.e_exact = c.exact;
        }
        if (auto rho = analytic_rho(g, s)) {
            t.rho_value = *rho;
            t.rho_exact = true;
        } else {
            auto bounds = return_probability_bounds(g, s, cfg.k_max_returns);
            double best = 0;
            for (auto& b : bounds) best = std::max(best, b.bound);
            t.rho_value = best;
            t.rho_exact = false;
        }

        t.eta_term = -std::log(t.e_value) / ln_s;
        t.eta_is_upper = !t.e_exact;  // e lower bound pushes the term up
        t.r_term = -std::log(t.rho_value) / ln_s;
        t.r_is_upper = !t.rho_exact;
        if (t.e_exact && t.rho_exact) {
            t.sandwich_checked = true;
            double upper = (-2.0 * std::log(t.rho_value) + std::log(2.0)) / ln_s;
            t.sandwich_ok = t.r_term <= t.eta_term + 1e-9 && t.eta_term <= upper + 1e-9;
        }
        rep.terms.push_back(t);
    }
    std::sort(rep.terms.begin(), rep.terms.end(),
              [](const ExponentTerm& a, const ExponentTerm& b) {
                  return a.set_size < b.set_size;
              });

    // size-wise running suprema, largest threshold first when scanning back
    std::vector<double> suffix_eta(rep.terms.size()), suffix_r(rep.terms.size());
    for (int i = (int)rep.terms.size() - 1; i >= 0; --i) {
        suffix_eta[i] = rep.terms[i].eta_term;
        suffix_r[i] = rep.terms[i].r_term;
        if (i + 1 < (int)rep.terms.size()) {
            suffix_eta[i] = std::max(suffix_eta[i], suffix_eta[i + 1]);
            suffix_r[i] = std::max(suffix_r[i], suffix_r[i + 1]);
        }
    }
    for (size_t i = 0; i < rep.terms.size(); ++i) {
        if (i > 0 && rep.terms[i].set_size == rep.terms[i - 1].set_size) continue;
        rep.running_eta.push_back({rep.terms[i].set_size, suffix_eta[i]});
        rep.running_r.push_back({rep.terms[i].set_size, suffix_r[i]});
    }
    rep.eta_hat = suffix_eta.empty() ? 0 : suffix_eta[0];
    rep.r_hat = suffix_r.empty() ? 0 : suffix_r[0];
    if (rep.eta_hat >= 1.0) {
        rep.lit_infinite = true;
        rep.lit_estimate = std::numeric_limits<double>::infinity();
    } else {
        rep.lit_estimate = lit_of_eta(std::max(0.0, rep.eta_hat));
    }
    rep.direction_note =
        "per-set terms only; family-restricted estimate, no limit over all "
        "sets is claimed";
    return rep;
}

double lit_of_eta(double eta) {
    if (eta < 0 || eta > 1) throw std::domain_error("eta must lie in [0,1]");
    if (eta == 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (1.0 - eta);
}

double eta_of_lit(double lit) {
    if (std::isinf(lit)) return 1.0;
    if (lit < 1) throw std::domain_error("finite lit must be >= 1");
    return 1.0 - 1.0 / lit;
}

Classification classify(const ExponentReport& rep, const GroupFacts& facts) {
    Classification c;
    if (facts.finite) {
        c.band = "0";
        c.statements.push_back("finite group: exponent value 0 (iff)");
        return c;
    }
    if (facts.amenable) {
        c.band = "1";
        c.statements.push_back("infinite amenable group: exponent value 1 (iff)");
    }
    if (facts.free_subgroup) {
        c.band = "inf";
        c.statements.push_back(
            "contains a non-abelian free subgroup: exponent value infinity "
            "(sufficient condition; the converse fails in general)");
    }
    if (c.band.empty()) {
        double lit = rep.lit_infinite ? std::numeric_limits<double>::infinity()
                                      : rep.lit_estimate;
        if (std::isinf(lit)) c.band = "inf";
        else if (lit <= 2.0 + 1e-12) c.band = "(1,2]";
        else c.band = "(2,inf)";
    }
    if (!facts.amenable) {
        if (rep.lit_infinite || rep.lit_estimate > 2.0 + 1e-12)
            c.statements.push_back(
                "family estimate exceeds 2: outside the necessary range for "
                "unitarisability (estimate is family-restricted)");
        else
            c.statements.push_back(
                "family estimate at most 2: within the necessary range for "
                "unitarisability (necessary condition only)");
        if (std::fabs(rep.lit_estimate - 2.0) <= 1e-9)
            c.statements.push_back("estimate sits at the unitarisability threshold 2");
    }
    // chain consistency on exact per-set data: r <= eta <= 2r (+ ln2/ln|S| per set)
    bool any = false, ok = true;
    for (const ExponentTerm& t : rep.terms)
        if (t.sandwich_checked) {
            any = true;
            ok = ok && t.sandwich_ok;
        }
    c.chain_checked = any;
    c.chain_ok = ok;
    return c;
}

} // namespace cayleyiso
