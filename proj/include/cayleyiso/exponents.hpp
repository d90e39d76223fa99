#pragma once

#include "cayleyiso/cayley.hpp"
#include "cayleyiso/spectral.hpp"

#include <string>
#include <vector>

namespace cayleyiso {

struct ExponentTerm {
    size_t set_size = 0;
    double e_value = 0;
    bool e_exact = false;  // otherwise a lower bound for e
    double rho_value = 0;
    bool rho_exact = false;  // otherwise a lower bound for rho
    double eta_term = 0;     // -ln e / ln |S|
    bool eta_is_upper = false;  // e lower bound => eta term upper bound
    double r_term = 0;          // -ln rho / ln |S|
    bool r_is_upper = false;
    bool sandwich_checked = false;  // r <= eta <= 2r + ln2/ln|S|, exact data only
    bool sandwich_ok = false;
};

struct ExponentReport {
    std::vector<ExponentTerm> terms;  // sorted by set size
    // size-wise curve: for each distinct size n, the sup of the terms over
    // computed sets with |S| >= n (the per-size proxy; no limit is claimed)
    std::vector<std::pair<size_t, double>> running_eta;
    std::vector<std::pair<size_t, double>> running_r;
    double eta_hat = 0;  // sup of per-set eta terms over the family
    double r_hat = 0;
    double lit_estimate = 0;  // 1/(1 - eta_hat)
    bool lit_infinite = false;
    std::string direction_note;
};

struct ExponentConfig {
    SearchConfig cheeger;
    int k_max_returns = 5;  // depth of the return-probability bound for rho
};

/// Per-set exponent terms for a family of >= 2 sets of >= 2 distinct sizes.
/// Terms carry explicit directions; no limit over all sets is claimed.
ExponentReport exponent_terms(const Group& g, const std::vector<SymmetricSet>& family,
                              const ExponentConfig& cfg);

double lit_of_eta(double eta);  // 1/(1-eta), eta in [0,1); 1 -> infinity
double eta_of_lit(double lit);  // 1 - 1/lit

struct Classification {
    std::string band;  // "0", "1", "(1,2]", "(2,inf)", "inf"
    std::vector<std::string> statements;
    bool chain_checked = false;
    bool chain_ok = false;  // 0 <= r <= eta <= 2r <= 1 on exact data
};

/// Threshold classification driven by the established facts about the
/// backend plus the family estimate; every statement is tagged with its
/// logical strength.
Classification classify(const ExponentReport& rep, const GroupFacts& facts);

} // namespace cayleyiso
