#include "cayleyiso/jobs.hpp"

#include "cayleyiso/cayley.hpp"
#include "cayleyiso/cogrowth.hpp"
#include "cayleyiso/colouring.hpp"
#include "cayleyiso/exponents.hpp"
#include "cayleyiso/forests.hpp"
#include "cayleyiso/littlewood.hpp"
#include "cayleyiso/spectral.hpp"
#include "cayleyiso/zoo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace cayleyiso {

namespace fs = std::filesystem;

// ---------------------------------------------------------------- config ----

Group group_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind"))
        throw ConfigError("group descriptor needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "free") return Group::free_group(j.at("rank").get<int>());
        if (kind == "free_abelian") return Group::free_abelian(j.at("rank").get<int>());
        if (kind == "cyclic") return Group::cyclic(j.at("n").get<long>());
        if (kind == "finite_table") {
            if (j.contains("csv"))
                return Group::finite_table_from_csv(j.at("csv").get<std::string>());
            return Group::finite_table(
                j.at("table").get<std::vector<std::vector<int>>>());
        }
        if (kind == "permutation")
            return Group::permutation(j.at("degree").get<int>(),
                                      j.at("generators").get<std::vector<std::vector<int>>>());
        if (kind == "free_product_cyclic")
            return Group::free_product_cyclic(j.at("orders").get<std::vector<int>>());
        if (kind == "lamplighter") return Group::lamplighter();
        if (kind == "builtin_s3") return builtin_s3();
        if (kind == "builtin_klein4") return builtin_klein_four();
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad group descriptor: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad group descriptor: ") + e.what());
    }
    throw ConfigError("unknown group kind '" + kind + "'");
}

namespace {

// ------------------------------------------------------------ ball cache ----

uint64_t fnv64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::vector<std::pair<Element, int>> std_ball_cached(const Group& g, int radius) {
    const char* dir = std::getenv("CAYLEY_ISO_CACHE");
    if (!dir || !*dir) return ball_with_distances(g, standard_set(g), radius);
    std::string key = g.descriptor() + "|std|" + std::to_string(radius) + "|" +
                      kToolkitVersion;
    fs::path path = fs::path(dir) / ("ball-" + std::to_string(fnv64(key)) + ".cache");
    if (fs::exists(path)) {
        std::ifstream in(path);
        std::string header;
        if (std::getline(in, header) && header == key) {
            std::vector<std::pair<Element, int>> out;
            std::string line;
            bool ok = true;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::stringstream ss(line);
                int dist, len;
                if (!(ss >> dist >> len)) { ok = false; break; }
                Element e;
                e.code.resize(len);
                for (int i = 0; i < len; ++i)
                    if (!(ss >> e.code[i])) { ok = false; break; }
                if (!ok) break;
                out.push_back({std::move(e), dist});
            }
            if (ok && !out.empty()) return out;
        }
    }
    auto out = ball_with_distances(g, standard_set(g), radius);
    std::error_code ec;
    fs::create_directories(dir, ec);
    std::ofstream f(path);
    if (f) {
        f << key << "\n";
        for (auto& [e, d] : out) {
            f << d << " " << e.code.size();
            for (int32_t v : e.code) f << " " << v;
            f << "\n";
        }
    }
    return out;
}

SymmetricSet box_set(const Group& g, int k) {
    if (g.kind() != GroupKind::free_abelian)
        throw ConfigError("box sets need a free abelian group");
    if (k < 1) throw ConfigError("box side must be >= 1");
    int d = g.free_rank();
    std::vector<Element> elems;
    std::vector<int32_t> v(d, -k);
    while (true) {
        bool zero = true;
        for (int32_t x : v) zero = zero && x == 0;
        if (!zero) elems.push_back({v});
        int i = 0;
        while (i < d && ++v[i] > k) v[i++] = -k;
        if (i == d) break;
    }
    return make_symmetric_set(g, std::move(elems));
}

} // namespace

SymmetricSet set_from_json(const Group& g, const Json& j) {
    if (!j.is_object() || !j.contains("descriptor"))
        throw ConfigError("set descriptor needs a 'descriptor'");
    std::string d = j.at("descriptor").get<std::string>();
    try {
        if (d == "explicit") {
            std::vector<Word> words;
            for (const auto& wj : j.at("words"))
                words.push_back(g.parse_word(wj.get<std::vector<std::string>>()));
            return symmetric_from_words(g, words);
        }
        if (d == "ball") {
            int r = j.at("radius").get<int>();
            auto bd = std_ball_cached(g, r);
            std::vector<Element> elems;
            for (auto& [e, dist] : bd)
                if (!(e == g.identity())) elems.push_back(std::move(e));
            if (elems.empty()) throw std::invalid_argument("ball descriptor is empty");
            return make_symmetric_set(g, std::move(elems));
        }
        if (d == "sphere") {
            int r = j.at("radius").get<int>();
            auto bd = std_ball_cached(g, r);
            std::vector<Element> elems;
            for (auto& [e, dist] : bd)
                if (dist == r) elems.push_back(std::move(e));
            if (elems.empty()) throw std::invalid_argument("sphere descriptor is empty");
            return make_symmetric_set(g, std::move(elems));
        }
        if (d == "power") {
            SymmetricSet base = set_from_json(g, j.at("base"));
            return symmetric_power(g, base, j.at("k").get<int>());
        }
        if (d == "random_ball") {
            return symmetric_random(g, j.at("radius").get<int>(),
                                    j.at("size").get<int>(),
                                    j.value("seed", (uint64_t)1),
                                    j.value("with_identity", false));
        }
        if (d == "box") return box_set(g, j.at("k").get<int>());
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("bad set descriptor: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("bad set descriptor: ") + e.what());
    }
    throw ConfigError("unknown set descriptor '" + d + "'");
}

JobConfig parse_job_config_json(const Json& j) {
    JobConfig cfg;
    cfg.raw = j;
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    if (!j.contains("group")) throw ConfigError("config needs a 'group'");
    cfg.group = group_from_json(j.at("group"));
    if (!j.contains("tasks") || !j.at("tasks").is_array() || j.at("tasks").empty())
        throw ConfigError("config needs a non-empty 'tasks' array");
    static const std::vector<std::string> known = {
        "invariants", "spectral", "littlewood", "cogrowth",
        "forest",     "colour",   "exponents",  "verify"};
    for (const auto& t : j.at("tasks")) {
        std::string name = t.get<std::string>();
        if (std::find(known.begin(), known.end(), name) == known.end())
            throw ConfigError("unknown task '" + name + "'");
        cfg.tasks.push_back(name);
    }
    if (j.contains("sets")) {
        for (const auto& sj : j.at("sets")) {
            cfg.sets.push_back(set_from_json(*cfg.group, sj));
            cfg.set_descriptors.push_back(sj);
        }
    }
    bool needs_sets = false;
    for (const auto& t : cfg.tasks)
        if (t != "cogrowth" && t != "exponents") needs_sets = true;
    if (needs_sets && cfg.sets.empty())
        throw ConfigError("config needs at least one entry in 'sets'");
    cfg.params = j.value("params", Json::object());
    if (!cfg.params.is_object()) throw ConfigError("'params' must be an object");
    cfg.seed = j.value("seed", (uint64_t)1);
    cfg.threads = j.value("threads", 1);
    if (cfg.threads < 1) throw ConfigError("'threads' must be >= 1");
    cfg.output_dir = j.value("output", std::string("."));
    return cfg;
}

JobConfig parse_job_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_job_config_json(j);
}

// ----------------------------------------------------------------- tasks ----

namespace {

struct CsvArtifact {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct TaskOutput {
    Json block;
    std::vector<CheckResult> checks;
    std::vector<CsvArtifact> csvs;
};

SearchConfig search_config_from(const Json& p, uint64_t seed) {
    SearchConfig sc;
    sc.pool_radius = p.value("pool_radius", 2);
    sc.max_subset = p.value("max_subset", (long long)0);
    if (p.contains("strategies"))
        sc.strategies = p.at("strategies").get<std::vector<std::string>>();
    sc.seed = p.value("seed", seed);
    sc.local_steps = p.value("local_steps", 1000);
    return sc;
}

Json set_echo(const Group& g, const SymmetricSet& s, const Json& descriptor) {
    Json j;
    j["descriptor"] = descriptor;
    j["size"] = s.size();
    j["contains_identity"] = s.contains_identity;
    if (s.size() <= 32) {
        Json elems = Json::array();
        for (const Element& e : s.elems) elems.push_back(g.element_str(e));
        j["elements"] = elems;
    }
    return j;
}

TaskOutput task_invariants(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("invariants", Json::object());
    SearchConfig sc = search_config_from(p, cfg.seed);
    TaskOutput out;
    out.block = Json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i) {
        const SymmetricSet& s = cfg.sets[i];
        CheegerResult c = cheeger_upper(g, s, sc);
        Json b;
        b["set"] = set_echo(g, s, cfg.set_descriptors[i]);
        b["h"] = tagged(c.h, c.exact ? kExact : kUpperBound);
        b["e"] = tagged(c.e, c.exact ? kExact : kLowerBound);
        b["mad"] = tagged(c.mad, c.exact ? kExact : kLowerBound);
        b["pool_optimal"] = c.pool_optimal;
        b["candidates_evaluated"] = c.candidates_evaluated;
        b["witness_size"] = c.witness.size();
        if (!c.note.empty()) b["note"] = c.note;
        if (c.witness.size() <= 64) {
            Json w = Json::array();
            for (const Element& e : c.witness) w.push_back(g.element_str(e));
            b["witness"] = w;
        }
        SubsetStats st = subset_stats(g, s, c.witness);
        b["witness_stats"] = {{"boundary", st.boundary},
                              {"internal_edges", st.internal_edges},
                              {"loops", st.loops}};
        out.checks.push_back(
            {"count-identity", "|F||S| = boundary + 2*internal - loops",
             st.count_identity_holds,
             "witness of set " + std::to_string(i)});
        Rational size((long long)s.size());
        out.checks.push_back({"mad-relation", "mad = |S| - h as exact rationals",
                              c.mad == size - c.h, "set " + std::to_string(i)});
        if (auto ah = analytic_h(g, s)) {
            bool ok = !(c.h < *ah);
            out.checks.push_back({"cheeger-upper-valid",
                                  "search bound h_ub >= documented exact h",
                                  ok,
                                  "h_ub=" + c.h.str() + " h=" + ah->str()});
            b["h_analytic"] = tagged(*ah, kAnalytic);
        }
        out.block.push_back(b);
    }
    return out;
}

TaskOutput task_spectral(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("spectral", Json::object());
    int k_max = p.value("k_max", 6);
    std::vector<int> radii = p.value("compression_radii", std::vector<int>{1, 2, 3});
    TaskOutput out;
    out.block = Json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i) {
        const SymmetricSet& s = cfg.sets[i];
        Json b;
        b["set"] = set_echo(g, s, cfg.set_descriptors[i]);
        auto rows = return_probability_bounds(g, s, k_max);
        Json rj = Json::array();
        CsvArtifact csv{"spectral_bounds_set" + std::to_string(i) + ".csv",
                        {"steps", "bound", "probability", "mode"},
                        {}};
        bool monotone = true, conserved = true;
        double best = 0, prev = 0;
        for (auto& r : rows) {
            Json row;
            row["steps"] = r.steps;
            row["probability"] = tagged(r.probability, r.exact ? kExact : kLowerBound);
            if (r.exact) row["count"] = r.count;
            row["bound"] = tagged(r.bound, kLowerBound);
            rj.push_back(row);
            csv.rows.push_back({std::to_string(r.steps), format_double(r.bound),
                                format_double(r.probability),
                                r.exact ? "exact" : "float"});
            if (r.bound < prev * (1.0 - 1e-12)) monotone = false;
            prev = r.bound;
            best = std::max(best, r.bound);
            if (r.exact) conserved = conserved && r.conserved;
        }
        b["return_bounds"] = rj;
        out.csvs.push_back(csv);
        out.checks.push_back({"root-monotone",
                              "p_{2k}(e)^{1/2k} nondecreasing in k", monotone,
                              "set " + std::to_string(i)});
        out.checks.push_back({"mass-conservation",
                              "sum_x mu^{*2k}(x) = 1 exactly in integer mode",
                              conserved, "set " + std::to_string(i)});

        std::string note;
        auto rho = analytic_rho(g, s, &note);
        if (rho) {
            b["rho_analytic"] = tagged(*rho, kAnalytic);
            b["rho_note"] = note;
            out.checks.push_back({"bounds-below-analytic",
                                  "return bounds <= exact spectral radius",
                                  best <= *rho + 1e-10, format_double(best)});
            out.checks.push_back(
                {"kesten-lower", "rho >= sqrt(|S|-1)/|S|",
                 *rho >= kesten_lower_bound(s.size()) - 1e-12, format_double(*rho)});
        } else {
            b["rho_analytic"] = nullptr;
        }
        b["rho_lower_bound"] = tagged(best, kLowerBound);

        Json cj = Json::array();
        FunctionD ind = indicator(s);
        double prevc = 0;
        bool cmono = true;
        for (int r : radii) {
            bool exact = false;
            double v = operator_norm_lb(g, s, ind, r, &exact);
            Json row;
            row["radius"] = r;
            row["norm"] = tagged(v, exact ? kExact : kLowerBound);
            cj.push_back(row);
            if (v < prevc * (1.0 - 1e-9)) cmono = false;
            prevc = v;
        }
        b["compression"] = cj;
        out.checks.push_back({"compression-monotone",
                              "compression norms nondecreasing in radius", cmono,
                              "set " + std::to_string(i)});

        try {
            MoharReport m = mohar_check(g, s);
            Json mj;
            mj["left"] = tagged(m.left, kAnalytic);
            mj["h"] = tagged(m.h, kAnalytic);
            mj["right"] = tagged(m.right, kAnalytic);
            mj["left_slack"] = m.left_slack;
            mj["right_slack"] = m.right_slack;
            b["mohar"] = mj;
            out.checks.push_back({"cheeger-left", "|S|(1 - rho) <= h", m.left_holds,
                                  format_double(m.left_slack)});
            out.checks.push_back({"cheeger-right", "h <= |S| sqrt(1 - rho^2)",
                                  m.right_holds, format_double(m.right_slack)});
            out.checks.push_back({"e-rho-forms", "e <= rho and e >= rho^2/2",
                                  m.e_le_rho && m.e_ge_half_rho2,
                                  format_double(m.e)});
        } catch (const std::domain_error&) {
            b["mohar"] = nullptr;
            b["mohar_note"] = "skipped: h and rho are not both exact here";
        }

        if (p.contains("rd")) {
            Json rd = p.at("rd");
            auto scan = rd_ratio_scan(g, s, rd.value("d_max", 3),
                                      rd.value("trials", 5), cfg.seed);
            Json sj = Json::array();
            CsvArtifact rcsv{"rd_ratio_set" + std::to_string(i) + ".csv",
                             {"d", "ball_size", "indicator_ratio", "max_random_ratio"},
                             {}};
            bool sane = true;
            for (auto& row : scan) {
                Json x;
                x["d"] = row.d;
                x["ball_size"] = row.ball_size;
                x["indicator_ratio"] = tagged(row.indicator_ratio, kLowerBound);
                x["max_random_ratio"] = tagged(row.max_random_ratio, kLowerBound);
                sj.push_back(x);
                rcsv.rows.push_back({std::to_string(row.d), std::to_string(row.ball_size),
                                     format_double(row.indicator_ratio),
                                     format_double(row.max_random_ratio)});
                sane = sane && row.sanity_ok;
            }
            b["rd_scan"] = sj;
            out.csvs.push_back(rcsv);
            out.checks.push_back({"rd-sanity", "ratio <= sqrt(support size)", sane,
                                  "set " + std::to_string(i)});
        }
        out.block.push_back(b);
    }
    return out;
}

TaskOutput task_littlewood(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("littlewood", Json::object());
    SearchConfig sc = search_config_from(p, cfg.seed);
    TaskOutput out;
    out.block = Json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i) {
        const SymmetricSet& s = cfg.sets[i];
        Json b;
        b["set"] = set_echo(g, s, cfg.set_descriptors[i]);
        LittlewoodEstimate est = nprime_lower(g, indicator(s), sc);
        if (est.value_exact)
            b["nprime"] = tagged(*est.value_exact, est.exact ? kExact : kLowerBound);
        else
            b["nprime"] = tagged(est.value, est.exact ? kExact : kLowerBound);
        b["witness_size"] = est.witness.size();

        if (g.is_finite() && est.exact) {
            SearchConfig esc = sc;
            esc.pool_radius = std::max(sc.pool_radius, 2 * (int)g.order());
            CheegerResult c = cheeger_upper(g, s, esc);
            Rational route2 = c.mad;  // |S| e(Gamma,S)
            bool equal = est.value_exact && *est.value_exact == route2;
            b["e_times_size"] = tagged(route2, kExact);
            out.checks.push_back({"nprime-identity",
                                  "N'(1_S) = |S| e(Gamma,S) exactly on finite groups",
                                  equal,
                                  est.value_exact ? est.value_exact->str() : "-"});
        }
        if (auto rho = analytic_rho(g, s)) {
            double opnorm = *rho * (double)s.size();
            out.checks.push_back({"nprime-le-opnorm",
                                  "N'(1_S) <= |S| rho (operator norm route)",
                                  est.value <= opnorm + 1e-9,
                                  format_double(est.value) + " <= " + format_double(opnorm)});
            b["opnorm_analytic"] = tagged(opnorm, kAnalytic);
        }

        Json boxp = p.value("box", Json::object());
        double bp = boxp.value("p", 2.0), bq = boxp.value("q", 1.0);
        BoxResult box = box_trick(indicator(s), bp, bq);
        Json bj;
        bj["p"] = bp;
        bj["q"] = bq;
        bj["height"] = box.height;
        bj["width"] = box.support.size();
        bj["q_norm"] = tagged(box.q_norm, kExact);
        bj["guarantee"] = tagged(box.guarantee, kAnalytic);
        b["box"] = bj;
        out.checks.push_back({"box-bound",
                              "||box||_q >= zeta(p/q)^{-1/p} ||f||_p",
                              box.satisfied, "set " + std::to_string(i)});

        if (g.kind() == GroupKind::free_group) {
            int trunc = p.value("t1_truncation", 5);
            DecompositionCertificate cert = free_t1_certificate(g, s, trunc);
            Json cj;
            cj["truncation"] = cert.truncation;
            cj["row_sup"] = cert.row_sup;
            cj["col_sup"] = cert.col_sup;
            cj["t1_bound"] = cert.t1_bound;
            b["t1_certificate"] = cj;
            if (is_standard_set(g, s))
                out.checks.push_back({"t1-cert-free-standard",
                                      "row and column sups both equal 1",
                                      cert.row_sup == 1 && cert.col_sup == 1,
                                      "bound " + std::to_string(cert.t1_bound)});
        }
        out.block.push_back(b);
    }
    return out;
}

TaskOutput task_cogrowth(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("cogrowth", Json::object());
    TaskOutput out;
    Json b;
    int m = p.value("m", 2);
    int k_max = p.value("k_max", 20);
    std::vector<Element> images;
    if (p.contains("images")) {
        for (const auto& wj : p.at("images"))
            images.push_back(g.evaluate(g.parse_word(wj.get<std::vector<std::string>>())));
    } else {
        for (int i = 0; i < m && i < g.generator_count(); ++i)
            images.push_back(g.generator(i));
        images.resize(m, g.generator(0));
    }
    CogrowthCounts counts = reduced_word_counts(m, images, g, k_max);
    Json cj = Json::array();
    CsvArtifact csv{"cogrowth_counts.csv", {"k", "c_k"}, {}};
    bool conserved = true;
    for (size_t k = 1; k <= counts.counts.size(); ++k) {
        cj.push_back({{"k", k}, {"c_k", counts.counts[k - 1].str()}});
        csv.rows.push_back({std::to_string(k), counts.counts[k - 1].str()});
        conserved = conserved && counts.conserved[k - 1];
    }
    b["m"] = m;
    b["k_max"] = k_max;
    b["counts"] = cj;
    out.csvs.push_back(csv);
    out.checks.push_back({"cogrowth-conservation",
                          "sum_g counts_k(g) = 2m(2m-1)^{k-1} exactly", conserved,
                          "k up to " + std::to_string(k_max)});

    CogrowthEstimate est = cogrowth_estimate(counts);
    Json ej;
    ej["trivial_kernel"] = est.trivial_kernel;
    if (!est.trivial_kernel) {
        ej["alpha_root"] = tagged(est.alpha_root, kLowerBound);
        ej["alpha_ratio"] = tagged(est.alpha_ratio, "estimate");
        ej["ratio_k"] = est.ratio_k;
        out.checks.push_back({"cogrowth-range",
                              "sqrt(2m-1) <= alpha_hat <= 2m-1",
                              est.within_lower && est.within_upper,
                              format_double(est.alpha_ratio)});
        if (est.ratio_available) {
            GrigorchukResult gr = grigorchuk_rho(
                std::min(std::max(est.alpha_ratio, std::sqrt(2.0 * m - 1.0)),
                         2.0 * m - 1.0),
                m);
            Json gj;
            gj["rho"] = tagged(gr.rho, "estimate");
            gj["weak_bound"] = tagged(gr.weak_bound, kUpperBound);
            gj["at_lower_boundary"] = gr.at_lower_boundary;
            ej["grigorchuk"] = gj;
            out.checks.push_back({"grigorchuk-weak-bound", "rho <= alpha/m (clamped at 1)",
                                  gr.rho <= gr.weak_bound + 1e-9,
                                  format_double(gr.rho)});
            if (g.is_finite() && k_max >= 20)
                out.checks.push_back({"grigorchuk-finite-consistency",
                                      "finite target: formula value near 1",
                                      std::fabs(gr.rho - 1.0) <= 0.02,
                                      format_double(gr.rho)});
        }
    }
    b["estimate"] = ej;

    if (p.contains("burnside")) {
        Json bp = p.at("burnside");
        BurnsideBounds bb = burnside_bounds(
            bp.value("m", 2), bp.value("a", (long long)665),
            bp.contains("delta") ? std::optional<double>(bp.at("delta").get<double>())
                                 : std::nullopt);
        Json bj;
        bj["m"] = bb.m;
        bj["a"] = bb.a;
        bj["delta"] = bb.delta;
        bj["alpha_ub"] = tagged(bb.alpha_ub, kUpperBound);
        bj["rho_ub"] = tagged(bb.rho_ub, kUpperBound);
        bj["r_lb"] = tagged(bb.r_lb, kCited);
        bj["lit_lb"] = tagged(bb.lit_lb, kCited);
        b["burnside"] = bj;
        out.checks.push_back({"burnside-constants",
                              "r lower bound 1/3, exponent lower bound 3/2",
                              bb.r_lb == Rational(1, 3) && bb.lit_lb == Rational(3, 2),
                              ""});
    }
    out.block = b;
    return out;
}

TaskOutput task_forest(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("forest", Json::object());
    int samples = p.value("samples", 10000);
    std::vector<double> ps = p.value("p_values", std::vector<double>{1.0, 2.0});
    TaskOutput out;
    out.block = Json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i) {
        const SymmetricSet& s = cfg.sets[i];
        SimpleGraph graph = cayley_graph(g, s);
        ForestMarginals fm = forest_marginals(g, graph);
        Json b;
        b["set"] = set_echo(g, s, cfg.set_descriptors[i]);
        b["vertices"] = graph.n;
        b["edges"] = graph.edges.size();
        Json fj = Json::array();
        for (auto& [e, v] : fm.f)
            fj.push_back({{"element", g.element_str(e)}, {"marginal", v}});
        b["f_mu"] = fj;
        b["deg"] = tagged(fm.deg, kExact);
        b["width"] = fm.width;
        b["t1_bound"] = tagged(2.0, kCited);
        b["transitivity_deviation"] = fm.transitivity_deviation;
        CsvArtifact csv{"forest_marginals_set" + std::to_string(i) + ".csv",
                        {"u", "v", "marginal", "mc_marginal"},
                        {}};
        auto mc = monte_carlo_marginals(graph, samples, cfg.seed, cfg.threads);
        bool mc_ok = true, sum_ok =
            std::fabs(fm.edge_marginals.total - (graph.n - 1)) <= 1e-8;
        for (size_t e = 0; e < graph.edges.size(); ++e) {
            double exact = fm.edge_marginals.edge_marginal[e];
            double se = std::sqrt(std::max(exact * (1 - exact), 0.0) / samples);
            if (std::fabs(mc[e] - exact) > 4 * se + 1e-9) mc_ok = false;
            csv.rows.push_back({std::to_string(graph.edges[e].first),
                                std::to_string(graph.edges[e].second),
                                format_double(exact), format_double(mc[e])});
        }
        out.csvs.push_back(csv);
        out.checks.push_back({"ust-marginal-sum",
                              "sum of edge marginals = |V| - 1", sum_ok,
                              format_double(fm.edge_marginals.total)});
        out.checks.push_back({"ust-exact-vs-mc",
                              "Monte Carlo marginals within 4 standard errors",
                              mc_ok, std::to_string(samples) + " samples"});
        Json ineq = Json::array();
        bool holder_ok = true;
        for (double pv : ps) {
            ForestInequalityReport fr = forest_inequality_check(fm, pv);
            ineq.push_back({{"p", pv},
                            {"lhs", fr.lhs},
                            {"rhs", fr.rhs},
                            {"slack", fr.slack}});
            holder_ok = holder_ok && fr.holds;
        }
        b["inequality"] = ineq;
        out.checks.push_back({"forest-holder",
                              "||f||_p >= deg * width^{-(p-1)/p}", holder_ok,
                              "set " + std::to_string(i)});
        out.block.push_back(b);
    }
    return out;
}

TaskOutput task_colour(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("colour", Json::object());
    int radius = p.value("radius", 3);
    double alpha = p.value("alpha", 2.0);
    TaskOutput out;
    out.block = Json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i) {
        const SymmetricSet& s = cfg.sets[i];
        ColourCorReport rep = colourcor_experiment(g, s, alpha, radius);
        Json b;
        b["set"] = set_echo(g, s, cfg.set_descriptors[i]);
        b["radius"] = radius;
        b["alpha"] = alpha;
        b["vertices"] = rep.colouring.vertices;
        b["colours_used"] = rep.colouring.colours_used;
        b["degeneracy"] = rep.colouring.degeneracy;
        b["target"] = rep.target;
        b["hit"] = rep.hit;
        out.checks.push_back({"colouring-proper",
                              "assignment verified proper by full edge scan",
                              rep.colouring.proper, "set " + std::to_string(i)});
        // mad bound from the isoperimetric layer, identity stripped
        std::vector<Element> stripped;
        for (const Element& e : s.elems)
            if (!(e == g.identity())) stripped.push_back(e);
        SymmetricSet s2 = make_symmetric_set(g, std::move(stripped));
        SearchConfig sc;
        sc.pool_radius = std::min(radius, 3);
        sc.seed = cfg.seed;
        if (g.kind() == GroupKind::free_abelian) sc.strategies.push_back("boxes");
        CheegerResult c = cheeger_upper(g, s2, sc);
        long long floor_mad = c.mad.num() / c.mad.den();
        b["mad_bound"] = tagged(c.mad, c.exact ? kExact : kLowerBound);
        out.checks.push_back({"colouring-mad-bound",
                              "colours <= floor(mad) + 1 with mad = |S| e",
                              rep.colouring.colours_used <= floor_mad + 1,
                              std::to_string(rep.colouring.colours_used) + " vs " +
                                  std::to_string(floor_mad + 1)});
        CsvArtifact csv{"colouring_set" + std::to_string(i) + ".csv",
                        {"vertex", "colour"},
                        {}};
        SimpleGraph graph = ball_induced_graph(g, s2, radius);
        for (int v = 0; v < graph.n; ++v)
            csv.rows.push_back({graph.vertex_elems.empty()
                                    ? std::to_string(v)
                                    : g.element_str(graph.vertex_elems[v]),
                                std::to_string(rep.colouring.assignment[v])});
        out.csvs.push_back(csv);
        out.block.push_back(b);
    }
    return out;
}

TaskOutput task_exponents(const JobConfig& cfg) {
    const Group& g = *cfg.group;
    Json p = cfg.params.value("exponents", Json::object());
    TaskOutput out;

    std::vector<SymmetricSet> family;
    Json fam = p.value("family", Json::object({{"kind", "balls"}, {"radii", {1, 2}}}));
    std::string fkind = fam.value("kind", "balls");
    if (fkind == "balls") {
        for (int r : fam.value("radii", std::vector<int>{1, 2}))
            family.push_back(symmetric_ball(g, r));
    } else if (fkind == "spheres") {
        for (int r : fam.value("radii", std::vector<int>{1, 2}))
            family.push_back(symmetric_sphere(g, r));
    } else if (fkind == "boxes") {
        for (int k : fam.value("sides", std::vector<int>{1, 2}))
            family.push_back(box_set(g, k));
    } else if (fkind == "powers") {
        SymmetricSet base = standard_set(g);
        for (int k : fam.value("k_list", std::vector<int>{1, 2}))
            family.push_back(symmetric_power(g, base, k));
    } else if (fkind == "sets") {
        for (size_t i = 0; i < cfg.sets.size(); ++i) family.push_back(cfg.sets[i]);
    } else {
        throw ConfigError("unknown exponent family '" + fkind + "'");
    }

    ExponentConfig ec;
    ec.cheeger = search_config_from(p, cfg.seed);
    if (g.kind() == GroupKind::free_abelian) ec.cheeger.strategies.push_back("boxes");
    ec.k_max_returns = p.value("k_max", 5);
    ExponentReport rep = exponent_terms(g, family, ec);

    Json terms = Json::array();
    CsvArtifact csv{"exponent_terms.csv", {"set_size", "eta_term", "r_term"}, {}};
    bool sandwich_ok = true;
    for (const ExponentTerm& t : rep.terms) {
        Json tj;
        tj["set_size"] = t.set_size;
        tj["e"] = tagged(t.e_value, t.e_exact ? kExact : kLowerBound);
        tj["rho"] = tagged(t.rho_value, t.rho_exact ? kExact : kLowerBound);
        tj["eta_term"] = tagged(t.eta_term, t.e_exact ? kExact : kUpperBound);
        tj["r_term"] = tagged(t.r_term, t.rho_exact ? kExact : kUpperBound);
        if (t.sandwich_checked) {
            tj["sandwich_ok"] = t.sandwich_ok;
            sandwich_ok = sandwich_ok && t.sandwich_ok;
        }
        terms.push_back(tj);
        csv.rows.push_back({std::to_string(t.set_size), format_double(t.eta_term),
                            format_double(t.r_term)});
    }
    out.csvs.push_back(csv);
    Json b;
    b["terms"] = terms;
    Json curve = Json::array();
    for (auto& [n, v] : rep.running_eta) curve.push_back({{"min_size", n}, {"eta_sup", v}});
    b["running_eta"] = curve;
    b["eta_hat"] = tagged(rep.eta_hat, "family estimate");
    b["r_hat"] = tagged(rep.r_hat, "family estimate");
    b["lit_estimate"] = tagged(rep.lit_estimate, "family estimate");
    b["direction_note"] = rep.direction_note;
    out.checks.push_back({"exponent-sandwich",
                          "-ln rho/ln|S| <= -ln e/ln|S| <= (-2 ln rho + ln 2)/ln|S|",
                          sandwich_ok, "exact instances"});

    Classification cls = classify(rep, group_facts(g));
    Json cj;
    cj["band"] = cls.band;
    cj["statements"] = cls.statements;
    if (cls.chain_checked) cj["chain_ok"] = cls.chain_ok;
    b["classification"] = cj;
    out.block = b;
    return out;
}

TaskOutput task_verify(const JobConfig& cfg) {
    TaskOutput out;
    Json results = Json::array();
    for (size_t i = 0; i < cfg.sets.size(); ++i) {
        auto checks = verify_instance(*cfg.group, cfg.sets[i], cfg.seed);
        for (auto& c : checks) {
            c.details = "set " + std::to_string(i) +
                        (c.details.empty() ? "" : "; " + c.details);
            results.push_back(to_json(c));
            out.checks.push_back(c);
        }
    }
    out.block = results;
    return out;
}

} // namespace

// ------------------------------------------------------------- execution ----

JobResult execute_job(const JobConfig& cfg) {
    JobResult res;
    res.report["toolkit"] = {{"name", kToolkitName}, {"version", kToolkitVersion}};
    res.report["config"] = cfg.raw;
    res.report["group"] = cfg.group->descriptor();
    res.report["group_description"] = cfg.group->describe();
    res.report["seed"] = cfg.seed;
    res.report["threads"] = cfg.threads;
    Json tasks = Json::object();
    Json timings = Json::object();
    std::vector<CsvArtifact> csvs;

    for (const std::string& name : cfg.tasks) {
        auto t0 = std::chrono::steady_clock::now();
        TaskOutput out;
        try {
            if (name == "invariants") out = task_invariants(cfg);
            else if (name == "spectral") out = task_spectral(cfg);
            else if (name == "littlewood") out = task_littlewood(cfg);
            else if (name == "cogrowth") out = task_cogrowth(cfg);
            else if (name == "forest") out = task_forest(cfg);
            else if (name == "colour") out = task_colour(cfg);
            else if (name == "exponents") out = task_exponents(cfg);
            else if (name == "verify") out = task_verify(cfg);
        } catch (const std::exception& e) {
            out.block = Json{{"error", e.what()}};
            out.checks.push_back({"task-" + name, "task completed without errors",
                                  false, e.what()});
        }
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        tasks[name] = out.block;
        timings[name] = ms;
        for (auto& c : out.checks) res.checks.push_back(c);
        for (auto& c : out.csvs) csvs.push_back(c);
    }
    res.report["tasks"] = tasks;
    Json checks = Json::array();
    for (const auto& c : res.checks) {
        checks.push_back(to_json(c));
        res.all_pass = res.all_pass && c.pass;
    }
    res.report["checks"] = checks;
    res.report["all_checks_pass"] = res.all_pass;
    res.report["timings_ms"] = timings;

    // CSV artifacts ride along for run_job to write
    res.report["_csv_artifacts"] = Json::array();
    for (const auto& c : csvs) {
        Json j;
        j["name"] = c.name;
        Json hdr = Json::array();
        for (auto& h : c.header) hdr.push_back(h);
        j["header"] = hdr;
        Json rows = Json::array();
        for (auto& r : c.rows) {
            Json row = Json::array();
            for (auto& v : r) row.push_back(v);
            rows.push_back(row);
        }
        j["rows"] = rows;
        res.report["_csv_artifacts"].push_back(j);
    }
    return res;
}

int run_job(const std::string& config_path, const std::string& out_override,
            std::optional<int> threads_override, std::optional<uint64_t> seed_override,
            std::ostream& log) {
    JobConfig cfg;
    try {
        cfg = parse_job_config(config_path);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return 3;
    }
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (threads_override) cfg.threads = *threads_override;
    if (seed_override) cfg.seed = *seed_override;

    JobResult res = execute_job(cfg);

    try {
        fs::create_directories(cfg.output_dir);
        Json csvs = res.report["_csv_artifacts"];
        res.report.erase("_csv_artifacts");
        write_text_file((fs::path(cfg.output_dir) / "report.json").string(),
                        res.report.dump(2) + "\n");
        for (const auto& c : csvs) {
            std::vector<std::string> header;
            for (auto& h : c.at("header")) header.push_back(h.get<std::string>());
            std::vector<std::vector<std::string>> rows;
            for (auto& r : c.at("rows")) {
                std::vector<std::string> row;
                for (auto& v : r) row.push_back(v.get<std::string>());
                rows.push_back(row);
            }
            write_csv((fs::path(cfg.output_dir) / c.at("name").get<std::string>()).string(),
                      header, rows);
        }
    } catch (const std::exception& e) {
        log << "i/o error: " << e.what() << "\n";
        return 3;
    }

    int failures = 0;
    for (const auto& c : res.checks)
        if (!c.pass) {
            ++failures;
            log << "FAIL " << c.id << ": " << c.description
                << (c.details.empty() ? "" : " [" + c.details + "]") << "\n";
        }
    log << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed")
        << "; report written to " << cfg.output_dir << "/report.json\n";
    return failures == 0 ? 0 : 1;
}

int selfcheck(std::ostream& out) {
    int failures = 0;
    auto zoo = instance_zoo();
    for (const auto& inst : zoo) {
        auto checks = verify_instance(inst.group, inst.set, 1);
        for (const auto& c : checks) {
            out << (c.pass ? "[PASS] " : "[FAIL] ") << inst.name << " " << c.id
                << " — " << c.description
                << (c.details.empty() ? "" : " (" + c.details + ")") << "\n";
            if (!c.pass) ++failures;
        }
    }
    out << (failures == 0 ? "selfcheck passed"
                          : "selfcheck: " + std::to_string(failures) + " failure(s)")
        << "\n";
    return failures == 0 ? 0 : 1;
}

} // namespace cayleyiso
