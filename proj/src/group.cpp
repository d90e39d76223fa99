#include "cayleyiso/group.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace cayleyiso {

std::string kind_name(GroupKind k) {
    switch (k) {
        case GroupKind::free_group: return "free";
        case GroupKind::free_abelian: return "free_abelian";
        case GroupKind::cyclic: return "cyclic";
        case GroupKind::finite_table: return "finite_table";
        case GroupKind::permutation: return "permutation";
        case GroupKind::free_product_cyclic: return "free_product_cyclic";
        case GroupKind::lamplighter: return "lamplighter";
    }
    return "?";
}

namespace {

std::vector<std::string> letter_names(int count) {
    static const char* abc = "abcdefghijklmnopqrstuvwxyz";
    std::vector<std::string> out;
    for (int i = 0; i < count; ++i) {
        if (count <= 26) out.push_back(std::string(1, abc[i]));
        else out.push_back("a" + std::to_string(i + 1));
    }
    return out;
}

long long posmod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

} // namespace

Group Group::free_group(int rank) {
    if (rank < 1) throw std::invalid_argument("free group rank must be >= 1");
    Group g;
    g.kind_ = GroupKind::free_group;
    g.rank_ = rank;
    g.gen_names_ = letter_names(rank);
    return g;
}

Group Group::free_abelian(int rank) {
    if (rank < 1) throw std::invalid_argument("free abelian rank must be >= 1");
    Group g;
    g.kind_ = GroupKind::free_abelian;
    g.rank_ = rank;
    if (rank <= 4) {
        static const char* xyzw[] = {"x", "y", "z", "w"};
        for (int i = 0; i < rank; ++i) g.gen_names_.push_back(xyzw[i]);
    } else {
        for (int i = 0; i < rank; ++i) g.gen_names_.push_back("x" + std::to_string(i + 1));
    }
    return g;
}

Group Group::cyclic(long n) {
    if (n < 1) throw std::invalid_argument("cyclic order must be >= 1");
    Group g;
    g.kind_ = GroupKind::cyclic;
    g.n_ = n;
    g.gen_names_ = {"t"};
    return g;
}

Group Group::finite_table(std::vector<std::vector<int>> table, uint64_t seed) {
    Group g;
    g.kind_ = GroupKind::finite_table;
    g.table_ = std::move(table);
    g.n_ = (long)g.table_.size();
    for (long i = 0; i < g.n_; ++i) g.gen_names_.push_back("g" + std::to_string(i));
    g.validate_table(seed);
    return g;
}

Group Group::finite_table_from_csv(const std::string& path, uint64_t seed) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open multiplication table: " + path);
    std::vector<std::vector<int>> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<int> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stoi(cell));
        table.push_back(std::move(row));
    }
    return finite_table(std::move(table), seed);
}

void Group::validate_table(uint64_t seed) {
    long n = n_;
    if (n == 0) throw std::invalid_argument("empty multiplication table");
    for (auto& row : table_) {
        if ((long)row.size() != n)
            throw std::invalid_argument("multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw std::invalid_argument("multiplication table entry out of range");
    }
    // identity: a two-sided unit must exist
    long id = -1;
    for (long e = 0; e < n; ++e) {
        bool ok = true;
        for (long h = 0; h < n && ok; ++h)
            ok = table_[e][h] == (int)h && table_[h][e] == (int)h;
        if (ok) { id = e; break; }
    }
    if (id != 0) {
        if (id < 0) throw std::invalid_argument("multiplication table has no identity");
        // canonical tables put the identity at index 0; re-index if not
        std::vector<int> perm(n);
        for (long i = 0; i < n; ++i) perm[i] = (int)i;
        std::swap(perm[0], perm[id]);
        std::vector<std::vector<int>> t2(n, std::vector<int>(n));
        std::vector<int> inv_perm(n);
        for (long i = 0; i < n; ++i) inv_perm[perm[i]] = (int)i;
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                t2[a][b] = inv_perm[table_[perm[a]][perm[b]]];
        table_ = std::move(t2);
    }
    inv_table_.assign(n, -1);
    for (long a = 0; a < n; ++a) {
        for (long b = 0; b < n; ++b)
            if (table_[a][b] == 0 && table_[b][a] == 0) { inv_table_[a] = (int)b; break; }
        if (inv_table_[a] < 0)
            throw std::invalid_argument("multiplication table has a non-invertible element");
    }
    if (n <= 64) {
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                for (long c = 0; c < n; ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw std::invalid_argument("multiplication table is not associative");
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<long> d(0, n - 1);
        for (int i = 0; i < 10000; ++i) {
            long a = d(rng), b = d(rng), c = d(rng);
            if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                throw std::invalid_argument("multiplication table is not associative");
        }
    }
}

Group Group::permutation(int degree, std::vector<std::vector<int>> gens) {
    if (degree < 1) throw std::invalid_argument("permutation degree must be >= 1");
    if (gens.empty()) throw std::invalid_argument("permutation group needs generators");
    for (auto& p : gens) {
        if ((int)p.size() != degree)
            throw std::invalid_argument("permutation image list has wrong length");
        std::vector<bool> seen(degree, false);
        for (int v : p) {
            if (v < 0 || v >= degree || seen[v])
                throw std::invalid_argument("not a permutation image list");
            seen[v] = true;
        }
    }
    Group g;
    g.kind_ = GroupKind::permutation;
    g.degree_ = degree;
    g.perm_gens_ = std::move(gens);
    for (size_t i = 0; i < g.perm_gens_.size(); ++i)
        g.gen_names_.push_back("s" + std::to_string(i));
    return g;
}

Group Group::free_product_cyclic(std::vector<int> orders) {
    if (orders.empty()) throw std::invalid_argument("free product needs at least one factor");
    for (int q : orders)
        if (q < 2) throw std::invalid_argument("free product factor orders must be >= 2");
    Group g;
    g.kind_ = GroupKind::free_product_cyclic;
    g.orders_ = std::move(orders);
    g.gen_names_ = letter_names((int)g.orders_.size());
    return g;
}

Group Group::lamplighter() {
    Group g;
    g.kind_ = GroupKind::lamplighter;
    g.gen_names_ = {"t", "a"};
    return g;
}

Element Group::identity() const {
    switch (kind_) {
        case GroupKind::free_group:
        case GroupKind::free_product_cyclic: return {};
        case GroupKind::free_abelian: return {std::vector<int32_t>(rank_, 0)};
        case GroupKind::cyclic:
        case GroupKind::finite_table: return {{0}};
        case GroupKind::permutation: {
            Element e;
            e.code.resize(degree_);
            for (int i = 0; i < degree_; ++i) e.code[i] = i;
            return e;
        }
        case GroupKind::lamplighter: return {{0}};
    }
    return {};
}

Element Group::mul(const Element& a, const Element& b) const {
    switch (kind_) {
        case GroupKind::free_group: {
            Element r = a;
            for (int32_t x : b.code) {
                if (!r.code.empty() && r.code.back() == -x) r.code.pop_back();
                else r.code.push_back(x);
            }
            return r;
        }
        case GroupKind::free_abelian: {
            Element r = a;
            for (int i = 0; i < rank_; ++i) r.code[i] += b.code[i];
            return r;
        }
        case GroupKind::cyclic: return {{(int32_t)posmod((long long)a.code[0] + b.code[0], n_)}};
        case GroupKind::finite_table: return {{(int32_t)table_[a.code[0]][b.code[0]]}};
        case GroupKind::permutation: {
            Element r;
            r.code.resize(degree_);
            for (int i = 0; i < degree_; ++i) r.code[i] = a.code[b.code[i]];
            return r;
        }
        case GroupKind::free_product_cyclic: {
            Element r = a;
            for (size_t j = 0; j + 1 < b.code.size(); j += 2) {
                int g = b.code[j], e = b.code[j + 1];
                bool alive = true;
                if (!r.code.empty() && r.code[r.code.size() - 2] == g) {
                    int q = orders_[g];
                    int c = (r.code.back() + e) % q;
                    r.code.pop_back();
                    r.code.pop_back();
                    if (c == 0) alive = false;
                    else e = c;
                }
                if (alive) {
                    r.code.push_back(g);
                    r.code.push_back(e);
                }
            }
            return r;
        }
        case GroupKind::lamplighter: {
            int32_t k = a.code[0], l = b.code[0];
            Element r;
            r.code.push_back(k + l);
            // symmetric difference of a's lamps with b's lamps shifted by k
            size_t i = 1, j = 1;
            while (i < a.code.size() || j < b.code.size()) {
                int32_t av = i < a.code.size() ? a.code[i] : INT32_MAX;
                int32_t bv = j < b.code.size() ? b.code[j] + k : INT32_MAX;
                if (av < bv) { r.code.push_back(av); ++i; }
                else if (bv < av) { r.code.push_back(bv); ++j; }
                else { ++i; ++j; }
            }
            return r;
        }
    }
    return {};
}

Element Group::inv(const Element& a) const {
    switch (kind_) {
        case GroupKind::free_group: {
            Element r;
            r.code.reserve(a.code.size());
            for (auto it = a.code.rbegin(); it != a.code.rend(); ++it) r.code.push_back(-*it);
            return r;
        }
        case GroupKind::free_abelian: {
            Element r = a;
            for (auto& v : r.code) v = -v;
            return r;
        }
        case GroupKind::cyclic: return {{(int32_t)posmod(-(long long)a.code[0], n_)}};
        case GroupKind::finite_table: return {{(int32_t)inv_table_[a.code[0]]}};
        case GroupKind::permutation: {
            Element r;
            r.code.resize(degree_);
            for (int i = 0; i < degree_; ++i) r.code[a.code[i]] = i;
            return r;
        }
        case GroupKind::free_product_cyclic: {
            Element r;
            for (size_t j = a.code.size(); j >= 2; j -= 2) {
                int g = a.code[j - 2], e = a.code[j - 1];
                r.code.push_back(g);
                r.code.push_back(orders_[g] - e);
            }
            return r;
        }
        case GroupKind::lamplighter: {
            int32_t k = a.code[0];
            Element r;
            r.code.push_back(-k);
            for (size_t i = 1; i < a.code.size(); ++i) r.code.push_back(a.code[i] - k);
            return r;
        }
    }
    return {};
}

Element Group::generator(int i) const {
    if (i < 0 || i >= generator_count())
        throw std::invalid_argument("generator index out of range");
    switch (kind_) {
        case GroupKind::free_group: return {{(int32_t)(i + 1)}};
        case GroupKind::free_abelian: {
            Element e;
            e.code.assign(rank_, 0);
            e.code[i] = 1;
            return e;
        }
        case GroupKind::cyclic: return {{(int32_t)(1 % n_)}};
        case GroupKind::finite_table: return {{(int32_t)i}};
        case GroupKind::permutation: {
            Element e;
            e.code.assign(perm_gens_[i].begin(), perm_gens_[i].end());
            return e;
        }
        case GroupKind::free_product_cyclic: return {{(int32_t)i, 1}};
        case GroupKind::lamplighter:
            return i == 0 ? Element{{1}} : Element{{0, 0}};
    }
    return {};
}

Element Group::evaluate(const Word& w) const {
    Element r = identity();
    for (const Letter& l : w) {
        if (l.gen < 0 || l.gen >= generator_count())
            throw std::invalid_argument("word letter outside the alphabet");
        Element g = generator(l.gen);
        r = mul(r, l.inverse ? inv(g) : g);
    }
    return r;
}

Word Group::parse_word(const std::vector<std::string>& letters) const {
    Word w;
    for (const std::string& tok : letters) {
        std::string name = tok;
        long long exp = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            name = tok.substr(0, caret);
            exp = std::stoll(tok.substr(caret + 1));
        }
        int gi = -1;
        for (int i = 0; i < generator_count(); ++i)
            if (gen_names_[i] == name) { gi = i; break; }
        if (gi < 0) throw std::invalid_argument("unknown letter '" + name + "'");
        for (long long k = 0; k < std::llabs(exp); ++k)
            w.push_back({gi, exp < 0});
    }
    return w;
}

bool Group::is_finite() const {
    switch (kind_) {
        case GroupKind::cyclic:
        case GroupKind::finite_table:
        case GroupKind::permutation: return true;
        case GroupKind::free_product_cyclic: return orders_.size() == 1;
        default: return false;
    }
}

long Group::order() const {
    if (!is_finite()) throw std::domain_error("order() on an infinite group");
    switch (kind_) {
        case GroupKind::cyclic:
        case GroupKind::finite_table: return n_;
        case GroupKind::free_product_cyclic: return orders_[0];
        case GroupKind::permutation: return (long)elements().size();
        default: return -1;
    }
}

std::vector<Element> Group::elements() const {
    if (!is_finite()) throw std::domain_error("elements() on an infinite group");
    std::vector<Element> out;
    if (kind_ == GroupKind::cyclic || kind_ == GroupKind::finite_table) {
        for (long i = 0; i < n_; ++i) out.push_back({{(int32_t)i}});
        return out;
    }
    // closure under the standard letters
    ElementSet seen;
    std::vector<Element> frontier{identity()};
    seen.insert(frontier[0]);
    out.push_back(frontier[0]);
    std::vector<Element> gens;
    for (int i = 0; i < generator_count(); ++i) {
        gens.push_back(generator(i));
        gens.push_back(inv(generator(i)));
    }
    while (!frontier.empty()) {
        std::vector<Element> next;
        for (const Element& x : frontier)
            for (const Element& s : gens) {
                Element y = mul(x, s);
                if (seen.insert(y).second) {
                    out.push_back(y);
                    next.push_back(y);
                    if (out.size() > 2000000)
                        throw std::runtime_error("finite backend too large to enumerate");
                }
            }
        frontier = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string Group::element_str(const Element& e) const {
    switch (kind_) {
        case GroupKind::free_group: {
            if (e.code.empty()) return "e";
            std::string s;
            for (int32_t v : e.code) {
                s += gen_names_[std::abs(v) - 1];
                if (v < 0) s += "^-1";
                s += " ";
            }
            s.pop_back();
            return s;
        }
        case GroupKind::free_abelian: {
            std::string s = "(";
            for (int i = 0; i < rank_; ++i)
                s += std::to_string(e.code[i]) + (i + 1 < rank_ ? "," : "");
            return s + ")";
        }
        case GroupKind::cyclic: return std::to_string(e.code[0]);
        case GroupKind::finite_table: return "g" + std::to_string(e.code[0]);
        case GroupKind::permutation: {
            std::string s = "[";
            for (int i = 0; i < degree_; ++i)
                s += std::to_string(e.code[i]) + (i + 1 < degree_ ? " " : "");
            return s + "]";
        }
        case GroupKind::free_product_cyclic: {
            if (e.code.empty()) return "e";
            std::string s;
            for (size_t j = 0; j + 1 < e.code.size(); j += 2) {
                s += gen_names_[e.code[j]];
                if (e.code[j + 1] != 1) s += "^" + std::to_string(e.code[j + 1]);
                s += " ";
            }
            s.pop_back();
            return s;
        }
        case GroupKind::lamplighter: {
            std::string s = "{";
            for (size_t i = 1; i < e.code.size(); ++i)
                s += std::to_string(e.code[i]) + (i + 1 < e.code.size() ? "," : "");
            return s + "};" + std::to_string(e.code[0]);
        }
    }
    return "?";
}

std::string Group::describe() const {
    switch (kind_) {
        case GroupKind::free_group: return "free group of rank " + std::to_string(rank_);
        case GroupKind::free_abelian: return "free abelian group of rank " + std::to_string(rank_);
        case GroupKind::cyclic: return "cyclic group of order " + std::to_string(n_);
        case GroupKind::finite_table: return "finite group (table) of order " + std::to_string(n_);
        case GroupKind::permutation: return "permutation group on " + std::to_string(degree_) + " points";
        case GroupKind::free_product_cyclic: {
            std::string s = "free product of cyclic groups of orders ";
            for (size_t i = 0; i < orders_.size(); ++i)
                s += std::to_string(orders_[i]) + (i + 1 < orders_.size() ? ", " : "");
            return s;
        }
        case GroupKind::lamplighter: return "lamplighter group Z/2 wr Z";
    }
    return "?";
}

std::string Group::descriptor() const {
    std::string s = kind_name(kind_);
    switch (kind_) {
        case GroupKind::free_group:
        case GroupKind::free_abelian: return s + ":" + std::to_string(rank_);
        case GroupKind::cyclic: return s + ":" + std::to_string(n_);
        case GroupKind::finite_table: {
            uint64_t h = 1469598103934665603ull;
            for (auto& row : table_)
                for (int v : row) { h ^= (uint64_t)v; h *= 1099511628211ull; }
            return s + ":" + std::to_string(n_) + ":" + std::to_string(h);
        }
        case GroupKind::permutation: {
            s += ":" + std::to_string(degree_);
            for (auto& p : perm_gens_) {
                s += ":";
                for (int v : p) s += std::to_string(v) + ".";
            }
            return s;
        }
        case GroupKind::free_product_cyclic: {
            s += ":";
            for (size_t i = 0; i < orders_.size(); ++i)
                s += std::to_string(orders_[i]) + (i + 1 < orders_.size() ? "," : "");
            return s;
        }
        case GroupKind::lamplighter: return s;
    }
    return s;
}

SymmetricSet make_symmetric_set(const Group& g, std::vector<Element> elems) {
    if (elems.empty()) throw std::invalid_argument("symmetric set must be non-empty");
    std::sort(elems.begin(), elems.end());
    for (size_t i = 0; i + 1 < elems.size(); ++i)
        if (elems[i] == elems[i + 1])
            throw std::invalid_argument("symmetric set has duplicate elements");
    ElementSet set(elems.begin(), elems.end());
    for (const Element& e : elems)
        if (!set.count(g.inv(e)))
            throw std::invalid_argument("set is not closed under inversion");
    SymmetricSet s;
    s.contains_identity = set.count(g.identity()) > 0;
    s.elems = std::move(elems);
    return s;
}

std::vector<std::pair<Element, int>> ball_with_distances(const Group& g,
                                                         const SymmetricSet& s,
                                                         int radius) {
    if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
    std::vector<std::pair<Element, int>> out;
    ElementSet seen;
    std::vector<Element> frontier{g.identity()};
    seen.insert(frontier[0]);
    out.push_back({frontier[0], 0});
    for (int d = 1; d <= radius && !frontier.empty(); ++d) {
        std::vector<Element> next;
        for (const Element& x : frontier)
            for (const Element& e : s.elems) {
                Element y = g.mul(x, e);
                if (seen.insert(y).second) {
                    out.push_back({y, d});
                    next.push_back(y);
                }
            }
        frontier = std::move(next);
    }
    return out;
}

std::vector<Element> ball(const Group& g, const SymmetricSet& s, int radius) {
    auto bd = ball_with_distances(g, s, radius);
    std::vector<Element> out;
    out.reserve(bd.size());
    for (auto& [e, d] : bd) out.push_back(std::move(e));
    return out;
}

SymmetricSet standard_set(const Group& g) {
    std::vector<Element> elems;
    ElementSet seen;
    for (int i = 0; i < g.generator_count(); ++i) {
        for (Element e : {g.generator(i), g.inv(g.generator(i))}) {
            if (e == g.identity()) continue;
            if (seen.insert(e).second) elems.push_back(e);
        }
    }
    if (elems.empty()) throw std::invalid_argument("standard set is empty (trivial group)");
    return make_symmetric_set(g, std::move(elems));
}

bool is_standard_set(const Group& g, const SymmetricSet& s) {
    try {
        SymmetricSet std_s = standard_set(g);
        return std_s.elems == s.elems;
    } catch (const std::exception&) {
        return false;
    }
}

SymmetricSet symmetric_from_words(const Group& g, const std::vector<Word>& words) {
    std::vector<Element> elems;
    for (const Word& w : words) elems.push_back(g.evaluate(w));
    return make_symmetric_set(g, std::move(elems));
}

SymmetricSet symmetric_ball(const Group& g, int radius) {
    auto b = ball(g, standard_set(g), radius);
    std::vector<Element> elems;
    for (Element& e : b)
        if (!(e == g.identity())) elems.push_back(std::move(e));
    if (elems.empty()) throw std::invalid_argument("ball descriptor produced an empty set");
    return make_symmetric_set(g, std::move(elems));
}

SymmetricSet symmetric_sphere(const Group& g, int radius) {
    auto bd = ball_with_distances(g, standard_set(g), radius);
    std::vector<Element> elems;
    for (auto& [e, d] : bd)
        if (d == radius) elems.push_back(std::move(e));
    if (elems.empty()) throw std::invalid_argument("sphere descriptor produced an empty set");
    return make_symmetric_set(g, std::move(elems));
}

SymmetricSet symmetric_power(const Group& g, const SymmetricSet& s, int k) {
    if (k < 1) throw std::invalid_argument("power descriptor needs k >= 1");
    ElementSet cur(s.elems.begin(), s.elems.end());
    for (int j = 1; j < k; ++j) {
        ElementSet next;
        for (const Element& x : cur)
            for (const Element& e : s.elems) next.insert(g.mul(x, e));
        cur = std::move(next);
    }
    return make_symmetric_set(g, std::vector<Element>(cur.begin(), cur.end()));
}

SymmetricSet symmetric_random(const Group& g, int radius, int size, uint64_t seed,
                              bool with_identity) {
    if (size < 1) throw std::invalid_argument("random set size must be >= 1");
    auto pool = ball(g, standard_set(g), radius);
    std::vector<Element> candidates;
    for (Element& e : pool)
        if (!(e == g.identity())) candidates.push_back(std::move(e));
    if (candidates.empty()) throw std::invalid_argument("random descriptor has an empty pool");
    std::mt19937_64 rng(seed);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    ElementSet chosen;
    std::vector<Element> elems;
    if (with_identity) {
        elems.push_back(g.identity());
        chosen.insert(g.identity());
    }
    for (const Element& e : candidates) {
        if ((int)elems.size() >= size) break;
        if (chosen.count(e)) continue;
        Element ei = g.inv(e);
        chosen.insert(e);
        elems.push_back(e);
        if (!(ei == e) && chosen.insert(ei).second) elems.push_back(ei);
    }
    if (elems.empty()) throw std::invalid_argument("random descriptor produced an empty set");
    return make_symmetric_set(g, std::move(elems));
}

GroupFacts group_facts(const Group& g) {
    GroupFacts f;
    switch (g.kind()) {
        case GroupKind::cyclic:
        case GroupKind::finite_table:
        case GroupKind::permutation:
            f.finite = true;
            f.amenable = true;
            break;
        case GroupKind::free_abelian:
        case GroupKind::lamplighter:
            f.amenable = true;
            break;
        case GroupKind::free_group:
            if (g.free_rank() == 1) f.amenable = true;
            else f.free_subgroup = true;
            break;
        case GroupKind::free_product_cyclic: {
            if (g.is_finite()) { f.finite = true; f.amenable = true; }
            else {
                // C2 * C2 is virtually Z; every other free product of
                // cyclics contains a non-abelian free subgroup
                bool dihedral = false;
                if (!g.is_finite()) {
                    auto d = g.descriptor();
                    dihedral = d == "free_product_cyclic:2,2";
                }
                if (dihedral) f.amenable = true;
                else f.free_subgroup = true;
            }
            break;
        }
    }
    return f;
}

} // namespace cayleyiso
