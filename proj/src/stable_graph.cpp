#include "spingw/stable_graph.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <sstream>

#include "spingw/error.hpp"

namespace spingw {

namespace {

int mod(long a, int r) { return static_cast<int>(((a % r) + r) % r); }

} // namespace

void validate_structure(const DecoratedGraph &g)
{
    if (g.r < 2)
        throw DomainError("r must be at least 2");
    const int nv = static_cast<int>(g.vertices.size());
    for (int v = 0; v < nv; ++v) {
        if (g.vertices[v].genus < 0)
            throw DomainError("vertex " + std::to_string(v) + " has negative genus");
        if (g.vertices[v].cls < 0)
            throw DomainError("vertex " + std::to_string(v) + " has negative class");
    }
    auto check_mark = [&](int m, const std::string &where) {
        if (m < 0 || m >= g.r)
            throw DomainError("mark out of range 0..r-1 on " + where);
    };
    auto check_vertex = [&](int v, const std::string &where) {
        if (v < 0 || v >= nv)
            throw DomainError("vertex index out of range on " + where);
    };
    std::vector<bool> seen(g.tails.size() + 1, false);
    for (const auto &t : g.tails) {
        std::string where = "tail " + std::to_string(t.label);
        check_vertex(t.vertex, where);
        check_mark(t.mark, where);
        if (t.label < 1 || t.label > static_cast<int>(g.tails.size()) || seen[t.label])
            throw DomainError("tail labels must be exactly 1..n");
        seen[t.label] = true;
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto &e = g.edges[i];
        std::string where = "edge " + std::to_string(i);
        check_vertex(e.v1, where);
        check_vertex(e.v2, where);
        check_mark(e.mark1, where);
        check_mark(e.mark2, where);
    }
}

int valence(const DecoratedGraph &g, int v)
{
    int n = 0;
    for (const auto &t : g.tails)
        n += t.vertex == v;
    for (const auto &e : g.edges)
        n += (e.v1 == v) + (e.v2 == v);
    return n;
}

std::vector<int> component_ids(const DecoratedGraph &g)
{
    const int nv = static_cast<int>(g.vertices.size());
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto &e : g.edges)
        parent[find(e.v1)] = find(e.v2);
    std::vector<int> ids(nv, -1), root_id(nv, -1);
    int next = 0;
    for (int v = 0; v < nv; ++v) {
        int root = find(v);
        if (root_id[root] < 0)
            root_id[root] = next++;
        ids[v] = root_id[root];
    }
    return ids;
}

int component_count(const DecoratedGraph &g)
{
    auto ids = component_ids(g);
    return ids.empty() ? 0 : *std::max_element(ids.begin(), ids.end()) + 1;
}

int genus(const DecoratedGraph &g)
{
    int total = static_cast<int>(g.edges.size()) - static_cast<int>(g.vertices.size()) + component_count(g);
    for (const auto &v : g.vertices)
        total += v.genus;
    return total;
}

StabilityReport is_stable(const DecoratedGraph &g)
{
    StabilityReport report;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const auto &e = g.edges[i];
        if (mod(e.mark1 + e.mark2, g.r) != mod(g.r - 2, g.r)) {
            report.stable = false;
            report.diagnostics.push_back("edge congruence violated on edge " + std::to_string(i) + ": " +
                                         std::to_string(e.mark1) + " + " + std::to_string(e.mark2) +
                                         " != r-2 (mod " + std::to_string(g.r) + ")");
        }
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const auto &vx = g.vertices[v];
        if (vx.cls == 0 && 2 * vx.genus - 2 + valence(g, static_cast<int>(v)) <= 0) {
            report.stable = false;
            report.diagnostics.push_back("stability violated at vertex " + std::to_string(v) +
                                         ": class 0 with 2g-2+n <= 0");
        }
    }
    return report;
}

bool vertices_admissible(const DecoratedGraph &g)
{
    std::vector<long> sums(g.vertices.size(), 0);
    for (const auto &t : g.tails)
        sums[t.vertex] += t.mark;
    for (const auto &e : g.edges) {
        sums[e.v1] += e.mark1;
        sums[e.v2] += e.mark2;
    }
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        if (mod(static_cast<long>(g.r - 2) * (g.vertices[v].genus - 1) + sums[v], g.r) != 0)
            return false;
    return true;
}

DecoratedGraph stabilize(const DecoratedGraph &g) { return stabilize(g, [](int) { return 0; }); }

DecoratedGraph stabilize(const DecoratedGraph &g, const std::function<int(int)> &pushforward)
{
    validate_structure(g);
    DecoratedGraph work = g;
    for (auto &v : work.vertices) {
        v.cls = pushforward(v.cls);
        if (v.cls < 0)
            throw DomainError("pushforward produced a negative class");
    }

    // A component survives stabilization iff it has a nonzero class or 2g-2+n > 0.
    {
        auto ids = component_ids(work);
        const int nc = component_count(work);
        std::vector<int> edges(nc, 0), verts(nc, 0), tails(nc, 0), vg(nc, 0);
        std::vector<bool> has_class(nc, false);
        for (std::size_t v = 0; v < work.vertices.size(); ++v) {
            ++verts[ids[v]];
            vg[ids[v]] += work.vertices[v].genus;
            has_class[ids[v]] = has_class[ids[v]] || work.vertices[v].cls != 0;
        }
        for (const auto &e : work.edges)
            ++edges[ids[e.v1]];
        for (const auto &t : work.tails)
            ++tails[ids[t.vertex]];
        for (int c = 0; c < nc; ++c) {
            int gc = edges[c] - verts[c] + 1 + vg[c];
            if (!has_class[c] && 2 * gc - 2 + tails[c] <= 0)
                throw DomainError("unstabilizable: a component has 2g-2+n <= 0 and every class pushes to 0");
        }
    }

    std::vector<bool> alive(work.vertices.size(), true);
    std::vector<GraphEdge> edges = work.edges;
    std::vector<bool> edge_alive(edges.size(), true);

    auto unstable = [&](int v) {
        if (!alive[v] || work.vertices[v].cls != 0)
            return false;
        int n = 0;
        for (const auto &t : work.tails)
            n += t.vertex == v;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if (edge_alive[i])
                n += (edges[i].v1 == v) + (edges[i].v2 == v);
        return 2 * work.vertices[v].genus - 2 + n <= 0;
    };

    for (bool changed = true; changed;) {
        changed = false;
        for (int v = 0; v < static_cast<int>(work.vertices.size()); ++v) {
            if (!unstable(v))
                continue;
            // Far ends (vertex, mark) of the edges at v, then v's tails.
            std::vector<std::pair<int, int>> far;
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (!edge_alive[i])
                    continue;
                const auto &e = edges[i];
                if (e.v1 == v && e.v2 == v)
                    throw DomainError("unstabilizable: loop on an unstable vertex");
                if (e.v1 == v)
                    far.emplace_back(e.v2, e.mark2);
                else if (e.v2 == v)
                    far.emplace_back(e.v1, e.mark1);
                else
                    continue;
                edge_alive[i] = false;
            }
            std::vector<GraphTail *> own;
            for (auto &t : work.tails)
                if (t.vertex == v)
                    own.push_back(&t);

            if (far.size() == 2) {
                edges.push_back({far[0].first, far[0].second, far[1].first, far[1].second});
                edge_alive.push_back(true);
            } else if (far.size() == 1 && own.size() == 1) {
                own[0]->vertex = far[0].first;
            } else if (!(far.size() == 1 && own.empty())) {
                throw DomainError("unstabilizable: isolated unstable vertex");
            }
            alive[v] = false;
            changed = true;
        }
    }

    DecoratedGraph out;
    out.r = work.r;
    std::vector<int> renumber(work.vertices.size(), -1);
    for (std::size_t v = 0; v < work.vertices.size(); ++v) {
        if (!alive[v])
            continue;
        renumber[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(work.vertices[v]);
    }
    for (auto t : work.tails) {
        t.vertex = renumber[t.vertex];
        out.tails.push_back(t);
    }
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (!edge_alive[i])
            continue;
        auto e = edges[i];
        e.v1 = renumber[e.v1];
        e.v2 = renumber[e.v2];
        out.edges.push_back(e);
    }
    return out;
}

int dimension_D(const DecoratedGraph &g)
{
    validate_structure(g);
    const int alpha = component_count(g);
    long numer = static_cast<long>(g.r - 2) * (genus(g) - alpha);
    for (const auto &t : g.tails)
        numer += t.mark;
    if (numer % g.r != 0)
        throw DomainError("inadmissible type: (r-2)(g-alpha) + sum m is not divisible by r");
    return static_cast<int>(numer / g.r);
}

TypeReduction reduce_type(std::span<const int> marks, int r)
{
    if (r < 2)
        throw DomainError("r must be at least 2");
    TypeReduction out;
    for (int m : marks) {
        if (m < 0)
            throw DomainError("negative type entry");
        out.marks.push_back(m % r);
        out.quotients.push_back(m / r);
    }
    return out;
}

namespace {

/// Encoding of g with vertex v relabeled to perm[v].
std::vector<int> encode(const DecoratedGraph &g, const std::vector<int> &perm)
{
    const std::size_t nv = g.vertices.size();
    std::vector<int> code;
    code.reserve(2 * nv + 2 * g.tails.size() + 4 * g.edges.size());
    std::vector<GraphVertex> verts(nv);
    for (std::size_t v = 0; v < nv; ++v)
        verts[perm[v]] = g.vertices[v];
    for (const auto &v : verts) {
        code.push_back(v.genus);
        code.push_back(v.cls);
    }
    std::vector<GraphTail> tails = g.tails;
    std::sort(tails.begin(), tails.end(), [](const auto &a, const auto &b) { return a.label < b.label; });
    for (const auto &t : tails) {
        code.push_back(perm[t.vertex]);
        code.push_back(t.mark);
    }
    std::vector<std::array<int, 4>> edges;
    for (const auto &e : g.edges) {
        std::pair<int, int> a{perm[e.v1], e.mark1}, b{perm[e.v2], e.mark2};
        if (b < a)
            std::swap(a, b);
        edges.push_back({a.first, a.second, b.first, b.second});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto &e : edges)
        code.insert(code.end(), e.begin(), e.end());
    return code;
}

std::vector<int> best_permutation(const DecoratedGraph &g)
{
    const std::size_t nv = g.vertices.size();
    if (nv > 9)
        throw DomainError("canonicalization supports at most 9 vertices");
    std::vector<int> perm(nv);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best = perm;
    std::vector<int> best_code = encode(g, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        auto code = encode(g, perm);
        if (code < best_code) {
            best_code = std::move(code);
            best = perm;
        }
    }
    return best;
}

} // namespace

DecoratedGraph canonical_form(const DecoratedGraph &g)
{
    validate_structure(g);
    auto perm = best_permutation(g);
    DecoratedGraph out;
    out.r = g.r;
    out.vertices.resize(g.vertices.size());
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        out.vertices[perm[v]] = g.vertices[v];
    for (auto t : g.tails) {
        t.vertex = perm[t.vertex];
        out.tails.push_back(t);
    }
    std::sort(out.tails.begin(), out.tails.end(), [](const auto &a, const auto &b) { return a.label < b.label; });
    for (auto e : g.edges) {
        e.v1 = perm[e.v1];
        e.v2 = perm[e.v2];
        if (std::pair(e.v2, e.mark2) < std::pair(e.v1, e.mark1)) {
            std::swap(e.v1, e.v2);
            std::swap(e.mark1, e.mark2);
        }
        out.edges.push_back(e);
    }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

GraphIsoKey canonical_key(const DecoratedGraph &g)
{
    validate_structure(g);
    auto code = encode(g, best_permutation(g));
    std::ostringstream key;
    key << "r" << g.r << ";v" << g.vertices.size() << ";t" << g.tails.size() << ";e" << g.edges.size() << ':';
    for (std::size_t i = 0; i < code.size(); ++i)
        key << (i ? "," : "") << code[i];
    return {key.str()};
}

namespace {

/// Labeled trees on k vertices as edge lists, from Pruefer sequences.
std::vector<std::vector<std::pair<int, int>>> labeled_trees(int k)
{
    std::vector<std::vector<std::pair<int, int>>> trees;
    if (k == 1) {
        trees.emplace_back();
        return trees;
    }
    if (k == 2) {
        trees.push_back({{0, 1}});
        return trees;
    }
    const int len = k - 2;
    std::vector<int> seq(len, 0);
    while (true) {
        std::vector<int> degree(k, 1);
        for (int x : seq)
            ++degree[x];
        std::vector<std::pair<int, int>> edges;
        for (int x : seq) {
            int leaf = 0;
            while (degree[leaf] != 1)
                ++leaf;
            edges.emplace_back(leaf, x);
            --degree[leaf];
            --degree[x];
        }
        int u = -1, w = -1;
        for (int v = 0; v < k; ++v)
            if (degree[v] == 1)
                (u < 0 ? u : w) = v;
        edges.emplace_back(u, w);
        trees.push_back(std::move(edges));
        int pos = len - 1;
        while (pos >= 0 && ++seq[pos] == k)
            seq[pos--] = 0;
        if (pos < 0)
            break;
    }
    return trees;
}

/// Edge marks on a tree forced by vertex admissibility: peel leaves, each fixing
/// the mark on its side of its edge. Returns false if the last vertex fails.
bool assign_tree_marks(DecoratedGraph &g)
{
    const int nv = static_cast<int>(g.vertices.size());
    std::vector<long> sums(nv, 0);
    for (const auto &t : g.tails)
        sums[t.vertex] += t.mark;
    std::vector<bool> done(g.edges.size(), false);
    std::vector<int> open(nv, 0);
    for (const auto &e : g.edges) {
        ++open[e.v1];
        ++open[e.v2];
    }
    // vertex genus is 0 here, so the target residue is r-2
    const int target = mod(-2, g.r);
    for (std::size_t step = 0; step < g.edges.size(); ++step) {
        int leaf = -1;
        for (int v = 0; v < nv && leaf < 0; ++v)
            if (open[v] == 1)
                leaf = v;
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            auto &e = g.edges[i];
            if (done[i] || (e.v1 != leaf && e.v2 != leaf))
                continue;
            int near = mod(target - sums[leaf], g.r);
            int farm = mod(g.r - 2 - near, g.r);
            if (e.v1 == leaf) {
                e.mark1 = near;
                e.mark2 = farm;
                sums[e.v2] += farm;
            } else {
                e.mark2 = near;
                e.mark1 = farm;
                sums[e.v1] += farm;
            }
            sums[leaf] += near;
            done[i] = true;
            --open[e.v1];
            --open[e.v2];
            break;
        }
    }
    return vertices_admissible(g);
}

/// Ordered ways to write total as a sum of k nonnegative parts.
std::vector<std::vector<int>> class_compositions(int total, int k)
{
    std::vector<std::vector<int>> out;
    std::vector<int> parts(k, 0);
    auto rec = [&](auto &self, int pos, int remaining) -> void {
        if (pos == k - 1) {
            parts[pos] = remaining;
            out.push_back(parts);
            return;
        }
        for (int x = 0; x <= remaining; ++x) {
            parts[pos] = x;
            self(self, pos + 1, remaining - x);
        }
    };
    rec(rec, 0, total);
    return out;
}

} // namespace

std::vector<DecoratedGraph> enumerate_genus_zero(const EnumerationRequest &req)
{
    if (req.n < 0 || req.n > 6 || req.max_edges < 0 || req.max_edges > 3 || req.class_budget < 0 ||
        req.class_budget > 6 || req.r < 2 || req.r > 12)
        throw DomainError("enumeration parameter range exceeded (n <= 6, max_edges <= 3, class <= 6, 2 <= r <= 12)");
    if (static_cast<int>(req.tail_marks.size()) != req.n)
        throw DomainError("need one tail mark per tail");
    for (int m : req.tail_marks)
        if (m < 0 || m >= req.r)
            throw DomainError("tail mark out of range 0..r-1");

    std::set<GraphIsoKey> seen;
    std::vector<std::pair<GraphIsoKey, DecoratedGraph>> found;
    for (int k = 1; k <= req.max_edges + 1; ++k) {
        const auto compositions = class_compositions(req.class_budget, k);
        for (const auto &tree : labeled_trees(k)) {
            std::vector<int> where(req.n, 0);
            while (true) {
                for (const auto &cls : compositions) {
                    DecoratedGraph g;
                    g.r = req.r;
                    for (int v = 0; v < k; ++v)
                        g.vertices.push_back({0, cls[v]});
                    for (int i = 0; i < req.n; ++i)
                        g.tails.push_back({where[i], i + 1, req.tail_marks[i]});
                    for (auto [a, b] : tree)
                        g.edges.push_back({a, 0, b, 0});
                    if (assign_tree_marks(g) && is_stable(g).stable) {
                        auto key = canonical_key(g);
                        if (seen.insert(key).second)
                            found.emplace_back(key, canonical_form(g));
                    }
                }
                int pos = req.n - 1;
                while (pos >= 0 && ++where[pos] == k)
                    where[pos--] = 0;
                if (pos < 0)
                    break;
            }
        }
    }
    std::sort(found.begin(), found.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    std::vector<DecoratedGraph> out;
    for (auto &[key, g] : found)
        out.push_back(std::move(g));
    return out;
}

nlohmann::ordered_json graph_to_json(const DecoratedGraph &g)
{
    nlohmann::ordered_json j;
    j["r"] = g.r;
    auto vs = nlohmann::ordered_json::array();
    for (const auto &v : g.vertices)
        vs.push_back({{"genus", v.genus}, {"class", v.cls}});
    j["vertices"] = std::move(vs);
    auto ts = nlohmann::ordered_json::array();
    for (const auto &t : g.tails)
        ts.push_back({{"vertex", t.vertex}, {"label", t.label}, {"mark", t.mark}});
    j["tails"] = std::move(ts);
    auto es = nlohmann::ordered_json::array();
    for (const auto &e : g.edges)
        es.push_back({{"v1", e.v1}, {"mark1", e.mark1}, {"v2", e.v2}, {"mark2", e.mark2}});
    j["edges"] = std::move(es);
    return j;
}

DecoratedGraph graph_from_json(const nlohmann::json &j)
{
    DecoratedGraph g;
    try {
        g.r = j.at("r").get<int>();
        for (const auto &v : j.at("vertices"))
            g.vertices.push_back({v.at("genus").get<int>(), v.at("class").get<int>()});
        for (const auto &t : j.at("tails"))
            g.tails.push_back({t.at("vertex").get<int>(), t.at("label").get<int>(), t.at("mark").get<int>()});
        for (const auto &e : j.at("edges"))
            g.edges.push_back(
                {e.at("v1").get<int>(), e.at("mark1").get<int>(), e.at("v2").get<int>(), e.at("mark2").get<int>()});
    } catch (const nlohmann::json::exception &ex) {
        throw DomainError(std::string("malformed graph JSON: ") + ex.what());
    }
    validate_structure(g);
    return g;
}

} // namespace spingw
