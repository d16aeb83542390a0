#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "gp2/host_graph.hpp"

// Two independent routes over graph identity live here. is_isomorphic is a
// backtracking matcher with signature pruning; canonical_key is an
// individualization-refinement search for a least certificate. The test
// suite cross-checks one against the other.

namespace gp2 {
namespace {

std::string node_signature(const HostGraph& g, int v) {
    const HostNode& n = g.node(v);
    std::string s = list_to_text(n.label);
    s += '|';
    s += node_mark_name(n.mark);
    s += n.rooted ? "|R" : "|-";
    s += '|';
    s += std::to_string(g.indegree(v));
    s += '|';
    s += std::to_string(g.outdegree(v));
    return s;
}

std::string edge_tag(const HostEdge& e) {
    std::string s = list_to_text(e.label);
    s += '|';
    s += edge_mark_name(e.mark);
    return s;
}

// ---------------------------------------------------------------------------
// is_isomorphic: order the nodes of `a`, extend a partial injection into `b`
// candidate by candidate, and check per-pair edge multisets at the end.

struct IsoContext {
    const HostGraph& a;
    const HostGraph& b;
    std::vector<std::string> sig_a, sig_b;
    // adjacency multiset between an ordered node pair, keyed by edge tag
    std::map<std::pair<int, int>, std::vector<std::string>> adj_a, adj_b;

    IsoContext(const HostGraph& a_, const HostGraph& b_) : a(a_), b(b_) {
        for (int v = 0; v < a.node_count(); ++v) sig_a.push_back(node_signature(a, v));
        for (int v = 0; v < b.node_count(); ++v) sig_b.push_back(node_signature(b, v));
        for (const HostEdge& e : a.edges()) adj_a[{e.source, e.target}].push_back(edge_tag(e));
        for (const HostEdge& e : b.edges()) adj_b[{e.source, e.target}].push_back(edge_tag(e));
        for (auto& [k, v] : adj_a) std::sort(v.begin(), v.end());
        for (auto& [k, v] : adj_b) std::sort(v.begin(), v.end());
    }

    const std::vector<std::string>* bundle(const decltype(adj_a)& adj, int s, int t) const {
        auto it = adj.find({s, t});
        return it == adj.end() ? nullptr : &it->second;
    }

    bool bundles_equal(int sa, int ta, int sb, int tb) const {
        const auto* x = bundle(adj_a, sa, ta);
        const auto* y = bundle(adj_b, sb, tb);
        if (!x && !y) return true;
        if (!x || !y) return false;
        return *x == *y;
    }
};

bool extend_isomorphism(IsoContext& ctx, std::vector<int>& image, std::vector<bool>& used,
                        int next) {
    int n = ctx.a.node_count();
    if (next == n) return true;
    for (int cand = 0; cand < n; ++cand) {
        if (used[cand] || ctx.sig_a[next] != ctx.sig_b[cand]) continue;
        bool ok = ctx.bundles_equal(next, next, cand, cand); // loops
        for (int prev = 0; ok && prev < next; ++prev) {
            ok = ctx.bundles_equal(next, prev, cand, image[prev]) &&
                 ctx.bundles_equal(prev, next, image[prev], cand);
        }
        if (!ok) continue;
        image[next] = cand;
        used[cand] = true;
        if (extend_isomorphism(ctx, image, used, next + 1)) return true;
        used[cand] = false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// canonical_key: equitable partition refinement, then branch on the first
// non-singleton cell. Branches whose individualized vertex is related to an
// already-tried one by a transposition automorphism are pruned.

using Partition = std::vector<std::vector<int>>;

struct CanonContext {
    const HostGraph& g;
    std::vector<std::string> sig;
    std::map<std::pair<int, int>, std::vector<std::string>> adj;

    explicit CanonContext(const HostGraph& g_) : g(g_) {
        for (int v = 0; v < g.node_count(); ++v) sig.push_back(node_signature(g, v));
        for (const HostEdge& e : g.edges()) adj[{e.source, e.target}].push_back(edge_tag(e));
        for (auto& [k, v] : adj) std::sort(v.begin(), v.end());
    }

    std::string bundle_key(int s, int t) const {
        auto it = adj.find({s, t});
        if (it == adj.end()) return {};
        std::string out;
        for (const std::string& tag : it->second) {
            out += tag;
            out += '&';
        }
        return out;
    }

    // Is the transposition (u v) an automorphism?
    bool swap_is_automorphism(int u, int v) const {
        if (sig[u] != sig[v]) return false;
        auto mapped = [&](int x) { return x == u ? v : x == v ? u : x; };
        for (int w = 0; w < g.node_count(); ++w) {
            for (int x : {u, v}) {
                if (bundle_key(x, w) != bundle_key(mapped(x), mapped(w))) return false;
                if (bundle_key(w, x) != bundle_key(mapped(w), mapped(x))) return false;
            }
        }
        return true;
    }
};

// Splits every cell by each node's connection pattern to all current cells;
// repeats to a fixpoint. Cell order only depends on invariant strings, so the
// refined partition is isomorphism-invariant.
Partition refine(const CanonContext& ctx, Partition p) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cell_of(ctx.g.node_count(), -1);
        for (int c = 0; c < static_cast<int>(p.size()); ++c)
            for (int v : p[c]) cell_of[v] = c;
        Partition next;
        for (const auto& cell : p) {
            if (cell.size() == 1) {
                next.push_back(cell);
                continue;
            }
            std::map<std::string, std::vector<int>> split;
            for (int v : cell) {
                std::map<std::pair<int, std::string>, int> counts;
                for (const HostEdge& e : ctx.g.edges()) {
                    if (e.source == v)
                        ++counts[{cell_of[e.target], ">" + edge_tag(e)}];
                    if (e.target == v)
                        ++counts[{cell_of[e.source], "<" + edge_tag(e)}];
                }
                std::string key;
                for (const auto& [k, c] : counts)
                    key += std::to_string(k.first) + k.second + "#" + std::to_string(c) + ";";
                split[key].push_back(v);
            }
            if (split.size() > 1) changed = true;
            for (auto& [k, members] : split) next.push_back(std::move(members));
        }
        p = std::move(next);
    }
    return p;
}

Partition initial_partition(const CanonContext& ctx) {
    std::map<std::string, std::vector<int>> by_sig;
    for (int v = 0; v < ctx.g.node_count(); ++v) by_sig[ctx.sig[v]].push_back(v);
    Partition p;
    for (auto& [k, members] : by_sig) p.push_back(std::move(members));
    return refine(ctx, std::move(p));
}

std::string certificate(const CanonContext& ctx, const std::vector<int>& order) {
    std::vector<int> pos(ctx.g.node_count());
    for (int i = 0; i < static_cast<int>(order.size()); ++i) pos[order[i]] = i;
    std::string out;
    out += "n" + std::to_string(ctx.g.node_count()) + "e" +
           std::to_string(ctx.g.edge_count()) + ";";
    for (int v : order) {
        const HostNode& n = ctx.g.node(v);
        out += list_to_text(n.label);
        out += '|';
        out += node_mark_name(n.mark);
        out += n.rooted ? "|R;" : "|-;";
    }
    std::vector<std::string> edge_records;
    for (const HostEdge& e : ctx.g.edges()) {
        edge_records.push_back(std::to_string(pos[e.source]) + ">" +
                               std::to_string(pos[e.target]) + ":" + edge_tag(e));
    }
    std::sort(edge_records.begin(), edge_records.end());
    for (const std::string& r : edge_records) {
        out += r;
        out += ';';
    }
    return out;
}

void canon_search(const CanonContext& ctx, const Partition& p, std::string& best,
                  bool& have_best) {
    int branch_cell = -1;
    for (int c = 0; c < static_cast<int>(p.size()); ++c) {
        if (p[c].size() > 1) {
            branch_cell = c;
            break;
        }
    }
    if (branch_cell < 0) {
        std::vector<int> order;
        for (const auto& cell : p) order.push_back(cell[0]);
        std::string cert = certificate(ctx, order);
        if (!have_best || cert < best) {
            best = std::move(cert);
            have_best = true;
        }
        return;
    }
    std::vector<int> tried;
    for (int v : p[branch_cell]) {
        bool skip = false;
        for (int u : tried) {
            if (ctx.swap_is_automorphism(u, v)) {
                skip = true;
                break;
            }
        }
        if (skip) continue;
        tried.push_back(v);
        Partition child;
        for (int c = 0; c < static_cast<int>(p.size()); ++c) {
            if (c != branch_cell) {
                child.push_back(p[c]);
                continue;
            }
            child.push_back({v});
            std::vector<int> rest;
            for (int w : p[c])
                if (w != v) rest.push_back(w);
            child.push_back(std::move(rest));
        }
        canon_search(ctx, refine(ctx, std::move(child)), best, have_best);
    }
}

} // namespace

bool is_isomorphic(const HostGraph& a, const HostGraph& b) {
    if (a.node_count() != b.node_count() || a.edge_count() != b.edge_count()) return false;
    IsoContext ctx(a, b);
    {
        auto sa = ctx.sig_a, sb = ctx.sig_b;
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        if (sa != sb) return false;
    }
    std::vector<int> image(a.node_count(), -1);
    std::vector<bool> used(a.node_count(), false);
    return extend_isomorphism(ctx, image, used, 0);
}

namespace detail {

std::string compute_canonical_key(const HostGraph& g) {
    CanonContext ctx(g);
    std::string best;
    bool have_best = false;
    canon_search(ctx, initial_partition(ctx), best, have_best);
    return best;
}

} // namespace detail
} // namespace gp2
