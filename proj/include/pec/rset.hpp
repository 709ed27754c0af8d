#ifndef PEC_RSET_HPP
#define PEC_RSET_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pec/errors.hpp"
#include "pec/graph.hpp"
#include "pec/solver.hpp"
#include "pec/verify.hpp"

namespace pec {

/// Assignment of an r-set of colors to every edge. The palette is the union
/// of the sets, with dense indices.
struct RSetColoring {
    Graph graph;
    std::vector<std::vector<ColorId>> sets;  // per edge, sorted, size r
    int r = 0;
    int palette = 0;
    std::vector<std::string> palette_labels;
};

/// R-set file format: one "u v c1,c2,...,cr" line per edge.
inline RSetColoring parse_rset(const Graph& g, const std::string& text) {
    RSetColoring a;
    a.graph = g;
    a.sets.assign(g.edge_count(), {});
    std::vector<char> seen(g.edge_count(), 0);
    std::unordered_map<std::string, ColorId> index;
    auto lines = detail::text_lines(text);
    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        if (detail::is_comment_or_blank(lines[ln])) continue;
        auto toks = detail::split_ws(lines[ln]);
        if (toks.size() != 3) throw ParseError(ln + 1, "rset: expected 'u v c1,...,cr'");
        VertexId u = -1, v = -1;
        for (VertexId x = 0; x < g.vertex_count(); ++x) {
            if (g.label(x) == toks[0]) u = x;
            if (g.label(x) == toks[1]) v = x;
        }
        if (u < 0 || v < 0 || !g.edge_between(u, v))
            throw ParseError(ln + 1, "rset: unknown edge '" + toks[0] + " " + toks[1] + "'");
        EdgeId e = *g.edge_between(u, v);
        if (seen[e]) throw ParseError(ln + 1, "rset: repeated edge");
        seen[e] = 1;
        std::vector<ColorId> set;
        std::string name;
        for (char ch : toks[2] + ",") {
            if (ch != ',') {
                name += ch;
                continue;
            }
            if (name.empty()) throw ParseError(ln + 1, "rset: empty color name");
            auto [it, fresh] = index.emplace(name, static_cast<ColorId>(a.palette_labels.size()));
            if (fresh) a.palette_labels.push_back(name);
            set.push_back(it->second);
            name.clear();
        }
        std::sort(set.begin(), set.end());
        if (std::adjacent_find(set.begin(), set.end()) != set.end())
            throw ParseError(ln + 1, "rset: repeated color in set");
        if (a.r == 0) a.r = static_cast<int>(set.size());
        if (static_cast<int>(set.size()) != a.r)
            throw ParseError(ln + 1, "rset: set sizes differ");
        a.sets[e] = std::move(set);
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!seen[e]) throw ParseError(0, "rset: uncolored edge");
    a.palette = static_cast<int>(a.palette_labels.size());
    return a;
}

inline std::string serialize_rset(const RSetColoring& a) {
    std::string out;
    const Graph& g = a.graph;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        out += g.label(g.edge(e).u) + " " + g.label(g.edge(e).v) + " ";
        for (std::size_t i = 0; i < a.sets[e].size(); ++i) {
            if (i) out += ",";
            out += a.palette_labels[a.sets[e][i]];
        }
        out += "\n";
    }
    return out;
}

struct RSetOptions {
    int edge_limit = 40;                   // per-selection path search bound
    std::int64_t max_selections = 1 << 20; // r^|E| enumeration bound
};

/// Definition-5.3 check: every selection of one color per edge must be a
/// parity edge-coloring. Selections are enumerated lexicographically and the
/// first counterexample (selection, parity path) is the certificate.
inline Verdict verify_rset(const RSetColoring& a, const RSetOptions& opts = {}) {
    const Graph& g = a.graph;
    int m = g.edge_count();
    double selections = 1;
    for (int e = 0; e < m; ++e) selections *= a.r;
    if (selections > static_cast<double>(opts.max_selections))
        throw OversizeError("verify_rset: selection space exceeds budget");
    std::vector<int> idx(m, 0);
    std::vector<ColorId> chosen(m, 0);
    while (true) {
        for (int e = 0; e < m; ++e) chosen[e] = a.sets[e][idx[e]];
        EdgeColoring f = EdgeColoring::from_colors(g, chosen, a.palette, a.palette_labels);
        if (auto path = find_parity_path(f, VerifyOptions{opts.edge_limit})) {
            Certificate cert{CertificateKind::parity_path, *path, {}, chosen};
            return {false, std::move(cert), VerifyMethod::exhaustive};
        }
        int e = m - 1;
        while (e >= 0 && idx[e] == a.r - 1) idx[e--] = 0;
        if (e < 0) break;
        ++idx[e];
    }
    return {true, std::nullopt, VerifyMethod::exhaustive};
}

struct RSetBudget {
    int max_edges = 6;
    std::int64_t max_nodes = 400'000'000;
};

struct RSetSolveResult {
    int value = 0;
    SolveStatus status = SolveStatus::exact;
    std::optional<RSetColoring> witness;
    std::int64_t nodes_explored = 0;
};

namespace detail {

/// r-subsets of {0..palette-1} usable at a node where `used` colors exist:
/// any old colors plus, when new colors appear, the next indices in order.
/// This canonical form enumerates assignments up to palette permutation.
inline std::vector<std::vector<ColorId>> candidate_sets(int r, int used, int palette) {
    std::vector<std::vector<ColorId>> out;
    int top = std::min(used + r, palette);
    std::vector<ColorId> pick;
    std::function<void(int)> rec = [&](int from) {
        if (static_cast<int>(pick.size()) == r) {
            int expected = used;
            for (ColorId c : pick)
                if (c >= used && c != expected++) return;
            out.push_back(pick);
            return;
        }
        for (int c = from; c < top; ++c) {
            pick.push_back(c);
            rec(c + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return out;
}

class RSetSearch {
  public:
    RSetSearch(const Graph& g, int r, const RSetBudget& budget)
        : g_(g), r_(r), budget_(budget), order_(bfs_edge_order(g)), adj_(g.vertex_count()) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            adj_[v] = g.neighbors(v);
            std::sort(adj_[v].begin(), adj_[v].end());
        }
    }

    RSetSolveResult run() {
        RSetSolveResult result;
        int m = g_.edge_count();
        if (m == 0) return result;
        if (m > budget_.max_edges) {
            result.status = SolveStatus::oversize;
            result.value = lower_bound();
            return result;
        }
        sets_.assign(m, {});
        for (int s = lower_bound(); s <= r_ * m; ++s) {
            palette_ = s;
            if (search(0, 0)) {
                result.value = s;
                result.nodes_explored = nodes_;
                result.witness = make_witness();
                return result;
            }
            if (timed_out_) {
                result.value = s;
                result.status = SolveStatus::timeout;
                result.nodes_explored = nodes_;
                return result;
            }
        }
        throw Error("internal: r disjoint sets per edge always work");
    }

  private:
    int lower_bound() const {
        int lb = std::max(1, r_ * g_.max_degree());
        for (auto& [name, value] : lower_bounds(g_)) lb = std::max(lb, value);
        return lb;
    }

    bool search(int index, int used) {
        if (index == static_cast<int>(order_.size())) return accept_leaf();
        EdgeId e = order_[index];
        for (const auto& set : candidate_sets(r_, used, palette_)) {
            if (++nodes_ > budget_.max_nodes) {
                timed_out_ = true;
                return false;
            }
            sets_[e] = set;
            int now_used = std::max(used, set.empty() ? 0 : set.back() + 1);
            if (!bad_path_through(e) && search(index + 1, now_used)) return true;
            sets_[e].clear();
            if (timed_out_) return false;
        }
        return false;
    }

    bool accept_leaf() {
        RSetColoring a = make_witness();
        return verify_rset(a, RSetOptions{g_.edge_count()}).valid;
    }

    RSetColoring make_witness() const {
        RSetColoring a;
        a.graph = g_;
        a.sets = sets_;
        a.r = r_;
        int used = 0;
        for (const auto& s : sets_)
            for (ColorId c : s) used = std::max(used, c + 1);
        a.palette = used;
        for (int c = 0; c < used; ++c) a.palette_labels.push_back(std::to_string(c));
        return a;
    }

    /// Some selection on an assigned simple path through e yields a parity
    /// path. Such a violation survives any extension, so prune.
    bool bad_path_through(EdgeId e) {
        auto [a, b] = g_.edge(e);
        visited_.assign(g_.vertex_count(), 0);
        visited_[a] = visited_[b] = 1;
        path_edges_.assign(1, e);
        return left_dfs(a, b);
    }

    bool left_dfs(VertexId left, VertexId right_start) {
        if (right_dfs(right_start)) return true;
        for (auto [w, e2] : adj_[left]) {
            if (sets_[e2].empty() || visited_[w]) continue;
            visited_[w] = 1;
            path_edges_.push_back(e2);
            bool bad = left_dfs(w, right_start);
            path_edges_.pop_back();
            visited_[w] = 0;
            if (bad) return true;
        }
        return false;
    }

    bool right_dfs(VertexId v) {
        if (path_edges_.size() >= 2 && selectable_parity_path()) return true;
        for (auto [w, e2] : adj_[v]) {
            if (sets_[e2].empty() || visited_[w]) continue;
            visited_[w] = 1;
            path_edges_.push_back(e2);
            bool bad = right_dfs(w);
            path_edges_.pop_back();
            visited_[w] = 0;
            if (bad) return true;
        }
        return false;
    }

    /// Does some per-edge choice give every color even usage on path_edges_?
    bool selectable_parity_path() const {
        int m = static_cast<int>(path_edges_.size());
        std::vector<int> idx(m, 0);
        while (true) {
            BitVec pi(palette_);
            for (int i = 0; i < m; ++i) pi.flip(sets_[path_edges_[i]][idx[i]]);
            if (pi.zero()) return true;
            int i = m - 1;
            while (i >= 0 && idx[i] == r_ - 1) idx[i--] = 0;
            if (i < 0) return false;
            ++idx[i];
        }
    }

    const Graph& g_;
    int r_;
    RSetBudget budget_;
    std::vector<EdgeId> order_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
    std::vector<std::vector<ColorId>> sets_;
    std::vector<char> visited_;
    std::vector<EdgeId> path_edges_;
    int palette_ = 0;
    std::int64_t nodes_ = 0;
    bool timed_out_ = false;
};

}  // namespace detail

/// Exact p_r(G) for tiny instances: iterative deepening on the palette size
/// with canonical set enumeration and verify_rset as the leaf oracle.
inline RSetSolveResult solve_p_r(const Graph& g, int r, const RSetBudget& budget = {}) {
    if (g.directed()) throw PreconditionError("solve_p_r: directed graphs unsupported");
    if (r < 1) throw PreconditionError("solve_p_r: r must be >= 1");
    return detail::RSetSearch(g, r, budget).run();
}

struct LinkedPartition {
    std::vector<std::vector<EdgeId>> parts;  // graph edge ids in path order
    int t = 0;                               // part count = n-1 - max matching
};

namespace detail {

/// Bipartite graph H of Theorem 5.5 on path-edge positions: v_i w_j is an
/// edge iff i < j and the color sets of e_i and e_j intersect.
struct PathLinkGraph {
    int m = 0;
    std::vector<std::vector<int>> link;   // per left i: ascending js
    std::vector<EdgeId> edge_at;          // path position -> graph edge id
};

inline PathLinkGraph path_link_graph(const RSetColoring& a) {
    auto order = a.graph.path_order();
    if (order.empty()) throw PreconditionError("rset: underlying graph is not a path");
    PathLinkGraph h;
    h.m = static_cast<int>(order.size()) - 1;
    for (int i = 0; i < h.m; ++i)
        h.edge_at.push_back(*a.graph.edge_between(order[i], order[i + 1]));
    h.link.assign(h.m, {});
    for (int i = 0; i < h.m; ++i)
        for (int j = i + 1; j < h.m; ++j) {
            const auto &si = a.sets[h.edge_at[i]], &sj = a.sets[h.edge_at[j]];
            bool meets = false;
            for (ColorId c : si)
                if (std::find(sj.begin(), sj.end(), c) != sj.end()) meets = true;
            if (meets) h.link[i].push_back(j);
        }
    return h;
}

/// Kuhn's augmenting-path maximum matching; match_left[i] = j or -1.
inline std::vector<int> max_matching(const PathLinkGraph& h, std::vector<int>& match_right) {
    std::vector<int> match_left(h.m, -1);
    match_right.assign(h.m, -1);
    std::vector<char> tried(h.m, 0);
    std::function<bool(int)> augment = [&](int i) {
        for (int j : h.link[i]) {
            if (tried[j]) continue;
            tried[j] = 1;
            if (match_right[j] == -1 || augment(match_right[j])) {
                match_left[i] = j;
                match_right[j] = i;
                return true;
            }
        }
        return false;
    };
    for (int i = 0; i < h.m; ++i) {
        tried.assign(h.m, 0);
        augment(i);
    }
    return match_left;
}

}  // namespace detail

/// Minimum partition of a path's edges into linked sets (consecutive members
/// share a color), via the matching bijection of Theorem 5.5.
inline LinkedPartition min_linked_partition(const RSetColoring& a) {
    auto h = detail::path_link_graph(a);
    std::vector<int> match_right;
    auto match_left = detail::max_matching(h, match_right);
    LinkedPartition out;
    std::vector<char> has_pred(h.m, 0);
    for (int i = 0; i < h.m; ++i)
        if (match_left[i] != -1) has_pred[match_left[i]] = 1;
    for (int i = 0; i < h.m; ++i) {
        if (has_pred[i]) continue;
        std::vector<EdgeId> part;
        for (int cur = i; cur != -1; cur = match_left[cur]) part.push_back(h.edge_at[cur]);
        out.parts.push_back(std::move(part));
    }
    out.t = static_cast<int>(out.parts.size());
    return out;
}

/// König–Egerváry step of Theorem 5.5: at least t = n-1-|M| edges of a valid
/// parity r-set coloring of P_n have pairwise disjoint color sets; both
/// vertices of such a position survive in the independent complement of a
/// minimum vertex cover.
inline std::vector<EdgeId> extract_disjoint_edges(const RSetColoring& a,
                                                  const RSetOptions& opts = {}) {
    Verdict v = verify_rset(a, opts);
    if (!v.valid)
        throw CertifiedError("extract_disjoint_edges: not a parity r-set coloring",
                             v.certificate);
    auto h = detail::path_link_graph(a);
    std::vector<int> match_right;
    auto match_left = detail::max_matching(h, match_right);
    // Alternating reachability from unmatched left vertices; the cover is
    // (L \ Z) ∪ (R ∩ Z).
    std::vector<char> zl(h.m, 0), zr(h.m, 0);
    std::vector<int> stack;
    for (int i = 0; i < h.m; ++i)
        if (match_left[i] == -1) {
            zl[i] = 1;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        int i = stack.back();
        stack.pop_back();
        for (int j : h.link[i]) {
            if (zr[j]) continue;
            zr[j] = 1;
            int i2 = match_right[j];
            if (i2 != -1 && !zl[i2]) {
                zl[i2] = 1;
                stack.push_back(i2);
            }
        }
    }
    std::vector<EdgeId> out;
    for (int i = 0; i < h.m; ++i) {
        bool left_in_cover = !zl[i];
        bool right_in_cover = zr[i];
        if (!left_in_cover && !right_in_cover) out.push_back(h.edge_at[i]);
    }
    return out;
}

/// Proposition-5.4 contraction: from a parity coloring of K_n with color c on
/// a floor(n/2)-edge class to a parity 2-set coloring of K_ceil(n/2) that
/// avoids c.
inline RSetColoring contract_reduction(const EdgeColoring& f, ColorId c,
                                       const VerifyOptions& opts = {}) {
    const Graph& g = f.graph();
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.edge_between(u, v))
                throw PreconditionError("contract_reduction: graph is not complete");
    if (c < 0 || c >= f.color_count())
        throw PreconditionError("contract_reduction: no such color");
    Verdict parity = check_parity_coloring(f, opts);
    if (!parity.valid)
        throw CertifiedError("contract_reduction: not a parity coloring", parity.certificate);

    std::vector<std::pair<VertexId, VertexId>> pairs;  // (u_i, v_i), u_i < v_i
    std::vector<char> covered(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (f.color_of(e) == c) {
            pairs.emplace_back(g.edge(e).u, g.edge(e).v);
            covered[g.edge(e).u] = covered[g.edge(e).v] = 1;
        }
    if (static_cast<int>(pairs.size()) != n / 2)
        throw PreconditionError("contract_reduction: class size is not floor(n/2)");
    std::sort(pairs.begin(), pairs.end());
    if (n % 2)
        for (VertexId x = 0; x < n; ++x)
            if (!covered[x]) pairs.emplace_back(x, -1);  // the uncontracted vertex

    int m = (n + 1) / 2;
    RSetColoring out;
    out.r = 2;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::string> labels;
    for (int i = 0; i < m; ++i) {
        auto [u, v] = pairs[i];
        labels.push_back(v == -1 ? g.label(u) : g.label(u) + "|" + g.label(v));
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) edges.emplace_back(i, j);
    out.graph = Graph::from_edges(m, std::move(edges), std::move(labels));

    std::vector<int> dense(f.color_count(), -1);
    out.sets.assign(out.graph.edge_count(), {});
    auto palette_color = [&](ColorId orig) {
        if (orig == c) throw Error("contract_reduction: internal, color c reappeared");
        if (dense[orig] == -1) {
            dense[orig] = out.palette++;
            out.palette_labels.push_back(f.color_label(orig));
        }
        return dense[orig];
    };
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            EdgeId e = *out.graph.edge_between(i, j);
            ColorId c1 = f.color_of(*g.edge_between(pairs[i].first, pairs[j].first));
            ColorId c2 = f.color_of(*g.edge_between(pairs[i].second, pairs[j].first));
            if (c1 == c2) throw PreconditionError("contract_reduction: coloring is not proper");
            std::vector<ColorId> set{palette_color(c1), palette_color(c2)};
            std::sort(set.begin(), set.end());
            out.sets[e] = std::move(set);
        }
    return out;
}

}  // namespace pec

#endif  // PEC_RSET_HPP
