#ifndef PEC_SOLVER_HPP
#define PEC_SOLVER_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pec/errors.hpp"
#include "pec/graph.hpp"
#include "pec/verify.hpp"

namespace pec {

enum class SolveStatus { exact, timeout, oversize };

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::exact: return "exact";
        case SolveStatus::timeout: return "timeout";
        case SolveStatus::oversize: return "oversize";
    }
    return "?";
}

/// Deterministic search limits. The node budget, not wall time, decides
/// timeouts so runs are reproducible.
struct SolveBudget {
    std::int64_t max_nodes = 400'000'000;
    int max_edges = 12;
};

struct SolveResult {
    int value = 0;
    SolveStatus status = SolveStatus::exact;
    std::optional<EdgeColoring> witness;
    std::vector<std::pair<std::string, int>> lower_bounds;
    std::int64_t nodes_explored = 0;
};

/// Closed-form lower bounds: the max-degree proxy for chi' and, per connected
/// component, ceil(lg of the component order).
inline std::vector<std::pair<std::string, int>> lower_bounds(const Graph& g) {
    std::vector<std::pair<std::string, int>> out;
    out.emplace_back("max_degree", g.max_degree());
    for (const auto& comp : g.components())
        out.emplace_back("log_order", ceil_log2(static_cast<int>(comp.size())));
    return out;
}

/// Corollary-4.3 bound: max over r of
/// min(2^ceil(lg n) - C(r,2), ceil(n^2 / (n-r-1))).
inline int knn_spec_lower_bound(int n) {
    if (n < 2) throw PreconditionError("knn_spec_lower_bound: n must be >= 2");
    int pow2 = 1 << ceil_log2(n);
    int best = 0;
    for (int r = 0; r + 2 <= n; ++r) {
        int a = pow2 - r * (r - 1) / 2;
        int b = (n * n + (n - r - 1) - 1) / (n - r - 1);
        best = std::max(best, std::min(a, b));
    }
    return best;
}

namespace detail {

enum class Objective { parity, spec, conflict_free };

/// Edges ordered by breadth-first search from a maximum-degree vertex:
/// an edge is keyed by the discovery positions of its endpoints, so early
/// edges concentrate around the root and force conflicts quickly.
inline std::vector<EdgeId> bfs_edge_order(const Graph& g) {
    int n = g.vertex_count();
    std::vector<int> pos(n, -1);
    int next = 0;
    std::vector<VertexId> roots(n);
    for (int v = 0; v < n; ++v) roots[v] = v;
    std::stable_sort(roots.begin(), roots.end(),
                     [&](VertexId a, VertexId b) { return g.degree(a) > g.degree(b); });
    for (VertexId root : roots) {
        if (pos[root] != -1) continue;
        std::queue<VertexId> q;
        q.push(root);
        pos[root] = next++;
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            auto nb = g.neighbors(v);
            std::sort(nb.begin(), nb.end());
            for (auto [w, e] : nb)
                if (pos[w] == -1) {
                    pos[w] = next++;
                    q.push(w);
                }
        }
    }
    std::vector<EdgeId> order(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) order[e] = e;
    auto key = [&](EdgeId e) {
        auto [u, v] = g.edge(e);
        return std::pair{std::max(pos[u], pos[v]), std::min(pos[u], pos[v])};
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](EdgeId a, EdgeId b) { return key(a) < key(b); });
    return order;
}

class ExactSearch {
  public:
    ExactSearch(const Graph& g, Objective obj, const SolveBudget& budget)
        : g_(g), obj_(obj), budget_(budget), order_(bfs_edge_order(g)),
          color_(g.edge_count(), -1), adj_(g.vertex_count()) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            adj_[v] = g.neighbors(v);
            std::sort(adj_[v].begin(), adj_[v].end());
        }
    }

    SolveResult run() {
        SolveResult result;
        result.lower_bounds = lower_bounds(g_);
        int lb = 1;
        for (auto& [name, value] : result.lower_bounds) lb = std::max(lb, value);
        result.nodes_explored = 0;
        if (g_.edge_count() == 0) {
            result.value = 0;
            result.witness = EdgeColoring::from_colors(g_, {}, 0);
            return result;
        }
        if (g_.edge_count() > budget_.max_edges) {
            result.value = lb;
            result.status = SolveStatus::oversize;
            return result;
        }
        for (int k = lb; k <= g_.edge_count(); ++k) {
            k_ = k;
            std::fill(color_.begin(), color_.end(), -1);
            counts_.assign(k, 0);
            once_ = 0;
            parity_ = BitVec(k);
            if (search(0, 0)) {
                result.value = k;
                result.nodes_explored = nodes_;
                result.witness = make_coloring();
                verify_witness(*result.witness);
                return result;
            }
            if (timed_out_) {
                result.value = k;  // every smaller count is refuted
                result.status = SolveStatus::timeout;
                result.nodes_explored = nodes_;
                return result;
            }
        }
        throw Error("internal: search failed at k = |E|, distinct colors always work");
    }

  private:
    bool search(int index, int used) {
        if (index == static_cast<int>(order_.size())) return accept_leaf();
        EdgeId e = order_[index];
        int limit = std::min(used, k_ - 1);  // at most one fresh color, ascending
        for (int c = 0; c <= limit; ++c) {
            if (++nodes_ > budget_.max_nodes) {
                timed_out_ = true;
                return false;
            }
            color_[e] = c;
            if (!bad_path_through(e) && search(index + 1, std::max(used, c + 1))) return true;
            color_[e] = -1;
            if (timed_out_) return false;
        }
        return false;
    }

    bool accept_leaf() {
        EdgeColoring f = make_coloring();
        // The incremental checks already excluded parity (or conflict-free)
        // violations; re-verify with the public checker before accepting.
        VerifyOptions opts{g_.edge_count()};
        switch (obj_) {
            case Objective::parity:
                return check_parity_coloring(f, opts).valid;
            case Objective::conflict_free:
                return check_conflict_free(f, opts).valid;
            case Objective::spec:
                return check_parity_coloring(f, opts).valid && check_spec(f).valid;
        }
        return false;
    }

    void verify_witness(const EdgeColoring& f) {
        VerifyOptions opts{g_.edge_count()};
        bool ok = obj_ == Objective::conflict_free ? check_conflict_free(f, opts).valid
                  : obj_ == Objective::spec        ? check_spec(f).valid
                                                   : check_parity_coloring(f, opts).valid;
        if (!ok) throw Error("internal: witness failed re-verification");
    }

    EdgeColoring make_coloring() const {
        int used = 0;
        for (int c : color_) used = std::max(used, c + 1);
        std::vector<ColorId> colors(color_.begin(), color_.end());
        return EdgeColoring::from_colors(g_, std::move(colors), std::max(used, 0));
    }

    // --- incremental violation detection ------------------------------------

    /// Is there a fully colored simple path through e that is a parity path
    /// (parity objective, spec objective) or has no color used exactly once
    /// (conflict-free objective)? Only such paths can become violations, and
    /// every violation passes through the most recently colored edge.
    bool bad_path_through(EdgeId e) {
        auto [a, b] = g_.edge(e);
        visited_.assign(g_.vertex_count(), 0);
        visited_[a] = visited_[b] = 1;
        push_color(color_[e]);
        bool bad = left_dfs(a, b);
        pop_color(color_[e]);
        return bad;
    }

    bool left_dfs(VertexId left, VertexId right_start) {
        if (right_dfs(right_start, left)) return true;
        for (auto [w, e2] : adj_[left]) {
            if (color_[e2] == -1 || visited_[w]) continue;
            visited_[w] = 1;
            push_color(color_[e2]);
            bool bad = left_dfs(w, right_start);
            pop_color(color_[e2]);
            visited_[w] = 0;
            if (bad) return true;
        }
        return false;
    }

    bool right_dfs(VertexId v, VertexId left_end) {
        if (violation_now()) return true;
        for (auto [w, e2] : adj_[v]) {
            if (color_[e2] == -1 || visited_[w]) continue;
            visited_[w] = 1;
            push_color(color_[e2]);
            bool bad = right_dfs(w, left_end);
            pop_color(color_[e2]);
            visited_[w] = 0;
            if (bad) return true;
        }
        return false;
    }

    bool violation_now() const {
        if (obj_ == Objective::conflict_free) return once_ == 0;
        return edges_on_path_ >= 2 && parity_.zero();
    }

    void push_color(int c) {
        ++edges_on_path_;
        if (obj_ == Objective::conflict_free) {
            if (++counts_[c] == 1)
                ++once_;
            else if (counts_[c] == 2)
                --once_;
        } else {
            parity_.flip(c);
        }
    }

    void pop_color(int c) {
        --edges_on_path_;
        if (obj_ == Objective::conflict_free) {
            if (--counts_[c] == 1)
                ++once_;
            else if (counts_[c] == 0)
                --once_;
        } else {
            parity_.flip(c);
        }
    }

    const Graph& g_;
    Objective obj_;
    SolveBudget budget_;
    std::vector<EdgeId> order_;
    std::vector<int> color_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
    std::vector<char> visited_;
    BitVec parity_;
    std::vector<int> counts_;
    int once_ = 0;
    int edges_on_path_ = 0;
    int k_ = 0;
    std::int64_t nodes_ = 0;
    bool timed_out_ = false;
};

inline SolveResult solve(const Graph& g, Objective obj, const SolveBudget& budget) {
    if (g.directed()) throw PreconditionError("solver: directed graphs unsupported");
    return ExactSearch(g, obj, budget).run();
}

}  // namespace detail

/// Exact parity edge-chromatic number p(G) by iterative deepening on the color
/// count; the witness is the first coloring found in branch order.
inline SolveResult solve_p(const Graph& g, const SolveBudget& budget = {}) {
    return detail::solve(g, detail::Objective::parity, budget);
}

/// Exact strong parity edge-chromatic number p̂(G). Partial colorings are
/// pruned on parity paths; complete ones must pass the polynomial recognizer.
inline SolveResult solve_spec(const Graph& g, const SolveBudget& budget = {}) {
    return detail::solve(g, detail::Objective::spec, budget);
}

/// Exact conflict-free edge-chromatic number c(G).
inline SolveResult solve_conflict_free(const Graph& g, const SolveBudget& budget = {}) {
    return detail::solve(g, detail::Objective::conflict_free, budget);
}

}  // namespace pec

#endif  // PEC_SOLVER_HPP
