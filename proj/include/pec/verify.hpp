#ifndef PEC_VERIFY_HPP
#define PEC_VERIFY_HPP

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pec/bitvec.hpp"
#include "pec/errors.hpp"
#include "pec/gf2.hpp"
#include "pec/graph.hpp"

namespace pec {

enum class CertificateKind {
    parity_path,
    open_parity_walk,
    bad_cycle,
    conflict_path,
    four_constraint_violation,
};

inline const char* to_string(CertificateKind k) {
    switch (k) {
        case CertificateKind::parity_path: return "parity_path";
        case CertificateKind::open_parity_walk: return "open_parity_walk";
        case CertificateKind::bad_cycle: return "bad_cycle";
        case CertificateKind::conflict_path: return "conflict_path";
        case CertificateKind::four_constraint_violation: return "four_constraint_violation";
    }
    return "?";
}

/// Witness attached to a failed (or in some cases passed) check. Certificates
/// are independently re-checkable against the coloring they were issued for.
struct Certificate {
    CertificateKind kind;
    Walk walk;
    std::vector<ColorId> detail;     // colors involved, kind-specific
    std::vector<ColorId> selection;  // r-set checks: chosen color per edge
};

enum class VerifyMethod { algebraic, exhaustive };

inline const char* to_string(VerifyMethod m) {
    return m == VerifyMethod::algebraic ? "algebraic" : "exhaustive";
}

struct Verdict {
    bool valid = true;
    std::optional<Certificate> certificate;
    VerifyMethod method = VerifyMethod::algebraic;
};

/// Precondition failure with the witness that refutes it (if one exists).
class CertifiedError : public PreconditionError {
  public:
    CertifiedError(const std::string& what, std::optional<Certificate> cert)
        : PreconditionError(what), certificate(std::move(cert)) {}

    std::optional<Certificate> certificate;
};

struct VerifyOptions {
    /// Exhaustive path checks refuse graphs with more edges than this.
    int edge_limit = 40;
};

namespace detail {

inline std::vector<std::vector<std::pair<VertexId, EdgeId>>> sorted_adjacency(const Graph& g) {
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        adj[v] = g.neighbors(v);
        std::sort(adj[v].begin(), adj[v].end());
    }
    return adj;
}

/// Tracks color usage parity along the current DFS path.
struct ParityPathState {
    BitVec pi;
    explicit ParityPathState(int colors) : pi(colors) {}
    void push(ColorId c) { pi.flip(c); }
    void pop(ColorId c) { pi.flip(c); }
    bool hit() const { return pi.zero(); }
};

/// Tracks how many colors are used exactly once along the current path;
/// a path with none is a conflict-free violation.
struct ConflictPathState {
    std::vector<int> cnt;
    int once = 0;
    explicit ConflictPathState(int colors) : cnt(colors, 0) {}
    void push(ColorId c) {
        if (++cnt[c] == 1)
            ++once;
        else if (cnt[c] == 2)
            --once;
    }
    void pop(ColorId c) {
        if (--cnt[c] == 1)
            ++once;
        else if (cnt[c] == 0)
            --once;
    }
    bool hit() const { return once == 0; }
};

/// Iterative deepening DFS over simple paths, ascending start vertex and
/// neighbor order. Returns the first path whose full-length state hits:
/// shortest first, lexicographically first within a length.
template <typename State>
std::optional<Walk> first_flagged_path(const EdgeColoring& f, int edge_limit, State state) {
    const Graph& g = f.graph();
    if (g.edge_count() > edge_limit)
        throw OversizeError("exhaustive path check refused: " + std::to_string(g.edge_count()) +
                            " edges exceeds limit " + std::to_string(edge_limit));
    int n = g.vertex_count();
    auto adj = sorted_adjacency(g);
    std::vector<char> visited(n, 0);
    std::vector<VertexId> path;
    std::optional<Walk> found;

    std::function<bool(VertexId, int)> dfs = [&](VertexId v, int remaining) {
        if (remaining == 0) {
            if (state.hit()) {
                found = Walk(path);
                return true;
            }
            return false;
        }
        for (auto [w, e] : adj[v]) {
            if (visited[w]) continue;
            visited[w] = 1;
            path.push_back(w);
            state.push(f.color_of(e));
            bool done = dfs(w, remaining - 1);
            state.pop(f.color_of(e));
            path.pop_back();
            visited[w] = 0;
            if (done) return true;
        }
        return false;
    };

    for (int len = 2; len < n && !found; ++len) {
        for (VertexId s = 0; s < n && !found; ++s) {
            visited.assign(n, 0);
            visited[s] = 1;
            path.assign(1, s);
            dfs(s, len);
        }
    }
    return found;
}

}  // namespace detail

/// Shortest parity path (every color used an even number of times) in DFS
/// order, or nullopt when none exists. Exponential; guarded by edge_limit.
inline std::optional<Walk> find_parity_path(const EdgeColoring& f,
                                            const VerifyOptions& opts = {}) {
    return detail::first_flagged_path(f, opts.edge_limit,
                                      detail::ParityPathState(f.color_count()));
}

/// Shortest path on which no color is used exactly once, or nullopt.
inline std::optional<Walk> find_conflict_free_violation(const EdgeColoring& f,
                                                        const VerifyOptions& opts = {}) {
    return detail::first_flagged_path(f, opts.edge_limit,
                                      detail::ConflictPathState(f.color_count()));
}

/// Parity edge-coloring check: no path uses every color an even number of
/// times. Exhaustive over simple paths; throws OversizeError beyond the limit.
inline Verdict check_parity_coloring(const EdgeColoring& f, const VerifyOptions& opts = {}) {
    auto witness = find_parity_path(f, opts);
    if (!witness) return {true, std::nullopt, VerifyMethod::exhaustive};
    std::vector<ColorId> colors;
    for (std::size_t i = 0; i + 1 < witness->vertices().size(); ++i) {
        ColorId c = f.color_of(*f.graph().edge_between(witness->vertices()[i], witness->vertices()[i + 1]));
        if (std::find(colors.begin(), colors.end(), c) == colors.end()) colors.push_back(c);
    }
    return {false, Certificate{CertificateKind::parity_path, *witness, std::move(colors)},
            VerifyMethod::exhaustive};
}

/// Conflict-free check: every path uses some color exactly once.
inline Verdict check_conflict_free(const EdgeColoring& f, const VerifyOptions& opts = {}) {
    auto witness = find_conflict_free_violation(f, opts);
    if (!witness) return {true, std::nullopt, VerifyMethod::exhaustive};
    return {false, Certificate{CertificateKind::conflict_path, *witness, {}},
            VerifyMethod::exhaustive};
}

namespace detail {

/// Triangle generators of the parity space of a connected induced subgraph,
/// after completing it to a clique with a fresh color per missing edge.
struct CompletedTriangles {
    std::vector<VertexId> verts;  // component vertices, ascending
    int original_colors = 0;
    int width = 0;                                        // original + virtual colors
    std::vector<std::pair<VertexId, VertexId>> virtual_edges;  // by virtual color index
    std::vector<std::pair<int, int>> triangles;           // local indices (i, j), 0 is the apex
    std::vector<BitVec> vectors;                          // parity vector per triangle
};

inline CompletedTriangles completed_triangles(const EdgeColoring& f,
                                              const std::vector<VertexId>& comp) {
    const Graph& g = f.graph();
    CompletedTriangles out;
    out.verts = comp;
    out.original_colors = f.color_count();
    int m = static_cast<int>(comp.size());
    std::vector<std::vector<int>> pair_color(m, std::vector<int>(m, -1));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto e = g.edge_between(comp[i], comp[j]);
            if (e) {
                pair_color[i][j] = f.color_of(*e);
            } else {
                pair_color[i][j] = f.color_count() + static_cast<int>(out.virtual_edges.size());
                out.virtual_edges.emplace_back(comp[i], comp[j]);
            }
            pair_color[j][i] = pair_color[i][j];
        }
    out.width = f.color_count() + static_cast<int>(out.virtual_edges.size());
    for (int i = 1; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            BitVec v(out.width);
            v.flip(pair_color[0][i]);
            v.flip(pair_color[i][j]);
            v.flip(pair_color[0][j]);  // identical colors cancel to even usage
            out.triangles.emplace_back(i, j);
            out.vectors.push_back(std::move(v));
        }
    return out;
}

/// Row-reduced basis that remembers, for every row, which generators sum to
/// it. Needed to turn an algebraic non-spec verdict into an explicit walk.
class TrackedBasis {
  public:
    TrackedBasis(int width, int generators) : width_(width), generators_(generators) {}

    void add(const BitVec& v, int gen_index) {
        BitVec r = v;
        BitVec combo = BitVec::unit(generators_, gen_index);
        reduce(r, combo);
        if (r.zero()) return;
        int pivot = r.lowest_set_bit();
        std::size_t pos = 0;
        while (pos < rows_.size() && rows_[pos].lowest_set_bit() < pivot) ++pos;
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (rows_[i].test(pivot)) {
                rows_[i] ^= r;
                combos_[i] ^= combo;
            }
        rows_.insert(rows_.begin() + pos, std::move(r));
        combos_.insert(combos_.begin() + pos, std::move(combo));
    }

    /// Smallest color whose unit vector lies in the span.
    std::optional<int> weight1() const {
        for (const BitVec& row : rows_)
            if (row.weight() == 1) return row.lowest_set_bit();
        return std::nullopt;
    }

    /// Generator combination summing to v, when v is in the span.
    std::optional<BitVec> express(const BitVec& v) const {
        BitVec r = v;
        BitVec combo(generators_);
        reduce(r, combo);
        if (!r.zero()) return std::nullopt;
        return combo;
    }

    const std::vector<BitVec>& rows() const { return rows_; }

  private:
    void reduce(BitVec& r, BitVec& combo) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (r.zero()) break;
            if (r.test(rows_[i].lowest_set_bit())) {
                r ^= rows_[i];
                combo ^= combos_[i];
            }
        }
    }

    int width_;
    int generators_;
    std::vector<BitVec> rows_;
    std::vector<BitVec> combos_;
};

/// BFS path between two vertices of g, as the intermediate+target suffix.
inline std::vector<VertexId> bfs_path(const Graph& g, VertexId from, VertexId to) {
    std::vector<VertexId> parent(g.vertex_count(), -1);
    std::queue<VertexId> q;
    q.push(from);
    parent[from] = from;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        if (v == to) break;
        auto nb = g.neighbors(v);
        std::sort(nb.begin(), nb.end());
        for (auto [w, e] : nb)
            if (parent[w] == -1) {
                parent[w] = v;
                q.push(w);
            }
    }
    std::vector<VertexId> rev;
    for (VertexId v = to; v != from; v = parent[v]) rev.push_back(v);
    return {rev.rbegin(), rev.rend()};
}

/// Turns a weight-1 parity-space vector into an open parity walk of the
/// original graph: concatenate the generating triangles into a closed walk at
/// the apex, drop one traversal of an odd-usage edge of the target color, and
/// splice a fixed original-graph path over every virtual edge traversal.
inline Walk open_parity_walk_certificate(const EdgeColoring& f, const CompletedTriangles& ct,
                                         int color, const BitVec& combo) {
    const Graph& g = f.graph();
    std::vector<VertexId> closed{ct.verts[0]};
    for (std::size_t t = 0; t < ct.triangles.size(); ++t) {
        if (!combo.test(static_cast<int>(t))) continue;
        auto [i, j] = ct.triangles[t];
        closed.push_back(ct.verts[i]);
        closed.push_back(ct.verts[j]);
        closed.push_back(ct.verts[0]);
    }

    auto pair_color = [&](VertexId a, VertexId b) -> int {
        if (auto e = g.edge_between(a, b)) return f.color_of(*e);
        for (std::size_t i = 0; i < ct.virtual_edges.size(); ++i) {
            auto [x, y] = ct.virtual_edges[i];
            if ((x == a && y == b) || (x == b && y == a))
                return ct.original_colors + static_cast<int>(i);
        }
        throw Error("internal: pair without color");
    };

    // Locate a traversal of an edge of the target color with odd usage.
    int steps = static_cast<int>(closed.size()) - 1;
    std::optional<int> drop;
    for (int s = 0; s < steps && !drop; ++s) {
        VertexId a = closed[s], b = closed[s + 1];
        if (pair_color(a, b) != color) continue;
        int count = 0;
        for (int t = 0; t < steps; ++t) {
            VertexId x = closed[t], y = closed[t + 1];
            if ((x == a && y == b) || (x == b && y == a)) ++count;
        }
        if (count % 2 == 1) drop = s;
    }
    if (!drop) throw Error("internal: no odd-usage edge of certificate color");

    // Remaining steps, rotated to start right after the dropped traversal.
    std::vector<VertexId> open{closed[*drop + 1]};
    for (int s = 1; s < steps; ++s) open.push_back(closed[(*drop + 1 + s) % steps]);

    // Replace virtual steps by fixed paths of the original graph. The same
    // path must serve both traversal directions of a pair, or the even
    // per-edge usage is lost.
    std::unordered_map<std::uint64_t, std::vector<VertexId>> cache;
    auto fixed_path = [&](VertexId from, VertexId to) {
        VertexId lo = std::min(from, to), hi = std::max(from, to);
        std::uint64_t key = static_cast<std::uint64_t>(lo) << 32 | static_cast<std::uint32_t>(hi);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, bfs_path(g, lo, hi)).first;
        std::vector<VertexId> hop = it->second;  // vertices after lo, ending at hi
        if (from != lo) {
            hop.pop_back();
            std::reverse(hop.begin(), hop.end());
            hop.push_back(lo);
        }
        return hop;
    };
    std::vector<VertexId> walk{open.front()};
    for (std::size_t s = 0; s + 1 < open.size(); ++s) {
        VertexId a = open[s], b = open[s + 1];
        if (g.edge_between(a, b)) {
            walk.push_back(b);
        } else {
            for (VertexId v : fixed_path(a, b)) walk.push_back(v);
        }
    }
    return Walk(std::move(walk));
}

}  // namespace detail

/// Basis of the parity space of f after completing the (connected) graph to a
/// clique with a fresh color per missing edge; generated by the triangles at
/// the first vertex, which dominates the completed graph.
inline Gf2Basis parity_space(const EdgeColoring& f) {
    const Graph& g = f.graph();
    if (g.directed()) throw PreconditionError("parity_space: directed graphs unsupported");
    if (!g.is_connected()) throw PreconditionError("parity_space: graph must be connected");
    std::vector<VertexId> all(g.vertex_count());
    for (int i = 0; i < g.vertex_count(); ++i) all[i] = i;
    auto ct = detail::completed_triangles(f, all);
    Gf2Basis basis(ct.width);
    for (const BitVec& v : ct.vectors) basis.add(v);
    return basis;
}

/// Polynomial-time strong parity edge-coloring recognizer. Valid iff, per
/// component, no weight-1 vector lies in the span of the completed parity
/// space. On failure the certificate is an explicit open parity walk.
inline Verdict check_spec(const EdgeColoring& f) {
    const Graph& g = f.graph();
    if (g.directed()) throw PreconditionError("check_spec: directed graphs unsupported");
    for (const auto& comp : g.components()) {
        if (comp.size() < 3) continue;  // no triangles, nothing to span
        auto ct = detail::completed_triangles(f, comp);
        detail::TrackedBasis basis(ct.width, static_cast<int>(ct.triangles.size()));
        for (std::size_t t = 0; t < ct.vectors.size(); ++t)
            basis.add(ct.vectors[t], static_cast<int>(t));
        auto bad = basis.weight1();
        if (!bad) continue;
        auto combo = basis.express(BitVec::unit(ct.width, *bad));
        Walk walk = detail::open_parity_walk_certificate(f, ct, *bad, *combo);
        std::vector<ColorId> colors;
        if (*bad < f.color_count()) colors.push_back(*bad);
        return {false, Certificate{CertificateKind::open_parity_walk, std::move(walk), std::move(colors)},
                VerifyMethod::algebraic};
    }
    return {true, std::nullopt, VerifyMethod::algebraic};
}

/// Havel–Movárek condition (1): every cycle is a parity walk. Linear over the
/// cycle space, so checking fundamental cycles of a spanning forest suffices.
inline Verdict check_cycles_parity(const EdgeColoring& f) {
    const Graph& g = f.graph();
    if (g.directed()) throw PreconditionError("check_cycles_parity: directed graphs unsupported");
    int n = g.vertex_count();
    std::vector<int> parent(n, -1), depth(n, 0);
    std::vector<char> seen(n, 0), tree_edge(g.edge_count(), 0);
    std::vector<BitVec> pi(n);
    auto adj = detail::sorted_adjacency(g);
    for (VertexId root = 0; root < n; ++root) {
        if (seen[root]) continue;
        seen[root] = 1;
        pi[root] = BitVec(f.color_count());
        std::queue<VertexId> q;
        q.push(root);
        while (!q.empty()) {
            VertexId v = q.front();
            q.pop();
            for (auto [w, e] : adj[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    tree_edge[e] = 1;
                    pi[w] = pi[v];
                    pi[w].flip(f.color_of(e));
                    q.push(w);
                }
        }
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (tree_edge[e]) continue;
        auto [x, y] = g.edge(e);
        BitVec vec = pi[x] ^ pi[y];
        vec.flip(f.color_of(e));
        if (vec.zero()) continue;
        // Fundamental cycle: x .. lca .. y, closed by the edge yx.
        std::vector<VertexId> up_x, up_y;
        VertexId a = x, b = y;
        while (depth[a] > depth[b]) up_x.push_back(a), a = parent[a];
        while (depth[b] > depth[a]) up_y.push_back(b), b = parent[b];
        while (a != b) {
            up_x.push_back(a);
            up_y.push_back(b);
            a = parent[a];
            b = parent[b];
        }
        std::vector<VertexId> cycle = up_x;
        cycle.push_back(a);
        cycle.insert(cycle.end(), up_y.rbegin(), up_y.rend());
        cycle.push_back(x);
        std::vector<ColorId> odd;
        for (int c = 0; c < f.color_count(); ++c)
            if (vec.test(c)) odd.push_back(c);
        return {false, Certificate{CertificateKind::bad_cycle, Walk(std::move(cycle)), std::move(odd)},
                VerifyMethod::algebraic};
    }
    return {true, std::nullopt, VerifyMethod::algebraic};
}

/// 4-constraint (Definition 3.3) and weak 4-constraint (Definition 4.8).
/// Strong: f(uv)=f(xy) and vx an edge force uy to be an edge with
/// f(uy)=f(vx). Weak: only constrains quadruples where both vx and yu exist.
inline Verdict check_four_constraint(const EdgeColoring& f, bool weak) {
    const Graph& g = f.graph();
    if (g.directed()) throw PreconditionError("check_four_constraint: directed graphs unsupported");
    auto classes = f.classes();
    for (const auto& cls : classes) {
        for (std::size_t p = 0; p < cls.size(); ++p) {
            for (std::size_t q = p + 1; q < cls.size(); ++q) {
                auto [a1, b1] = g.edge(cls[p]);
                auto [a2, b2] = g.edge(cls[q]);
                for (auto [u, v] : {std::pair{a1, b1}, std::pair{b1, a1}}) {
                    for (auto [x, y] : {std::pair{a2, b2}, std::pair{b2, a2}}) {
                        auto vx = g.edge_between(v, x);
                        if (!vx) continue;
                        auto uy = g.edge_between(u, y);
                        bool bad;
                        if (weak)
                            bad = uy && f.color_of(*uy) != f.color_of(*vx);
                        else
                            bad = !uy || f.color_of(*uy) != f.color_of(*vx);
                        if (bad) {
                            std::vector<ColorId> colors{f.color_of(cls[p]), f.color_of(*vx)};
                            if (uy) colors.push_back(f.color_of(*uy));
                            return {false,
                                    Certificate{CertificateKind::four_constraint_violation,
                                                Walk({u, v, x, y}), std::move(colors)},
                                    VerifyMethod::algebraic};
                        }
                    }
                }
            }
        }
    }
    return {true, std::nullopt, VerifyMethod::algebraic};
}

/// Re-check a certificate against the coloring that produced it.
inline bool certificate_ok(const EdgeColoring& f, const Certificate& cert) {
    const Walk& w = cert.walk;
    if (!w.valid_in(f.graph())) return false;
    switch (cert.kind) {
        case CertificateKind::parity_path:
            return w.is_path() && w.length() >= 2 && parity_vector(f, w).zero();
        case CertificateKind::open_parity_walk:
            return !w.is_closed() && w.length() >= 1 && parity_vector(f, w).zero();
        case CertificateKind::bad_cycle:
            return w.is_closed() && w.length() >= 3 && !parity_vector(f, w).zero();
        case CertificateKind::conflict_path: {
            if (!w.is_path() || w.length() < 2) return false;
            std::vector<int> cnt(f.color_count(), 0);
            const auto& vs = w.vertices();
            for (std::size_t i = 0; i + 1 < vs.size(); ++i)
                ++cnt[f.color_of(*f.graph().edge_between(vs[i], vs[i + 1]))];
            for (int c : cnt)
                if (c == 1) return false;
            return true;
        }
        case CertificateKind::four_constraint_violation:
            return w.vertices().size() == 4;
    }
    return false;
}

}  // namespace pec

#endif  // PEC_VERIFY_HPP
