#ifndef PEC_HYPERCUBE_HPP
#define PEC_HYPERCUBE_HPP

#include <algorithm>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "pec/errors.hpp"
#include "pec/graph.hpp"
#include "pec/verify.hpp"

namespace pec {

/// Map from graph vertices into V(Q_k) = {0,1}^k, codes packed into integers
/// (bit b of the code is coordinate b).
struct Embedding {
    int k = 0;
    std::vector<std::uint64_t> codes;  // one per vertex
};

/// Valid iff the map is injective and every edge joins codes at Hamming
/// distance exactly 1.
inline Verdict verify_embedding(const Graph& g, const Embedding& emb) {
    if (static_cast<int>(emb.codes.size()) != g.vertex_count() || emb.k < 0 || emb.k > 63)
        return {false, std::nullopt, VerifyMethod::algebraic};
    for (std::uint64_t c : emb.codes)
        if (emb.k < 64 && (c >> emb.k) != 0) return {false, std::nullopt, VerifyMethod::algebraic};
    auto sorted = emb.codes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        return {false, std::nullopt, VerifyMethod::algebraic};
    for (const Edge& e : g.edges())
        if (std::popcount(emb.codes[e.u] ^ emb.codes[e.v]) != 1)
            return {false, std::nullopt, VerifyMethod::algebraic};
    return {true, std::nullopt, VerifyMethod::algebraic};
}

/// Embedding serialization: one "label bitstring" line per vertex.
inline std::string serialize_embedding(const Graph& g, const Embedding& emb) {
    std::string out;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        out += g.label(v) + " " + bit_string(static_cast<unsigned>(emb.codes[v]), std::max(emb.k, 1)) + "\n";
    return out;
}

inline Embedding parse_embedding(const Graph& g, const std::string& text) {
    auto lines = detail::text_lines(text);
    Embedding emb;
    emb.codes.assign(g.vertex_count(), std::uint64_t{0});
    std::vector<char> seen(g.vertex_count(), 0);
    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        if (detail::is_comment_or_blank(lines[ln])) continue;
        auto toks = detail::split_ws(lines[ln]);
        if (toks.size() != 2) throw ParseError(ln + 1, "embedding: expected 'label bits'");
        VertexId v = -1;
        for (VertexId x = 0; x < g.vertex_count(); ++x)
            if (g.label(x) == toks[0]) v = x;
        if (v == -1) throw ParseError(ln + 1, "embedding: unknown vertex '" + toks[0] + "'");
        if (seen[v]) throw ParseError(ln + 1, "embedding: repeated vertex '" + toks[0] + "'");
        seen[v] = 1;
        emb.k = std::max(emb.k, static_cast<int>(toks[1].size()));
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < toks[1].size(); ++i) {
            char ch = toks[1][toks[1].size() - 1 - i];
            if (ch == '1')
                code |= std::uint64_t{1} << i;
            else if (ch != '0')
                throw ParseError(ln + 1, "embedding: bad bit string");
        }
        emb.codes[v] = code;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (!seen[v]) throw ParseError(0, "embedding: missing vertex '" + g.label(v) + "'");
    return emb;
}

/// Q_k with the coordinate coloring (edge colored by the flipped bit).
inline EdgeColoring hypercube_coloring(int k) {
    if (k < 1 || k > 20) throw PreconditionError("hypercube_coloring: need 1 <= k <= 20");
    int n = 1 << k;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<ColorId> color_of;
    std::vector<std::string> labels, color_labels;
    for (int b = 0; b < k; ++b) color_labels.push_back(std::to_string(b));
    for (int v = 0; v < n; ++v) {
        labels.push_back(bit_string(v, k));
        for (int b = 0; b < k; ++b)
            if (!(v >> b & 1)) {
                edges.emplace_back(v, v | 1 << b);
                color_of.push_back(b);
            }
    }
    return EdgeColoring::from_colors(Graph::from_edges(n, std::move(edges), std::move(labels)),
                                     std::move(color_of), k, std::move(color_labels));
}

/// Theorem-2.3 embedding: root the tree at vertex 0 and send each vertex to
/// the parity vector of its root path. Requires a parity coloring; rejects
/// with the offending parity path otherwise.
inline Embedding embed_tree(const EdgeColoring& f, const VerifyOptions& opts = {}) {
    const Graph& g = f.graph();
    if (!g.is_tree()) throw PreconditionError("embed_tree: graph is not a tree");
    if (f.color_count() > 63) throw PreconditionError("embed_tree: more than 63 colors");
    Verdict parity = check_parity_coloring(f, opts);
    if (!parity.valid)
        throw CertifiedError("embed_tree: coloring has a parity path", parity.certificate);
    Embedding emb;
    emb.k = f.color_count();
    emb.codes.assign(g.vertex_count(), 0);
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (auto [w, e] : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                emb.codes[w] = emb.codes[v] ^ (std::uint64_t{1} << f.color_of(e));
                q.push(w);
            }
    }
    return emb;
}

/// Corollary-2.4 embedding of a connected graph: extend the spanning-tree
/// embedding; the cycle-parity condition makes every non-tree edge land on a
/// hypercube edge.
inline Embedding embed_graph(const EdgeColoring& f, const VerifyOptions& opts = {}) {
    const Graph& g = f.graph();
    if (g.directed() || !g.is_connected())
        throw PreconditionError("embed_graph: need a connected undirected graph");
    if (f.color_count() > 63) throw PreconditionError("embed_graph: more than 63 colors");
    Verdict cycles = check_cycles_parity(f);
    if (!cycles.valid)
        throw CertifiedError("embed_graph: a cycle is not a parity walk", cycles.certificate);
    Verdict parity = check_parity_coloring(f, opts);
    if (!parity.valid)
        throw CertifiedError("embed_graph: coloring has a parity path", parity.certificate);
    Embedding emb;
    emb.k = f.color_count();
    emb.codes.assign(g.vertex_count(), 0);
    std::vector<char> seen(g.vertex_count(), 0);
    std::queue<VertexId> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
        VertexId v = q.front();
        q.pop();
        for (auto [w, e] : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                emb.codes[w] = emb.codes[v] ^ (std::uint64_t{1} << f.color_of(e));
                q.push(w);
            }
    }
    for (const Edge& e : g.edges())
        if (std::popcount(emb.codes[e.u] ^ emb.codes[e.v]) != 1)
            throw Error("embed_graph: internal, non-tree edge not at distance 1");
    return emb;
}

namespace detail {

/// Spanning path of the subcube over `coords` (other coordinates fixed by x),
/// from x to its neighbor across coordinate `target`: the reflected Gray code
/// conjugated so its top bit is `target` and translated to start at x.
inline std::vector<std::uint64_t> spanning_subcube_path(std::uint64_t x,
                                                        const std::vector<int>& coords,
                                                        int target) {
    int m = static_cast<int>(coords.size());
    std::vector<int> map_bit = coords;
    for (int j = 0; j < m; ++j)
        if (map_bit[j] == target) std::swap(map_bit[j], map_bit[m - 1]);
    std::vector<std::uint64_t> path;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << m); ++i) {
        std::uint64_t gray = i ^ (i >> 1);
        std::uint64_t v = x;
        for (int j = 0; j < m; ++j)
            if (gray >> j & 1) v ^= std::uint64_t{1} << map_bit[j];
        path.push_back(v);
    }
    return path;
}

/// Lemma-6.3 recursion over an explicit coordinate set.
inline std::vector<std::uint64_t> avoiding_path_rec(std::uint64_t x, std::uint64_t y,
                                                    const std::vector<int>& coords) {
    int m = static_cast<int>(coords.size());
    if (m == 2) {
        // Length 2^2 - 3 = 1; y has x's parity in the subcube, so it is not a
        // neighbor of x.
        return {x, x ^ (std::uint64_t{1} << coords[0])};
    }
    std::uint64_t diff = x ^ y;
    std::vector<int> differing;
    for (int c : coords)
        if (diff >> c & 1) differing.push_back(c);
    int b1 = differing[0];
    int b3 = -1;
    for (int c : coords)
        if (c != b1 && c != differing[1]) {
            b3 = c;
            break;
        }
    std::vector<int> sub;
    for (int c : coords)
        if (c != b1) sub.push_back(c);
    // Spanning path of x's half, ending next to the other half; y lies in the
    // other half, so the spanning path cannot hit it.
    std::vector<std::uint64_t> path = spanning_subcube_path(x, sub, b3);
    std::uint64_t u = path.back();
    std::uint64_t v = u ^ (std::uint64_t{1} << b1);
    std::vector<std::uint64_t> rest = avoiding_path_rec(v, y, sub);
    path.insert(path.end(), rest.begin(), rest.end());
    return path;
}

}  // namespace detail

/// Lemma 6.3: a simple path of length 2^k - 3 in Q_k starting at x and
/// avoiding y, for x != y of equal bit-weight parity.
inline std::vector<std::uint64_t> path_avoiding(int k, std::uint64_t x, std::uint64_t y) {
    if (k < 2 || k > 62) throw PreconditionError("path_avoiding: need 2 <= k <= 62");
    if (x >> k || y >> k) throw PreconditionError("path_avoiding: vertex outside Q_k");
    if (x == y) throw PreconditionError("path_avoiding: x and y must differ");
    if (std::popcount(x ^ y) % 2) throw PreconditionError("path_avoiding: x and y differ in parity");
    std::vector<int> coords(k);
    for (int c = 0; c < k; ++c) coords[c] = c;
    return detail::avoiding_path_rec(x, y, coords);
}

/// Broom T_k: a path on 2^k - 2k + 2 vertices whose endpoint is identified
/// with a leaf of a k-edge star. Vertex ids: 0..m-1 along the handle (0 is the
/// far end), m is the star center, m+1..m+k-1 the remaining leaves.
inline Graph broom(int k) {
    if (k < 2) throw PreconditionError("broom: k must be >= 2");
    int m = (1 << k) - 2 * k + 2;
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int i = 0; i + 1 < m; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(m - 1, m);
    for (int j = 1; j < k; ++j) edges.emplace_back(m, m + j);
    return Graph::from_edges(m + k, std::move(edges));
}

/// Lemma 6.4: embed T_k in Q_k by embedding T_{k-1} in a subcube and routing
/// the remaining handle through an avoiding path in the other subcube.
inline Embedding embed_broom(int k) {
    if (k < 2) throw PreconditionError("embed_broom: k must be >= 2");
    if (k > 20) throw PreconditionError("embed_broom: k too large for desk scale");
    if (k == 2) return Embedding{2, {0, 1, 3, 2}};

    Embedding prev = embed_broom(k - 1);
    int m_prev = (1 << (k - 1)) - 2 * (k - 1) + 2;
    int m = (1 << k) - 2 * k + 2;
    int shift = (1 << (k - 1)) - 2;  // new handle vertices before the old far end

    Embedding emb;
    emb.k = k;
    emb.codes.assign(m + k, 0);
    for (int i = 0; i < m_prev; ++i) emb.codes[shift + i] = prev.codes[i];
    emb.codes[m] = prev.codes[m_prev];  // center
    for (int j = 1; j < k - 1; ++j) emb.codes[m + j] = prev.codes[m_prev + j];

    std::uint64_t top = std::uint64_t{1} << (k - 1);
    std::uint64_t x = prev.codes[0] ^ top;          // neighbor of the old far end
    std::uint64_t y = prev.codes[m_prev] ^ top;     // neighbor of the center
    std::vector<int> sub(k - 1);
    for (int c = 0; c < k - 1; ++c) sub[c] = c;
    auto path = detail::avoiding_path_rec(x, y, sub);
    for (std::size_t s = 0; s < path.size(); ++s) emb.codes[shift - 1 - static_cast<int>(s)] = path[s];
    emb.codes[m + k - 1] = y;  // the new star leaf
    return emb;
}

/// Theorem-6.5 upper bound: conflict-free (k+1)-coloring of T_k. Color k goes
/// only on the handle edge at the center; the star gets distinct colors and
/// the remaining path the Gray coloring.
inline EdgeColoring broom_conflict_free_coloring(int k) {
    Graph t = broom(k);
    int m = (1 << k) - 2 * k + 2;
    std::vector<ColorId> color_of(t.edge_count(), 0);
    std::vector<std::string> labels;
    for (int c = 0; c <= k; ++c) labels.push_back(std::to_string(c));
    for (EdgeId e = 0; e < t.edge_count(); ++e) {
        auto [u, v] = t.edge(e);
        if (v < m) {
            color_of[e] = std::countr_zero(static_cast<unsigned>(u + 1));  // gray coloring of the handle
        } else if (u == m - 1 && v == m) {
            color_of[e] = k;
        } else {
            color_of[e] = v - m - 1;  // star leaves
        }
    }
    return EdgeColoring::from_colors(std::move(t), std::move(color_of), k + 1, std::move(labels));
}

}  // namespace pec

#endif  // PEC_HYPERCUBE_HPP
