#ifndef PEC_GRAPH_HPP
#define PEC_GRAPH_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pec/bitvec.hpp"
#include "pec/errors.hpp"

namespace pec {

using VertexId = int;
using EdgeId = int;
using ColorId = int;

struct Edge {
    VertexId u;
    VertexId v;
    bool operator==(const Edge&) const = default;
};

/// Finite simple graph with dense vertex indices and string labels.
/// Undirected edges are stored with the smaller endpoint first; directed
/// graphs (used by the DAG construction) keep the pair as given.
class Graph {
  public:
    Graph() = default;

    static Graph from_edges(int n, std::vector<std::pair<VertexId, VertexId>> edge_pairs,
                            std::vector<std::string> labels = {}, bool directed = false) {
        Graph g;
        g.n_ = n;
        g.directed_ = directed;
        if (labels.empty()) {
            labels.reserve(n);
            for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
        }
        if (static_cast<int>(labels.size()) != n) throw Error("graph: label count mismatch");
        g.labels_ = std::move(labels);
        g.adj_.resize(n);
        for (auto [u, v] : edge_pairs) g.add_edge_checked(u, v, 0);
        return g;
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool directed() const { return directed_; }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::string& label(VertexId v) const { return labels_[v]; }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Neighbors of v as (vertex, edge id) pairs; out-neighbors when directed.
    const std::vector<std::pair<VertexId, EdgeId>>& neighbors(VertexId v) const { return adj_[v]; }

    std::optional<EdgeId> edge_between(VertexId u, VertexId v) const {
        if (u == v) return std::nullopt;
        if (!directed_ && u > v) std::swap(u, v);
        auto it = edge_index_.find(key(u, v));
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }

    int max_degree() const {
        int d = 0;
        for (VertexId v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    /// Vertex of maximum degree, smallest index on ties.
    VertexId max_degree_vertex() const {
        VertexId best = 0;
        for (VertexId v = 1; v < n_; ++v)
            if (degree(v) > degree(best)) best = v;
        return best;
    }

    /// Connected components (edge directions ignored), vertices ascending.
    std::vector<std::vector<VertexId>> components() const {
        std::vector<int> comp(n_, -1);
        std::vector<std::vector<VertexId>> out;
        for (VertexId s = 0; s < n_; ++s) {
            if (comp[s] != -1) continue;
            int id = static_cast<int>(out.size());
            out.emplace_back();
            std::vector<VertexId> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                VertexId v = stack.back();
                stack.pop_back();
                out[id].push_back(v);
                for (auto [w, e] : undirected_adj(v))
                    if (comp[w] == -1) {
                        comp[w] = id;
                        stack.push_back(w);
                    }
            }
            std::sort(out[id].begin(), out[id].end());
        }
        return out;
    }

    bool is_connected() const { return n_ <= 1 || components().size() == 1; }

    bool is_tree() const {
        return !directed_ && is_connected() && edge_count() == vertex_count() - 1;
    }

    /// Vertex sequence of a path graph (two endpoints of degree 1, rest degree
    /// 2, connected), starting from the smaller-indexed endpoint. Empty when
    /// the graph is not a path.
    std::vector<VertexId> path_order() const {
        if (directed_ || n_ < 2 || edge_count() != n_ - 1 || !is_connected()) return {};
        std::vector<VertexId> ends;
        for (VertexId v = 0; v < n_; ++v) {
            if (degree(v) == 1)
                ends.push_back(v);
            else if (degree(v) != 2)
                return {};
        }
        if (ends.size() != 2) return {};
        std::vector<VertexId> order{std::min(ends[0], ends[1])};
        VertexId prev = -1;
        while (static_cast<int>(order.size()) < n_) {
            VertexId cur = order.back();
            for (auto [w, e] : adj_[cur])
                if (w != prev) {
                    order.push_back(w);
                    prev = cur;
                    break;
                }
        }
        return order;
    }

    /// Subgraph induced by `verts`; second result maps new edge ids to old.
    std::pair<Graph, std::vector<EdgeId>> induced(const std::vector<VertexId>& verts) const {
        std::vector<int> newid(n_, -1);
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            newid[verts[i]] = static_cast<int>(i);
            labels.push_back(labels_[verts[i]]);
        }
        Graph g;
        g.n_ = static_cast<int>(verts.size());
        g.directed_ = directed_;
        g.labels_ = std::move(labels);
        g.adj_.resize(g.n_);
        std::vector<EdgeId> old_ids;
        for (EdgeId e = 0; e < edge_count(); ++e) {
            auto [u, v] = edges_[e];
            if (newid[u] != -1 && newid[v] != -1) {
                g.add_edge_checked(newid[u], newid[v], 0);
                old_ids.push_back(e);
            }
        }
        return {std::move(g), std::move(old_ids)};
    }

  private:
    friend Graph parse_graph(const std::string&);

    std::uint64_t key(VertexId u, VertexId v) const {
        return static_cast<std::uint64_t>(u) << 32 | static_cast<std::uint32_t>(v);
    }

    void add_edge_checked(VertexId u, VertexId v, int line) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw ParseError(line, "graph: endpoint out of range");
        if (u == v) throw ParseError(line, "graph: loop at vertex '" + labels_[u] + "'");
        if (!directed_ && u > v) std::swap(u, v);
        if (edge_index_.count(key(u, v)))
            throw ParseError(line, "graph: duplicate edge '" + labels_[u] + " " + labels_[v] + "'");
        EdgeId id = static_cast<EdgeId>(edges_.size());
        edges_.push_back({u, v});
        edge_index_.emplace(key(u, v), id);
        adj_[u].emplace_back(v, id);
        if (!directed_) adj_[v].emplace_back(u, id);
    }

    // Adjacency with directions ignored; equals adj_ for undirected graphs.
    std::vector<std::pair<VertexId, EdgeId>> undirected_adj(VertexId v) const {
        if (!directed_) return adj_[v];
        std::vector<std::pair<VertexId, EdgeId>> out = adj_[v];
        for (EdgeId e = 0; e < edge_count(); ++e)
            if (edges_[e].v == v) out.emplace_back(edges_[e].u, e);
        return out;
    }

    int n_ = 0;
    bool directed_ = false;
    std::vector<Edge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<VertexId, EdgeId>>> adj_;
    std::unordered_map<std::uint64_t, EdgeId> edge_index_;
};

/// Walk stored as its vertex sequence; length 0 (a single vertex) is allowed.
class Walk {
  public:
    Walk() = default;
    explicit Walk(std::vector<VertexId> verts) : verts_(std::move(verts)) {}

    const std::vector<VertexId>& vertices() const { return verts_; }
    int length() const { return verts_.empty() ? 0 : static_cast<int>(verts_.size()) - 1; }
    bool is_closed() const { return !verts_.empty() && verts_.front() == verts_.back(); }

    bool is_path() const {
        std::vector<VertexId> s = verts_;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    }

    /// All consecutive pairs are edges of g (respecting direction on digraphs).
    bool valid_in(const Graph& g) const {
        for (std::size_t i = 0; i + 1 < verts_.size(); ++i)
            if (!g.edge_between(verts_[i], verts_[i + 1])) return false;
        return true;
    }

    Walk reversed() const {
        std::vector<VertexId> r(verts_.rbegin(), verts_.rend());
        return Walk(std::move(r));
    }

    bool operator==(const Walk&) const = default;

  private:
    std::vector<VertexId> verts_;
};

/// Total edge-coloring of a graph; owns its graph so values are self-contained.
class EdgeColoring {
  public:
    EdgeColoring() = default;

    static EdgeColoring from_colors(Graph g, std::vector<ColorId> color_of, int k,
                                    std::vector<std::string> color_labels = {}) {
        if (static_cast<int>(color_of.size()) != g.edge_count())
            throw Error("coloring: not total (edge/color count mismatch)");
        for (ColorId c : color_of)
            if (c < 0 || c >= k) throw Error("coloring: color index out of range");
        EdgeColoring f;
        if (color_labels.empty())
            for (int c = 0; c < k; ++c) color_labels.push_back(std::to_string(c));
        if (static_cast<int>(color_labels.size()) != k) throw Error("coloring: color label count mismatch");
        f.graph_ = std::move(g);
        f.color_of_ = std::move(color_of);
        f.k_ = k;
        f.color_labels_ = std::move(color_labels);
        return f;
    }

    const Graph& graph() const { return graph_; }
    ColorId color_of(EdgeId e) const { return color_of_[e]; }
    const std::vector<ColorId>& colors() const { return color_of_; }
    int color_count() const { return k_; }
    const std::string& color_label(ColorId c) const { return color_labels_[c]; }
    const std::vector<std::string>& color_labels() const { return color_labels_; }

    std::vector<int> class_sizes() const {
        std::vector<int> m(k_, 0);
        for (ColorId c : color_of_) ++m[c];
        return m;
    }

    /// Edge ids per color class.
    std::vector<std::vector<EdgeId>> classes() const {
        std::vector<std::vector<EdgeId>> cls(k_);
        for (EdgeId e = 0; e < graph_.edge_count(); ++e) cls[color_of_[e]].push_back(e);
        return cls;
    }

  private:
    Graph graph_;
    std::vector<ColorId> color_of_;
    int k_ = 0;
    std::vector<std::string> color_labels_;
};

/// Usage parity per color along a walk. Concatenating two walks that share an
/// endpoint XORs their parity vectors.
inline BitVec parity_vector(const EdgeColoring& f, const Walk& w) {
    BitVec pi(f.color_count());
    const auto& vs = w.vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        auto e = f.graph().edge_between(vs[i], vs[i + 1]);
        if (!e)
            throw Error("walk: step '" + f.graph().label(vs[i]) + "' -> '" +
                        f.graph().label(vs[i + 1]) + "' is not an edge");
        pi.flip(f.color_of(*e));
    }
    return pi;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline std::vector<std::string> text_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char ch : text) {
        if (ch == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

inline bool is_comment_or_blank(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

}  // namespace detail

/// Edge-list format: UTF-8, '#' comments, one "u v" edge per line, optional
/// first content line "directed". Vertices get dense indices in
/// first-appearance order.
inline Graph parse_graph(const std::string& text) {
    Graph g;
    std::unordered_map<std::string, VertexId> index;
    bool saw_content = false;
    auto lines = detail::text_lines(text);
    std::vector<std::tuple<std::string, std::string, int>> raw;
    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        if (detail::is_comment_or_blank(lines[ln])) continue;
        auto toks = detail::split_ws(lines[ln]);
        if (!saw_content && toks.size() == 1 && toks[0] == "directed") {
            g.directed_ = true;
            saw_content = true;
            continue;
        }
        saw_content = true;
        if (toks.size() != 2) throw ParseError(ln + 1, "graph: expected 'u v'");
        raw.emplace_back(toks[0], toks[1], ln + 1);
    }
    auto intern = [&](const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        VertexId id = static_cast<VertexId>(g.labels_.size());
        index.emplace(name, id);
        g.labels_.push_back(name);
        return id;
    };
    for (auto& [a, b, ln] : raw) {
        intern(a);
        intern(b);
    }
    g.n_ = static_cast<int>(g.labels_.size());
    g.adj_.resize(g.n_);
    for (auto& [a, b, ln] : raw) g.add_edge_checked(index.at(a), index.at(b), ln);
    return g;
}

inline std::string serialize_graph(const Graph& g) {
    std::string out;
    if (g.directed()) out += "directed\n";
    for (const Edge& e : g.edges()) out += g.label(e.u) + " " + g.label(e.v) + "\n";
    return out;
}

/// Coloring format: one "u v c" line per edge; every edge of the graph must
/// appear exactly once. Colors get dense indices by first appearance.
inline EdgeColoring parse_coloring(const Graph& g, const std::string& text) {
    std::vector<ColorId> color_of(g.edge_count(), -1);
    std::vector<std::string> color_labels;
    std::unordered_map<std::string, ColorId> color_index;
    auto lines = detail::text_lines(text);
    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        if (detail::is_comment_or_blank(lines[ln])) continue;
        auto toks = detail::split_ws(lines[ln]);
        if (toks.size() != 3) throw ParseError(ln + 1, "coloring: expected 'u v c'");
        VertexId u = -1, v = -1;
        for (VertexId x = 0; x < g.vertex_count(); ++x) {
            if (g.label(x) == toks[0]) u = x;
            if (g.label(x) == toks[1]) v = x;
        }
        if (u < 0 || v < 0 || !g.edge_between(u, v))
            throw ParseError(ln + 1, "coloring: unknown edge '" + toks[0] + " " + toks[1] + "'");
        EdgeId e = *g.edge_between(u, v);
        if (color_of[e] != -1)
            throw ParseError(ln + 1, "coloring: repeated edge '" + toks[0] + " " + toks[1] + "'");
        auto it = color_index.find(toks[2]);
        ColorId c;
        if (it == color_index.end()) {
            c = static_cast<ColorId>(color_labels.size());
            color_index.emplace(toks[2], c);
            color_labels.push_back(toks[2]);
        } else {
            c = it->second;
        }
        color_of[e] = c;
    }
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (color_of[e] == -1)
            throw ParseError(0, "coloring: uncolored edge '" + g.label(g.edge(e).u) + " " +
                                    g.label(g.edge(e).v) + "'");
    int k = static_cast<int>(color_labels.size());
    return EdgeColoring::from_colors(g, std::move(color_of), k, std::move(color_labels));
}

inline std::string serialize_coloring(const EdgeColoring& f) {
    std::string out;
    const Graph& g = f.graph();
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        out += g.label(g.edge(e).u) + " " + g.label(g.edge(e).v) + " " +
               f.color_label(f.color_of(e)) + "\n";
    return out;
}

}  // namespace pec

#endif  // PEC_GRAPH_HPP
