#ifndef PEC_CONSTRUCTIONS_HPP
#define PEC_CONSTRUCTIONS_HPP

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
#include "pec/verify.hpp"

namespace pec {

namespace detail {

/// Densify temporary color ids by first appearance in edge order.
inline EdgeColoring densify(Graph g, const std::vector<int>& raw,
                            const std::vector<std::string>& raw_labels) {
    std::vector<int> dense_of(raw_labels.size(), -1);
    std::vector<ColorId> color_of(raw.size());
    std::vector<std::string> labels;
    for (std::size_t e = 0; e < raw.size(); ++e) {
        if (dense_of[raw[e]] == -1) {
            dense_of[raw[e]] = static_cast<int>(labels.size());
            labels.push_back(raw_labels[raw[e]]);
        }
        color_of[e] = dense_of[raw[e]];
    }
    int k = static_cast<int>(labels.size());
    return EdgeColoring::from_colors(std::move(g), std::move(color_of), k, std::move(labels));
}

inline void self_check_spec(const EdgeColoring& f, const char* what) {
    if (!check_spec(f).valid) throw Error(std::string(what) + ": construction failed self-check");
}

}  // namespace detail

/// Canonical coloring of K_{2^k}: vertices are k-bit strings, f(uv) = u xor v.
/// Exactly 2^k - 1 colors, each class a perfect matching.
inline EdgeColoring canonical(int k) {
    if (k < 1) throw PreconditionError("canonical: k must be >= 1");
    int n = 1 << k;
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> labels, raw_labels(n);
    for (int x = 0; x < n; ++x) raw_labels[x] = bit_string(x, k);
    for (int u = 0; u < n; ++u) {
        labels.push_back(bit_string(u, k));
        for (int v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
            raw.push_back(u ^ v);
        }
    }
    auto f = detail::densify(Graph::from_edges(n, std::move(edges), std::move(labels)), raw,
                             raw_labels);
    detail::self_check_spec(f, "canonical");
    return f;
}

/// Restriction of canonical(k) to the first n vertex labels: a spec of K_n
/// with at most 2^k - 1 colors.
inline EdgeColoring canonical_induced(int k, int n) {
    if (k < 1) throw PreconditionError("canonical_induced: k must be >= 1");
    if (n < 2 || n > (1 << k)) throw PreconditionError("canonical_induced: need 2 <= n <= 2^k");
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> labels, raw_labels(1 << k);
    for (int x = 0; x < (1 << k); ++x) raw_labels[x] = bit_string(x, k);
    for (int u = 0; u < n; ++u) {
        labels.push_back(bit_string(u, k));
        for (int v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
            raw.push_back(u ^ v);
        }
    }
    auto f = detail::densify(Graph::from_edges(n, std::move(edges), std::move(labels)), raw,
                             raw_labels);
    detail::self_check_spec(f, "canonical_induced");
    return f;
}

/// Bicanonical coloring of K_{2^k,2^k}: both sides labeled by k-bit strings,
/// f(uv) = u xor v; exactly 2^k colors.
inline EdgeColoring bicanonical(int k) {
    if (k < 0) throw PreconditionError("bicanonical: k must be >= 0");
    int m = 1 << k;
    int digits = std::max(k, 1);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> labels, raw_labels(m);
    for (int x = 0; x < m; ++x) raw_labels[x] = bit_string(x, digits);
    for (int u = 0; u < m; ++u) labels.push_back("L" + bit_string(u, digits));
    for (int v = 0; v < m; ++v) labels.push_back("R" + bit_string(v, digits));
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            edges.emplace_back(u, m + v);
            raw.push_back(u ^ v);
        }
    auto f = detail::densify(Graph::from_edges(2 * m, std::move(edges), std::move(labels)), raw,
                             raw_labels);
    detail::self_check_spec(f, "bicanonical");
    return f;
}

/// r edge-disjoint copies of the bicanonical coloring: a spec of
/// K_{2^k, r*2^k} with r*2^k colors named (z, j).
inline EdgeColoring biclique_product(int k, int r) {
    if (k < 0 || r < 1) throw PreconditionError("biclique_product: need k >= 0 and r >= 1");
    int m = 1 << k;
    int digits = std::max(k, 1);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> labels, raw_labels(m * r);
    for (int j = 0; j < r; ++j)
        for (int x = 0; x < m; ++x)
            raw_labels[j * m + x] = bit_string(x, digits) + "#" + std::to_string(j + 1);
    for (int u = 0; u < m; ++u) labels.push_back("L" + bit_string(u, digits));
    for (int j = 0; j < r; ++j)
        for (int v = 0; v < m; ++v)
            labels.push_back("R" + bit_string(v, digits) + "#" + std::to_string(j + 1));
    for (int u = 0; u < m; ++u)
        for (int j = 0; j < r; ++j)
            for (int v = 0; v < m; ++v) {
                edges.emplace_back(u, m + j * m + v);
                raw.push_back(j * m + (u ^ v));
            }
    auto f = detail::densify(Graph::from_edges(m + r * m, std::move(edges), std::move(labels)),
                             raw, raw_labels);
    detail::self_check_spec(f, "biclique_product");
    return f;
}

/// Spec of P_n with exactly ceil(lg n) colors: edge i is colored by the bit
/// flipped at step i of the reflected binary Gray code.
inline EdgeColoring gray_path(int n) {
    if (n < 2) throw PreconditionError("gray_path: n must be >= 2");
    int k = ceil_log2(n);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> raw_labels(k);
    for (int b = 0; b < k; ++b) raw_labels[b] = std::to_string(b);
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
        raw.push_back(std::countr_zero(static_cast<unsigned>(i + 1)));
    }
    auto f = detail::densify(Graph::from_edges(n, std::move(edges)), raw, raw_labels);
    detail::self_check_spec(f, "gray_path");
    return f;
}

/// Spec of C_n for even n with ceil(lg n) colors, via a closed Gray walk in
/// Q_{ceil(lg n)}: the length-n/2 Gray path and its mirror across the top
/// dimension spliced into a cycle.
inline EdgeColoring even_cycle(int n) {
    if (n < 4 || n % 2) throw PreconditionError("even_cycle: n must be even and >= 4");
    int k = ceil_log2(n);
    int m = n / 2;
    auto code = [&](int i) -> unsigned {
        auto gray = [](unsigned x) { return x ^ (x >> 1); };
        if (i < m) return gray(static_cast<unsigned>(i));
        return gray(static_cast<unsigned>(2 * m - 1 - i)) | (1u << (k - 1));
    };
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> raw_labels(k);
    for (int b = 0; b < k; ++b) raw_labels[b] = std::to_string(b);
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
        raw.push_back(std::countr_zero(code(i) ^ code((i + 1) % n)));
    }
    auto f = detail::densify(Graph::from_edges(n, std::move(edges)), raw, raw_labels);
    detail::self_check_spec(f, "even_cycle");
    if (!check_cycles_parity(f).valid) throw Error("even_cycle: cycle is not a parity walk");
    return f;
}

/// Spec of C_n for odd n with ceil(lg n) + 1 colors: the Gray path coloring
/// plus one fresh color on the closing edge.
inline EdgeColoring odd_cycle(int n) {
    if (n < 3 || n % 2 == 0) throw PreconditionError("odd_cycle: n must be odd and >= 3");
    int k = ceil_log2(n);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<int> raw;
    std::vector<std::string> raw_labels(k + 1);
    for (int b = 0; b <= k; ++b) raw_labels[b] = std::to_string(b);
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
        raw.push_back(std::countr_zero(static_cast<unsigned>(i + 1)));
    }
    edges.emplace_back(n - 1, 0);
    raw.push_back(k);
    auto f = detail::densify(Graph::from_edges(n, std::move(edges)), raw, raw_labels);
    detail::self_check_spec(f, "odd_cycle");
    return f;
}

inline EdgeColoring cycle(int n) { return n % 2 ? odd_cycle(n) : even_cycle(n); }

/// Family of distinct finite sets over a string universe.
struct SetFamily {
    std::vector<std::vector<std::string>> sets;  // each sorted and deduplicated
};

/// One set per line, whitespace-separated element names; an empty line is the
/// empty set. '#' starts a comment line.
inline SetFamily parse_set_family(const std::string& text) {
    SetFamily fam;
    auto lines = detail::text_lines(text);
    for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
        const std::string& line = lines[ln];
        if (!line.empty() && line[0] == '#') continue;
        auto elems = detail::split_ws(line);
        std::sort(elems.begin(), elems.end());
        elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
        fam.sets.push_back(std::move(elems));
    }
    return fam;
}

inline std::string set_name(const std::vector<std::string>& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += s[i];
    }
    return out + "}";
}

struct SetFamilyColoring {
    EdgeColoring coloring;
    /// |{u xor v : u, v in S}| over all ordered pairs, the empty set included.
    int distinct_differences;
};

/// Theorem-1.1 coloring: K_n on the family with edge uv colored by the
/// symmetric difference of u and v. Always a spec, and the number of distinct
/// differences is at least 2^ceil(lg n).
inline SetFamilyColoring setfam_coloring(const SetFamily& fam) {
    int n = static_cast<int>(fam.sets.size());
    if (n < 2) throw PreconditionError("setfam_coloring: need at least 2 sets");
    {
        auto sorted = fam.sets;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw PreconditionError("setfam_coloring: duplicate set in family");
    }
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::string> labels, diff_names;
    std::unordered_map<std::string, int> diff_index;
    std::vector<int> raw;
    for (int u = 0; u < n; ++u) labels.push_back(set_name(fam.sets[u]));
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            std::vector<std::string> diff;
            std::set_symmetric_difference(fam.sets[u].begin(), fam.sets[u].end(),
                                          fam.sets[v].begin(), fam.sets[v].end(),
                                          std::back_inserter(diff));
            std::string name = set_name(diff);
            auto [it, fresh] = diff_index.emplace(name, static_cast<int>(diff_names.size()));
            if (fresh) diff_names.push_back(name);
            raw.push_back(it->second);
            edges.emplace_back(u, v);
        }
    }
    auto f =
        detail::densify(Graph::from_edges(n, std::move(edges), std::move(labels)), raw, diff_names);
    detail::self_check_spec(f, "setfam_coloring");
    return {std::move(f), static_cast<int>(diff_names.size()) + 1};
}

/// Spec of an acyclic digraph with ceil(lg m) colors, where m is the maximum
/// number of vertices on a directed path. Vertex x gets the length of the
/// longest path ending at x as a binary label; edge uv is colored by the most
/// significant bit where the labels differ.
inline EdgeColoring dag_coloring(const Graph& d) {
    if (!d.directed()) throw PreconditionError("dag_coloring: graph must be directed");
    int n = d.vertex_count();
    std::vector<int> indeg(n, 0), level(n, 0);
    for (const Edge& e : d.edges()) ++indeg[e.v];
    std::vector<VertexId> order;
    for (VertexId v = 0; v < n; ++v)
        if (indeg[v] == 0) order.push_back(v);
    for (std::size_t head = 0; head < order.size(); ++head) {
        VertexId u = order[head];
        for (auto [w, e] : d.neighbors(u)) {
            level[w] = std::max(level[w], level[u] + 1);
            if (--indeg[w] == 0) order.push_back(w);
        }
    }
    if (static_cast<int>(order.size()) != n)
        throw PreconditionError("dag_coloring: cycle detected");
    int m = 1 + *std::max_element(level.begin(), level.end());
    int bits = std::max(1, ceil_log2(m));
    std::vector<int> raw;
    std::vector<std::string> raw_labels(bits);
    for (int b = 0; b < bits; ++b) raw_labels[b] = std::to_string(b);
    for (const Edge& e : d.edges()) {
        if (level[e.v] <= level[e.u]) throw Error("dag_coloring: labels not increasing");
        raw.push_back(std::bit_width(static_cast<unsigned>(level[e.u] ^ level[e.v])) - 1);
    }
    return detail::densify(d, raw, raw_labels);
}

/// Exhaustive check that no directed path has all-even color usage (the §7
/// parity condition for digraphs; in an acyclic digraph all walks are paths
/// and none is closed, so this is also the spec condition). Returns nullopt
/// when the path count exceeds max_paths.
inline std::optional<bool> dag_coloring_parity_ok(const EdgeColoring& f,
                                                  std::int64_t max_paths = 1'000'000) {
    const Graph& d = f.graph();
    std::int64_t paths = 0;
    bool ok = true, capped = false;
    BitVec pi(f.color_count());
    std::function<void(VertexId, int)> dfs = [&](VertexId v, int length) {
        if (!ok || capped) return;
        if (length >= 1 && pi.zero()) {
            ok = false;
            return;
        }
        if (++paths > max_paths) {
            capped = true;
            return;
        }
        for (auto [w, e] : d.neighbors(v)) {
            pi.flip(f.color_of(e));
            dfs(w, length + 1);
            pi.flip(f.color_of(e));
        }
    };
    for (VertexId s = 0; s < d.vertex_count() && ok && !capped; ++s) dfs(s, 0);
    if (!ok) return false;
    if (capped) return std::nullopt;
    return true;
}

/// Proposition-4.4 transfer: from a spec f of K_n to a spec of K_{n,n} with
/// one extra color on the perfect matching v_i w_i.
inline EdgeColoring clique_to_biclique(const EdgeColoring& f) {
    const Graph& g = f.graph();
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.edge_between(u, v))
                throw PreconditionError("clique_to_biclique: graph is not complete");
    if (!check_spec(f).valid) throw PreconditionError("clique_to_biclique: input is not a spec");
    std::string fresh = "new";
    while (std::find(f.color_labels().begin(), f.color_labels().end(), fresh) !=
           f.color_labels().end())
        fresh += "'";
    std::vector<std::string> raw_labels = f.color_labels();
    raw_labels.push_back(fresh);
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<std::string> labels;
    std::vector<int> raw;
    for (int i = 0; i < n; ++i) labels.push_back("L" + g.label(i));
    for (int j = 0; j < n; ++j) labels.push_back("R" + g.label(j));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            edges.emplace_back(i, n + j);
            raw.push_back(i == j ? f.color_count() : f.color_of(*g.edge_between(i, j)));
        }
    auto out = detail::densify(Graph::from_edges(2 * n, std::move(edges), std::move(labels)), raw,
                               raw_labels);
    detail::self_check_spec(out, "clique_to_biclique");
    return out;
}

/// Lemma-3.9/3.11 vertex absorption: extend an optimal spec of K_n that has a
/// non-perfect-matching color class to a spec of K_{n+1} with no new colors.
/// The new vertex u gets color a on uv and, on each uw, the third color c of
/// a weight-3 parity-space vector e_a + e_b + e_c with b = f(vw).
inline EdgeColoring absorb_vertex(const EdgeColoring& f, int span_rank_limit = 20) {
    const Graph& g = f.graph();
    int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.edge_between(u, v))
                throw PreconditionError("absorb_vertex: graph is not complete");
    if (!check_spec(f).valid) throw PreconditionError("absorb_vertex: input is not a spec");

    int k = f.color_count();
    ColorId a = -1;
    VertexId v = -1;
    for (ColorId c = 0; c < k && a == -1; ++c) {
        std::vector<char> covered(n, 0);
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            if (f.color_of(e) == c) covered[g.edge(e).u] = covered[g.edge(e).v] = 1;
        for (VertexId x = 0; x < n; ++x)
            if (!covered[x]) {
                a = c;
                v = x;
                break;
            }
    }
    if (a == -1)
        throw PreconditionError("absorb_vertex: every color class is a perfect matching");

    Gf2Basis space = parity_space(f);
    if (space.rank() > span_rank_limit)
        throw OversizeError("absorb_vertex: parity space rank exceeds enumeration limit");
    std::vector<BitVec> weight3;
    if (space.rank() > 0) {
        BitVec acc(space.width());
        for (std::uint64_t i = 1; i < (std::uint64_t{1} << space.rank()); ++i) {
            acc ^= space.rows()[std::countr_zero(i)];
            if (acc.weight() == 3) weight3.push_back(acc);
        }
    }
    auto third_color = [&](ColorId b) -> ColorId {
        ColorId best = -1;
        for (const BitVec& w : weight3) {
            if (!w.test(a) || !w.test(b)) continue;
            for (int c = 0; c < space.width(); ++c)
                if (w.test(c) && c != a && c != b && (best == -1 || c < best)) best = c;
        }
        return best;
    };

    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<ColorId> color_of;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        edges.emplace_back(g.edge(e).u, g.edge(e).v);
        color_of.push_back(f.color_of(e));
    }
    for (VertexId w = 0; w < n; ++w) {
        edges.emplace_back(w, n);
        if (w == v) {
            color_of.push_back(a);
        } else {
            ColorId b = f.color_of(*g.edge_between(v, w));
            ColorId c = third_color(b);
            if (c == -1)
                throw PreconditionError(
                    "absorb_vertex: no weight-3 parity vector through colors " +
                    f.color_label(a) + "," + f.color_label(b) + " (input was not an optimal spec)");
            color_of.push_back(c);
        }
    }
    std::vector<std::string> labels = g.labels();
    std::string fresh = "u" + std::to_string(n);
    while (std::find(labels.begin(), labels.end(), fresh) != labels.end()) fresh += "'";
    labels.push_back(fresh);
    auto out = EdgeColoring::from_colors(Graph::from_edges(n + 1, std::move(edges), std::move(labels)),
                                         std::move(color_of), k, f.color_labels());
    detail::self_check_spec(out, "absorb_vertex");
    return out;
}

}  // namespace pec

#endif  // PEC_CONSTRUCTIONS_HPP
