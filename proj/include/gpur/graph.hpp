#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gpur {

// Bit i of a label is vertex i (0-based). Externally vertices are numbered 1..n.
using Label = std::uint32_t;

constexpr int max_vertices = 26;

inline Label bit(int i) { return Label{1} << i; }

struct Edge {
    int a;
    int b;
    bool operator==(const Edge &) const = default;
};

enum class Axis { x, y, z };

struct FlipPattern {
    Label mask = 0;
    FlipPattern operator^(FlipPattern o) const { return {mask ^ o.mask}; }
    bool operator==(const FlipPattern &) const = default;
};

struct ColoringResult {
    std::optional<Label> color_a;  // set when the graph is bipartite
    std::vector<int> odd_cycle;    // 0-based witness otherwise
    bool ok() const { return color_a.has_value(); }
};

// BFS two-coloring; each component's smallest vertex goes to A.
inline ColoringResult two_color(const std::vector<Edge> &edges, int n) {
    std::vector<std::vector<int>> adj(n);
    for (auto e : edges) {
        if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n)
            throw std::invalid_argument("edge endpoint out of range");
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    std::vector<int> color(n, -1), parent(n, -1), depth(n, 0);
    ColoringResult res;
    Label a = 0;
    for (int s = 0; s < n; s++) {
        if (color[s] >= 0)
            continue;
        color[s] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int v : adj[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    parent[v] = u;
                    depth[v] = depth[u] + 1;
                    q.push(v);
                } else if (color[v] == color[u]) {
                    // walk both tree paths up to the common ancestor
                    std::vector<int> left, right;
                    int x = u, y = v;
                    while (depth[x] > depth[y]) { left.push_back(x); x = parent[x]; }
                    while (depth[y] > depth[x]) { right.push_back(y); y = parent[y]; }
                    while (x != y) {
                        left.push_back(x);
                        right.push_back(y);
                        x = parent[x];
                        y = parent[y];
                    }
                    left.push_back(x);
                    // ancestor .. u, then v .. back towards the ancestor
                    std::reverse(left.begin(), left.end());
                    res.odd_cycle = std::move(left);
                    res.odd_cycle.insert(res.odd_cycle.end(), right.begin(), right.end());
                    std::rotate(res.odd_cycle.begin(),
                                std::min_element(res.odd_cycle.begin(), res.odd_cycle.end()),
                                res.odd_cycle.end());
                    return res;
                }
            }
        }
    }
    for (int i = 0; i < n; i++)
        if (color[i] == 0)
            a |= bit(i);
    res.color_a = a;
    return res;
}

class TwoColorableGraph {
  public:
    TwoColorableGraph(int n, std::vector<Edge> edges, Label color_a, std::string name = "")
        : n_(n), edges_(std::move(edges)), color_a_(color_a), name_(std::move(name)) {
        if (n < 1 || n > max_vertices)
            throw std::invalid_argument("vertex count must be in 1..26, got " + std::to_string(n));
        if (color_a_ >> n)
            throw std::invalid_argument("color A contains vertices beyond n");
        nbr_.assign(n, 0);
        std::set<std::pair<int, int>> seen;
        for (auto &e : edges_) {
            if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n)
                throw std::invalid_argument("edge {" + std::to_string(e.a + 1) + "," +
                                            std::to_string(e.b + 1) + "} out of range");
            if (e.a == e.b)
                throw std::invalid_argument("self-loop at vertex " + std::to_string(e.a + 1));
            if (!seen.insert(std::minmax(e.a, e.b)).second)
                throw std::invalid_argument("duplicate edge {" + std::to_string(e.a + 1) + "," +
                                            std::to_string(e.b + 1) + "}");
            if (is_a(e.a) == is_a(e.b))
                throw std::invalid_argument("edge {" + std::to_string(e.a + 1) + "," +
                                            std::to_string(e.b + 1) + "} joins vertices of one color");
            nbr_[e.a] |= bit(e.b);
            nbr_[e.b] |= bit(e.a);
        }
    }

    int size() const { return n_; }
    Label dim() const { return Label{1} << n_; }
    const std::vector<Edge> &edges() const { return edges_; }
    Label a_mask() const { return color_a_; }
    Label b_mask() const { return (dim() - 1) & ~color_a_; }
    int a_count() const { return std::popcount(color_a_); }
    int b_count() const { return n_ - a_count(); }
    bool is_a(int v) const { return (color_a_ >> v) & 1; }
    Label neighbors(int v) const { return nbr_.at(v); }
    int degree(int v) const { return std::popcount(nbr_.at(v)); }
    const std::string &name() const { return name_; }

    bool connected() const {
        Label seen = 1, frontier = 1;
        while (frontier) {
            Label next = 0;
            for (int v = 0; v < n_; v++)
                if ((frontier >> v) & 1)
                    next |= nbr_[v];
            frontier = next & ~seen;
            seen |= next;
        }
        return seen == dim() - 1;
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> w;
        if (!connected())
            w.push_back("graph " + name_ + " is disconnected");
        return w;
    }

  private:
    int n_;
    std::vector<Edge> edges_;
    Label color_a_;
    std::string name_;
    std::vector<Label> nbr_;
};

// qubit is 0-based.
inline FlipPattern flip_pattern(const TwoColorableGraph &g, int qubit, Axis axis) {
    if (qubit < 0 || qubit >= g.size())
        throw std::out_of_range("qubit " + std::to_string(qubit + 1) + " outside graph of size " +
                                std::to_string(g.size()));
    switch (axis) {
    case Axis::z:
        return {bit(qubit)};
    case Axis::x:
        return {g.neighbors(qubit)};
    case Axis::y:
        return {bit(qubit) ^ g.neighbors(qubit)};
    }
    return {};
}

// ---- named families ----

inline TwoColorableGraph make_ghz(int n) {
    if (n < 1)
        throw std::invalid_argument("ghz needs N >= 1");
    std::vector<Edge> e;
    for (int k = 1; k < n; k++)
        e.push_back({0, k});
    return {n, e, 1, "ghz:" + std::to_string(n)};
}

inline TwoColorableGraph make_chain(int n, bool closed = false) {
    if (n < 1)
        throw std::invalid_argument("chain needs N >= 1");
    std::vector<Edge> e;
    for (int k = 0; k + 1 < n; k++)
        e.push_back({k, k + 1});
    if (closed) {
        if (n % 2)
            throw std::invalid_argument("closed chain with odd N=" + std::to_string(n) +
                                        " is not two-colorable");
        if (n < 4)
            throw std::invalid_argument("closed chain needs N >= 4");
        e.push_back({n - 1, 0});
    }
    Label a = 0;
    for (int k = 0; k < n; k += 2)
        a |= bit(k);
    return {n, e, a, "chain:" + std::to_string(n) + (closed ? ":closed" : "")};
}

// nx sites along x, ny along y; vertex (x,y) has index y*nx + x.
inline TwoColorableGraph make_grid(int nx, int ny, bool wrapx, bool wrapy) {
    if (nx < 2 || ny < 2)
        throw std::invalid_argument("grid sides must be >= 2");
    if (nx * ny > max_vertices)
        throw std::invalid_argument("grid has more than 26 sites");
    for (auto [w, s, ax] : {std::tuple{wrapx, nx, "x"}, std::tuple{wrapy, ny, "y"}}) {
        if (w && s % 2)
            throw std::invalid_argument(std::string("wrap along ") + ax + " needs an even side, got " +
                                        std::to_string(s));
        if (w && s < 4)
            throw std::invalid_argument(std::string("wrap along ") + ax + " needs side >= 4");
    }
    auto id = [&](int x, int y) { return y * nx + x; };
    std::vector<Edge> e;
    for (int y = 0; y < ny; y++)
        for (int x = 0; x < nx; x++) {
            if (x + 1 < nx)
                e.push_back({id(x, y), id(x + 1, y)});
            else if (wrapx)
                e.push_back({id(x, y), id(0, y)});
            if (y + 1 < ny)
                e.push_back({id(x, y), id(x, y + 1)});
            else if (wrapy)
                e.push_back({id(x, y), id(x, 0)});
        }
    Label even = 0;
    for (int y = 0; y < ny; y++)
        for (int x = 0; x < nx; x++)
            if ((x + y) % 2 == 0)
                even |= bit(id(x, y));
    Label odd = ((Label{1} << (nx * ny)) - 1) & ~even;
    // smaller class is A; ties keep vertex 1 in A
    Label a = std::popcount(odd) < std::popcount(even) ? odd : even;
    std::string name = "grid:" + std::to_string(nx) + "x" + std::to_string(ny);
    if (wrapx)
        name += ":wrapx";
    if (wrapy)
        name += ":wrapy";
    return {nx * ny, e, a, name};
}

// 2N vertices; odd vertex j (1-based) joins even vertices j+1, j+3, ..., j+2k-1 (mod 2N).
inline TwoColorableGraph make_gnk(int n, int k) {
    if (n < 1 || k < 1 || k > n)
        throw std::invalid_argument("gnk needs 1 <= k <= N");
    if (2 * n > max_vertices)
        throw std::invalid_argument("gnk needs N <= 13");
    std::vector<Edge> e;
    Label a = 0;
    for (int i = 0; i < n; i++) {
        int j = 2 * i;
        a |= bit(j);
        for (int t = 0; t < k; t++)
            e.push_back({j, (j + 1 + 2 * t) % (2 * n)});
    }
    return {2 * n, e, a, "gnk:" + std::to_string(n) + "," + std::to_string(k)};
}

// Cube with vertex 111 removed; vertex v+1 is the corner with coordinates given by the bits of v.
inline TwoColorableGraph make_steane7() {
    std::vector<Edge> e;
    Label a = 0;
    for (int v = 0; v < 7; v++) {
        if (std::popcount(unsigned(v)) % 2 == 0)
            a |= bit(v);
        for (int d = 0; d < 3; d++) {
            int w = v ^ (1 << d);
            if (w > v && w < 7)
                e.push_back({v, w});
        }
    }
    return {7, e, a, "steane7"};
}

inline TwoColorableGraph parse_edge_list(std::istream &in, const std::string &name = "file") {
    std::string line;
    int lineno = 0;
    int n = -1;
    std::vector<Edge> edges;
    std::optional<Label> color_a;
    auto fail = [&](const std::string &msg) {
        throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
    };
    auto vertex = [&](long v) {
        if (v < 1 || v > n)
            fail("vertex " + std::to_string(v) + " outside 1.." + std::to_string(n));
        return int(v - 1);
    };
    while (std::getline(in, line)) {
        lineno++;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head))
            continue;
        if (n < 0) {
            if (head != "n" || !(ss >> n))
                fail("expected 'n <count>'");
            if (n < 1 || n > max_vertices)
                fail("vertex count must be in 1..26");
            std::string rest;
            if (ss >> rest)
                fail("trailing text '" + rest + "'");
            continue;
        }
        if (head == "colorA:") {
            if (color_a)
                fail("repeated colorA line");
            Label m = 0;
            long v;
            while (ss >> v)
                m |= bit(vertex(v));
            if (!ss.eof())
                fail("malformed colorA entry");
            color_a = m;
            continue;
        }
        long a, b;
        std::string rest;
        std::istringstream es(line);
        if (!(es >> a >> b) || (es >> rest))
            fail("expected 'a b' edge, got '" + line + "'");
        edges.push_back({vertex(a), vertex(b)});
    }
    if (n < 0)
        throw std::invalid_argument("empty edge list: missing 'n <count>' line");
    if (!color_a) {
        auto c = two_color(edges, n);
        if (!c.ok()) {
            std::string w;
            for (int v : c.odd_cycle)
                w += " " + std::to_string(v + 1);
            throw std::invalid_argument("graph is not two-colorable; odd cycle:" + w);
        }
        color_a = *c.color_a;
    }
    return {n, edges, *color_a, name};
}

inline std::string format_edge_list(const TwoColorableGraph &g) {
    std::ostringstream out;
    out << "n " << g.size() << "\n";
    for (auto e : g.edges())
        out << e.a + 1 << " " << e.b + 1 << "\n";
    out << "colorA:";
    for (int v = 0; v < g.size(); v++)
        if (g.is_a(v))
            out << " " << v + 1;
    out << "\n";
    return out.str();
}

namespace detail {
inline int parse_int(const std::string &s, const std::string &what) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception &) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size())
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}
inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream ss(s);
    while (std::getline(ss, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.push_back("");
    return out;
}
}  // namespace detail

// ghz:N, chain:N[:closed], grid:XxY[:wrapx][:wrapy], gnk:N,k, steane7, file:PATH
inline TwoColorableGraph build_named_graph(const std::string &spec) {
    auto colon = spec.find(':');
    std::string family = spec.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (family == "file") {
        std::ifstream f(rest);
        if (!f)
            throw std::invalid_argument("cannot open graph file '" + rest + "'");
        return parse_edge_list(f, spec);
    }
    auto parts = detail::split(rest, ':');
    if (family == "ghz") {
        if (parts.size() != 1)
            throw std::invalid_argument("expected ghz:N");
        return make_ghz(detail::parse_int(parts[0], "ghz size"));
    }
    if (family == "chain") {
        if (parts.empty() || parts.size() > 2 || (parts.size() == 2 && parts[1] != "closed"))
            throw std::invalid_argument("expected chain:N or chain:N:closed");
        return make_chain(detail::parse_int(parts[0], "chain size"), parts.size() == 2);
    }
    if (family == "grid") {
        if (parts.empty())
            throw std::invalid_argument("expected grid:XxY[:wrapx][:wrapy]");
        auto dims = detail::split(parts[0], 'x');
        if (dims.size() != 2)
            throw std::invalid_argument("expected grid dimensions XxY, got '" + parts[0] + "'");
        bool wx = false, wy = false;
        for (std::size_t i = 1; i < parts.size(); i++) {
            if (parts[i] == "wrapx")
                wx = true;
            else if (parts[i] == "wrapy")
                wy = true;
            else
                throw std::invalid_argument("unknown grid option '" + parts[i] + "'");
        }
        return make_grid(detail::parse_int(dims[0], "grid side"), detail::parse_int(dims[1], "grid side"), wx, wy);
    }
    if (family == "gnk") {
        auto nk = detail::split(rest, ',');
        if (nk.size() != 2)
            throw std::invalid_argument("expected gnk:N,k");
        return make_gnk(detail::parse_int(nk[0], "gnk N"), detail::parse_int(nk[1], "gnk k"));
    }
    if (family == "steane7" && rest.empty() && colon == std::string::npos)
        return make_steane7();
    throw std::invalid_argument("unsupported graph spec '" + spec +
                                "' (use ghz:N, chain:N[:closed], grid:XxY[:wrapx][:wrapy], gnk:N,k, steane7, file:PATH)");
}

}  // namespace gpur
