#include "lsseq/simplicial.hpp"

#include <algorithm>
#include <memory>
#include <queue>
#include <regex>
#include <set>
#include <stdexcept>

namespace lsseq {

namespace {

const std::vector<Simplex> kNoSimplices;

GeneratorWord inverse_word(const GeneratorWord& w) {
    GeneratorWord inv(w.rbegin(), w.rend());
    for (int& g : inv) g = -g;
    return inv;
}

GeneratorWord concat(GeneratorWord a, const GeneratorWord& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Records the transport u->v; the map stores it for the canonical direction.
void set_edge_word(BuiltinComplex& b, int u, int v, const GeneratorWord& word) {
    if (u < v)
        b.edge_words.emplace(std::make_pair(u, v), word);
    else
        b.edge_words.emplace(std::make_pair(v, u), inverse_word(word));
}

}  // namespace

SimplicialComplex SimplicialComplex::from_maximal(int vertex_count, const std::vector<std::vector<int>>& simplices) {
    if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
    SimplicialComplex x;
    x.vertex_count_ = vertex_count;
    std::vector<std::set<Simplex>> cells(vertex_count > 0 ? 1 : 0);
    for (int v = 0; v < vertex_count; ++v) cells[0].insert(Simplex{v});

    for (const auto& raw : simplices) {
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        if (s.empty()) throw std::invalid_argument("empty simplex");
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex has a repeated vertex");
        if (s.front() < 0 || s.back() >= vertex_count) throw std::invalid_argument("simplex vertex out of range");
        const std::size_t k = s.size();
        if (k > 20) throw std::invalid_argument("simplex dimension too large");
        if (cells.size() < k) cells.resize(k);
        for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
            Simplex f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1UL << i)) f.push_back(s[i]);
            cells[f.size() - 1].insert(std::move(f));
        }
    }

    for (const auto& level : cells) {
        x.cells_.emplace_back(level.begin(), level.end());
        std::map<Simplex, std::size_t> idx;
        for (std::size_t i = 0; i < x.cells_.back().size(); ++i) idx.emplace(x.cells_.back()[i], i);
        x.index_.push_back(std::move(idx));
    }
    return x;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int p) const {
    if (p < 0 || p >= static_cast<int>(cells_.size())) return kNoSimplices;
    return cells_[static_cast<std::size_t>(p)];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
    if (s.empty() || s.size() > index_.size()) return std::nullopt;
    const auto& idx = index_[s.size() - 1];
    auto it = idx.find(s);
    if (it == idx.end()) return std::nullopt;
    return it->second;
}

bool SimplicialComplex::adjacent(int u, int v) const {
    if (u == v) return false;
    return contains(Simplex{std::min(u, v), std::max(u, v)});
}

long SimplicialComplex::euler_characteristic() const {
    long chi = 0;
    for (std::size_t p = 0; p < cells_.size(); ++p)
        chi += (p % 2 == 0 ? 1 : -1) * static_cast<long>(cells_[p].size());
    return chi;
}

OrientedSimplex face(const OrientedSimplex& s, int l) {
    if (l < 0 || l > s.dim()) throw std::out_of_range("face index out of range");
    OrientedSimplex f = s;
    f.vertices.erase(f.vertices.begin() + l);
    return f;
}

int orientation_sign(const OrientedSimplex& s) {
    int inversions = 0;
    for (std::size_t i = 0; i < s.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < s.vertices.size(); ++j)
            if (s.vertices[i] > s.vertices[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

GlueResult glue_sign(const SimplicialComplex& x, const OrientedSimplex& s, int l) {
    const OrientedSimplex f = face(s, l);
    Simplex tau = f.vertices;
    std::sort(tau.begin(), tau.end());
    auto idx = x.index_of(tau);
    if (!idx) throw std::out_of_range("face not found: complex is not closed under faces");
    return GlueResult{*idx, orientation_sign(f)};
}

IntMatrix chain_boundary(const SimplicialComplex& x, int p) {
    const auto& top = x.simplices(p);
    IntMatrix d(x.count(p - 1), top.size());
    if (p <= 0) return d;
    for (std::size_t j = 0; j < top.size(); ++j) {
        const OrientedSimplex sigma{top[j]};
        for (int l = 0; l <= p; ++l) {
            const auto g = glue_sign(x, sigma, l);
            d(g.face_index, j) += (l % 2 == 0 ? 1 : -1) * g.sign;
        }
    }
    return d;
}

std::optional<std::vector<int>> coherent_orientation(const SimplicialComplex& x) {
    if (x.dimension() != 2) return std::nullopt;
    const auto& tris = x.simplices(2);
    // edge index -> (triangle, position of the dropped vertex)
    std::vector<std::vector<std::pair<std::size_t, int>>> incidence(x.count(1));
    for (std::size_t t = 0; t < tris.size(); ++t) {
        for (int l = 0; l <= 2; ++l) {
            const auto g = glue_sign(x, OrientedSimplex{tris[t]}, l);
            incidence[g.face_index].emplace_back(t, l);
        }
    }
    for (const auto& inc : incidence)
        if (inc.size() != 2) return std::nullopt;

    std::vector<int> sign(tris.size(), 0);
    std::queue<std::size_t> pending;
    sign[0] = 1;
    pending.push(0);
    while (!pending.empty()) {
        const std::size_t t = pending.front();
        pending.pop();
        for (int l = 0; l <= 2; ++l) {
            const auto g = glue_sign(x, OrientedSimplex{tris[t]}, l);
            for (const auto& [other, lo] : incidence[g.face_index]) {
                if (other == t) continue;
                // induced edge orientations sign*(-1)^l must cancel
                const int want = -sign[t] * (((l + lo) % 2 == 0) ? 1 : -1);
                if (sign[other] == 0) {
                    sign[other] = want;
                    pending.push(other);
                } else if (sign[other] != want) {
                    return std::nullopt;
                }
            }
        }
    }
    for (int s : sign)
        if (s == 0) return std::nullopt;
    return sign;
}

BuiltinComplex builtin_simplex(int p) {
    if (p < 0) throw std::invalid_argument("simplex(p) needs p >= 0");
    std::vector<int> all(static_cast<std::size_t>(p) + 1);
    for (int i = 0; i <= p; ++i) all[static_cast<std::size_t>(i)] = i;
    BuiltinComplex b;
    b.name = "simplex(" + std::to_string(p) + ")";
    b.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(p + 1, {all}));
    return b;
}

BuiltinComplex builtin_circle(int n) {
    if (n < 3) throw std::invalid_argument("circle(n) needs n >= 3");
    std::vector<std::vector<int>> edges;
    for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    BuiltinComplex b;
    b.name = "circle(" + std::to_string(n) + ")";
    b.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(n, edges));
    std::vector<int> loop;
    for (int i = 0; i < n; ++i) loop.push_back(i);
    loop.push_back(0);
    b.generator_loops.push_back(loop);
    // spanning path 0-1-...-(n-1) carries the identity; the closing edge the generator
    set_edge_word(b, n - 1, 0, {1});
    return b;
}

// Seven-vertex torus: the quotient of the triangulated plane (unit square
// grid cut along the (1,1) diagonals) by the lattice spanned by (1,3) and
// (-2,1), with grid point (x, y) sent to vertex x + 2y mod 7.
BuiltinComplex builtin_torus2() {
    std::vector<std::vector<int>> tris;
    for (int i = 0; i < 7; ++i) {
        tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
        tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    BuiltinComplex b;
    b.name = "torus2";
    b.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(7, tris));
    // generator 1: grid path (0,0)->(1,1)->(1,2)->(1,3), lattice vector (1,3)
    // generator 2: grid path (0,0)->(0,1)->(-1,1)->(-2,1), lattice vector (-2,1)
    b.generator_loops = {{0, 3, 5, 0}, {0, 2, 1, 0}};

    // Vertex i is represented by grid point (i, 0).  An edge u->v is a grid
    // step delta; the lift ends at (v, 0) + lambda, lambda = a*(1,3) + b*(-2,1),
    // and the transport is A^a B^b.
    static const int step[7][2] = {{0, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, -1}, {0, -1}, {-1, 0}};
    for (const auto& e : b.complex->simplices(1)) {
        const int u = e[0], v = e[1];
        const int diff = ((v - u) % 7 + 7) % 7;
        const int lx = u + step[diff][0] - v;
        const int ly = step[diff][1];
        const int a = (lx + 2 * ly) / 7;
        const int bb = ly - 3 * a;
        GeneratorWord w;
        for (int k = 0; k < std::abs(a); ++k) w.push_back(a > 0 ? 1 : -1);
        for (int k = 0; k < std::abs(bb); ++k) w.push_back(bb > 0 ? 2 : -2);
        set_edge_word(b, u, v, w);
    }
    return b;
}

// Closed orientable surface of genus g from the 4g-gon with boundary word
// a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1.  Each side is cut into three
// segments, a collar ring of 12g vertices follows the boundary and a central
// vertex cones off the ring; the result is simplicial with
// V = 2 + 16g, E = 54g, F = 36g.
//
// Local systems are realized in the gauge that is trivial over the open
// polygon: boundary position j carries the word Phi_j converting polygon
// coordinates into those of the vertex's reference appearance, and the
// generator loops are the dual loops crossing each side once.
BuiltinComplex builtin_genus(int g) {
    if (g < 1) throw std::invalid_argument("genus(g) needs g >= 1");
    const int positions = 12 * g;
    const int center = 1 + 16 * g;
    auto side_point = [](int letter, int t) { return 1 + 2 * letter + (t - 1); };
    auto ring = [g](int j) { return 1 + 4 * g + j; };
    auto boundary_vertex = [&](int j) {
        const int s = j / 3, t = j % 3;
        if (t == 0) return 0;
        const int block = s / 4, type = s % 4;
        const int letter = 2 * block + (type % 2);
        const bool positive = type < 2;
        return side_point(letter, positive ? t : 3 - t);
    };
    auto phi = [&](int j) {
        const int s = j / 3, t = j % 3;
        const int block = s / 4, type = s % 4;
        const int a = 2 * block + 1, bgen = 2 * block + 2;
        if (t != 0) {
            if (type == 2) return GeneratorWord{a};
            if (type == 3) return GeneratorWord{-bgen};
            return GeneratorWord{};
        }
        GeneratorWord w;
        for (int i = 0; i < block; ++i) w = concat(w, {2 * i + 1, 2 * i + 2, -(2 * i + 1), -(2 * i + 2)});
        switch (type) {
            case 1: return concat(w, {a, bgen, -a});
            case 2: return concat(w, {a, bgen});
            case 3: return concat(w, {a});
            default: return w;
        }
    };

    std::vector<std::vector<int>> tris;
    for (int j = 0; j < positions; ++j) {
        const int jn = (j + 1) % positions;
        tris.push_back({boundary_vertex(j), boundary_vertex(jn), ring(j)});
        tris.push_back({boundary_vertex(jn), ring(jn), ring(j)});
        tris.push_back({center, ring(j), ring(jn)});
    }

    BuiltinComplex b;
    b.name = "genus(" + std::to_string(g) + ")";
    b.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(2 + 16 * g, tris));
    b.basepoint = center;
    for (int j = 0; j < positions; ++j) {
        const int jn = (j + 1) % positions;
        set_edge_word(b, boundary_vertex(j), boundary_vertex(jn), concat(phi(jn), inverse_word(phi(j))));
        set_edge_word(b, ring(j), boundary_vertex(j), phi(j));
        set_edge_word(b, ring(j), boundary_vertex(jn), phi(jn));
    }
    for (int i = 0; i < g; ++i) {
        const int a_pos = 3 * (4 * i) + 1, a_neg = 3 * (4 * i + 2) + 2;
        const int b_pos = 3 * (4 * i + 1) + 1, b_neg = 3 * (4 * i + 3) + 2;
        b.generator_loops.push_back({center, ring(a_neg), side_point(2 * i, 1), ring(a_pos), center});
        b.generator_loops.push_back({center, ring(b_pos), side_point(2 * i + 1, 1), ring(b_neg), center});
    }
    return b;
}

BuiltinComplex builtin_sphere2() {
    BuiltinComplex b;
    b.name = "sphere2";
    b.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
    return b;
}

BuiltinComplex builtin(const std::string& name) {
    static const std::regex with_param(R"(^\s*([a-z0-9]+)\s*\(\s*(-?\d+)\s*\)\s*$)");
    static const std::regex bare(R"(^\s*([a-z0-9]+)\s*$)");
    std::smatch m;
    if (std::regex_match(name, m, with_param)) {
        const std::string kind = m[1];
        const int param = std::stoi(m[2]);
        if (kind == "simplex") return builtin_simplex(param);
        if (kind == "circle") return builtin_circle(param);
        if (kind == "genus") return builtin_genus(param);
    } else if (std::regex_match(name, m, bare)) {
        const std::string kind = m[1];
        if (kind == "torus2") return builtin_torus2();
        if (kind == "sphere2") return builtin_sphere2();
    }
    throw std::invalid_argument("unknown built-in complex: " + name);
}

}  // namespace lsseq
