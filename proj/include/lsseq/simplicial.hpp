#pragma once

#include "lsseq/int_matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lsseq {

using Simplex = std::vector<int>;  // strictly increasing vertex indices

/// A simplex with an arbitrary ordering of its vertices; the ordering is its
/// orientation.
struct OrientedSimplex {
    std::vector<int> vertices;

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    friend bool operator==(const OrientedSimplex&, const OrientedSimplex&) = default;
};

/// Finite simplicial complex.  Every stored simplex is kept in increasing
/// vertex order, which is its canonical orientation; the set is closed under
/// taking faces.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closure of the given simplices (any vertex order) on vertices
    /// 0..vertex_count-1.  Throws std::invalid_argument on repeated or
    /// out-of-range vertices.
    static SimplicialComplex from_maximal(int vertex_count, const std::vector<std::vector<int>>& simplices);

    int vertex_count() const { return vertex_count_; }
    int dimension() const { return static_cast<int>(cells_.size()) - 1; }
    /// C_p in canonical order (lexicographic); empty for p out of range.
    const std::vector<Simplex>& simplices(int p) const;
    std::size_t count(int p) const { return simplices(p).size(); }
    std::optional<std::size_t> index_of(const Simplex& s) const;
    bool contains(const Simplex& s) const { return index_of(s).has_value(); }
    bool adjacent(int u, int v) const;

    long euler_characteristic() const;

private:
    int vertex_count_ = 0;
    std::vector<std::vector<Simplex>> cells_;
    std::vector<std::map<Simplex, std::size_t>> index_;
};

/// l-th face: drop the l-th listed vertex, keep the order of the others.
OrientedSimplex face(const OrientedSimplex& s, int l);

/// Sign of the permutation taking the listed order to increasing order.
int orientation_sign(const OrientedSimplex& s);

struct GlueResult {
    std::size_t face_index;  // index of tau in C_{p-1}
    int sign;                // sign of the permutation relating face(s, l) to tau
};

/// The canonical (p-1)-simplex carried by the l-th face of `s` together with
/// the sign of the reordering between them.  For canonical input the sign
/// is always +1.  Throws std::out_of_range when the face is not listed.
GlueResult glue_sign(const SimplicialComplex& x, const OrientedSimplex& s, int l);

/// Integral simplicial boundary C_p -> C_{p-1}, coefficient (-1)^l on the
/// l-th face; a |C_{p-1}| x |C_p| matrix.
IntMatrix chain_boundary(const SimplicialComplex& x, int p);

/// Coherent orientation of a closed connected pseudo-surface: a sign per
/// canonical 2-simplex such that every edge receives opposite orientations
/// from its two triangles.  The first triangle gets +1.  nullopt when the
/// complex is not a closed orientable surface.
std::optional<std::vector<int>> coherent_orientation(const SimplicialComplex& x);

/// A word in monodromy generators: entry +g (resp. -g) stands for the g-th
/// generator matrix (resp. its inverse), generators numbered from 1.
using GeneratorWord = std::vector<int>;

/// Built-in triangulation together with the data needed to realize a local
/// system from generator matrices: for every edge u<v the transport u->v as a
/// word in the generators, and one closed vertex path per generator whose
/// holonomy is that generator.
struct BuiltinComplex {
    std::string name;
    std::shared_ptr<const SimplicialComplex> complex;
    int basepoint = 0;
    std::vector<std::vector<int>> generator_loops;
    std::map<std::pair<int, int>, GeneratorWord> edge_words;
    std::size_t generator_count() const { return generator_loops.size(); }
};

/// Names: "simplex(p)", "circle(n)" (n >= 3), "torus2", "genus(g)" (g >= 1),
/// "sphere2".  Throws std::invalid_argument for unknown names or parameters.
BuiltinComplex builtin(const std::string& name);

BuiltinComplex builtin_simplex(int p);
BuiltinComplex builtin_circle(int n);
BuiltinComplex builtin_torus2();
BuiltinComplex builtin_genus(int g);
BuiltinComplex builtin_sphere2();

}  // namespace lsseq
