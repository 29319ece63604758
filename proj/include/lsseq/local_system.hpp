#pragma once

#include "lsseq/abelian.hpp"
#include "lsseq/int_matrix.hpp"
#include "lsseq/simplicial.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lsseq {

/// Local coefficient system with fibre Z^m over the vertices of a finite
/// complex.  Every edge {u,v} carries a unimodular transport T_{u->v} mapping
/// the fibre at u to the fibre at v; T_{v->u} is its inverse.
class LocalSystem {
public:
    /// Transports are given for the canonical direction u < v of every edge.
    /// Throws std::invalid_argument on missing edges or wrong shapes and
    /// std::domain_error("not unimodular") on non-invertible transports.
    LocalSystem(std::shared_ptr<const SimplicialComplex> base, std::size_t fiber_rank,
                std::map<std::pair<int, int>, IntMatrix> transports);

    static LocalSystem constant(std::shared_ptr<const SimplicialComplex> base, std::size_t fiber_rank);

    const SimplicialComplex& base() const { return *base_; }
    const std::shared_ptr<const SimplicialComplex>& base_ptr() const { return base_; }
    std::size_t fiber_rank() const { return rank_; }

    /// T_{u->v}; throws std::invalid_argument if u and v are not adjacent.
    const IntMatrix& transport(int u, int v) const;

    /// The same system after the change of fibre coordinates g_v at every
    /// vertex: T'_{u->v} = g_v T_{u->v} g_u^{-1}.
    LocalSystem gauge_transformed(const std::vector<IntMatrix>& gauge) const;

private:
    std::shared_ptr<const SimplicialComplex> base_;
    std::size_t rank_;
    std::map<std::pair<int, int>, IntMatrix> forward_;
    std::map<std::pair<int, int>, IntMatrix> backward_;
};

/// The Z/2-graded coefficient bundle (even, odd) over one base complex.
struct GradedKBundle {
    LocalSystem even;
    LocalSystem odd;

    const LocalSystem& fiber(int parity) const { return (parity % 2 == 0) ? even : odd; }
};

/// Flat system on a built-in complex with prescribed holonomy along its
/// generator loops.  Throws std::domain_error("relation violated") when the
/// matrices do not satisfy the surface relation, and ("not unimodular").
LocalSystem from_monodromy(const BuiltinComplex& base, const std::vector<IntMatrix>& mats, std::size_t fiber_rank);

struct FlatnessViolation {
    Simplex triangle;
    std::string reason;
};

/// Checks T_{v->w} T_{u->v} = T_{u->w} on every 2-simplex u<v<w and the
/// inverse law on every edge.  Empty result means the system is flat.
std::vector<FlatnessViolation> flatness_check(const LocalSystem& system);

/// Ordered product of edge transports along a vertex path (first step
/// applied first).  Throws std::invalid_argument on a non-adjacent step.
IntMatrix transport_along(const LocalSystem& system, const std::vector<int>& path);

/// Holonomy along every generator loop of the built-in complex.
std::vector<IntMatrix> holonomy(const LocalSystem& system, const BuiltinComplex& base);

/// Common fixed points of the matrices as a saturated sublattice Z^r <= Z^m.
struct InvariantLattice {
    FgAbGroup group;
    IntMatrix inclusion;  // m x r, columns are a basis of the invariants
};

InvariantLattice invariants(const std::vector<IntMatrix>& mats, std::size_t rank);

/// Z^m / < x - A_i x >, presented as a cokernel with its projection.
Subquotient coinvariants(const std::vector<IntMatrix>& mats, std::size_t rank);

}  // namespace lsseq
