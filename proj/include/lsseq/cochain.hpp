#pragma once

#include "lsseq/abelian.hpp"
#include "lsseq/local_system.hpp"

#include <memory>
#include <vector>

namespace lsseq {

/// Sign attached to the l-th face of a (p+1)-simplex in the coboundary
/// C^p -> C^{p+1}: (-1)^l for `classical`, (-1)^{(p+1)-l} for `e1`.
enum class Convention { classical, e1 };

const char* to_string(Convention c);
Convention parse_convention(const std::string& name);

/// Cochains of a simplicial complex with coefficients in a local system.
///
/// A p-cochain assigns to every canonical p-simplex sigma a vector in the
/// fibre over its least vertex sigma[0].  Coordinates of C^p are ordered by
/// simplex index, then fibre coordinate: column = index(sigma) * m + i.
class CochainComplex {
public:
    static CochainComplex build(const LocalSystem& system, Convention convention = Convention::e1);

    Convention convention() const { return convention_; }
    std::size_t fiber_rank() const { return rank_; }
    int top_degree() const { return static_cast<int>(ranks_.size()) - 1; }
    /// n_p = |C_p| * m; zero outside 0..top_degree().
    std::size_t rank(int p) const;
    /// D_p : C^p -> C^{p+1}, an n_{p+1} x n_p matrix (empty shapes at the ends).
    const IntMatrix& differential(int p) const;

private:
    Convention convention_ = Convention::e1;
    std::size_t rank_ = 0;
    std::vector<std::size_t> ranks_;
    std::vector<IntMatrix> differentials_;  // D_0 .. D_top (D_top maps to 0)
    IntMatrix empty_;
};

/// H^0 .. H^top as ker D_p / im D_{p-1} inside C^p.  Throws
/// std::domain_error("differential does not square to zero") if D D != 0.
std::vector<Subquotient> cohomology(const CochainComplex& c);

/// H^p alone; degrees are independent given the differentials.
Subquotient cohomology_at(const CochainComplex& c, int p);

std::vector<FgAbGroup> cohomology_groups(const CochainComplex& c);

struct ConventionComparison {
    std::vector<FgAbGroup> classical;
    std::vector<FgAbGroup> e1;
    bool isomorphic = false;
};

ConventionComparison convention_compare(const LocalSystem& system);

}  // namespace lsseq
