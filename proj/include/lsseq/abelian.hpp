#pragma once

#include "lsseq/int_matrix.hpp"
#include "lsseq/smith.hpp"

#include <optional>
#include <string>

namespace lsseq {

/// Z^free_rank (+) Z/t_1 (+) ... (+) Z/t_k with t_j >= 2 and t_j | t_{j+1}.
///
/// Coordinates on the group list the free part first, then the torsion
/// summands in order.  Equality is structural on (free_rank, torsion), the
/// optional generator expressions do not take part in it.
struct FgAbGroup {
    std::size_t free_rank = 0;
    IntVector torsion;
    std::optional<IntMatrix> generators;  // ambient x generator_count, when known

    static FgAbGroup free(std::size_t rank) { return FgAbGroup{rank, {}, std::nullopt}; }

    std::size_t generator_count() const { return free_rank + torsion.size(); }
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    /// Product of the torsion coefficients (1 for a torsion-free group).
    Integer torsion_order() const;
    /// Modulus of coordinate i: 0 for a free coordinate, t_j otherwise.
    Integer modulus(std::size_t i) const;
    /// Reduces torsion coordinates into [0, t_j).
    IntVector reduce(IntVector coords) const;
    /// Order of the element with the given coordinates (0 means infinite).
    Integer order_of(const IntVector& coords) const;
    /// Columns t_j * e_j spanning the relations of the coordinate presentation.
    IntMatrix relation_matrix() const;

    friend bool operator==(const FgAbGroup& a, const FgAbGroup& b) {
        return a.free_rank == b.free_rank && a.torsion == b.torsion;
    }
};

/// Canonical rendering: "Z^2 (+) Z/2 (+) Z/4", "Z", "0".
std::string to_string(const FgAbGroup& g);

/// Z / B for subgroups B <= Z <= Z^ambient given by generating columns.
///
/// The quotient is presented in canonical form together with a lift of every
/// canonical generator into the ambient lattice and a projection from cycles
/// to quotient coordinates, so that class-level arithmetic can be carried
/// out on representatives.
class Subquotient {
public:
    /// Throws std::domain_error("boundary not contained in cycles") when some
    /// column of `boundaries` is not an integer combination of `cycles`.
    Subquotient(const IntMatrix& cycles, const IntMatrix& boundaries);

    std::size_t ambient_rank() const { return ambient_; }
    const IntMatrix& cycle_gens() const { return cycles_; }
    const IntMatrix& boundary_gens() const { return boundaries_; }
    const FgAbGroup& quotient() const { return quotient_; }

    IntVector lift(std::size_t generator) const;
    /// ambient x generator_count matrix whose columns are the lifts.
    const IntMatrix& lift_matrix() const { return lifts_; }

    /// Coordinates of the class of `ambient`; nullopt when it is not a cycle.
    std::optional<IntVector> try_project(const IntVector& ambient) const;
    /// As try_project, throwing std::domain_error for non-cycles.
    IntVector project(const IntVector& ambient) const;
    bool is_cycle(const IntVector& ambient) const;

private:
    // Coordinates of `ambient` in the basis of the cycle lattice.
    std::optional<IntVector> cycle_coordinates(const IntVector& ambient) const;

    std::size_t ambient_ = 0;
    IntMatrix cycles_;
    IntMatrix boundaries_;
    FgAbGroup quotient_;

    IntMatrix cycle_basis_;       // ambient x r
    IntMatrix cycle_u_;           // U of the Smith form of `cycles_`
    IntVector cycle_diagonal_;    // its nonzero diagonal
    IntMatrix relation_u_;        // P: cycle coordinates -> adapted coordinates
    IntVector adapted_modulus_;   // per adapted coordinate (0 = free, 1 = trivial)
    std::vector<std::size_t> generator_slot_;  // canonical generator -> adapted coordinate
    IntMatrix lifts_;
};

/// Z^rows / im(A), with canonical generators expressed in Z^rows.
FgAbGroup cokernel(const IntMatrix& a);

/// The cokernel as a full subquotient (projection available).
Subquotient cokernel_presentation(const IntMatrix& a);

Subquotient subquotient(const IntMatrix& cycles, const IntMatrix& boundaries);

/// Homology at G of  A --in--> G --out--> C, where `in` and `out` act on the
/// canonical coordinates of the finitely generated groups.  The result is a
/// subquotient of the coordinate lattice Z^{G.generator_count()}.
/// Throws std::domain_error if `out` is not well defined on G or out*in != 0.
Subquotient homology_at(const FgAbGroup& g, const IntMatrix& in, const IntMatrix& out, const FgAbGroup& c);

/// Throws std::domain_error if the coordinate matrix `map` does not respect
/// the relations of `source` (i.e. is not a homomorphism source -> target).
void require_well_defined(const FgAbGroup& source, const IntMatrix& map, const FgAbGroup& target);

/// Image of a homomorphism given on canonical coordinates.
FgAbGroup image_group(const FgAbGroup& source, const IntMatrix& map, const FgAbGroup& target);

}  // namespace lsseq
