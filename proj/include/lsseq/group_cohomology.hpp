#pragma once

#include "lsseq/abelian.hpp"
#include "lsseq/cochain.hpp"

#include <vector>

namespace lsseq {

/// Z^m with n pairwise commuting unimodular matrices acting on it.
class ZnModule {
public:
    /// Throws std::invalid_argument on shape mismatch, std::domain_error
    /// ("not unimodular" / "action does not commute") otherwise.
    ZnModule(std::size_t rank, std::vector<IntMatrix> action);

    std::size_t rank() const { return rank_; }
    std::size_t generators() const { return action_.size(); }
    const std::vector<IntMatrix>& action() const { return action_; }

private:
    std::size_t rank_;
    std::vector<IntMatrix> action_;
};

/// H^0 .. H^n of Z^n with coefficients in M, n in {1, 2}.  For n = 1 this is
/// (ker, coker) of A - I; for n = 2 it is the local-coefficient cohomology of
/// the seven-vertex torus with holonomy (A_1, A_2).
std::vector<FgAbGroup> zn_cohomology(const ZnModule& m, Convention convention = Convention::e1);

/// One row of the short exact sequence
///   0 -> Coinv H^{k-1}(Z, M) -> H^k(Z^2, M) -> Inv H^k(Z, M) -> 0
/// where the inner Z acts by A_2 and the outer Z (acting on the inner
/// cohomology) by A_1.
struct RecursionRow {
    int degree = 0;
    FgAbGroup middle;
    FgAbGroup coinvariant_part;
    FgAbGroup invariant_part;
    bool ranks_add = false;
    bool torsion_divides = false;
    bool torsion_multiplies = true;  // only tested when all three are finite
};

struct RecursionReport {
    std::vector<RecursionRow> rows;
    bool consistent = false;
};

/// Checks ranks and torsion orders along the sequence for n = 2.  The
/// extension itself is not resolved.
RecursionReport recursion_check(const ZnModule& m);

}  // namespace lsseq
