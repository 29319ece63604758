#pragma once

#include "lsseq/int_matrix.hpp"

#include <optional>

namespace lsseq {

/// U * A * V = D with U, V unimodular and D diagonal.  The nonzero diagonal
/// entries d_1 | d_2 | ... | d_r are positive and listed in `diagonal`.
///
/// When requested, the inverses of U and V are tracked alongside the
/// reduction, so callers that need both directions of a change of basis do
/// not pay for a second decomposition.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
    IntVector diagonal;
    std::optional<IntMatrix> u_inverse;
    std::optional<IntMatrix> v_inverse;

    std::size_t rank() const { return diagonal.size(); }
};

struct SmithOptions {
    bool track_inverses = false;
};

/// Pivoting: the nonzero entry of least absolute value in the remaining
/// block, ties broken by lowest row, then lowest column.  Output is a pure
/// function of the input.
SmithDecomposition smith_normal_form(const IntMatrix& a, SmithOptions options = {});

/// Primitive basis of ker(A) in Z^cols, one basis vector per column.
IntMatrix kernel(const IntMatrix& a);

/// An integer solution x of A x = b, or nullopt when none exists.
std::optional<IntVector> solve(const IntMatrix& a, const IntVector& b);

/// Basis of the column span of A (not saturated).
IntMatrix column_span_basis(const IntMatrix& a);

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

bool is_unimodular(const IntMatrix& a);

/// Integer inverse of a unimodular matrix; throws std::domain_error otherwise.
IntMatrix inverse_unimodular(const IntMatrix& a);

/// A^e for any integer e; negative exponents require A unimodular.
IntMatrix power(const IntMatrix& a, long exponent);

}  // namespace lsseq
