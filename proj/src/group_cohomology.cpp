#include "lsseq/group_cohomology.hpp"

#include "lsseq/smith.hpp"

#include <stdexcept>

namespace lsseq {

ZnModule::ZnModule(std::size_t rank, std::vector<IntMatrix> action) : rank_(rank), action_(std::move(action)) {
    for (const auto& a : action_) {
        if (a.rows() != rank_ || a.cols() != rank_)
            throw std::invalid_argument("action matrix does not match module rank " + std::to_string(rank_));
        if (!is_unimodular(a)) throw std::domain_error("not unimodular");
    }
    for (std::size_t i = 0; i < action_.size(); ++i)
        for (std::size_t j = i + 1; j < action_.size(); ++j)
            if (!(action_[i] * action_[j] == action_[j] * action_[i]))
                throw std::domain_error("action does not commute");
}

std::vector<FgAbGroup> zn_cohomology(const ZnModule& m, Convention convention) {
    switch (m.generators()) {
    case 1: {
        const IntMatrix shifted = m.action()[0] - IntMatrix::identity(m.rank());
        return {FgAbGroup::free(kernel(shifted).cols()), cokernel(shifted)};
    }
    case 2: {
        const BuiltinComplex torus = builtin_torus2();
        const LocalSystem system = from_monodromy(torus, m.action(), m.rank());
        return cohomology_groups(CochainComplex::build(system, convention));
    }
    default:
        throw std::invalid_argument("group cohomology is implemented for Z and Z^2 only");
    }
}

namespace {

// A finitely generated group with an endomorphism, in canonical coordinates.
struct GroupWithAction {
    FgAbGroup group;
    IntMatrix action;
};

FgAbGroup invariants_of(const GroupWithAction& g) {
    const std::size_t n = g.group.generator_count();
    const IntMatrix shifted = g.action - IntMatrix::identity(n);
    return homology_at(g.group, IntMatrix(n, 0), shifted, g.group).quotient();
}

FgAbGroup coinvariants_of(const GroupWithAction& g) {
    const std::size_t n = g.group.generator_count();
    const IntMatrix shifted = g.action - IntMatrix::identity(n);
    return homology_at(g.group, shifted, IntMatrix(0, n), FgAbGroup{}).quotient();
}

// H^0 and H^1 of the inner Z (acting by `inner`), with the induced action of `outer`.
std::vector<GroupWithAction> inner_cohomology(const IntMatrix& inner, const IntMatrix& outer) {
    const std::size_t m = inner.rows();
    const IntMatrix shifted = inner - IntMatrix::identity(m);

    GroupWithAction h0;
    const IntMatrix inclusion = kernel(shifted);
    h0.group = FgAbGroup::free(inclusion.cols());
    h0.action = IntMatrix(inclusion.cols(), inclusion.cols());
    for (std::size_t j = 0; j < inclusion.cols(); ++j) {
        const auto coords = solve(inclusion, outer * inclusion.column(j));
        if (!coords) throw std::logic_error("outer action does not preserve inner invariants");
        for (std::size_t i = 0; i < coords->size(); ++i) h0.action(i, j) = (*coords)[i];
    }

    GroupWithAction h1;
    const Subquotient coker = cokernel_presentation(shifted);
    h1.group = coker.quotient();
    const std::size_t g = h1.group.generator_count();
    h1.action = IntMatrix(g, g);
    for (std::size_t j = 0; j < g; ++j) {
        const IntVector image = coker.project(outer * coker.lift(j));
        for (std::size_t i = 0; i < g; ++i) h1.action(i, j) = image[i];
    }
    return {h0, h1};
}

}  // namespace

RecursionReport recursion_check(const ZnModule& m) {
    if (m.generators() != 2) throw std::invalid_argument("recursion check needs a Z^2 action");
    const auto middle = zn_cohomology(m);
    const auto inner = inner_cohomology(m.action()[1], m.action()[0]);

    RecursionReport report;
    report.consistent = true;
    for (int k = 0; k <= 2; ++k) {
        RecursionRow row;
        row.degree = k;
        row.middle = middle[static_cast<std::size_t>(k)];
        if (k >= 1) row.coinvariant_part = coinvariants_of(inner[static_cast<std::size_t>(k - 1)]);
        if (k <= 1) row.invariant_part = invariants_of(inner[static_cast<std::size_t>(k)]);
        row.ranks_add = row.middle.free_rank == row.coinvariant_part.free_rank + row.invariant_part.free_rank;
        const Integer ends = row.coinvariant_part.torsion_order() * row.invariant_part.torsion_order();
        row.torsion_divides = mpz_divisible_p(ends.get_mpz_t(), row.middle.torsion_order().get_mpz_t()) != 0;
        if (row.middle.is_finite() && row.coinvariant_part.is_finite() && row.invariant_part.is_finite())
            row.torsion_multiplies = row.middle.torsion_order() == ends;
        report.consistent = report.consistent && row.ranks_add && row.torsion_divides && row.torsion_multiplies;
        report.rows.push_back(std::move(row));
    }
    return report;
}

}  // namespace lsseq
