#pragma once

#include "lsseq/abelian.hpp"
#include "lsseq/cochain.hpp"
#include "lsseq/local_system.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace lsseq {

/// (p, q) with 0 <= p <= dim X and q in {0, 1}; K-theory is 2-periodic so
/// the q-axis is stored modulo 2.  The entry at (p, q) is built from the
/// fibre K_{(p+q) mod 2}, and d_r moves (p, q) to (p + r, q - 1).
using Spot = std::pair<int, int>;

Spot differential_target(Spot s, int r);

/// The graded bundle together with the base and the sign convention used
/// for the first differential.
struct SpectralInput {
    std::shared_ptr<const GradedKBundle> bundle;
    Convention convention = Convention::e1;

    const SimplicialComplex& base() const { return bundle->even.base(); }
};

/// One page E_r.  Every entry is a subquotient of the cochain lattice
/// C^p(X; K_{(p+q) mod 2}), so classes on all pages share representatives.
/// Differentials act on canonical quotient coordinates.
struct SpectralPage {
    int r = 1;
    SpectralInput input;
    std::map<Spot, Subquotient> entries;
    std::map<Spot, IntMatrix> differentials;  // absent = zero

    int dimension() const { return input.base().dimension(); }
    const Subquotient& at(Spot s) const;
    const FgAbGroup& group(Spot s) const { return at(s).quotient(); }
    /// Matrix of d_r out of `s` (a zero matrix if none is attached).
    IntMatrix differential(Spot s) const;
    /// No differential of this or a later page can be nonzero.
    bool is_stable() const { return r > dimension(); }
};

/// Throws std::invalid_argument unless both systems live over one complex.
SpectralInput make_input(GradedKBundle bundle, Convention convention = Convention::e1);

/// E_1 with the cell-wise differential assembled from gluing signs and
/// transports.  Throws std::domain_error on a flatness violation.
SpectralPage e1_page(const SpectralInput& input);

/// Homology of E_1 under d_1, checked against H^p(X; K_{p+q}) computed by
/// the cohomology module.  Throws std::logic_error on disagreement.
SpectralPage e2_page(const SpectralPage& page1);

/// Components of d_r given on canonical coordinates of E_r; components not
/// listed are zero.
using DifferentialSpec = std::map<Spot, IntMatrix>;

/// Attaches d_r after checking shapes, well-definedness on classes and
/// d_r d_r = 0.  Throws std::domain_error("map is not well defined on
/// classes") or ("differential does not square to zero").
SpectralPage with_differentials(SpectralPage page, const DifferentialSpec& d);

/// E_{r+1} as the homology of E_r under its attached differentials.
SpectralPage next_page(const SpectralPage& page);

/// E_3 from E_2 and a supplied d_2.
SpectralPage attach_d2(const SpectralPage& page2, const DifferentialSpec& d2);

/// Whether every d_r out of `s` is zero for lack of room: the source or the
/// target is trivial or outside the window.
bool differential_forced_zero(const SpectralPage& page, Spot s);

/// Turns pages until stable, using the attached differentials of the given
/// page and zero afterwards where that is forced.  Throws std::logic_error
/// when a later differential could be nonzero and is not known.
SpectralPage stabilize(SpectralPage page);

/// Associated graded of K_parity: piece p is E_inf^{p, parity}.
struct AssembledKTheory {
    int parity = 0;
    std::vector<FgAbGroup> graded_pieces;
    /// Some torsion piece sits below a nonzero piece, so the filtration
    /// may hide a nontrivial extension.
    bool extension_ambiguous = false;

    std::size_t total_rank() const;
};

/// Throws std::logic_error("page not stable") unless page.is_stable().
std::pair<AssembledKTheory, AssembledKTheory> assemble(const SpectralPage& e_inf);

}  // namespace lsseq
