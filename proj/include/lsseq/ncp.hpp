#pragma once

#include "lsseq/local_system.hpp"
#include "lsseq/spectral.hpp"

#include <array>
#include <string>
#include <vector>

namespace lsseq {

/// An integer 2-cochain: one value per canonical 2-simplex.
using Cochain2 = IntVector;

/// Classifying data of a noncommutative principal torus bundle over a
/// closed oriented surface: Chern cochains of the circle-bundle quotients
/// and the winding numbers of the classifying map along the generator loops.
struct NcpTorusBundleSpec {
    BuiltinComplex base;
    int torus_rank = 2;
    std::vector<Cochain2> chern;
    IntVector windings;
};

/// Validates and fills the bundle description; a Chern class given by its pairing alone is
/// realized as pairing times the indicator of the first 2-simplex.
NcpTorusBundleSpec make_spec(const std::string& base, const IntVector& windings, const IntVector& chern_pairings);
NcpTorusBundleSpec make_spec(const std::string& base, const IntVector& windings, std::vector<Cochain2> chern);

/// K_0 holonomy (1 w; 0 1) in the basis ([1], beta) for every generator,
/// trivial K_1 holonomy on ([U_1], [U_2]).
GradedKBundle k_theory_bundle(const NcpTorusBundleSpec& spec);

/// Sum of c over the coherently oriented 2-simplices.  Throws
/// std::domain_error when the base is not a closed oriented surface.
Integer fundamental_pairing(const Cochain2& c, const SimplicialComplex& base);

/// Degree of a sampled circle-valued loop given by its phases (radians).
/// Throws std::domain_error on an undersampled or unclosed loop.
long winding_number(const std::vector<double>& phases);

/// Real logarithms of the transition functions on the three edges of one
/// 2-simplex <i,j,k>, evaluated at a common point: (h_ij, h_jk, h_ki).
using TransitionTriple = std::array<double, 3>;

/// c(sigma) = round(h_ij + h_jk + h_ki).  Throws std::domain_error when a
/// sum is further than `tolerance` from an integer.
Cochain2 chern_cocycle(const std::vector<TransitionTriple>& transitions, double tolerance = 1e-6);

/// Transition data of the degree-d circle bundle over the seven-vertex
/// torus, with the factor of automorphy exp(2 pi i d b u) on the covering
/// plane (u, v lattice coordinates, b the second lattice coordinate of the
/// deck translation).  The cover is by open vertex stars; h_{i,j} is the
/// logarithm of the transition taking the chart of i to the chart of j.
class TorusLineBundle {
public:
    using Point = std::array<double, 2>;

    explicit TorusLineBundle(long degree);

    long degree() const { return degree_; }
    /// Plane positions of the vertices of 2-simplex t, in canonical order.
    std::array<Point, 3> triangle_lift(std::size_t t) const;
    /// h_{from,to} at plane point p of the lifted 2-simplex t.
    double h(std::size_t t, int from, int to, const Point& p) const;
    /// (h_ij, h_jk, h_ki) at the barycentre of every 2-simplex.
    std::vector<TransitionTriple> at_barycenters() const;

private:
    long degree_;
    BuiltinComplex torus_;
    std::vector<std::array<Point, 3>> lifts_;
};

/// The d_2 out of H^0(X; K_1) = Z[U_1] + Z[U_2] into H^2(X; K_0).
struct D2Spec {
    Integer k_gcd;
    std::vector<IntVector> images;        // d_2[U_i] in E_2^{2,0} coordinates
    std::vector<IntVector> coinvariant;   // d_2[U_i] as (x mod k, y) on ([1], beta)
    IntVector unit_class;                 // class of [1] on the first 2-simplex
    IntVector bott_class;                 // class of beta on the first 2-simplex
    DifferentialSpec differential;        // the (0,1) component on E_2 coordinates

    bool vanishes() const;
};

/// Throws std::domain_error when E_2^{0,1} does not have the basis
/// ([U_1], [U_2]) or the presentation of H^2 is not Z/k (+) Z as expected.
D2Spec d2_spec(const NcpTorusBundleSpec& spec, const SpectralPage& e2);

struct RkkVerdict {
    bool trivial = false;
    bool k_bundle_trivial = false;
    bool d2_vanishes = false;
    std::vector<std::string> certificate;  // violated conditions, empty when trivial
};

/// Decides "K-theory bundle trivial and d_2 = 0" and cross-checks it against
/// "all windings and Chern pairings vanish".  Throws std::logic_error if
/// they disagree.
RkkVerdict is_rkk_trivial(const NcpTorusBundleSpec& spec);

/// Full pipeline from classifying data.
struct NcpReport {
    Integer k_gcd;
    IntVector pairings;
    SpectralPage e1;
    SpectralPage e2;
    D2Spec d2;
    SpectralPage e3;
    AssembledKTheory k0;
    AssembledKTheory k1;
    RkkVerdict verdict;
};

NcpReport run_ncp(const NcpTorusBundleSpec& spec, Convention convention = Convention::e1);

}  // namespace lsseq
