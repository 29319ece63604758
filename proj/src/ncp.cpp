#include "lsseq/ncp.hpp"

#include "lsseq/smith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsseq {

namespace {

bool is_surface_base(const BuiltinComplex& b) {
    return b.name == "torus2" || b.name.rfind("genus(", 0) == 0;
}

void check_spec(const NcpTorusBundleSpec& spec) {
    if (spec.torus_rank != 2) throw std::invalid_argument("only torus rank 2 is supported");
    if (!is_surface_base(spec.base)) throw std::invalid_argument("unsupported base " + spec.base.name);
    if (spec.windings.size() != spec.base.generator_count())
        throw std::invalid_argument(spec.base.name + " needs " + std::to_string(spec.base.generator_count()) +
                                    " winding numbers");
    if (spec.chern.size() != 2) throw std::invalid_argument("need one Chern cochain per circle factor");
    for (const auto& c : spec.chern)
        if (c.size() != spec.base.complex->count(2))
            throw std::invalid_argument("Chern cochain needs one value per 2-simplex");
}

IntMatrix unipotent(const Integer& w) {
    IntMatrix m = IntMatrix::identity(2);
    m(0, 1) = w;
    return m;
}

// A 2-cochain with values in the fibre coordinate `slot` of a rank-2 system.
IntVector fiber_cochain(const Cochain2& c, std::size_t slot) {
    IntVector x(c.size() * 2);
    for (std::size_t s = 0; s < c.size(); ++s) x[s * 2 + slot] = c[s];
    return x;
}

RkkVerdict decide(const NcpTorusBundleSpec& spec, const GradedKBundle& bundle, const D2Spec& d2,
                  const IntVector& pairings) {
    RkkVerdict v;
    v.k_bundle_trivial = true;
    for (int parity = 0; parity < 2; ++parity)
        for (const auto& m : holonomy(bundle.fiber(parity), spec.base))
            if (!m.is_identity()) v.k_bundle_trivial = false;
    v.d2_vanishes = d2.vanishes();
    v.trivial = v.k_bundle_trivial && v.d2_vanishes;
    if (!v.k_bundle_trivial) v.certificate.push_back("K-theory bundle nontrivial");
    if (!v.d2_vanishes) v.certificate.push_back("d2 != 0");

    bool classifying_trivial = true;
    for (const auto& w : spec.windings) classifying_trivial = classifying_trivial && sgn(w) == 0;
    for (const auto& c : pairings) classifying_trivial = classifying_trivial && sgn(c) == 0;
    if (classifying_trivial != v.trivial)
        throw std::logic_error("spectral triviality disagrees with the classifying data");
    return v;
}

}  // namespace

NcpTorusBundleSpec make_spec(const std::string& base, const IntVector& windings, std::vector<Cochain2> chern) {
    NcpTorusBundleSpec spec;
    spec.base = builtin(base);
    spec.windings = windings;
    spec.chern = std::move(chern);
    check_spec(spec);
    return spec;
}

NcpTorusBundleSpec make_spec(const std::string& base, const IntVector& windings, const IntVector& chern_pairings) {
    const std::size_t triangles = builtin(base).complex->count(2);
    std::vector<Cochain2> chern;
    for (const auto& c : chern_pairings) {
        Cochain2 cochain(triangles);
        if (triangles > 0) cochain[0] = c;
        chern.push_back(std::move(cochain));
    }
    return make_spec(base, windings, std::move(chern));
}

GradedKBundle k_theory_bundle(const NcpTorusBundleSpec& spec) {
    check_spec(spec);
    std::vector<IntMatrix> even;
    for (const auto& w : spec.windings) even.push_back(unipotent(w));
    return GradedKBundle{from_monodromy(spec.base, even, 2), LocalSystem::constant(spec.base.complex, 2)};
}

Integer fundamental_pairing(const Cochain2& c, const SimplicialComplex& base) {
    const auto orientation = coherent_orientation(base);
    if (!orientation) throw std::domain_error("base is not a closed oriented surface");
    if (c.size() != orientation->size()) throw std::invalid_argument("cochain needs one value per 2-simplex");
    Integer total = 0;
    for (std::size_t s = 0; s < c.size(); ++s) total += (*orientation)[s] * c[s];
    return total;
}

long winding_number(const std::vector<double>& phases) {
    constexpr double two_pi = 2 * std::numbers::pi;
    if (phases.size() < 2) throw std::domain_error("loop needs at least two samples");
    double total = 0;
    for (std::size_t i = 1; i < phases.size(); ++i) {
        const double step = std::remainder(phases[i] - phases[i - 1], two_pi);
        if (std::abs(step) >= std::numbers::pi - 1e-9) throw std::domain_error("undersampled loop");
        total += step;
    }
    const double closure = std::remainder(phases.back() - phases.front(), two_pi);
    if (std::abs(closure) > 1e-6) throw std::domain_error("closure mismatch");
    return std::lround(total / two_pi);
}

Cochain2 chern_cocycle(const std::vector<TransitionTriple>& transitions, double tolerance) {
    Cochain2 c;
    c.reserve(transitions.size());
    for (const auto& h : transitions) {
        const double sum = h[0] + h[1] + h[2];
        const double nearest = std::round(sum);
        if (std::abs(sum - nearest) > tolerance) throw std::domain_error("non-integral transition sum");
        c.emplace_back(static_cast<long>(nearest));
    }
    return c;
}

TorusLineBundle::TorusLineBundle(long degree) : degree_(degree), torus_(builtin_torus2()) {
    const auto& x = *torus_.complex;
    lifts_.resize(x.count(2));
    // grid triangles anchored at (i, 0): labels {i, i+1, i+3} and {i, i+2, i+3}
    for (int i = 0; i < 7; ++i) {
        const std::array<std::array<int, 2>, 3> shapes[2] = {{{{0, 0}, {1, 0}, {1, 1}}}, {{{0, 0}, {0, 1}, {1, 1}}}};
        for (const auto& shape : shapes) {
            std::vector<std::pair<int, Point>> corners;
            for (const auto& [dx, dy] : shape) {
                const int gx = i + dx, gy = dy;
                corners.push_back({((gx + 2 * gy) % 7 + 7) % 7, Point{double(gx), double(gy)}});
            }
            std::sort(corners.begin(), corners.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
            const auto t = x.index_of({corners[0].first, corners[1].first, corners[2].first});
            if (!t) throw std::logic_error("grid triangle missing from the seven-vertex torus");
            lifts_[*t] = {corners[0].second, corners[1].second, corners[2].second};
        }
    }
}

std::array<TorusLineBundle::Point, 3> TorusLineBundle::triangle_lift(std::size_t t) const {
    return lifts_.at(t);
}

double TorusLineBundle::h(std::size_t t, int from, int to, const Point& p) const {
    const Simplex& sigma = torus_.complex->simplices(2).at(t);
    auto position = [&](int vertex) {
        const auto it = std::find(sigma.begin(), sigma.end(), vertex);
        if (it == sigma.end()) throw std::invalid_argument("vertex is not on the 2-simplex");
        return lifts_[t][static_cast<std::size_t>(it - sigma.begin())];
    };
    const Point pi = position(from), pj = position(to);
    // deck translation between the two vertex charts; vertex v sits at (v, 0)
    const double lx = (from - to) - pi[0] + pj[0];
    const double ly = -pi[1] + pj[1];
    const double b = (-3 * lx + ly) / 7;
    // the point in the chart of `to`
    const double x = p[0] - pj[0] + to;
    const double y = p[1] - pj[1];
    const double u = (x + 2 * y) / 7;
    // s_to = exp(2 pi i h) s_from, the inverse of the automorphy factor
    return -static_cast<double>(degree_) * b * u;
}

std::vector<TransitionTriple> TorusLineBundle::at_barycenters() const {
    std::vector<TransitionTriple> out;
    const auto& tris = torus_.complex->simplices(2);
    for (std::size_t t = 0; t < tris.size(); ++t) {
        const auto& q = lifts_[t];
        const Point c{(q[0][0] + q[1][0] + q[2][0]) / 3, (q[0][1] + q[1][1] + q[2][1]) / 3};
        const int i = tris[t][0], j = tris[t][1], k = tris[t][2];
        out.push_back({h(t, i, j, c), h(t, j, k, c), h(t, k, i, c)});
    }
    return out;
}

bool D2Spec::vanishes() const {
    return std::all_of(images.begin(), images.end(), [](const IntVector& v) { return is_zero(v); });
}

D2Spec d2_spec(const NcpTorusBundleSpec& spec, const SpectralPage& e2) {
    check_spec(spec);
    if (e2.r != 2) throw std::invalid_argument("d2_spec needs the second page");
    const SimplicialComplex& x = *spec.base.complex;

    D2Spec out;
    out.k_gcd = 0;
    for (const auto& w : spec.windings) mpz_gcd(out.k_gcd.get_mpz_t(), out.k_gcd.get_mpz_t(), w.get_mpz_t());

    const Subquotient& h0 = e2.at({0, 1});
    if (!(h0.quotient() == FgAbGroup::free(2)))
        throw std::domain_error("basis of H^0(X;K_1) does not match ([U_1],[U_2])");
    const auto base_index = x.index_of({spec.base.basepoint});
    if (!base_index) throw std::logic_error("basepoint is not a vertex");
    IntMatrix values(2, 2);  // column j: generator j of H^0 at the basepoint, on ([U_1],[U_2])
    for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t a = 0; a < 2; ++a) values(a, j) = h0.lift(j)[*base_index * 2 + a];
    if (!is_unimodular(values)) throw std::domain_error("basis of H^0(X;K_1) does not match ([U_1],[U_2])");

    const Subquotient& h2 = e2.at({2, 0});
    const FgAbGroup& target = h2.quotient();
    Cochain2 first(x.count(2));
    first[0] = 1;
    out.unit_class = h2.project(fiber_cochain(first, 0));
    out.bott_class = h2.project(fiber_cochain(first, 1));

    const Integer unit_order = target.order_of(out.unit_class);
    if (unit_order != out.k_gcd || target.order_of(out.bott_class) != 0)
        throw std::domain_error("H^2 presentation is not Z/k (+) Z");
    const IntMatrix spanning = hconcat(IntMatrix::from_columns({out.unit_class, out.bott_class}, target.generator_count()),
                                       target.relation_matrix());
    for (std::size_t g = 0; g < target.generator_count(); ++g)
        if (!solve(spanning, unit_vector(target.generator_count(), g)))
            throw std::domain_error("H^2 presentation is not Z/k (+) Z");

    for (const auto& c : spec.chern) {
        const IntVector image = h2.project(fiber_cochain(c, 0));
        const Integer pairing = fundamental_pairing(c, x);
        IntVector expected = out.unit_class;
        for (auto& e : expected) e *= pairing;
        if (!(target.reduce(expected) == image))
            throw std::logic_error("Chern class image is not its pairing times the unit class");
        auto coords = solve(spanning, image);
        if (!coords) throw std::logic_error("d2 image outside the span of [1] and beta");
        IntVector pair{(*coords)[0], (*coords)[1]};
        if (sgn(out.k_gcd) != 0) mpz_fdiv_r(pair[0].get_mpz_t(), pair[0].get_mpz_t(), out.k_gcd.get_mpz_t());
        out.coinvariant.push_back(std::move(pair));
        out.images.push_back(image);
    }

    IntMatrix d(target.generator_count(), 2);
    for (std::size_t j = 0; j < 2; ++j) {
        IntVector col(target.generator_count());
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t r = 0; r < col.size(); ++r) col[r] += values(i, j) * out.images[i][r];
        col = target.reduce(std::move(col));
        for (std::size_t r = 0; r < col.size(); ++r) d(r, j) = col[r];
    }
    out.differential.emplace(Spot{0, 1}, std::move(d));
    return out;
}

NcpReport run_ncp(const NcpTorusBundleSpec& spec, Convention convention) {
    check_spec(spec);
    NcpReport report;
    const SpectralInput input = make_input(k_theory_bundle(spec), convention);
    report.e1 = e1_page(input);
    const SpectralPage e2 = e2_page(report.e1);
    report.d2 = d2_spec(spec, e2);
    report.k_gcd = report.d2.k_gcd;
    for (const auto& c : spec.chern) report.pairings.push_back(fundamental_pairing(c, *spec.base.complex));
    report.e2 = with_differentials(e2, report.d2.differential);
    report.e3 = next_page(report.e2);
    auto [k0, k1] = assemble(report.e3);
    report.k0 = std::move(k0);
    report.k1 = std::move(k1);
    report.verdict = decide(spec, *input.bundle, report.d2, report.pairings);
    return report;
}

RkkVerdict is_rkk_trivial(const NcpTorusBundleSpec& spec) {
    return run_ncp(spec).verdict;
}

}  // namespace lsseq
