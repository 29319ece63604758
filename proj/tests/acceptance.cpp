// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

#include "lsseq/ncp.hpp"
#include "lsseq/spectral.hpp"
#include "oracles.hpp"
#include "random_systems.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace lsseq;

namespace {

IntVector ints(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

// Collects failed expectations of one criterion.
struct Verdict {
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
};

IntMatrix unipotent(long w) {
    return IntMatrix{{1, w}, {0, 1}};
}

long gcd_of(long a, long b) {
    return std::gcd(std::abs(a), std::abs(b));
}

// The randomized flat systems shared by criteria 2 and 8.
std::vector<GradedKBundle> criterion_two_inputs() {
    std::mt19937 rng(2024);
    std::vector<GradedKBundle> out;
    for (const auto& name : gen::criterion_bases()) {
        const auto base = builtin(name);
        for (int trial = 0; trial < 6; ++trial)
            out.push_back(GradedKBundle{gen::random_flat_system(rng, base, 1 + trial % 3),
                                        gen::random_flat_system(rng, base, 1 + (trial + 1) % 3)});
    }
    return out;
}

void coinvariants_of_the_torus(Verdict& v) {
    struct Case {
        long k, l;
        FgAbGroup expected;
    };
    const std::vector<Case> cases{{2, 4, FgAbGroup{1, ints({2}), std::nullopt}},
                                  {3, 5, FgAbGroup::free(1)},
                                  {0, 6, FgAbGroup{1, ints({6}), std::nullopt}},
                                  {0, 0, FgAbGroup::free(2)}};
    for (const auto& c : cases) {
        const FgAbGroup got = coinvariants({unipotent(c.k), unipotent(c.l)}, 2).quotient();
        // independent count: Z/gcd (+) Z with Z/0 = Z and Z/1 = 0
        const long g = gcd_of(c.k, c.l);
        const std::size_t free = g == 0 ? 2 : 1;
        const bool shape = got.free_rank == free && got.torsion.size() == (g > 1 ? 1U : 0U);
        v.expect(got == c.expected && shape,
                 "(" + std::to_string(c.k) + "," + std::to_string(c.l) + "): got " + to_string(got));
    }
}

void second_page_cross_check(Verdict& v) {
    int n = 0;
    for (const auto& bundle : criterion_two_inputs()) {
        const auto input = make_input(bundle, Convention::e1);
        const auto turned = next_page(with_differentials(e1_page(input), {}));
        const auto even = cohomology_groups(CochainComplex::build(bundle.even));
        const auto odd = cohomology_groups(CochainComplex::build(bundle.odd));
        for (const auto& [s, entry] : turned.entries) {
            const auto& h = (s.first + s.second) % 2 == 0 ? even : odd;
            v.expect(entry.quotient() == h[static_cast<std::size_t>(s.first)],
                     "input " + std::to_string(n) + " at (" + std::to_string(s.first) + "," + std::to_string(s.second) + ")");
        }
        ++n;
    }
    v.expect(n >= 20, "fewer than 20 inputs");
}

void checkerboard(Verdict& v) {
    const auto torus = builtin_torus2();
    const auto e2 = e2_page(e1_page(make_input(
        GradedKBundle{LocalSystem::constant(torus.complex, 1), LocalSystem::constant(torus.complex, 0)})));
    const std::size_t betti[3] = {1, 2, 1};
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q < 2; ++q) {
            const FgAbGroup expected = FgAbGroup::free((p - q) % 2 == 0 ? betti[p] : 0);
            v.expect(e2.group({p, q}) == expected, "E2 at (" + std::to_string(p) + "," + std::to_string(q) + ")");
            v.expect(differential_forced_zero(e2, {p, q}), "d2 out of (" + std::to_string(p) + "," + std::to_string(q) + ")");
        }
    const auto [k0, k1] = assemble(stabilize(e2));
    v.expect(k0.graded_pieces == std::vector<FgAbGroup>{FgAbGroup::free(1), FgAbGroup{}, FgAbGroup::free(1)}, "K0 pieces");
    v.expect(k1.graded_pieces == std::vector<FgAbGroup>{FgAbGroup{}, FgAbGroup::free(2), FgAbGroup{}}, "K1 pieces");
    v.expect(k0.total_rank() == 2 && k1.total_rank() == 2, "total ranks");
}

void kunneth(Verdict& v) {
    const auto report = run_ncp(make_spec("torus2", ints({0, 0}), ints({0, 0})));
    v.expect(report.d2.vanishes(), "d2 of the product bundle");
    // rank K^j(T^4) = sum of C(4, i) over i = j mod 2, split by filtration as
    // rank H^p(T^2) * rank K_{j-p}(T^2)
    for (int parity = 0; parity < 2; ++parity) {
        const auto& k = parity == 0 ? report.k0 : report.k1;
        long expected_total = 0;
        for (long i = parity; i <= 4; i += 2) expected_total += oracle::binomial(4, i);
        v.expect(static_cast<long>(k.total_rank()) == expected_total, "total rank of K" + std::to_string(parity));
        for (int p = 0; p <= 2; ++p) {
            const long fibre = 2;  // rank K_0 = rank K_1 = 2 for the 2-torus
            v.expect(k.graded_pieces[static_cast<std::size_t>(p)] ==
                         FgAbGroup::free(static_cast<std::size_t>(oracle::binomial(2, p) * fibre)),
                     "piece " + std::to_string(p) + " of K" + std::to_string(parity));
        }
    }
}

void commutative_d2(Verdict& v) {
    for (long c1 = -2; c1 <= 2; ++c1)
        for (long c2 = -2; c2 <= 2; ++c2) {
            const auto report = run_ncp(make_spec("torus2", ints({0, 0}), ints({c1, c2})));
            v.expect(report.d2.vanishes() == (c1 == 0 && c2 == 0),
                     "pairings (" + std::to_string(c1) + "," + std::to_string(c2) + ")");
        }
}

void d2_formula(Verdict& v) {
    const auto report = run_ncp(make_spec("torus2", ints({2, 4}), ints({1, 0})));
    v.expect(!is_zero(report.d2.images[0]), "d2[U_1] = 0");
    v.expect(is_zero(report.d2.images[1]), "d2[U_2] != 0");
    const FgAbGroup z_z2{1, ints({2}), std::nullopt};
    v.expect(report.e2.group({2, 0}) == z_z2, "E2^{2,0}");
    v.expect(report.e3.group({2, 0}) == FgAbGroup::free(1), "E3^{2,0}");
    v.expect(report.e3.group({2, 1}) == report.e2.group({2, 1}), "E3^{2,1}");

    for (long c1 = -2; c1 <= 2; ++c1)
        for (long c2 = -2; c2 <= 2; ++c2) {
            const auto r = run_ncp(make_spec("torus2", ints({1, 0}), ints({c1, c2})));
            v.expect(r.d2.vanishes(), "windings (1,0) with pairings (" + std::to_string(c1) + "," + std::to_string(c2) + ")");
        }
}

void triviality_decision(Verdict& v) {
    const long values[] = {-1, 0, 2};
    const long pairings[] = {-1, 0, 1};
    for (long k : values)
        for (long l : values)
            for (long c1 : pairings)
                for (long c2 : pairings) {
                    const auto verdict = is_rkk_trivial(make_spec("torus2", ints({k, l}), ints({c1, c2})));
                    const long g = gcd_of(k, l);
                    const auto survives = [g](long c) { return g == 0 ? c != 0 : c % g != 0; };
                    std::vector<std::string> expected;
                    if (k != 0 || l != 0) expected.push_back("K-theory bundle nontrivial");
                    if (survives(c1) || survives(c2)) expected.push_back("d2 != 0");
                    const bool all_zero = k == 0 && l == 0 && c1 == 0 && c2 == 0;
                    std::ostringstream what;
                    what << "(" << k << "," << l << "," << c1 << "," << c2 << ")";
                    v.expect(verdict.trivial == all_zero, what.str() + " verdict");
                    v.expect(verdict.certificate == expected, what.str() + " certificate");
                }
}

void convention_invariance(Verdict& v) {
    int n = 0;
    for (const auto& bundle : criterion_two_inputs()) {
        for (int parity = 0; parity < 2; ++parity)
            v.expect(convention_compare(bundle.fiber(parity)).isomorphic, "input " + std::to_string(n));
        ++n;
    }
}

void line_bundle_cocycle(Verdict& v) {
    const auto torus = builtin_torus2();
    for (long d = -2; d <= 2; ++d) {
        const auto h = TorusLineBundle(d).at_barycenters();
        const Cochain2 c = chern_cocycle(h, 1e-6);
        v.expect(fundamental_pairing(c, *torus.complex) == d, "pairing for degree " + std::to_string(d));
        // winding of the transition loop around each 2-simplex
        for (std::size_t t = 0; t < h.size(); ++t) {
            std::vector<double> phases{0.0};
            double start = 0.0;
            for (double step : h[t]) {
                for (int s = 1; s <= 32; ++s) phases.push_back(2 * std::numbers::pi * (start + step * s / 32));
                start += step;
            }
            v.expect(winding_number(phases) == c[t].get_si(), "winding on simplex " + std::to_string(t));
        }
    }
}

void infrastructure(Verdict& v) {
    std::mt19937 rng(99);
    // Smith normal form identities and kernels
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        const IntMatrix a = gen::random_matrix(rng, rows, cols, 9);
        const auto s = smith_normal_form(a);
        bool chain = true;
        for (std::size_t i = 1; i < s.diagonal.size(); ++i) chain = chain && s.diagonal[i] % s.diagonal[i - 1] == 0;
        v.expect(s.u * a * s.v == s.d && is_unimodular(s.u) && is_unimodular(s.v) && chain, "SNF " + std::to_string(trial));
        if (rows <= 5 && cols <= 5) v.expect(s.diagonal == oracle::invariant_factors(a), "SNF oracle " + std::to_string(trial));
        const IntMatrix k = kernel(a);
        bool saturated = k.cols() == cols - oracle::rank_q(a) && (a * k).is_zero();
        if (k.cols() > 0)
            for (const auto& d : smith_normal_form(k).diagonal) saturated = saturated && d == 1;
        v.expect(saturated, "kernel " + std::to_string(trial));
    }
    // boundary of random complexes
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5 + static_cast<int>(rng() % 4);
        std::vector<std::vector<int>> top;
        for (int f = 0; f < 4; ++f) {
            std::vector<int> verts(static_cast<std::size_t>(n));
            std::iota(verts.begin(), verts.end(), 0);
            std::shuffle(verts.begin(), verts.end(), rng);
            verts.resize(2 + rng() % 3);
            std::sort(verts.begin(), verts.end());
            top.push_back(verts);
        }
        const auto x = SimplicialComplex::from_maximal(n, top);
        bool ok = true;
        for (int p = 2; p <= x.dimension(); ++p) ok = ok && (chain_boundary(x, p - 1) * chain_boundary(x, p)).is_zero();
        v.expect(ok, "boundary " + std::to_string(trial));
    }
    // flatness detection of a perturbed edge, Euler characteristic identity
    const std::vector<std::string> surfaces{"torus2", "genus(2)", "sphere2"};
    for (int trial = 0; trial < 120; ++trial) {
        const auto base = builtin(surfaces[static_cast<std::size_t>(trial) % surfaces.size()]);
        const std::size_t m = 1 + static_cast<std::size_t>(trial) % 3;
        const auto system = gen::random_flat_system(rng, base, m);
        const auto h = cohomology_groups(CochainComplex::build(system));
        long chi = 0;
        for (std::size_t p = 0; p < h.size(); ++p) chi += (p % 2 ? -1 : 1) * static_cast<long>(h[p].free_rank);
        v.expect(chi == base.complex->euler_characteristic() * static_cast<long>(m), "Euler " + std::to_string(trial));

        std::map<std::pair<int, int>, IntMatrix> t;
        for (const auto& e : base.complex->simplices(1)) t.emplace(std::make_pair(e[0], e[1]), system.transport(e[0], e[1]));
        const auto& edges = base.complex->simplices(1);
        const Simplex edge = edges[rng() % edges.size()];
        IntMatrix bump = IntMatrix::identity(m);
        if (m == 1) bump(0, 0) = -1;
        else bump(0, 1) = 1;
        t[{edge[0], edge[1]}] = t[{edge[0], edge[1]}] * bump;
        const auto violations = flatness_check(LocalSystem(base.complex, m, t));
        bool adjacent = !violations.empty();
        for (const auto& viol : violations)
            adjacent = adjacent && std::includes(viol.triangle.begin(), viol.triangle.end(), edge.begin(), edge.end());
        v.expect(adjacent, "perturbation " + std::to_string(trial));
    }
}

struct Criterion {
    int number;
    std::string title;
    double limit_seconds;  // 0 = no limit
    std::function<void(Verdict&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "torus coinvariants Z/gcd (+) Z", 1.0, coinvariants_of_the_torus},
        {2, "E2 by page turning equals local-coefficient cohomology", 10.0, second_page_cross_check},
        {3, "checkerboard for the trivial bundle", 0.0, checkerboard},
        {4, "Kunneth ranks for the trivial torus bundle", 0.0, kunneth},
        {5, "commutative d2 vanishes iff both pairings vanish", 0.0, commutative_d2},
        {6, "d2 formula and the gcd-one case", 0.0, d2_formula},
        {7, "triviality decision and certificates", 0.0, triviality_decision},
        {8, "sign conventions give isomorphic cohomology", 0.0, convention_invariance},
        {9, "degree-d transition data pairs to d", 0.0, line_bundle_cocycle},
        {10, "infrastructure properties", 30.0, infrastructure},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        Verdict v;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(v);
        } catch (const std::exception& e) {
            v.failures.push_back(std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && seconds >= c.limit_seconds)
            v.failures.push_back("took " + std::to_string(seconds) + " s");
        const bool ok = v.failures.empty();
        failed += !ok;
        std::cout << "criterion " << std::setw(2) << c.number << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << " ("
                  << std::fixed << std::setprecision(2) << seconds << " s)\n";
        for (std::size_t i = 0; i < v.failures.size() && i < 5; ++i) std::cout << "    " << v.failures[i] << '\n';
    }
    return failed == 0 ? 0 : 1;
}
