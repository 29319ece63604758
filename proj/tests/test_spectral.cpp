#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lsseq/spectral.hpp"
#include "oracles.hpp"
#include "random_systems.hpp"

using namespace lsseq;

namespace {

IntVector ints(std::initializer_list<long> xs) {
    IntVector v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

FgAbGroup group(std::size_t free, std::initializer_list<long> torsion) {
    return FgAbGroup{free, ints(torsion), std::nullopt};
}

GradedKBundle constant_bundle(const BuiltinComplex& base, std::size_t even, std::size_t odd) {
    return GradedKBundle{LocalSystem::constant(base.complex, even), LocalSystem::constant(base.complex, odd)};
}

SpectralPage second_page(GradedKBundle bundle, Convention c = Convention::e1) {
    return e2_page(e1_page(make_input(std::move(bundle), c)));
}

const IntMatrix kA{{1, 2}, {0, 1}};
const IntMatrix kB{{1, 4}, {0, 1}};

}  // namespace

TEST_CASE("differential targets wrap the fibre degree") {
    CHECK(differential_target({0, 1}, 2) == Spot{2, 0});
    CHECK(differential_target({0, 0}, 2) == Spot{2, 1});
    CHECK(differential_target({1, 0}, 1) == Spot{2, 1});
}

TEST_CASE("first page counts cells") {
    const auto torus = builtin_torus2();
    const auto e1 = e1_page(make_input(constant_bundle(torus, 2, 2)));
    for (int q = 0; q < 2; ++q) {
        CHECK(e1.group({0, q}) == FgAbGroup::free(14));
        CHECK(e1.group({1, q}) == FgAbGroup::free(42));
        CHECK(e1.group({2, q}) == FgAbGroup::free(28));
    }
    CHECK(e1.dimension() == 2);
    CHECK_FALSE(e1.is_stable());
}

TEST_CASE("first differential squares to zero on random bundles") {
    std::mt19937 rng(103);
    for (const char* name : {"torus2", "genus(2)", "circle(4)", "sphere2", "simplex(3)"}) {
        const auto base = builtin(name);
        for (int trial = 0; trial < 3; ++trial) {
            const auto e1 = e1_page(make_input(GradedKBundle{gen::random_flat_system(rng, base, 1 + trial % 2),
                                                             gen::random_flat_system(rng, base, 2)}));
            for (const auto& [s, entry] : e1.entries) {
                const Spot t = differential_target(s, 1);
                if (t.first > e1.dimension()) continue;
                CHECK((e1.differential(t) * e1.differential(s)).is_zero());
            }
        }
    }
}

TEST_CASE("second page is local-coefficient cohomology") {
    std::mt19937 rng(107);
    for (const auto& name : gen::criterion_bases()) {
        const auto base = builtin(name);
        for (int trial = 0; trial < 3; ++trial) {
            GradedKBundle bundle{gen::random_flat_system(rng, base, 2), gen::random_flat_system(rng, base, 1 + trial)};
            for (const auto conv : {Convention::classical, Convention::e1}) {
                const auto input = make_input(bundle, conv);
                const auto turned = next_page(e1_page(input));
                const auto h0 = cohomology_groups(CochainComplex::build(bundle.even, conv));
                const auto h1 = cohomology_groups(CochainComplex::build(bundle.odd, conv));
                for (const auto& [s, entry] : turned.entries) {
                    const auto& h = (s.first + s.second) % 2 == 0 ? h0 : h1;
                    CHECK(entry.quotient() == h[static_cast<std::size_t>(s.first)]);
                }
            }
        }
    }
}

TEST_CASE("contractible base concentrates in column zero") {
    std::mt19937 rng(109);
    const auto simplex = builtin_simplex(2);
    const auto e2 = second_page(GradedKBundle{gen::random_flat_system(rng, simplex, 2),
                                              gen::random_flat_system(rng, simplex, 3)});
    CHECK(e2.group({0, 0}) == FgAbGroup::free(2));
    CHECK(e2.group({0, 1}) == FgAbGroup::free(3));
    for (int p = 1; p <= 2; ++p)
        for (int q = 0; q < 2; ++q) CHECK(e2.group({p, q}).is_trivial());
    const auto [k0, k1] = assemble(e2.is_stable() ? e2 : stabilize(e2));
    CHECK(k0.graded_pieces[0] == FgAbGroup::free(2));
    CHECK(k1.graded_pieces[0] == FgAbGroup::free(3));
}

TEST_CASE("circle with fibre (Z, 0)") {
    const auto e2 = second_page(constant_bundle(builtin_circle(3), 1, 0));
    CHECK(e2.group({0, 0}) == FgAbGroup::free(1));
    CHECK(e2.group({1, 1}) == FgAbGroup::free(1));
    CHECK(e2.group({1, 0}).is_trivial());
    CHECK(e2.is_stable());
}

TEST_CASE("checkerboard and Kunneth") {
    const auto torus = builtin_torus2();
    const auto e2 = second_page(constant_bundle(torus, 1, 0));
    const std::size_t betti[3] = {1, 2, 1};
    for (int p = 0; p <= 2; ++p)
        for (int q = 0; q < 2; ++q)
            CHECK(e2.group({p, q}) == FgAbGroup::free((p - q) % 2 == 0 ? betti[p] : 0));

    const auto trivial = second_page(constant_bundle(torus, 2, 2));
    const auto e_inf = stabilize(attach_d2(trivial, {}));
    const auto [k0, k1] = assemble(e_inf);
    CHECK(k0.graded_pieces == std::vector<FgAbGroup>{FgAbGroup::free(2), FgAbGroup::free(4), FgAbGroup::free(2)});
    CHECK(k1.graded_pieces == k0.graded_pieces);
    CHECK(k0.total_rank() + k1.total_rank() == static_cast<std::size_t>(1 << 4));
    CHECK_FALSE(k0.extension_ambiguous);
}

TEST_CASE("genus two with constant fibre") {
    const auto e2 = second_page(constant_bundle(builtin_genus(2), 1, 0));
    CHECK(e2.group({0, 0}) == FgAbGroup::free(1));
    CHECK(e2.group({1, 1}) == FgAbGroup::free(4));
    CHECK(e2.group({2, 0}) == FgAbGroup::free(1));
}

TEST_CASE("supplied second differential") {
    const auto torus = builtin_torus2();
    const auto e2 = second_page(constant_bundle(torus, 1, 1));
    REQUIRE(e2.group({0, 1}) == FgAbGroup::free(1));
    REQUIRE(e2.group({2, 0}) == FgAbGroup::free(1));

    const auto same = attach_d2(e2, {});
    for (const auto& [s, entry] : e2.entries) CHECK(same.group(s) == entry.quotient());

    const auto killed = attach_d2(e2, {{{0, 1}, IntMatrix{{1}}}});
    CHECK(killed.group({0, 1}).is_trivial());
    CHECK(killed.group({2, 0}).is_trivial());
    CHECK(killed.group({0, 0}) == FgAbGroup::free(1));

    const auto doubled = attach_d2(e2, {{{0, 1}, IntMatrix{{2}}}});
    CHECK(doubled.group({0, 1}).is_trivial());
    CHECK(doubled.group({2, 0}) == group(0, {2}));
    // classes on the third page still project from cochains of the first
    CHECK(doubled.at({2, 0}).ambient_rank() == 14);

    CHECK_THROWS(with_differentials(e2, {{{0, 1}, IntMatrix{{1, 1}}}}));
    CHECK_THROWS_AS(with_differentials(e2, {{{5, 1}, IntMatrix{{1}}}}), std::invalid_argument);
    CHECK_THROWS_AS(attach_d2(same, {}), std::invalid_argument);
}

TEST_CASE("torsion second page and stabilization") {
    const auto torus = builtin_torus2();
    const auto e2 = second_page(GradedKBundle{from_monodromy(torus, {kA, kB}, 2), LocalSystem::constant(torus.complex, 2)});
    CHECK(e2.group({0, 0}) == FgAbGroup::free(1));
    CHECK(e2.group({0, 1}) == FgAbGroup::free(2));
    CHECK(e2.group({2, 0}) == group(1, {2}));

    // d2 out of (0,1) is neither supplied nor forced to vanish
    CHECK_THROWS_AS(stabilize(e2), std::logic_error);
    CHECK_THROWS_WITH_AS(assemble(e2), "page not stable", std::logic_error);
    CHECK(differential_forced_zero(e2, {2, 0}));
    CHECK_FALSE(differential_forced_zero(e2, {0, 1}));

    const auto e3 = attach_d2(e2, {});
    CHECK(e3.is_stable());
    const auto e4 = next_page(e3);
    for (const auto& [s, entry] : e3.entries) CHECK(e4.group(s) == entry.quotient());

    const auto [k0, k1] = assemble(e3);
    CHECK(k0.graded_pieces == std::vector<FgAbGroup>{group(1, {}), group(4, {}), group(1, {2})});
    CHECK(k1.graded_pieces == std::vector<FgAbGroup>{group(2, {}), group(2, {2}), group(2, {})});
    CHECK_FALSE(k0.extension_ambiguous);
    CHECK(k1.extension_ambiguous);
}

TEST_CASE("assembled ranks do not depend on the convention") {
    std::mt19937 rng(113);
    for (const auto& name : gen::criterion_bases()) {
        const auto base = builtin(name);
        const GradedKBundle bundle{gen::random_flat_system(rng, base, 2), gen::random_flat_system(rng, base, 1)};
        std::size_t totals[2][2];
        int i = 0;
        for (const auto conv : {Convention::classical, Convention::e1}) {
            const auto e2 = second_page(bundle, conv);
            const auto e_inf = e2.is_stable() ? e2 : stabilize(attach_d2(e2, {}));
            const auto [k0, k1] = assemble(e_inf);
            totals[i][0] = k0.total_rank();
            totals[i][1] = k1.total_rank();
            ++i;
        }
        CHECK(totals[0][0] == totals[1][0]);
        CHECK(totals[0][1] == totals[1][1]);
        // and equal the total rank of the cohomology of each parity
        std::size_t direct[2] = {0, 0};
        for (int p = 0; p <= base.complex->dimension(); ++p) {
            const auto& sys = bundle.fiber(p % 2 == 0 ? 0 : 1);
            direct[0] += cohomology_groups(CochainComplex::build(sys))[static_cast<std::size_t>(p)].free_rank;
            const auto& other = bundle.fiber(p % 2 == 0 ? 1 : 0);
            direct[1] += cohomology_groups(CochainComplex::build(other))[static_cast<std::size_t>(p)].free_rank;
        }
        CHECK(totals[1][0] == direct[0]);
        CHECK(totals[1][1] == direct[1]);
    }
}

TEST_CASE("bases must agree") {
    const auto a = builtin_torus2();
    const auto b = builtin_sphere2();
    CHECK_THROWS_AS(make_input(GradedKBundle{LocalSystem::constant(a.complex, 1), LocalSystem::constant(b.complex, 1)}),
                    std::invalid_argument);
}
