#include "lsseq/spectral.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsseq {

namespace {

const LocalSystem& fiber_at(const SpectralInput& in, Spot s) {
    return in.bundle->fiber((s.first + s.second) % 2);
}

bool in_window(const SpectralPage& page, Spot s) {
    return s.first >= 0 && s.first <= page.dimension();
}

int wrap(int q) {
    return ((q % 2) + 2) % 2;
}

const FgAbGroup kTrivial{};

// Coboundary C^p -> C^{p+1} for one fibre, assembled by enumerating the
// cofaces of every p-simplex.
IntMatrix cell_differential(const LocalSystem& system, int p, Convention convention) {
    const SimplicialComplex& x = system.base();
    const std::size_t m = system.fiber_rank();
    IntMatrix d(x.count(p + 1) * m, x.count(p) * m);
    const auto& cells = x.simplices(p);
    for (std::size_t t = 0; t < cells.size(); ++t) {
        const Simplex& tau = cells[t];
        for (int w = 0; w < x.vertex_count(); ++w) {
            Simplex sigma = tau;
            auto pos = std::lower_bound(sigma.begin(), sigma.end(), w);
            if (pos != sigma.end() && *pos == w) continue;
            const int l = static_cast<int>(pos - sigma.begin());
            sigma.insert(pos, w);
            const auto j = x.index_of(sigma);
            if (!j) continue;
            const auto glue = glue_sign(x, OrientedSimplex{sigma}, l);
            if (glue.face_index != t) throw std::logic_error("gluing data does not match the face");
            const int parity = convention == Convention::e1 ? (p + 1) - l : l;
            const int sign = (parity % 2 == 0 ? 1 : -1) * glue.sign;
            const std::size_t row0 = *j * m;
            const std::size_t col0 = t * m;
            if (l == 0) {
                const IntMatrix& tr = system.transport(tau.front(), w);
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < m; ++b) d(row0 + a, col0 + b) += sign * tr(a, b);
            } else {
                for (std::size_t a = 0; a < m; ++a) d(row0 + a, col0 + a) += sign;
            }
        }
    }
    return d;
}

}  // namespace

Spot differential_target(Spot s, int r) {
    return {s.first + r, wrap(s.second - 1)};
}

const Subquotient& SpectralPage::at(Spot s) const {
    auto it = entries.find(s);
    if (it == entries.end())
        throw std::out_of_range("no entry at (" + std::to_string(s.first) + "," + std::to_string(s.second) + ")");
    return it->second;
}

IntMatrix SpectralPage::differential(Spot s) const {
    auto it = differentials.find(s);
    if (it != differentials.end()) return it->second;
    const Spot t = differential_target(s, r);
    const std::size_t rows = in_window(*this, t) ? group(t).generator_count() : 0;
    return IntMatrix(rows, group(s).generator_count());
}

SpectralInput make_input(GradedKBundle bundle, Convention convention) {
    if (bundle.even.base_ptr() != bundle.odd.base_ptr()) {
        const SimplicialComplex& a = bundle.even.base();
        const SimplicialComplex& b = bundle.odd.base();
        bool same = a.vertex_count() == b.vertex_count() && a.dimension() == b.dimension();
        for (int p = 0; same && p <= a.dimension(); ++p) same = a.simplices(p) == b.simplices(p);
        if (!same) throw std::invalid_argument("even and odd systems live over different complexes");
    }
    return SpectralInput{std::make_shared<const GradedKBundle>(std::move(bundle)), convention};
}

SpectralPage e1_page(const SpectralInput& input) {
    SpectralPage page;
    page.r = 1;
    page.input = input;
    for (int parity = 0; parity < 2; ++parity) {
        const auto violations = flatness_check(input.bundle->fiber(parity));
        if (!violations.empty()) throw std::domain_error("flatness violation: " + violations.front().reason);
    }
    const int dim = input.base().dimension();
    for (int p = 0; p <= dim; ++p) {
        for (int q = 0; q < 2; ++q) {
            const LocalSystem& fiber = fiber_at(input, {p, q});
            const std::size_t n = input.base().count(p) * fiber.fiber_rank();
            page.entries.emplace(Spot{p, q}, cokernel_presentation(IntMatrix(n, 0)));
            if (p < dim) page.differentials.emplace(Spot{p, q}, cell_differential(fiber, p, input.convention));
        }
    }
    return page;
}

SpectralPage with_differentials(SpectralPage page, const DifferentialSpec& d) {
    for (const auto& [s, m] : d) {
        const Spot t = differential_target(s, page.r);
        if (!page.entries.count(s)) throw std::invalid_argument("differential given at a spot outside the window");
        const FgAbGroup& target = in_window(page, t) ? page.group(t) : kTrivial;
        require_well_defined(page.group(s), m, target);
        page.differentials[s] = m;
    }
    for (const auto& [s, entry] : page.entries) {
        const Spot t = differential_target(s, page.r);
        if (!in_window(page, t)) continue;
        const Spot u = differential_target(t, page.r);
        if (!in_window(page, u)) continue;
        const IntMatrix twice = page.differential(t) * page.differential(s);
        const FgAbGroup& target = page.group(u);
        for (std::size_t j = 0; j < twice.cols(); ++j) {
            const IntVector reduced = target.reduce(twice.column(j));
            if (!is_zero(reduced)) throw std::domain_error("differential does not square to zero");
        }
    }
    return page;
}

SpectralPage next_page(const SpectralPage& page) {
    SpectralPage out;
    out.r = page.r + 1;
    out.input = page.input;
    for (const auto& [s, entry] : page.entries) {
        const FgAbGroup& g = entry.quotient();
        const std::size_t n = g.generator_count();
        const Spot source{s.first - page.r, wrap(s.second + 1)};
        const Spot target = differential_target(s, page.r);
        const IntMatrix in = in_window(page, source) ? page.differential(source) : IntMatrix(n, 0);
        const bool has_target = in_window(page, target);
        const IntMatrix outgoing = has_target ? page.differential(s) : IntMatrix(0, n);
        const Subquotient h = homology_at(g, in, outgoing, has_target ? page.group(target) : kTrivial);

        const IntMatrix& lift = entry.lift_matrix();
        const IntMatrix cycles = hconcat(lift * h.cycle_gens(), entry.boundary_gens());
        const IntMatrix boundaries = hconcat(entry.boundary_gens(), lift * h.boundary_gens());
        Subquotient next(cycles, boundaries);
        if (!(next.quotient() == h.quotient())) throw std::logic_error("page turning changed the homology group");
        out.entries.emplace(s, std::move(next));
    }
    return out;
}

SpectralPage e2_page(const SpectralPage& page1) {
    if (page1.r != 1) throw std::invalid_argument("e2_page needs the first page");
    SpectralPage page2 = next_page(with_differentials(page1, {}));
    std::vector<FgAbGroup> direct[2];
    for (int parity = 0; parity < 2; ++parity)
        direct[parity] = cohomology_groups(CochainComplex::build(page1.input.bundle->fiber(parity), page1.input.convention));
    for (const auto& [s, entry] : page2.entries) {
        const auto& expected = direct[(s.first + s.second) % 2][static_cast<std::size_t>(s.first)];
        if (!(entry.quotient() == expected))
            throw std::logic_error("E2 at (" + std::to_string(s.first) + "," + std::to_string(s.second) +
                                   ") differs from local-coefficient cohomology");
    }
    return page2;
}

SpectralPage attach_d2(const SpectralPage& page2, const DifferentialSpec& d2) {
    if (page2.r != 2) throw std::invalid_argument("attach_d2 needs the second page");
    return next_page(with_differentials(page2, d2));
}

bool differential_forced_zero(const SpectralPage& page, Spot s) {
    const Spot t = differential_target(s, page.r);
    return !in_window(page, t) || page.group(s).is_trivial() || page.group(t).is_trivial();
}

SpectralPage stabilize(SpectralPage page) {
    bool first = true;
    while (!page.is_stable()) {
        for (const auto& [s, entry] : page.entries) {
            if (first && page.differentials.count(s)) continue;
            if (!differential_forced_zero(page, s))
                throw std::logic_error("d" + std::to_string(page.r) + " out of (" + std::to_string(s.first) + "," +
                                       std::to_string(s.second) + ") is not determined");
        }
        page = next_page(page);
        first = false;
    }
    return page;
}

std::size_t AssembledKTheory::total_rank() const {
    std::size_t total = 0;
    for (const auto& g : graded_pieces) total += g.free_rank;
    return total;
}

std::pair<AssembledKTheory, AssembledKTheory> assemble(const SpectralPage& e_inf) {
    if (!e_inf.is_stable()) throw std::logic_error("page not stable");
    AssembledKTheory k[2];
    for (int parity = 0; parity < 2; ++parity) {
        k[parity].parity = parity;
        for (int p = 0; p <= e_inf.dimension(); ++p) k[parity].graded_pieces.push_back(e_inf.group({p, parity}));
        const auto& pieces = k[parity].graded_pieces;
        for (std::size_t p = 0; p < pieces.size(); ++p) {
            if (pieces[p].torsion.empty()) continue;
            for (std::size_t later = p + 1; later < pieces.size(); ++later)
                if (!pieces[later].is_trivial()) k[parity].extension_ambiguous = true;
        }
    }
    return {k[0], k[1]};
}

}  // namespace lsseq
