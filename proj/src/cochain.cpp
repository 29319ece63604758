#include "lsseq/cochain.hpp"

#include <stdexcept>
#include <string>

namespace lsseq {

const char* to_string(Convention c) {
    return c == Convention::classical ? "classical" : "e1";
}

Convention parse_convention(const std::string& name) {
    if (name == "classical") return Convention::classical;
    if (name == "e1") return Convention::e1;
    throw std::invalid_argument("unknown sign convention '" + name + "'");
}

CochainComplex CochainComplex::build(const LocalSystem& system, Convention convention) {
    const auto violations = flatness_check(system);
    if (!violations.empty()) throw std::domain_error("flatness violation: " + violations.front().reason);

    const SimplicialComplex& x = system.base();
    const std::size_t m = system.fiber_rank();
    CochainComplex c;
    c.convention_ = convention;
    c.rank_ = m;
    const int top = x.dimension();
    for (int p = 0; p <= top; ++p) c.ranks_.push_back(x.count(p) * m);

    for (int p = 0; p <= top; ++p) {
        IntMatrix d(c.rank(p + 1), c.rank(p));
        const auto& cofaces = x.simplices(p + 1);
        for (std::size_t j = 0; j < cofaces.size(); ++j) {
            const OrientedSimplex sigma{cofaces[j]};
            for (int l = 0; l <= p + 1; ++l) {
                const auto glue = glue_sign(x, sigma, l);
                const int parity = convention == Convention::classical ? l : (p + 1) - l;
                const int sign = (parity % 2 == 0 ? 1 : -1) * glue.sign;
                const std::size_t row0 = j * m;
                const std::size_t col0 = glue.face_index * m;
                if (l == 0) {
                    // the 0-th face is based at sigma[1]; move its value to sigma[0]
                    const IntMatrix& t = system.transport(sigma.vertices[1], sigma.vertices[0]);
                    for (std::size_t a = 0; a < m; ++a)
                        for (std::size_t b = 0; b < m; ++b) d(row0 + a, col0 + b) += sign * t(a, b);
                } else {
                    for (std::size_t a = 0; a < m; ++a) d(row0 + a, col0 + a) += sign;
                }
            }
        }
        c.differentials_.push_back(std::move(d));
    }
    return c;
}

std::size_t CochainComplex::rank(int p) const {
    if (p < 0 || p >= static_cast<int>(ranks_.size())) return 0;
    return ranks_[static_cast<std::size_t>(p)];
}

const IntMatrix& CochainComplex::differential(int p) const {
    if (p < 0 || p >= static_cast<int>(differentials_.size())) return empty_;
    return differentials_[static_cast<std::size_t>(p)];
}

Subquotient cohomology_at(const CochainComplex& c, int p) {
    if (p < 0 || p > c.top_degree()) throw std::out_of_range("cohomological degree out of range");
    const IntMatrix incoming = p == 0 ? IntMatrix(c.rank(0), 0) : c.differential(p - 1);
    try {
        return Subquotient(kernel(c.differential(p)), incoming);
    } catch (const std::domain_error&) {
        throw std::domain_error("differential does not square to zero");
    }
}

std::vector<Subquotient> cohomology(const CochainComplex& c) {
    std::vector<Subquotient> out;
    for (int p = 0; p <= c.top_degree(); ++p) out.push_back(cohomology_at(c, p));
    return out;
}

std::vector<FgAbGroup> cohomology_groups(const CochainComplex& c) {
    std::vector<FgAbGroup> out;
    for (const auto& h : cohomology(c)) out.push_back(h.quotient());
    return out;
}

ConventionComparison convention_compare(const LocalSystem& system) {
    ConventionComparison cmp;
    cmp.classical = cohomology_groups(CochainComplex::build(system, Convention::classical));
    cmp.e1 = cohomology_groups(CochainComplex::build(system, Convention::e1));
    cmp.isomorphic = cmp.classical == cmp.e1;
    return cmp;
}

}  // namespace lsseq
