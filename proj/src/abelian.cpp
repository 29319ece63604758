#include "lsseq/abelian.hpp"

#include <sstream>
#include <stdexcept>

namespace lsseq {

Integer FgAbGroup::torsion_order() const {
    Integer order = 1;
    for (const auto& t : torsion) order *= t;
    return order;
}

Integer FgAbGroup::modulus(std::size_t i) const {
    if (i < free_rank) return 0;
    return torsion.at(i - free_rank);
}

IntVector FgAbGroup::reduce(IntVector coords) const {
    if (coords.size() != generator_count()) throw std::invalid_argument("FgAbGroup::reduce: coordinate count mismatch");
    for (std::size_t j = 0; j < torsion.size(); ++j) {
        Integer& x = coords[free_rank + j];
        mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), torsion[j].get_mpz_t());
    }
    return coords;
}

Integer FgAbGroup::order_of(const IntVector& coords) const {
    const IntVector c = reduce(coords);
    for (std::size_t i = 0; i < free_rank; ++i)
        if (sgn(c[i]) != 0) return 0;
    Integer order = 1;
    for (std::size_t j = 0; j < torsion.size(); ++j) {
        const Integer& x = c[free_rank + j];
        if (sgn(x) == 0) continue;
        Integer g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), torsion[j].get_mpz_t());
        const Integer element_order = torsion[j] / g;
        mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), element_order.get_mpz_t());
    }
    return order;
}

IntMatrix FgAbGroup::relation_matrix() const {
    IntMatrix rel(generator_count(), torsion.size());
    for (std::size_t j = 0; j < torsion.size(); ++j) rel(free_rank + j, j) = torsion[j];
    return rel;
}

std::string to_string(const FgAbGroup& g) {
    if (g.is_trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (g.free_rank > 0) {
        os << 'Z';
        if (g.free_rank > 1) os << '^' << g.free_rank;
        first = false;
    }
    for (const auto& t : g.torsion) {
        if (!first) os << " (+) ";
        os << "Z/" << t;
        first = false;
    }
    return os.str();
}

Subquotient::Subquotient(const IntMatrix& cycles, const IntMatrix& boundaries)
    : ambient_(cycles.rows()), cycles_(cycles), boundaries_(boundaries) {
    if (boundaries.rows() != cycles.rows())
        throw std::invalid_argument("subquotient: cycles and boundaries live in different ambient lattices");

    auto cycle_snf = smith_normal_form(cycles);
    const std::size_t r = cycle_snf.rank();
    cycle_basis_ = (cycles * cycle_snf.v).column_range(0, r);
    cycle_u_ = std::move(cycle_snf.u);
    cycle_diagonal_ = std::move(cycle_snf.diagonal);

    std::vector<IntVector> relation_columns;
    relation_columns.reserve(boundaries.cols());
    for (std::size_t j = 0; j < boundaries.cols(); ++j) {
        auto coords = cycle_coordinates(boundaries.column(j));
        if (!coords) throw std::domain_error("boundary not contained in cycles");
        relation_columns.push_back(std::move(*coords));
    }
    const IntMatrix relations = IntMatrix::from_columns(relation_columns, r);

    auto rel_snf = smith_normal_form(relations, SmithOptions{.track_inverses = true});
    const std::size_t s = rel_snf.rank();
    relation_u_ = std::move(rel_snf.u);
    adapted_modulus_.assign(r, Integer(0));
    for (std::size_t i = 0; i < s; ++i) adapted_modulus_[i] = rel_snf.diagonal[i];

    for (std::size_t i = s; i < r; ++i) generator_slot_.push_back(i);
    quotient_.free_rank = r - s;
    for (std::size_t i = 0; i < s; ++i) {
        if (adapted_modulus_[i] == 1) continue;
        generator_slot_.push_back(i);
        quotient_.torsion.push_back(adapted_modulus_[i]);
    }

    const IntMatrix& p_inv = *rel_snf.u_inverse;
    lifts_ = IntMatrix(ambient_, generator_slot_.size());
    for (std::size_t k = 0; k < generator_slot_.size(); ++k) {
        const IntVector col = cycle_basis_ * p_inv.column(generator_slot_[k]);
        for (std::size_t i = 0; i < ambient_; ++i) lifts_(i, k) = col[i];
    }
    quotient_.generators = lifts_;
}

std::optional<IntVector> Subquotient::cycle_coordinates(const IntVector& ambient) const {
    if (ambient.size() != ambient_) throw std::invalid_argument("subquotient: vector has wrong ambient rank");
    const IntVector w = cycle_u_ * ambient;
    const std::size_t r = cycle_diagonal_.size();
    IntVector y(r);
    for (std::size_t i = 0; i < r; ++i) {
        if (!mpz_divisible_p(w[i].get_mpz_t(), cycle_diagonal_[i].get_mpz_t())) return std::nullopt;
        mpz_divexact(y[i].get_mpz_t(), w[i].get_mpz_t(), cycle_diagonal_[i].get_mpz_t());
    }
    for (std::size_t i = r; i < w.size(); ++i)
        if (sgn(w[i]) != 0) return std::nullopt;
    return y;
}

IntVector Subquotient::lift(std::size_t generator) const {
    return lifts_.column(generator);
}

std::optional<IntVector> Subquotient::try_project(const IntVector& ambient) const {
    auto y = cycle_coordinates(ambient);
    if (!y) return std::nullopt;
    const IntVector adapted = relation_u_ * *y;
    IntVector out(generator_slot_.size());
    for (std::size_t k = 0; k < generator_slot_.size(); ++k) out[k] = adapted[generator_slot_[k]];
    return quotient_.reduce(std::move(out));
}

IntVector Subquotient::project(const IntVector& ambient) const {
    auto coords = try_project(ambient);
    if (!coords) throw std::domain_error("vector is not a cycle of the subquotient");
    return *coords;
}

bool Subquotient::is_cycle(const IntVector& ambient) const {
    return cycle_coordinates(ambient).has_value();
}

Subquotient subquotient(const IntMatrix& cycles, const IntMatrix& boundaries) {
    return Subquotient(cycles, boundaries);
}

Subquotient cokernel_presentation(const IntMatrix& a) {
    return Subquotient(IntMatrix::identity(a.rows()), a);
}

FgAbGroup cokernel(const IntMatrix& a) {
    return cokernel_presentation(a).quotient();
}

void require_well_defined(const FgAbGroup& source, const IntMatrix& map, const FgAbGroup& target) {
    if (map.cols() != source.generator_count() || map.rows() != target.generator_count())
        throw std::invalid_argument("homomorphism matrix has wrong shape");
    for (std::size_t j = 0; j < source.torsion.size(); ++j) {
        const std::size_t col = source.free_rank + j;
        for (std::size_t i = 0; i < map.rows(); ++i) {
            const Integer v = map(i, col) * source.torsion[j];
            const Integer m = target.modulus(i);
            const bool ok = sgn(m) == 0 ? sgn(v) == 0 : mpz_divisible_p(v.get_mpz_t(), m.get_mpz_t()) != 0;
            if (!ok) throw std::domain_error("map is not well defined on classes");
        }
    }
}

Subquotient homology_at(const FgAbGroup& g, const IntMatrix& in, const IntMatrix& out, const FgAbGroup& c) {
    const std::size_t n = g.generator_count();
    if (in.rows() != n) throw std::invalid_argument("homology_at: incoming map has wrong target rank");
    require_well_defined(g, out, c);

    const IntMatrix rel_g = g.relation_matrix();
    const IntMatrix rel_c = c.relation_matrix();
    const IntMatrix k = kernel(hconcat(out, scaled(rel_c, -1)));
    const IntMatrix cycles = hconcat(k.row_range(0, n), rel_g);
    try {
        return Subquotient(cycles, hconcat(rel_g, in));
    } catch (const std::domain_error&) {
        throw std::domain_error("differential does not square to zero");
    }
}

FgAbGroup image_group(const FgAbGroup& source, const IntMatrix& map, const FgAbGroup& target) {
    require_well_defined(source, map, target);
    const IntMatrix rel = target.relation_matrix();
    FgAbGroup img = Subquotient(hconcat(map, rel), rel).quotient();
    img.generators.reset();
    return img;
}

}  // namespace lsseq
