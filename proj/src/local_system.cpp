#include "lsseq/local_system.hpp"

#include "lsseq/smith.hpp"

#include <stdexcept>

namespace lsseq {

namespace {

void require_square(const IntMatrix& m, std::size_t rank, const char* what) {
    if (m.rows() != rank || m.cols() != rank)
        throw std::invalid_argument(std::string(what) + ": dimension mismatch with fibre rank " + std::to_string(rank));
}

IntMatrix evaluate_word(const GeneratorWord& word, const std::vector<IntMatrix>& mats,
                        const std::vector<IntMatrix>& inverses, std::size_t rank) {
    IntMatrix out = IntMatrix::identity(rank);
    for (int g : word) {
        const std::size_t k = static_cast<std::size_t>(std::abs(g)) - 1;
        out = out * (g > 0 ? mats.at(k) : inverses.at(k));
    }
    return out;
}

}  // namespace

LocalSystem::LocalSystem(std::shared_ptr<const SimplicialComplex> base, std::size_t fiber_rank,
                         std::map<std::pair<int, int>, IntMatrix> transports)
    : base_(std::move(base)), rank_(fiber_rank) {
    if (!base_) throw std::invalid_argument("local system needs a base complex");
    for (const auto& e : base_->simplices(1)) {
        const auto key = std::make_pair(e[0], e[1]);
        auto it = transports.find(key);
        if (it == transports.end())
            throw std::invalid_argument("missing transport for edge (" + std::to_string(e[0]) + "," +
                                        std::to_string(e[1]) + ")");
        require_square(it->second, rank_, "transport");
        backward_.emplace(key, inverse_unimodular(it->second));
        forward_.emplace(key, std::move(it->second));
        transports.erase(it);
    }
    if (!transports.empty()) {
        const auto& [u, v] = transports.begin()->first;
        throw std::invalid_argument("transport given for a non-edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
}

LocalSystem LocalSystem::constant(std::shared_ptr<const SimplicialComplex> base, std::size_t fiber_rank) {
    std::map<std::pair<int, int>, IntMatrix> t;
    for (const auto& e : base->simplices(1)) t.emplace(std::make_pair(e[0], e[1]), IntMatrix::identity(fiber_rank));
    return LocalSystem(std::move(base), fiber_rank, std::move(t));
}

const IntMatrix& LocalSystem::transport(int u, int v) const {
    if (u < v) {
        auto it = forward_.find({u, v});
        if (it != forward_.end()) return it->second;
    } else {
        auto it = backward_.find({v, u});
        if (it != backward_.end()) return it->second;
    }
    throw std::invalid_argument("vertices " + std::to_string(u) + " and " + std::to_string(v) + " are not adjacent");
}

LocalSystem LocalSystem::gauge_transformed(const std::vector<IntMatrix>& gauge) const {
    if (gauge.size() != static_cast<std::size_t>(base_->vertex_count()))
        throw std::invalid_argument("gauge needs one matrix per vertex");
    std::map<std::pair<int, int>, IntMatrix> t;
    for (const auto& [key, m] : forward_) {
        const auto [u, v] = key;
        t.emplace(key, gauge[static_cast<std::size_t>(v)] * m * inverse_unimodular(gauge[static_cast<std::size_t>(u)]));
    }
    return LocalSystem(base_, rank_, std::move(t));
}

LocalSystem from_monodromy(const BuiltinComplex& base, const std::vector<IntMatrix>& mats, std::size_t fiber_rank) {
    if (mats.size() != base.generator_count())
        throw std::invalid_argument(base.name + " needs " + std::to_string(base.generator_count()) +
                                    " monodromy matrices, got " + std::to_string(mats.size()));
    std::vector<IntMatrix> inverses;
    for (const auto& m : mats) {
        require_square(m, fiber_rank, "monodromy");
        inverses.push_back(inverse_unimodular(m));
    }
    // Surface relation [A1,B1]...[Ag,Bg] = I; for the torus this is commutativity.
    if (base.name == "torus2" || base.name.rfind("genus(", 0) == 0) {
        IntMatrix rel = IntMatrix::identity(fiber_rank);
        for (std::size_t i = 0; i + 1 < mats.size(); i += 2)
            rel = rel * mats[i] * mats[i + 1] * inverses[i] * inverses[i + 1];
        if (!rel.is_identity()) throw std::domain_error("relation violated");
    }

    std::map<std::pair<int, int>, IntMatrix> t;
    for (const auto& e : base.complex->simplices(1)) {
        const auto key = std::make_pair(e[0], e[1]);
        auto it = base.edge_words.find(key);
        t.emplace(key, it == base.edge_words.end() ? IntMatrix::identity(fiber_rank)
                                                   : evaluate_word(it->second, mats, inverses, fiber_rank));
    }
    LocalSystem system(base.complex, fiber_rank, std::move(t));
    const auto violations = flatness_check(system);
    if (!violations.empty()) throw std::domain_error("relation violated: " + violations.front().reason);
    return system;
}

std::vector<FlatnessViolation> flatness_check(const LocalSystem& system) {
    std::vector<FlatnessViolation> out;
    const auto& x = system.base();
    for (const auto& e : x.simplices(1)) {
        const IntMatrix round_trip = system.transport(e[1], e[0]) * system.transport(e[0], e[1]);
        if (!round_trip.is_identity()) out.push_back({e, "inverse law fails on edge"});
    }
    for (const auto& s : x.simplices(2)) {
        const IntMatrix two_step = system.transport(s[1], s[2]) * system.transport(s[0], s[1]);
        if (!(two_step == system.transport(s[0], s[2]))) out.push_back({s, "composition law fails on triangle"});
    }
    return out;
}

IntMatrix transport_along(const LocalSystem& system, const std::vector<int>& path) {
    IntMatrix out = IntMatrix::identity(system.fiber_rank());
    for (std::size_t i = 1; i < path.size(); ++i) {
        if (!system.base().adjacent(path[i - 1], path[i]))
            throw std::invalid_argument("non-adjacent step " + std::to_string(path[i - 1]) + " -> " +
                                        std::to_string(path[i]));
        out = system.transport(path[i - 1], path[i]) * out;
    }
    return out;
}

std::vector<IntMatrix> holonomy(const LocalSystem& system, const BuiltinComplex& base) {
    std::vector<IntMatrix> out;
    for (const auto& loop : base.generator_loops) out.push_back(transport_along(system, loop));
    return out;
}

InvariantLattice invariants(const std::vector<IntMatrix>& mats, std::size_t rank) {
    IntMatrix stacked(0, rank);
    for (const auto& a : mats) {
        require_square(a, rank, "invariants");
        stacked = vconcat(stacked, a - IntMatrix::identity(rank));
    }
    InvariantLattice inv;
    inv.inclusion = kernel(stacked);
    inv.group = FgAbGroup::free(inv.inclusion.cols());
    inv.group.generators = inv.inclusion;
    return inv;
}

Subquotient coinvariants(const std::vector<IntMatrix>& mats, std::size_t rank) {
    IntMatrix block(rank, 0);
    for (const auto& a : mats) {
        require_square(a, rank, "coinvariants");
        block = hconcat(block, a - IntMatrix::identity(rank));
    }
    return cokernel_presentation(block);
}

}  // namespace lsseq
