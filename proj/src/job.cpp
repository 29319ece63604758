#include "lsseq/job.hpp"

#include "lsseq/group_cohomology.hpp"
#include "lsseq/ncp.hpp"
#include "lsseq/smith.hpp"
#include "lsseq/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace lsseq {

namespace {

using Json = nlohmann::ordered_json;

// Anything wrong with the document itself; mapped to kInputError.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- parsing --------------------------------------------------------------

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return obj.at(key);
}

Integer to_integer(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) == 0) return v;
    }
    throw InputError(where + ": expected an integer");
}

long to_count(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long>() < 0) throw InputError(where + ": expected a nonnegative integer");
    return j.get<long>();
}

IntMatrix to_matrix(const Json& j, const std::string& where, std::size_t size) {
    if (!j.is_array() || j.size() != size)
        throw InputError(where + ": expected a " + std::to_string(size) + "x" + std::to_string(size) + " matrix");
    IntMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) {
        const std::string row_where = where + " row " + std::to_string(i);
        const Json& row = j[i];
        if (!row.is_array()) throw InputError("malformed matrix row: " + row_where + " is not a list");
        if (row.size() != size)
            throw InputError("malformed matrix row: " + row_where + " has " + std::to_string(row.size()) +
                             " entries, expected " + std::to_string(size));
        for (std::size_t c = 0; c < size; ++c) m(i, c) = to_integer(row[c], row_where);
    }
    return m;
}

IntVector to_vector(const Json& j, const std::string& where) {
    if (!j.is_array()) throw InputError(where + ": expected a list of integers");
    IntVector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(to_integer(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

struct Base {
    std::string name;
    std::shared_ptr<const SimplicialComplex> complex;
    std::optional<BuiltinComplex> builtin;
};

Base parse_base(const Json& doc) {
    const Json& c = require(doc, "complex", "document");
    Base base;
    if (c.is_string()) {
        try {
            base.builtin = builtin(c.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("complex: ") + e.what());
        }
        base.name = base.builtin->name;
        base.complex = base.builtin->complex;
        return base;
    }
    const long n = to_count(require(c, "vertices", "complex"), "complex.vertices");
    const Json& list = require(c, "simplices", "complex");
    if (!list.is_array()) throw InputError("complex.simplices: expected a list of simplices");
    std::vector<std::vector<int>> simplices;
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string where = "complex.simplices[" + std::to_string(i) + "]";
        if (!list[i].is_array()) throw InputError(where + ": expected a list of vertices");
        std::vector<int> s;
        for (const auto& v : list[i]) s.push_back(static_cast<int>(to_count(v, where)));
        simplices.push_back(std::move(s));
    }
    try {
        base.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::from_maximal(static_cast<int>(n), simplices));
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("complex: ") + e.what());
    }
    base.name = "custom complex";
    return base;
}

LocalSystem parse_system(const Json& j, const Base& base, const std::string& where) {
    const std::size_t m = static_cast<std::size_t>(to_count(require(j, "rank", where), where + ".rank"));
    try {
        if (j.contains("monodromy")) {
            if (!base.builtin) throw InputError(where + ".monodromy needs a built-in complex; use transports");
            const Json& list = j.at("monodromy");
            if (!list.is_array()) throw InputError(where + ".monodromy: expected a list of matrices");
            std::vector<IntMatrix> mats;
            for (std::size_t i = 0; i < list.size(); ++i)
                mats.push_back(to_matrix(list[i], where + ".monodromy[" + std::to_string(i) + "]", m));
            return from_monodromy(*base.builtin, mats, m);
        }
        if (j.contains("transports")) {
            const Json& list = j.at("transports");
            if (!list.is_array()) throw InputError(where + ".transports: expected a list");
            std::map<std::pair<int, int>, IntMatrix> t;
            for (std::size_t i = 0; i < list.size(); ++i) {
                const std::string w = where + ".transports[" + std::to_string(i) + "]";
                const Json& edge = require(list[i], "edge", w);
                if (!edge.is_array() || edge.size() != 2) throw InputError(w + ".edge: expected [u, v]");
                const int u = static_cast<int>(to_count(edge[0], w + ".edge"));
                const int v = static_cast<int>(to_count(edge[1], w + ".edge"));
                IntMatrix mat = to_matrix(require(list[i], "matrix", w), w + ".matrix", m);
                if (u > v) mat = inverse_unimodular(mat);
                if (!t.emplace(std::make_pair(std::min(u, v), std::max(u, v)), std::move(mat)).second)
                    throw InputError(w + ": edge given twice");
            }
            return LocalSystem(base.complex, m, std::move(t));
        }
        return LocalSystem::constant(base.complex, m);
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(where + ": " + e.what());
    }
}

GradedKBundle parse_graded(const Json& doc, const Base& base) {
    const Json& b = require(doc, "bundle", "document");
    return GradedKBundle{parse_system(require(b, "even", "bundle"), base, "bundle.even"),
                         parse_system(require(b, "odd", "bundle"), base, "bundle.odd")};
}

// ---- rendering ------------------------------------------------------------

std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s = " ";
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += " " + cells[c];
            if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 1, ' ');
        }
        while (!s.empty() && s.back() == ' ') s.pop_back();
        os << s << '\n';
    };
    line(header);
    for (const auto& row : rows) line(row);
    return os.str();
}

Json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return Json(v.get_si());
    return Json(v.get_str());
}

Json group_json(const FgAbGroup& g) {
    Json j;
    j["group"] = to_string(g);
    j["free_rank"] = g.free_rank;
    j["torsion"] = Json::array();
    for (const auto& t : g.torsion) j["torsion"].push_back(integer_json(t));
    return j;
}

Json vector_json(const IntVector& v) {
    Json j = Json::array();
    for (const auto& x : v) j.push_back(integer_json(x));
    return j;
}

std::string join(const IntVector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
    return s;
}

std::string fiber_label(Spot s) {
    return (s.first + s.second) % 2 == 0 ? "K0" : "K1";
}

std::string image_label(const SpectralPage& page, Spot s) {
    const Spot t = differential_target(s, page.r);
    if (t.first > page.dimension()) return "-";
    return to_string(image_group(page.group(s), page.differential(s), page.group(t)));
}

std::string page_table(const SpectralPage& page, bool with_images) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [s, entry] : page.entries) {
        std::vector<std::string> row{std::to_string(s.first), std::to_string(s.second), fiber_label(s),
                                     to_string(entry.quotient())};
        if (with_images) row.push_back(image_label(page, s));
        rows.push_back(std::move(row));
    }
    std::vector<std::string> header{"p", "q", "fibre", "group"};
    if (with_images) header.push_back("image of d" + std::to_string(page.r));
    return "E" + std::to_string(page.r) + " page\n" + render_table(header, rows);
}

Json page_json(const SpectralPage& page, bool with_images) {
    Json j;
    j["r"] = page.r;
    j["entries"] = Json::array();
    for (const auto& [s, entry] : page.entries) {
        Json e;
        e["p"] = s.first;
        e["q"] = s.second;
        e["fibre"] = fiber_label(s);
        e["group"] = group_json(entry.quotient());
        if (with_images && differential_target(s, page.r).first <= page.dimension())
            e["image"] = group_json(image_group(page.group(s), page.differential(s),
                                                page.group(differential_target(s, page.r))));
        j["entries"].push_back(std::move(e));
    }
    return j;
}

std::string assembled_table(const AssembledKTheory& k) {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t p = 0; p < k.graded_pieces.size(); ++p)
        rows.push_back({std::to_string(p), to_string(k.graded_pieces[p])});
    std::ostringstream os;
    os << "associated graded of K" << k.parity << " (extension-ambiguous: " << (k.extension_ambiguous ? "yes" : "no")
       << ")\n"
       << render_table({"p", "piece"}, rows) << "  total rank " << k.total_rank() << '\n';
    return os.str();
}

Json assembled_json(const AssembledKTheory& k) {
    Json j;
    j["parity"] = k.parity;
    j["graded_pieces"] = Json::array();
    for (const auto& g : k.graded_pieces) j["graded_pieces"].push_back(group_json(g));
    j["total_rank"] = k.total_rank();
    j["extension_ambiguous"] = k.extension_ambiguous;
    return j;
}

// Runs fn(0..n-1) on up to `jobs` threads; results are stored by index so
// the output does not depend on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min<std::size_t>(std::max(1U, jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<FgAbGroup> parallel_cohomology(const CochainComplex& c, unsigned jobs) {
    std::vector<FgAbGroup> out(static_cast<std::size_t>(c.top_degree() + 1));
    parallel_for(out.size(), jobs, [&](std::size_t p) { out[p] = cohomology_at(c, static_cast<int>(p)).quotient(); });
    return out;
}

// ---- commands ---------------------------------------------------------------
//
// Each command parses first (InputError) and computes afterwards, returning
// the report and the exit code.

struct Output {
    std::string human;
    Json machine;
    int exit_code = kSuccess;
};

Output cmd_cohomology(const Json& doc, const JobOptions& opt) {
    const Base base = parse_base(doc);
    const LocalSystem system = parse_system(require(doc, "system", "document"), base, "system");

    const auto groups = parallel_cohomology(CochainComplex::build(system, opt.convention), opt.jobs);
    Output out;
    std::vector<std::vector<std::string>> rows;
    out.machine["command"] = "cohomology";
    out.machine["complex"] = base.name;
    out.machine["fiber_rank"] = system.fiber_rank();
    out.machine["convention"] = to_string(opt.convention);
    out.machine["groups"] = Json::array();
    for (std::size_t p = 0; p < groups.size(); ++p) {
        rows.push_back({std::to_string(p), to_string(groups[p])});
        Json g = group_json(groups[p]);
        g["degree"] = p;
        out.machine["groups"].push_back(std::move(g));
    }
    out.human = "cohomology of " + base.name + " with a rank-" + std::to_string(system.fiber_rank()) +
                " system (convention " + to_string(opt.convention) + ")\n" + render_table({"p", "H^p"}, rows);
    return out;
}

Output cmd_group_cohomology(const Json& doc, const JobOptions& opt) {
    const std::size_t m = static_cast<std::size_t>(to_count(require(doc, "rank", "document"), "rank"));
    const Json& list = require(doc, "action", "document");
    if (!list.is_array()) throw InputError("action: expected a list of matrices");
    std::vector<IntMatrix> mats;
    for (std::size_t i = 0; i < list.size(); ++i)
        mats.push_back(to_matrix(list[i], "action[" + std::to_string(i) + "]", m));
    std::optional<ZnModule> module;
    try {
        module.emplace(m, mats);
    } catch (const std::exception& e) {
        throw InputError(std::string("action: ") + e.what());
    }
    if (module->generators() < 1 || module->generators() > 2)
        throw InputError("action: group cohomology is implemented for Z and Z^2 only");

    const auto groups = zn_cohomology(*module, opt.convention);
    Output out;
    out.machine["command"] = "group-cohomology";
    out.machine["n"] = module->generators();
    out.machine["rank"] = m;
    out.machine["groups"] = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < groups.size(); ++k) {
        rows.push_back({std::to_string(k), to_string(groups[k])});
        Json g = group_json(groups[k]);
        g["degree"] = k;
        out.machine["groups"].push_back(std::move(g));
    }
    out.human = "H^k(Z^" + std::to_string(module->generators()) + ", M) for M = Z^" + std::to_string(m) + "\n" +
                render_table({"k", "H^k"}, rows);
    if (module->generators() == 2) {
        const auto report = recursion_check(*module);
        std::vector<std::vector<std::string>> rrows;
        out.machine["recursion"] = Json::array();
        for (const auto& r : report.rows) {
            const bool ok = r.ranks_add && r.torsion_divides && r.torsion_multiplies;
            rrows.push_back({std::to_string(r.degree), to_string(r.coinvariant_part), to_string(r.middle),
                             to_string(r.invariant_part), ok ? "ok" : "FAIL"});
            Json jr;
            jr["degree"] = r.degree;
            jr["coinvariant_part"] = group_json(r.coinvariant_part);
            jr["middle"] = group_json(r.middle);
            jr["invariant_part"] = group_json(r.invariant_part);
            jr["ranks_add"] = r.ranks_add;
            jr["torsion_divides"] = r.torsion_divides;
            jr["torsion_multiplies"] = r.torsion_multiplies;
            out.machine["recursion"].push_back(std::move(jr));
        }
        out.machine["recursion_consistent"] = report.consistent;
        out.human += "\nexact sequences 0 -> Coinv H^{k-1}(Z) -> H^k(Z^2) -> Inv H^k(Z) -> 0\n" +
                     render_table({"k", "Coinv H^{k-1}", "H^k", "Inv H^k", "check"}, rrows);
        if (!report.consistent) out.exit_code = kInvariantFailure;
    }
    return out;
}

DifferentialSpec parse_d2(const Json& doc, const SpectralPage& e2) {
    DifferentialSpec d2;
    if (!doc.contains("d2")) return d2;
    const Json& list = doc.at("d2");
    if (!list.is_array()) throw InputError("d2: expected a list of components");
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string w = "d2[" + std::to_string(i) + "]";
        const Json& from = require(list[i], "from", w);
        if (!from.is_array() || from.size() != 2) throw InputError(w + ".from: expected [p, q]");
        const Spot s{static_cast<int>(to_count(from[0], w)), static_cast<int>(to_count(from[1], w))};
        if (!e2.entries.count(s) || s.second > 1) throw InputError(w + ".from: spot outside the window");
        const Spot t = differential_target(s, 2);
        if (t.first > e2.dimension()) throw InputError(w + ": target outside the window");
        const std::size_t rows = e2.group(t).generator_count(), cols = e2.group(s).generator_count();
        const Json& mj = require(list[i], "matrix", w);
        if (!mj.is_array() || mj.size() != rows)
            throw InputError(w + ".matrix: expected " + std::to_string(rows) + " rows on E2 coordinates");
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            if (!mj[r].is_array() || mj[r].size() != cols)
                throw InputError("malformed matrix row: " + w + ".matrix row " + std::to_string(r));
            for (std::size_t c = 0; c < cols; ++c) m(r, c) = to_integer(mj[r][c], w + ".matrix");
        }
        d2.emplace(s, std::move(m));
    }
    return d2;
}

Output cmd_spectral(const Json& doc, const JobOptions& opt) {
    const Base base = parse_base(doc);
    GradedKBundle bundle = parse_graded(doc, base);

    const SpectralInput input = make_input(std::move(bundle), opt.convention);
    const SpectralPage e1 = e1_page(input);
    SpectralPage e2 = e2_page(e1);
    const DifferentialSpec d2 = parse_d2(doc, e2);

    Output out;
    out.machine["command"] = "spectral";
    out.machine["complex"] = base.name;
    out.machine["convention"] = to_string(opt.convention);
    out.machine["pages"] = Json::array();
    std::ostringstream human;
    human << "spectral sequence over " << base.name << " (convention " << to_string(opt.convention) << ")\n\n";
    human << page_table(e1, true) << '\n';
    out.machine["pages"].push_back(page_json(e1, true));

    SpectralPage e_inf;
    if (e2.is_stable()) {
        if (!d2.empty()) throw InputError("d2: the second page is already stable");
        human << page_table(e2, false) << '\n';
        out.machine["pages"].push_back(page_json(e2, false));
        e_inf = e2;
    } else {
        e2 = with_differentials(e2, d2);
        human << page_table(e2, true);
        if (d2.empty()) human << "  (d2 not supplied, taken as zero)\n";
        human << '\n';
        out.machine["d2_supplied"] = !d2.empty();
        out.machine["pages"].push_back(page_json(e2, true));
        const SpectralPage e3 = next_page(e2);
        e_inf = stabilize(e3);
        human << page_table(e3, false) << '\n';
        out.machine["pages"].push_back(page_json(e3, false));
    }
    human << "stable from page E" << e_inf.r << "\n\n";
    out.machine["stable_page"] = e_inf.r;
    const auto [k0, k1] = assemble(e_inf);
    human << assembled_table(k0) << '\n' << assembled_table(k1);
    out.machine["assembled"] = Json::array({assembled_json(k0), assembled_json(k1)});
    out.human = human.str();
    return out;
}

NcpTorusBundleSpec parse_ncp(const Json& doc) {
    const std::string base_name = doc.contains("complex") ? doc.at("complex").get<std::string>() : "torus2";
    const Json& b = require(doc, "bundle", "document");
    const IntVector windings = to_vector(require(b, "windings", "bundle"), "bundle.windings");
    const Json& chern = require(b, "chern", "bundle");
    if (!chern.is_array()) throw InputError("bundle.chern: expected a list");
    try {
        if (std::all_of(chern.begin(), chern.end(), [](const Json& c) { return c.is_array(); })) {
            std::vector<Cochain2> cochains;
            for (std::size_t i = 0; i < chern.size(); ++i)
                cochains.push_back(to_vector(chern[i], "bundle.chern[" + std::to_string(i) + "]"));
            return make_spec(base_name, windings, std::move(cochains));
        }
        return make_spec(base_name, windings, to_vector(chern, "bundle.chern"));
    } catch (const InputError&) {
        throw;
    } catch (const std::exception& e) {
        throw InputError(std::string("bundle: ") + e.what());
    }
}

std::string d2_value(const IntVector& coinvariant, const Integer& k) {
    std::string s = coinvariant[0].get_str();
    if (sgn(k) != 0) s += " mod " + k.get_str();
    if (sgn(coinvariant[1]) != 0) s += " + " + coinvariant[1].get_str() + " beta";
    return s;
}

Output cmd_ncp(const Json& doc, const JobOptions& opt) {
    const NcpTorusBundleSpec spec = parse_ncp(doc);
    const NcpReport r = run_ncp(spec, opt.convention);

    Output out;
    std::ostringstream human;
    human << "NCP T^2-bundle over " << spec.base.name << " (convention " << to_string(opt.convention) << ")\n"
          << "  windings: " << join(spec.windings) << '\n'
          << "  k = gcd of windings: " << r.k_gcd.get_str() << '\n'
          << "  Chern pairings: " << join(r.pairings) << '\n'
          << "  H^2(X; K0) = " << to_string(r.e2.group({2, 0})) << ", [1] has order "
          << (sgn(r.k_gcd) == 0 ? std::string("infinite") : r.k_gcd.get_str()) << ", beta is free\n";
    for (std::size_t i = 0; i < r.d2.coinvariant.size(); ++i)
        human << "  d2[U_" << i + 1 << "] = " << d2_value(r.d2.coinvariant[i], r.k_gcd) << '\n';
    human << '\n' << page_table(r.e2, true) << '\n' << page_table(r.e3, false) << '\n';
    human << assembled_table(r.k0) << '\n' << assembled_table(r.k1) << '\n';
    human << "verdict: " << (r.verdict.trivial ? "RKK-trivial" : "not RKK-trivial");
    if (!r.verdict.certificate.empty()) {
        human << " (";
        for (std::size_t i = 0; i < r.verdict.certificate.size(); ++i)
            human << (i ? "; " : "") << r.verdict.certificate[i];
        human << ")";
    }
    human << '\n';
    out.human = human.str();

    out.machine["command"] = "ncp";
    out.machine["complex"] = spec.base.name;
    out.machine["convention"] = to_string(opt.convention);
    out.machine["windings"] = vector_json(spec.windings);
    out.machine["k"] = integer_json(r.k_gcd);
    out.machine["chern_pairings"] = vector_json(r.pairings);
    Json d2 = Json::array();
    for (std::size_t i = 0; i < r.d2.images.size(); ++i) {
        Json c;
        c["generator"] = "U_" + std::to_string(i + 1);
        c["unit_coefficient"] = integer_json(r.d2.coinvariant[i][0]);
        c["bott_coefficient"] = integer_json(r.d2.coinvariant[i][1]);
        c["e2_coordinates"] = vector_json(r.d2.images[i]);
        d2.push_back(std::move(c));
    }
    out.machine["d2"] = std::move(d2);
    out.machine["pages"] = Json::array({page_json(r.e2, true), page_json(r.e3, false)});
    out.machine["assembled"] = Json::array({assembled_json(r.k0), assembled_json(r.k1)});
    out.machine["rkk_trivial"] = r.verdict.trivial;
    out.machine["certificate"] = r.verdict.certificate;
    return out;
}

Output cmd_check(const Json& doc, const JobOptions& opt) {
    const Base base = parse_base(doc);
    std::vector<std::pair<std::string, LocalSystem>> systems;
    const bool graded = doc.contains("bundle");
    if (graded) {
        GradedKBundle b = parse_graded(doc, base);
        systems.emplace_back("bundle.even", b.even);
        systems.emplace_back("bundle.odd", b.odd);
    } else {
        systems.emplace_back("system", parse_system(require(doc, "system", "document"), base, "system"));
    }

    struct Check {
        std::string name;
        bool ok = false;
        std::string detail;
    };
    std::vector<Check> checks;
    for (const auto& [name, system] : systems) {
        const auto violations = flatness_check(system);
        checks.push_back({name + ": flatness", violations.empty(),
                          violations.empty() ? "" : std::to_string(violations.size()) + " violations"});
        if (!violations.empty()) continue;
        std::vector<Check> per(2);
        const Convention conventions[2] = {Convention::classical, Convention::e1};
        std::vector<std::vector<FgAbGroup>> groups(2);
        parallel_for(2, opt.jobs, [&](std::size_t i) {
            const CochainComplex c = CochainComplex::build(system, conventions[i]);
            per[i].name = name + ": d d = 0 (" + to_string(conventions[i]) + ")";
            per[i].ok = true;
            for (int p = 0; p + 1 <= c.top_degree(); ++p)
                if (!(c.differential(p + 1) * c.differential(p)).is_zero()) per[i].ok = false;
            if (per[i].ok) groups[i] = parallel_cohomology(c, 1);
        });
        checks.insert(checks.end(), per.begin(), per.end());
        if (per[0].ok && per[1].ok) {
            std::string detail;
            for (const auto& g : groups[1]) detail += (detail.empty() ? "" : ", ") + to_string(g);
            checks.push_back({name + ": conventions agree", groups[0] == groups[1], "H^* = (" + detail + ")"});
        }
    }
    if (graded && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; })) {
        Check c{"E2 equals local-coefficient cohomology", true, ""};
        try {
            e2_page(e1_page(make_input(GradedKBundle{systems[0].second, systems[1].second}, opt.convention)));
        } catch (const std::logic_error& e) {
            c.ok = false;
            c.detail = e.what();
        }
        checks.push_back(c);
    }

    Output out;
    std::vector<std::vector<std::string>> rows;
    out.machine["command"] = "check";
    out.machine["complex"] = base.name;
    out.machine["checks"] = Json::array();
    for (const auto& c : checks) {
        rows.push_back({c.ok ? "ok" : "FAIL", c.name, c.detail});
        Json j;
        j["name"] = c.name;
        j["ok"] = c.ok;
        if (!c.detail.empty()) j["detail"] = c.detail;
        out.machine["checks"].push_back(std::move(j));
        if (!c.ok) out.exit_code = kInvariantFailure;
    }
    out.human = "invariant checks over " + base.name + "\n" + render_table({"result", "check", "detail"}, rows);
    return out;
}

}  // namespace

JobResult run_job(const std::string& document, const JobOptions& options) {
    JobResult result;
    Json doc;
    try {
        doc = Json::parse(document);
    } catch (const Json::parse_error& e) {
        result.exit_code = kInputError;
        result.diagnostic = "parse error at byte " + std::to_string(e.byte) + ": " + e.what();
        return result;
    }
    if (!doc.is_object()) {
        result.exit_code = kInputError;
        result.diagnostic = "input error: the document must be a JSON object";
        return result;
    }
    if (doc.contains("command") && doc.at("command") != options.command) {
        result.exit_code = kInputError;
        result.diagnostic = "input error: document is for command '" + doc.at("command").dump() + "'";
        return result;
    }

    static const std::map<std::string, std::function<Output(const Json&, const JobOptions&)>> commands{
        {"cohomology", cmd_cohomology}, {"group-cohomology", cmd_group_cohomology},
        {"spectral", cmd_spectral},     {"ncp", cmd_ncp},
        {"check", cmd_check}};
    const auto it = commands.find(options.command);
    if (it == commands.end()) {
        result.exit_code = kInputError;
        result.diagnostic = "input error: unknown command '" + options.command + "'";
        return result;
    }

    try {
        Output out = it->second(doc, options);
        result.exit_code = out.exit_code;
        result.report = options.emit == Emit::machine ? out.machine.dump(2) + "\n" : out.human;
    } catch (const InputError& e) {
        result.exit_code = kInputError;
        result.diagnostic = std::string("input error: ") + e.what();
    } catch (const Json::exception& e) {
        result.exit_code = kInputError;
        result.diagnostic = std::string("input error: ") + e.what();
    } catch (const std::exception& e) {
        result.exit_code = kInvariantFailure;
        result.diagnostic = options.command + " failed: " + e.what();
    }
    return result;
}

}  // namespace lsseq
