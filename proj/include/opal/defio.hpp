#pragma once

#include <fstream>
#include <set>

#include <json.hpp>

#include "opal/classical.hpp"
#include "opal/deform.hpp"

namespace opal {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchemaId = "omega-pseudoalg/v1";

// ---------------------------------------------------------------------------
// strict parsing helpers: unknown keys are rejected, rationals are exact

namespace defio_detail {

inline void expect_keys(const json& j, const std::string& where,
                        const std::set<std::string>& allowed,
                        const std::set<std::string>& required) {
    if (!j.is_object()) throw input_error(where + ": object expected");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw input_error(where + ": unknown key \"" + it.key() + "\"");
    for (const auto& k : required)
        if (!j.contains(k)) throw input_error(where + ": missing key \"" + k + "\"");
}

inline Rational parse_rat(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw input_error(where + ": rational expected (integer or \"p/q\" string)");
}

inline Vec parse_vec(const json& j, const std::string& where, long expect = -1) {
    if (!j.is_array()) throw input_error(where + ": array expected");
    Vec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(parse_rat(e, where));
    if (expect >= 0 && static_cast<long>(v.size()) != expect)
        throw input_error(where + ": expected length " + std::to_string(expect) + ", got " +
                          std::to_string(v.size()));
    return v;
}

inline Matrix parse_matrix(const json& j, const std::string& where, long rows = -1,
                           long cols = -1) {
    if (!j.is_array() || j.empty()) throw input_error(where + ": nonempty matrix expected");
    Matrix m(static_cast<long>(j.size()), static_cast<long>(j[0].size()));
    for (long r = 0; r < m.rows; ++r) {
        Vec row = parse_vec(j[r], where, m.cols);
        m.set_row(r, row);
    }
    if ((rows >= 0 && m.rows != rows) || (cols >= 0 && m.cols != cols))
        throw input_error(where + ": matrix shape mismatch");
    return m;
}

inline std::vector<std::vector<int>> parse_table(const json& j, const std::string& where) {
    if (!j.is_array()) throw input_error(where + ": table expected");
    std::vector<std::vector<int>> t;
    for (const auto& row : j) {
        if (!row.is_array()) throw input_error(where + ": table row expected");
        std::vector<int> r;
        for (const auto& e : row) {
            if (!e.is_number_integer()) throw input_error(where + ": integer index expected");
            r.push_back(e.get<int>());
        }
        t.push_back(std::move(r));
    }
    return t;
}

inline json rat_json(const Rational& r) {
    return json(r.to_string());
}

inline json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

inline json matrix_json(const Matrix& m) {
    json a = json::array();
    for (long r = 0; r < m.rows; ++r) a.push_back(vec_json(m.row(r)));
    return a;
}

}  // namespace defio_detail

// Everything a definition file can declare, built into live objects. Entities
// that fail their construction-time verification are recorded in
// build_failures with dependents skipped, so that `verify` can report them
// instead of aborting.
struct BuiltDocument {
    std::map<std::string, std::shared_ptr<const HopfAlgebra>> hopf;
    std::map<std::string, std::shared_ptr<const FiniteSemigroup>> semigroups;
    std::map<std::string, std::shared_ptr<const SubStructure>> substructures;
    std::map<std::string, std::shared_ptr<const HModule>> modules;
    std::map<std::string, OrdinaryAlgebra> classical;
    std::map<std::string, std::shared_ptr<const PseudoStructure>> structures;
    std::map<std::string, std::shared_ptr<const BimoduleStructure>> bimodules;
    std::map<std::string, std::shared_ptr<const OperatorFamily>> op_families;
    std::map<std::string, std::shared_ptr<const MorphismFamily>> morphisms;
    std::map<std::string, DeformationJet> jets;

    // entity -> failure message from construction-time verification
    std::vector<std::pair<std::string, std::string>> build_failures;

    bool failed(const std::string& qualified) const {
        for (const auto& [n, _] : build_failures)
            if (n == qualified) return true;
        return false;
    }
};

inline BuiltDocument parse_document(const json& doc) {
    using namespace defio_detail;
    expect_keys(doc, "document",
                {"schema", "hopf_algebras", "semigroups", "substructures", "modules",
                 "classical_algebras", "structures", "bimodules", "operator_families",
                 "morphisms", "jets"},
                {"schema"});
    if (doc["schema"] != kSchemaId)
        throw input_error("unsupported schema id: " + doc["schema"].dump());

    BuiltDocument out;
    auto section = [&](const char* name) -> json {
        return doc.contains(name) ? doc[name] : json::object();
    };
    auto fail = [&](const std::string& qualified, const std::string& msg) {
        out.build_failures.emplace_back(qualified, msg);
    };

    // hopf algebras
    const json sec_hopf_algebras = section("hopf_algebras");
    for (auto it = sec_hopf_algebras.begin(); it != sec_hopf_algebras.end(); ++it) {
        const std::string where = "hopf_algebras." + it.key();
        const json& h = it.value();
        try {
            if (h.contains("group_table")) {
                expect_keys(h, where, {"group_table"}, {"group_table"});
                out.hopf[it.key()] = make_group_algebra(parse_table(h["group_table"], where));
            } else {
                expect_keys(h, where, {"dim", "mult", "unit", "comult", "counit", "antipode"},
                            {"dim", "mult", "unit", "comult", "counit", "antipode"});
                auto ha = std::make_shared<HopfAlgebra>();
                ha->dim = h["dim"].get<long>();
                long d = ha->dim;
                if (!h["mult"].is_array() || static_cast<long>(h["mult"].size()) != d)
                    throw input_error(where + ".mult: d rows expected");
                ha->mult.resize(d);
                for (long i = 0; i < d; ++i) {
                    if (static_cast<long>(h["mult"][i].size()) != d)
                        throw input_error(where + ".mult: d columns expected");
                    for (long j = 0; j < d; ++j)
                        ha->mult[i].push_back(parse_vec(h["mult"][i][j], where + ".mult", d));
                }
                ha->unit = parse_vec(h["unit"], where + ".unit", d);
                for (long i = 0; i < d; ++i)
                    ha->comult.push_back(parse_vec(h["comult"][i], where + ".comult", d * d));
                ha->counit = parse_vec(h["counit"], where + ".counit", d);
                ha->antipode = parse_matrix(h["antipode"], where + ".antipode", d, d);
                out.hopf[it.key()] = ha;
            }
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // semigroups
    const json sec_semigroups = section("semigroups");
    for (auto it = sec_semigroups.begin(); it != sec_semigroups.end(); ++it) {
        const std::string where = "semigroups." + it.key();
        const json& s = it.value();
        expect_keys(s, where, {"table", "unit", "commutative"}, {"table"});
        std::optional<long> unit;
        if (s.contains("unit")) unit = s["unit"].get<long>();
        bool comm = s.contains("commutative") && s["commutative"].get<bool>();
        try {
            out.semigroups[it.key()] = make_semigroup(parse_table(s["table"], where), unit,
                                                      comm);
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    auto need = [&](auto& map, const std::string& name, const std::string& where,
                    const char* section_name) -> decltype(map.at(name)) {
        auto found = map.find(name);
        if (found == map.end()) {
            // distinguish a dangling reference from a failed dependency
            std::string qualified = std::string(section_name) + "." + name;
            if (out.failed(qualified))
                throw check_error("dependency failed: " + qualified);
            throw input_error(where + ": dangling reference \"" + name + "\"");
        }
        return found->second;
    };

    // substructures
    const json sec_substructures = section("substructures");
    for (auto it = sec_substructures.begin(); it != sec_substructures.end(); ++it) {
        const std::string where = "substructures." + it.key();
        const json& s = it.value();
        expect_keys(s, where, {"parent", "kind", "basis"}, {"parent", "kind", "basis"});
        try {
            auto parent = need(out.hopf, s["parent"].get<std::string>(), where,
                               "hopf_algebras");
            SubStructure::Kind kind;
            std::string ks = s["kind"].get<std::string>();
            if (ks == "subbialgebra") kind = SubStructure::Kind::subbialgebra;
            else if (ks == "subcoalgebra") kind = SubStructure::Kind::subcoalgebra;
            else throw input_error(where + ": kind must be subbialgebra or subcoalgebra");
            // basis vectors arrive as rows; store as inclusion columns
            Matrix rows = parse_matrix(s["basis"], where + ".basis", -1, parent->dim);
            out.substructures[it.key()] = make_substructure(parent, rows.transpose(), kind);
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // modules
    const json sec_modules = section("modules");
    for (auto it = sec_modules.begin(); it != sec_modules.end(); ++it) {
        const std::string where = "modules." + it.key();
        const json& m = it.value();
        expect_keys(m, where, {"hopf", "kind", "dim", "action"}, {"hopf", "kind"});
        try {
            auto h = need(out.hopf, m["hopf"].get<std::string>(), where, "hopf_algebras");
            std::string kind = m["kind"].get<std::string>();
            if (kind == "trivial") {
                out.modules[it.key()] = make_trivial_module(h, m["dim"].get<long>());
            } else if (kind == "regular") {
                out.modules[it.key()] = make_regular_module(h);
            } else if (kind == "tensors") {
                std::vector<Matrix> act;
                for (const auto& a : m["action"])
                    act.push_back(parse_matrix(a, where + ".action"));
                out.modules[it.key()] = make_hmodule(h, std::move(act));
            } else {
                throw input_error(where + ": kind must be trivial, regular, or tensors");
            }
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // classical algebras
    const json sec_classical_algebras = section("classical_algebras");
    for (auto it = sec_classical_algebras.begin(); it != sec_classical_algebras.end(); ++it) {
        const std::string where = "classical_algebras." + it.key();
        const json& c = it.value();
        expect_keys(c, where,
                    {"omega", "variety", "mult", "products", "rb_family", "bimodule",
                     "operator_family"},
                    {"omega", "variety"});
        try {
            OrdinaryAlgebra a;
            a.omega = need(out.semigroups, c["omega"].get<std::string>(), where, "semigroups");
            a.variety = c["variety"].get<std::string>();
            long w = a.omega->size;
            if (c.contains("mult") == c.contains("products"))
                throw input_error(where + ": exactly one of mult/products required");
            if (c.contains("mult")) {
                const json& mt = c["mult"];
                a.dim = static_cast<long>(mt.size());
                a.products.assign(static_cast<size_t>(w) * w * a.dim * a.dim, Vec(a.dim));
                for (long i = 0; i < a.dim; ++i)
                    for (long j = 0; j < a.dim; ++j) {
                        Vec v = parse_vec(mt[i][j], where + ".mult", a.dim);
                        for (long al = 0; al < w; ++al)
                            for (long be = 0; be < w; ++be)
                                a.products[((al * w + be) * a.dim + i) * a.dim + j] = v;
                    }
            } else {
                const json& pt = c["products"];
                if (static_cast<long>(pt.size()) != w)
                    throw input_error(where + ".products: omega-indexed rows expected");
                a.dim = static_cast<long>(pt[0][0].size());
                a.products.assign(static_cast<size_t>(w) * w * a.dim * a.dim, Vec(a.dim));
                for (long al = 0; al < w; ++al)
                    for (long be = 0; be < w; ++be)
                        for (long i = 0; i < a.dim; ++i)
                            for (long j = 0; j < a.dim; ++j)
                                a.products[((al * w + be) * a.dim + i) * a.dim + j] =
                                    parse_vec(pt[al][be][i][j], where + ".products", a.dim);
            }
            if (c.contains("rb_family")) {
                const json& rb = c["rb_family"];
                expect_keys(rb, where + ".rb_family", {"weight", "maps"}, {"weight", "maps"});
                OrdinaryAlgebra::RBFamily fam;
                fam.weight = parse_rat(rb["weight"], where + ".rb_family.weight");
                for (const auto& mp : rb["maps"])
                    fam.maps.push_back(parse_matrix(mp, where + ".rb_family.maps", a.dim,
                                                    a.dim));
                if (static_cast<long>(fam.maps.size()) != w)
                    throw input_error(where + ".rb_family: one map per omega element");
                a.rb = std::move(fam);
            }
            if (c.contains("bimodule")) {
                const json& bm = c["bimodule"];
                expect_keys(bm, where + ".bimodule", {"dim", "left", "right"},
                            {"dim", "left", "right"});
                OrdinaryAlgebra::ClassicalBimodule cb;
                cb.dim = bm["dim"].get<long>();
                for (long i = 0; i < a.dim; ++i)
                    for (long u = 0; u < cb.dim; ++u)
                        cb.left.push_back(
                            parse_vec(bm["left"][i][u], where + ".bimodule.left", cb.dim));
                for (long u = 0; u < cb.dim; ++u)
                    for (long i = 0; i < a.dim; ++i)
                        cb.right.push_back(
                            parse_vec(bm["right"][u][i], where + ".bimodule.right", cb.dim));
                a.bimodule = std::move(cb);
            }
            if (c.contains("operator_family")) {
                const json& of = c["operator_family"];
                expect_keys(of, where + ".operator_family", {"maps"}, {"maps"});
                OrdinaryAlgebra::ClassicalOpFamily cf;
                for (const auto& mp : of["maps"])
                    cf.maps.push_back(parse_matrix(mp, where + ".operator_family.maps", a.dim,
                                                   a.bimodule ? a.bimodule->dim : a.dim));
                if (static_cast<long>(cf.maps.size()) != w)
                    throw input_error(where + ".operator_family: one map per omega element");
                a.op_family = std::move(cf);
            }
            out.classical.emplace(it.key(), std::move(a));
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // structure op tables: values are ambient vectors over H^2 (x) carrier
    auto parse_op_tables = [&](const json& ops, const std::shared_ptr<const HModule>& carrier,
                               long w, bool family, const std::string& where) {
        std::map<std::string, std::vector<Vec>> tables;
        auto sp2 = carrier->space(2);
        long a = carrier->dim;
        for (auto op = ops.begin(); op != ops.end(); ++op) {
            if (op.key() != "star" && op.key() != "prec" && op.key() != "succ" &&
                op.key() != "bracket")
                throw input_error(where + ": unknown op \"" + op.key() + "\"");
            std::vector<Vec> tab;
            const json& t = op.value();
            if (family) {
                if (static_cast<long>(t.size()) != w)
                    throw input_error(where + "." + op.key() + ": omega-indexed rows expected");
                for (long al = 0; al < w; ++al)
                    for (long i = 0; i < a; ++i)
                        for (long j = 0; j < a; ++j)
                            tab.push_back(sp2->reduce(parse_vec(
                                t[al][i][j], where + "." + op.key(), sp2->ambient_dim)));
            } else {
                if (static_cast<long>(t.size()) != w)
                    throw input_error(where + "." + op.key() + ": omega-indexed rows expected");
                for (long al = 0; al < w; ++al)
                    for (long be = 0; be < w; ++be)
                        for (long i = 0; i < a; ++i)
                            for (long j = 0; j < a; ++j)
                                tab.push_back(sp2->reduce(parse_vec(
                                    t[al][be][i][j], where + "." + op.key(),
                                    sp2->ambient_dim)));
            }
            tables[op.key()] = std::move(tab);
        }
        return tables;
    };

    // structures
    const json sec_structures = section("structures");
    for (auto it = sec_structures.begin(); it != sec_structures.end(); ++it) {
        const std::string where = "structures." + it.key();
        const json& s = it.value();
        expect_keys(s, where, {"carrier", "omega", "variety", "family_indexed", "ops"},
                    {"carrier", "omega", "variety", "ops"});
        try {
            auto carrier = need(out.modules, s["carrier"].get<std::string>(), where,
                                "modules");
            auto omega = need(out.semigroups, s["omega"].get<std::string>(), where,
                              "semigroups");
            bool family = s.contains("family_indexed") && s["family_indexed"].get<bool>();
            VarietySpec claimed = parse_variety(s["variety"].get<std::string>());
            auto tables = parse_op_tables(s["ops"], carrier, omega->size, family, where);
            out.structures[it.key()] =
                make_structure(carrier, omega, claimed, tables, family);
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // bimodules
    const json sec_bimodules = section("bimodules");
    for (auto it = sec_bimodules.begin(); it != sec_bimodules.end(); ++it) {
        const std::string where = "bimodules." + it.key();
        const json& b = it.value();
        expect_keys(b, where, {"algebra", "carrier", "left", "right"},
                    {"algebra", "carrier", "left", "right"});
        try {
            auto alg = need(out.structures, b["algebra"].get<std::string>(), where,
                            "structures");
            auto carrier = need(out.modules, b["carrier"].get<std::string>(), where,
                                "modules");
            long w = alg->w(), a = alg->dim(), m = carrier->dim;
            auto spM = carrier->space(2);
            std::vector<Vec> left, right;
            for (long al = 0; al < w; ++al)
                for (long be = 0; be < w; ++be)
                    for (long i = 0; i < a; ++i)
                        for (long u = 0; u < m; ++u)
                            left.push_back(spM->reduce(parse_vec(b["left"][al][be][i][u],
                                                                 where + ".left",
                                                                 spM->ambient_dim)));
            for (long al = 0; al < w; ++al)
                for (long be = 0; be < w; ++be)
                    for (long u = 0; u < m; ++u)
                        for (long i = 0; i < a; ++i)
                            right.push_back(spM->reduce(parse_vec(b["right"][al][be][u][i],
                                                                  where + ".right",
                                                                  spM->ambient_dim)));
            out.bimodules[it.key()] = make_bimodule(alg, carrier, left, right);
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // operator families
    const json sec_operator_families = section("operator_families");
    for (auto it = sec_operator_families.begin(); it != sec_operator_families.end(); ++it) {
        const std::string where = "operator_families." + it.key();
        const json& f = it.value();
        expect_keys(f, where, {"bimodule", "omega", "maps"}, {"bimodule", "omega", "maps"});
        try {
            auto bim = need(out.bimodules, f["bimodule"].get<std::string>(), where,
                            "bimodules");
            auto omega = need(out.semigroups, f["omega"].get<std::string>(), where,
                              "semigroups");
            std::vector<Matrix> maps;
            for (const auto& mp : f["maps"])
                maps.push_back(parse_matrix(mp, where + ".maps", bim->algebra->dim(),
                                            bim->carrier->dim));
            out.op_families[it.key()] = make_operator_family(bim, omega, std::move(maps));
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // morphisms
    const json sec_morphisms = section("morphisms");
    for (auto it = sec_morphisms.begin(); it != sec_morphisms.end(); ++it) {
        const std::string where = "morphisms." + it.key();
        const json& f = it.value();
        expect_keys(f, where, {"source", "target", "maps"}, {"source", "target", "maps"});
        try {
            auto src = need(out.structures, f["source"].get<std::string>(), where,
                            "structures");
            auto tgt = need(out.structures, f["target"].get<std::string>(), where,
                            "structures");
            std::vector<Matrix> maps;
            for (const auto& mp : f["maps"])
                maps.push_back(parse_matrix(mp, where + ".maps", tgt->dim(), src->dim()));
            out.morphisms[it.key()] = make_morphism(src, tgt, std::move(maps));
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    // jets
    const json sec_jets = section("jets");
    for (auto it = sec_jets.begin(); it != sec_jets.end(); ++it) {
        const std::string where = "jets." + it.key();
        const json& j = it.value();
        expect_keys(j, where, {"base", "terms"}, {"base", "terms"});
        try {
            auto base = need(out.structures, j["base"].get<std::string>(), where,
                             "structures");
            long w = base->w(), a = base->dim();
            auto sp2 = base->carrier->space(2);
            std::vector<std::vector<Vec>> terms;
            for (const auto& term : j["terms"]) {
                std::vector<Vec> tab;
                for (long al = 0; al < w; ++al)
                    for (long be = 0; be < w; ++be)
                        for (long i = 0; i < a; ++i)
                            for (long jj = 0; jj < a; ++jj)
                                tab.push_back(sp2->reduce(parse_vec(term[al][be][i][jj],
                                                                    where + ".terms",
                                                                    sp2->ambient_dim)));
                terms.push_back(std::move(tab));
            }
            out.jets.emplace(it.key(), make_jet(base, std::move(terms)));
        } catch (const check_error& e) {
            fail(where, e.what());
        }
    }

    return out;
}

inline BuiltDocument parse_document_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error(std::string("json parse error: ") + e.what());
    }
    return parse_document(doc);
}

// ---------------------------------------------------------------------------
// serialization (construct --out): everything written in raw-tensor form

inline json serialize_hopf(const HopfAlgebra& h) {
    using namespace defio_detail;
    json o;
    o["dim"] = h.dim;
    json mult = json::array();
    for (long i = 0; i < h.dim; ++i) {
        json row = json::array();
        for (long j = 0; j < h.dim; ++j) row.push_back(vec_json(h.mult[i][j]));
        mult.push_back(row);
    }
    o["mult"] = mult;
    o["unit"] = vec_json(h.unit);
    json com = json::array();
    for (long i = 0; i < h.dim; ++i) com.push_back(vec_json(h.comult[i]));
    o["comult"] = com;
    o["counit"] = vec_json(h.counit);
    o["antipode"] = matrix_json(h.antipode);
    return o;
}

inline json serialize_semigroup(const FiniteSemigroup& s) {
    json o;
    o["table"] = s.table;
    if (s.unit) o["unit"] = *s.unit;
    o["commutative"] = s.commutative;
    return o;
}

inline json serialize_module(const HModule& m) {
    using namespace defio_detail;
    json o;
    o["hopf"] = nullptr;  // patched by the caller with the right name
    o["kind"] = "tensors";
    json act = json::array();
    for (const auto& a : m.action) act.push_back(matrix_json(a));
    o["action"] = act;
    return o;
}

inline json serialize_op_tables(const PseudoStructure& s) {
    using namespace defio_detail;
    json ops;
    long w = s.w(), a = s.dim();
    for (const auto& [name, f] : s.ops) {
        const QuotientTensorSpace& sp = *f.target;
        json t = json::array();
        for (long al = 0; al < w; ++al) {
            json row_al = json::array();
            for (long be = 0; be < w; ++be) {
                json row_be = json::array();
                for (long i = 0; i < a; ++i) {
                    json row_i = json::array();
                    for (long j = 0; j < a; ++j)
                        row_i.push_back(vec_json(sp.lift(f.at(al, be, i, j))));
                    row_be.push_back(row_i);
                }
                row_al.push_back(row_be);
            }
            t.push_back(row_al);
        }
        ops[name] = t;
    }
    return ops;
}

}  // namespace opal
