#pragma once

#include <sstream>

#include "opal/defio.hpp"

namespace opal {

// Report rendering and the CLI subcommand bodies. Everything here is
// deterministic: fixed section order, name-sorted entities, no timestamps,
// so identical inputs produce byte-identical reports.

struct EntityReport {
    std::string section, name;
    CheckReport checks;
    std::string build_failure;  // nonempty when construction-time checks failed
};

struct VerifyResult {
    std::vector<EntityReport> entities;

    bool ok() const {
        for (const auto& e : entities)
            if (!e.build_failure.empty() || !e.checks.ok()) return false;
        return true;
    }
    int exit_code() const { return ok() ? 0 : 1; }
};

inline CheckLine synthetic_pass(const std::string& check, const std::string& anchor) {
    return CheckLine{check, anchor, 1, 0, {}};
}

inline VerifyResult verify_document(const BuiltDocument& b,
                                    const std::string& only_structure = "") {
    VerifyResult out;
    auto add = [&](const std::string& section, const std::string& name, CheckReport rep) {
        out.entities.push_back({section, name, std::move(rep), ""});
    };

    if (only_structure.empty()) {
        for (const auto& [name, h] : b.hopf) add("hopf_algebras", name, h->verify());
        for (const auto& [name, s] : b.semigroups) {
            CheckReport rep;
            rep.subject = name;
            rep.lines.push_back(synthetic_pass("semigroup-axioms",
                                               "Def 3.1 indexing semigroup"));
            (void)s;
            add("semigroups", name, std::move(rep));
        }
        for (const auto& [name, s] : b.substructures) {
            CheckReport rep;
            rep.subject = name;
            rep.lines.push_back(synthetic_pass(
                "closure", s->kind == SubStructure::Kind::subbialgebra
                               ? "Prop 3.5 subbialgebra"
                               : "Example 3.18 subcoalgebra"));
            add("substructures", name, std::move(rep));
        }
        for (const auto& [name, m] : b.modules) add("modules", name, m->verify());
        for (const auto& [name, c] : b.classical) add("classical_algebras", name,
                                                      check_ordinary(c));
    }

    for (const auto& [name, s] : b.structures) {
        if (!only_structure.empty() && name != only_structure) continue;
        CheckReport rep;
        rep.subject = name;
        for (const auto& [opname, f] : s->ops) rep.append(check_linearity(f, opname));
        rep.append(check_variety(*s));
        add("structures", name, std::move(rep));
    }

    if (only_structure.empty()) {
        for (const auto& [name, bm] : b.bimodules) add("bimodules", name, check_bimodule(*bm));
        for (const auto& [name, f] : b.op_families)
            add("operator_families", name, check_operator_family(*f));
        for (const auto& [name, f] : b.morphisms) add("morphisms", name, check_morphism(*f));
        for (const auto& [name, j] : b.jets) add("jets", name, check_jet(j));
    }

    for (const auto& [qualified, msg] : b.build_failures) {
        auto dot = qualified.find('.');
        EntityReport er;
        er.section = qualified.substr(0, dot);
        er.name = qualified.substr(dot + 1);
        er.build_failure = msg;
        out.entities.push_back(std::move(er));
    }
    return out;
}

inline std::string render_text(const VerifyResult& v) {
    std::ostringstream os;
    for (const auto& e : v.entities) {
        os << e.section << "." << e.name << "\n";
        if (!e.build_failure.empty()) {
            os << "  FAIL (construction): " << e.build_failure << "\n";
            continue;
        }
        for (const auto& line : e.checks.lines) {
            os << "  " << line.check << " [" << line.anchor << "]: ";
            if (line.ok()) {
                os << "PASS (" << line.instances << " identities";
                if (line.index_tuples > 0) os << " x " << line.index_tuples << " index tuples";
                os << ")\n";
            } else {
                os << "FAIL (" << line.failures.size() << " of " << line.instances;
                if (line.index_tuples > 0) os << " x " << line.index_tuples;
                os << "; first witness: " << line.failures[0].to_string() << ")\n";
            }
        }
    }
    os << (v.ok() ? "RESULT: PASS\n" : "RESULT: FAIL\n");
    return os.str();
}

inline json render_json(const VerifyResult& v) {
    json out;
    out["schema"] = kSchemaId;
    json entities = json::array();
    for (const auto& e : v.entities) {
        json je;
        je["section"] = e.section;
        je["name"] = e.name;
        if (!e.build_failure.empty()) {
            je["status"] = "fail";
            je["construction_failure"] = e.build_failure;
        } else {
            je["status"] = e.checks.ok() ? "pass" : "fail";
            json checks = json::array();
            for (const auto& line : e.checks.lines) {
                json jl;
                jl["check"] = line.check;
                jl["anchor"] = line.anchor;
                jl["status"] = line.ok() ? "pass" : "fail";
                jl["instances"] = line.instances;
                jl["index_tuples"] = line.index_tuples;
                json fails = json::array();
                for (const auto& f : line.failures) {
                    json jf;
                    jf["indices"] = f.indices;
                    jf["basis"] = f.basis;
                    if (!f.detail.empty()) jf["detail"] = f.detail;
                    fails.push_back(jf);
                }
                jl["failures"] = fails;
                checks.push_back(jl);
            }
            je["checks"] = checks;
        }
        entities.push_back(je);
    }
    out["entities"] = entities;
    out["status"] = v.ok() ? "pass" : "fail";
    return out;
}

// ---------------------------------------------------------------------------
// construct subcommand

struct ConstructArgs {
    std::string kind;       // pack|current|rb-lift|dend-sum|dend-prelie|commutator|zinbiel|oop|poisson
    std::string structure;  // input structure name
    std::string classical;  // classical algebra name (current, rb-lift)
    std::string hopf;       // hopf name (current, rb-lift)
    std::string sub;        // substructure name (current, rb-lift)
    std::string formula = "prop35";    // current: prop35|eq310|ex25
    std::string source = "associative";  // commutator source
    std::string direction = "to-dendriform";
    std::string family;     // operator family name (oop)
    std::string output = "omega-assoc";  // oop output
};

// Registers a constructed structure (with its carrier module and semigroup)
// into the output document under the given name prefix.
inline void emit_structure(json& doc, const std::string& name,
                           const PseudoStructure& s, const std::string& hopf_name) {
    json mod = serialize_module(*s.carrier);
    mod["hopf"] = hopf_name;
    doc["modules"][name + ".carrier"] = mod;
    doc["semigroups"][name + ".omega"] = serialize_semigroup(*s.omega);
    json st;
    st["carrier"] = name + ".carrier";
    st["omega"] = name + ".omega";
    st["variety"] = variety_name(s.claimed);
    st["ops"] = serialize_op_tables(s);
    doc["structures"][name] = st;
}

inline std::string hopf_name_of(const BuiltDocument& b,
                                const std::shared_ptr<const HopfAlgebra>& h) {
    for (const auto& [name, hh] : b.hopf)
        if (hh.get() == h.get()) return name;
    throw input_error("internal: hopf algebra not found in document");
}

inline json run_construct(const json& doc_json, const BuiltDocument& b,
                          const ConstructArgs& args) {
    json out = doc_json;
    auto structure = [&](const std::string& name) {
        auto it = b.structures.find(name);
        if (it == b.structures.end())
            throw input_error("construct: unknown structure \"" + name + "\"");
        return it->second;
    };

    if (args.kind == "pack") {
        auto s = structure(args.structure);
        auto packed = semigroup_pack(*s);
        emit_structure(out, args.structure + ".packed", *packed,
                       hopf_name_of(b, s->carrier->hopf));
        return out;
    }
    if (args.kind == "current" || args.kind == "rb-lift") {
        auto cit = b.classical.find(args.classical);
        if (cit == b.classical.end())
            throw input_error("construct: unknown classical algebra \"" + args.classical +
                              "\"");
        auto hit = b.hopf.find(args.hopf);
        if (hit == b.hopf.end())
            throw input_error("construct: unknown hopf algebra \"" + args.hopf + "\"");
        if (args.kind == "rb-lift" || args.formula != "ex25") {
            auto sit = b.substructures.find(args.sub);
            if (sit == b.substructures.end())
                throw input_error("construct: unknown substructure \"" + args.sub + "\"");
            std::shared_ptr<const PseudoStructure> built;
            std::string suffix;
            if (args.kind == "rb-lift") {
                built = rota_baxter_lift(hit->second, sit->second, cit->second);
                suffix = ".rb_lift";
            } else {
                built = current(hit->second, sit->second, cit->second,
                                args.formula == "prop35" ? CurrentFormula::prop35
                                                         : CurrentFormula::eq310);
                suffix = args.formula == "prop35" ? ".current" : ".current310";
            }
            emit_structure(out, args.classical + suffix, *built, args.hopf);
            return out;
        }
        // ex25: structure + bimodule + lifted operator family
        Ex25Lift lift = example25_lift(hit->second, cit->second);
        std::string base = args.classical + ".lifted";
        emit_structure(out, base, *lift.algebra, args.hopf);
        json mod = serialize_module(*lift.bimodule->carrier);
        mod["hopf"] = args.hopf;
        out["modules"][base + ".module"] = mod;
        json bm;
        bm["algebra"] = base;
        bm["carrier"] = base + ".module";
        long w = lift.algebra->w(), a = lift.algebra->dim(), m = lift.bimodule->carrier->dim;
        const QuotientTensorSpace& spM = *lift.bimodule->left.target;
        json left = json::array(), right = json::array();
        for (long al = 0; al < w; ++al) {
            json lal = json::array(), ral = json::array();
            for (long be = 0; be < w; ++be) {
                json lbe = json::array(), rbe = json::array();
                for (long i = 0; i < a; ++i) {
                    json li = json::array();
                    for (long u = 0; u < m; ++u)
                        li.push_back(defio_detail::vec_json(
                            spM.lift(lift.bimodule->left.at(al, be, i, u))));
                    lbe.push_back(li);
                }
                for (long u = 0; u < m; ++u) {
                    json ru = json::array();
                    for (long i = 0; i < a; ++i)
                        ru.push_back(defio_detail::vec_json(
                            spM.lift(lift.bimodule->right.at(al, be, u, i))));
                    rbe.push_back(ru);
                }
                lal.push_back(lbe);
                ral.push_back(rbe);
            }
            left.push_back(lal);
            right.push_back(ral);
        }
        bm["left"] = left;
        bm["right"] = right;
        out["bimodules"][base + ".bimodule"] = bm;
        json fam;
        fam["bimodule"] = base + ".bimodule";
        fam["omega"] = doc_json["classical_algebras"][args.classical]["omega"];
        json maps = json::array();
        for (const auto& mp : lift.family->maps)
            maps.push_back(defio_detail::matrix_json(mp));
        fam["maps"] = maps;
        out["operator_families"][base + ".family"] = fam;
        return out;
    }
    if (args.kind == "dend-sum") {
        auto s = structure(args.structure);
        auto sum = dendriform_sum(*s);
        emit_structure(out, args.structure + ".sum", *sum,
                       hopf_name_of(b, s->carrier->hopf));
        return out;
    }
    if (args.kind == "dend-prelie") {
        auto s = structure(args.structure);
        auto pl = dendriform_to_prelie(*s);
        emit_structure(out, args.structure + ".prelie", *pl,
                       hopf_name_of(b, s->carrier->hopf));
        return out;
    }
    if (args.kind == "commutator") {
        auto s = structure(args.structure);
        CommutatorSource src;
        if (args.source == "associative") src = CommutatorSource::associative;
        else if (args.source == "prelie") src = CommutatorSource::prelie;
        else if (args.source == "prelie-family") src = CommutatorSource::prelie_family;
        else throw input_error("construct: unknown commutator source " + args.source);
        auto lie = commutator_lie(*s, src);
        emit_structure(out, args.structure + ".lie", *lie,
                       hopf_name_of(b, s->carrier->hopf));
        return out;
    }
    if (args.kind == "zinbiel") {
        auto s = structure(args.structure);
        ZinbielDirection dir;
        std::string suffix;
        if (args.direction == "to-dendriform") {
            dir = ZinbielDirection::to_dendriform;
            suffix = ".dendriform";
        } else if (args.direction == "from-dendriform") {
            dir = ZinbielDirection::from_dendriform;
            suffix = ".zinbiel";
        } else if (args.direction == "symmetrize") {
            dir = ZinbielDirection::symmetrize;
            suffix = ".symmetrized";
        } else {
            throw input_error("construct: unknown zinbiel direction " + args.direction);
        }
        auto z = zinbiel_bridge(*s, dir);
        emit_structure(out, args.structure + suffix, *z, hopf_name_of(b, s->carrier->hopf));
        return out;
    }
    if (args.kind == "oop") {
        auto fit = b.op_families.find(args.family);
        if (fit == b.op_families.end())
            throw input_error("construct: unknown operator family \"" + args.family + "\"");
        const auto& fam = fit->second;
        std::string hname = hopf_name_of(b, fam->bimodule->carrier->hopf);
        if (args.output == "omega-assoc") {
            auto ind = oop_induced_structure(*fam);
            emit_structure(out, args.family + ".induced", *ind, hname);
            return out;
        }
        if (args.output == "dendriform") {
            auto dend = oop_induced_dendriform(*fam);
            emit_structure(out, args.family + ".dendriform", *dend, hname);
            return out;
        }
        if (args.output == "bimodule-back") {
            auto ind = oop_induced_structure(*fam);
            auto back = oop_induced_bimodule(*fam, ind);
            emit_structure(out, args.family + ".induced", *ind, hname);
            json mod = serialize_module(*back->carrier);
            mod["hopf"] = hname;
            out["modules"][args.family + ".back_carrier"] = mod;
            json bm;
            bm["algebra"] = args.family + ".induced";
            bm["carrier"] = args.family + ".back_carrier";
            long w = ind->w(), mdim = ind->dim(), adim = back->carrier->dim;
            const QuotientTensorSpace& spA = *back->left.target;
            json left = json::array(), right = json::array();
            for (long al = 0; al < w; ++al) {
                json lal = json::array(), ral = json::array();
                for (long be = 0; be < w; ++be) {
                    json lbe = json::array(), rbe = json::array();
                    for (long u = 0; u < mdim; ++u) {
                        json lu = json::array();
                        for (long x = 0; x < adim; ++x)
                            lu.push_back(defio_detail::vec_json(
                                spA.lift(back->left.at(al, be, u, x))));
                        lbe.push_back(lu);
                    }
                    for (long x = 0; x < adim; ++x) {
                        json rx = json::array();
                        for (long u = 0; u < mdim; ++u)
                            rx.push_back(defio_detail::vec_json(
                                spA.lift(back->right.at(al, be, x, u))));
                        rbe.push_back(rx);
                    }
                    lal.push_back(lbe);
                    ral.push_back(rbe);
                }
                left.push_back(lal);
                right.push_back(ral);
            }
            bm["left"] = left;
            bm["right"] = right;
            out["bimodules"][args.family + ".back"] = bm;
            return out;
        }
        throw input_error("construct: unknown oop output " + args.output);
    }
    if (args.kind == "poisson") {
        auto s = structure(args.structure);
        auto p = commutative_to_poisson(*s);
        emit_structure(out, args.structure + ".poisson", *p,
                       hopf_name_of(b, s->carrier->hopf));
        return out;
    }
    throw input_error("construct: unknown kind \"" + args.kind + "\"");
}

// ---------------------------------------------------------------------------
// cohomology / deform subcommands

inline std::string run_cohomology(const BuiltDocument& b, const std::string& structure,
                                  long degree, const std::string& coefficients,
                                  long max_degree) {
    if (degree < 0 || degree > max_degree)
        throw input_error("cohomology: degree out of range (cap " +
                          std::to_string(max_degree) + ", raise with --max-degree)");
    auto sit = b.structures.find(structure);
    if (sit == b.structures.end())
        throw input_error("cohomology: unknown structure \"" + structure + "\"");
    std::shared_ptr<const BimoduleStructure> coeffs;
    if (coefficients.empty()) {
        coeffs = adjoint_bimodule(sit->second);
    } else {
        auto bit = b.bimodules.find(coefficients);
        if (bit == b.bimodules.end())
            throw input_error("cohomology: unknown bimodule \"" + coefficients + "\"");
        coeffs = bit->second;
    }
    CochainComplex cx(sit->second, coeffs);
    RankTriple r = cx.ranks(degree);
    std::ostringstream os;
    os << "structure " << structure << ", degree " << degree << "\n";
    os << "dim Z^" << degree << " = " << r.cocycles << "\n";
    os << "dim B^" << degree << " = " << r.coboundaries << "\n";
    os << "dim H^" << degree << " = " << r.cohomology << "\n";
    return os.str();
}

struct DeformResult {
    std::string text;
    bool ok = true;
};

inline DeformResult run_deform(const BuiltDocument& b, const std::string& jet_name,
                               std::optional<long> order, bool extend, bool poisson) {
    auto jit = b.jets.find(jet_name);
    if (jit == b.jets.end()) throw input_error("deform: unknown jet \"" + jet_name + "\"");
    DeformationJet jet = jit->second;
    if (order) {
        if (*order > jet.order())
            throw input_error("deform: jet only has " + std::to_string(jet.order()) +
                              " terms");
        jet.terms.resize(*order);
    }

    DeformResult out;
    std::ostringstream os;

    if (extend) {
        CochainComplex cx = adjoint_complex(jet.base);
        auto r = obstruction(jet, cx);
        if (auto* ext = std::get_if<OpFamily>(&r)) {
            os << "extension found: T^(" << jet.order() + 1 << ")\n";
            jet.terms.push_back(*ext);
            CheckReport rep = check_jet(jet);
            os << "extended jet deformation equations: " << (rep.ok() ? "PASS" : "FAIL")
               << "\n";
            out.ok = rep.ok();
        } else {
            auto& cert = std::get<ObstructionCertificate>(r);
            os << "obstruction: no extension exists\n";
            os << "obstruction 3-cochain is " << (cert.is_cocycle ? "a cocycle" : "NOT a cocycle")
               << "; dim H^3 = " << cert.h3.cohomology << "\n";
            out.ok = false;
        }
        out.text = os.str();
        return out;
    }

    if (poisson) {
        PoissonExtraction p = poisson_extract(jet);
        os << "poisson extraction: bracket table (canonical representatives)\n";
        const OpFamily& br = p.poisson->op("bracket");
        const QuotientTensorSpace& sp = *br.target;
        long w = p.poisson->w(), a = p.poisson->dim();
        for (long al = 0; al < w; ++al)
            for (long be = 0; be < w; ++be)
                for (long i = 0; i < a; ++i)
                    for (long j = 0; j < a; ++j) {
                        Vec amb = sp.lift(br.at(al, be, i, j));
                        os << "  {" << i << " *_(" << al << "," << be << ") " << j << "} = [";
                        for (size_t t = 0; t < amb.size(); ++t)
                            os << (t ? "," : "") << amb[t].to_string();
                        os << "]\n";
                    }
        VerifyResult vr;
        vr.entities.push_back({"poisson", jet_name + ".poisson", check_variety(*p.poisson),
                               ""});
        vr.entities.push_back({"poisson", jet_name + ".lemmas", p.lemmas, ""});
        os << render_text(vr);
        out.ok = vr.ok();
        out.text = os.str();
        return out;
    }

    CheckReport rep = check_jet(jet);
    VerifyResult vr;
    vr.entities.push_back({"jets", jet_name, rep, ""});
    os << render_text(vr);
    out.ok = rep.ok();
    out.text = os.str();
    return out;
}

}  // namespace opal
