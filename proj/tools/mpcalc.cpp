#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "mpx/json_io.hpp"
#include "mpx/spectral.hpp"

using namespace mpx;

namespace {

struct RunConfig {
    int max_degree = 3;
    long cap = kDefaultEnumerationCap;
    std::string format = "text";
    unsigned seed = 42;
    int cutoff = 4;
};

const Json& field_or_throw(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error("SchemaError", std::string("missing field \"") + key + "\"");
    return j.at(key);
}

int exit_code_for(const Error& e) {
    const std::string& c = e.code();
    if (c == "CapExceeded" || c == "DegreeTooLarge") return 2;
    for (const char* io : {"ParseError", "IoError", "SchemaError",
                           "UnknownMorphism", "UnknownObject", "UnknownVertex",
                           "UnknownEdge"})
        if (c == io) return 3;
    return 1;
}

void emit(const RunConfig& cfg, const Json& j, const std::string& text) {
    if (cfg.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

/* ---------------- validate ---------------- */

int cmd_validate(const RunConfig& cfg, const std::string& path) {
    Json j = load_json_file(path);
    std::string kind;
    if (j.is_object() && j.contains("C") && j.contains("D")) {
        matched_pair_from_json(j);
        kind = "matched_pair";
    } else if (j.is_object() && j.contains("objects")) {
        category_from_json(j);
        kind = "category";
    } else if (j.is_object() && j.contains("vertices")) {
        weighted_graph_from_json(j);
        kind = "weighted_graph";
    } else {
        throw Error("SchemaError",
                    "unrecognised document: expected a category, matched pair "
                    "or weighted graph");
    }
    emit(cfg, Json{{"command", "validate"}, {"kind", kind}, {"status", "ok"}},
         "OK (" + kind + ")\n");
    return 0;
}

/* ---------------- homology ---------------- */

int cmd_homology(const RunConfig& cfg, const std::string& path,
                 const std::string& which) {
    Json j = load_json_file(path);
    ChainComplex cx;
    if (j.is_object() && j.contains("C") && j.contains("D")) {
        MatchedPair mp = matched_pair_from_json(j);
        if (which == "categorical")
            cx = categorical_complex(zappa_szep(mp).cat, cfg.max_degree, cfg.cap);
        else if (which == "diagonal")
            cx = diagonal_complex(mp, cfg.max_degree, cfg.cap);
        else
            cx = total_complex(matched_double_complex(mp, cfg.max_degree, cfg.cap),
                               cfg.max_degree);
    } else if (j.is_object() && j.contains("objects")) {
        if (which != "categorical")
            throw Error("SchemaError",
                        "the " + which + " theory needs a matched-pair input");
        cx = categorical_complex(category_from_json(j), cfg.max_degree, cfg.cap);
    } else {
        throw Error("SchemaError", "expected a category or matched pair");
    }
    Json groups = Json::array();
    std::ostringstream text;
    for (int k = 0; k <= cfg.max_degree; ++k) {
        AbelianGroup h = homology(cx, k).group();
        groups.push_back(homology_report_json(k, h));
        text << "H_" << k << " = " << h.to_string() << "\n";
    }
    emit(cfg,
         Json{{"command", "homology"},
              {"which", which},
              {"max_degree", cfg.max_degree},
              {"groups", groups}},
         text.str());
    return 0;
}

/* ---------------- compare ---------------- */

Json dump_map_json(const ChainMap& f, const std::string& name) {
    Json degrees = Json::array();
    for (size_t k = 0; k < f.blocks.size(); ++k)
        degrees.push_back(Json{{"degree", k},
                               {"source_basis", f.source.bases[k]},
                               {"target_basis", f.target.bases[k]},
                               {"matrix", matrix_to_json(f.blocks[k])}});
    return Json{{"map", name}, {"degrees", degrees}};
}

void dump_map_text(std::ostream& os, const ChainMap& f, const std::string& name) {
    for (size_t k = 0; k < f.blocks.size(); ++k) {
        os << name << " degree " << k << " (rows: target basis, cols: source basis)\n";
        os << "  source:";
        for (const auto& b : f.source.bases[k]) os << " " << b;
        os << "\n  target:";
        for (const auto& b : f.target.bases[k]) os << " " << b;
        os << "\n" << f.blocks[k].to_string();
    }
}

int cmd_compare(const RunConfig& cfg, const std::string& path, bool dump_maps) {
    MatchedPair mp = matched_pair_from_json(load_json_file(path));
    int K = cfg.max_degree;
    ZappaSzep zs = zappa_szep(mp);
    ChainComplex cx_bow = categorical_complex(zs.cat, K, cfg.cap);
    ChainComplex cx_diag = diagonal_complex(mp, K, cfg.cap);
    ChainComplex cx_tot =
        total_complex(matched_double_complex(mp, K, cfg.cap), K);
    ChainMap pi = pi_map(mp, K, cfg.cap);        /* diag -> bowtie */
    ChainMap psi = psi_map(mp, K, cfg.cap);      /* bowtie -> tot */
    ChainMap nabla = eilenberg_zilber(mp, K, cfg.cap); /* tot -> diag */

    Json rows = Json::array();
    std::ostringstream text;
    text << "k  H_bowtie  H_diag  H_tot  Pi  Psi  Nabla\n";
    bool all_iso = true;
    for (int k = 0; k <= K; ++k) {
        HomologyData hb = homology(cx_bow, k);
        HomologyData hd = homology(cx_diag, k);
        HomologyData ht = homology(cx_tot, k);
        bool iso_pi = is_isomorphism(induced_map(pi.blocks[k], hd, hb),
                                     hd.group(), hb.group());
        bool iso_psi = is_isomorphism(induced_map(psi.blocks[k], hb, ht),
                                      hb.group(), ht.group());
        bool iso_nabla = is_isomorphism(induced_map(nabla.blocks[k], ht, hd),
                                        ht.group(), hd.group());
        all_iso = all_iso && iso_pi && iso_psi && iso_nabla;
        auto verdict = [](bool b) { return b ? "iso" : "NOT-iso"; };
        rows.push_back(Json{{"degree", k},
                            {"H_bowtie", group_to_json(hb.group())},
                            {"H_diagonal", group_to_json(hd.group())},
                            {"H_total", group_to_json(ht.group())},
                            {"Pi", verdict(iso_pi)},
                            {"Psi", verdict(iso_psi)},
                            {"Nabla", verdict(iso_nabla)}});
        text << k << "  " << hb.group().to_string() << "  "
             << hd.group().to_string() << "  " << ht.group().to_string() << "  "
             << verdict(iso_pi) << "  " << verdict(iso_psi) << "  "
             << verdict(iso_nabla) << "\n";
    }
    Json out{{"command", "compare"}, {"max_degree", K}, {"degrees", rows}};
    if (dump_maps) {
        out["maps"] = Json::array(
            {dump_map_json(pi, "Pi"), dump_map_json(psi, "Psi"),
             dump_map_json(nabla, "Nabla")});
        dump_map_text(text, pi, "Pi");
        dump_map_text(text, psi, "Psi");
        dump_map_text(text, nabla, "Nabla");
    }
    emit(cfg, out, text.str());
    return all_iso ? 0 : 1;
}

/* ---------------- spectral ---------------- */

int cmd_spectral(const RunConfig& cfg, const std::string& path,
                 const std::string& orientation, int page_no) {
    MatchedPair mp = matched_pair_from_json(load_json_file(path));
    DoubleComplex dc = matched_double_complex(mp, cfg.max_degree, cfg.cap);
    Orientation o =
        orientation == "hv" ? Orientation::hv : Orientation::vh;
    SpectralPage page = page_no == 1 ? page1(dc, o, cfg.max_degree)
                                     : page2(dc, o, cfg.max_degree);
    Json cells = Json::array();
    for (const auto& [pos, g] : page.groups)
        cells.push_back(Json{{"p", pos.first},
                             {"q", pos.second},
                             {"group", group_to_json(g)}});
    emit(cfg,
         Json{{"command", "spectral"},
              {"orientation", orientation},
              {"page", page.page},
              {"max_total_degree", page.max_total_degree},
              {"cells", cells}},
         page.table());
    return 0;
}

/* ---------------- odometer ---------------- */

const char* tristate_name(TriState t) {
    switch (t) {
        case TriState::yes: return "yes";
        case TriState::no: return "no";
        default: return "unknown";
    }
}

int cmd_odometer(const RunConfig& cfg, const std::string& path) {
    WeightedGraph g = weighted_graph_from_json(load_json_file(path));
    OdometerReport rep = odometer_homology(g, cfg.cutoff, cfg.cap);
    Json out{{"command", "odometer"},
             {"cutoff", cfg.cutoff},
             {"H0", group_to_json(rep.H0)},
             {"H2", group_to_json(rep.H2)},
             {"H1_graph", group_to_json(rep.H1_graph)},
             {"coker_M", group_to_json(rep.coker_M)},
             {"split", tristate_name(rep.split)},
             {"gcd_criterion", rep.gcd_criterion},
             {"gcd_established_at", rep.gcd_established_at}};
    if (rep.H1) out["H1"] = group_to_json(*rep.H1);
    emit(cfg, out, rep.to_string());
    return 0;
}

/* ---------------- cocycle ---------------- */

int cmd_cocycle(const RunConfig& cfg, const std::string& path,
                const std::string& action, const std::string& mode_name) {
    Json j = load_json_file(path);
    TotalValidationMode mode = mode_name == "dual"
                                   ? TotalValidationMode::dual_of_total_boundary
                                   : TotalValidationMode::definition;
    if (action == "validate") {
        FiniteCategory C = category_from_json(field_or_throw(j, "category"));
        Cochain2 c = cochain2_from_json(C, C, field_or_throw(j, "c"));
        CocycleReport r = validate_categorical_2cocycle(C, c);
        emit(cfg,
             Json{{"command", "cocycle"},
                  {"action", action},
                  {"ok", r.ok},
                  {"code", r.code},
                  {"witness", r.witness}},
             r.ok ? "valid categorical 2-cocycle\n"
                  : "INVALID [" + r.code + "] " + r.witness + "\n");
        return r.ok ? 0 : 1;
    }
    if (action == "validate-total" || action == "transfer") {
        MatchedPair mp =
            matched_pair_from_json(field_or_throw(j, "matched_pair"));
        TotalCocycle phi =
            total_cocycle_from_json(mp, field_or_throw(j, "phi"));
        CocycleReport r = validate_total_2cocycle(mp, phi, mode);
        if (action == "validate-total") {
            emit(cfg,
                 Json{{"command", "cocycle"},
                      {"action", action},
                      {"mode", mode_name},
                      {"ok", r.ok},
                      {"code", r.code},
                      {"witness", r.witness}},
                 r.ok ? "valid total 2-cocycle (" + mode_name + " mode)\n"
                      : "INVALID [" + r.code + "] " + r.witness + "\n");
            return r.ok ? 0 : 1;
        }
        ZappaSzep zs = zappa_szep(mp);
        Cochain2 image = psi2(mp, phi);
        CocycleReport rc = validate_categorical_2cocycle(zs.cat, image);
        std::ostringstream text;
        text << "Psi^2(phi) on " << zs.cat.num_morphisms()
             << " morphisms; input " << (r.ok ? "valid" : "INVALID")
             << " (" << mode_name << " mode), output "
             << (rc.ok ? "a categorical 2-cocycle" : "NOT a cocycle") << "\n";
        for (const auto& [key, val] : image)
            text << "  (" << zs.cat.morphism_names()[key.first] << ", "
                 << zs.cat.morphism_names()[key.second]
                 << ") -> " << val.to_string() << "\n";
        emit(cfg,
             Json{{"command", "cocycle"},
                  {"action", action},
                  {"mode", mode_name},
                  {"input_valid", r.ok},
                  {"output_valid", rc.ok},
                  {"psi2", cochain2_to_json(zs.cat, zs.cat, image)}},
             text.str());
        return 0;
    }
    if (action == "cohomologous") {
        FiniteCategory C = category_from_json(field_or_throw(j, "category"));
        Cochain2 c1 = j.contains("c1")
                          ? cochain2_from_json(C, C, j.at("c1"))
                          : Cochain2{};
        Cochain2 c2 = j.contains("c2")
                          ? cochain2_from_json(C, C, j.at("c2"))
                          : Cochain2{};
        auto b = is_cohomologous(C, c1, c2);
        if (b) {
            emit(cfg,
                 Json{{"command", "cocycle"},
                      {"action", action},
                      {"cohomologous", true},
                      {"witness_b", cochain1_to_json(C, *b)}},
                 "cohomologous; witness b with d1(b) = c2 - c1:\n" +
                     Json(cochain1_to_json(C, *b)).dump() + "\n");
            return 0;
        }
        emit(cfg,
             Json{{"command", "cocycle"},
                  {"action", action},
                  {"cohomologous", false}},
             "not cohomologous (the linear system over Q/Z is infeasible)\n");
        return 1;
    }
    throw Error("SchemaError", "unknown cocycle action " + action);
}

/* ---------------- selftest ---------------- */

FiniteCategory st_z2() {
    return monoid_category({"e", "a"}, {{0, 1}, {1, 0}}, 0);
}
FiniteCategory st_z3() {
    return monoid_category({"0", "1", "2"}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}, 0);
}
MatchedPair st_s3() {
    return make_matched_pair(
        st_z2(), st_z3(), [](int c, int d) { return c == 0 ? d : (3 - d) % 3; },
        [](int c, int) { return c; });
}

/* The induced map equals the identity modulo the torsion relations. */
bool induced_identity(const IntMatrix& f, const HomologyData& h) {
    IntMatrix m = induced_map(f, h, h);
    const AbelianGroup& g = h.group();
    int nt = static_cast<int>(g.torsion.size());
    int n = nt + static_cast<int>(g.free_rank);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            mpz_class diff = m.get(i, j) - (i == j ? 1 : 0);
            if (i < nt) {
                if (diff % g.torsion[i] != 0) return false;
            } else if (diff != 0) {
                return false;
            }
        }
    return true;
}

int cmd_selftest(const RunConfig& cfg) {
    std::mt19937 gen(cfg.seed);
    int passed = 0, total = 0;
    auto run = [&](const std::string& name, auto&& body) {
        ++total;
        std::string detail;
        bool ok = false;
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = e.what();
        }
        std::cout << (ok ? "PASS " : "FAIL ") << name
                  << (ok || detail.empty() ? "" : ": " + detail) << "\n";
        if (ok) ++passed;
    };

    run("matched-pair axioms (trivial, S3, product, model n<=2)",
        [&](std::string&) {
            trivial_pair(st_z2());
            st_s3();
            make_matched_pair(
                st_z2(), st_z3(), [](int, int d) { return d; },
                [](int c, int) { return c; });
            model_pair(1);
            model_pair(2);
            return true;
        });

    run("complex laws to total degree 3 (S3)", [&](std::string&) {
        MatchedPair mp = st_s3();
        DoubleComplex dc = matched_double_complex(mp, 3, cfg.cap);
        total_complex(dc, 3);
        diagonal_complex(mp, 3, cfg.cap);
        categorical_complex(zappa_szep(mp).cat, 3, cfg.cap);
        return true;
    });

    run("chain equivalences act as identity on H (S3, K=2)",
        [&](std::string& detail) {
            MatchedPair mp = st_s3();
            int K = 2;
            ChainComplex cx_diag = diagonal_complex(mp, K, cfg.cap);
            ChainMap pi = pi_map(mp, K, cfg.cap);
            ChainMap psi = psi_map(mp, K, cfg.cap);
            ChainMap nabla = eilenberg_zilber(mp, K, cfg.cap);
            ChainMap aw = alexander_whitney(mp, K, cfg.cap);
            for (int k = 0; k <= K; ++k) {
                HomologyData hd = homology(cx_diag, k);
                IntMatrix round_ez = nabla.blocks[k] * aw.blocks[k];
                IntMatrix round_psi =
                    nabla.blocks[k] * psi.blocks[k] * pi.blocks[k];
                if (!induced_identity(round_ez, hd) ||
                    !induced_identity(round_psi, hd)) {
                    detail = "degree " + std::to_string(k);
                    return false;
                }
            }
            return true;
        });

    run("odometer closed forms vs graph data (seeded, L=3)",
        [&](std::string& detail) {
            std::uniform_int_distribution<int> vdist(0, 1), wdist(1, 3);
            for (int trial = 0; trial < 3; ++trial) {
                WeightedGraph g;
                g.vertices = {"u", "v"};
                for (int e = 0; e < 3; ++e)
                    g.edges.push_back({"e" + std::to_string(e),
                                       g.vertices[vdist(gen)],
                                       g.vertices[vdist(gen)],
                                       static_cast<long>(wdist(gen))});
                validate_weighted_graph(g);
                OdometerReport rep = odometer_homology(g, 3, cfg.cap);
                auto [h0, h1] = graph_homology(g);
                long euler = static_cast<long>(g.vertices.size()) -
                             static_cast<long>(g.edges.size());
                if (h0.free_rank - h1.free_rank != euler) {
                    detail = "Euler characteristic mismatch, trial " +
                             std::to_string(trial);
                    return false;
                }
                if (rep.gcd_criterion && !rep.coker_M.is_trivial()) {
                    detail = "gcd criterion with nontrivial coker M, trial " +
                             std::to_string(trial);
                    return false;
                }
                DecompositionReport dec = verify_decomposition(g, 3, cfg.cap);
                if (!dec.ok) {
                    detail = dec.witness;
                    return false;
                }
            }
            return true;
        });

    run("cocycle round trips (seeded, Gamma_2 and S3 product)",
        [&](std::string& detail) {
            FiniteCategory gamma = model_pair(2).gamma;
            std::uniform_int_distribution<long> pdist(0, 6);
            Cochain1 b;
            for (int f = 0; f < gamma.num_morphisms(); ++f) {
                long num = pdist(gen);
                if (!gamma.is_identity(f) && num != 0)
                    b.emplace(f, Phase(num, 7));
            }
            Cochain2 c = coboundary(gamma, b);
            if (!validate_categorical_2cocycle(gamma, c).ok) {
                detail = "coboundary fails validation";
                return false;
            }
            auto b2 = is_cohomologous(gamma, {}, c);
            if (!b2 || coboundary(gamma, *b2) != c) {
                detail = "round trip failed on Gamma_2";
                return false;
            }
            MatchedPair mp = st_s3();
            Cochain1 bC{{1, Phase(pdist(gen) + 1, 8)}};
            Cochain1 bD{{1, Phase(pdist(gen) + 1, 9)}, {2, Phase(1, 9)}};
            TotalCocycle phi = total_coboundary(
                mp, bC, bD, TotalValidationMode::dual_of_total_boundary);
            ZappaSzep zs = zappa_szep(mp);
            Cochain2 image = psi2(mp, phi);
            if (!validate_categorical_2cocycle(zs.cat, image).ok) {
                detail = "psi2 image is not a cocycle";
                return false;
            }
            if (!is_cohomologous(zs.cat, {}, image)) {
                detail = "psi2 of a coboundary is not a coboundary";
                return false;
            }
            return true;
        });

    std::cout << "selftest: " << passed << "/" << total
              << " properties passed (seed " << cfg.seed << ")\n";
    return passed == total ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("MPX_CAP")) cfg.cap = std::atol(env);

    CLI::App app{"matched-pair homology calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--max-degree,-K", cfg.max_degree, "materialised degree")
        ->capture_default_str();
    app.add_option("--cap", cfg.cap, "enumeration cap");
    app.add_option("--format", cfg.format, "text | json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "selftest seed");
    app.add_option("--cutoff,-L", cfg.cutoff, "odometer path-length cutoff")
        ->capture_default_str();

    std::string path, which = "categorical", orientation = "hv";
    std::string action, mode = "definition";
    int page_no = 2;
    bool dump_maps = false;

    CLI::App* validate = app.add_subcommand("validate", "validate an input file");
    validate->add_option("file", path)->required();
    CLI::App* homology_cmd =
        app.add_subcommand("homology", "homology of a category or matched pair");
    homology_cmd->add_option("file", path)->required();
    homology_cmd->add_option("--which", which, "categorical | diagonal | total")
        ->check(CLI::IsMember({"categorical", "diagonal", "total"}));
    CLI::App* compare =
        app.add_subcommand("compare", "three theories with isomorphism verdicts");
    compare->add_option("file", path)->required();
    compare->add_flag("--dump-map", dump_maps, "emit the chain-map matrices");
    CLI::App* spectral =
        app.add_subcommand("spectral", "spectral sequence pages of the double complex");
    spectral->add_option("file", path)->required();
    spectral->add_option("--orientation", orientation, "hv | vh")
        ->check(CLI::IsMember({"hv", "vh"}));
    spectral->add_option("--page", page_no, "1 | 2")->check(CLI::Range(1, 2));
    CLI::App* odometer =
        app.add_subcommand("odometer", "closed-form homology of a graph of odometers");
    odometer->add_option("file", path)->required();
    CLI::App* cocycle = app.add_subcommand("cocycle", "cocycle computations");
    cocycle->add_option("file", path)->required();
    cocycle
        ->add_option("--action", action,
                     "validate | validate-total | transfer | cohomologous")
        ->required()
        ->check(CLI::IsMember(
            {"validate", "validate-total", "transfer", "cohomologous"}));
    cocycle->add_option("--mode", mode, "definition | dual")
        ->check(CLI::IsMember({"definition", "dual"}));
    CLI::App* selftest =
        app.add_subcommand("selftest", "deterministic property suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) return cmd_validate(cfg, path);
        if (homology_cmd->parsed()) return cmd_homology(cfg, path, which);
        if (compare->parsed()) return cmd_compare(cfg, path, dump_maps);
        if (spectral->parsed())
            return cmd_spectral(cfg, path, orientation, page_no);
        if (odometer->parsed()) return cmd_odometer(cfg, path);
        if (cocycle->parsed()) return cmd_cocycle(cfg, path, action, mode);
        if (selftest->parsed()) return cmd_selftest(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
