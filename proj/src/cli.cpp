#include "mgrz/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "mgrz/decision.hpp"
#include "mgrz/dot.hpp"
#include "mgrz/errors.hpp"
#include "mgrz/json_io.hpp"

namespace mgrz {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitInput = 2;
constexpr int kExitInvariant = 3;

struct Ctx {
    bool human = false;
    int jobs = 1;
    std::ostringstream out;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// R is stored exactly as given; closure is explicit and opt-in (MGL frames
// need an irreflexive R).
MKFrame load_frame(const std::string& path, bool rt_closure) {
    MKFrame fr = frame_from_json(load_json_file(path));
    if (rt_closure) fr.R = fr.R.reflexive_transitive_closure();
    return fr;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << content;
}

Json formula_ast(const Formula& f) {
    switch (f.op()) {
        case Op::Letter: return Json{{"op", "letter"}, {"name", f.name()}};
        case Op::Top: return Json{{"op", "top"}};
        case Op::Bot: return Json{{"op", "bot"}};
        case Op::Not: return Json{{"op", "not"}, {"arg", formula_ast(f.lhs())}};
        case Op::Dia: return Json{{"op", "dia"}, {"arg", formula_ast(f.lhs())}};
        case Op::Box: return Json{{"op", "box"}, {"arg", formula_ast(f.lhs())}};
        case Op::Ex: return Json{{"op", "exists"}, {"arg", formula_ast(f.lhs())}};
        case Op::Fa: return Json{{"op", "forall"}, {"arg", formula_ast(f.lhs())}};
        case Op::And:
            return Json{{"op", "and"}, {"lhs", formula_ast(f.lhs())}, {"rhs", formula_ast(f.rhs())}};
        case Op::Or:
            return Json{{"op", "or"}, {"lhs", formula_ast(f.lhs())}, {"rhs", formula_ast(f.rhs())}};
        case Op::Impl:
            return Json{{"op", "impl"}, {"lhs", formula_ast(f.lhs())}, {"rhs", formula_ast(f.rhs())}};
    }
    return Json{};
}

Json counter_valuation_json(const Valuation& v, int world) {
    return Json{{"valuation", valuation_to_json(v)}, {"world", world}};
}

int cmd_parse(Ctx& c, const std::string& text) {
    Formula f = parse_formula(text);
    if (c.human) {
        c.out << render_formula(f) << "\n";
    } else {
        Json j{{"format", 1}, {"command", "parse"}, {"rendered", render_formula(f)},
               {"ast", formula_ast(f)}};
        c.out << dump(j);
    }
    return kExitOk;
}

int cmd_translate(Ctx& c, const std::string& text) {
    Formula f = parse_formula(text);
    std::string t = render_predicate(translate_t(f));
    if (c.human) {
        c.out << t << "\n";
    } else {
        Json j{{"format", 1}, {"command", "translate"}, {"input", render_formula(f)},
               {"translation", t}};
        c.out << dump(j);
    }
    return kExitOk;
}

int cmd_check(Ctx& c, const std::string& frame_path, const std::string& val_path,
              const std::string& text, int world, bool rt_closure) {
    MKFrame fr = load_frame(frame_path, rt_closure);
    Valuation v = valuation_from_json(load_json_file(val_path), fr.n);
    Formula f = parse_formula(text);
    if (world >= fr.n) throw InputError("check: world index out of range");
    Model m(fr, v);
    WorldSet ext = eval(m, f);
    bool holds = world >= 0 ? ext.test(world) : ext == WorldSet::full(fr.n);
    if (c.human) {
        c.out << "extension: ";
        for (int w : ext.members()) c.out << w << " ";
        c.out << "\n" << (holds ? "holds" : "refuted") << "\n";
    } else {
        Json j{{"format", 1}, {"command", "check"}, {"extension", ext.members()},
               {"holds", holds}};
        if (world >= 0) j["world"] = world;
        if (!holds) j["refuted_at"] = world >= 0 ? world : (~ext).first();
        c.out << dump(j);
    }
    return holds ? kExitOk : kExitRefuted;
}

int cmd_valid(Ctx& c, const std::string& frame_path, const std::string& text, int budget_bits,
              bool rt_closure) {
    MKFrame fr = load_frame(frame_path, rt_closure);
    Formula f = parse_formula(text);
    ValidityResult r = frame_validity(fr, f, budget_bits);
    if (c.human) {
        if (r.valid) {
            c.out << "valid\n";
        } else {
            c.out << "refuted at world " << r.counter->world << " under "
                  << valuation_to_json(r.counter->v).dump() << "\n";
        }
    } else {
        Json j{{"format", 1}, {"command", "valid"}, {"valid", r.valid}};
        if (!r.valid) j["countermodel"] = counter_valuation_json(r.counter->v, r.counter->world);
        c.out << dump(j);
    }
    return r.valid ? kExitOk : kExitRefuted;
}

int cmd_classify(Ctx& c, const std::string& frame_path, bool rt_closure) {
    MKFrame fr = load_frame(frame_path, rt_closure);
    FrameClassReport rep = classify(fr);
    if (c.human) {
        auto line = [&](const char* name, const ClassEntry& e) {
            c.out << name << ": " << (e.holds ? "true" : "false");
            if (!e.holds && !e.witnesses.empty()) {
                c.out << "  (" << e.witnesses[0].condition << " fails at";
                for (int w : e.witnesses[0].worlds) c.out << " " << w;
                c.out << ")";
            }
            c.out << "\n";
        };
        line("MK        ", rep.mk);
        line("MS4       ", rep.ms4);
        line("MGrz      ", rep.mgrz);
        line("Grz_u     ", rep.grz_u);
        line("Barcan    ", rep.barcan);
        line("M+Grz     ", rep.m_plus_grz);
        line("MGL       ", rep.mgl);
    } else {
        Json j{{"format", 1}, {"command", "classify"}, {"classes", class_report_to_json(rep)}};
        c.out << dump(j);
    }
    return kExitOk;
}

int cmd_decide(Ctx& c, const std::string& cls_name, int max_worlds, bool dedup,
               const std::string& emit_path, const std::string& text) {
    auto cls = frame_class_from_name(cls_name);
    if (!cls) throw InputError("decide: unknown class " + cls_name);
    Formula f = parse_formula(text);
    SearchConfig cfg;
    cfg.cls = *cls;
    cfg.max_worlds = max_worlds;
    cfg.dedup = dedup;
    cfg.jobs = c.jobs;
    Verdict v = decide(f, cfg);
    Json j{{"format", 1}, {"command", "decide"}, {"class", frame_class_name(*cls)},
           {"formula", render_formula(f)}};
    if (v.countermodel) {
        const Countermodel& cm = *v.countermodel;
        Json cj{{"format", 1},
                {"size", cm.size},
                {"frame", frame_to_json(cm.frame)},
                {"valuation", valuation_to_json(cm.v)},
                {"world", cm.world}};
        j["verdict"] = "countermodel";
        j["countermodel"] = cj;
        if (!emit_path.empty()) write_file(emit_path, dump(cj));
        if (c.human)
            c.out << "countermodel of size " << cm.size << " at world " << cm.world << "\n";
        else
            c.out << dump(j);
        return kExitRefuted;
    }
    j["verdict"] = "no countermodel up to " + std::to_string(v.searched_up_to) + " worlds";
    j["searched_up_to"] = v.searched_up_to;
    if (c.human)
        c.out << "no countermodel up to " << v.searched_up_to << " worlds\n";
    else
        c.out << dump(j);
    return kExitOk;
}

int cmd_filter(Ctx& c, const std::string& frame_path, const std::string& val_path,
               const std::string& text, const std::string& dot_path, bool rt_closure) {
    MKFrame fr = load_frame(frame_path, rt_closure);
    Valuation v = valuation_from_json(load_json_file(val_path), fr.n);
    Formula f = parse_formula(text);
    FiltrationResult r = selective_filtration(Model(fr, v), f);
    if (!dot_path.empty()) {
        MKFrame named = r.frame;
        for (int i = 0; i < named.n; ++i)
            named.names.push_back("#" + std::to_string(i) + ":" + fr.world_name(r.origin[i]));
        write_file(dot_path, frame_to_dot(named, {}));
    }
    if (c.human) {
        c.out << "countermodel with " << r.frame.n << " points, " << r.stats.cluster_count
              << " clusters; refutes " << render_formula(f) << " at point 0\n";
        for (const auto& line : r.provenance_log) c.out << "  " << line << "\n";
    } else {
        Json j = filtration_result_to_json(r);
        j["command"] = "filter";
        j["formula"] = render_formula(f);
        c.out << dump(j);
    }
    return kExitRefuted;  // the output is a countermodel
}

int cmd_bundle_to(Ctx& c, const std::string& frame_path, bool rt_closure) {
    MKFrame fr = load_frame(frame_path, rt_closure);
    KripkeBundle b = bundle_of_frame(fr);
    c.out << dump(bundle_to_json(b));
    return kExitOk;
}

int cmd_bundle_from(Ctx& c, const std::string& bundle_path) {
    KripkeBundle b = bundle_from_json(load_json_file(bundle_path));
    c.out << dump(frame_to_json(frame_of_bundle(b)));
    return kExitOk;
}

int cmd_bundle_level(Ctx& c, const std::string& bundle_path, int level, long long cap) {
    KripkeBundle b = bundle_from_json(load_json_file(bundle_path));
    LevelFrame lf = nth_level(b, level);
    KripkeFrame kf = lf.materialize(cap);
    Json j{{"format", 1}, {"command", "bundle level"}, {"level", level}, {"worlds", kf.n}};
    Json edges = Json::array();
    for (auto [i, jdx] : kf.R.pairs()) edges.push_back(Json::array({i, jdx}));
    j["R"] = edges;
    if (level >= 1) {
        Json tuples = Json::array();
        for (long long i = 0; i < lf.world_count(); ++i) tuples.push_back(lf.tuple(i));
        j["tuples"] = tuples;
    }
    c.out << dump(j);
    return kExitOk;
}

int cmd_bundle_strong(Ctx& c, const std::string& bundle_path, int max_level,
                      const std::string& text, int budget_bits) {
    KripkeBundle b = bundle_from_json(load_json_file(bundle_path));
    Formula f = parse_formula(text);
    StrongValidityReport rep = bounded_strong_validity(b, f, max_level, budget_bits);
    Json j{{"format", 1}, {"command", "bundle strong"}, {"formula", render_formula(f)},
           {"max_level", max_level}};
    Json levels = Json::array();
    for (const LevelOutcome& o : rep.levels) {
        Json e{{"level", o.level}, {"valid", o.valid}};
        if (o.counter) e["countermodel"] = counter_valuation_json(o.counter->v, o.counter->world);
        levels.push_back(e);
    }
    j["levels"] = levels;
    if (rep.holds_up_to) {
        j["verdict"] = "holds up to level " + std::to_string(max_level) +
                       " (bounded approximation of strong validity)";
        if (c.human)
            c.out << "holds up to level " << max_level << " (bounded approximation)\n";
        else
            c.out << dump(j);
        return kExitOk;
    }
    j["verdict"] = "fails at level " + std::to_string(rep.failure->level);
    if (c.human)
        c.out << "fails at level " << rep.failure->level << "\n";
    else
        c.out << dump(j);
    return kExitRefuted;
}

int cmd_algebra_dual(Ctx& c, const std::string& frame_path, const std::string& algebra_path,
                     bool rt_closure) {
    if (frame_path.empty() == algebra_path.empty())
        throw InputError("algebra dual: give exactly one of --frame or --algebra");
    if (!frame_path.empty()) {
        MKFrame fr = load_frame(frame_path, rt_closure);
        c.out << dump(algebra_to_json(clop_dual(fr)));
    } else {
        FiniteMMAlgebra a = algebra_from_json(load_json_file(algebra_path));
        c.out << dump(frame_to_json(uf_dual(a)));
    }
    return kExitOk;
}

int cmd_algebra_check(Ctx& c, const std::string& algebra_path, const std::string& cls_name) {
    FiniteMMAlgebra a = algebra_from_json(load_json_file(algebra_path));
    auto cls = algebra_class_from_name(cls_name);
    if (!cls) throw InputError("algebra check: unknown class " + cls_name);
    AlgebraReport rep = check_axioms(a, *cls);
    if (c.human) {
        for (const AxiomResult& ax : rep.axioms)
            c.out << (ax.holds ? "pass  " : "FAIL  ") << ax.axiom << "\n";
    } else {
        Json j{{"format", 1}, {"command", "algebra check"}, {"class", cls_name},
               {"report", algebra_report_to_json(rep)}};
        c.out << dump(j);
    }
    return kExitOk;
}

int cmd_dot(Ctx& c, const std::string& frame_path, bool skip_loops, const std::string& out_path,
            bool rt_closure) {
    MKFrame fr = load_frame(frame_path, rt_closure);
    DotOptions opt;
    opt.skip_reflexive_loops = skip_loops;
    std::string d = frame_to_dot(fr, opt);
    if (!out_path.empty()) write_file(out_path, d);
    if (c.human)
        c.out << d;
    else
        c.out << dump(Json{{"format", 1}, {"command", "dot"}, {"dot", d}});
    return kExitOk;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& argv) {
    Ctx ctx;
    CLI::App app{"mgrz: a finite-model toolkit for monadic modal logic"};
    app.require_subcommand(1);
    app.add_flag("--human", ctx.human, "aligned text output instead of JSON");
    app.add_option("--jobs", ctx.jobs, "worker threads for frame scans")->default_val(1);

    std::string formula_text, frame_path, val_path, bundle_path, algebra_path;
    std::string cls_name = "mgrz", emit_path, dot_path, out_path, alg_cls = "mm";
    int world = -1, max_worlds = 4, level = 1, max_level = 2;
    int budget_bits = kValuationBudgetBits;
    long long cap = 4096;
    bool dedup = false, skip_loops = false, rt_closure = false;

    auto* parse_cmd = app.add_subcommand("parse", "parse a formula and print its AST");
    parse_cmd->add_option("formula", formula_text)->required();

    auto* translate_cmd = app.add_subcommand("translate", "predicate translation of a formula");
    translate_cmd->add_option("formula", formula_text)->required();

    auto* check_cmd = app.add_subcommand("check", "evaluate a formula in a model");
    check_cmd->add_option("--frame", frame_path)->required();
    check_cmd->add_option("--valuation", val_path)->required();
    check_cmd->add_option("--world", world);
    check_cmd->add_option("formula", formula_text)->required();
    check_cmd->add_flag("--rt-closure", rt_closure, "close R reflexively and transitively first");

    auto* valid_cmd = app.add_subcommand("valid", "frame validity by valuation enumeration");
    valid_cmd->add_option("--frame", frame_path)->required();
    valid_cmd->add_option("--budget-bits", budget_bits);
    valid_cmd->add_option("formula", formula_text)->required();
    valid_cmd->add_flag("--rt-closure", rt_closure);

    auto* classify_cmd = app.add_subcommand("classify", "frame class report");
    classify_cmd->add_option("frame", frame_path)->required();
    classify_cmd->add_flag("--rt-closure", rt_closure);

    auto* decide_cmd = app.add_subcommand("decide", "bounded countermodel search");
    decide_cmd->add_option("--class", cls_name);
    decide_cmd->add_option("--max-worlds", max_worlds);
    decide_cmd->add_flag("--dedup", dedup);
    decide_cmd->add_option("--emit-countermodel", emit_path);
    decide_cmd->add_option("formula", formula_text)->required();

    auto* filter_cmd = app.add_subcommand("filter", "selective filtration countermodel");
    filter_cmd->add_option("--frame", frame_path)->required();
    filter_cmd->add_option("--valuation", val_path)->required();
    filter_cmd->add_option("--dot", dot_path);
    filter_cmd->add_option("formula", formula_text)->required();
    filter_cmd->add_flag("--rt-closure", rt_closure);

    auto* bundle_cmd = app.add_subcommand("bundle", "Kripke bundle operations");
    auto* bundle_to = bundle_cmd->add_subcommand("to", "frame -> bundle (functor B)");
    bundle_to->add_option("--frame", frame_path)->required();
    bundle_to->add_flag("--rt-closure", rt_closure);
    auto* bundle_from = bundle_cmd->add_subcommand("from", "bundle -> frame (functor F)");
    bundle_from->add_option("--bundle", bundle_path)->required();
    auto* bundle_level = bundle_cmd->add_subcommand("level", "n-th level of a bundle");
    bundle_level->add_option("--bundle", bundle_path)->required();
    bundle_level->add_option("-n,--level", level)->required();
    bundle_level->add_option("--cap", cap);
    auto* bundle_strong = bundle_cmd->add_subcommand("strong", "bounded strong validity");
    bundle_strong->add_option("--bundle", bundle_path)->required();
    bundle_strong->add_option("-N,--max-level", max_level)->required();
    bundle_strong->add_option("--budget-bits", budget_bits);
    bundle_strong->add_option("formula", formula_text)->required();

    auto* algebra_cmd = app.add_subcommand("algebra", "mm-algebra operations");
    auto* algebra_dual = algebra_cmd->add_subcommand("dual", "Clop/Uf duality");
    algebra_dual->add_option("--frame", frame_path);
    algebra_dual->add_option("--algebra", algebra_path);
    algebra_dual->add_flag("--rt-closure", rt_closure);
    auto* algebra_check = algebra_cmd->add_subcommand("check", "algebra axiom check");
    algebra_check->add_option("--algebra", algebra_path)->required();
    algebra_check->add_option("--class", alg_cls);

    auto* dot_cmd = app.add_subcommand("dot", "Graphviz export with E-clusters");
    dot_cmd->add_option("frame", frame_path)->required();
    dot_cmd->add_flag("--skip-reflexive", skip_loops);
    dot_cmd->add_option("-o,--output", out_path);
    dot_cmd->add_flag("--rt-closure", rt_closure);

    std::vector<std::string> args(argv.rbegin(), argv.rend());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        return {kExitOk, help.str()};
    } catch (const CLI::ParseError& e) {
        Json j{{"format", 1}, {"error", e.what()}};
        return {kExitInput, ctx.human ? std::string(e.what()) + "\n" : dump(j)};
    }

    try {
        int code = kExitOk;
        if (*parse_cmd) code = cmd_parse(ctx, formula_text);
        else if (*translate_cmd) code = cmd_translate(ctx, formula_text);
        else if (*check_cmd) code = cmd_check(ctx, frame_path, val_path, formula_text, world, rt_closure);
        else if (*valid_cmd) code = cmd_valid(ctx, frame_path, formula_text, budget_bits, rt_closure);
        else if (*classify_cmd) code = cmd_classify(ctx, frame_path, rt_closure);
        else if (*decide_cmd)
            code = cmd_decide(ctx, cls_name, max_worlds, dedup, emit_path, formula_text);
        else if (*filter_cmd) code = cmd_filter(ctx, frame_path, val_path, formula_text, dot_path, rt_closure);
        else if (*bundle_cmd) {
            if (*bundle_to) code = cmd_bundle_to(ctx, frame_path, rt_closure);
            else if (*bundle_from) code = cmd_bundle_from(ctx, bundle_path);
            else if (*bundle_level) code = cmd_bundle_level(ctx, bundle_path, level, cap);
            else if (*bundle_strong)
                code = cmd_bundle_strong(ctx, bundle_path, max_level, formula_text, budget_bits);
            else throw InputError("bundle: pick one of to/from/level/strong");
        } else if (*algebra_cmd) {
            if (*algebra_dual) code = cmd_algebra_dual(ctx, frame_path, algebra_path, rt_closure);
            else if (*algebra_check) code = cmd_algebra_check(ctx, algebra_path, alg_cls);
            else throw InputError("algebra: pick one of dual/check");
        } else if (*dot_cmd) code = cmd_dot(ctx, frame_path, skip_loops, out_path, rt_closure);
        return {code, ctx.out.str()};
    } catch (const ParseError& e) {
        Json j{{"format", 1}, {"error", e.what()}, {"offset", e.offset}, {"expected", e.expected}};
        return {kExitInput, ctx.human ? std::string(e.what()) + "\n" : dump(j)};
    } catch (const InputError& e) {
        Json j{{"format", 1}, {"error", e.what()}};
        return {kExitInput, ctx.human ? std::string(e.what()) + "\n" : dump(j)};
    } catch (const InvariantError& e) {
        Json j{{"format", 1}, {"error", e.what()}, {"invariant_violation", true}};
        return {kExitInvariant, ctx.human ? std::string(e.what()) + "\n" : dump(j)};
    }
}

}  // namespace mgrz
