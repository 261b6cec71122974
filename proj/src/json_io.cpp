#include "mgrz/json_io.hpp"

#include <fstream>

#include "mgrz/errors.hpp"

namespace mgrz {

namespace {

void check_format(const Json& j, const char* what) {
    if (!j.is_object()) throw InputError(std::string(what) + ": expected a JSON object");
    if (j.contains("format") && (!j["format"].is_number_integer() || j["format"] != 1))
        throw InputError(std::string(what) + ": unsupported format (expected 1)");
}

int get_count(const Json& j, const char* key, const char* what) {
    if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<int>() < 0)
        throw InputError(std::string(what) + ": missing or invalid \"" + key + "\"");
    return j[key].get<int>();
}

Relation relation_from_pairs(const Json& arr, int n, const char* what) {
    Relation r(n);
    if (!arr.is_array()) throw InputError(std::string(what) + ": \"R\" must be an array of pairs");
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw InputError(std::string(what) + ": R entries must be [i, j] pairs");
        int i = e[0].get<int>(), j2 = e[1].get<int>();
        if (i < 0 || i >= n || j2 < 0 || j2 >= n)
            throw InputError(std::string(what) + ": R pair out of range");
        r.set(i, j2);
    }
    return r;
}

Json relation_to_pairs(const Relation& r) {
    Json arr = Json::array();
    for (auto [i, j] : r.pairs()) arr.push_back(Json::array({i, j}));
    return arr;
}

bool valid_letter(const std::string& s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
    return true;
}

}  // namespace

Json frame_to_json(const MKFrame& f) {
    Json j;
    j["format"] = 1;
    j["worlds"] = f.n;
    if (!f.names.empty()) j["names"] = f.names;
    j["R"] = relation_to_pairs(f.R);
    Json blocks = Json::array();
    for (int b = 0; b < f.E.block_count(); ++b) blocks.push_back(f.E.block(b).members());
    j["E"] = blocks;
    return j;
}

MKFrame frame_from_json(const Json& j) {
    check_format(j, "frame");
    MKFrame f;
    f.n = get_count(j, "worlds", "frame");
    if (!j.contains("R") || !j.contains("E")) throw InputError("frame: needs \"R\" and \"E\"");
    f.R = relation_from_pairs(j["R"], f.n, "frame");
    std::vector<std::vector<int>> blocks;
    if (!j["E"].is_array()) throw InputError("frame: \"E\" must be an array of blocks");
    for (const auto& b : j["E"]) {
        if (!b.is_array()) throw InputError("frame: E blocks must be arrays");
        std::vector<int> blk;
        for (const auto& w : b) {
            if (!w.is_number_integer()) throw InputError("frame: E block entries must be integers");
            blk.push_back(w.get<int>());
        }
        blocks.push_back(std::move(blk));
    }
    auto part = Partition::from_blocks(f.n, blocks);
    if (!part) throw InputError("frame: \"E\" blocks must partition 0.." + std::to_string(f.n - 1));
    f.E = *part;
    if (j.contains("names")) {
        if (!j["names"].is_array() || int(j["names"].size()) != f.n)
            throw InputError("frame: \"names\" must list one name per world");
        for (const auto& nm : j["names"]) f.names.push_back(nm.get<std::string>());
    }
    return f;
}

Json valuation_to_json(const Valuation& v) {
    Json j = Json::object();
    for (const auto& [letter, ext] : v) j[letter] = ext.members();
    return j;
}

Valuation valuation_from_json(const Json& j, int worlds) {
    if (!j.is_object()) throw InputError("valuation: expected an object of letter -> world list");
    Valuation v;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!valid_letter(it.key()))
            throw InputError("valuation: \"" + it.key() + "\" is not a valid letter name");
        if (!it.value().is_array()) throw InputError("valuation: extensions must be arrays");
        WorldSet s(worlds);
        for (const auto& w : it.value()) {
            if (!w.is_number_integer() || w.get<int>() < 0 || w.get<int>() >= worlds)
                throw InputError("valuation: world index out of range for letter " + it.key());
            s.set(w.get<int>());
        }
        v[it.key()] = s;
    }
    return v;
}

Json bundle_to_json(const KripkeBundle& b) {
    Json j;
    j["format"] = 1;
    j["total"] = Json{{"worlds", b.total.n}, {"R", relation_to_pairs(b.total.R)}};
    j["base"] = Json{{"worlds", b.base.n}, {"R", relation_to_pairs(b.base.R)}};
    j["pi"] = b.pi;
    return j;
}

KripkeBundle bundle_from_json(const Json& j) {
    check_format(j, "bundle");
    if (!j.contains("total") || !j.contains("base") || !j.contains("pi"))
        throw InputError("bundle: needs \"total\", \"base\" and \"pi\"");
    KripkeBundle b;
    b.total.n = get_count(j["total"], "worlds", "bundle total");
    b.total.R = relation_from_pairs(j["total"]["R"], b.total.n, "bundle total");
    b.base.n = get_count(j["base"], "worlds", "bundle base");
    b.base.R = relation_from_pairs(j["base"]["R"], b.base.n, "bundle base");
    if (!j["pi"].is_array() || int(j["pi"].size()) != b.total.n)
        throw InputError("bundle: \"pi\" must list one base world per total world");
    for (const auto& w : j["pi"]) b.pi.push_back(w.get<int>());
    validate_bundle(b);
    return b;
}

Json algebra_to_json(const FiniteMMAlgebra& a) {
    Json j;
    j["format"] = 1;
    j["atoms"] = a.atoms;
    auto op_to_json = [&](const std::vector<std::uint32_t>& op) {
        Json arr = Json::array();
        for (std::uint32_t img : op) {
            Json atom_set = Json::array();
            for (int b = 0; b < a.atoms; ++b)
                if ((img >> b) & 1) atom_set.push_back(b);
            arr.push_back(atom_set);
        }
        return arr;
    };
    j["dia"] = op_to_json(a.dia);
    j["ex"] = op_to_json(a.ex);
    return j;
}

FiniteMMAlgebra algebra_from_json(const Json& j) {
    check_format(j, "algebra");
    FiniteMMAlgebra a;
    a.atoms = get_count(j, "atoms", "algebra");
    if (a.atoms > kAlgebraAtomCap) throw InputError("algebra: atom count exceeds cap");
    auto op_from_json = [&](const Json& arr, const char* key) {
        if (!arr.is_array() || int(arr.size()) != a.atoms)
            throw InputError(std::string("algebra: \"") + key + "\" must list one atom set per atom");
        std::vector<std::uint32_t> op;
        for (const auto& s : arr) {
            if (!s.is_array()) throw InputError("algebra: atom images must be arrays");
            std::uint32_t img = 0;
            for (const auto& b : s) {
                int at = b.get<int>();
                if (at < 0 || at >= a.atoms) throw InputError("algebra: atom index out of range");
                img |= std::uint32_t{1} << at;
            }
            op.push_back(img);
        }
        return op;
    };
    if (!j.contains("dia") || !j.contains("ex")) throw InputError("algebra: needs \"dia\" and \"ex\"");
    a.dia = op_from_json(j["dia"], "dia");
    a.ex = op_from_json(j["ex"], "ex");
    return a;
}

Json interpretation_to_json(const BundleModel& bm) {
    Json j;
    j["format"] = 1;
    for (int w = 0; w < bm.bundle().base.n; ++w) {
        Json per_world = Json::object();
        for (const auto& [pred, ext] : bm.raw()) per_world[pred] = (ext & bm.fiber(w)).members();
        j["w" + std::to_string(w)] = per_world;
    }
    return j;
}

BundleModel bundle_model_from_json(const KripkeBundle& b, const Json& j) {
    check_format(j, "interpretation");
    std::map<std::string, WorldSet> interp;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (it.key() == "format") continue;
        if (it.key().empty() || it.key()[0] != 'w')
            throw InputError("interpretation: keys must be base worlds like \"w0\"");
        int w;
        try {
            w = std::stoi(it.key().substr(1));
        } catch (...) {
            throw InputError("interpretation: bad base world key " + it.key());
        }
        if (w < 0 || w >= b.base.n) throw InputError("interpretation: base world out of range");
        WorldSet fib = b.fiber(w);
        if (!it.value().is_object()) throw InputError("interpretation: per-world entry must be an object");
        for (auto pit = it.value().begin(); pit != it.value().end(); ++pit) {
            auto [entry, inserted] = interp.try_emplace(pit.key(), WorldSet(b.total.n));
            for (const auto& a : pit.value()) {
                int x = a.get<int>();
                if (x < 0 || x >= b.total.n)
                    throw InputError("interpretation: total world out of range");
                if (!fib.test(x))
                    throw InputError("interpretation: world " + std::to_string(x) +
                                     " is not in the fiber of " + it.key());
                entry->second.set(x);
            }
        }
    }
    return BundleModel(b, std::move(interp));
}

Json worldset_to_json(const WorldSet& s) { return Json(s.members()); }

namespace {

Json entry_to_json(const ClassEntry& e) {
    Json j;
    j["holds"] = e.holds;
    Json ws = Json::array();
    for (const Violation& v : e.witnesses)
        ws.push_back(Json{{"condition", v.condition}, {"worlds", v.worlds}});
    j["witnesses"] = ws;
    return j;
}

}  // namespace

Json class_report_to_json(const FrameClassReport& r) {
    Json j;
    j["mk"] = entry_to_json(r.mk);
    j["ms4"] = entry_to_json(r.ms4);
    j["mgrz"] = entry_to_json(r.mgrz);
    j["grz_u"] = entry_to_json(r.grz_u);
    j["barcan"] = entry_to_json(r.barcan);
    j["m_plus_grz"] = entry_to_json(r.m_plus_grz);
    j["mgl"] = entry_to_json(r.mgl);
    return j;
}

Json algebra_report_to_json(const AlgebraReport& r) {
    Json j;
    j["pass"] = r.pass;
    Json axioms = Json::array();
    for (const AxiomResult& a : r.axioms) {
        Json e;
        e["axiom"] = a.axiom;
        e["holds"] = a.holds;
        if (a.witness) {
            Json atoms = Json::array();
            for (int b = 0; b < 32; ++b)
                if ((*a.witness >> b) & 1) atoms.push_back(b);
            e["witness"] = atoms;
        }
        axioms.push_back(e);
    }
    j["axioms"] = axioms;
    return j;
}

Json filtration_result_to_json(const FiltrationResult& r) {
    Json j;
    j["format"] = 1;
    j["frame"] = frame_to_json(r.frame);
    j["valuation"] = valuation_to_json(r.v_hat);
    j["root"] = 0;
    j["origin"] = r.origin;
    Json pts = Json::array();
    for (const SelectedPoint& p : r.points)
        pts.push_back(Json{{"id", p.id},
                           {"origin", p.origin},
                           {"kind", point_kind_name(p.kind)},
                           {"selection_clopen", p.selection_clopen.members()}});
    j["points"] = pts;
    j["provenance"] = r.provenance_log;
    Json stats;
    stats["rounds"] = r.stats.rounds;
    stats["points_per_kind"] = r.stats.points_per_kind;
    stats["max_in_cluster_chain"] = r.stats.max_in_cluster_chain;
    stats["skeleton_depth"] = r.stats.skeleton_depth;
    stats["clusters"] = r.stats.cluster_count;
    j["stats"] = stats;
    return j;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

}  // namespace mgrz
