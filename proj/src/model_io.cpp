#include "matsym/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>

#include "matsym/error.hpp"

namespace matsym {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::BadModelFile, what); }

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) bad(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::vector<int> int_array(const json& j, const std::string& what) {
    if (!j.is_array()) bad(what + " must be an integer array");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) bad(what + " must contain integers only");
        out.push_back(v.get<int>());
    }
    return out;
}

std::vector<int> cell_list(const json& j, const std::vector<int>& dims, const std::string& what) {
    if (!j.is_array()) bad(what + " must be an array of coordinate arrays");
    std::vector<int> cells;
    const auto strides = strides_of(dims);
    for (const auto& c : j) {
        const auto coords = int_array(c, what + " coordinate");
        if (coords.size() != dims.size()) {
            throw Error(ErrorCode::OutOfRangeIndex, what + ": coordinate rank mismatch");
        }
        int index = 0;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            if (coords[d] < 0 || coords[d] >= dims[d]) {
                throw Error(ErrorCode::OutOfRangeIndex, what + ": coordinate " + std::to_string(coords[d]) +
                                                            " outside dimension " + std::to_string(d));
            }
            index += coords[d] * strides[d];
        }
        cells.push_back(index);
    }
    return cells;
}

json cells_to_json(const std::vector<int>& cells, const MatrixModel& model) {
    json out = json::array();
    for (int c : cells) out.push_back(model.coords(c));
    return out;
}

TermKind kind_from_string(const std::string& s) {
    for (TermKind k : {TermKind::LexLe, TermKind::LexLt, TermKind::LinearEq, TermKind::LinearLe,
                       TermKind::ScalarProductEq, TermKind::MultisetLe, TermKind::AllPermLe}) {
        if (to_string(k) == s) return k;
    }
    bad("unknown constraint kind '" + s + "'");
}

ConstraintTerm term_from_json(const json& j, const std::vector<int>& dims) {
    if (!j.is_object()) bad("constraint must be an object");
    const auto& kind_field = field(j, "kind");
    if (!kind_field.is_string()) bad("constraint kind must be a string");
    ConstraintTerm t;
    t.kind = kind_from_string(kind_field.get<std::string>());
    if (t.is_linear()) {
        t.x = cell_list(field(j, "vars"), dims, "vars");
        t.coeffs = int_array(field(j, "coeffs"), "coeffs");
    } else {
        t.x = cell_list(field(j, "x"), dims, "x");
        t.y = cell_list(field(j, "y"), dims, "y");
    }
    if (t.is_linear() || t.kind == TermKind::ScalarProductEq) {
        const auto& rhs = field(j, "rhs");
        if (!rhs.is_number_integer()) bad("rhs must be an integer");
        t.rhs = rhs.get<int>();
    }
    t.validate();
    return t;
}

SymmetrySpec::Partition partition_from_json(const json& j, int extent) {
    SymmetrySpec::Partition p;
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "all") {
            SymmetrySpec::Block b;
            for (int i = 0; i < extent; ++i) b.push_back(i);
            p.push_back(b);
        } else if (s == "none") {
            for (int i = 0; i < extent; ++i) p.push_back({i});
        } else {
            bad("unknown symmetry shorthand '" + s + "'");
        }
        return p;
    }
    if (!j.is_array()) bad("partition must be \"all\", \"none\" or an array of blocks");
    for (const auto& block : j) p.push_back(int_array(block, "symmetry block"));
    return p;
}

json partition_to_json(const SymmetrySpec::Partition& p, int extent) {
    if (p.size() == 1 && static_cast<int>(p.front().size()) == extent && extent > 1) return "all";
    if (static_cast<int>(p.size()) == extent) return "none";
    json out = json::array();
    for (const auto& b : p) out.push_back(b);
    return out;
}

}  // namespace

MatrixModel model_from_json(const json& doc) {
    if (!doc.is_object()) bad("model document must be a JSON object");
    std::string name = "model";
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) bad("name must be a string");
        name = doc["name"].get<std::string>();
    }
    const auto dims = int_array(field(doc, "dims"), "dims");
    if (dims.empty()) bad("dims must not be empty");
    for (int e : dims) {
        if (e < 1) throw Error(ErrorCode::OutOfRangeIndex, "dimension extent must be >= 1");
    }
    const int cells = cell_count_of(dims);

    std::vector<Domain> domains;
    const auto& dom = field(doc, "domain");
    if (dom.is_array()) {
        domains.assign(static_cast<std::size_t>(cells), Domain(int_array(dom, "domain")));
    } else if (dom.is_object()) {
        domains.assign(static_cast<std::size_t>(cells), Domain(int_array(field(dom, "default"), "domain.default")));
        if (dom.contains("cells")) {
            if (!dom["cells"].is_array()) bad("domain.cells must be an array");
            for (const auto& entry : dom["cells"]) {
                const auto idx = cell_list(json::array({field(entry, "cell")}), dims, "domain.cells");
                domains[static_cast<std::size_t>(idx.front())] = Domain(int_array(field(entry, "values"), "values"));
            }
        }
    } else {
        bad("domain must be an integer array or an object");
    }

    ConstraintSet constraints;
    if (doc.contains("constraints")) {
        if (!doc["constraints"].is_array()) bad("constraints must be an array");
        for (const auto& c : doc["constraints"]) constraints.add(term_from_json(c, dims));
    }

    std::vector<SymmetrySpec::Partition> parts;
    const json sym = doc.contains("symmetry") ? doc["symmetry"] : json("none");
    if (sym.is_string()) {
        for (int e : dims) parts.push_back(partition_from_json(sym, e));
    } else if (sym.is_array()) {
        if (sym.size() != dims.size()) {
            throw Error(ErrorCode::MalformedPartition, "symmetry needs one entry per dimension");
        }
        for (std::size_t d = 0; d < dims.size(); ++d) parts.push_back(partition_from_json(sym[d], dims[d]));
    } else {
        bad("symmetry must be a string or an array");
    }

    return MatrixModel::build(std::move(name), dims, std::move(domains), std::move(constraints),
                              SymmetrySpec(std::move(parts)));
}

json constraint_to_json(const ConstraintTerm& term, const MatrixModel& model) {
    json j;
    j["kind"] = std::string(to_string(term.kind));
    if (term.is_linear()) {
        j["vars"] = cells_to_json(term.x, model);
        j["coeffs"] = term.coeffs;
    } else {
        j["x"] = cells_to_json(term.x, model);
        j["y"] = cells_to_json(term.y, model);
    }
    if (term.is_linear() || term.kind == TermKind::ScalarProductEq) j["rhs"] = term.rhs;
    return j;
}

json model_to_json(const MatrixModel& model) {
    json doc;
    doc["name"] = model.name();
    doc["dims"] = model.dims();
    if (model.has_uniform_domain()) {
        doc["domain"] = model.domain(0).values();
    } else {
        // Most common domain becomes the default.
        std::map<std::vector<int>, int> freq;
        for (const auto& d : model.domains()) ++freq[d.values()];
        auto best = std::max_element(freq.begin(), freq.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        json dom;
        dom["default"] = best->first;
        dom["cells"] = json::array();
        for (int c = 0; c < model.cell_count(); ++c) {
            if (model.domain(c).values() != best->first) {
                dom["cells"].push_back({{"cell", model.coords(c)}, {"values", model.domain(c).values()}});
            }
        }
        doc["domain"] = dom;
    }
    doc["constraints"] = json::array();
    for (const auto& t : model.constraints().terms) doc["constraints"].push_back(constraint_to_json(t, model));
    json sym = json::array();
    for (std::size_t d = 0; d < model.rank(); ++d) {
        sym.push_back(partition_to_json(model.symmetry().partition(d), model.dims()[d]));
    }
    doc["symmetry"] = sym;
    return doc;
}

MatrixModel read_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open model file " + path.string());
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        bad(path.string() + ": " + e.what());
    }
    return model_from_json(doc);
}

void write_model(const MatrixModel& model, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) bad("cannot write model file " + path.string());
    out << model_to_json(model).dump(2) << '\n';
}

}  // namespace matsym
