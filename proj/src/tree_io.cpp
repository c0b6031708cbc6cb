#include <sstream>

#include "folia/resolve.hpp"
#include "folia/serialize.hpp"

namespace folia {

namespace {

Json point_json(const LocatedPoint& p) {
    Json j;
    j["node"] = p.node;
    j["exact"] = p.exact;
    if (p.exact) {
        j["coords"] = Json::array();
        for (auto& c : p.coords) j["coords"].push_back(to_json(c));
    } else {
        j["intervals"] = Json::array();
        for (auto& b : p.boxes) j["intervals"].push_back(to_json(b));
    }
    j["components"] = p.components;
    j["pending"] = p.pending;
    j["report"] = to_json(p.report);
    if (!p.cs.empty()) {
        j["camacho_sad"] = Json::array();
        for (auto& c : p.cs) j["camacho_sad"].push_back({{"component", c.label}, {"index", to_json(c.value)}});
    }
    return j;
}

Json tree_json(const ResolutionTree& t) {
    Json j;
    j["dim"] = t.dim;
    j["status"] = to_string(t.status);
    j["blowups"] = t.blowups();
    j["weighted_blowups"] = t.weighted_blowups();
    j["nodes"] = Json::array();
    for (auto& n : t.nodes) {
        Json jn;
        jn["id"] = n.id;
        jn["parent"] = n.parent < 0 ? Json(nullptr) : Json(n.parent);
        jn["centre"] = n.site < 0 ? Json(nullptr) : Json(n.site);
        jn["divisor_var"] = n.divisor_var < 0 ? Json(nullptr) : Json(n.field.vars()[n.divisor_var]);
        Json labels = Json::array();
        for (auto& l : n.field.chart().divisor_labels) labels.push_back(l ? Json(*l) : Json(nullptr));
        jn["divisor_labels"] = labels;
        jn["divisor_multiplicity"] = n.divisor_multiplicity;
        jn["pole_order"] = n.pole_order;
        jn["dicritical"] = n.dicritical;
        jn["field"] = to_json(n.field);
        jn["scan_vars"] = n.scan_vars;
        j["nodes"].push_back(jn);
    }
    j["edges"] = Json::array();
    for (size_t k = 0; k < t.centres.size(); ++k) {
        auto& c = t.centres[k];
        Json je;
        je["index"] = k;
        je["from"] = c.node;
        Json to = Json::array();
        for (auto& n : t.nodes)
            if (n.site == static_cast<int>(k)) to.push_back(n.id);
        je["to"] = to;
        je["kind"] = c.kind == CenterKind::Point ? "point" : "curve";
        je["at"] = Json::array();
        for (auto& a : c.at) je["at"].push_back(to_json(a));
        je["free_var"] = c.free_var < 0 ? Json(nullptr) : Json(c.free_var);
        je["whole_axis"] = c.whole_axis;
        je["weights"] = c.weights;
        je["label"] = c.label;
        je["centre_class"] = c.tag;
        j["edges"].push_back(je);
    }
    j["divisor_components"] = Json::array();
    for (auto& c : t.components) {
        Json jc;
        jc["label"] = c.label;
        jc["weight"] = c.weight ? Json(*c.weight) : Json(nullptr);
        jc["dicritical"] = c.dicritical;
        jc["weighted"] = c.weighted;
        j["divisor_components"].push_back(jc);
    }
    j["singular_points"] = Json::array();
    for (auto& p : t.singular_points) j["singular_points"].push_back(point_json(p));
    j["elementary_curves"] = Json::array();
    for (auto& c : t.curves) {
        Json jc;
        jc["node"] = c.node;
        jc["axis"] = c.axis;
        jc["through"] = Json::array();
        for (auto& a : c.through) jc["through"].push_back(to_json(a));
        j["elementary_curves"].push_back(jc);
    }
    j["diagnostics"] = t.diagnostics;
    return j;
}

std::string escape_dot(const std::string& s) {
    std::string o;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') o += '\\';
        o += ch;
    }
    return o;
}

std::string tree_dot(const ResolutionTree& t) {
    std::ostringstream os;
    os << "digraph resolution {\n";
    os << "  label=\"status: " << to_string(t.status) << "\";\n";
    std::string root_tag = t.centres.empty() ? "" : t.centres.front().tag;
    if (t.centres.empty())
        for (auto& p : t.singular_points)
            if (p.node == 0) root_tag = p.report.tag();
    os << "  origin [shape=box, label=\"origin";
    if (!root_tag.empty()) os << "\\n" << escape_dot(root_tag);
    os << "\"];\n";
    // The component owning a chart is the one created by its latest blow-up.
    auto owner = [&](int node) -> std::string {
        int site = t.nodes[node].site;
        return site < 0 ? "origin" : "E" + std::to_string(t.centres[site].label);
    };
    for (auto& c : t.components) {
        os << "  E" << c.label << " [shape=ellipse, label=\"E" << c.label;
        if (c.weight) os << "\\nweight " << *c.weight;
        if (c.dicritical) os << "\\ndicritical";
        if (c.weighted) os << "\\nweighted";
        os << "\"];\n";
    }
    for (auto& c : t.centres)
        os << "  " << owner(c.node) << " -> E" << c.label << " [label=\"" << escape_dot(c.tag) << "\"];\n";
    for (size_t k = 0; k < t.singular_points.size(); ++k) {
        auto& p = t.singular_points[k];
        os << "  p" << k << " [shape=point, xlabel=\"" << escape_dot(p.report.tag());
        if (p.pending) os << " (pending)";
        os << "\"];\n";
        if (p.components.empty()) os << "  " << owner(p.node) << " -> p" << k << " [style=dashed];\n";
        for (int l : p.components) os << "  E" << l << " -> p" << k << " [style=dashed];\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace

std::string emit_tree(const ResolutionTree& tree, TreeFormat format) {
    if (format == TreeFormat::Dot) return tree_dot(tree);
    return tree_json(tree).dump(2) + "\n";
}

} // namespace folia
