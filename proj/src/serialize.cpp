#include "folia/serialize.hpp"

namespace folia {

Json to_json(const GaussianRational& c) { return c.str(); }

Json to_json(const ComplexBox& b) { return Json::array({b.lo_re, b.hi_re, b.lo_im, b.hi_im}); }

Json to_json(const Root& r) {
    Json j;
    j["exact"] = r.exact;
    if (r.exact)
        j["value"] = to_json(r.value);
    else
        j["interval"] = to_json(r.box);
    j["approx"] = Json::array({r.approx.real(), r.approx.imag()});
    j["multiplicity"] = r.multiplicity;
    j["clustered"] = r.clustered;
    return j;
}

Json to_json(const EigenData& e) {
    Json j;
    j["char_poly"] = e.char_poly.str("t");
    j["roots"] = Json::array();
    for (auto& r : e.roots) j["roots"].push_back(to_json(r));
    return j;
}

Json to_json(const LinearPart& L) {
    Json j = Json::array();
    for (auto& row : L.entries) {
        Json r = Json::array();
        for (auto& e : row) r.push_back(to_json(e));
        j.push_back(r);
    }
    return j;
}

Json to_json(const SingularityReport& r) {
    Json j;
    j["class"] = r.tag();
    j["saddle_node_rank"] = r.saddle_node_rank;
    j["linear_part"] = to_json(r.linear);
    j["eigen"] = to_json(r.eigen);
    if (r.resonance_rank)
        j["resonance_rank"] = *r.resonance_rank;
    else
        j["resonance_rank"] = "undecided";
    j["domain_position"] = to_string(r.position);
    j["second_jet_nonzero"] = r.second_jet_nonzero;
    return j;
}

Json to_json(const VectorField& X) {
    Json j;
    j["vars"] = X.vars();
    j["components"] = Json::array();
    for (auto& c : X.components()) j["components"].push_back(c.str());
    return j;
}

Json to_json(const JetSolutionSpace& J) {
    Json j;
    j["degree"] = J.degree;
    j["dims_by_degree"] = J.dims_by_degree;
    j["basis"] = Json::array();
    for (auto& F : J.basis) j["basis"].push_back(F.str());
    return j;
}

Json to_json(const TransformResult& r) {
    Json j;
    j["label"] = r.label;
    j["divisor_var"] = r.field.vars()[r.divisor_var];
    j["divisor_multiplicity"] = r.divisor_multiplicity;
    j["pole_order"] = r.pole_order;
    j["dicritical"] = r.dicritical;
    j["field"] = to_json(r.field);
    j["representative"] = to_json(r.representative);
    return j;
}

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const QuadResult& q) { return {{"value", to_json(q.value)}, {"error", q.error}}; }

Json to_json(const SemicompleteReport& r) {
    Json j;
    j["order"] = r.order;
    j["verdict"] = to_string(r.verdict);
    j["evidence"] = r.evidence ? to_json(*r.evidence) : Json(nullptr);
    return j;
}

Json to_json(const LiftResult& r) {
    Json j;
    j["final"] = Json::array();
    for (auto& z : r.final) j["final"].push_back(to_json(z));
    j["samples"] = r.samples.size();
    j["est_error"] = r.est_error;
    j["escaped"] = r.escaped;
    return j;
}

Json to_json(const HolonomyEstimate& h) {
    Json j;
    j["ratio"] = Json::array();
    for (auto& z : h.ratio) j["ratio"].push_back(to_json(z));
    j["lift"] = to_json(h.lift);
    return j;
}

Json to_json(const Trajectory& t) {
    Json j;
    j["samples"] = t.t.size();
    j["stop"] = t.stop;
    j["end"] = t.x.empty() ? Json(nullptr) : to_json(t.x.back());
    j["t_end"] = t.t.empty() ? 0.0 : t.t.back();
    return j;
}

} // namespace folia
