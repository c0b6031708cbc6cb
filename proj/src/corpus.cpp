#include "folia/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "folia/blowup.hpp"
#include "folia/errors.hpp"
#include "folia/integrals.hpp"
#include "folia/resolve.hpp"

namespace folia {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

std::string read_text(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw CorpusLoadError(p, "cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string error_name(const std::exception& e) {
    if (dynamic_cast<const NotApplicableError*>(&e)) return "not_applicable";
    if (dynamic_cast<const SingularPathError*>(&e)) return "singular_path";
    if (dynamic_cast<const InvalidCenterError*>(&e)) return "invalid_center";
    if (dynamic_cast<const DegenerateInputError*>(&e)) return "degenerate_input";
    if (dynamic_cast<const StructuralError*>(&e)) return "structural";
    if (dynamic_cast<const PoleError*>(&e)) return "pole";
    if (dynamic_cast<const ParseError*>(&e)) return "parse";
    return "error";
}

// Expected value against computed detail. Objects with "approx" compare
// numbers or [re, im] pairs within "tol" (absolute) or "rel".
bool matches(const Json& expected, const Json& actual) {
    if (expected.is_object() && expected.contains("approx")) {
        const Json& a = expected["approx"];
        double tol = expected.value("tol", 0.0), rel = expected.value("rel", 0.0);
        auto num = [](const Json& j) -> cplx {
            if (j.is_array()) return {j.at(0).get<double>(), j.at(1).get<double>()};
            return {j.get<double>(), 0.0};
        };
        if (!actual.is_number() && !actual.is_array()) return false;
        cplx want = num(a), got = num(actual);
        double d = std::abs(want - got);
        return d <= tol || (rel > 0 && d <= rel * std::abs(want));
    }
    if (expected.is_object() && expected.contains("below")) return actual.is_number() && actual.get<double>() < expected["below"].get<double>();
    return expected == actual;
}

class Runner {
public:
    Runner(const Fixture& f, const CorpusOptions& o) : f_(f), o_(o), params_(f.spec.value("params", Json::object())) {}

    Json details;

    void run() {
        static const std::map<std::string, void (Runner::*)()> table{
            {"first_integrals", &Runner::first_integrals},
            {"jouanolou", &Runner::jouanolou},
            {"commuting", &Runner::commuting},
            {"classify", &Runner::classify},
            {"second_jet", &Runner::second_jet},
            {"resolve2", &Runner::resolve2},
            {"resolve3", &Runner::resolve3_check},
            {"persistent_nilpotent", &Runner::persistent},
            {"weighted_blowup", &Runner::weighted},
            {"multiplicity", &Runner::multiplicity},
            {"integral_pullback", &Runner::pullback},
            {"formal_integral", &Runner::formal},
            {"meromorphic_quotient", &Runner::quotient},
            {"semicomplete", &Runner::semicomplete},
            {"time_form", &Runner::time_form},
            {"holonomy", &Runner::holonomy_check},
            {"saddle_behaviour", &Runner::saddle_behaviour},
            {"parse", &Runner::parse_only},
            {"omega1_lift", &Runner::omega1_lift},
            {"substitute", &Runner::substitute},
            {"homogeneous_component", &Runner::homogeneous},
            {"point_blowup", &Runner::point_blowup},
            {"curve_blowup", &Runner::curve_blowup},
            {"dot_tree", &Runner::dot_tree},
        };
        auto it = table.find(f_.check);
        if (it == table.end()) throw CorpusLoadError(f_.source, "unknown check '" + f_.check + "'");
        (this->*(it->second))();
    }

private:
    const Fixture& f_;
    const CorpusOptions& o_;
    Json params_;
    std::optional<ParsedSystem> sys_;

    const ParsedSystem& system() {
        if (sys_) return *sys_;
        const Json& s = f_.spec;
        if (s.contains("field")) {
            sys_ = load_system_file(f_.source.parent_path() / s["field"].get<std::string>());
        } else if (s.contains("inline")) {
            ParsedSystem p;
            for (auto& v : s["inline"].at("vars")) p.vars.push_back(v.get<std::string>());
            p.kind = s["inline"].value("kind", "field") == "form" ? SystemKind::Form : SystemKind::Field;
            for (auto& c : s["inline"].at("components")) p.components.push_back(parse_poly(c.get<std::string>(), p.vars));
            sys_ = std::move(p);
        } else {
            throw CorpusLoadError(f_.source, "fixture needs 'field' or 'inline'");
        }
        return *sys_;
    }
    VectorField field() {
        auto& s = system();
        if (s.kind != SystemKind::Field) throw NotApplicableError("fixture system is a form");
        return VectorField::from_polys(s.vars, s.components);
    }
    Poly poly(const std::string& text) { return parse_poly(text, system().vars); }
    int var_index(const std::string& name) {
        auto& v = system().vars;
        auto it = std::find(v.begin(), v.end(), name);
        if (it == v.end()) throw CorpusLoadError(f_.source, "unknown variable '" + name + "'");
        return static_cast<int>(it - v.begin());
    }

    void first_integrals() {
        auto X = field();
        std::vector<Poly> fs;
        Json verified = Json::array();
        bool all = true;
        for (auto& t : params_.at("integrals")) {
            fs.push_back(poly(t.get<std::string>()));
            bool ok = verify_first_integral(X, fs.back());
            verified.push_back(ok);
            all = all && ok;
        }
        details["verified"] = verified;
        details["all_verified"] = all;
        if (fs.size() == 2) details["independent"] = independence_check(fs[0], fs[1]);
    }

    void jouanolou() {
        int n = params_.at("n").get<int>();
        const VarList v{"x", "y", "z"};
        std::string s = std::to_string(n), s1 = std::to_string(n + 1);
        auto omega = OneForm::from_polys(v, {parse_poly("y*x^" + s + " - z^" + s1, v), parse_poly("z*y^" + s + " - x^" + s1, v),
                                             parse_poly("x*z^" + s + " - y^" + s1, v)});
        auto Z = VectorField::from_polys(v, {parse_poly("y^" + s, v), parse_poly("z^" + s, v), parse_poly("x^" + s, v)});
        details["integrable"] = integrability_check(omega);
        details["kills_radial"] = contract(omega, radial_field(v)).is_zero();
        details["kills_field"] = contract(omega, Z).is_zero();
        details["euler_degree"] = euler_test(Z);
        auto bracket = lie_bracket(radial_field(v), Z);
        details["bracket_identity"] = bracket == Z * GaussianRational(n - 1);
    }

    void commuting() {
        const VarList v{"x", "y", "z"};
        GaussianRational a = parse_poly(params_.at("a").get<std::string>(), v).constant_term();
        auto X = VectorField::from_polys(v, {Poly(v), parse_poly("z*y", v), parse_poly("z^2", v)});
        auto Y = VectorField::from_polys(v, {parse_poly("x^2", v), parse_poly("x*y", v) * a, Poly(v)});
        details["bracket_zero"] = lie_bracket(X, Y).is_zero();
    }

    void report_details(const SingularityReport& r) {
        details["class"] = r.tag();
        details["saddle_node_rank"] = r.saddle_node_rank;
        details["elementary"] = r.elementary();
        details["second_jet_nonzero"] = r.second_jet_nonzero;
        if (r.eigen.all_exact()) {
            Json ev = Json::array();
            for (auto& e : r.eigen.exact_values()) ev.push_back(e.str());
            details["eigenvalues"] = ev;
        }
        details["resonance_rank"] = r.resonance_rank ? Json(*r.resonance_rank) : Json("undecided");
        details["domain"] = to_string(r.position);
    }

    void classify() { report_details(classify_singularity(field())); }

    void second_jet() { details["second_jet_nonzero"] = second_jet_check(field()); }

    void resolve2() {
        auto t = seidenberg_resolve(field(), params_.value("max_steps", o_.max_steps));
        details["status"] = to_string(t.status);
        details["blowups"] = t.blowups();
        Json weights = Json::array();
        int minus_one = -1;
        for (auto& c : t.components) {
            weights.push_back(c.weight ? Json(*c.weight) : Json(nullptr));
            if (c.weight == -1) minus_one = minus_one < 0 ? c.label : -2;
        }
        details["weights"] = weights;
        bool elementary = true;
        for (auto& p : t.singular_points) elementary = elementary && p.exact && p.report.elementary();
        details["leaves_elementary"] = elementary;
        auto sums = camacho_sad_sums(t);
        bool sums_ok = !sums.empty();
        for (auto& [l, s] : sums) sums_ok = sums_ok && t.component(l).weight && s == GaussianRational(*t.component(l).weight);
        details["index_sums_match_weights"] = sums_ok;
        if (minus_one > 0) {
            details["index_sum_minus_one"] = sums.count(minus_one) ? Json(sums.at(minus_one).str()) : Json(nullptr);
            std::vector<std::string> corner, free;
            std::set<long> orders;
            for (auto& p : t.singular_points)
                for (auto& c : p.cs)
                    if (c.label == minus_one) {
                        (p.components.size() == 2 ? corner : free).push_back(c.value.str());
                        if (p.components.size() == 2 && c.value.is_real()) orders.insert(c.value.re().get_den().get_si());
                    }
            std::sort(corner.begin(), corner.end());
            std::sort(free.begin(), free.end());
            details["corner_indices"] = corner;
            details["separatrix_indices"] = free;
            details["holonomy_orders"] = std::vector<long>(orders.begin(), orders.end());
            // Dual graph of the divisor: a chain has two ends and no branching.
            std::map<int, std::set<int>> adj;
            for (auto& p : t.singular_points)
                if (p.components.size() == 2) {
                    adj[p.components[0]].insert(p.components[1]);
                    adj[p.components[1]].insert(p.components[0]);
                }
            bool chain = adj.size() == t.components.size() || t.components.size() == 1;
            int ends = 0;
            for (auto& [l, nb] : adj) {
                chain = chain && nb.size() <= 2;
                ends += nb.size() == 1;
            }
            details["chain"] = chain && (t.components.size() == 1 || ends == 2);
        }
    }

    void resolve3_check() {
        Resolve3Options opt;
        opt.max_steps = params_.value("max_steps", o_.max_steps);
        opt.allow_weighted = params_.value("allow_weighted", true);
        auto t = resolve3(field(), opt);
        details["status"] = to_string(t.status);
        details["blowups"] = t.blowups();
        details["weighted_blowups"] = t.weighted_blowups();
        bool two = false;
        for (auto& c : t.centres)
            for (int w : c.weights) two = two || w == 2;
        details["weight_two_used"] = two;
        bool pending_nilpotent = false, elementary = true;
        for (auto& p : t.singular_points) {
            pending_nilpotent = pending_nilpotent || (p.pending && p.report.cls == SingularClass::Nilpotent);
            elementary = elementary && p.report.elementary();
        }
        details["pending_nilpotent"] = pending_nilpotent;
        details["leaves_elementary"] = elementary;
    }

    void persistent() {
        auto r = detect_persistent_nilpotent(field(), params_.value("probe_budget", o_.probe_budget));
        details["matched"] = r.matched;
        details["n"] = r.n;
        if (r.witness) {
            details["stage"] = r.witness->stage;
            details["strict"] = r.witness->strict;
            details["witness_valid"] = verify_witness(*r.witness);
        }
    }

    BlowupSpec spec_from_params() {
        BlowupSpec s;
        s.center = params_.value("center", "point") == "curve" ? CenterKind::Curve : CenterKind::Point;
        if (s.center == CenterKind::Curve) s.free_var = var_index(params_.at("free_var").get<std::string>());
        s.chart_var = var_index(params_.at("chart_var").get<std::string>());
        if (params_.contains("weights")) s.weights = params_["weights"].get<std::vector<int>>();
        return s;
    }

    void weighted() {
        auto X = field();
        auto s = spec_from_params();
        auto r = weighted_blowup(X, s);
        details["pole_order"] = r.pole_order;
        details["holomorphic"] = r.field.is_holomorphic();
        details["representative_holomorphic"] = r.representative.is_holomorphic();
        bool ones = std::all_of(s.weights.begin(), s.weights.end(), [](int w) { return w == 1; });
        if (ones) {
            auto st = s.center == CenterKind::Point ? blowup_point(X, s) : blowup_curve(X, s);
            details["matches_standard"] = st.field == r.field && st.representative == r.representative;
        }
    }

    void multiplicity() {
        auto X = field();
        Json mult = Json::array(), dic = Json::array();
        for (int c = 0; c < X.dim(); ++c) {
            auto r = blowup_point(X, BlowupSpec::point(c));
            mult.push_back(r.divisor_multiplicity);
            dic.push_back(r.dicritical);
        }
        details["multiplicity"] = mult;
        details["dicritical"] = dic;
        int k = X.order();
        bool radial_type = dic.size() && dic[0].get<bool>();
        details["rule_holds"] = mult[0].get<int>() == (radial_type ? k : k - 1);
    }

    void pullback() {
        auto X = field();
        bool ok = true;
        for (int c = 0; c < X.dim(); ++c) {
            auto r = blowup_point(X, BlowupSpec::point(c));
            for (auto& t : params_.at("integrals")) {
                Poly g = pullback_function(poly(t.get<std::string>()), BlowupSpec::point(c));
                ok = ok && directional_derivative(r.representative, ChartFunction(g)).is_zero();
            }
        }
        details["pullbacks_invariant"] = ok;
    }

    void formal() {
        auto X = field();
        int lo = params_.value("min_degree", 2), hi = params_.value("max_degree", o_.jet_degree);
        Json sizes = Json::array();
        bool nonzero = true, residuals = true, monotone = true, prefix = true;
        std::vector<int> prev;
        for (int N = lo; N <= hi; ++N) {
            auto J = formal_first_integral(X, N);
            sizes.push_back(J.basis.size());
            nonzero = nonzero && !J.basis.empty();
            for (auto& F : J.basis) residuals = residuals && jet_residual_zero(X, F, N);
            for (size_t k = 1; k < J.dims_by_degree.size(); ++k) monotone = monotone && J.dims_by_degree[k] >= J.dims_by_degree[k - 1];
            for (size_t k = 0; k < prev.size(); ++k) prefix = prefix && J.dims_by_degree[k] == prev[k];
            prev = J.dims_by_degree;
        }
        details["basis_sizes"] = sizes;
        details["dims_by_degree"] = prev;
        details["nonzero"] = nonzero;
        details["residuals_zero"] = residuals;
        details["monotone"] = monotone && prefix;
    }

    FactoredFunction factored(const Json& j) {
        std::vector<std::pair<Poly, int>> fs;
        for (auto& e : j) fs.emplace_back(poly(e.at(0).get<std::string>()), e.at(1).get<int>());
        return FactoredFunction(std::move(fs));
    }

    void quotient() {
        auto F = factored(params_.at("F")), G = factored(params_.at("G"));
        auto q = meromorphic_quotient(F, G, poly(params_.at("shared").get<std::string>()));
        details["numerator"] = q.numerator.str();
        details["denominator"] = q.denominator.str();
        details["powers"] = Json::array({q.power_f, q.power_g});
    }

    void semicomplete() {
        auto& s = system();
        auto r = semicomplete_order_test(s.components.at(0), o_.dynamics.tol);
        details["order"] = r.order;
        details["verdict"] = to_string(r.verdict);
        if (r.evidence) details["evidence"] = to_json(r.evidence->value);
    }

    PathSpec path_from(const Json& p) {
        auto c = [](const Json& j) { return cplx(j.at(0).get<double>(), j.at(1).get<double>()); };
        std::string kind = p.at("kind");
        if (kind == "segment") return PathSpec::segment(c(p.at("from")), c(p.at("to")));
        if (kind == "arc") {
            // Angles in radians, or in multiples of pi under "angles_pi".
            double scale = p.contains("angles_pi") ? kPi : 1.0;
            auto a = p.contains("angles_pi") ? p.at("angles_pi") : p.at("angles");
            return PathSpec::arc(c(p.at("centre")), p.at("radius"), a.at(0).get<double>() * scale, a.at(1).get<double>() * scale);
        }
        if (kind == "spiral") {
            auto t = p.at("t");
            return PathSpec::log_spiral(p.at("eps"), p.at("y"), c(p.at("v")), t.at(0), t.at(1));
        }
        if (kind == "polyline") {
            std::vector<cplx> pts;
            for (auto& q : p.at("points")) pts.push_back(c(q));
            return PathSpec::polyline(pts);
        }
        throw CorpusLoadError(f_.source, "unknown path kind '" + kind + "'");
    }

    void time_form() {
        auto& s = system();
        auto r = time_form_integral(s.components.at(0), path_from(params_.at("path")), o_.dynamics.tol);
        details["value"] = to_json(r.value);
    }

    // Quadrature of (H / F) dx against the lift of F d/dx + z H d/dz.
    void omega1_lift() {
        const VarList x{"x"};
        Poly F = parse_poly(params_.at("F").get<std::string>(), x), H = parse_poly(params_.at("H").get<std::string>(), x);
        auto path = path_from(params_.at("path"));
        cplx z0(params_.at("z0").at(0).get<double>(), params_.at("z0").at(1).get<double>());
        auto w = omega1_integral(F, H, path, o_.dynamics.tol);
        auto lift = lift_path(omega1_field(F, H), 0, path, {z0}, o_.dynamics);
        details["integral"] = to_json(w.value);
        details["rel_error"] = std::abs(lift.final[1] - z0 * std::exp(w.value)) / std::abs(z0);
        bool shrinks = std::abs(lift.final[1]) < std::abs(z0);
        // Re = 0 up to quadrature noise says nothing about contraction.
        details["contraction_consistent"] = std::abs(w.value.real()) <= 1e-9 || contraction_check(w) == shrinks;
        if (params_.value("monotone", false)) {
            bool monotone = true;
            for (size_t k = 0; k + 1 < lift.samples.size(); ++k)
                monotone = monotone && std::abs(lift.samples[k + 1].point[1]) < std::abs(lift.samples[k].point[1]);
            details["monotone_decay"] = monotone;
        }
    }

    void holonomy_check() {
        auto X = field();
        int base = var_index(params_.at("base").get<std::string>());
        auto h = holonomy(X, base, o_.dynamics);
        details["escaped"] = h.lift.escaped;
        if (!h.ratio.empty()) details["ratio"] = to_json(h.ratio[0]);
        if (params_.contains("order")) {
            auto back = holonomy_iterate(X, base, params_["order"].get<int>(), o_.dynamics);
            details["returns"] = std::abs(back[0] / o_.dynamics.fiber_seed - 1.0) < 1e-3;
        }
    }

    void saddle_behaviour() {
        auto X = field();
        std::vector<cplx> lambda;
        for (auto& l : params_.at("eigenvalues")) lambda.push_back(parse_poly(l.get<std::string>(), system().vars).constant_term().to_complex());
        double eps = params_.value("eps", 0.1), seed = o_.dynamics.fiber_seed;
        bool radial = true, spiral = true;
        cplx v = spiral_direction(lambda);
        DynamicsConfig cfg = o_.dynamics;
        cfg.min_samples = std::max(cfg.min_samples, 256);
        for (double y : {0.0, 1.0, -2.5}) {
            auto r = lift_path(X, 0, PathSpec::ray(std::polar(eps, y), 5), {seed, seed}, o_.dynamics);
            for (size_t k = 0; k + 1 < r.samples.size(); ++k)
                radial = radial && std::abs(r.samples[k + 1].point[1]) < std::abs(r.samples[k].point[1]);
            auto s = lift_path(X, 0, PathSpec::log_spiral(eps, y, v, 0, -10), {seed, seed}, cfg);
            spiral = spiral && !s.escaped && s.samples.size() >= 256;
            for (size_t k = 0; k + 1 < s.samples.size(); ++k)
                for (int i = 1; i < 3; ++i) spiral = spiral && std::abs(s.samples[k + 1].point[i]) > std::abs(s.samples[k].point[i]);
        }
        details["spiral_direction"] = to_json(v);
        details["radial_second_decreasing"] = radial;
        details["spiral_fibers_increasing"] = spiral;
    }

    void substitute() {
        std::vector<Poly> img;
        for (auto& t : params_.at("images")) img.push_back(poly(t.get<std::string>()));
        details["result"] = poly(params_.at("poly").get<std::string>()).compose(img).str();
    }

    void homogeneous() {
        auto X = field();
        int d = params_.at("degree").get<int>();
        auto H = X.homogeneous_component(d);
        Json comps = Json::array();
        for (auto& c : H.polys()) comps.push_back(c.str());
        details["components"] = comps;
    }

    // Sum of |component| of the representative at a fixed generic point of the divisor.
    static double divisor_norm(const TransformResult& r) {
        std::vector<cplx> at{{0.3, -0.2}, {-0.7, 0.45}, {0.55, 0.8}};
        at.resize(r.representative.dim());
        at[r.divisor_var] = 0;
        double norm = 0;
        for (auto& f : r.representative.components()) norm += std::abs(f.eval_complex(at));
        return norm;
    }

    void transform_details(const TransformResult& r) {
        details["dicritical"] = r.dicritical;
        details["multiplicity"] = r.divisor_multiplicity;
        details["regular_generic"] = divisor_norm(r) > 1e-6;
        Json comps = Json::array();
        for (auto& c : r.representative.components()) comps.push_back(c.str());
        details["representative"] = comps;
    }

    void point_blowup() { transform_details(blowup_point(field(), BlowupSpec::point(var_index(params_.at("chart_var"))))); }

    void curve_blowup() {
        auto s = BlowupSpec::curve(var_index(params_.at("free_var")), var_index(params_.at("chart_var")));
        transform_details(blowup_curve(field(), s));
    }

    void dot_tree() {
        auto t = seidenberg_resolve(field(), params_.value("max_steps", o_.max_steps));
        std::string dot = emit_tree(t, TreeFormat::Dot);
        Json found = Json::array();
        for (auto& c : t.components)
            if (c.weight && dot.find("weight " + std::to_string(*c.weight)) != std::string::npos) found.push_back(*c.weight);
        details["divisor_nodes"] = t.components.size();
        details["dot_weights"] = found;
    }

    void parse_only() {
        auto& s = system();
        details["parsed"] = true;
        bool homogeneous = true;
        int deg = -1;
        for (auto& c : s.components) {
            if (c.is_zero()) continue;
            homogeneous = homogeneous && c.is_homogeneous() && (deg < 0 || c.degree() == deg);
            deg = c.degree();
        }
        details["homogeneous"] = homogeneous;
        if (params_.contains("integrals")) first_integrals();
    }
};

} // namespace

ParsedSystem load_system_file(const fs::path& file) {
    std::string text = read_text(file);
    try {
        return parse_system(text);
    } catch (const ParseError& e) {
        throw CorpusLoadError(file, e.what());
    }
}

Fixture load_fixture(const fs::path& file) {
    Fixture f;
    f.source = file;
    try {
        f.spec = Json::parse(read_text(file));
    } catch (const nlohmann::json::exception& e) {
        throw CorpusLoadError(file, std::string("invalid JSON: ") + e.what());
    }
    try {
        f.name = f.spec.at("name").get<std::string>();
        f.group = f.spec.at("group").get<std::string>();
        f.topic = f.spec.value("topic", "");
        f.golden = f.spec.value("golden", true);
        f.check = f.spec.at("check").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw CorpusLoadError(file, std::string("bad fixture layout: ") + e.what());
    }
    return f;
}

std::vector<Fixture> load_corpus(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw CorpusLoadError(dir, "not a directory");
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    std::vector<Fixture> out;
    for (auto& p : files) out.push_back(load_fixture(p));
    std::sort(out.begin(), out.end(), [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
    for (size_t k = 1; k < out.size(); ++k)
        if (out[k].name == out[k - 1].name) throw CorpusLoadError(out[k].source, "duplicate fixture name " + out[k].name);
    return out;
}

Json run_fixture(const Fixture& f, const CorpusOptions& opts) {
    Json j;
    j["name"] = f.name;
    j["group"] = f.group;
    j["topic"] = f.topic;
    j["golden"] = f.golden;
    j["check"] = f.check;
    Runner r(f, opts);
    Json expect = f.spec.value("expect", Json::object());
    std::string message;
    bool pass = true;
    try {
        r.run();
        for (auto& [k, v] : expect.items()) {
            if (k == "error") {
                pass = false;
                message = "expected error " + v.get<std::string>();
                continue;
            }
            if (!r.details.contains(k) || !matches(v, r.details[k])) {
                pass = false;
                if (!message.empty()) message += "; ";
                message += k + " mismatch";
            }
        }
    } catch (const CorpusLoadError&) {
        throw;
    } catch (const std::exception& e) {
        std::string name = error_name(e);
        r.details["error"] = name;
        if (expect.value("error", "") == name) {
            pass = true;
        } else {
            pass = false;
            message = name + ": " + e.what();
        }
    }
    j["status"] = !f.golden ? "skipped" : pass ? "pass" : "fail";
    j["details"] = r.details;
    j["message"] = message;
    return j;
}

Json run_corpus(const std::vector<Fixture>& fixtures, const CorpusOptions& opts) {
    std::vector<const Fixture*> sel;
    for (auto& f : fixtures)
        if (opts.filter.empty() || f.name.find(opts.filter) != std::string::npos || f.group.find(opts.filter) != std::string::npos)
            sel.push_back(&f);
    const int n = static_cast<int>(sel.size());
    std::vector<Json> results(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
    for (int k = 0; k < n; ++k) {
        try {
            results[k] = run_fixture(*sel[k], opts);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    Json report;
    report["fixtures"] = Json::array();
    int passed = 0, failed = 0, skipped = 0;
    for (auto& r : results) {
        std::string s = r["status"];
        passed += s == "pass";
        failed += s == "fail";
        skipped += s == "skipped";
        report["fixtures"].push_back(std::move(r));
    }
    report["summary"] = {{"total", n}, {"passed", passed}, {"failed", failed}, {"skipped", skipped}};
    return report;
}

} // namespace folia
