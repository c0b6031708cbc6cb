// Command-line front end. Exit codes: 0 success, 1 negative result or failed
// analysis, 2 usage, parse or load error.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "folia/blowup.hpp"
#include "folia/corpus.hpp"
#include "folia/errors.hpp"
#include "folia/integrals.hpp"
#include "folia/resolve.hpp"
#include "folia/serialize.hpp"

using namespace folia;

namespace {

constexpr int kOk = 0, kNegative = 1, kUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// Plain number, or a multiple of pi written "0.5pi", "-pi".
double number(const std::string& tok) {
    std::string t = tok;
    double scale = 1;
    if (t.size() >= 2 && t.compare(t.size() - 2, 2, "pi") == 0) {
        scale = std::numbers::pi;
        t.resize(t.size() - 2);
        if (t.empty() || t == "+") t = "1";
        if (t == "-") t = "-1";
    }
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("bad number '" + tok + "'");
    }
    if (used != t.size()) throw UsageError("bad number '" + tok + "'");
    return v * scale;
}

std::vector<double> numbers(const std::string& s, size_t count, const std::string& what) {
    auto parts = split(s, ',');
    if (parts.size() != count) throw UsageError(what + " needs " + std::to_string(count) + " numbers");
    std::vector<double> v;
    for (auto& p : parts) v.push_back(number(p));
    return v;
}

// "re" or "re,im"
cplx complex_arg(const std::string& s) {
    auto parts = split(s, ',');
    if (parts.size() == 1) return {number(parts[0]), 0};
    if (parts.size() == 2) return {number(parts[0]), number(parts[1])};
    throw UsageError("bad complex number '" + s + "'");
}

PathSpec parse_path(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw UsageError("path needs the form kind:args");
    std::string kind = text.substr(0, colon), args = text.substr(colon + 1);
    if (kind == "segment") {
        auto v = numbers(args, 4, "segment");
        return PathSpec::segment({v[0], v[1]}, {v[2], v[3]});
    }
    if (kind == "arc") {
        auto v = numbers(args, 5, "arc");
        return PathSpec::arc({v[0], v[1]}, v[2], v[3], v[4]);
    }
    if (kind == "circle") {
        auto v = numbers(args, 3, "circle");
        return PathSpec::arc({v[0], v[1]}, v[2], 0, 2 * std::numbers::pi);
    }
    if (kind == "ray") {
        auto v = numbers(args, 3, "ray");
        return PathSpec::ray({v[0], v[1]}, v[2]);
    }
    if (kind == "spiral") {
        auto v = numbers(args, 6, "spiral");
        return PathSpec::log_spiral(v[0], v[1], {v[2], v[3]}, v[4], v[5]);
    }
    if (kind == "polyline") {
        std::vector<cplx> pts;
        for (auto& p : split(args, ';')) pts.push_back(complex_arg(p));
        if (pts.size() < 2) throw UsageError("polyline needs at least two points");
        return PathSpec::polyline(pts);
    }
    throw UsageError("unknown path kind '" + kind + "'");
}

ParsedSystem load(const std::string& file) { return load_system_file(file); }

VectorField load_field(const std::string& file) {
    auto s = load(file);
    if (s.kind != SystemKind::Field) throw UsageError(file + ": expected a vector field");
    return VectorField::from_polys(s.vars, s.components);
}

int var_index(const VectorField& X, const std::string& name) {
    auto& v = X.vars();
    auto it = std::find(v.begin(), v.end(), name);
    if (it == v.end()) throw UsageError("unknown variable '" + name + "'");
    return static_cast<int>(it - v.begin());
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::ofstream open_out(const std::string& file) {
    std::ofstream os(file);
    if (!os) throw UsageError("cannot write " + file);
    return os;
}

struct Globals {
    double tol_abs = Tolerances{}.abs;
    double tol_rel = Tolerances{}.rel;
    Tolerances tol() const { return {tol_abs, tol_rel}; }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Singular holomorphic foliations: classification, blow-ups, resolution, integrals, dynamics"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol-abs", g.tol_abs, "absolute tolerance for numeric integration")->capture_default_str();
    app.add_option("--tol-rel", g.tol_rel, "relative tolerance for numeric integration")->capture_default_str();

    std::function<int()> action;

    // render
    auto* render = app.add_subcommand("render", "parse a field file and print its canonical form");
    std::string render_file;
    render->add_option("file", render_file)->required();
    render->callback([&] {
        action = [&] {
            std::cout << render_system(load(render_file));
            return kOk;
        };
    });

    // classify
    auto* classify = app.add_subcommand("classify", "classify the singular point at the origin");
    std::string classify_file;
    classify->add_option("file", classify_file)->required();
    classify->callback([&] {
        action = [&] {
            auto X = load_field(classify_file);
            Json j;
            j["field"] = to_json(X);
            j["report"] = to_json(classify_singularity(X));
            print(j);
            return kOk;
        };
    });

    // blowup
    auto* blowup = app.add_subcommand("blowup", "blow up a point or a coordinate axis at the origin");
    std::string blowup_file, centre = "point", chart_var, free_var;
    std::vector<int> weights;
    bool all_charts = false;
    blowup->add_option("file", blowup_file)->required();
    blowup->add_option("--center", centre, "point or curve")->check(CLI::IsMember({"point", "curve"}))->capture_default_str();
    blowup->add_option("--chart-var", chart_var, "divisor coordinate of the chart");
    blowup->add_option("--free-var", free_var, "axis of a curve centre");
    blowup->add_option("--weights", weights, "one weight per blown-up variable")->delimiter(',');
    blowup->add_flag("--all-charts", all_charts, "every chart of the blow-up");
    blowup->callback([&] {
        action = [&] {
            auto X = load_field(blowup_file);
            BlowupSpec s;
            if (centre == "curve") {
                if (free_var.empty()) throw UsageError("--free-var is required for a curve centre");
                s.center = CenterKind::Curve;
                s.free_var = var_index(X, free_var);
            }
            s.weights = weights;
            s.chart_var = chart_var.empty() ? blown_variables(s, X.dim()).front() : var_index(X, chart_var);
            bool weighted = std::any_of(weights.begin(), weights.end(), [](int w) { return w != 1; });
            auto one = [&](const BlowupSpec& sp) {
                if (weighted) return weighted_blowup(X, sp);
                return sp.center == CenterKind::Point ? blowup_point(X, sp) : blowup_curve(X, sp);
            };
            Json j;
            j["field"] = to_json(X);
            j["charts"] = Json::array();
            if (all_charts) {
                for (int v : blown_variables(s, X.dim())) {
                    BlowupSpec sp = s;
                    sp.chart_var = v;
                    j["charts"].push_back(to_json(one(sp)));
                }
            } else {
                j["charts"].push_back(to_json(one(s)));
            }
            print(j);
            return kOk;
        };
    });

    // resolve
    auto* resolve = app.add_subcommand("resolve", "resolve the singular point at the origin");
    std::string resolve_file;
    int dim = 0, max_steps = 40, probe_budget = 6;
    bool dot = false, no_weighted = false;
    resolve->add_option("file", resolve_file)->required();
    resolve->add_option("--dim", dim, "2 or 3; defaults to the file's dimension")->check(CLI::IsMember({2, 3}));
    resolve->add_option("--max-steps", max_steps, "blow-up budget")->capture_default_str();
    resolve->add_option("--probe-budget", probe_budget, "probe blow-ups for persistent-nilpotent detection (dimension 3)")
        ->capture_default_str();
    resolve->add_flag("--no-weighted", no_weighted, "standard blow-ups only (dimension 3)");
    resolve->add_flag("--dot", dot, "print the tree as DOT");
    resolve->callback([&] {
        action = [&] {
            auto X = load_field(resolve_file);
            int d = dim ? dim : X.dim();
            if (d != X.dim()) throw UsageError("--dim " + std::to_string(d) + " does not match the file");
            ResolutionTree t;
            if (d == 2) {
                t = seidenberg_resolve(X, max_steps);
            } else {
                Resolve3Options o;
                o.max_steps = max_steps;
                o.allow_weighted = !no_weighted;
                t = resolve3(X, o);
            }
            if (dot) {
                std::cout << emit_tree(t, TreeFormat::Dot);
            } else {
                Json j = Json::parse(emit_tree(t, TreeFormat::Json));
                if (d == 3 && classify_singularity(X).cls == SingularClass::Nilpotent) {
                    auto r = detect_persistent_nilpotent(X, probe_budget);
                    j["persistent_nilpotent"] = {{"matched", r.matched}, {"n", r.n}, {"note", r.note}};
                }
                print(j);
            }
            return t.status == TreeStatus::Resolved ? kOk : kNegative;
        };
    });

    // integrals
    auto* integrals = app.add_subcommand("integrals", "check first integrals and solve for formal ones");
    std::string integrals_file;
    int jet_degree = 8;
    std::vector<std::string> candidates;
    integrals->add_option("file", integrals_file)->required();
    integrals->add_option("--jet-degree", jet_degree, "truncation order of the formal solve")->capture_default_str();
    integrals->add_option("--integral", candidates, "candidate first integral (repeatable)");
    integrals->callback([&] {
        action = [&] {
            auto X = load_field(integrals_file);
            Json j;
            j["field"] = to_json(X);
            j["candidates"] = Json::array();
            std::vector<Poly> fs;
            bool all = true;
            for (auto& c : candidates) {
                fs.push_back(parse_poly(c, X.vars()));
                bool ok = verify_first_integral(X, fs.back());
                all = all && ok;
                j["candidates"].push_back({{"integral", fs.back().str()}, {"invariant", ok}});
            }
            if (fs.size() == 2) j["independent"] = independence_check(fs[0], fs[1]);
            try {
                j["formal"] = to_json(formal_first_integral(X, jet_degree));
            } catch (const NotApplicableError& e) {
                j["formal"] = nullptr;
                j["note"] = e.what();
            }
            print(j);
            return all ? kOk : kNegative;
        };
    });

    // dynamics
    auto* dynamics = app.add_subcommand("dynamics", "numeric holonomy, time forms, lifts and descent curves");
    dynamics->require_subcommand(1);
    DynamicsConfig cfg;
    std::string dyn_file, base, csv;
    auto add_common = [&](CLI::App* sub, bool with_base) {
        sub->add_option("file", dyn_file)->required();
        if (with_base) sub->add_option("--base", base, "base coordinate; defaults to the last variable");
        sub->add_option("--csv", csv, "write samples to this CSV file");
    };

    auto* holo = dynamics->add_subcommand("holonomy", "lift a small loop around the origin of the base coordinate");
    add_common(holo, true);
    holo->add_option("--loop-radius", cfg.loop_radius, "loop radius")->capture_default_str();
    holo->add_option("--fiber-seed", cfg.fiber_seed, "starting fiber value")->capture_default_str();
    holo->add_option("--min-samples", cfg.min_samples, "recorded samples")->capture_default_str();
    holo->callback([&] {
        action = [&] {
            cfg.tol = g.tol();
            auto X = load_field(dyn_file);
            int b = base.empty() ? X.dim() - 1 : var_index(X, base);
            auto h = holonomy(X, b, cfg);
            if (!csv.empty()) {
                auto os = open_out(csv);
                write_csv(os, X.vars(), h.lift.samples);
            }
            Json j = to_json(h);
            j["base"] = X.vars()[b];
            j["loop_radius"] = cfg.loop_radius;
            j["fiber_seed"] = cfg.fiber_seed;
            print(j);
            return h.lift.escaped ? kNegative : kOk;
        };
    });

    auto* semi = dynamics->add_subcommand("semicomplete", "order rule for a one-dimensional field");
    add_common(semi, false);
    semi->callback([&] {
        action = [&] {
            auto s = load(dyn_file);
            if (s.vars.size() != 1) throw UsageError("semicomplete needs a one-variable field");
            print(to_json(semicomplete_order_test(s.components[0], g.tol())));
            return kOk;
        };
    });

    std::string path_text;
    auto* tform = dynamics->add_subcommand("time-form", "integral of dx / X(x) along a path");
    add_common(tform, false);
    tform->add_option("--path", path_text, "segment:a,b,c,d | arc:cx,cy,r,t0,t1 | circle:cx,cy,r | polyline:x,y;...")
        ->required();
    tform->callback([&] {
        action = [&] {
            auto s = load(dyn_file);
            if (s.vars.size() != 1) throw UsageError("time-form needs a one-variable field");
            print(to_json(time_form_integral(s.components[0], parse_path(path_text), g.tol())));
            return kOk;
        };
    });

    std::vector<std::string> fiber;
    auto* lift = dynamics->add_subcommand("lift", "lift a path in the base coordinate to a leaf");
    add_common(lift, true);
    lift->add_option("--path", path_text, "path in the base coordinate (see time-form; also ray:a,b,T and spiral:eps,y,vr,vi,t0,t1)")
        ->required();
    lift->add_option("--fiber", fiber, "starting value re[,im] of each other coordinate, in variable order")->required();
    lift->add_option("--min-samples", cfg.min_samples, "recorded samples")->capture_default_str();
    lift->add_option("--domain-radius", cfg.domain_radius, "fiber escape radius")->capture_default_str();
    lift->callback([&] {
        action = [&] {
            cfg.tol = g.tol();
            auto X = load_field(dyn_file);
            int b = base.empty() ? X.dim() - 1 : var_index(X, base);
            std::vector<cplx> f;
            for (auto& s : fiber) f.push_back(complex_arg(s));
            auto r = lift_path(X, b, parse_path(path_text), f, cfg);
            if (!csv.empty()) {
                auto os = open_out(csv);
                write_csv(os, X.vars(), r.samples);
            }
            print(to_json(r));
            return r.escaped ? kNegative : kOk;
        };
    });

    std::string F_text, H_text, var = "x", start_text;
    double theta = 0, t_max = 1;
    int samples = 256;
    auto* trace = dynamics->add_subcommand("trace", "descent curve of the form (H / F) dx");
    trace->add_option("--F", F_text, "denominator F(x)")->required();
    trace->add_option("--H", H_text, "numerator H(x)")->required();
    trace->add_option("--var", var, "variable name")->capture_default_str();
    trace->add_option("--theta", theta, "angle to the Im = 0 direction, |theta| < pi/2")->capture_default_str();
    trace->add_option("--start", start_text, "starting point re[,im]")->required();
    trace->add_option("--t-max", t_max, "arc length")->capture_default_str();
    trace->add_option("--samples", samples, "recorded samples")->capture_default_str();
    trace->add_option("--csv", csv, "write the trajectory to this CSV file");
    trace->callback([&] {
        action = [&] {
            cfg.tol = g.tol();
            VarList v{var};
            auto tr = trace_descent(parse_poly(F_text, v), parse_poly(H_text, v), theta, complex_arg(start_text), t_max,
                                    samples, cfg);
            if (!csv.empty()) {
                auto os = open_out(csv);
                write_csv(os, var, tr);
            }
            print(to_json(tr));
            return kOk;
        };
    });

    // corpus
    auto* corpus = app.add_subcommand("corpus", "run the example corpus");
    std::string corpus_dir = "corpus", report_file;
    CorpusOptions copts;
    bool serial = false;
    corpus->add_option("--dir", corpus_dir, "fixture directory")->capture_default_str();
    corpus->add_option("--filter", copts.filter, "keep fixtures whose name or group contains this");
    corpus->add_option("--max-steps", copts.max_steps, "blow-up budget")->capture_default_str();
    corpus->add_option("--probe-budget", copts.probe_budget, "persistent-nilpotent probe budget")->capture_default_str();
    corpus->add_option("--jet-degree", copts.jet_degree, "largest formal jet degree")->capture_default_str();
    corpus->add_option("--report", report_file, "also write the report to this file");
    corpus->add_flag("--serial", serial, "run fixtures one at a time");
    corpus->callback([&] {
        action = [&] {
            copts.dynamics.tol = g.tol();
            copts.parallel = !serial;
            auto report = run_corpus(load_corpus(corpus_dir), copts);
            if (!report_file.empty()) open_out(report_file) << report.dump(2) << "\n";
            print(report);
            return report["summary"]["failed"].get<int>() == 0 ? kOk : kNegative;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    try {
        return action();
    } catch (const CorpusLoadError& e) {
        std::cerr << "load error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNegative;
    }
}
