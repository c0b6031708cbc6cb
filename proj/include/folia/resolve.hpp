#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folia/blowup.hpp"
#include "folia/classify.hpp"

namespace folia {

enum class TreeStatus { Resolved, BudgetExhausted, PersistentNilpotentPending };
std::string to_string(TreeStatus s);

struct TreeNode {
    int id = 0;
    int parent = -1;                   // -1 for the root chart
    int site = -1;                     // index into ResolutionTree::centres of the blown-up centre
    VectorField field;                 // saturated representative in this chart
    int divisor_var = -1;              // -1 at the root
    int divisor_multiplicity = 0;
    int pole_order = 0;
    bool dicritical = false;
    std::vector<int> scan_vars;        // free coordinates searched on the divisor; the rest are set to 0
};

/// A blown-up centre, seen from the chart it lives in.
struct BlowupCentre {
    int node = 0;                      // chart holding the centre
    std::vector<GaussianRational> at;  // translation applied before blowing up
    CenterKind kind = CenterKind::Point;
    int free_var = -1;                 // axis of a curve centre
    bool whole_axis = false;           // curve centre taken over the whole affine line, not as a germ
    std::vector<int> weights;          // per blown variable (variable order)
    int label = 0;
    std::string tag;                   // classification of the centre
    bool weighted() const;
};

struct DivisorComponent {
    int label = 0;
    std::optional<int> weight;         // self-intersection, dimension 2 only
    bool dicritical = false;
    bool weighted = false;
};

struct CsIndex {
    int label = 0;
    GaussianRational value;
};

/// A singular point of a leaf foliation, located in one chart.
struct LocatedPoint {
    int node = 0;
    bool exact = true;
    std::vector<GaussianRational> coords;  // valid when exact
    std::vector<ComplexBox> boxes;         // one per coordinate when !exact
    std::vector<int> components;           // divisor labels through the point
    SingularityReport report;
    bool pending = false;                  // left unresolved (budget, escape failure, nonrational)
    std::vector<CsIndex> cs;               // Camacho-Sad indices, dimension 2
};

/// Singular line kept in the final model because its generic point is elementary.
struct ElementaryCurve {
    int node = 0;
    int axis = 0;
    std::vector<GaussianRational> through;
};

struct ResolutionTree {
    int dim = 0;
    std::vector<TreeNode> nodes;
    std::vector<BlowupCentre> centres;
    std::vector<DivisorComponent> components;
    std::vector<LocatedPoint> singular_points;
    std::vector<ElementaryCurve> curves;
    TreeStatus status = TreeStatus::Resolved;
    std::vector<std::string> diagnostics;

    int blowups() const { return static_cast<int>(centres.size()); }
    int weighted_blowups() const;
    const DivisorComponent& component(int label) const;
};

/// Singular points of a chart, searched on its `scan_vars` (other coordinates 0).
std::vector<LocatedPoint> singular_points_on_divisor(const TreeNode& node);

ResolutionTree seidenberg_resolve(const VectorField& X, int max_steps);

struct NormalFormWitness {
    int stage = 0;
    std::vector<BlowupRecord> chain;   // preparatory blow-ups, oldest first
    std::vector<GaussianRational> at;  // translation of the last chart
    int var_x = 0, var_y = 1, var_z = 2;  // chart variables playing X, Y, Z
    GaussianRational a, c;             // dX = a Y + f, dZ = c Z^n before scaling
    Poly f, g;                         // scaled, over {X, Y, Z}
    int ord_f = -1, ord_g = -1;        // -1 = identically zero
    std::optional<int> ord_fz, ord_gz; // nullopt = infinite
    int n = 0;
    int threshold = 0;                 // accepted when ord_z > threshold (2n minus the slack)
    bool strict = false;               // both z-orders exceed 2n
};

struct PersistentNilpotentReport {
    bool matched = false;
    int n = 0;
    std::optional<NormalFormWitness> witness;
    std::string note;
};

/// Syntactic match of (Y + f) dX + g dY + c Z^n dZ at the origin, variables permuted.
std::optional<NormalFormWitness> match_normal_form(const VectorField& X, int order_slack = 2);
/// Re-check the order conditions recorded in a witness.
bool verify_witness(const NormalFormWitness& w);

PersistentNilpotentReport detect_persistent_nilpotent(const VectorField& X, int probe_budget, int order_slack = 2);

struct Resolve3Options {
    int max_steps = 40;
    bool allow_weighted = true;
    int order_slack = 2;
};
ResolutionTree resolve3(const VectorField& X, int max_steps);
ResolutionTree resolve3(const VectorField& X, const Resolve3Options& opts);

/// Sum of Camacho-Sad indices per compact invariant component; only components
/// whose points all carry exact indices are listed.
std::map<int, GaussianRational> camacho_sad_sums(const ResolutionTree& tree);

enum class TreeFormat { Json, Dot };
std::string emit_tree(const ResolutionTree& tree, TreeFormat format);

} // namespace folia
