#pragma once

#include <optional>
#include <string>
#include <vector>

#include "folia/fields.hpp"
#include "folia/upoly.hpp"

namespace folia {

enum class SingularClass { Regular, ElementaryNondegenerate, SaddleNode, Nilpotent, ZeroLinearPart };
enum class DomainPosition { Siegel, Poincare, SiegelBoundary, Undecided };

struct EigenData {
    UPoly char_poly;
    std::vector<Root> roots;

    bool all_exact() const;
    /// Eigenvalues repeated by multiplicity; only valid when all_exact().
    std::vector<GaussianRational> exact_values() const;
    int zero_multiplicity() const;
};

struct SingularityReport {
    SingularClass cls = SingularClass::Regular;
    int saddle_node_rank = 0;
    LinearPart linear;
    EigenData eigen;
    std::optional<int> resonance_rank;  // nullopt = undecided
    DomainPosition position = DomainPosition::Undecided;
    bool second_jet_nonzero = false;

    bool elementary() const {
        return cls == SingularClass::ElementaryNondegenerate || cls == SingularClass::SaddleNode;
    }
    bool singular() const { return cls != SingularClass::Regular; }
    std::string tag() const;
};

/// det(tI - L), monic.
UPoly char_poly(const LinearPart& L);
EigenData eigen_solve(const UPoly& p);
SingularityReport classify_singularity(const VectorField& X);

std::optional<int> resonance_rank(const std::vector<GaussianRational>& lambda);
std::optional<int> resonance_rank(const EigenData& e);

/// lambda_i = sum_j I_j lambda_j with I_j >= 0 and 2 <= |I| <= bound. `index` is 1-based.
struct ResonantRelation {
    int index;
    std::vector<int> I;
    friend bool operator==(const ResonantRelation&, const ResonantRelation&) = default;
};
std::vector<ResonantRelation> resonant_relations(const std::vector<GaussianRational>& lambda, int bound = 6);

DomainPosition siegel_test(const std::vector<GaussianRational>& lambda);
DomainPosition siegel_test(const EigenData& e);

bool second_jet_check(const VectorField& X);

std::string to_string(SingularClass c);
std::string to_string(DomainPosition p);

} // namespace folia
