#pragma once

#include <json.hpp>

#include "folia/blowup.hpp"
#include "folia/classify.hpp"
#include "folia/dynamics.hpp"
#include "folia/integrals.hpp"

namespace folia {

using Json = nlohmann::ordered_json;

Json to_json(const GaussianRational& c);
/// [lo_re, hi_re, lo_im, hi_im]
Json to_json(const ComplexBox& b);
Json to_json(const Root& r);
Json to_json(const EigenData& e);
Json to_json(const LinearPart& L);
Json to_json(const SingularityReport& r);
Json to_json(const VectorField& X);
Json to_json(const JetSolutionSpace& J);
Json to_json(const TransformResult& r);
/// [re, im]
Json to_json(cplx z);
Json to_json(const QuadResult& q);
Json to_json(const SemicompleteReport& r);
/// Summary only: final point, sample count, error estimate, escape flag.
Json to_json(const LiftResult& r);
Json to_json(const HolonomyEstimate& h);
Json to_json(const Trajectory& t);

} // namespace folia
