#pragma once

#include <random>
#include <string>

#include "folia/fields.hpp"

namespace folia {

/// Random planar field of degree <= 3, singular at the origin, built so that
/// every singular point met during resolution has Gaussian-rational coordinates.
struct GeneratedField {
    VectorField field;
    std::string family;  // elementary | log_lines | cusp | dicritical
};
GeneratedField random_seidenberg_field(std::mt19937_64& rng);

} // namespace folia
