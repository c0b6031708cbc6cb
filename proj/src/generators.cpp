#include "folia/generators.hpp"

namespace folia {

namespace {

const VarList kXY{"x", "y"};

GaussianRational small(std::mt19937_64& rng, bool nonzero = false) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    int n = num(rng);
    while (nonzero && n == 0) n = num(rng);
    return GaussianRational::fraction(n, den(rng));
}

Poly mono(int i, int j, const GaussianRational& c) { return Poly::monomial(kXY, {i, j, 0}, c); }

Poly random_homogeneous(std::mt19937_64& rng, int d) {
    Poly p(kXY);
    for (int i = 0; i <= d; ++i) p += mono(i, d - i, small(rng));
    return p;
}

Poly line(const GaussianRational& a) { return mono(0, 1, 1) - mono(1, 0, a); }  // y - a x

// Distinct rational slopes.
std::vector<GaussianRational> slopes(std::mt19937_64& rng, int k) {
    std::vector<GaussianRational> out;
    while (static_cast<int>(out.size()) < k) {
        GaussianRational a = small(rng);
        bool fresh = true;
        for (auto& b : out)
            if (b == a) fresh = false;
        if (fresh) out.push_back(a);
    }
    return out;
}

// Homogeneous (A, B) of degree d with x B - y A = C, where C has no y^(d+1) ... x-free term
// forced by the choice of A's pure y^d coefficient.
std::pair<Poly, Poly> with_tangent_cone(std::mt19937_64& rng, int d, const Poly& C) {
    Poly A = random_homogeneous(rng, d);
    GaussianRational top = C.coeff({0, d + 1, 0});
    A -= mono(0, d, A.coeff({0, d, 0}));
    A += mono(0, d, -top);
    Poly num = mono(0, 1, 1) * A + C;  // divisible by x by construction
    return {A, num.unshift({1, 0, 0})};
}

GeneratedField elementary(std::mt19937_64& rng) {
    GaussianRational l1 = small(rng, true), l2 = small(rng, true);
    Poly a = mono(1, 0, l1) + random_homogeneous(rng, 2) + random_homogeneous(rng, 3);
    Poly b = mono(0, 1, l2) + mono(1, 0, small(rng)) + random_homogeneous(rng, 2) + random_homogeneous(rng, 3);
    return {VectorField::from_polys(kXY, {a, b}), "elementary"};
}

GeneratedField log_lines(std::mt19937_64& rng) {
    auto a = slopes(rng, 3);
    Poly C = line(a[0]) * line(a[1]) * line(a[2]) * small(rng, true);
    auto [A, B] = with_tangent_cone(rng, 2, C);
    A += random_homogeneous(rng, 3);
    B += random_homogeneous(rng, 3);
    return {VectorField::from_polys(kXY, {A, B}), "log_lines"};
}

GeneratedField cusp(std::mt19937_64& rng) {
    // 2y dx + 3x^2 dy plus terms of higher quasi-homogeneous degree for weights (2, 3).
    Poly A = mono(0, 1, 2), B = mono(2, 0, 3);
    for (auto [i, j] : {std::pair{2, 0}, {1, 1}, {0, 2}, {3, 0}, {2, 1}})
        if (rng() % 2) A += mono(i, j, small(rng));
    for (auto [i, j] : {std::pair{1, 1}, {3, 0}, {0, 2}, {2, 1}, {1, 2}, {0, 3}})
        if (rng() % 2) B += mono(i, j, small(rng));
    return {VectorField::from_polys(kXY, {A, B}), "cusp"};
}

GeneratedField dicritical(std::mt19937_64& rng) {
    GaussianRational alpha = small(rng), beta = small(rng, true);
    Poly h = mono(1, 0, alpha) + mono(0, 1, beta);
    auto a = slopes(rng, 4);
    if (rng() % 2) a[0] = -alpha / beta;  // put a singular point on the dicritical divisor
    bool distinct = true;
    for (int i = 1; i < 4; ++i)
        if (a[i] == a[0]) distinct = false;
    if (!distinct) a[0] = slopes(rng, 1)[0] + GaussianRational(7);
    Poly Q = line(a[0]) * line(a[1]) * line(a[2]) * line(a[3]) * small(rng, true);
    auto [A3, B3] = with_tangent_cone(rng, 3, Q);
    Poly A = h * mono(1, 0, 1) + A3, B = h * mono(0, 1, 1) + B3;
    return {VectorField::from_polys(kXY, {A, B}), "dicritical"};
}

} // namespace

GeneratedField random_seidenberg_field(std::mt19937_64& rng) {
    switch (rng() % 4) {
    case 0: return elementary(rng);
    case 1: return log_lines(rng);
    case 2: return cusp(rng);
    default: return dicritical(rng);
    }
}

} // namespace folia
