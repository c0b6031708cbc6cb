#include "folia/integrals.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "folia/errors.hpp"

namespace folia {

bool verify_first_integral(const VectorField& X, const Poly& F) {
    return directional_derivative(X, F).is_zero();
}

std::vector<Exponent> jet_monomials(int nvars, int N) {
    std::vector<Exponent> out;
    for (int d = 1; d <= N; ++d) {
        std::vector<Exponent> layer;
        if (nvars == 1) {
            layer.push_back({d, 0, 0});
        } else if (nvars == 2) {
            for (int a = d; a >= 0; --a) layer.push_back({a, d - a, 0});
        } else {
            for (int a = d; a >= 0; --a)
                for (int b = d - a; b >= 0; --b) layer.push_back({a, b, d - a - b});
        }
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

bool jet_residual_zero(const VectorField& X, const Poly& F, int N) {
    return directional_derivative(X, F).jet(N).is_zero();
}

JetSolutionSpace formal_first_integral(const VectorField& X, int N) {
    if (N < 1) throw NotApplicableError("jet degree must be at least 1");
    auto P = X.polys();
    for (auto& p : P)
        if (!p.constant_term().is_zero()) throw NotApplicableError("formal first integrals are computed at a singular point");
    int n = X.dim();
    auto monos = jet_monomials(n, N);
    std::map<Exponent, int> index;
    for (size_t k = 0; k < monos.size(); ++k) index[monos[k]] = static_cast<int>(k);
    int m = static_cast<int>(monos.size());

    // Column k holds jet_N(X . monos[k]); X(0) = 0 keeps the image in degrees 1..N.
    Matrix A(m, std::vector<GaussianRational>(m));
    for (int k = 0; k < m; ++k) {
        Poly img = directional_derivative(X, Poly::monomial(X.vars(), monos[k])).jet(N);
        for (auto& [e, c] : img.terms()) A[index.at(e)][k] = c;
    }

    JetSolutionSpace out;
    out.degree = N;
    // The map never lowers degree, so the order-d problem is the leading block.
    int cnt = 0;
    for (int d = 1; d <= N; ++d) {
        while (cnt < m && total_degree(monos[cnt]) <= d) ++cnt;
        Matrix B(cnt, std::vector<GaussianRational>(cnt));
        for (int i = 0; i < cnt; ++i)
            for (int j = 0; j < cnt; ++j) B[i][j] = A[i][j];
        out.dims_by_degree.push_back(cnt - rank(std::move(B)));
    }

    auto kernel = nullspace(A);
    if (kernel.empty()) return out;
    Matrix K(kernel.begin(), kernel.end());
    rref(K);
    for (auto& row : K) {
        Poly::TermMap t;
        for (int k = 0; k < m; ++k)
            if (!row[k].is_zero()) t.emplace(monos[k], row[k]);
        if (t.empty()) continue;
        out.basis.emplace_back(X.vars(), std::move(t));
    }
    return out;
}

bool independence_check(const Poly& F, const Poly& G) {
    if (F.vars() != G.vars()) throw StructuralError("functions on different charts");
    int n = F.nvars();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(F.derivative(i) * G.derivative(j) - F.derivative(j) * G.derivative(i)).is_zero()) return true;
    return false;
}

FactoredFunction::FactoredFunction(std::vector<std::pair<Poly, int>> fs) {
    for (auto& [p, e] : fs) {
        if (e < 1) throw DegenerateInputError("factor exponents must be positive");
        if (p.is_zero()) throw DegenerateInputError("zero factor");
        if (!factors.empty() && factors.front().first.vars() != p.vars())
            throw StructuralError("factors on different charts");
        auto it = std::find_if(factors.begin(), factors.end(), [&](auto& f) { return f.first == p; });
        if (it != factors.end())
            it->second += e;
        else
            factors.emplace_back(p, e);
    }
    std::sort(factors.begin(), factors.end(), [](auto& a, auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        return a.first.str() < b.first.str();
    });
}

Poly FactoredFunction::expand() const {
    if (factors.empty()) throw DegenerateInputError("empty factorisation");
    Poly acc = Poly::constant(factors.front().first.vars(), 1);
    for (auto& [p, e] : factors) acc *= p.pow(e);
    return acc;
}

int FactoredFunction::exponent_of(const Poly& f) const {
    for (auto& [p, e] : factors)
        if (p == f) return e;
    return 0;
}

namespace {

Poly product_except(const FactoredFunction& F, const Poly& skip, int power) {
    Poly acc = Poly::constant(F.factors.front().first.vars(), 1);
    for (auto& [p, e] : F.factors)
        if (p != skip) acc *= p.pow(e * power);
    return acc;
}

// Index of the coordinate when p = c * x_v.
std::optional<int> coordinate_of(const Poly& p) {
    if (p.terms().size() != 1) return std::nullopt;
    auto& e = p.terms().begin()->first;
    if (total_degree(e) != 1) return std::nullopt;
    for (int v = 0; v < kMaxVars; ++v)
        if (e[v] == 1) return v;
    return std::nullopt;
}

} // namespace

MeromorphicQuotient meromorphic_quotient(const FactoredFunction& F, const FactoredFunction& G, const Poly& shared) {
    if (F.factors.empty() || G.factors.empty()) throw DegenerateInputError("empty factorisation");
    if (F.factors.front().first.vars() != G.factors.front().first.vars())
        throw StructuralError("functions on different charts");
    int mf = F.exponent_of(shared), mg = G.exponent_of(shared);
    if (mf == 0 || mg == 0) throw NotApplicableError("factor " + shared.str() + " is not shared");
    int g = std::gcd(mf, mg);
    MeromorphicQuotient q;
    q.power_f = mg / g;
    q.power_g = mf / g;
    q.numerator = product_except(F, shared, q.power_f);
    q.denominator = product_except(G, shared, q.power_g);
    if (auto v = coordinate_of(shared)) {
        q.restricted_var = *v;
        q.restricted = std::pair{q.numerator.restrict_to(*v, 0), q.denominator.restrict_to(*v, 0)};
    }
    return q;
}

MeromorphicQuotient meromorphic_quotient(const FactoredFunction& F, const FactoredFunction& G, int shared_index) {
    if (shared_index < 0 || shared_index >= static_cast<int>(F.factors.size()))
        throw NotApplicableError("no factor at index " + std::to_string(shared_index));
    return meromorphic_quotient(F, G, F.factors[shared_index].first);
}

} // namespace folia
