#include "koszul/deformation/dgla.hpp"

#include <stdexcept>

namespace koszul {

namespace {

Scalar sgn(long e) { return sign_power(e); }

}  // namespace

void CochainComplex::validate() const {
    const std::size_t n = degrees.size();
    if (d.rows() != n || d.cols() != n) throw std::invalid_argument("complex: differential has the wrong shape");
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (!d.at(i, j).is_zero() && degrees[i] != degrees[j] + 1)
                throw std::invalid_argument("complex: differential does not raise degree by one");
    if (!(d * d).is_zero()) throw std::invalid_argument("complex: d^2 != 0");
}

std::vector<std::size_t> CochainComplex::basis_of_degree(int p) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        if (degrees[i] == p) out.push_back(i);
    return out;
}

Cohomology cohomology_basis(const CochainComplex& c, int degree) {
    c.validate();
    const std::size_t n = c.degrees.size();
    Cohomology h;
    h.degree = degree;
    h.d = c.d;

    // Cocycles in degree p: kernel of d restricted to the degree-p block.
    auto block = c.basis_of_degree(degree);
    std::vector<Vec> cols;
    for (auto j : block) cols.push_back(c.d.column(j));
    std::vector<Vec> cocycles;
    for (const auto& k : kernel(Matrix::from_columns(cols, n))) {
        Vec z(n);
        for (std::size_t t = 0; t < block.size(); ++t) z[block[t]] = k[t];
        cocycles.push_back(std::move(z));
    }
    std::vector<Vec> boundaries;
    for (auto j : c.basis_of_degree(degree - 1)) boundaries.push_back(c.d.column(j));
    auto bmat = Matrix::from_columns(boundaries, n);
    std::vector<Vec> basis;
    for (auto j : independent_columns(bmat)) basis.push_back(boundaries[j]);
    h.boundary_rank = basis.size();
    std::vector<Vec> all = basis;
    all.insert(all.end(), cocycles.begin(), cocycles.end());
    for (auto j : independent_columns(Matrix::from_columns(all, n)))
        if (j >= h.boundary_rank) h.representatives.push_back(all[j]);
    std::vector<Vec> final_cols = basis;
    final_cols.insert(final_cols.end(), h.representatives.begin(), h.representatives.end());
    h.boundary_then_reps = Matrix::from_columns(final_cols, n);
    return h;
}

Vec Cohomology::project(const Vec& cocycle) const {
    if (!is_zero(d.apply(cocycle))) throw std::invalid_argument("cohomology: not a cocycle");
    auto x = solve(boundary_then_reps, cocycle);
    if (!x) throw std::invalid_argument("cohomology: element is not in the cocycle space of this degree");
    return Vec(x->begin() + static_cast<long>(boundary_rank), x->end());
}

std::shared_ptr<const FiniteDGLA> FiniteDGLA::make(Spec spec) {
    auto out = std::shared_ptr<FiniteDGLA>(new FiniteDGLA());
    const std::size_t n = spec.basis.size();
    if (n == 0) throw std::invalid_argument("dgla: empty basis");
    if (!spec.differential.empty() && spec.differential.size() != n)
        throw std::invalid_argument("dgla: differential must list every basis element");
    std::vector<int> degrees;
    for (const auto& g : spec.basis) degrees.push_back(g.degree);
    auto deg = [&](std::size_t i) { return degrees[i]; };

    out->complex_.degrees.resize(n);
    for (std::size_t i = 0; i < n; ++i) out->complex_.degrees[i] = deg(i);
    out->complex_.d = Matrix(n, n);
    for (std::size_t j = 0; j < spec.differential.size(); ++j)
        for (const auto& [i, c] : spec.differential[j]) {
            if (i >= n) throw std::invalid_argument("dgla: differential index out of range");
            out->complex_.d.at(i, j) = c;
        }
    out->complex_.validate();

    out->table_.assign(n, std::vector<Sparse>(n));
    std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
    for (const auto& [ij, v] : spec.bracket) {
        auto [i, j] = ij;
        if (i >= n || j >= n) throw std::invalid_argument("dgla: bracket index out of range");
        Sparse clean;
        for (const auto& [t, c] : v) {
            if (t >= n) throw std::invalid_argument("dgla: bracket index out of range");
            if (c.is_zero()) continue;
            if (deg(t) != deg(i) + deg(j))
                throw std::invalid_argument("dgla: bracket [" + spec.basis[i].name + "," + spec.basis[j].name +
                                            "] has the wrong degree");
            clean[t] = c;
        }
        out->table_[i][j] = clean;
        given[i][j] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!given[i][j] || given[j][i]) continue;
            Sparse mirror;
            const Scalar s = -sgn(static_cast<long>(deg(i)) * deg(j));
            for (const auto& [t, c] : out->table_[i][j]) mirror[t] = s * c;
            out->table_[j][i] = mirror;
            given[j][i] = true;
        }
    out->spec_ = std::move(spec);

    const FiniteDGLA& L = *out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Vec a = L.unit_vector(i), b = L.unit_vector(j);
            Vec ab = L.bracket(a, b), ba = L.bracket(b, a);
            if (!is_zero(ab + sgn(static_cast<long>(deg(i)) * deg(j)) * ba))
                throw std::invalid_argument("dgla: bracket is not graded antisymmetric on (" + L.name(i) + ", " +
                                            L.name(j) + ")");
            Vec lhs = L.d(ab), rhs = L.bracket(L.d(a), b) + sgn(deg(i)) * L.bracket(a, L.d(b));
            if (!is_zero(lhs - rhs))
                throw std::invalid_argument("dgla: d is not a derivation on (" + L.name(i) + ", " + L.name(j) + ")");
            for (std::size_t k = 0; k < n; ++k) {
                Vec c = L.unit_vector(k);
                Vec jac = L.bracket(a, L.bracket(b, c)) - L.bracket(L.bracket(a, b), c) -
                          sgn(static_cast<long>(deg(i)) * deg(j)) * L.bracket(b, L.bracket(a, c));
                if (!is_zero(jac))
                    throw std::invalid_argument("dgla: Jacobi fails on (" + L.name(i) + ", " + L.name(j) + ", " +
                                                L.name(k) + ")");
            }
        }
    return out;
}

std::vector<std::size_t> FiniteDGLA::basis_of_degree(int p) const { return complex_.basis_of_degree(p); }

bool FiniteDGLA::is_abelian() const {
    for (const auto& row : table_)
        for (const auto& v : row)
            if (!v.empty()) return false;
    return true;
}

Vec FiniteDGLA::unit_vector(std::size_t i) const {
    Vec v(dimension());
    v.at(i) = Scalar(1);
    return v;
}

Vec FiniteDGLA::d(const Vec& a) const { return complex_.d.apply(a); }

Vec FiniteDGLA::bracket(const Vec& a, const Vec& b) const {
    Vec out(dimension());
    std::vector<std::size_t> nb;
    for (std::size_t j = 0; j < b.size(); ++j)
        if (!b[j].is_zero()) nb.push_back(j);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (auto j : nb) {
            const Scalar c = a[i] * b[j];
            for (const auto& [t, v] : table_[i][j]) out[t] += c * v;
        }
    }
    return out;
}

std::string FiniteDGLA::format(const Vec& v) const {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += v[i].is_one() ? name(i) : v[i].to_string() + "*" + name(i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace koszul
