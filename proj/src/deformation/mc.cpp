#include "koszul/deformation/mc.hpp"

#include <functional>
#include <stdexcept>

namespace koszul {

namespace {

void require_same_shape(const Series& a, const Series& b) {
    if (a.coeffs.size() != b.coeffs.size()) throw std::invalid_argument("series: truncation orders differ");
}

void require(const FiniteDGLA& L, const Series& a, int p, const char* what) {
    if (!a.in_maximal_ideal()) throw std::invalid_argument(std::string(what) + ": element has a constant term");
    if (!a.homogeneous(L, p))
        throw std::invalid_argument(std::string(what) + ": expected degree " + std::to_string(p));
}

bool homogeneous_vec(const FiniteDGLA& L, const Vec& v, int p) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero() && L.degree(i) != p) return false;
    return true;
}

// Bernoulli numbers B_0..B_n with B_1 = -1/2.
std::vector<Scalar> bernoulli(int n) {
    std::vector<Scalar> b(n + 1);
    b[0] = Scalar(1);
    for (int m = 1; m <= n; ++m) {
        Scalar s;
        for (int k = 0; k < m; ++k) s += binomial(m + 1, k) * b[k];
        b[m] = -s / Scalar(m + 1);
    }
    return b;
}

// Compositions of n into `parts` positive integers.
void compositions(int n, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (parts == 0) {
        if (n == 0) out.push_back(cur);
        return;
    }
    for (int k = 1; k <= n - (parts - 1); ++k) {
        cur.push_back(k);
        compositions(n - k, parts - 1, cur, out);
        cur.pop_back();
    }
}

Matrix columns_of(const FiniteDGLA& L, const std::vector<std::size_t>& idx, const std::function<Vec(const Vec&)>& f) {
    std::vector<Vec> cols;
    for (auto j : idx) cols.push_back(f(L.unit_vector(j)));
    return Matrix::from_columns(cols, L.dimension());
}

Vec embed(const FiniteDGLA& L, const std::vector<std::size_t>& idx, const Vec& coords, std::size_t offset = 0) {
    Vec v = L.zero();
    for (std::size_t t = 0; t < idx.size(); ++t) v[idx[t]] = coords[offset + t];
    return v;
}

}  // namespace

ArtinianBase::ArtinianBase(int m) : order(m) {
    if (m < 2) throw std::invalid_argument("ArtinianBase: truncation order must be at least 2");
}

Series Series::zero(const FiniteDGLA& L, const ArtinianBase& base) {
    return Series{std::vector<Vec>(static_cast<std::size_t>(base.order), L.zero())};
}

Series Series::monomial(const FiniteDGLA& L, const ArtinianBase& base, int power, const Vec& v) {
    Series s = zero(L, base);
    if (power < 0) throw std::invalid_argument("Series: negative power");
    if (power < base.order) s.coeffs[static_cast<std::size_t>(power)] = v;
    return s;
}

bool Series::is_zero() const {
    for (const auto& c : coeffs)
        if (!koszul::is_zero(c)) return false;
    return true;
}

bool Series::homogeneous(const FiniteDGLA& L, int p) const {
    for (const auto& c : coeffs)
        if (!homogeneous_vec(L, c, p)) return false;
    return true;
}

Series operator+(const Series& a, const Series& b) {
    require_same_shape(a, b);
    Series out = a;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] = a.coeffs[i] + b.coeffs[i];
    return out;
}

Series operator-(const Series& a, const Series& b) { return a + Scalar(-1) * b; }

Series operator*(const Scalar& c, const Series& a) {
    Series out = a;
    for (auto& v : out.coeffs) v = c * v;
    return out;
}

Series apply_d(const FiniteDGLA& L, const Series& a) {
    Series out = a;
    for (auto& v : out.coeffs) v = L.d(v);
    return out;
}

Series bracket(const FiniteDGLA& L, const Series& a, const Series& b) {
    require_same_shape(a, b);
    Series out{std::vector<Vec>(a.coeffs.size(), L.zero())};
    const std::size_t m = a.coeffs.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; i + j < m; ++j) out.coeffs[i + j] = out.coeffs[i + j] + L.bracket(a.coeffs[i], b.coeffs[j]);
    return out;
}

std::string format(const FiniteDGLA& L, const Series& a) {
    std::string out;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (koszul::is_zero(a.coeffs[i])) continue;
        if (!out.empty()) out += " + ";
        out += "t^" + std::to_string(i) + " * (" + L.format(a.coeffs[i]) + ")";
    }
    return out.empty() ? "0" : out;
}

Series mc_residual(const FiniteDGLA& L, const Series& x) {
    require(L, x, 1, "mc_residual");
    return apply_d(L, x) + Scalar(1, 2) * bracket(L, x, x);
}

Series gauge_act(const FiniteDGLA& L, const Series& lambda, const Series& x) {
    require(L, lambda, 0, "gauge_act");
    require(L, x, 1, "gauge_act");
    Series out = x;
    Series cur = bracket(L, lambda, x) - apply_d(L, lambda);
    // ad_lambda raises the t-order, so at most m terms survive.
    for (int n = 0; n < x.order() && !cur.is_zero(); ++n) {
        out = out + (Scalar(1) / factorial(n + 1)) * cur;
        cur = bracket(L, lambda, cur);
    }
    return out;
}

Series bch(const FiniteDGLA& L, const Series& a, const Series& b) {
    require(L, a, 0, "bch");
    require(L, b, 0, "bch");
    const int m = a.order();
    const auto B = bernoulli(m);
    const Series sum = a + b, diff = a - b;
    // Z_1 = a + b; (n+1) Z_{n+1} = 1/2 [a-b, Z_n]
    //   + sum_p B_2p/(2p)! sum_{k_1+..+k_2p = n} [Z_k1, [..., [Z_k2p, a+b]]]
    std::vector<Series> Z{Series::zero(L, ArtinianBase(m)), sum};
    for (int n = 1; n + 1 < m; ++n) {
        Series next = Scalar(1, 2) * bracket(L, diff, Z[static_cast<std::size_t>(n)]);
        for (int p = 1; 2 * p <= n; ++p) {
            std::vector<std::vector<int>> comps;
            std::vector<int> cur;
            compositions(n, 2 * p, cur, comps);
            const Scalar c = B[static_cast<std::size_t>(2 * p)] / factorial(2 * p);
            for (const auto& k : comps) {
                Series inner = sum;
                for (auto it = k.rbegin(); it != k.rend(); ++it) inner = bracket(L, Z[static_cast<std::size_t>(*it)], inner);
                next = next + c * inner;
            }
        }
        Z.push_back((Scalar(1) / Scalar(n + 1)) * next);
    }
    Series out = Series::zero(L, ArtinianBase(m));
    for (std::size_t i = 1; i < Z.size(); ++i) out = out + Z[i];
    return out;
}

LiftResult lift_mc(const FiniteDGLA& L, const Vec& x1, int target_order) {
    if (target_order < 1) throw std::invalid_argument("lift_mc: target order must be at least 1");
    if (x1.size() != L.dimension() || !homogeneous_vec(L, x1, 1))
        throw std::invalid_argument("lift_mc: first-order datum must be a degree-1 element");
    if (!is_zero(L.d(x1))) throw std::invalid_argument("lift_mc: first-order datum is not closed: d = " + L.format(L.d(x1)));

    const auto deg1 = L.basis_of_degree(1);
    const std::size_t n1 = deg1.size();
    Matrix d1 = columns_of(L, deg1, [&](const Vec& v) { return L.d(v); });
    Matrix ad1 = columns_of(L, deg1, [&](const Vec& v) { return L.bracket(x1, v); });
    std::vector<Vec> xs{L.zero(), x1};

    auto obstruction_at = [&](int n) {
        Vec o = L.zero();
        for (int i = 1; i < n; ++i) o = o + L.bracket(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(n - i)]);
        return Scalar(1, 2) * o;
    };
    auto as_series = [&](int upto) {
        Series s = Series::zero(L, ArtinianBase(upto + 1));
        for (int i = 1; i <= upto; ++i) s.coeffs[static_cast<std::size_t>(i)] = xs[static_cast<std::size_t>(i)];
        return s;
    };

    for (int n = 2; n <= target_order; ++n) {
        const Vec o = obstruction_at(n);
        if (!is_zero(L.d(o))) throw std::logic_error("lift_mc: obstruction cocycle is not closed");
        if (auto y = solve(d1, Scalar(-1) * o)) {
            xs.push_back(embed(L, deg1, *y));
            continue;
        }
        if (n >= 3) {
            // Unknowns (c, y) in L^1 x L^1: d c = 0 and d y + [x_1, c] = -o.
            const std::size_t N = L.dimension();
            Matrix sys(2 * N, 2 * n1);
            Vec rhs(2 * N);
            for (std::size_t r = 0; r < N; ++r) {
                for (std::size_t j = 0; j < n1; ++j) {
                    sys.at(r, j) = d1.at(r, j);
                    sys.at(N + r, j) = ad1.at(r, j);
                    sys.at(N + r, n1 + j) = d1.at(r, j);
                }
                rhs[N + r] = -o[r];
            }
            if (auto sol = solve(sys, rhs)) {
                xs[static_cast<std::size_t>(n - 1)] = xs[static_cast<std::size_t>(n - 1)] + embed(L, deg1, *sol);
                xs.push_back(embed(L, deg1, *sol, n1));
                continue;
            }
        }
        ObstructionClass obs;
        obs.order = n;
        obs.representative = o;
        obs.cohomology_class = cohomology_basis(L.complex(), 2).project(o);
        obs.partial = as_series(n - 1);
        return LiftResult{obs};
    }
    return LiftResult{as_series(target_order)};
}

void DGLAMorphism::validate() const {
    if (!source || !target) throw std::invalid_argument("morphism: missing source or target");
    const FiniteDGLA &L = *source, &M = *target;
    if (matrix.rows() != M.dimension() || matrix.cols() != L.dimension())
        throw std::invalid_argument("morphism: matrix has the wrong shape");
    for (std::size_t j = 0; j < L.dimension(); ++j)
        for (std::size_t i = 0; i < M.dimension(); ++i)
            if (!matrix.at(i, j).is_zero() && M.degree(i) != L.degree(j))
                throw std::invalid_argument("morphism: does not preserve degrees at " + L.name(j));
    for (std::size_t i = 0; i < L.dimension(); ++i) {
        Vec a = L.unit_vector(i);
        if (!is_zero((*this)(L.d(a)) - M.d((*this)(a))))
            throw std::invalid_argument("morphism: does not commute with d at " + L.name(i));
        for (std::size_t j = 0; j < L.dimension(); ++j) {
            Vec b = L.unit_vector(j);
            if (!is_zero((*this)(L.bracket(a, b)) - M.bracket((*this)(a), (*this)(b))))
                throw std::invalid_argument("morphism: does not preserve the bracket on (" + L.name(i) + ", " +
                                            L.name(j) + ")");
        }
    }
}

Certificate obstruction_kernel_check(const DGLAMorphism& phi, const ObstructionClass& obs, bool target_unobstructed) {
    phi.validate();
    const FiniteDGLA &L = *phi.source, &M = *phi.target;
    if (!M.is_abelian() && !target_unobstructed)
        throw std::invalid_argument("obstruction_kernel_check: target is neither abelian nor declared unobstructed");
    Certificate cert;
    cert.suite = "obstruction-kernel";
    cert.window["target"] = M.is_abelian() ? "abelian" : "declared unobstructed";
    cert.window["order"] = std::to_string(obs.order);

    auto hL = cohomology_basis(L.complex(), 2), hM = cohomology_basis(M.complex(), 2);
    std::string induced;
    for (const auto& rep : hL.representatives) {
        Vec col = hM.project(phi(rep));
        induced += induced.empty() ? "[" : "; [";
        for (std::size_t i = 0; i < col.size(); ++i) induced += (i ? ", " : "") + col[i].to_string();
        induced += "]";
    }
    cert.window["H2(phi) columns"] = induced.empty() ? "none" : induced;

    Check& morph = cert.add("phi is a DGLA morphism");
    morph.cases = 1;
    Check& c = cert.add("H^2(phi)(obstruction) = 0");
    c.cases = 1;
    Vec image = hM.project(phi(obs.representative));
    if (!is_zero(image)) c.fail({{"obstruction", L.format(obs.representative)}, {"image", M.format(phi(obs.representative))}});
    return cert;
}

}  // namespace koszul
