#include "koszul/core/model.hpp"

#include "koszul/core/element.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace koszul {

void add_term(Terms& terms, const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

void add_terms(Terms& into, const Terms& from, const Scalar& factor) {
    if (factor.is_zero()) return;
    for (const auto& [m, c] : from) add_term(into, m, factor.is_one() ? c : c * factor);
}

// ---------------------------------------------------------------- FreeModel

std::shared_ptr<const FreeModel> FreeModel::make(std::vector<Generator> generators,
                                                 std::vector<Terms> differential) {
    auto model = std::shared_ptr<FreeModel>(new FreeModel());
    model->generators_ = std::move(generators);
    for (std::size_t i = 0; i < model->generators_.size(); ++i) {
        if (model->generators_[i].name.empty())
            throw std::invalid_argument("FreeModel: generator " + std::to_string(i) + " has no name");
        for (std::size_t j = 0; j < i; ++j)
            if (model->generators_[j].name == model->generators_[i].name)
                throw std::invalid_argument("FreeModel: duplicate generator '" +
                                            model->generators_[i].name + "'");
    }
    if (!differential.empty()) {
        if (differential.size() != model->generators_.size())
            throw std::invalid_argument("FreeModel: differential must list one image per generator");
        for (std::size_t i = 0; i < differential.size(); ++i) {
            for (const auto& [m, c] : differential[i]) {
                if (m.exps.size() != model->generators_.size())
                    throw std::invalid_argument("FreeModel: malformed differential image");
                if (model->degree(m) != model->generators_[i].degree + 1)
                    throw std::invalid_argument("FreeModel: d(" + model->generators_[i].name +
                                                ") is not of degree deg+1");
            }
        }
        model->differential_ = std::move(differential);
        // d^2 is a derivation, so vanishing on generators is enough.
        for (std::size_t i = 0; i < model->generators_.size(); ++i) {
            Terms dd;
            for (const auto& [m, c] : model->differential_[i]) add_terms(dd, model->differential(m), c);
            if (!dd.empty())
                throw std::invalid_argument("FreeModel: d^2 != 0 on generator '" +
                                            model->generators_[i].name + "'");
        }
    }
    return model;
}

std::optional<std::size_t> FreeModel::find(std::string_view name) const {
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].name == name) return i;
    return std::nullopt;
}

Monomial FreeModel::generator_monomial(std::size_t i) const {
    Monomial m = one();
    m.exps.at(i) = 1;
    return m;
}

int FreeModel::count(const Monomial& m) {
    int s = 0;
    for (int e : m.exps) s += e;
    return s;
}

int FreeModel::degree(const Monomial& m) const {
    int deg = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i) deg += m.exps[i] * generators_[i].degree;
    return deg;
}

Terms FreeModel::multiply(const Monomial& a, const Monomial& b) const {
    Monomial r = one();
    int swaps = 0;
    int odd_in_a_after = 0;  // odd factors of a with index > current i
    for (std::size_t i = 0; i < generators_.size(); ++i)
        if (generators_[i].odd()) odd_in_a_after += a.exps[i];
    for (std::size_t i = 0; i < generators_.size(); ++i) {
        if (generators_[i].odd()) {
            odd_in_a_after -= a.exps[i];
            if (a.exps[i] && b.exps[i]) return {};
            // b's odd factor i moves left past a's odd factors of larger index
            if (b.exps[i]) swaps += odd_in_a_after;
        }
        r.exps[i] = a.exps[i] + b.exps[i];
    }
    return Terms{{r, sign_power(swaps)}};
}

Terms FreeModel::differential(const Monomial& m) const {
    if (differential_.empty()) return {};
    // d(g1^e1 ... gr^er) = sum_i (-1)^{deg(prefix)} prefix * d(gi^ei) * suffix
    Terms result;
    int prefix_degree = 0;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        const int e = m.exps[i];
        if (e == 0) continue;
        Monomial prefix = one();
        Monomial suffix = one();
        for (std::size_t j = 0; j < i; ++j) prefix.exps[j] = m.exps[j];
        for (std::size_t j = i + 1; j < m.exps.size(); ++j) suffix.exps[j] = m.exps[j];
        Monomial power = one();
        power.exps[i] = e - 1;
        // d(g^e) = e g^{e-1} dg for even g (g^{e-1} commutes); = dg for odd g.
        Terms dpow;
        for (const auto& [dm, dc] : differential_[i]) add_terms(dpow, multiply(power, dm), dc * Scalar(e));
        Terms left;
        for (const auto& [pm, pc] : dpow) add_terms(left, multiply(prefix, pm), pc);
        for (const auto& [lm, lc] : left)
            add_terms(result, multiply(lm, suffix), lc * sign_power(prefix_degree));
        prefix_degree += e * generators_[i].degree;
    }
    return result;
}

std::string FreeModel::format(const Monomial& m) const {
    std::string even, odd;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (generators_[i].odd()) {
            if (!odd.empty()) odd += " /\\ ";
            odd += generators_[i].name;
        } else {
            if (!even.empty()) even += " * ";
            even += generators_[i].name;
            if (m.exps[i] > 1) even += "^" + std::to_string(m.exps[i]);
        }
    }
    if (even.empty() && odd.empty()) return "1";
    if (even.empty()) return odd;
    if (odd.empty()) return even;
    return even + " * " + odd;
}

std::vector<Monomial> FreeModel::monomials_up_to(int max_count) const {
    std::vector<Monomial> out;
    Monomial cur = one();
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int budget) {
        if (i == generators_.size()) {
            out.push_back(cur);
            return;
        }
        const int cap = generators_[i].odd() ? std::min(1, budget) : budget;
        for (int e = 0; e <= cap; ++e) {
            cur.exps[i] = e;
            rec(i + 1, budget - e);
        }
        cur.exps[i] = 0;
    };
    if (max_count >= 0) rec(0, max_count);
    return out;
}

// -------------------------------------------------------------- FiniteModel

namespace {

Terms to_terms(const std::map<std::size_t, Scalar>& v) {
    Terms t;
    for (const auto& [i, c] : v) add_term(t, FiniteModel::key(i), c);
    return t;
}

}  // namespace

std::shared_ptr<const FiniteModel> FiniteModel::make(Spec spec) {
    const std::size_t n = spec.basis.size();
    if (n == 0) throw std::invalid_argument("FiniteModel: empty basis");
    if (spec.unit >= n) throw std::invalid_argument("FiniteModel: unit index out of range");
    if (spec.product.size() != n)
        throw std::invalid_argument("FiniteModel: product table must be dim x dim");
    for (const auto& row : spec.product)
        if (row.size() != n) throw std::invalid_argument("FiniteModel: product table must be dim x dim");
    if (!spec.differential.empty() && spec.differential.size() != n)
        throw std::invalid_argument("FiniteModel: differential must have one column per basis vector");

    auto model = std::shared_ptr<FiniteModel>(new FiniteModel());
    model->spec_ = std::move(spec);
    const auto& s = model->spec_;
    auto deg = [&](std::size_t i) { return s.basis[i].degree; };
    auto name = [&](std::size_t i) { return s.basis[i].name; };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, c] : s.product[i][j]) {
                if (k >= n || deg(k) != deg(i) + deg(j))
                    throw std::invalid_argument("FiniteModel: product " + name(i) + "*" + name(j) +
                                                " violates the grading");
            }
    for (std::size_t i = 0; i < n; ++i) {
        if (model->multiply(key(s.unit), key(i)) != Terms{{key(i), Scalar(1)}})
            throw std::invalid_argument("FiniteModel: unit does not act as identity on " + name(i));
    }
    auto mul_terms = [&](const Terms& a, const Terms& b) {
        Terms r;
        for (const auto& [ma, ca] : a)
            for (const auto& [mb, cb] : b) add_terms(r, model->multiply(ma, mb), ca * cb);
        return r;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Terms ab = model->multiply(key(i), key(j));
            Terms ba = model->multiply(key(j), key(i));
            Terms diff = ab;
            add_terms(diff, ba, -sign_power(static_cast<long>(deg(i)) * deg(j)));
            if (!diff.empty())
                throw std::invalid_argument("FiniteModel: " + name(i) + "*" + name(j) +
                                            " is not graded-commutative");
            for (std::size_t k = 0; k < n; ++k) {
                Terms left = mul_terms(ab, Terms{{key(k), 1}});
                Terms right = mul_terms(Terms{{key(i), 1}}, model->multiply(key(j), key(k)));
                if (left != right)
                    throw std::invalid_argument("FiniteModel: product is not associative on (" + name(i) +
                                                "," + name(j) + "," + name(k) + ")");
            }
        }
    if (!s.differential.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& [k, c] : s.differential[j])
                if (k >= n || deg(k) != deg(j) + 1)
                    throw std::invalid_argument("FiniteModel: d(" + name(j) + ") is not of degree deg+1");
        }
        for (std::size_t j = 0; j < n; ++j) {
            Terms dd;
            for (const auto& [m, c] : model->differential(key(j))) add_terms(dd, model->differential(m), c);
            if (!dd.empty()) throw std::invalid_argument("FiniteModel: d^2 != 0 on " + name(j));
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Terms lhs;
                for (const auto& [m, c] : model->multiply(key(i), key(j)))
                    add_terms(lhs, model->differential(m), c);
                Terms rhs = mul_terms(model->differential(key(i)), Terms{{key(j), 1}});
                add_terms(rhs, mul_terms(Terms{{key(i), 1}}, model->differential(key(j))),
                          sign_power(deg(i)));
                if (lhs != rhs)
                    throw std::invalid_argument("FiniteModel: d is not a derivation on (" + name(i) + "," +
                                                name(j) + ")");
            }
    }
    return model;
}

std::optional<std::size_t> FiniteModel::find(std::string_view name) const {
    for (std::size_t i = 0; i < spec_.basis.size(); ++i)
        if (spec_.basis[i].name == name) return i;
    return std::nullopt;
}

int FiniteModel::degree(const Monomial& m) const { return spec_.basis.at(index(m)).degree; }

Terms FiniteModel::multiply(const Monomial& a, const Monomial& b) const {
    return to_terms(spec_.product.at(index(a)).at(index(b)));
}

Terms FiniteModel::differential(const Monomial& m) const {
    if (spec_.differential.empty()) return {};
    return to_terms(spec_.differential.at(index(m)));
}

std::string FiniteModel::format(const Monomial& m) const { return spec_.basis.at(index(m)).name; }

}  // namespace koszul
