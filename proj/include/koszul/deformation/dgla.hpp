#pragma once

#include "koszul/core/linalg.hpp"
#include "koszul/core/model.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace koszul {

/// Finite cochain complex: graded basis and the matrix of d (column j = d(e_j)).
struct CochainComplex {
    std::vector<int> degrees;
    Matrix d;

    /// Throws std::invalid_argument unless d has degree +1 and d^2 = 0.
    void validate() const;
    std::vector<std::size_t> basis_of_degree(int p) const;
};

/// H^p as representatives (full coordinates) plus a projection.
struct Cohomology {
    int degree = 0;
    std::vector<Vec> representatives;
    /// Coordinates of the class of a cocycle in the representative basis;
    /// throws std::invalid_argument for a non-cocycle.
    Vec project(const Vec& cocycle) const;
    std::size_t betti() const { return representatives.size(); }

    // Columns: a basis of B^p followed by the representatives.
    Matrix boundary_then_reps;
    std::size_t boundary_rank = 0;
    Matrix d;
};

/// Exact kernel/image computation over Q with deterministic pivots.
Cohomology cohomology_basis(const CochainComplex& c, int degree);

/// Finite-dimensional DGLA over Q given by structure constants.
class FiniteDGLA {
public:
    using Sparse = std::map<std::size_t, Scalar>;
    struct Spec {
        std::vector<Generator> basis;
        /// d(e_j) per basis index; empty means d = 0.
        std::vector<Sparse> differential;
        /// [e_i, e_j]; entries omitted here are filled in by graded
        /// antisymmetry, conflicting pairs are rejected.
        std::map<std::pair<std::size_t, std::size_t>, Sparse> bracket;
    };

    /// Validates degrees, d^2 = 0, antisymmetry, Jacobi and the Leibniz rule
    /// for d on all basis tuples; throws std::invalid_argument naming the
    /// first failure.
    static std::shared_ptr<const FiniteDGLA> make(Spec spec);

    std::size_t dimension() const { return spec_.basis.size(); }
    int degree(std::size_t i) const { return spec_.basis.at(i).degree; }
    const std::string& name(std::size_t i) const { return spec_.basis.at(i).name; }
    std::vector<std::size_t> basis_of_degree(int p) const;
    bool is_abelian() const;

    Vec zero() const { return Vec(dimension()); }
    Vec unit_vector(std::size_t i) const;
    Vec d(const Vec& a) const;
    Vec bracket(const Vec& a, const Vec& b) const;
    const CochainComplex& complex() const { return complex_; }

    /// e.g. "2*e + 1/2*f"; "0" for zero.
    std::string format(const Vec& v) const;

private:
    FiniteDGLA() = default;
    Spec spec_;
    CochainComplex complex_;
    // table_[i][j] = [e_i, e_j]
    std::vector<std::vector<Sparse>> table_;
};

using DGLAPtr = std::shared_ptr<const FiniteDGLA>;

}  // namespace koszul
