#pragma once

#include <cstddef>
#include <vector>

#include "quadbox/vec3.hpp"

namespace quadbox {

struct Triple {
    int a = 0; // x exponent of T_a
    int b = 0;
    int c = 0;
    int degree() const { return a + b + c; }
    bool operator==(const Triple&) const = default;
};

/// dim P^3_n = (n+1)(n+2)(n+3)/6.
std::size_t basis_dimension(int n);

/// Multi-indices (a,b,c) with a+b+c <= n in graded order: ascending total
/// degree, within a degree a descends first, then b. First entry (0,0,0),
/// last entry (0,0,n).
class MultiIndexSet {
public:
    explicit MultiIndexSet(int degree);

    int degree() const { return degree_; }
    std::size_t size() const { return triples_.size(); }
    const Triple& operator[](std::size_t j) const { return triples_[j]; }
    const std::vector<Triple>& triples() const { return triples_; }

    /// Position of a triple in the set; inverse of operator[].
    std::size_t index_of(const Triple& t) const;

private:
    int degree_;
    std::vector<Triple> triples_;
};

inline MultiIndexSet index_triples(int n) { return MultiIndexSet(n); }

/// Per-triple normalization c_j = a_a a_b a_c, a_0 = 1/sqrt(pi),
/// a_k = sqrt(2/pi) for k > 0. phi_j = c_j T_a(x) T_b(y) T_c(z) is
/// orthonormal for the product Chebyshev measure on [-1,1]^3.
class OrthonormalBasis {
public:
    explicit OrthonormalBasis(int degree);

    const MultiIndexSet& index_set() const { return indices_; }
    int degree() const { return indices_.degree(); }
    std::size_t size() const { return indices_.size(); }
    double normalization(std::size_t j) const { return norms_[j]; }
    const std::vector<double>& normalizations() const { return norms_; }

private:
    MultiIndexSet indices_;
    std::vector<double> norms_;
};

/// T_0(x) .. T_kmax(x) by the three-term recurrence. Inputs outside
/// [-1,1] by more than 1e-14 are rejected; inside the band they are
/// clamped to the interval.
std::vector<double> cheb_values(int k_max, double x);

/// Appends T_0..T_kmax to out (resized); recurrence as cheb_values.
void cheb_values_into(int k_max, double x, std::vector<double>& out);

struct GaussChebyshev1D {
    std::vector<double> nodes; // cos((2i-1)pi/2m), i=1..m, descending
    double weight = 0.0;       // pi/m, common to all nodes
};

GaussChebyshev1D gauss_chebyshev_1d(int m);

/// Tensorial Gauss-Chebyshev rule on [-1,1]^3 with (n+1)^3 nodes,
/// exact for the product Chebyshev measure on P^3_{2n}. Node index is
/// row-major with x fastest; all weights equal pi^3/(n+1)^3.
struct BoxRule {
    int degree = 0;
    std::vector<Vec3> nodes;
    double weight = 0.0;
    std::size_t size() const { return nodes.size(); }
};

BoxRule box_rule(int n);

/// V[i][j] = phi_j(P_i), row-major nu x N.
struct VandermondeMatrix {
    int degree = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;

    double operator()(std::size_t i, std::size_t j) const {
        return values[i * cols + j];
    }
    const double* row(std::size_t i) const { return values.data() + i * cols; }
};

VandermondeMatrix vandermonde(int n, const std::vector<Vec3>& points);

/// The analytically known x-primitive of T_alpha: x for alpha=0, x^2/2
/// for alpha=1, T_{alpha+1}(x)/(2(alpha+1)) - T_{alpha-1}(x)/(2(alpha-1))
/// for alpha >= 2. Fixed additive constant; only differences and
/// closed-surface sums of this function are meaningful.
double primitive_eval(int alpha, double x);

/// Primitives for all alpha = 0..n at once, given T_0..T_{n+1} at x.
void primitive_values_from_cheb(const std::vector<double>& t, int n,
                                std::vector<double>& out);

/// Phi_j(P) = c * primitive(alpha, x) * T_beta(y) * T_gamma(z);
/// d/dx Phi_j = phi_j.
double primitive_basis_eval(const Triple& t, double c, const Vec3& p);

} // namespace quadbox
