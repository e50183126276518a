#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "quadbox/chebyshev.hpp"
#include "quadbox/geometry.hpp"
#include "quadbox/moments.hpp"

namespace quadbox {

/// Final quadrature rule on a polyhedron: nu = (n+1)^3 physical nodes,
/// signed weights carrying the bounding-box Jacobian.
struct QuadratureRule {
    int degree = 0;
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    double volume_estimate = 0.0;  // sum of weights
    double stability_ratio = 0.0;  // sum |w| / sum w
    std::string polyhedron_label;

    std::size_t size() const { return nodes.size(); }
};

/// Element-independent data per degree: the Gauss-Chebyshev box rule and
/// the Vandermonde-like matrix, built once and shared across polyhedra.
class RuleCache {
public:
    struct Entry {
        BoxRule box;
        VandermondeMatrix vandermonde;
        std::chrono::system_clock::time_point built_at;
    };

    /// Returns the entry for degree n, building it on first use. If two
    /// threads race, one result is kept (both are identical).
    std::shared_ptr<const Entry> get(int n);

    bool contains(int n) const;

private:
    mutable std::mutex mutex_;
    std::map<int, std::shared_ptr<const Entry>> entries_;
};

inline constexpr int kMaxDegree = 30;

/// Builds the degree-n rule for p: w = u .* (V m) in the reference cube,
/// then nodes and weights are carried to physical coordinates. The only
/// element-dependent work is the moment vector; no factorization or
/// linear solve is involved.
QuadratureRule build_rule(const Polyhedron& p, int n, RuleCache& cache,
                          int threads = 1);

/// sum_i w_i * samples_i with samples aligned to rule.nodes.
double apply(const QuadratureRule& rule, const std::vector<double>& samples);

struct StabilityReport {
    double sum_abs = 0.0;
    double ratio = 0.0;
    long negative_count = 0;
    double min_weight = 0.0;
};

StabilityReport stability_report(const QuadratureRule& rule);

/// The computable factor vol + sum|w| of the polynomial-approximation
/// error bound |I(f) - Q(f)| <= (vol + sum|w|) * E_n(f); tends to 2*vol
/// as the stability ratio tends to 1.
double error_bound_factor(const QuadratureRule& rule);

} // namespace quadbox
