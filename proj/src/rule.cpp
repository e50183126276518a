#include "quadbox/rule.hpp"

#include <cmath>

#include "quadbox/errors.hpp"

namespace quadbox {

std::shared_ptr<const RuleCache::Entry> RuleCache::get(int n) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto it = entries_.find(n);
        if (it != entries_.end()) return it->second;
    }
    auto entry = std::make_shared<Entry>();
    entry->box = box_rule(n);
    entry->vandermonde = vandermonde(n, entry->box.nodes);
    entry->built_at = std::chrono::system_clock::now();

    std::lock_guard<std::mutex> lock(mutex_);
    const auto [it, inserted] = entries_.emplace(n, std::move(entry));
    return it->second; // on a lost race the first build wins
}

bool RuleCache::contains(int n) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.count(n) != 0;
}

QuadratureRule build_rule(const Polyhedron& p, int n, RuleCache& cache,
                          int threads) {
    if (n < 0) throw DomainError("build_rule: negative degree");
    if (n > kMaxDegree)
        throw DegreeCapExceeded("build_rule: degree " + std::to_string(n) +
                                " exceeds the cap of " + std::to_string(kMaxDegree));

    const AffineMap map = affine_map(bounding_box(p));
    MomentOptions opts;
    opts.threads = threads;
    const MomentVector m = polyhedron_moments(p, map, n, opts);
    const auto entry = cache.get(n);
    const VandermondeMatrix& v = entry->vandermonde;
    const std::size_t nu = v.rows;
    const std::size_t N = v.cols;

    QuadratureRule rule;
    rule.degree = n;
    rule.polyhedron_label = p.label();
    rule.nodes.reserve(nu);
    rule.weights.resize(nu);

    const double u = entry->box.weight;
    KahanSum vol, vol_abs;
    for (std::size_t i = 0; i < nu; ++i) {
        const double* row = v.row(i);
        KahanSum dotp;
        for (std::size_t j = 0; j < N; ++j) dotp.add(row[j] * m.values[j]);
        const double w = map.jacobian * u * dotp.value();
        rule.weights[i] = w;
        rule.nodes.push_back(map.inverse(entry->box.nodes[i]));
        vol.add(w);
        vol_abs.add(std::abs(w));
    }
    rule.volume_estimate = vol.value();
    rule.stability_ratio = vol_abs.value() / rule.volume_estimate;
    return rule;
}

double apply(const QuadratureRule& rule, const std::vector<double>& samples) {
    if (samples.size() != rule.weights.size())
        throw LengthMismatch("apply: " + std::to_string(samples.size()) +
                             " samples for " + std::to_string(rule.weights.size()) +
                             " nodes");
    KahanSum acc;
    for (std::size_t i = 0; i < samples.size(); ++i)
        acc.add(rule.weights[i] * samples[i]);
    return acc.value();
}

StabilityReport stability_report(const QuadratureRule& rule) {
    StabilityReport r;
    KahanSum sum_abs;
    r.min_weight = rule.weights.empty() ? 0.0 : rule.weights[0];
    for (double w : rule.weights) {
        sum_abs.add(std::abs(w));
        if (w < 0.0) ++r.negative_count;
        r.min_weight = std::min(r.min_weight, w);
    }
    r.sum_abs = sum_abs.value();
    r.ratio = r.sum_abs / rule.volume_estimate;
    return r;
}

double error_bound_factor(const QuadratureRule& rule) {
    return rule.volume_estimate + stability_report(rule).sum_abs;
}

} // namespace quadbox
