#include "arnagg/aggregation.hpp"

#include <algorithm>
#include <numeric>

#include "arnagg/markov.hpp"

namespace arnagg {

void AggregationTriple::validate() const {
    detail::check_dimension("aggregation step matrix (square)", step.rows(), step.cols());
    detail::check_dimension("aggregation disaggregation rows", step.rows(), disaggregation.rows());
    detail::check_dimension("aggregation initial vector", step.rows(), initial.size());
    if (dimension() == 0) throw InvalidInput("aggregation has dimension zero");
    if (dimension() > state_count()) throw InvalidInput("aggregation dimension exceeds state count");
    if (!all_finite(step.data()) || !all_finite(disaggregation.data()) || !all_finite(initial))
        throw InvalidInput("aggregation contains non-finite entries");
}

StepPropagator::StepPropagator(const DenseMatrix& step) : step_(&step), rowExtent_(step.rows(), 0) {
    detail::check_dimension("StepPropagator (square)", step.rows(), step.cols());
    for (std::size_t r = 0; r < step.rows(); ++r) {
        const auto row = step.row(r);
        std::size_t extent = row.size();
        while (extent > 0 && row[extent - 1] == 0.0) --extent;
        rowExtent_[r] = extent;
    }
    scratch_.resize(step.rows());
}

void StepPropagator::apply(std::span<const double> x, std::span<double> out) const {
    const std::size_t m = dimension();
    detail::check_dimension("StepPropagator input", m, x.size());
    detail::check_dimension("StepPropagator output", m, out.size());
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t r = 0; r < m; ++r) {
        const double f = x[r];
        if (f == 0.0) continue;
        const double* row = step_->row(r).data();
        const std::size_t extent = rowExtent_[r];
        for (std::size_t c = 0; c < extent; ++c) out[c] += f * row[c];
    }
}

void StepPropagator::advance(Vector& x, std::size_t k) const {
    for (std::size_t s = 0; s < k; ++s) {
        apply(x, scratch_);
        x.swap(scratch_);
    }
}

Vector aggregated_transient(const AggregationTriple& agg, std::size_t k) {
    Vector pi = agg.initial;
    StepPropagator(agg.step).advance(pi, k);
    return pi;
}

Vector approx_transient(const AggregationTriple& agg, std::size_t k) {
    return disaggregate(aggregated_transient(agg, k), agg.disaggregation);
}

std::vector<Vector> approx_transients(const AggregationTriple& agg, std::span<const std::size_t> horizons) {
    std::vector<std::size_t> order(horizons.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return horizons[a] < horizons[b]; });

    std::vector<Vector> out(horizons.size());
    const StepPropagator prop(agg.step);
    Vector pi = agg.initial;
    std::size_t at = 0;
    for (std::size_t idx : order) {
        prop.advance(pi, horizons[idx] - at);
        at = horizons[idx];
        out[idx] = disaggregate(pi, agg.disaggregation);
    }
    return out;
}

} // namespace arnagg
