#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "energylab/threads.hpp"

namespace energylab::kernels {

// Reductions are summed in fixed-size chunks and the chunk partials are
// combined in index order, so the result is bit-identical for any thread
// count. The chunk size is part of the numerical contract; do not make it
// depend on the schedule.
inline constexpr std::size_t reduce_chunk = 8192;

template <class Term>
double det_sum(std::size_t n, Term&& term) {
    const std::size_t nchunks = (n + reduce_chunk - 1) / reduce_chunk;
    if (nchunks <= 1) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += term(i);
        return acc;
    }
    std::vector<double> partial(nchunks, 0.0);
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * reduce_chunk;
        const std::size_t end = std::min(n, begin + reduce_chunk);
        double acc = 0.0;
        for (std::size_t i = begin; i < end; ++i) acc += term(i);
        partial[static_cast<std::size_t>(c)] = acc;
    }
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

// max is exact in IEEE arithmetic, so a plain OpenMP reduction is already
// bit-stable across thread counts.
template <class Term>
double det_max(std::size_t n, Term&& term) {
    double result = 0.0;
#pragma omp parallel for schedule(static) num_threads(thread_count()) reduction(max : result)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        const double v = term(static_cast<std::size_t>(i));
        if (v > result) result = v;
    }
    return result;
}

template <class Body>
void par_for(std::size_t n, Body&& body) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
        body(static_cast<std::size_t>(i));
}

}  // namespace energylab::kernels

namespace energylab::ref {

// Plain left-to-right accumulation; the serial reference the parallel
// reductions are tested and benchmarked against.
template <class Term>
double sum(std::size_t n, Term&& term) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += term(i);
    return acc;
}

template <class Term>
double max(std::size_t n, Term&& term) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, term(i));
    return m;
}

}  // namespace energylab::ref
