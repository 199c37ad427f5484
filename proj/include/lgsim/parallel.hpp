#ifndef LGSIM_PARALLEL_HPP
#define LGSIM_PARALLEL_HPP

#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lgsim::detail {

// Index-parallel loop. Exceptions thrown by the body are captured inside
// the parallel region (letting one escape would terminate the process) and
// the first one is rethrown after the join. With parallel = false, or
// without OpenMP, this is a plain loop.
template <typename Fn>
void parallel_for(long n, bool parallel, Fn&& fn) {
#ifdef _OPENMP
    if (parallel) {
        std::exception_ptr eptr = nullptr;
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
#pragma omp critical(lgsim_parallel_for_error)
                {
                    if (!eptr) eptr = std::current_exception();
                }
            }
        }
        if (eptr) std::rethrow_exception(eptr);
        return;
    }
#else
    (void)parallel;
#endif
    for (long i = 0; i < n; ++i) fn(i);
}

}  // namespace lgsim::detail

#endif
