// exec.hpp - serial / OpenMP execution of per-node kernels.
//
// Every grid sweep in the library is a map over independent nodes. The
// parallel path writes into preallocated slots and all reductions happen
// serially afterwards, so serial and parallel modes produce identical
// results (exercised by tests, timed by the bench target).
#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace topolab::exec {

enum class Mode { serial, parallel };

// Thread budget: TOPO_THREADS when set (>=1), otherwise the OpenMP default.
int max_threads();

// parallel when built with OpenMP and the thread budget exceeds 1.
Mode default_mode();

// Exceptions thrown by fn are captured inside the parallel region and
// rethrown to the caller once the loop has drained.
template <typename F>
void parallel_for(std::size_t n, Mode mode, F&& fn) {
#ifdef _OPENMP
    if (mode == Mode::parallel && n > 1 && max_threads() > 1) {
        std::exception_ptr first_error = nullptr;
        const int nt = max_threads();
#pragma omp parallel for schedule(static) num_threads(nt) shared(first_error)
        for (long long i = 0; i < static_cast<long long>(n); ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(topolab_exec_error)
                {
                    if (!first_error) first_error = std::current_exception();
                }
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#endif
    for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace topolab::exec
