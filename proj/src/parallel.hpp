#pragma once

#include <cstddef>
#include <exception>

namespace bimorph::detail {

/// Runs fn(i) for i in [0, n) across OpenMP threads. The first exception
/// thrown by any iteration is rethrown after the loop.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn)
{
    std::exception_ptr error;
    const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(bimorph_parallel_error)
            if (!error)
                error = std::current_exception();
        }
    }
    if (error)
        std::rethrow_exception(error);
}

} // namespace bimorph::detail
