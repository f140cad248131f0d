#include "topolab/exec.hpp"

#include <cstdlib>
#include <string>

namespace topolab::exec {

int max_threads() {
    static const int cached = [] {
        if (const char* env = std::getenv("TOPO_THREADS")) {
            try {
                const int n = std::stoi(env);
                if (n >= 1) return n;
            } catch (...) {
            }
        }
#ifdef _OPENMP
        return omp_get_max_threads();
#else
        return 1;
#endif
    }();
    return cached;
}

Mode default_mode() {
#ifdef _OPENMP
    return max_threads() > 1 ? Mode::parallel : Mode::serial;
#else
    return Mode::serial;
#endif
}

}  // namespace topolab::exec
