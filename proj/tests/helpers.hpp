#pragma once

#include <random>
#include <vector>

#include "topolab/bloch.hpp"

namespace topolab::test {

inline Mat sigma_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Mat sigma_y() {
    Mat m(2, 2);
    m << 0, cxd(0, -1), cxd(0, 1), 0;
    return m;
}

inline Mat sigma_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

inline std::vector<double> random_ks(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, kTwoPi);
    std::vector<double> out(n);
    for (double& k : out) k = dist(rng);
    return out;
}

inline Mat random_unitary(int n, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist(0.0, 1.0);
    Mat a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cxd(dist(rng), dist(rng));
    Eigen::HouseholderQR<Mat> qr(a);
    Mat q = qr.householderQ();
    return q;
}

}  // namespace topolab::test
