#include <cmath>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "topolab/errors.hpp"
#include "topolab/models.hpp"

using namespace topolab;
using namespace topolab::test;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("ssh at k=pi is -(w - v) sigma_x") {
    CHECK(max_abs_diff(zoo::ssh(1.0, 1.5).at(kPi), -0.5 * sigma_x()) < 1e-12);
}

TEST_CASE("ssh with w=0 is the constant dimer") {
    for (double k : random_ks(5, 3))
        CHECK(max_abs_diff(zoo::ssh(1.0, 0.0).at(k), sigma_x()) < 1e-14);
}

TEST_CASE("theta at theta=0 is exactly ssh") {
    const BlochModel a = zoo::ssh(1.0, 1.5);
    const BlochModel b = zoo::theta_model(1.0, 1.5, 0.0);
    for (double k : random_ks(8, 5)) CHECK(max_abs_diff(a.at(k), b.at(k)) < 1e-14);
}

TEST_CASE("theta at theta=pi/4 has no sigma_y component") {
    const BlochModel m = zoo::theta_model(1.0, 1.5, kPi / 4.0);
    for (double k : random_ks(5, 9)) {
        const Mat h = m.at(k);
        // sigma_y coefficient = -Im h(0,1)
        CHECK(std::abs(h(0, 1).imag()) < 1e-12);
        CHECK(std::abs(h(0, 0).real() - 1.5 * std::sin(k)) < 1e-12);
    }
}

TEST_CASE("theta is the x-rotation of ssh: H_theta(k) = U^dag H_ssh(k) U") {
    const double theta = kPi / 8.0;
    const Mat u = std::cos(theta) * Mat::Identity(2, 2) + cxd(0, 1) * std::sin(theta) * sigma_x();
    const BlochModel hssh = zoo::ssh(1.0, 1.5);
    const BlochModel htheta = zoo::theta_model(1.0, 1.5, theta);
    for (double k : random_ks(8, 13))
        CHECK(max_abs_diff(htheta.at(k), u.adjoint() * hssh.at(k) * u) < 1e-12);
}

TEST_CASE("theta rejects parameters outside its domain") {
    CHECK_THROWS_AS(zoo::theta_model(1.0, 1.5, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(zoo::theta_model(1.0, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(zoo::theta_model(-1.0, 1.5, 0.1), std::invalid_argument);
}

TEST_CASE("hatano-nelson is hermitian only without asymmetry and loss") {
    CHECK(is_hermitian(zoo::hatano_nelson(1.0, 0.0, 0.0)));
    CHECK_FALSE(is_hermitian(zoo::hatano_nelson(1.0, 0.5)));
    // cosine band in the reciprocal limit
    for (double k : random_ks(5, 17))
        CHECK(std::abs(zoo::hatano_nelson(1.0, 0.0, 0.0).at(k)(0, 0) - 2.0 * std::cos(k)) <
              1e-12);
}

TEST_CASE("chiral_nh_2d has a zero at the zone center") {
    CHECK(zoo::chiral_nh_2d(1.0).at(0.0, 0.0).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("chiral_nh_2d anticommutes with sigma_z under the dagger") {
    const BlochModel m = zoo::chiral_nh_2d(1.0);
    for (double kx : random_ks(4, 19))
        for (double ky : random_ks(4, 23)) {
            const Mat h = m.eval({kx, ky});
            CHECK(max_abs_diff(sigma_z() * h.adjoint() * sigma_z(), -h) < 1e-12);
        }
}

TEST_CASE("stacked_hn matches its closed form") {
    const BlochModel m = zoo::stacked_hn(1.0, 0.5);
    for (double k : random_ks(5, 29)) {
        Mat expected(2, 2);
        const cxd i(0, 1);
        expected << std::exp(i * k) - i, 0.5, 0.5, std::exp(-i * k) - i;
        CHECK(max_abs_diff(m.at(k), expected) < 1e-12);
    }
    CHECK(zoo::stacked_hn_projector() == std::vector<int>{1, 0});
}

TEST_CASE("enlarge_cell: factor 1 returns the same model") {
    const BlochModel m = zoo::ssh(1.0, 1.5);
    const BlochModel e = zoo::enlarge_cell(m, 1);
    for (double k : random_ks(5, 31)) CHECK(max_abs_diff(m.at(k), e.at(k)) < 1e-14);
}

TEST_CASE("enlarge_cell: doubled chain folds the spectrum") {
    const BlochModel m = zoo::ssh(1.0, 1.5);
    const BlochModel e = zoo::enlarge_cell(m, 2);
    CHECK(e.n_bands == 4);

    // spectrum at K equals the union of the original spectra at K/2 and K/2 + pi
    auto sorted_eigs = [](const Mat& h) {
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        std::vector<double> v(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
        return v;
    };
    for (double k : random_ks(8, 37)) {
        const std::vector<double> folded = sorted_eigs(e.at(k));
        std::vector<double> expected;
        for (double sub : sorted_eigs(m.at(k / 2.0))) expected.push_back(sub);
        for (double sub : sorted_eigs(m.at(k / 2.0 + kPi))) expected.push_back(sub);
        std::sort(expected.begin(), expected.end());
        REQUIRE(folded.size() == expected.size());
        for (std::size_t i = 0; i < folded.size(); ++i)
            CHECK(folded[i] == doctest::Approx(expected[i]).epsilon(1e-10));
    }

    // k=0 example: union of |h(0)| = 2.5 and |h(pi)| = 0.5 bands
    const std::vector<double> at_zero = sorted_eigs(e.at(0.0));
    CHECK(at_zero[0] == doctest::Approx(-2.5));
    CHECK(at_zero[1] == doctest::Approx(-0.5));
    CHECK(at_zero[2] == doctest::Approx(0.5));
    CHECK(at_zero[3] == doctest::Approx(2.5));
}

TEST_CASE("enlarge_cell folding holds for a non-hermitian chain too") {
    const BlochModel m = zoo::hatano_nelson(1.0, 0.5);
    const BlochModel e = zoo::enlarge_cell(m, 2);
    for (double k : random_ks(5, 41)) {
        Eigen::ComplexEigenSolver<Mat> es(e.at(k));
        std::vector<cxd> folded(es.eigenvalues().data(),
                                es.eigenvalues().data() + es.eigenvalues().size());
        std::vector<cxd> expected = {m.at(k / 2.0)(0, 0), m.at(k / 2.0 + kPi)(0, 0)};
        // match as multisets
        for (const cxd& want : expected) {
            double best = 1e9;
            for (const cxd& got : folded) best = std::min(best, std::abs(got - want));
            CHECK(best < 1e-10);
        }
    }
}

TEST_CASE("catalog carries the documented defaults") {
    bool saw_qwz = false, saw_stacked = false, saw_hn = false;
    for (const auto& entry : zoo::catalog()) {
        if (entry.name == "qwz") {
            saw_qwz = true;
            CHECK(entry.defaults[0] == std::pair<std::string, double>{"u", 1.2});
        }
        if (entry.name == "stacked_hn") {
            saw_stacked = true;
            CHECK(entry.defaults[1] == std::pair<std::string, double>{"j", 0.5});
        }
        if (entry.name == "hn") saw_hn = true;
    }
    CHECK(saw_qwz);
    CHECK(saw_stacked);
    CHECK(saw_hn);
    CHECK(zoo::catalog().size() == 6);
}

TEST_CASE("make fills defaults and rejects unknown keys") {
    const BlochModel m = zoo::make("qwz");
    CHECK(max_abs_diff(m.at(0.0, 0.0), 3.2 * sigma_z()) < 1e-12);

    // hn default loss is 2*delta*j
    const BlochModel hn = zoo::make("hn");
    CHECK(hn.at(0.0)(0, 0) == cxd(2.0, -1.0));

    CHECK_THROWS_AS(zoo::make("nope"), std::invalid_argument);
    CHECK_THROWS_AS(zoo::make("ssh", {{"volume", 2.0}}), std::invalid_argument);
}

TEST_CASE("default base energies sit at the band centers") {
    CHECK(zoo::default_base_energy("ssh") == cxd(0, 0));
    CHECK(zoo::default_base_energy("hn") == cxd(0, -1.0));
    CHECK(zoo::default_base_energy("chiral_nh_2d") == cxd(0, -1.0));
    CHECK(zoo::default_base_energy("stacked_hn") == cxd(0, -1.0));
}

TEST_CASE("theta lab: mediated blocks are proportional to staggered-chain inverses") {
    const double v = 1.0, w = 0.8, g = 0.1;
    const zoo::ThetaLab lab = zoo::make_theta_lab(v, w, 0.0, cxd(0, 0), g);
    const BlochModel on = zoo::theta_on_cell_effective(lab);
    const BlochModel brk = zoo::theta_cell_breaking_effective(lab);
    const BlochModel target_on = zoo::ssh(v * v, -w * w);
    const BlochModel target_brk = zoo::ssh(w * w, -v * v);
    for (double k : random_ks(8, 43)) {
        CHECK(max_abs_diff(Mat(on.at(k) * target_on.at(k)),
                           -g * g * v * Mat::Identity(2, 2)) < 1e-12);
        CHECK(max_abs_diff(Mat(brk.at(k) * target_brk.at(k)),
                           -g * g * w * Mat::Identity(2, 2)) < 1e-12);
    }
}
