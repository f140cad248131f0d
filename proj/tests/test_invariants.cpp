#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "topolab/errors.hpp"
#include "topolab/invariants.hpp"
#include "topolab/mediator.hpp"
#include "topolab/models.hpp"

using namespace topolab;
using namespace topolab::test;

namespace {

const SymmetryOp chiral_z(sigma_z(), SymFlavor::chiral, SymVariant::hermitian);
const SymmetryOp nh_chiral_z(sigma_z(), SymFlavor::chiral, SymVariant::nh_az);

// independent slow oracle: trapezoidal integral of Im[h'(k)/h(k)] / 2pi for
// the scalar h(k) = v + w e^{ik} (off-diagonal determinant of the chain)
int winding_oracle_staggered(double v, double w) {
    const int n = 4096;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double k = kTwoPi * i / n;
        const cxd h = v + w * std::exp(cxd(0, k));
        const cxd dh = cxd(0, 1) * w * std::exp(cxd(0, k));
        acc += (dh / h).imag();
    }
    return static_cast<int>(std::lround(acc / n));
}

// independent Chern oracle: gauge-free projector curvature
//   F_xy = -i tr(P [dP/dkx, dP/dky]), C = (1/2pi) sum F dkx dky
double chern_oracle_below_zero(const BlochModel& model, int m) {
    auto projector = [&](double kx, double ky) {
        Eigen::SelfAdjointEigenSolver<Mat> es(model.eval({kx, ky}));
        Mat p = Mat::Zero(model.n_bands, model.n_bands);
        for (int b = 0; b < es.eigenvalues().size(); ++b)
            if (es.eigenvalues()[b] < 0.0)
                p += es.eigenvectors().col(b) * es.eigenvectors().col(b).adjoint();
        return p;
    };
    const double dk = kTwoPi / m;
    const double eps = 1e-5;
    double total = 0.0;
    for (int ix = 0; ix < m; ++ix)
        for (int iy = 0; iy < m; ++iy) {
            const double kx = dk * ix, ky = dk * iy;
            const Mat dpx = (projector(kx + eps, ky) - projector(kx - eps, ky)) / (2 * eps);
            const Mat dpy = (projector(kx, ky + eps) - projector(kx, ky - eps)) / (2 * eps);
            const Mat p = projector(kx, ky);
            total += (cxd(0, -1) * (p * (dpx * dpy - dpy * dpx)).trace()).real();
        }
    return total * dk * dk / kTwoPi;
}

}  // namespace

TEST_CASE("chiral winding of the staggered chain, against the brute-force oracle") {
    CHECK(winding_oracle_staggered(1.0, 1.5) == 1);
    CHECK(winding_oracle_staggered(1.5, 1.0) == 0);

    const KGrid grid(1, 256);
    const InvariantResult topological = winding_chiral_1d(zoo::ssh(1.0, 1.5), chiral_z, grid);
    CHECK(topological.value == 1);
    CHECK(topological.quantized);
    CHECK(topological.residual < 1e-8);

    const InvariantResult trivial = winding_chiral_1d(zoo::ssh(1.5, 1.0), chiral_z, grid);
    CHECK(trivial.value == 0);
    CHECK(trivial.quantized);
}

TEST_CASE("chiral winding survives mediation on resonance") {
    const BlochModel ha =
        effective_bloch(zoo::ssh(1.0, 1.5), EmitterLayout::full(2, cxd(0, 0), 0.1));
    CHECK(winding_chiral_1d(ha, chiral_z, KGrid(1, 256)).value == 1);
}

TEST_CASE("chiral winding is invariant under H -> -H^{-1}") {
    for (auto [v, w] : {std::pair{1.0, 1.5}, std::pair{1.5, 1.0}, std::pair{0.7, 1.1}}) {
        const BlochModel m = zoo::ssh(v, w);
        BlochModel inv;
        inv.dim = 1;
        inv.n_bands = 2;
        inv.name = "inverted";
        inv.eval = [src = m.eval](const Kv& k) { return Mat(-src(k).inverse()); };
        const KGrid grid(1, 256);
        CHECK(winding_chiral_1d(m, chiral_z, grid).value ==
              winding_chiral_1d(inv, chiral_z, grid).value);
    }
}

TEST_CASE("chiral winding guards: wrong symmetry and closed gap") {
    const SymmetryOp not_chiral(sigma_x(), SymFlavor::chiral, SymVariant::hermitian);
    CHECK_THROWS_AS(winding_chiral_1d(zoo::ssh(1.0, 1.5), not_chiral, KGrid(1, 64)), NotChiral);
    CHECK_THROWS_AS(winding_chiral_1d(zoo::ssh(1.0, 1.0), chiral_z, KGrid(1, 64)), GapClosed);
}

TEST_CASE("spectral winding: non-reciprocal chain and its mediated reversal") {
    const KGrid grid(1, 256);
    const cxd base(0.0, -1.0);
    const BlochModel hn = zoo::hatano_nelson(1.0, 0.5);
    const InvariantResult nu_p = winding_spectral_1d(hn, base, grid);
    CHECK(nu_p.value == 1);
    CHECK(nu_p.quantized);

    // opposite asymmetry, opposite winding
    CHECK(winding_spectral_1d(zoo::hatano_nelson(1.0, -0.5, 1.0), base, grid).value == -1);

    const BlochModel ha = effective_bloch(hn, EmitterLayout::full(1, base, 0.5));
    const InvariantResult nu_a = winding_spectral_1d(ha, base, grid);
    CHECK(nu_a.value == -nu_p.value);
}

TEST_CASE("spectral winding: stacked chains are trivial, their mediated model is not") {
    const KGrid grid(1, 256);
    const cxd base(0.0, -1.0);
    const BlochModel bath = zoo::stacked_hn(1.0, 0.5);
    CHECK(winding_spectral_1d(bath, base, grid).value == 0);

    const BlochModel ha =
        effective_bloch(bath, EmitterLayout(zoo::stacked_hn_projector(), base, 0.1));
    CHECK(winding_spectral_1d(ha, base, grid).value == -1);

    // decoupled chains: the first chain alone winds once around -i kappa
    const BlochModel decoupled = zoo::stacked_hn(1.0, 0.0);
    BlochModel upper;
    upper.dim = 1;
    upper.n_bands = 1;
    upper.name = "upper_chain";
    upper.eval = [src = decoupled.eval](const Kv& k) {
        Mat h(1, 1);
        h(0, 0) = src(k)(0, 0);
        return h;
    };
    CHECK(winding_spectral_1d(upper, base, grid).value == 1);
}

TEST_CASE("spectral winding is reversed by resonant mediation across lossy baths") {
    const KGrid grid(1, 256);
    struct Case {
        BlochModel bath;
        cxd base;
    };
    const Case cases[] = {
        {zoo::hatano_nelson(1.0, 0.5), cxd(0.0, -1.0)},
        {zoo::hatano_nelson(0.8, 0.3), cxd(0.0, -0.48)},
    };
    for (const auto& c : cases) {
        const InvariantResult nu_p = winding_spectral_1d(c.bath, c.base, grid);
        const BlochModel ha =
            effective_bloch(c.bath, EmitterLayout::full(c.bath.n_bands, c.base, 0.1));
        const InvariantResult nu_a = winding_spectral_1d(ha, c.base, grid);
        CHECK(nu_a.value == -nu_p.value);
    }
}

TEST_CASE("spectral winding guards a closed point gap") {
    // base energy on the spectrum ellipse
    CHECK_THROWS_AS(
        winding_spectral_1d(zoo::hatano_nelson(1.0, 0.5), cxd(2.0, -1.0), KGrid(1, 64)),
        PointGapClosed);
}

TEST_CASE("chern: qwz values frozen against the curvature oracle") {
    // oracle on a coarse grid pins the sign under the shared orientation
    const double oracle = chern_oracle_below_zero(zoo::qwz(1.2, 1.0), 32);
    CHECK(oracle == doctest::Approx(1.0).epsilon(0.01));

    const KGrid grid(2, 64);
    const InvariantResult cp = chern_2d(zoo::qwz(1.2, 1.0), BandSelector::below_energy(0.0), grid);
    CHECK(cp.value == 1);
    CHECK(cp.quantized);

    const InvariantResult trivial =
        chern_2d(zoo::qwz(3.0, 1.0), BandSelector::below_energy(0.0), grid);
    CHECK(trivial.value == 0);

    // mediation reverses the sign on resonance
    const BlochModel ha = effective_bloch(zoo::qwz(1.2, 1.0),
                                          EmitterLayout::full(2, cxd(0, 0), 0.08));
    CHECK(chern_2d(ha, BandSelector::below_energy(0.0), grid).value == -1);
}

TEST_CASE("chern: explicit band selection matches the energy cut") {
    const KGrid grid(2, 48);
    const InvariantResult by_cut =
        chern_2d(zoo::qwz(1.2, 1.0), BandSelector::below_energy(0.0), grid);
    const InvariantResult by_index =
        chern_2d(zoo::qwz(1.2, 1.0), BandSelector::explicit_bands({0}), grid);
    CHECK(by_cut.value == by_index.value);
}

TEST_CASE("chern guards: gap closure and non-hermitian input") {
    CHECK_THROWS_AS(chern_2d(zoo::qwz(2.0, 1.0), BandSelector::below_energy(0.0), KGrid(2, 32)),
                    GapClosed);
    CHECK_THROWS_AS(
        chern_2d(zoo::chiral_nh_2d(1.0), BandSelector::below_energy(0.0), KGrid(2, 32)),
        NonHermitianInput);
}

TEST_CASE("chern plaquette sum is gauge invariant") {
    const KGrid grid(2, 24);
    const BlochModel m = zoo::qwz(1.2, 1.0);
    std::vector<Mat> occ(grid.size());
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> phase(0.0, kTwoPi);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Eigen::SelfAdjointEigenSolver<Mat> es(m.eval(grid.node(i)));
        occ[i] = es.eigenvectors().col(0);
    }
    const double bare = chern_plaquette_sum(occ, grid.m, grid.m);
    for (auto& frame : occ) frame *= std::exp(cxd(0, phase(rng)));
    const double rephased = chern_plaquette_sum(occ, grid.m, grid.m);
    CHECK(bare == doctest::Approx(rephased).epsilon(1e-12));
}

TEST_CASE("chern of iSV: preserved between the lossy lattice and its mediated model") {
    const KGrid grid(2, 64);
    const cxd base(0.0, -1.0);
    const InvariantResult photonic = chern_isv_2d(zoo::chiral_nh_2d(1.0), nh_chiral_z, base, grid);
    CHECK(photonic.value == 1);
    CHECK(photonic.quantized);

    const BlochModel ha =
        effective_bloch(zoo::chiral_nh_2d(1.0), EmitterLayout::full(2, base, 0.5));
    const InvariantResult atomic = chern_isv_2d(ha, nh_chiral_z, base, grid);
    CHECK(atomic.value == 1);
}

TEST_CASE("chern of iSV is basis independent") {
    const Mat u = random_unitary(2, 99);
    const BlochModel m = zoo::chiral_nh_2d(1.0);
    BlochModel rotated;
    rotated.dim = 2;
    rotated.n_bands = 2;
    rotated.name = "rotated";
    rotated.eval = [src = m.eval, u](const Kv& k) { return Mat(u * src(k) * u.adjoint()); };
    const SymmetryOp s_rot(Mat(u * sigma_z() * u.adjoint()), SymFlavor::chiral, SymVariant::nh_az);
    const KGrid grid(2, 48);
    CHECK(chern_isv_2d(rotated, s_rot, cxd(0, -1), grid).value ==
          chern_isv_2d(m, nh_chiral_z, cxd(0, -1), grid).value);
}

TEST_CASE("chern of iSV guards: chirality and point gap") {
    const SymmetryOp wrong(sigma_x(), SymFlavor::chiral, SymVariant::nh_az);
    CHECK_THROWS_AS(chern_isv_2d(zoo::chiral_nh_2d(1.0), wrong, cxd(0, -1), KGrid(2, 16)),
                    NotChiral);
    // base energy pinned on the spectrum (the zone-center zero)
    CHECK_THROWS_AS(chern_isv_2d(zoo::chiral_nh_2d(1.0), nh_chiral_z, cxd(0, 0), KGrid(2, 16)),
                    PointGapClosed);
}

TEST_CASE("quantization: residuals stay small and refine stably across the zoo") {
    const KGrid coarse1(1, 128), fine1(1, 256);
    const InvariantResult w1 = winding_chiral_1d(zoo::ssh(1.0, 1.5), chiral_z, coarse1);
    const InvariantResult w2 = winding_chiral_1d(zoo::ssh(1.0, 1.5), chiral_z, fine1);
    CHECK(std::abs(w1.raw - w2.raw) < 1e-3);

    const InvariantResult s1 =
        winding_spectral_1d(zoo::hatano_nelson(1.0, 0.5), cxd(0, -1), coarse1);
    const InvariantResult s2 =
        winding_spectral_1d(zoo::hatano_nelson(1.0, 0.5), cxd(0, -1), fine1);
    CHECK(std::abs(s1.raw - s2.raw) < 1e-3);

    const InvariantResult c1 =
        chern_2d(zoo::qwz(1.2, 1.0), BandSelector::below_energy(0.0), KGrid(2, 32));
    const InvariantResult c2 =
        chern_2d(zoo::qwz(1.2, 1.0), BandSelector::below_energy(0.0), KGrid(2, 64));
    CHECK(std::abs(c1.raw - c2.raw) < 1e-3);
    CHECK(c1.residual < 0.01);
    CHECK(s1.residual < 0.01);
    CHECK(w1.residual < 0.01);
}

TEST_CASE("winding auto-refines through sharp phase steps") {
    // tight point gap: coarse grids need refinement but the answer is exact
    const BlochModel hn = zoo::hatano_nelson(1.0, 0.9, 1.8);
    const InvariantResult r = winding_spectral_1d(hn, cxd(1.9, -1.8), KGrid(1, 8));
    CHECK(r.quantized);
    CHECK(r.grid_m > 8);
}
