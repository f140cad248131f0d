#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "topolab/errors.hpp"
#include "topolab/invariants.hpp"
#include "topolab/models.hpp"
#include "topolab/realspace.hpp"

using namespace topolab;
using namespace topolab::test;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<double> sorted_abs(const CVec& e) {
    std::vector<double> v(e.size());
    for (int i = 0; i < e.size(); ++i) v[i] = std::abs(e[i]);
    std::sort(v.begin(), v.end());
    return v;
}
}  // namespace

TEST_CASE("open staggered chain hosts two exponentially small midgap states") {
    const RealSpaceSystem sys =
        build_bath(zoo::ssh(1.0, 1.5), {30, 1}, {BC::open, BC::open});
    REQUIRE(sys.hamiltonian.rows() == 60);
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    const std::vector<double> mags = sorted_abs(sp.energies);
    // midgap pair at (w^2-v^2)/w * (v/w)^30 ~ 4.3e-6, then the bulk edge at 0.5
    CHECK(mags[0] < 1e-5);
    CHECK(mags[1] < 1e-5);
    CHECK(mags[2] > 0.45);
}

TEST_CASE("open non-reciprocal chain has the similarity-transformed real spectrum") {
    const int n = 20;
    const RealSpaceSystem sys =
        build_bath(zoo::hatano_nelson(1.0, 0.5), {n, 1}, {BC::open, BC::open});
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    // open-chain eigenvalues: 2 sqrt(J_L J_R) cos(pi m/(n+1)) - i gamma
    std::vector<double> expected;
    for (int m = 1; m <= n; ++m)
        expected.push_back(2.0 * std::sqrt(1.5 * 0.5) * std::cos(kPi * m / (n + 1)));
    std::sort(expected.begin(), expected.end());
    std::vector<double> got;
    for (int i = 0; i < sp.energies.size(); ++i) {
        CHECK(sp.energies[i].imag() == doctest::Approx(-1.0).epsilon(1e-9));
        got.push_back(sp.energies[i].real());
    }
    std::sort(got.begin(), got.end());
    for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-7));
}

TEST_CASE("periodic builds reproduce the Bloch spectrum exactly (Fourier pair)") {
    const std::vector<BlochModel> models = {zoo::ssh(1.0, 1.5), zoo::theta_model(1.0, 1.5, 0.3),
                                            zoo::hatano_nelson(1.0, 0.5),
                                            zoo::stacked_hn(1.0, 0.5)};
    for (const auto& m : models) {
        for (int n : {8, 16}) {
            const RealSpaceSystem sys = build_bath(m, {n, 1}, {BC::periodic, BC::open});
            const SpectrumWithSectors sp = spectrum_with_sectors(sys);
            std::vector<cxd> bloch;
            for (int i = 0; i < n; ++i) {
                Eigen::ComplexEigenSolver<Mat> es(m.at(kTwoPi * i / n));
                for (int b = 0; b < es.eigenvalues().size(); ++b)
                    bloch.push_back(es.eigenvalues()[b]);
            }
            REQUIRE(static_cast<int>(bloch.size()) == sp.energies.size());
            // greedy multiset match
            std::vector<bool> used(bloch.size(), false);
            for (int i = 0; i < sp.energies.size(); ++i) {
                double best = 1e9;
                int arg = -1;
                for (std::size_t j = 0; j < bloch.size(); ++j)
                    if (!used[j] && std::abs(bloch[j] - sp.energies[i]) < best) {
                        best = std::abs(bloch[j] - sp.energies[i]);
                        arg = static_cast<int>(j);
                    }
                used[arg] = true;
                CHECK(best < 1e-8);
            }
        }
    }
}

TEST_CASE("periodic 2D build matches the Bloch spectrum on the matching grid") {
    const BlochModel m = zoo::qwz(1.2, 1.0);
    const int n = 8;
    const RealSpaceSystem sys = build_bath(m, {n, n}, {BC::periodic, BC::periodic});
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    std::vector<double> bloch;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            Eigen::SelfAdjointEigenSolver<Mat> es(m.eval({kTwoPi * ix / n, kTwoPi * iy / n}));
            bloch.push_back(es.eigenvalues()[0]);
            bloch.push_back(es.eigenvalues()[1]);
        }
    std::sort(bloch.begin(), bloch.end());
    std::vector<double> got;
    for (int i = 0; i < sp.energies.size(); ++i) got.push_back(sp.energies[i].real());
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == bloch.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(bloch[i]).epsilon(1e-8));
}

TEST_CASE("attach_emitters: stripe bookkeeping and guards") {
    const RealSpaceSystem bath =
        build_bath(zoo::ssh(1.0, 1.5), {30, 1}, {BC::periodic, BC::open});

    const RealSpaceSystem full =
        attach_emitters(bath, EmitterLayout::full(2, cxd(0, 0), 0.1, 0));
    CHECK(static_cast<int>(full.sites.size()) - full.n_photonic == 60);

    const RealSpaceSystem striped =
        attach_emitters(bath, EmitterLayout::full(2, cxd(0, 0), 0.1, 4));
    CHECK(static_cast<int>(striped.sites.size()) - striped.n_photonic == 44);

    CHECK_THROWS_AS(attach_emitters(bath, EmitterLayout({1, 0, 1}, cxd(0, 0), 0.1)),
                    LayoutMismatch);
    CHECK_THROWS_AS(attach_emitters(bath, EmitterLayout::full(2, cxd(0, 0), 0.1, 16)),
                    LayoutMismatch);
}

TEST_CASE("decoupled emitters partition the spectrum exactly") {
    const RealSpaceSystem bath =
        build_bath(zoo::ssh(1.0, 1.5), {8, 1}, {BC::periodic, BC::open});
    // tiny but positive coupling keeps the blocks effectively decoupled
    const cxd omega(0.05, 0.0);
    RealSpaceSystem sys = attach_emitters(bath, EmitterLayout::full(2, omega, 1e-12));
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    int atomic = 0;
    for (int i = 0; i < sp.energies.size(); ++i) {
        if (sp.sector[i] == Sector::atomic) {
            ++atomic;
            CHECK(std::abs(sp.energies[i] - omega) < 1e-10);
        }
    }
    CHECK(atomic == 16);
}

TEST_CASE("edge-state census follows the mediated winding (bulk-edge check)") {
    struct Case {
        double v, w;
        int expected_midgap;
    };
    for (const Case c : {Case{1.0, 1.5, 2}, Case{1.5, 1.0, 0}}) {
        const RealSpaceSystem bath =
            build_bath(zoo::ssh(c.v, c.w), {30, 1}, {BC::periodic, BC::open});
        const RealSpaceSystem sys =
            attach_emitters(bath, EmitterLayout::full(2, cxd(0, 0), 0.1, 4));
        const SpectrumWithSectors sp = spectrum_with_sectors(sys);

        // atomic band scale: g^2/(v+w) inner edge
        const double inner = 0.01 / (c.v + c.w);
        std::vector<int> midgap;
        for (int i = 0; i < sp.energies.size(); ++i) {
            if (sp.sector[i] != Sector::atomic) continue;
            if (std::abs(sp.energies[i]) < 0.5 * inner) midgap.push_back(i);
        }
        CHECK(static_cast<int>(midgap.size()) == c.expected_midgap);
        if (!midgap.empty()) {
            // the boundary pair hybridizes; score the position-localized pair
            Mat pair(sp.right_vectors.rows(), midgap.size());
            for (std::size_t j = 0; j < midgap.size(); ++j)
                pair.col(j) = sp.right_vectors.col(midgap[j]);
            const Mat localized = position_localized_combinations(sys, pair);
            for (int j = 0; j < localized.cols(); ++j)
                CHECK(std::abs(state_localization_score(sys, localized.col(j), Sector::atomic)) >
                      0.9);
        }
    }
}

TEST_CASE("skin profiles: bare chain accumulates right, mediated array reverses") {
    // open non-reciprocal chain: every eigenstate piles up on the right
    const RealSpaceSystem bare =
        build_bath(zoo::hatano_nelson(1.0, 0.5), {20, 1}, {BC::open, BC::open});
    const ModeProfile photonic = skin_profile(bare, Sector::photonic);
    const auto pmax = std::max_element(photonic.weights.begin(), photonic.weights.end());
    CHECK(std::distance(photonic.weights.begin(), pmax) == 19);

    // periodic bath, emitters removed on stripes: atomic skin flips sides
    const RealSpaceSystem bath =
        build_bath(zoo::hatano_nelson(1.0, 0.5), {20, 1}, {BC::periodic, BC::open});
    const RealSpaceSystem sys =
        attach_emitters(bath, EmitterLayout::full(1, cxd(0.0, -1.0), 0.5, 5));
    CHECK(static_cast<int>(sys.sites.size()) - sys.n_photonic == 10);
    const ModeProfile atomic = skin_profile(sys, Sector::atomic);
    const auto amax = std::max_element(atomic.weights.begin(), atomic.weights.end());
    CHECK(std::distance(atomic.weights.begin(), amax) == 0);

    CHECK_THROWS_AS(skin_profile(bare, Sector::atomic), EmptySector);
}

TEST_CASE("profile weights stay normalized") {
    const RealSpaceSystem bare =
        build_bath(zoo::hatano_nelson(1.0, 0.5), {20, 1}, {BC::open, BC::open});
    const ModeProfile p = skin_profile(bare, Sector::photonic);
    double total = 0.0;
    for (double w : p.weights) total += w;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("localization_score basics") {
    CHECK(localization_score({0, 0, 0, 1}, {0, 1, 2, 3}) == doctest::Approx(1.0));
    CHECK(localization_score({1, 1, 1, 1}, {0, 1, 2, 3}) == doctest::Approx(0.0));
    CHECK(localization_score({1, 0, 0, 0}, {0, 1, 2, 3}) == doctest::Approx(-1.0));
}

TEST_CASE("ribbon: bare Chern ribbon agrees with a handmade chain at fixed ky") {
    const BlochModel m = zoo::qwz(1.2, 1.0);
    const int l = 12, nodes = 5;
    const auto states = ribbon_spectrum(m, l, nodes);

    // handmade ky-resolved chain: onsite J sin(ky) sy + J(u + cos ky) sz,
    // x-hop block t(+1) = J(sz + i sx)/2
    const double ky = kTwoPi * 2 / nodes;
    Mat onsite = std::sin(ky) * sigma_y() + (1.2 + std::cos(ky)) * sigma_z();
    Mat hop = 0.5 * (sigma_z() + cxd(0, 1) * sigma_x());
    Mat h = Mat::Zero(2 * l, 2 * l);
    for (int c = 0; c < l; ++c) {
        h.block(2 * c, 2 * c, 2, 2) = onsite;
        if (c + 1 < l) {
            h.block(2 * c, 2 * (c + 1), 2, 2) = hop;
            h.block(2 * (c + 1), 2 * c, 2, 2) = hop.adjoint();
        }
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    std::vector<double> expected(es.eigenvalues().data(), es.eigenvalues().data() + 2 * l);

    std::vector<double> got;
    for (const auto& s : states)
        if (std::abs(s.ky - ky) < 1e-12) got.push_back(s.energy.real());
    std::sort(got.begin(), got.end());
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i)
        CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-8));
}

TEST_CASE("ribbon: in-gap chiral branches appear only in the nontrivial phase") {
    auto count_ingap = [](double u) {
        const auto states = ribbon_spectrum(zoo::qwz(u, 1.0), 16, 21);
        int n = 0;
        for (const auto& s : states)
            if (std::abs(s.energy.real()) < 0.25) ++n;
        return n;
    };
    CHECK(count_ingap(1.2) > 0);
    CHECK(count_ingap(3.5) == 0);
}

TEST_CASE("effective atomic matrix agrees with the atomic sector of the full spectrum") {
    const double g = 0.1;
    const RealSpaceSystem bath =
        build_bath(zoo::ssh(1.0, 1.5), {30, 1}, {BC::periodic, BC::open});
    const EmitterLayout layout = EmitterLayout::full(2, cxd(0, 0), g, 4);
    const RealSpaceSystem sys = attach_emitters(bath, layout);

    std::vector<int> hosts;
    for (int i = sys.n_photonic; i < static_cast<int>(sys.sites.size()); ++i) {
        const Site& s = sys.sites[i];
        hosts.push_back((s.cell[0] * 2) + s.sublattice);
    }
    const Mat ha = effective_atomic_realspace(bath, hosts, cxd(0, 0), g);

    Eigen::SelfAdjointEigenSolver<Mat> es(ha);
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    std::vector<double> atomic;
    for (int i = 0; i < sp.energies.size(); ++i)
        if (sp.sector[i] == Sector::atomic) atomic.push_back(sp.energies[i].real());
    std::sort(atomic.begin(), atomic.end());
    REQUIRE(static_cast<int>(atomic.size()) == ha.rows());

    // second-order mediation is accurate to ~5 (g/gap)^3 * gap
    const double bound = 5.0 * std::pow(g / 0.5, 3) * 0.5;
    for (int i = 0; i < ha.rows(); ++i)
        CHECK(std::abs(es.eigenvalues()[i] - atomic[i]) < bound);
}

TEST_CASE("effective atomic matrix: flat limit and translationally invariant check") {
    const RealSpaceSystem bath =
        build_bath(zoo::ssh(1.0, 1.5), {12, 1}, {BC::periodic, BC::open});
    std::vector<int> all_sites(bath.sites.size());
    for (std::size_t i = 0; i < all_sites.size(); ++i) all_sites[i] = static_cast<int>(i);

    const cxd omega(0.2, 0.0);
    const Mat flat = effective_atomic_realspace(bath, all_sites, omega, 1e-9);
    CHECK(max_abs_diff(flat, omega * Mat::Identity(flat.rows(), flat.cols())) < 1e-12);

    // emitters everywhere: eigenvalues equal the mediated Bloch bands on the ring
    const double g = 0.1;
    const Mat ha = effective_atomic_realspace(bath, all_sites, omega, g);
    Eigen::SelfAdjointEigenSolver<Mat> es(ha);
    const BlochModel bloch_ha =
        effective_bloch(zoo::ssh(1.0, 1.5), EmitterLayout::full(2, omega, g));
    std::vector<double> expected;
    for (int i = 0; i < 12; ++i) {
        Eigen::SelfAdjointEigenSolver<Mat> bs(bloch_ha.at(kTwoPi * i / 12));
        expected.push_back(bs.eigenvalues()[0]);
        expected.push_back(bs.eigenvalues()[1]);
    }
    std::sort(expected.begin(), expected.end());
    for (int i = 0; i < ha.rows(); ++i)
        CHECK(es.eigenvalues()[i] == doctest::Approx(expected[i]).epsilon(1e-8));
}

TEST_CASE("non-hermitian right eigenpairs satisfy the residual bound") {
    const RealSpaceSystem bath =
        build_bath(zoo::hatano_nelson(1.0, 0.5), {16, 1}, {BC::open, BC::open});
    const SpectrumWithSectors sp = spectrum_with_sectors(bath);
    for (int i = 0; i < sp.energies.size(); ++i) {
        const CVec r = bath.hamiltonian * sp.right_vectors.col(i) -
                       sp.energies[i] * sp.right_vectors.col(i);
        CHECK(r.norm() < 1e-8);
    }
}
