// bloch.hpp - matrix-valued Bloch Hamiltonians on the BZ torus: spectra,
// gap diagnostics, band flattening and unitarization.
//
// Global Fourier convention, used consistently everywhere (models, mediated
// couplings, real-space builds):
//
//   a_{n,s} = (1/sqrt(N)) sum_k e^{-i k.r_n} a_{k,s}
//   H(k)_{ss'} = sum_r <r_0,s| H |r_r,s'> e^{-i k.r}
//
// so the hopping block t(r) = <r_0,s|H|r_r,s'> is recovered from H(k) by
// t(r) = (1/M) sum_k H(k) e^{+i k.r} on a commensurate grid.
#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "topolab/exec.hpp"

namespace topolab {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
// Quasi-momentum. Entries past the model dimension are ignored.
using Kv = std::array<double, 2>;

inline constexpr double kTwoPi = 6.28318530717958647692528676655900577;
// Default tolerance for gap and hermiticity checks, in the model's natural
// energy unit. Overridable per call.
inline constexpr double kDefaultTol = 1e-8;

// A translationally invariant lattice Hamiltonian in momentum space.
// Evaluators are pure and safe to call from many threads at once.
struct BlochModel {
    int dim = 1;      // spatial dimension, 1 or 2
    int n_bands = 1;  // matrix size
    std::string name;
    std::optional<bool> hermitian_hint;
    std::string warning;  // producers may attach a caveat (see mediator)
    std::function<Mat(const Kv&)> eval;

    Mat operator()(const Kv& k) const { return eval(k); }
    Mat at(double kx, double ky = 0.0) const { return eval({kx, ky}); }
};

// Uniform momentum grid, k = 2*pi*m/M per axis with m = 0..M-1.
struct KGrid {
    int dim = 1;
    int m = 256;

    KGrid(int dim_, int m_);
    static KGrid default_for(int dim);  // M=256 in 1D, 128 per axis in 2D

    std::size_t size() const;
    Kv node(std::size_t flat) const;
    std::size_t flat(int ix, int iy = 0) const;  // indices wrap
    double spacing() const { return kTwoPi / m; }
};

enum class GapKind { point, line };

struct GapReport {
    GapKind kind = GapKind::point;
    cxd base_energy{0.0, 0.0};
    double min_distance = 0.0;
    Kv argmin_k{0.0, 0.0};
    bool gapped = false;
};

struct BandStructure {
    std::vector<CVec> energies;      // n_bands eigenvalues per node
    std::vector<Mat> right_vectors;  // populated when requested
};

// Probes a fixed set of nodes unless the model carries a hint.
bool is_hermitian(const BlochModel& model, double tol = kDefaultTol);

BandStructure band_structure(const BlochModel& model, const KGrid& grid,
                             bool want_vectors = false,
                             exec::Mode mode = exec::default_mode());

// point: min over nodes and bands of |E_i(k) - base|.
// line:  min over nodes and bands of |Re E_i(k) - Re base|.
GapReport gap_check(const BlochModel& model, const KGrid& grid, cxd base_energy,
                    double tol = kDefaultTol, GapKind kind = GapKind::point,
                    exec::Mode mode = exec::default_mode());

// sgn(H): same eigenvectors, eigenvalues mapped to +-1. Requires H Hermitian
// within tol and no eigenvalue within tol of zero.
Mat band_flatten(const Mat& h, double tol = kDefaultTol);

// Polar factor V = H (sqrt(H^dag H))^-1, unitary whenever H is nonsingular.
Mat unitarize(const Mat& h, double tol = kDefaultTol);

// Basis reordering: band i of the result is band perm[i] of the input.
BlochModel permute_bands(const BlochModel& model, const std::vector<int>& perm);

// Entrywise max |A - B|; zero-sized inputs compare equal.
double max_abs_diff(const Mat& a, const Mat& b);

// Real-space hopping blocks t(r) recovered from the Bloch matrix by the
// inverse transform on a probe grid. Offsets are dropped below drop_tol;
// throws InfiniteRange when the coefficients have not truncated by a quarter
// of the probe grid (mediated models generically have infinite range).
struct HoppingTable {
    int dim = 1;
    int n_bands = 1;
    std::array<int, 2> range{0, 0};  // max |offset| per axis among kept blocks
    std::vector<std::pair<std::array<int, 2>, Mat>> blocks;

    const Mat* block(int dx, int dy = 0) const;
};

HoppingTable extract_hoppings(const BlochModel& model, int probe_m = 64,
                              double drop_tol = 1e-12);

}  // namespace topolab
