#include "topolab/bloch.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "topolab/errors.hpp"

namespace topolab {

KGrid::KGrid(int dim_, int m_) : dim(dim_), m(m_) {
    if (dim != 1 && dim != 2) throw std::invalid_argument("KGrid: dim must be 1 or 2");
    if (m < 8) throw std::invalid_argument("KGrid: need at least 8 points per axis");
}

KGrid KGrid::default_for(int dim) { return dim == 1 ? KGrid(1, 256) : KGrid(2, 128); }

std::size_t KGrid::size() const {
    std::size_t n = static_cast<std::size_t>(m);
    return dim == 1 ? n : n * n;
}

Kv KGrid::node(std::size_t flat) const {
    const int ix = static_cast<int>(flat % static_cast<std::size_t>(m));
    const int iy = static_cast<int>(flat / static_cast<std::size_t>(m));
    return {kTwoPi * ix / m, kTwoPi * iy / m};
}

std::size_t KGrid::flat(int ix, int iy) const {
    auto wrap = [this](int i) {
        i %= m;
        return i < 0 ? i + m : i;
    };
    return static_cast<std::size_t>(wrap(ix)) +
           static_cast<std::size_t>(dim == 2 ? wrap(iy) : 0) * static_cast<std::size_t>(m);
}

namespace {

bool matrix_is_hermitian(const Mat& h, double tol) {
    return (h - h.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

bool is_hermitian(const BlochModel& model, double tol) {
    if (model.hermitian_hint.has_value()) return *model.hermitian_hint;
    // fixed probe nodes; enough to rule out every non-Hermitian model in practice
    const double probes[] = {0.0, 0.7853981633974483, 1.9123456789, 3.141592653589793,
                             4.9998877665};
    for (double kx : probes) {
        for (double ky : probes) {
            if (!matrix_is_hermitian(model.eval({kx, ky}), tol)) return false;
            if (model.dim == 1) break;
        }
    }
    return true;
}

BandStructure band_structure(const BlochModel& model, const KGrid& grid, bool want_vectors,
                             exec::Mode mode) {
    const std::size_t n = grid.size();
    BandStructure out;
    out.energies.assign(n, CVec());
    if (want_vectors) out.right_vectors.assign(n, Mat());

    const bool herm = is_hermitian(model);
    std::vector<int> failed(n, 0);

    exec::parallel_for(n, mode, [&](std::size_t i) {
        const Mat h = model.eval(grid.node(i));
        if (herm) {
            Eigen::SelfAdjointEigenSolver<Mat> es(h, want_vectors ? Eigen::ComputeEigenvectors
                                                                  : Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) {
                failed[i] = 1;
                return;
            }
            out.energies[i] = es.eigenvalues().cast<cxd>();
            if (want_vectors) out.right_vectors[i] = es.eigenvectors();
        } else {
            Eigen::ComplexEigenSolver<Mat> es(h, want_vectors);
            if (es.info() != Eigen::Success) {
                failed[i] = 1;
                return;
            }
            out.energies[i] = es.eigenvalues();
            if (want_vectors) out.right_vectors[i] = es.eigenvectors();
        }
    });

    for (std::size_t i = 0; i < n; ++i)
        if (failed[i])
            throw Error("band_structure: eigensolver failed at node " + std::to_string(i) +
                        " of model " + model.name);
    return out;
}

GapReport gap_check(const BlochModel& model, const KGrid& grid, cxd base_energy, double tol,
                    GapKind kind, exec::Mode mode) {
    const BandStructure bs = band_structure(model, grid, false, mode);
    GapReport report;
    report.kind = kind;
    report.base_energy = base_energy;
    report.min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bs.energies.size(); ++i) {
        for (int b = 0; b < bs.energies[i].size(); ++b) {
            const cxd e = bs.energies[i][b];
            const double d = (kind == GapKind::point) ? std::abs(e - base_energy)
                                                      : std::abs(e.real() - base_energy.real());
            if (d < report.min_distance) {
                report.min_distance = d;
                report.argmin_k = grid.node(i);
            }
        }
    }
    report.gapped = report.min_distance > tol;
    return report;
}

Mat band_flatten(const Mat& h, double tol) {
    if (!matrix_is_hermitian(h, tol))
        throw NonHermitianInput("band_flatten: input is not Hermitian within tolerance");
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    const auto& vals = es.eigenvalues();
    for (int i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i]) < tol)
            throw NearZeroEigenvalue("band_flatten: eigenvalue within tolerance of zero");
    Eigen::VectorXd signs(vals.size());
    for (int i = 0; i < vals.size(); ++i) signs[i] = vals[i] > 0 ? 1.0 : -1.0;
    return es.eigenvectors() * signs.asDiagonal().toDenseMatrix().cast<cxd>() *
           es.eigenvectors().adjoint();
}

Mat unitarize(const Mat& h, double tol) {
    Eigen::JacobiSVD<Mat> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() < tol)
        throw SingularMatrix("unitarize: smallest singular value below tolerance");
    return svd.matrixU() * svd.matrixV().adjoint();
}

BlochModel permute_bands(const BlochModel& model, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != model.n_bands)
        throw std::invalid_argument("permute_bands: permutation size mismatch");
    BlochModel out = model;
    out.name = model.name + "_permuted";
    out.eval = [base = model.eval, perm](const Kv& k) {
        const Mat h = base(k);
        Mat p(h.rows(), h.cols());
        for (int i = 0; i < h.rows(); ++i)
            for (int j = 0; j < h.cols(); ++j) p(i, j) = h(perm[i], perm[j]);
        return p;
    };
    return out;
}

double max_abs_diff(const Mat& a, const Mat& b) {
    if (a.rows() == 0 && b.rows() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

const Mat* HoppingTable::block(int dx, int dy) const {
    for (const auto& [off, mat] : blocks)
        if (off[0] == dx && off[1] == dy) return &mat;
    return nullptr;
}

HoppingTable extract_hoppings(const BlochModel& model, int probe_m, double drop_tol) {
    const int m = probe_m;
    const int n = model.n_bands;
    HoppingTable table;
    table.dim = model.dim;
    table.n_bands = n;

    // sample once, reuse for every offset
    const int my = model.dim == 2 ? m : 1;
    std::vector<Mat> samples(static_cast<std::size_t>(m) * my);
    exec::parallel_for(samples.size(), exec::default_mode(), [&](std::size_t i) {
        const int ix = static_cast<int>(i % m);
        const int iy = static_cast<int>(i / m);
        samples[i] = model.eval({kTwoPi * ix / m, kTwoPi * iy / m});
    });

    const int half = m / 2;
    const int half_y = model.dim == 2 ? half : 0;
    for (int dx = -half; dx < half; ++dx) {
        for (int dy = -half_y; dy <= (model.dim == 2 ? half_y - 1 : 0); ++dy) {
            Mat acc = Mat::Zero(n, n);
            for (int ix = 0; ix < m; ++ix)
                for (int iy = 0; iy < my; ++iy) {
                    const double phase = kTwoPi * (static_cast<double>(ix) * dx +
                                                   static_cast<double>(iy) * dy) / m;
                    acc += std::exp(cxd(0.0, phase)) * samples[ix + static_cast<std::size_t>(iy) * m];
                }
            acc /= static_cast<double>(m) * my;
            if (acc.cwiseAbs().maxCoeff() > drop_tol) {
                if (std::abs(dx) > m / 4 || std::abs(dy) > m / 4)
                    throw InfiniteRange("extract_hoppings: couplings of model '" + model.name +
                                        "' do not truncate below tolerance");
                table.blocks.push_back({{dx, dy}, acc});
                table.range[0] = std::max(table.range[0], std::abs(dx));
                table.range[1] = std::max(table.range[1], std::abs(dy));
            }
        }
    }
    return table;
}

}  // namespace topolab
