#include "topolab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topolab/errors.hpp"

namespace topolab {

namespace {

constexpr double kUnitaryTol = 1e-10;

Kv negate_k(const Kv& k) { return {-k[0], -k[1]}; }

}  // namespace

SymmetryOp::SymmetryOp(Mat u, SymFlavor f, SymVariant v)
    : unitary(std::move(u)), flavor(f), variant(v) {
    if (unitary.rows() != unitary.cols() || unitary.rows() == 0)
        throw std::invalid_argument("SymmetryOp: unitary must be square and nonempty");
    const Mat id = Mat::Identity(unitary.rows(), unitary.cols());
    if ((unitary.adjoint() * unitary - id).cwiseAbs().maxCoeff() > kUnitaryTol)
        throw std::invalid_argument("SymmetryOp: matrix is not unitary to 1e-10");
    if (flavor == SymFlavor::trs || flavor == SymFlavor::phs) {
        const Mat uu = unitary * unitary.conjugate();
        if ((uu - id).cwiseAbs().maxCoeff() < 1e-8)
            square_sign = 1;
        else if ((uu + id).cwiseAbs().maxCoeff() < 1e-8)
            square_sign = -1;
        else
            throw std::invalid_argument("SymmetryOp: U U* is not +-1");
    }
}

double symmetry_residual(const BlochModel& model, const SymmetryOp& op, const KGrid& grid,
                         exec::Mode mode) {
    if (op.unitary.rows() != model.n_bands)
        throw std::invalid_argument("symmetry_residual: operator dimension mismatch");
    const std::size_t n = grid.size();
    std::vector<double> res(n, 0.0);
    const Mat u = op.unitary;
    const Mat uinv = op.unitary.adjoint();

    exec::parallel_for(n, mode, [&](std::size_t i) {
        const Kv k = grid.node(i);
        const Mat h = model.eval(k);
        Mat lhs, rhs;
        switch (op.flavor) {
            case SymFlavor::trs:
                lhs = (op.variant == SymVariant::nh_az_dag) ? Mat(u * h.transpose() * uinv)
                                                            : Mat(u * h.conjugate() * uinv);
                rhs = model.eval(negate_k(k));
                break;
            case SymFlavor::phs:
                lhs = (op.variant == SymVariant::nh_az) ? Mat(u * h.transpose() * uinv)
                                                        : Mat(u * h.conjugate() * uinv);
                rhs = -model.eval(negate_k(k));
                break;
            case SymFlavor::chiral:
                lhs = (op.variant == SymVariant::hermitian) ? Mat(u * h * uinv)
                                                            : Mat(u * h.adjoint() * uinv);
                rhs = -h;
                break;
        }
        res[i] = (lhs - rhs).cwiseAbs().maxCoeff();
    });
    return *std::max_element(res.begin(), res.end());
}

bool check_symmetry(const BlochModel& model, const SymmetryOp& op, const KGrid& grid, double tol,
                    exec::Mode mode) {
    return symmetry_residual(model, op, grid, mode) <= tol;
}

std::string to_string(AzClass c) {
    switch (c) {
        case AzClass::A: return "A";
        case AzClass::AIII: return "AIII";
        case AzClass::AI: return "AI";
        case AzClass::BDI: return "BDI";
        case AzClass::D: return "D";
    }
    return "?";
}

std::string to_string(SymFlavor f) {
    switch (f) {
        case SymFlavor::trs: return "TRS";
        case SymFlavor::phs: return "PHS";
        case SymFlavor::chiral: return "chiral";
    }
    return "?";
}

std::string to_string(SymVariant v) {
    switch (v) {
        case SymVariant::hermitian: return "hermitian";
        case SymVariant::nh_az: return "NH-AZ";
        case SymVariant::nh_az_dag: return "NH-AZ-dag";
    }
    return "?";
}

ClassLabel classify(const BlochModel& model, const std::vector<SymmetryOp>& candidates,
                    const KGrid& grid, double tol, exec::Mode mode) {
    ClassLabel label;
    bool trs_dag = false, phs_dag = false;
    for (const auto& op : candidates) {
        const double r = symmetry_residual(model, op, grid, mode);
        if (r > tol) continue;
        label.worst_residual = std::max(label.worst_residual, r);
        switch (op.flavor) {
            case SymFlavor::trs:
                if (op.square_sign == 1) {
                    label.has_trs = true;
                    trs_dag |= op.variant == SymVariant::nh_az_dag;
                }
                break;
            case SymFlavor::phs:
                if (op.square_sign == 1) {
                    label.has_phs = true;
                    phs_dag |= op.variant == SymVariant::nh_az_dag;
                }
                break;
            case SymFlavor::chiral:
                label.has_chiral = true;
                break;
        }
    }

    const bool herm = is_hermitian(model);
    label.variant = herm ? SymVariant::hermitian
                         : ((trs_dag || phs_dag) ? SymVariant::nh_az_dag : SymVariant::nh_az);

    const bool t = label.has_trs, c = label.has_phs, s = label.has_chiral;
    if (t && c) {
        // chiral follows from T and C; record it even if no candidate was given
        label.has_chiral = true;
        label.name = AzClass::BDI;
    } else if (t && s) {
        label.has_phs = true;  // C = S T
        label.name = AzClass::BDI;
    } else if (t) {
        label.name = AzClass::AI;
    } else if (c && s) {
        // PHS and chiral together imply a TRS whose square decides the row;
        // a square of -1 falls outside the number-conserving table
        for (const auto& chiral_op : candidates) {
            if (chiral_op.flavor != SymFlavor::chiral) continue;
            for (const auto& phs_op : candidates) {
                if (phs_op.flavor != SymFlavor::phs || phs_op.square_sign != 1) continue;
                try {
                    SymmetryOp implied(Mat(chiral_op.unitary * phs_op.unitary), SymFlavor::trs,
                                       phs_op.variant);
                    if (implied.square_sign == 1 &&
                        symmetry_residual(model, implied, grid, mode) <= tol) {
                        label.has_trs = true;
                        label.name = AzClass::BDI;
                        return label;
                    }
                } catch (const std::invalid_argument&) {
                }
            }
        }
        throw AmbiguousClass(
            "classify: PHS plus chiral symmetry hold but the implied TRS squares to -1; the "
            "constraint set matches no number-conserving AZ row");
    } else if (c) {
        label.name = AzClass::D;
    } else if (s) {
        label.name = AzClass::AIII;
    } else {
        label.name = AzClass::A;
    }
    return label;
}

namespace {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

std::vector<Mat> pauli_strings(int n_bands) {
    Mat id = Mat::Identity(2, 2);
    Mat sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, cxd(0, -1), cxd(0, 1), 0;
    sz << 1, 0, 0, -1;
    const std::vector<Mat> base{id, sx, sy, sz};

    std::vector<Mat> out;
    if (n_bands == 1) {
        out.push_back(Mat::Identity(1, 1));
    } else if (n_bands == 2) {
        out = base;
    } else if (n_bands == 4) {
        for (const auto& a : base)
            for (const auto& b : base) out.push_back(kron(a, b));
    } else {
        throw std::invalid_argument("pauli search supports 1, 2 or 4 bands only");
    }
    return out;
}

}  // namespace

ClassLabel classify(const BlochModel& model, PauliSearch, const KGrid& grid, double tol,
                    exec::Mode mode) {
    const bool herm = is_hermitian(model);
    const std::vector<SymVariant> variants =
        herm ? std::vector<SymVariant>{SymVariant::hermitian}
             : std::vector<SymVariant>{SymVariant::nh_az, SymVariant::nh_az_dag};

    std::vector<SymmetryOp> found;
    for (const Mat& u : pauli_strings(model.n_bands)) {
        for (SymVariant v : variants) {
            for (SymFlavor f : {SymFlavor::trs, SymFlavor::phs, SymFlavor::chiral}) {
                SymmetryOp op(u, f, v);
                if (check_symmetry(model, op, grid, tol, mode)) found.push_back(op);
            }
        }
    }
    return classify(model, found, grid, tol, mode);
}

ClassLabel classify_cross_checked(const BlochModel& model,
                                  const std::vector<SymmetryOp>& candidates, const KGrid& grid,
                                  double tol, exec::Mode mode) {
    const ClassLabel from_candidates = classify(model, candidates, grid, tol, mode);
    const ClassLabel from_search = classify(model, PauliSearch{}, grid, tol, mode);
    if (from_candidates.name != from_search.name)
        throw AmbiguousClass("classify: candidate set yields " + to_string(from_candidates.name) +
                             " but the exhaustive search yields " + to_string(from_search.name));
    return from_candidates;
}

ClassLabel predict_inherited_class(const ClassLabel& bath_class, cxd omega_e,
                                   double resonance_tol) {
    const bool resonant = bath_class.variant == SymVariant::hermitian
                              ? std::abs(omega_e) <= resonance_tol
                              : std::abs(omega_e.real()) <= resonance_tol;
    if (resonant) return bath_class;

    ClassLabel out = bath_class;
    out.has_phs = false;
    out.has_chiral = false;
    switch (bath_class.name) {
        case AzClass::AIII:
        case AzClass::D:
            out.name = AzClass::A;
            break;
        case AzClass::BDI:
            out.name = AzClass::AI;
            break;
        case AzClass::A:
        case AzClass::AI:
            break;
    }
    return out;
}

}  // namespace topolab
