// symmetry.hpp - time-reversal / particle-hole / chiral symmetry checks in the
// Hermitian, non-Hermitian AZ and non-Hermitian AZ-dagger senses, plus class
// labels and the inherited-class prediction for mediated models.
//
// Constraint placements (T, C antiunitary = unitary times conjugation):
//   Hermitian:   U_T H*(k) U_T^-1 =  H(-k)
//                U_C H*(k) U_C^-1 = -H(-k)
//                S   H(k)  S^-1   = -H(k)
//   NH AZ:       U_T H*(k) U_T^-1 =  H(-k)
//                U_C H^T(k) U_C^-1 = -H(-k)
//                S   H^dag(k) S^-1 = -H(k)
//   NH AZ-dag:   U_T H^T(k) U_T^-1 =  H(-k)
//                U_C H*(k) U_C^-1  = -H(-k)
//                S   H^dag(k) S^-1 = -H(k)   (same as NH AZ)
#pragma once

#include <string>
#include <vector>

#include "topolab/bloch.hpp"

namespace topolab {

enum class SymFlavor { trs, phs, chiral };
enum class SymVariant { hermitian, nh_az, nh_az_dag };

struct SymmetryOp {
    Mat unitary;
    SymFlavor flavor = SymFlavor::chiral;
    SymVariant variant = SymVariant::hermitian;
    int square_sign = 0;  // U U* = square_sign * I for antiunitary flavors, 0 for chiral

    // Validates unitarity to 1e-10 and, for antiunitary flavors, that
    // U U* = +-1. Throws std::invalid_argument otherwise.
    SymmetryOp(Mat u, SymFlavor f, SymVariant v);
};

// Largest entrywise violation of the constraint over the grid.
double symmetry_residual(const BlochModel& model, const SymmetryOp& op, const KGrid& grid,
                         exec::Mode mode = exec::default_mode());

bool check_symmetry(const BlochModel& model, const SymmetryOp& op, const KGrid& grid,
                    double tol = kDefaultTol, exec::Mode mode = exec::default_mode());

// The five number-conserving AZ rows. Classes whose T or C squares to -1 are
// outside this table; such operators are reported but never drive the label.
enum class AzClass { A, AIII, AI, BDI, D };

std::string to_string(AzClass c);
std::string to_string(SymFlavor f);
std::string to_string(SymVariant v);

struct ClassLabel {
    AzClass name = AzClass::A;
    SymVariant variant = SymVariant::hermitian;
    bool has_trs = false;
    bool has_phs = false;
    bool has_chiral = false;
    // Largest residual among the constraints that hold (0 when none do).
    double worst_residual = 0.0;
};

// Verifies caller-supplied candidates and maps the surviving set onto the
// five-row table. Throws AmbiguousClass when the surviving set matches no row.
ClassLabel classify(const BlochModel& model, const std::vector<SymmetryOp>& candidates,
                    const KGrid& grid, double tol = kDefaultTol,
                    exec::Mode mode = exec::default_mode());

// Exhaustive search over Pauli-string unitaries (n_bands in {1,2,4}), trying
// every flavor in the variants appropriate to the model's hermiticity. Finds
// every algebraic symmetry, including accidental ones a model family would
// not impose; prefer explicit candidates when those matter.
struct PauliSearch {};
ClassLabel classify(const BlochModel& model, PauliSearch, const KGrid& grid,
                    double tol = kDefaultTol, exec::Mode mode = exec::default_mode());

// Runs both candidate verification and the Pauli search; throws AmbiguousClass
// when the two disagree.
ClassLabel classify_cross_checked(const BlochModel& model,
                                  const std::vector<SymmetryOp>& candidates, const KGrid& grid,
                                  double tol = kDefaultTol,
                                  exec::Mode mode = exec::default_mode());

// Symmetry class of the bath-mediated model at detuning omega_e. On resonance
// (omega_e = 0 for Hermitian baths; Re omega_e = 0 for non-Hermitian ones,
// the band center sitting at Re E = 0 by convention) the class is unchanged;
// off resonance PHS and chiral symmetry drop while TRS survives:
// AIII -> A, BDI -> AI, D -> A.
ClassLabel predict_inherited_class(const ClassLabel& bath_class, cxd omega_e,
                                   double resonance_tol = 1e-10);

}  // namespace topolab
