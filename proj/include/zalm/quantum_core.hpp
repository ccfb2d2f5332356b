#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace zalm {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Absolute tolerance for state invariants (trace, Hermiticity, positivity).
inline constexpr double kStateTol = 1e-9;

// The four polarization Bell states, |0> = H, |1> = V.
enum class BellKind { PhiPlus, PsiPlus, PsiMinus, PhiMinus };

enum class Pauli { I, X, Y, Z };

struct PauliOp {
    Pauli op;
    int target; // logical qubit id
};

// Density matrix over 1..4 polarization qubits. Immutable after
// construction; every operation returns a new value, so trial workers can
// share nothing. qubit_labels()[0] is the leftmost tensor factor (most
// significant bit of the basis index).
class DensityMatrix {
public:
    DensityMatrix(Mat entries, std::vector<int> qubit_labels);

    int dim() const { return static_cast<int>(m_.rows()); }
    int num_qubits() const { return static_cast<int>(labels_.size()); }
    const Mat& entries() const { return m_; }
    const std::vector<int>& qubit_labels() const { return labels_; }

    bool has_qubit(int label) const;
    // Tensor slot of a logical qubit; throws std::invalid_argument if unknown.
    int position_of(int label) const;

    // Throws std::domain_error if trace, Hermiticity, or positivity is
    // violated beyond `tol`.
    void validate(double tol = kStateTol) const;

private:
    Mat m_;
    std::vector<int> labels_;
};

Mat pauli_matrix(Pauli p);
Vec bell_vector(BellKind k);

// Pure-state density matrix |b><b| on qubits (q0, q1).
DensityMatrix bell_state(BellKind k, int q0 = 0, int q1 = 1);

// rho' = U rho U^dagger with `u` embedded on `targets` (in the given order).
// Throws if u is not unitary within 1e-9 or a target is unknown/duplicated.
DensityMatrix apply_unitary(const DensityMatrix& rho, const Mat& u,
                            std::span<const int> targets);

DensityMatrix apply_pauli(const DensityMatrix& rho, PauliOp op);

// With probability p the target qubit is replaced by the maximally mixed
// state: rho' = (1-p) rho + p (I/2 (x) tr_target rho).
DensityMatrix depolarize(const DensityMatrix& rho, int target, double p);

// Phase-flip channel with flip probability p/2; coherences of the target
// qubit in the H/V basis are damped by (1-p).
DensityMatrix dephase(const DensityMatrix& rho, int target, double p);

// <b|rho|b> for a 2-qubit state. Throws on dimension mismatch.
double fidelity(const DensityMatrix& rho, BellKind target);

// Reduced state over `keep` (result labels follow the order of `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

// Tensor product; label sets must be disjoint.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

const char* to_string(BellKind k);

} // namespace zalm
