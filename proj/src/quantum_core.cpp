#include "zalm/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace zalm {

namespace {

// Bit of basis index `idx` belonging to tensor slot `pos` (slot 0 is the
// most significant bit).
inline int bit_at(int idx, int pos, int n) { return (idx >> (n - 1 - pos)) & 1; }

inline int set_bits(std::span<const int> positions, int bits, int base, int n) {
    int idx = base;
    for (std::size_t j = 0; j < positions.size(); ++j) {
        int b = (bits >> (positions.size() - 1 - j)) & 1;
        int shift = n - 1 - positions[j];
        idx = (idx & ~(1 << shift)) | (b << shift);
    }
    return idx;
}

} // namespace

DensityMatrix::DensityMatrix(Mat entries, std::vector<int> qubit_labels)
    : m_(std::move(entries)), labels_(std::move(qubit_labels)) {
    if (labels_.empty() || labels_.size() > 4)
        throw std::invalid_argument("DensityMatrix supports 1..4 qubits");
    const auto d = static_cast<Eigen::Index>(1) << labels_.size();
    if (m_.rows() != d || m_.cols() != d)
        throw std::invalid_argument("DensityMatrix dimension does not match qubit count");
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j])
                throw std::invalid_argument("duplicate qubit label");
}

bool DensityMatrix::has_qubit(int label) const {
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

int DensityMatrix::position_of(int label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw std::invalid_argument("unknown qubit label " + std::to_string(label));
    return static_cast<int>(it - labels_.begin());
}

void DensityMatrix::validate(double tol) const {
    if (std::abs(m_.trace().real() - 1.0) > tol || std::abs(m_.trace().imag()) > tol)
        throw std::domain_error("density matrix trace != 1");
    if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol)
        throw std::domain_error("density matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol)
        throw std::domain_error("density matrix not positive semidefinite");
}

Mat pauli_matrix(Pauli p) {
    Mat m(2, 2);
    switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

Vec bell_vector(BellKind k) {
    const double s = 1.0 / std::sqrt(2.0);
    Vec v = Vec::Zero(4);
    switch (k) {
    case BellKind::PhiPlus:  v(0) = s; v(3) = s; break;  // (|HH> + |VV>)/sqrt(2)
    case BellKind::PsiPlus:  v(1) = s; v(2) = s; break;  // (|HV> + |VH>)/sqrt(2)
    case BellKind::PsiMinus: v(1) = s; v(2) = -s; break; // (|HV> - |VH>)/sqrt(2)
    case BellKind::PhiMinus: v(0) = s; v(3) = -s; break; // (|HH> - |VV>)/sqrt(2)
    }
    return v;
}

DensityMatrix bell_state(BellKind k, int q0, int q1) {
    Vec v = bell_vector(k);
    return DensityMatrix(v * v.adjoint(), {q0, q1});
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Mat& u,
                            std::span<const int> targets) {
    const int k = static_cast<int>(targets.size());
    const int du = 1 << k;
    if (u.rows() != du || u.cols() != du)
        throw std::invalid_argument("unitary dimension does not match target count");
    if ((u.adjoint() * u - Mat::Identity(du, du)).cwiseAbs().maxCoeff() > 1e-9)
        throw std::invalid_argument("matrix is not unitary");

    const int n = rho.num_qubits();
    std::vector<int> pos(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i)
        pos[i] = rho.position_of(targets[i]);
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j)
            if (pos[i] == pos[j]) throw std::invalid_argument("duplicate target");

    const int d = rho.dim();
    Mat full = Mat::Zero(d, d);
    for (int c = 0; c < d; ++c) {
        int ct = 0;
        for (int j = 0; j < k; ++j) ct = (ct << 1) | bit_at(c, pos[j], n);
        for (int rt = 0; rt < du; ++rt) {
            int r = set_bits(pos, rt, c, n);
            full(r, c) += u(rt, ct);
        }
    }
    return DensityMatrix(full * rho.entries() * full.adjoint(), rho.qubit_labels());
}

DensityMatrix apply_pauli(const DensityMatrix& rho, PauliOp op) {
    const int t[1] = {op.target};
    return apply_unitary(rho, pauli_matrix(op.op), t);
}

DensityMatrix depolarize(const DensityMatrix& rho, int target, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarize: p outside [0,1]");
    rho.position_of(target);
    if (p == 0.0) return rho;
    Mat out = (1.0 - 0.75 * p) * rho.entries();
    for (Pauli s : {Pauli::X, Pauli::Y, Pauli::Z})
        out += 0.25 * p * apply_pauli(rho, {s, target}).entries();
    return DensityMatrix(std::move(out), rho.qubit_labels());
}

DensityMatrix dephase(const DensityMatrix& rho, int target, double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("dephase: p outside [0,1]");
    rho.position_of(target);
    if (p == 0.0) return rho;
    Mat out = (1.0 - 0.5 * p) * rho.entries() +
              0.5 * p * apply_pauli(rho, {Pauli::Z, target}).entries();
    return DensityMatrix(std::move(out), rho.qubit_labels());
}

double fidelity(const DensityMatrix& rho, BellKind target) {
    if (rho.num_qubits() != 2)
        throw std::invalid_argument("fidelity: expected a 2-qubit state");
    Vec b = bell_vector(target);
    return (b.adjoint() * rho.entries() * b)(0).real();
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    const int n = rho.num_qubits();
    std::vector<int> keep_pos(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i)
        keep_pos[i] = rho.position_of(keep[i]);

    std::vector<int> traced_pos;
    for (int p = 0; p < n; ++p)
        if (std::find(keep_pos.begin(), keep_pos.end(), p) == keep_pos.end())
            traced_pos.push_back(p);

    const int dk = 1 << keep.size();
    const int dt = 1 << traced_pos.size();
    Mat out = Mat::Zero(dk, dk);
    for (int r = 0; r < dk; ++r) {
        for (int c = 0; c < dk; ++c) {
            Complex sum = 0;
            for (int t = 0; t < dt; ++t) {
                int ri = set_bits(traced_pos, t, 0, n);
                ri = set_bits(keep_pos, r, ri, n);
                int ci = set_bits(traced_pos, t, 0, n);
                ci = set_bits(keep_pos, c, ci, n);
                sum += rho.entries()(ri, ci);
            }
            out(r, c) = sum;
        }
    }
    return DensityMatrix(std::move(out), std::vector<int>(keep.begin(), keep.end()));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    for (int l : b.qubit_labels())
        if (a.has_qubit(l))
            throw std::invalid_argument("tensor: overlapping qubit labels");
    const int da = a.dim(), db = b.dim();
    Mat out(da * db, da * db);
    for (int r = 0; r < da; ++r)
        for (int c = 0; c < da; ++c)
            out.block(r * db, c * db, db, db) = a.entries()(r, c) * b.entries();
    std::vector<int> labels = a.qubit_labels();
    labels.insert(labels.end(), b.qubit_labels().begin(), b.qubit_labels().end());
    return DensityMatrix(std::move(out), std::move(labels));
}

const char* to_string(BellKind k) {
    switch (k) {
    case BellKind::PhiPlus: return "PhiPlus";
    case BellKind::PsiPlus: return "PsiPlus";
    case BellKind::PsiMinus: return "PsiMinus";
    case BellKind::PhiMinus: return "PhiMinus";
    }
    return "?";
}

} // namespace zalm
