#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zalm/quantum_core.hpp"
#include "zalm/rng.hpp"

using namespace zalm;

namespace {

double purity(const DensityMatrix& rho) {
    return (rho.entries() * rho.entries()).trace().real();
}

DensityMatrix single_qubit(Complex a00, Complex a01, Complex a10, Complex a11,
                           int label = 0) {
    Mat m(2, 2);
    m << a00, a01, a10, a11;
    return DensityMatrix(m, {label});
}

const std::array<BellKind, 4> kKinds = {BellKind::PhiPlus, BellKind::PsiPlus,
                                        BellKind::PsiMinus, BellKind::PhiMinus};

} // namespace

TEST_CASE("bell_state matches the Bell table, H->|0>") {
    auto psi_minus = bell_state(BellKind::PsiMinus);
    CHECK(psi_minus.entries()(0, 0).real() == doctest::Approx(0.0));
    CHECK(psi_minus.entries()(1, 1).real() == doctest::Approx(0.5));
    CHECK(psi_minus.entries()(2, 2).real() == doctest::Approx(0.5));
    CHECK(psi_minus.entries()(3, 3).real() == doctest::Approx(0.0));
    CHECK(psi_minus.entries()(1, 2).real() == doctest::Approx(-0.5));
    CHECK(psi_minus.entries()(2, 1).real() == doctest::Approx(-0.5));

    auto phi_plus = bell_state(BellKind::PhiPlus);
    CHECK(phi_plus.entries().trace().real() == doctest::Approx(1.0));
    CHECK(purity(phi_plus) == doctest::Approx(1.0));

    for (BellKind a : kKinds) {
        bell_state(a).validate();
        for (BellKind b : kKinds) {
            double f = fidelity(bell_state(a), b);
            CHECK(f == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("apply_unitary against explicit matrix multiplication") {
    auto rho = bell_state(BellKind::PhiPlus);

    SUBCASE("identity leaves the state unchanged") {
        const int t[1] = {0};
        auto out = apply_unitary(rho, Mat::Identity(2, 2), t);
        CHECK((out.entries() - rho.entries()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("X(x)X preserves PhiPlus") {
        const int t[2] = {0, 1};
        auto out = apply_unitary(rho, oracle::kron(oracle::pauli('X'), oracle::pauli('X')), t);
        CHECK(fidelity(out, BellKind::PhiPlus) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("Z on the second qubit turns PsiPlus into PsiMinus") {
        const int t[1] = {1};
        auto out = apply_unitary(bell_state(BellKind::PsiPlus), oracle::pauli('Z'), t);
        CHECK(fidelity(out, BellKind::PsiMinus) == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("random single-qubit rotations match the kron oracle") {
        Rng rng(42);
        for (int iter = 0; iter < 50; ++iter) {
            double th = rng.uniform() * 3.0, ph = rng.uniform() * 6.0;
            Mat u(2, 2);
            u << std::cos(th), -std::sin(th) * std::exp(Complex(0, ph)),
                std::sin(th) * std::exp(Complex(0, -ph)), std::cos(th);
            int target = static_cast<int>(rng.below(2));
            const int t[1] = {target};
            auto out = apply_unitary(rho, u, t);
            Mat full = oracle::embed1(u, target, 2);
            Mat expect = full * rho.entries() * full.adjoint();
            CHECK((out.entries() - expect).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SUBCASE("rejects non-unitary input and unknown targets") {
        Mat bad(2, 2);
        bad << 1, 0, 0, 2;
        const int t[1] = {0};
        CHECK_THROWS_AS(apply_unitary(rho, bad, t), std::invalid_argument);
        const int missing[1] = {7};
        CHECK_THROWS_AS(apply_unitary(rho, Mat::Identity(2, 2), missing),
                        std::invalid_argument);
    }
}

TEST_CASE("depolarize") {
    auto psi_minus = bell_state(BellKind::PsiMinus);

    SUBCASE("p=0 is a no-op") {
        auto out = depolarize(psi_minus, 0, 0.0);
        CHECK((out.entries() - psi_minus.entries()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("p=1 fully mixes a pure single qubit") {
        auto h = single_qubit(1, 0, 0, 0);
        auto out = depolarize(h, 0, 1.0);
        CHECK(out.entries()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(out.entries()(1, 1).real() == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::abs(out.entries()(0, 1)) < 1e-12);
    }

    SUBCASE("p=0.5 on one qubit of PsiMinus: F = (1-p) + p/4 = 0.625") {
        // Frozen from the Kraus oracle below.
        auto out = depolarize(psi_minus, 0, 0.5);
        Mat expect = oracle::kraus_depolarize(psi_minus.entries(), 0, 2, 0.5);
        CHECK((out.entries() - expect).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(fidelity(out, BellKind::PsiMinus) == doctest::Approx(0.625).epsilon(1e-9));
    }

    SUBCASE("composition collapses: p1 then p2 equals 1-(1-p1)(1-p2)") {
        auto a = depolarize(depolarize(psi_minus, 1, 0.3), 1, 0.2);
        auto b = depolarize(psi_minus, 1, 1.0 - 0.7 * 0.8);
        CHECK((a.entries() - b.entries()).cwiseAbs().maxCoeff() < 1e-9);
    }

    CHECK_THROWS_AS(depolarize(psi_minus, 0, 1.5), std::invalid_argument);
}

TEST_CASE("dephase") {
    auto psi_minus = bell_state(BellKind::PsiMinus);

    SUBCASE("p=0 is a no-op") {
        auto out = dephase(psi_minus, 0, 0.0);
        CHECK((out.entries() - psi_minus.entries()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("p=1 kills the coherence of |+>") {
        auto plus = single_qubit(0.5, 0.5, 0.5, 0.5);
        auto out = dephase(plus, 0, 1.0);
        CHECK(std::abs(out.entries()(0, 1)) < 1e-12);
        CHECK(out.entries()(0, 0).real() == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("p=1e-3 on PsiMinus: fidelity 1 - 5e-4") {
        auto out = dephase(psi_minus, 0, 1e-3);
        Mat expect = oracle::kraus_dephase(psi_minus.entries(), 0, 2, 1e-3);
        CHECK((out.entries() - expect).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(fidelity(out, BellKind::PsiMinus) ==
              doctest::Approx(1.0 - 5e-4).epsilon(1e-6));
    }

    CHECK_THROWS_AS(dephase(psi_minus, 0, -0.1), std::invalid_argument);
}

TEST_CASE("fidelity") {
    CHECK(fidelity(DensityMatrix(Mat::Identity(4, 4) / 4.0, {0, 1}),
                   BellKind::PhiMinus) == doctest::Approx(0.25).epsilon(1e-12));

    SUBCASE("coherence factor V gives (1+V)/2") {
        const double v = 0.37;
        Mat m = bell_state(BellKind::PsiMinus).entries();
        m(1, 2) *= v;
        m(2, 1) *= v;
        DensityMatrix rho(m, {0, 1});
        // Direct contraction oracle: <b|rho|b>
        Eigen::VectorXcd b = bell_vector(BellKind::PsiMinus);
        double expect = (b.adjoint() * m * b)(0).real();
        CHECK(expect == doctest::Approx((1.0 + v) / 2.0).epsilon(1e-12));
        CHECK(fidelity(rho, BellKind::PsiMinus) == doctest::Approx(expect));
    }

    SUBCASE("dimension mismatch") {
        auto one = single_qubit(1, 0, 0, 0);
        CHECK_THROWS_AS(fidelity(one, BellKind::PhiPlus), std::invalid_argument);
    }
}

TEST_CASE("partial_trace") {
    SUBCASE("maximally entangled marginal is I/2") {
        auto rho = bell_state(BellKind::PhiPlus);
        const int keep[1] = {0};
        auto red = partial_trace(rho, keep);
        CHECK((red.entries() - Mat::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("keep all is a no-op") {
        auto rho = bell_state(BellKind::PsiPlus);
        const int keep[2] = {0, 1};
        auto red = partial_trace(rho, keep);
        CHECK((red.entries() - rho.entries()).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("product state reduces to its factors") {
        auto h = single_qubit(1, 0, 0, 0, 5);
        auto v = single_qubit(0, 0, 0, 1, 9);
        auto prod = tensor(h, v);
        const int keep_h[1] = {5};
        const int keep_v[1] = {9};
        CHECK(partial_trace(prod, keep_h).entries()(0, 0).real() ==
              doctest::Approx(1.0));
        CHECK(partial_trace(prod, keep_v).entries()(1, 1).real() ==
              doctest::Approx(1.0));
    }

    SUBCASE("matches brute-force oracle on a 4-qubit state") {
        auto rho = tensor(bell_state(BellKind::PhiMinus, 0, 1),
                          bell_state(BellKind::PsiPlus, 2, 3));
        const int keep[2] = {1, 2};
        auto red = partial_trace(rho, keep);
        Mat expect = oracle::partial_trace(rho.entries(), {1, 2}, 4);
        CHECK((red.entries() - expect).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("empty keep set throws") {
        auto rho = bell_state(BellKind::PhiPlus);
        CHECK_THROWS_AS(partial_trace(rho, {}), std::invalid_argument);
    }
}

TEST_CASE("Pauli corrections realize the Bell group action") {
    // X on qubit 2: PhiPlus<->PsiPlus, PhiMinus<->PsiMinus.
    // Z on qubit 2: PhiPlus<->PhiMinus, PsiPlus<->PsiMinus.
    auto expect_map = [](BellKind from, Pauli p) {
        switch (p) {
        case Pauli::X:
            switch (from) {
            case BellKind::PhiPlus: return BellKind::PsiPlus;
            case BellKind::PsiPlus: return BellKind::PhiPlus;
            case BellKind::PhiMinus: return BellKind::PsiMinus;
            case BellKind::PsiMinus: return BellKind::PhiMinus;
            }
            break;
        case Pauli::Z:
            switch (from) {
            case BellKind::PhiPlus: return BellKind::PhiMinus;
            case BellKind::PhiMinus: return BellKind::PhiPlus;
            case BellKind::PsiPlus: return BellKind::PsiMinus;
            case BellKind::PsiMinus: return BellKind::PsiPlus;
            }
            break;
        default: break;
        }
        return from;
    };

    for (BellKind from : kKinds) {
        for (Pauli p : {Pauli::X, Pauli::Z}) {
            auto out = apply_pauli(bell_state(from), {p, 1});
            // Cross-check via the kron matrix oracle.
            Mat full = oracle::embed1(oracle::pauli(p == Pauli::X ? 'X' : 'Z'), 1, 2);
            Mat expect = full * bell_state(from).entries() * full.adjoint();
            CHECK((out.entries() - expect).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(fidelity(out, expect_map(from, p)) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("random channel sequences preserve state invariants") {
    Rng rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        auto rho = tensor(bell_state(BellKind::PhiPlus, 0, 1),
                          bell_state(BellKind::PsiMinus, 2, 3));
        for (int step = 0; step < 8; ++step) {
            int target = static_cast<int>(rng.below(4));
            switch (rng.below(3)) {
            case 0: rho = depolarize(rho, target, rng.uniform()); break;
            case 1: rho = dephase(rho, target, rng.uniform()); break;
            default: {
                double th = rng.uniform() * 3.0;
                Mat u(2, 2);
                u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
                const int t[1] = {target};
                rho = apply_unitary(rho, u, t);
            }
            }
        }
        CHECK_NOTHROW(rho.validate(1e-9));
    }
}

TEST_CASE("unitaries preserve purity") {
    Rng rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        auto rho = depolarize(bell_state(BellKind::PsiPlus), 0, rng.uniform());
        double before = purity(rho);
        double th = rng.uniform() * 3.0;
        Mat u(2, 2);
        u << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        const int t[1] = {static_cast<int>(rng.below(2))};
        CHECK(purity(apply_unitary(rho, u, t)) == doctest::Approx(before).epsilon(1e-9));
    }
}
