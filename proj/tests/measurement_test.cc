// Copyright 2026 The Concentrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "concentrate/measurement.h"

#include <array>
#include <cmath>
#include <random>

#include "concentrate/random_stream.h"
#include "gtest/gtest.h"
#include "test_util.h"

using namespace concentrate;
using concentrate::test_util::kInvSqrt2;

namespace {

// a^2|000> + ab|101> + ab|110> + b^2|011> over (A2, A1, B), i.e. the CNOT
// output reordered so Alice's measured qubit comes first.
StateVector cnot_output(const SchmidtPair &s) {
    auto three = tensor(make_qubit_state(s.alpha(), s.beta(), "A1"), make_pair_state(s, {"A2", "B"}));
    return permute(apply_cnot(three, "A1", "A2"), {"A2", "A1", "B"});
}

const MeasurementRecord &find(const std::vector<MeasurementRecord> &records, const std::string &name) {
    for (const auto &r : records) {
        if (r.outcome_name == name) {
            return r;
        }
    }
    throw std::runtime_error("missing outcome " + name);
}

double total_probability(const std::vector<MeasurementRecord> &records) {
    double total = 0.0;
    for (const auto &r : records) {
        total += r.probability;
    }
    return total;
}

// <psi| (I x E) |psi> evaluated element by element, independent of apply_operator.
double expectation(const StateVector &state, std::size_t qubit_shift, const Operator &e) {
    double total = 0.0;
    const std::size_t mask = std::size_t{1} << qubit_shift;
    for (std::size_t i = 0; i < state.dimension(); ++i) {
        for (std::size_t j = 0; j < state.dimension(); ++j) {
            if ((i & ~mask) != (j & ~mask)) {
                continue;
            }
            const int r = (i & mask) ? 1 : 0;
            const int c = (j & mask) ? 1 : 0;
            total += (std::conj(state.amplitudes()[i]) * e(r, c) * state.amplitudes()[j]).real();
        }
    }
    return total;
}

}  // namespace

TEST(SelectBranch, CumulativeIntervalsInOrder) {
    auto bell = make_pair_state(SchmidtPair::from_alpha_sq(0.75), {"A", "B"});
    auto branches = measure_z_branches(bell, "A");
    ASSERT_EQ(branches.size(), 2U);
    EXPECT_EQ(select_branch(branches, 0.0), 0U);
    EXPECT_EQ(select_branch(branches, 0.7499), 0U);
    EXPECT_EQ(select_branch(branches, 0.7501), 1U);
    EXPECT_EQ(select_branch(branches, std::nextafter(1.0, 0.0)), 1U);
    EXPECT_THROW(select_branch(branches, 1.0), Error);
    EXPECT_THROW(select_branch(branches, -0.1), Error);
}

TEST(MeasureZ, OutcomeOneYieldsBellPair) {
    auto s = SchmidtPair::from_alpha_sq(0.7);
    auto branches = measure_z_branches(cnot_output(s), "A2");
    const auto &one = find(branches, "1");
    EXPECT_NEAR(one.probability, 2.0 * s.alpha_sq() * s.beta_sq(), 1e-12);
    auto psi_plus = StateVector({"A1", "B"}, {0, kInvSqrt2, kInvSqrt2, 0});
    EXPECT_NEAR(reduced_fidelity(one.post_state, psi_plus), 1.0, 1e-12);
}

TEST(MeasureZ, OutcomeZeroYieldsResidualPair) {
    auto s = SchmidtPair::from_alpha_sq(0.7);
    auto branches = measure_z_branches(cnot_output(s), "A2");
    const auto &zero = find(branches, "0");
    const double a4 = s.alpha_sq() * s.alpha_sq();
    const double b4 = s.beta_sq() * s.beta_sq();
    EXPECT_NEAR(zero.probability, a4 + b4, 1e-12);
    auto pair = reduce_to(zero.post_state, {"A1", "B"});
    auto report = schmidt_decompose_pair(pair, {"A1"}, {"B"});
    EXPECT_NEAR(report.lambda_major, s.alpha_sq() / std::sqrt(a4 + b4), 1e-12);
    EXPECT_NEAR(report.lambda_minor, s.beta_sq() / std::sqrt(a4 + b4), 1e-12);
}

TEST(MeasureZ, BellPairSplitsEvenlyIntoProducts) {
    auto bell = make_pair_state(SchmidtPair::maximal(), {"A", "B"});
    for (const char *q : {"A", "B"}) {
        auto branches = measure_z_branches(bell, q);
        ASSERT_EQ(branches.size(), 2U);
        for (const auto &b : branches) {
            EXPECT_NEAR(b.probability, 0.5, 1e-12);
            auto r = schmidt_decompose_pair(b.post_state, {"A"}, {"B"});
            EXPECT_NEAR(r.lambda_minor, 0.0, 1e-12);
        }
    }
    EXPECT_THROW(measure_z(bell, "C", 0.5), Error);
}

TEST(MeasureZ, RepeatedMeasurementIsIdempotent) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit;
    for (int trial = 0; trial < 50; ++trial) {
        auto state = test_util::random_state(rng, 3);
        auto first = measure_z(state, "q1", unit(rng));
        auto again = measure_z_branches(first.post_state, "q1");
        ASSERT_EQ(again.size(), 1U);
        EXPECT_EQ(again[0].outcome_index, first.outcome_index);
        EXPECT_NEAR(again[0].probability, 1.0, 1e-12);
    }
}

TEST(IdpPovm, OrthogonalLimit) {
    auto povm = build_idp_povm(SchmidtPair::maximal());
    EXPECT_LE(povm.element(2).cwiseAbs().maxCoeff(), 1e-15);
    Eigen::Vector2cd plus(kInvSqrt2, kInvSqrt2);
    Eigen::Vector2cd minus(kInvSqrt2, -kInvSqrt2);
    EXPECT_LE((povm.element(0) - plus * plus.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((povm.element(1) - minus * minus.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(IdpPovm, ConclusiveProbabilityByDirectArithmetic) {
    auto s = SchmidtPair::from_alpha_sq(0.8);
    auto povm = build_idp_povm(s);
    const double a = s.alpha();
    const double b = s.beta();
    for (double sign : {1.0, -1.0}) {
        const double u[2] = {a, sign * b};
        double p = 0.0;
        for (int k = 0; k < 2; ++k) {
            const Operator &e = povm.element(static_cast<std::size_t>(k));
            for (int r = 0; r < 2; ++r) {
                for (int c = 0; c < 2; ++c) {
                    p += u[r] * e(r, c).real() * u[c];
                }
            }
        }
        EXPECT_NEAR(p, 0.4, 1e-12);
    }
}

TEST(IdpPovm, ConclusivePlusAnnihilatesMinusState) {
    auto s = SchmidtPair::from_alpha_sq(0.8);
    auto povm = build_idp_povm(s);
    Eigen::Vector2cd minus(s.alpha(), -s.beta());
    EXPECT_LE((povm.element(0) * minus).norm(), 1e-15);
}

TEST(IdpPovm, ValidOnGrid) {
    for (double alpha_sq : test_util::alpha_sq_grid()) {
        auto s = SchmidtPair::from_alpha_sq(alpha_sq);
        auto povm = build_idp_povm(s);
        Operator total = Operator::Zero(2, 2);
        for (std::size_t i = 0; i < povm.size(); ++i) {
            const Operator &e = povm.element(i);
            EXPECT_LE((e - e.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
            Eigen::SelfAdjointEigenSolver<Operator> eig(e);
            EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
            total += e;
        }
        EXPECT_LE((total - Operator::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);

        Eigen::Vector2cd plus(s.alpha(), s.beta());
        Eigen::Vector2cd minus(s.alpha(), -s.beta());
        EXPECT_NEAR((minus.adjoint() * povm.element(0) * minus)(0).real(), 0.0, 1e-12);
        EXPECT_NEAR((plus.adjoint() * povm.element(1) * plus)(0).real(), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(povm.element(0).determinant()), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(povm.element(1).determinant()), 0.0, 1e-12);
    }
}

TEST(IdpPovm, RejectsProductInput) {
    try {
        build_idp_povm(SchmidtPair::from_alpha_sq(1.0));
        FAIL() << "expected an exception";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDegenerateInput);
    }
    EXPECT_THROW(build_chi_povm(SchmidtPair::from_alpha_sq(1.0)), Error);
}

TEST(Povm, ConstructorChecksInvariants) {
    Operator half = 0.5 * Operator::Identity(2, 2);
    EXPECT_THROW(Povm({half}, {"half"}), Error);  // incomplete
    Operator negative = Operator::Identity(2, 2);
    negative(1, 1) = -0.5;
    Operator rest = Operator::Identity(2, 2) - negative;
    EXPECT_THROW(Povm({negative, rest}, {"neg", "rest"}), Error);
    Operator skew = Operator::Zero(2, 2);
    skew(0, 1) = 0.1;
    EXPECT_THROW(Povm({Operator::Identity(2, 2) - skew, skew}, {"a", "b"}), Error);
    EXPECT_NO_THROW(Povm({Operator::Identity(2, 2)}, {"identity"}));
}

TEST(ChiPovm, ConclusiveProbabilityMatchesOverlap) {
    for (double alpha_sq : test_util::alpha_sq_grid()) {
        auto s = SchmidtPair::from_alpha_sq(alpha_sq);
        auto povm = build_chi_povm(s);
        const double a4 = s.alpha_sq() * s.alpha_sq();
        const double b4 = s.beta_sq() * s.beta_sq();
        const double n = std::sqrt(a4 + b4);
        for (double sign : {1.0, -1.0}) {
            auto chi = StateVector({"A2", "A3"}, {s.alpha_sq() / n, 0, 0, sign * s.beta_sq() / n});
            double conclusive = 0.0;
            for (const auto &r : povm_branches(chi, std::array<std::string, 2>{"A2", "A3"}, povm)) {
                if (r.outcome_index < 2) {
                    conclusive += r.probability;
                }
            }
            // 1 - |<chi+|chi->|
            const double overlap = (a4 - b4) / (a4 + b4);
            EXPECT_NEAR(conclusive, 1.0 - overlap, 1e-12);
            EXPECT_NEAR(conclusive, 2.0 * b4 / (a4 + b4), 1e-12);
        }
    }
}

TEST(ChiPovm, OrthogonalLimitIsAlwaysConclusive) {
    auto povm = build_chi_povm(SchmidtPair::maximal());
    auto chi = StateVector({"X", "Y"}, {kInvSqrt2, 0, 0, kInvSqrt2});
    auto branches = povm_branches(chi, std::array<std::string, 2>{"X", "Y"}, povm);
    ASSERT_EQ(branches.size(), 1U);
    EXPECT_EQ(branches[0].outcome_name, "conclusive-plus");
    EXPECT_NEAR(branches[0].probability, 1.0, 1e-12);
}

TEST(ChiPovm, MonteCarloAgreesWithTwoSeventeenths) {
    auto s = SchmidtPair::from_alpha_sq(0.8);
    auto povm = build_chi_povm(s);
    const double n = std::hypot(s.alpha_sq(), s.beta_sq());
    auto chi = StateVector({"X", "Y"}, {s.alpha_sq() / n, 0, 0, s.beta_sq() / n});
    const std::array<std::string, 2> qubits{"X", "Y"};
    const int trials = 200000;
    int conclusive = 0;
    RandomStream rng(99, 0);
    for (int i = 0; i < trials; ++i) {
        if (apply_povm(chi, qubits, povm, rng.next_unit()).outcome_index < 2) {
            ++conclusive;
        }
    }
    const double p = 2.0 / 17.0;
    const double sigma = std::sqrt(p * (1 - p) / trials);
    EXPECT_NEAR(static_cast<double>(conclusive) / trials, p, 4.0 * sigma);
}

TEST(ApplyPovm, ConclusivePlusLeavesPhiPlusAndAncilla) {
    auto s = SchmidtPair::from_alpha_sq(0.75);
    // a|000> + b|111> over (A, B1, B2)
    auto state = StateVector({"A", "B1", "B2"}, {s.alpha(), 0, 0, 0, 0, 0, 0, s.beta()});
    auto povm = build_idp_povm(s);
    auto branches = povm_branches(state, std::array<std::string, 1>{"B2"}, povm);
    const auto &plus = find(branches, "conclusive-plus");
    EXPECT_NEAR(plus.probability, s.beta_sq(), 1e-12);
    EXPECT_NEAR(reduced_fidelity(plus.post_state, StateVector({"A", "B1"}, {kInvSqrt2, 0, 0, kInvSqrt2})), 1.0,
                1e-12);
    EXPECT_NO_THROW(reduce_to(plus.post_state, {"A", "B1"}));
}

TEST(ApplyPovm, InconclusiveCollapsesToAllZeros) {
    auto s = SchmidtPair::from_alpha_sq(0.75);
    auto state = StateVector({"A", "B1", "B2"}, {s.alpha(), 0, 0, 0, 0, 0, 0, s.beta()});
    auto branches = povm_branches(state, std::array<std::string, 1>{"B2"}, build_idp_povm(s));
    const auto &inconclusive = find(branches, "inconclusive");
    // K3 = diag(sqrt(1 - b^2/a^2), 0) keeps only the |000> term.
    EXPECT_NEAR(inconclusive.probability, s.alpha_sq() * (1.0 - s.beta_sq() / s.alpha_sq()), 1e-12);
    EXPECT_NEAR(std::norm(inconclusive.post_state.amplitudes()[0]), 1.0, 1e-12);
}

TEST(ApplyPovm, TrivialPovmAndDimensionMismatch) {
    std::mt19937_64 rng(4);
    auto state = test_util::random_state(rng, 2);
    Povm identity({Operator::Identity(2, 2)}, {"all"});
    auto rec = apply_povm(state, std::array<std::string, 1>{"q0"}, identity, 0.3);
    EXPECT_NEAR(rec.probability, 1.0, 1e-12);
    EXPECT_NEAR(fidelity(rec.post_state, state), 1.0, 1e-12);
    try {
        apply_povm(state, std::array<std::string, 2>{"q0", "q1"}, identity, 0.3);
        FAIL() << "expected an exception";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    }
}

TEST(ApplyPovm, RecordProbabilityIsExpectationOfElement) {
    std::mt19937_64 rng(8);
    auto povm = build_idp_povm(SchmidtPair::from_alpha_sq(0.66));
    for (int trial = 0; trial < 20; ++trial) {
        auto state = test_util::random_state(rng, 3);
        auto branches = povm_branches(state, std::array<std::string, 1>{"q1"}, povm);
        EXPECT_NEAR(total_probability(branches), 1.0, 1e-12);
        for (const auto &b : branches) {
            EXPECT_NEAR(b.probability, expectation(state, state.shift("q1"), povm.element(b.outcome_index)), 1e-12);
            EXPECT_NEAR(b.post_state.norm(), 1.0, 1e-12);
        }
    }
}

TEST(Parity, BranchProbabilitiesOnTwoPairs) {
    auto s = SchmidtPair::from_alpha_sq(0.8);
    auto four = tensor(make_pair_state(s, {"A1", "A2"}), make_pair_state(s, {"A3", "B"}));
    auto branches = parity_branches(four, std::array<std::string, 2>{"A2", "A3"});
    EXPECT_NEAR(find(branches, "even").probability, 0.64 + 0.04, 1e-12);
    EXPECT_NEAR(find(branches, "odd").probability, 2 * 0.8 * 0.2, 1e-12);
}

TEST(Parity, BasisAndBellInputs) {
    const std::array<std::string, 2> ab{"A", "B"};
    auto even = parity_branches(StateVector::basis({"A", "B"}, 0), ab);
    ASSERT_EQ(even.size(), 1U);
    EXPECT_EQ(even[0].outcome_name, "even");
    auto odd = parity_branches(StateVector({"A", "B"}, {0, kInvSqrt2, kInvSqrt2, 0}), ab);
    ASSERT_EQ(odd.size(), 1U);
    EXPECT_EQ(odd[0].outcome_name, "odd");
    EXPECT_NEAR(odd[0].probability, 1.0, 1e-12);
    EXPECT_THROW(parity_branches(StateVector::basis({"A", "B"}, 0), std::array<std::string, 2>{"A", "A"}), Error);
    EXPECT_THROW(parity_branches(StateVector::basis({"A", "B"}, 0), std::array<std::string, 2>{"A", "C"}), Error);
}

TEST(IncompleteBell, OddBranchTransfersBellStates) {
    auto s = SchmidtPair::from_alpha_sq(0.7);
    auto four = tensor(make_pair_state(s, {"A1", "A2"}), make_pair_state(s, {"A3", "B"}));
    const std::array<std::string, 2> measured{"A2", "A3"};
    auto odd = find(parity_branches(four, measured), "odd");
    auto branches = incomplete_bell_branches(odd.post_state, measured);
    ASSERT_EQ(branches.size(), 2U);
    auto psi_plus = StateVector({"A1", "B"}, {0, kInvSqrt2, kInvSqrt2, 0});
    auto psi_minus = StateVector({"A1", "B"}, {0, kInvSqrt2, -kInvSqrt2, 0});
    EXPECT_NEAR(reduced_fidelity(find(branches, "psi-plus").post_state, psi_plus), 1.0, 1e-12);
    EXPECT_NEAR(reduced_fidelity(find(branches, "psi-minus").post_state, psi_minus), 1.0, 1e-12);
    EXPECT_NEAR(total_probability(branches), 1.0, 1e-12);
}

TEST(IncompleteBell, SimpleInputs) {
    const std::array<std::string, 2> ab{"A", "B"};
    auto certain = incomplete_bell_branches(StateVector({"A", "B"}, {0, kInvSqrt2, kInvSqrt2, 0}), ab);
    ASSERT_EQ(certain.size(), 1U);
    EXPECT_EQ(certain[0].outcome_name, "psi-plus");
    EXPECT_NEAR(certain[0].probability, 1.0, 1e-12);

    auto split = incomplete_bell_branches(StateVector::basis({"A", "B"}, 1), ab);
    ASSERT_EQ(split.size(), 2U);
    EXPECT_NEAR(split[0].probability, 0.5, 1e-12);
    EXPECT_NEAR(split[1].probability, 0.5, 1e-12);

    try {
        incomplete_bell_measure(StateVector::basis({"A", "B"}, 0), ab, 0.1);
        FAIL() << "expected an exception";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kPreconditionViolation);
    }
}

TEST(Measurements, BranchProbabilitiesSumToOne) {
    std::mt19937_64 rng(17);
    auto povm = build_idp_povm(SchmidtPair::from_alpha_sq(0.9));
    auto chi = build_chi_povm(SchmidtPair::from_alpha_sq(0.9));
    const std::array<std::string, 2> pair{"q2", "q0"};
    for (int trial = 0; trial < 30; ++trial) {
        auto state = test_util::random_state(rng, 4);
        EXPECT_NEAR(total_probability(measure_z_branches(state, "q3")), 1.0, 1e-12);
        EXPECT_NEAR(total_probability(parity_branches(state, pair)), 1.0, 1e-12);
        EXPECT_NEAR(total_probability(povm_branches(state, std::array<std::string, 1>{"q1"}, povm)), 1.0, 1e-12);
        EXPECT_NEAR(total_probability(povm_branches(state, pair, chi)), 1.0, 1e-12);
        auto odd = find(parity_branches(state, pair), "odd");
        EXPECT_NEAR(total_probability(incomplete_bell_branches(odd.post_state, pair)), 1.0, 1e-12);
    }
}
