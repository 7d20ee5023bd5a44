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

#include <algorithm>
#include <cmath>

#include "concentrate/measurement.h"

namespace concentrate {

namespace {

Operator positive_sqrt(const Operator &m) {
    Eigen::SelfAdjointEigenSolver<Operator> eig(m);
    Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
}

// IDP elements for a|0> +/- b|1>, 0 < b <= a.
std::array<Eigen::Matrix2d, 3> idp_elements(double a, double b) {
    const double scale = 1.0 / (2.0 * a * a);
    Eigen::Matrix2d plus;
    plus << b * b, a * b, a * b, a * a;
    Eigen::Matrix2d minus;
    minus << b * b, -a * b, -a * b, a * a;
    Eigen::Matrix2d inconclusive = Eigen::Matrix2d::Zero();
    inconclusive(0, 0) = 1.0 - (b * b) / (a * a);
    return {scale * plus, scale * minus, inconclusive};
}

void require_discriminable(const SchmidtPair &s) {
    if (s.is_product()) {
        throw Error(ErrorCode::kDegenerateInput, "beta = 0: the two states to discriminate coincide");
    }
}

}  // namespace

Povm::Povm(std::vector<Operator> elements, std::vector<std::string> names)
    : elements_(std::move(elements)), names_(std::move(names)) {
    if (elements_.empty() || elements_.size() != names_.size()) {
        throw Error(ErrorCode::kInvalidArgument, "a POVM needs one name per element and at least one element");
    }
    const Eigen::Index d = elements_.front().rows();
    Operator total = Operator::Zero(d, d);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const Operator &e = elements_[i];
        if (e.rows() != d || e.cols() != d) {
            throw Error(ErrorCode::kDimensionMismatch, "POVM elements must share one square dimension");
        }
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > kPovmTolerance) {
            throw Error(ErrorCode::kInvalidArgument, "element '" + names_[i] + "' is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Operator> eig(e);
        if (eig.eigenvalues().minCoeff() < -kPovmTolerance) {
            throw Error(ErrorCode::kInvalidArgument, "element '" + names_[i] + "' is not positive semidefinite");
        }
        total += e;
        kraus_.push_back(positive_sqrt(e));
    }
    if ((total - Operator::Identity(d, d)).cwiseAbs().maxCoeff() > kPovmTolerance) {
        throw Error(ErrorCode::kInvalidArgument, "POVM elements do not sum to the identity");
    }
}

Povm build_idp_povm(const SchmidtPair &s) {
    require_discriminable(s);
    auto e = idp_elements(s.alpha(), s.beta());
    return Povm({e[0].cast<Complex>(), e[1].cast<Complex>(), e[2].cast<Complex>()},
                {"conclusive-plus", "conclusive-minus", "inconclusive"});
}

Povm build_chi_povm(const SchmidtPair &s) {
    require_discriminable(s);
    const double n = std::hypot(s.alpha_sq(), s.beta_sq());
    auto e = idp_elements(s.alpha_sq() / n, s.beta_sq() / n);
    // span{|00>,|11>} sits at indices 0 and 3 of the two-qubit basis.
    constexpr std::array<Eigen::Index, 2> embed{0, 3};
    std::vector<Operator> elements;
    for (const auto &small : e) {
        Operator big = Operator::Zero(4, 4);
        for (Eigen::Index r = 0; r < 2; ++r) {
            for (Eigen::Index c = 0; c < 2; ++c) {
                big(embed[r], embed[c]) = small(r, c);
            }
        }
        elements.push_back(std::move(big));
    }
    elements[2](1, 1) = 1.0;
    elements[2](2, 2) = 1.0;
    return Povm(std::move(elements), {"conclusive-plus", "conclusive-minus", "inconclusive"});
}

}  // namespace concentrate
