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

#include "concentrate/analytics.h"

#include <cmath>

namespace concentrate {

namespace {

void require_entangled(const SchmidtPair &s, const char *what) {
    if (s.is_product()) {
        throw Error(ErrorCode::kDegenerateInput, std::string(what) + " is undefined for beta = 0");
    }
}

}  // namespace

double optimal_fraction(const SchmidtPair &s) {
    return 2.0 * s.beta_sq();
}

double cnot_success_probability(const SchmidtPair &s) {
    return 2.0 * s.alpha_sq() * s.beta_sq();
}

double idp_conclusive_probability(const SchmidtPair &s) {
    return 1.0 - (s.alpha_sq() - s.beta_sq());
}

SchmidtPair residual_schmidt(const SchmidtPair &s) {
    require_entangled(s, "the residual pair");
    return SchmidtPair::from_coefficients(s.alpha_sq(), s.beta_sq());
}

double conclusive_prob_chi(const SchmidtPair &s) {
    require_entangled(s, "chi discrimination");
    // 2 b^4 / (a^4 + b^4) = 2 x^4 / (1 + x^4)
    const double x2 = s.ratio() * s.ratio();
    const double x4 = x2 * x2;
    return 2.0 * x4 / (1.0 + x4);
}

YieldCurve yield_series(const SchmidtPair &s, std::size_t k_rounds) {
    require_entangled(s, "the yield series");
    if (k_rounds == 0) {
        throw Error(ErrorCode::kInvalidArgument, "at least one round is required");
    }
    YieldCurve curve;
    curve.x = s.ratio();
    curve.limit = optimal_fraction(s);
    if (s.is_maximal()) {
        curve.degenerate = true;
        curve.limit = 1.0;
        curve.terms.assign(k_rounds, 0.0);
        curve.terms[0] = 1.0;
        curve.partial_sums.assign(k_rounds, 1.0);
        curve.cumulative_fractions.assign(k_rounds, 1.0);
        curve.remainder_bounds.assign(k_rounds, 1.0);
        return curve;
    }

    const double x2 = curve.x * curve.x;
    const double two_b4 = 2.0 * s.beta_sq() * s.beta_sq();
    double numerator = 1.0;  // x^(4(2^m - 1))
    double product = 1.0;    // prod_{i=1..m+1} (1 + x^(2^(i+1)))
    double q = x2 * x2;      // x^(2^(m+2))
    double sum = 0.0;
    curve.terms.push_back(cnot_success_probability(s));
    curve.cumulative_fractions.push_back(curve.terms[0]);
    for (std::size_t m = 0; m < k_rounds; ++m) {
        product *= 1.0 + q;
        const double term = numerator / product;
        numerator *= q;
        q *= q;
        sum += term;
        curve.partial_sums.push_back(sum);
        curve.remainder_bounds.push_back(numerator);
        if (m + 1 < k_rounds) {
            curve.terms.push_back(two_b4 * term);
            curve.cumulative_fractions.push_back(curve.terms[0] + two_b4 * sum);
        }
    }
    return curve;
}

}  // namespace concentrate
