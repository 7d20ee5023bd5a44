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

#pragma once

#include <cstddef>
#include <vector>

#include "concentrate/protocols.h"
#include "concentrate/state_vector.h"

namespace concentrate {

/// Closed-form values for the concentration protocols. These are the
/// comparators that simulation results are checked against.

/// 2 beta^2, the optimal fraction of Bell pairs.
double optimal_fraction(const SchmidtPair &s);

/// 2 alpha^2 beta^2, the one-shot success probability of the CNOT protocol.
double cnot_success_probability(const SchmidtPair &s);

/// 1 - (alpha^2 - beta^2), conclusive probability of the optimal unambiguous
/// discrimination of alpha|0> +/- beta|1>.
double idp_conclusive_probability(const SchmidtPair &s);

/// (alpha^2, beta^2) / sqrt(alpha^4 + beta^4). Throws kDegenerateInput for beta = 0.
SchmidtPair residual_schmidt(const SchmidtPair &s);

/// 2 beta^4 / (alpha^4 + beta^4). Throws kDegenerateInput for beta = 0.
double conclusive_prob_chi(const SchmidtPair &s);

/// Cumulative yield of the iterative protocol.
///
/// terms[j] is the expected fraction of the original ensemble converted in
/// round j + 1:
///
///     terms[0] = 2 a^2 b^2
///     terms[j] = 2 a^(2^(j+1)) b^(2^(j+1)) / prod_{i=1..j} (a^(2^(i+1)) + b^(2^(i+1)))
///
/// computed as 2 b^4 x^(4(2^(j-1) - 1)) / prod_{i=1..j} (1 + x^(2^(i+1))) with
/// x = b/a, so powers shrink instead of overflowing. partial_sums[k - 1] is
/// I_k, the k-term sum of the bracketed series in x (it tends to 1), and
/// cumulative_fractions[k - 1] = 2 a^2 b^2 + 2 b^4 I_(k-1) is the fraction after
/// k rounds.
struct YieldCurve {
    double x = 0.0;
    std::vector<double> terms;
    std::vector<double> partial_sums;
    std::vector<double> cumulative_fractions;
    /// x^(4(2^k - 1)) for k = 1..k_rounds. Upper bound on 1 - I_k obtained by
    /// telescoping the series.
    std::vector<double> remainder_bounds;
    double limit = 0.0;
    /// alpha == beta: every residual is already maximally entangled.
    bool degenerate = false;
};

/// Requires beta > 0 and k_rounds >= 1.
YieldCurve yield_series(const SchmidtPair &s, std::size_t k_rounds);

/// Extended-precision evaluation of I_1..I_k for one x, for properties that
/// double precision cannot resolve (the terms fall below 1e-4000 quickly).
struct SeriesCertificate {
    double x = 0.0;
    unsigned precision_bits = 0;
    /// log10(1 - I_k) and log10 x^(4(2^k - 1)), k = 1..k_max.
    std::vector<double> log10_remainders;
    std::vector<double> log10_bounds;
    bool strictly_increasing = false;
    bool bounded_by_one = false;
    bool within_bound = false;
};

/// Requires 0 < x < 1 and 1 <= k_max <= 16. Working precision is chosen from
/// the magnitude of the smallest term so every term changes the sum.
SeriesCertificate certify_series(double x, std::size_t k_max);

struct ConservationReport {
    double e_before = 0.0;
    double e_after = 0.0;

    double deviation() const {
        return e_after > e_before ? e_after - e_before : e_before - e_after;
    }
};

struct CatSetup {
    std::size_t n_parties = 3;
    CatMethod method = CatMethod::kProposal2;
    CatOptions options{};
};

/// e_before = 2 beta^2; e_after = sum over the protocol's exact branches of
/// p(branch) * shared_entanglement(branch). kProposal1Iterate checks a single
/// round, which is where conservation is claimed.
ConservationReport conservation_check(const SchmidtPair &s, ProtocolId protocol, const CatSetup &cat = {});

}  // namespace concentrate
