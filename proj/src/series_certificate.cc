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

#include <cmath>

#include <mpfr.h>

#include "concentrate/analytics.h"

namespace concentrate {

namespace {

class BigFloat {
   public:
    explicit BigFloat(mpfr_prec_t bits) {
        mpfr_init2(value_, bits);
        mpfr_set_zero(value_, 1);
    }
    ~BigFloat() {
        mpfr_clear(value_);
    }
    BigFloat(const BigFloat &) = delete;
    BigFloat &operator=(const BigFloat &) = delete;

    mpfr_ptr get() {
        return value_;
    }
    mpfr_srcptr get() const {
        return value_;
    }

   private:
    mpfr_t value_;
};

double log10_of(const BigFloat &v) {
    long exponent = 0;
    double mantissa = mpfr_get_d_2exp(&exponent, v.get(), MPFR_RNDN);
    return std::log10(mantissa) + static_cast<double>(exponent) * std::log10(2.0);
}

}  // namespace

SeriesCertificate certify_series(double x, std::size_t k_max) {
    if (!(x > 0.0 && x < 1.0)) {
        throw Error(ErrorCode::kInvalidArgument, "the series is certified for 0 < x < 1 only");
    }
    if (k_max == 0 || k_max > 16) {
        throw Error(ErrorCode::kInvalidArgument, "k_max must lie in 1..16");
    }
    // 1 - I_k is about x^(4(2^k - 1)); carry enough bits to resolve it next to 1.
    const double smallest_log2 = 4.0 * (std::ldexp(1.0, static_cast<int>(k_max)) - 1.0) * std::log2(x);
    const double needed = -smallest_log2 + 128.0;
    if (needed > 1 << 24) {
        throw Error(ErrorCode::kInvalidArgument, "x too small for extended-precision certification");
    }
    const auto bits = static_cast<mpfr_prec_t>(needed);

    SeriesCertificate cert;
    cert.x = x;
    cert.precision_bits = static_cast<unsigned>(bits);
    cert.strictly_increasing = true;
    cert.bounded_by_one = true;
    cert.within_bound = true;

    BigFloat q(bits), numerator(bits), product(bits), sum(bits), previous(bits), term(bits), remainder(bits),
        factor(bits);
    mpfr_set_d(q.get(), x, MPFR_RNDN);
    mpfr_pow_ui(q.get(), q.get(), 4, MPFR_RNDN);
    mpfr_set_ui(numerator.get(), 1, MPFR_RNDN);
    mpfr_set_ui(product.get(), 1, MPFR_RNDN);
    for (std::size_t m = 0; m < k_max; ++m) {
        mpfr_add_ui(factor.get(), q.get(), 1, MPFR_RNDN);
        mpfr_mul(product.get(), product.get(), factor.get(), MPFR_RNDN);
        mpfr_div(term.get(), numerator.get(), product.get(), MPFR_RNDN);
        mpfr_mul(numerator.get(), numerator.get(), q.get(), MPFR_RNDN);
        mpfr_sqr(q.get(), q.get(), MPFR_RNDN);

        mpfr_set(previous.get(), sum.get(), MPFR_RNDN);
        mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
        if (mpfr_cmp(sum.get(), previous.get()) <= 0) {
            cert.strictly_increasing = false;
        }
        if (mpfr_cmp_ui(sum.get(), 1) >= 0) {
            cert.bounded_by_one = false;
        }
        mpfr_ui_sub(remainder.get(), 1, sum.get(), MPFR_RNDN);
        // numerator now holds x^(4(2^(m+1) - 1)), the bound for I_(m+1).
        if (mpfr_cmp(remainder.get(), numerator.get()) > 0 || mpfr_sgn(remainder.get()) < 0) {
            cert.within_bound = false;
        }
        cert.log10_remainders.push_back(mpfr_sgn(remainder.get()) > 0 ? log10_of(remainder) : -INFINITY);
        cert.log10_bounds.push_back(log10_of(numerator));
    }
    return cert;
}

}  // namespace concentrate
