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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "concentrate/analytics.h"
#include "concentrate/harness.h"
#include "concentrate/measurement.h"
#include "concentrate/protocols.h"

using namespace concentrate;

namespace {

class Criterion {
   public:
    explicit Criterion(std::string name) : name_(std::move(name)) {
    }

    void expect(bool ok, const std::string &what) {
        if (!ok && failures_.size() < 5) {
            failures_.push_back(what);
        }
        failed_ = failed_ || !ok;
    }

    void near(double got, double want, double tol, const std::string &what) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s: got %.15g want %.15g", what.c_str(), got, want);
        expect(std::abs(got - want) <= tol, buf);
    }

    bool failed() const {
        return failed_;
    }
    const std::string &name() const {
        return name_;
    }
    const std::vector<std::string> &failures() const {
        return failures_;
    }

   private:
    std::string name_;
    bool failed_ = false;
    std::vector<std::string> failures_;
};

std::vector<double> grid50() {
    std::vector<double> out;
    for (int i = 0; i < 50; ++i) {
        out.push_back(0.5 + 0.49 * i / 49.0);
    }
    return out;
}

CampaignConfig make_config(ProtocolId id, double alpha_sq, std::uint64_t trials, std::uint64_t seed) {
    CampaignConfig c;
    c.protocol = id;
    c.alpha_sq = alpha_sq;
    c.trials = trials;
    c.seed = seed;
    return c;
}

double success_mass(const std::vector<Branch> &branches) {
    double p = 0.0;
    for (const auto &b : branches) {
        if (b.outcome.kind == OutcomeKind::kSuccess) {
            p += b.probability;
        }
    }
    return p;
}

void single_pair_cnot(Criterion &c) {
    std::uint64_t seed = 101;
    for (double a2 : {0.55, 0.6, 0.75, 0.9, 0.95}) {
        const double b2 = 1.0 - a2;
        const std::string at = "alpha^2=" + std::to_string(a2);
        auto exact = run_exact(make_config(ProtocolId::kProposal1, a2, 1, 0));
        c.near(exact.overall.empirical_fraction, 2.0 * a2 * b2, 1e-12, "exact p " + at);
        c.expect(exact.pass, "exact verdict " + at);
        auto mc = run_campaign(make_config(ProtocolId::kProposal1, a2, 1000000, seed++));
        const double p = 2.0 * a2 * b2;
        const double sigma = std::sqrt(p * (1.0 - p) / 1e6);
        c.near(mc.overall.empirical_fraction, p, 4.0 * sigma, "campaign p " + at);
    }
}

void iterative_yield(Criterion &c) {
    const double a2 = 0.75;
    auto s = SchmidtPair::from_alpha_sq(a2);
    auto config = make_config(ProtocolId::kProposal1Iterate, a2, 100000, 202);
    config.rounds = 6;
    auto curve = yield_series(s, 6);

    // Partial sum of the product-form terms, evaluated directly.
    double partial = 0.0;
    for (int j = 0; j < 6; ++j) {
        const double e = std::ldexp(1.0, j + 1);
        double denom = 1.0;
        for (int i = 1; i <= j; ++i) {
            const double q = std::ldexp(1.0, i + 1);
            denom *= std::pow(s.alpha(), q) + std::pow(s.beta(), q);
        }
        partial += 2.0 * std::pow(s.alpha(), e) * std::pow(s.beta(), e) / denom;
    }
    c.near(curve.cumulative_fractions.back(), partial, 1e-12, "yield_series vs direct terms");

    auto mc = run_campaign(config);
    const double sigma = std::sqrt(partial * (1.0 - partial) / 1e5);
    c.near(mc.overall.empirical_fraction, partial, 4.0 * sigma, "campaign cumulative fraction");

    auto exact = run_exact(config);
    c.expect(exact.rounds.size() == 6, "six exact rounds");
    double cumulative = 0.0;
    for (std::size_t r = 0; r < exact.rounds.size() && r < 6; ++r) {
        cumulative += exact.rounds[r].successes;
        c.near(cumulative, curve.cumulative_fractions[r], 1e-12, "exact round " + std::to_string(r + 1));
    }
    c.near(cumulative, 2.0 * (1.0 - a2), 1e-3, "round-6 fraction vs 2 beta^2");
}

void series_convergence(Criterion &c) {
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const std::string at = "x=" + std::to_string(x);
        auto cert = certify_series(x, 10);
        c.expect(cert.strictly_increasing, "I_k strictly increasing " + at);
        c.expect(cert.bounded_by_one, "I_k < 1 " + at);
        c.expect(cert.within_bound, "1 - I_k within bound " + at);
        auto curve = yield_series(SchmidtPair::from_coefficients(1.0, x), 10);
        for (std::size_t k = 1; k < curve.partial_sums.size(); ++k) {
            c.expect(curve.partial_sums[k] >= curve.partial_sums[k - 1], "double I_k nondecreasing " + at);
        }
        const double rem = 1.0 - curve.partial_sums[9];
        const double bound = std::pow(curve.x, 4.0 * (std::ldexp(1.0, 10) - 1.0));
        c.expect(rem >= 0.0 && rem <= bound, "1 - I_10 <= x^(4(2^10-1)) " + at);
    }
}

void povm_validity(Criterion &c) {
    for (double a2 : grid50()) {
        auto s = SchmidtPair::from_alpha_sq(a2);
        const std::string at = "alpha^2=" + std::to_string(a2);
        auto povm = build_idp_povm(s);
        Operator total = Operator::Zero(2, 2);
        for (std::size_t i = 0; i < povm.size(); ++i) {
            Eigen::SelfAdjointEigenSolver<Operator> eig(povm.element(i));
            c.expect(eig.eigenvalues().minCoeff() >= -1e-12, "PSD " + at);
            total += povm.element(i);
        }
        c.expect((total - Operator::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-12, "completeness " + at);
        for (double sign : {1.0, -1.0}) {
            Eigen::Vector2cd u(s.alpha(), sign * s.beta());
            const double conclusive =
                (u.adjoint() * (povm.element(0) + povm.element(1)) * u)(0).real();
            c.near(conclusive, 1.0 - (a2 - (1.0 - a2)), 1e-12, "conclusive " + at);
            c.near(conclusive, 2.0 * (1.0 - a2), 1e-12, "conclusive = 2 beta^2 " + at);
        }
    }
}

void proposal2_end_to_end(Criterion &c) {
    std::uint64_t seed = 505;
    for (double a2 : {0.6, 0.75, 0.9}) {
        const std::string at = "alpha^2=" + std::to_string(a2);
        auto exact = run_exact(make_config(ProtocolId::kProposal2, a2, 1, 0));
        c.near(exact.overall.empirical_fraction, 2.0 * (1.0 - a2), 1e-12, "exact p " + at);
        for (const auto &b : exact.branches) {
            if (b.kind == OutcomeKind::kSuccess) {
                c.expect(b.bell == BellKind::kPhiPlus || b.bell == BellKind::kPhiMinus, "Phi target " + at);
                c.expect(b.fidelity && *b.fidelity >= 1.0 - 1e-10, "fidelity " + at);
            } else {
                c.expect(b.entanglement <= 1e-10, "inconclusive entanglement " + at);
            }
        }
    }
    const double a2 = 0.75;
    const double p = 2.0 * (1.0 - a2);
    auto mc = run_campaign(make_config(ProtocolId::kProposal2, a2, 1000000, seed));
    c.near(mc.overall.empirical_fraction, p, 4.0 * std::sqrt(p * (1 - p) / 1e6), "campaign p");
}

void entanglement_assisted(Criterion &c) {
    for (double a2 : {0.55, 0.7, 0.8, 0.95}) {
        const double b2 = 1.0 - a2;
        const double a4 = a2 * a2;
        const double b4 = b2 * b2;
        const std::string at = "alpha^2=" + std::to_string(a2);
        auto report = run_exact(make_config(ProtocolId::kEntanglementAssisted, a2, 1, 0));
        double even = 0.0;
        double even_success = 0.0;
        double odd = 0.0;
        double odd_success = 0.0;
        for (const auto &b : report.branches) {
            const bool is_even = b.path.rfind("even", 0) == 0;
            (is_even ? even : odd) += b.probability;
            if (b.kind == OutcomeKind::kSuccess) {
                (is_even ? even_success : odd_success) += b.probability;
            }
        }
        c.near(even, a4 + b4, 1e-12, "even branch " + at);
        c.near(odd, 2.0 * a2 * b2, 1e-12, "odd branch " + at);
        c.near(even_success / even, 2.0 * b4 / (a4 + b4), 1e-12, "conditional conclusive " + at);
        c.near(odd_success / odd, 1.0, 1e-12, "odd success " + at);
        c.near(report.overall.empirical_fraction, 2.0 * b4 + 2.0 * a2 * b2, 1e-12, "overall " + at);
        c.near(report.overall.empirical_fraction, 2.0 * b2, 1e-12, "overall = 2 beta^2 " + at);
    }
}

void conservation(Criterion &c) {
    for (double a2 : grid50()) {
        auto s = SchmidtPair::from_alpha_sq(a2);
        for (auto id : {ProtocolId::kProposal1, ProtocolId::kProposal1Iterate, ProtocolId::kProposal2,
                        ProtocolId::kEntanglementAssisted}) {
            auto r = conservation_check(s, id);
            c.near(r.e_after, 2.0 * (1.0 - a2), 1e-12, std::string(to_string(id)) + " " + std::to_string(a2));
        }
        for (auto method : {CatMethod::kProposal1, CatMethod::kProposal2}) {
            auto r = conservation_check(s, ProtocolId::kCat, CatSetup{3, method, {}});
            c.near(r.e_after, 2.0 * (1.0 - a2), 1e-12, "cat " + std::to_string(a2));
        }
    }
}

void multipartite(Criterion &c) {
    for (double a2 : {0.6, 0.8}) {
        const double b2 = 1.0 - a2;
        auto s = SchmidtPair::from_alpha_sq(a2);
        for (std::size_t n = 3; n <= 6; ++n) {
            const std::string at = "n=" + std::to_string(n) + " alpha^2=" + std::to_string(a2);
            for (auto method : {CatMethod::kProposal1, CatMethod::kProposal2}) {
                const double want = method == CatMethod::kProposal1 ? 2.0 * a2 * b2 : 2.0 * b2;
                for (std::size_t actor = 0; actor < n; ++actor) {
                    auto branches = enumerate_branches(CatStateProtocol(s, n, method, CatOptions{actor, false}));
                    c.near(success_mass(branches), want, 1e-12,
                           std::string(to_string(method)) + " actor " + std::to_string(actor) + " " + at);
                    for (const auto &b : branches) {
                        if (b.outcome.kind == OutcomeKind::kSuccess) {
                            c.expect(success_fidelity(b.outcome) >= 1.0 - 1e-10, "fidelity " + at);
                        }
                    }
                }
            }
        }
    }
}

void determinism(Criterion &c) {
    for (auto id : {ProtocolId::kProposal1, ProtocolId::kProposal1Iterate, ProtocolId::kProposal2,
                    ProtocolId::kEntanglementAssisted, ProtocolId::kCat}) {
        const std::string name(to_string(id));
        auto config = make_config(id, 0.7, 40000, 909);
        const std::string json = render_json(run_campaign(config));
        const std::string csv = render_csv(run_campaign(config));
        c.expect(render_json(run_campaign(config)) == json, "json rerun " + name);
        c.expect(render_csv(run_campaign(config)) == csv, "csv rerun " + name);
        for (unsigned threads : {2U, 4U}) {
            config.threads = threads;
            c.expect(render_json(run_campaign(config)) == json, "json threads " + name);
        }
        config.threads = 1;
        const std::string exact = render_json(run_exact(config));
        c.expect(render_json(run_exact(config)) == exact, "exact rerun " + name);
    }
}

struct Entry {
    const char *name;
    double limit_seconds;
    std::function<void(Criterion &)> body;
};

}  // namespace

int main() {
    const std::vector<Entry> entries = {
        {"1 single-pair CNOT probability", 10.0, single_pair_cnot},
        {"2 iterative yield", 30.0, iterative_yield},
        {"3 series convergence", 1.0, series_convergence},
        {"4 POVM validity and optimality", 1.0, povm_validity},
        {"5 POVM protocol end to end", 10.0, proposal2_end_to_end},
        {"6 entanglement-assisted", 5.0, entanglement_assisted},
        {"7 conservation of average entanglement", 0.0, conservation},
        {"8 multipartite cat states", 10.0, multipartite},
        {"9 determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto &entry : entries) {
        Criterion c(entry.name);
        const auto start = std::chrono::steady_clock::now();
        try {
            entry.body(c);
        } catch (const std::exception &e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (entry.limit_seconds > 0.0) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "runtime %.2fs exceeds %.0fs", seconds, entry.limit_seconds);
            c.expect(seconds < entry.limit_seconds, buf);
        }
        std::printf("[%s] %s (%.2fs)\n", c.failed() ? "FAIL" : "PASS", c.name().c_str(), seconds);
        for (const auto &f : c.failures()) {
            std::printf("       %s\n", f.c_str());
        }
        failed += c.failed() ? 1 : 0;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
    return failed == 0 ? 0 : 1;
}
