/*
 * Copyright 2026 The rbdo-ouq Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ouq/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <boost/random/sobol.hpp>

#include "ouq/error.hpp"
#include "ouq/rng.hpp"

namespace ouq {

AleatoryBlock make_aleatory_block(const UQProblem& problem, std::span<const double> z) {
    AleatoryBlock block;
    for (std::size_t i = 0; i < problem.quantities.size(); ++i) {
        const auto& q = problem.quantities[i];
        if (q.epistemic()) continue;
        if (!q.distribution) throw Error("aleatory quantity '" + q.name + "' has no distribution");
        std::map<std::string, double> params;
        for (const auto& p : q.distribution->parameters) {
            if (p.is_reference()) {
                auto idx = problem.index_of(p.reference);
                if (!idx) throw Error("unknown parameter reference '" + p.reference + "'");
                params[p.name] = z[*idx];
            } else {
                params[p.name] = p.value;
            }
        }
        block.distributions.emplace_back(q.distribution->family, params);
        block.slots.push_back(i);
    }
    return block;
}

std::vector<double> to_standard_normal(const AleatoryBlock& block, std::span<const double> physical) {
    if (physical.size() != block.size()) throw Error("dimension mismatch in standard-normal transform");
    std::vector<double> u(physical.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = block.distributions[i].to_standard_normal(physical[i]);
    return u;
}

std::vector<double> from_standard_normal(const AleatoryBlock& block, std::span<const double> u) {
    if (u.size() != block.size()) throw Error("dimension mismatch in standard-normal transform");
    std::vector<double> x(u.size());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = block.distributions[i].from_standard_normal(u[i]);
    return x;
}

void EstimatorConfig::validate() const {
    if (n_samples < 1 || n_lines < 1) throw Error("estimator sample and line counts must be >= 1");
    if (!(root_tolerance > 0.0)) throw Error("root_tolerance must be positive");
}

namespace {

constexpr double kScanStep = 0.5;
constexpr double kScanLimit = 10.0;
constexpr double kGradientStep = 1e-2;
constexpr std::size_t kPilotLines = 5;
constexpr double kPilotSpread = 0.2;

// Limit state in standard normal space with the epistemic entries held fixed.
class StandardSpaceModel {
public:
    StandardSpaceModel(const ResponseFn& g, std::span<const double> z, const AleatoryBlock& block)
        : g_(g), z_(z.begin(), z.end()), block_(block) {}

    double operator()(std::span<const double> u) {
        for (std::size_t i = 0; i < block_.size(); ++i)
            z_[block_.slots[i]] = block_.distributions[i].from_standard_normal(u[i]);
        const double value = g_(z_);
        if (std::isnan(value)) throw Error("limit state returned NaN");
        return value;
    }

    [[nodiscard]] std::span<const double> last_input() const { return z_; }

private:
    const ResponseFn& g_;
    std::vector<double> z_;
    const AleatoryBlock& block_;
};

double norm(std::span<const double> v) {
    return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

std::vector<double> draw_normal(std::uint64_t seed, std::uint64_t stream, std::size_t dim) {
    Rng rng(derive_seed(seed, stream));
    std::vector<double> u(dim);
    for (double& x : u) x = rng.normal();
    return u;
}

struct LineResult {
    double root = 0.0;  // distance along the direction where failure starts
    double p = 0.0;
    bool resolved = true;
};

// Failure is assumed to occupy the half-line beyond a single crossing.
LineResult solve_line(StandardSpaceModel& model, std::span<const double> base, std::span<const double> alpha,
                      double tolerance) {
    std::vector<double> u(base.size());
    auto along = [&](double c) {
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = base[i] + c * alpha[i];
        return model(u);
    };

    double safe = 0.0;
    double fail = 0.0;
    if (along(0.0) > 0.0) {
        bool found = false;
        for (double c = kScanStep; c <= kScanLimit + 1e-12; c += kScanStep) {
            if (along(c) <= 0.0) {
                fail = c;
                safe = c - kScanStep;
                found = true;
                break;
            }
        }
        if (!found) return {kScanLimit, 0.0, false};
    } else {
        bool found = false;
        for (double c = -kScanStep; c >= -kScanLimit - 1e-12; c -= kScanStep) {
            if (along(c) > 0.0) {
                safe = c;
                fail = c + kScanStep;
                found = true;
                break;
            }
        }
        if (!found) return {-kScanLimit, 1.0, true};
    }

    while (fail - safe > tolerance) {
        const double mid = 0.5 * (safe + fail);
        if (along(mid) <= 0.0)
            fail = mid;
        else
            safe = mid;
    }
    const double root = 0.5 * (safe + fail);
    return {root, normal_cdf(-root), true};
}

std::vector<double> important_direction(StandardSpaceModel& model, std::size_t dim) {
    std::vector<double> grad(dim), u(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        u[i] = kGradientStep;
        const double up = model(u);
        u[i] = -kGradientStep;
        const double down = model(u);
        u[i] = 0.0;
        grad[i] = (up - down) / (2.0 * kGradientStep);
    }
    const double n = norm(grad);
    std::vector<double> alpha(dim, 0.0);
    if (!(n > 0.0) || !std::isfinite(n)) {
        alpha[0] = 1.0;
        return alpha;
    }
    for (std::size_t i = 0; i < dim; ++i) alpha[i] = -grad[i] / n;
    return alpha;
}

// Orthonormal basis of the hyperplane orthogonal to the unit vector alpha,
// taken from the columns of the Householder reflection mapping e_k to alpha.
std::vector<std::vector<double>> orthogonal_basis(std::span<const double> alpha) {
    const std::size_t dim = alpha.size();
    std::size_t k = 0;
    for (std::size_t i = 1; i < dim; ++i)
        if (std::abs(alpha[i]) > std::abs(alpha[k])) k = i;
    std::vector<double> v(alpha.begin(), alpha.end());
    v[k] -= 1.0;
    const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
    std::vector<std::vector<double>> basis;
    for (std::size_t j = 0; j < dim; ++j) {
        if (j == k) continue;
        std::vector<double> col(dim, 0.0);
        col[j] = 1.0;
        if (vv > 0.0)
            for (std::size_t i = 0; i < dim; ++i) col[i] -= 2.0 * v[i] * v[j] / vv;
        basis.push_back(std::move(col));
    }
    return basis;
}

// Distance from the origin to the limit state along the unit ray alpha;
// +inf when the ray stays safe within the scan range.
double ray_distance(StandardSpaceModel& model, std::span<const double> alpha, double tolerance) {
    const std::vector<double> origin(alpha.size(), 0.0);
    const LineResult r = solve_line(model, origin, alpha, tolerance);
    return r.resolved ? r.root : std::numeric_limits<double>::infinity();
}

std::vector<double> rotated(std::span<const double> alpha, std::span<const double> tangent, double angle) {
    std::vector<double> out(alpha.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = alpha[i] + angle * tangent[i];
    const double n = norm(out);
    for (double& x : out) x /= n;
    return out;
}

// Steepest descent of the ray distance over the unit sphere, started from
// alpha. Gradients are central differences over tangent rotations.
std::vector<double> design_point_direction(StandardSpaceModel& model, std::vector<double> alpha, double tolerance) {
    constexpr int kMaxIterations = 20;
    constexpr double kAngleStep = 0.02;
    constexpr double kMaxTurn = 0.5;
    double beta = ray_distance(model, alpha, tolerance);
    if (!std::isfinite(beta) || beta <= 0.0) return alpha;
    for (int it = 0; it < kMaxIterations; ++it) {
        const auto basis = orthogonal_basis(alpha);
        std::vector<double> descent(alpha.size(), 0.0);
        for (const auto& b : basis) {
            const double up = ray_distance(model, rotated(alpha, b, kAngleStep), tolerance);
            const double down = ray_distance(model, rotated(alpha, b, -kAngleStep), tolerance);
            if (!std::isfinite(up) || !std::isfinite(down)) continue;
            const double slope = (up - down) / (2.0 * kAngleStep);
            for (std::size_t i = 0; i < alpha.size(); ++i) descent[i] -= slope * b[i];
        }
        const double slope_norm = norm(descent);
        if (!(slope_norm > 0.0)) break;
        for (double& x : descent) x /= slope_norm;
        // On a sphere of radius beta the slope is about beta times the turn
        // angle, which sets the first trial turn.
        double turn = std::min(kMaxTurn, slope_norm / beta);
        bool improved = false;
        for (int k = 0; k < 6 && !improved; ++k, turn *= 0.5) {
            auto trial = rotated(alpha, descent, std::tan(turn));
            const double b = ray_distance(model, trial, tolerance);
            if (b < beta) {
                improved = beta - b > 1e-4 * beta;
                alpha = std::move(trial);
                beta = b;
                if (!improved) return alpha;
            }
        }
        if (!improved) break;
    }
    return alpha;
}

// Korobov generator (1, a, a^2, ...) mod n minimizing the P2 figure of merit,
// which has a closed form through the Bernoulli polynomial B2.
std::vector<std::uint64_t> korobov_generator(std::uint64_t n, std::size_t dim) {
    auto vector_for = [&](std::uint64_t a) {
        std::vector<std::uint64_t> z(dim);
        std::uint64_t v = 1 % n;
        for (auto& zj : z) {
            zj = v;
            v = v * a % n;
        }
        return z;
    };
    if (n < 3) return vector_for(1);
    constexpr double kTwoPiSq = 2.0 * std::numbers::pi * std::numbers::pi;
    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_a = 1;
    for (std::uint64_t a = 1; a < n; ++a) {
        if (std::gcd(a, n) != 1) continue;
        const auto z = vector_for(a);
        double sum = 0.0;
        for (std::uint64_t k = 0; k < n; ++k) {
            double prod = 1.0;
            for (std::uint64_t zj : z) {
                const double x = static_cast<double>(k * zj % n) / static_cast<double>(n);
                prod *= 1.0 + kTwoPiSq * (x * x - x + 1.0 / 6.0);
            }
            sum += prod;
        }
        if (sum < best) {
            best = sum;
            best_a = a;
        }
    }
    return vector_for(best_a);
}

// Line base points in the hyperplane orthogonal to alpha, standard normal in
// that hyperplane.
std::vector<std::vector<double>> line_bases(const EstimatorConfig& cfg, std::span<const double> alpha) {
    const std::size_t dim = alpha.size();
    std::vector<std::vector<double>> bases;
    bases.reserve(cfg.n_lines);
    if (cfg.bases == LineBases::pseudo_random) {
        for (std::uint64_t line = 0; line < cfg.n_lines; ++line) {
            auto u = draw_normal(cfg.seed, line, dim);
            const double along = std::inner_product(u.begin(), u.end(), alpha.begin(), 0.0);
            for (std::size_t i = 0; i < dim; ++i) u[i] -= along * alpha[i];
            bases.push_back(std::move(u));
        }
        return bases;
    }

    // Low-discrepancy points with a seeded random shift modulo one.
    const auto basis = orthogonal_basis(alpha);
    const std::size_t sub = basis.size();
    if (sub == 0) return std::vector<std::vector<double>>(cfg.n_lines, std::vector<double>(dim, 0.0));
    Rng rng(derive_seed(cfg.seed, 0x5eed));
    std::vector<double> shift(sub);
    for (double& x : shift) x = rng.uniform();
    boost::random::sobol engine(static_cast<unsigned>(sub));
    constexpr double kScale = 0x1p-64;
    const bool lattice = cfg.bases == LineBases::lattice;
    const auto generator = lattice ? korobov_generator(cfg.n_lines, sub) : std::vector<std::uint64_t>{};
    for (std::uint64_t line = 0; line < cfg.n_lines; ++line) {
        std::vector<double> u(dim, 0.0);
        for (std::size_t j = 0; j < sub; ++j) {
            double x = lattice ? static_cast<double>(line * generator[j] % cfg.n_lines) / static_cast<double>(cfg.n_lines)
                               : static_cast<double>(engine()) * kScale;
            x += shift[j];
            x -= std::floor(x);
            if (lattice) x = 1.0 - std::abs(2.0 * x - 1.0);
            const double t = normal_quantile(std::clamp(x, 1e-300, 1.0 - 1e-16));
            for (std::size_t i = 0; i < dim; ++i) u[i] += t * basis[j][i];
        }
        bases.push_back(std::move(u));
    }
    return bases;
}

ProbabilityEstimate run_lines(StandardSpaceModel& model, const AleatoryBlock& block, const EstimatorConfig& cfg,
                              std::vector<double> alpha, bool allow_refresh) {
    const std::size_t dim = block.size();
    std::vector<double> probabilities;
    probabilities.reserve(cfg.n_lines);
    std::vector<std::vector<double>> pilot_points;
    std::vector<double> pilot_roots;
    ProbabilityEstimate est;
    const auto bases = line_bases(cfg, alpha);

    for (std::uint64_t line = 0; line < cfg.n_lines; ++line) {
        const auto& u = bases[line];
        const LineResult r = solve_line(model, u, alpha, cfg.root_tolerance);
        probabilities.push_back(r.p);
        if (!r.resolved) ++est.unresolved_lines;

        if (allow_refresh && line < kPilotLines) {
            if (r.resolved) {
                pilot_roots.push_back(r.root);
                std::vector<double> point(dim);
                for (std::size_t i = 0; i < dim; ++i) point[i] = u[i] + r.root * alpha[i];
                pilot_points.push_back(std::move(point));
            }
            if (line + 1 == std::min<std::uint64_t>(kPilotLines, cfg.n_lines) && pilot_roots.size() >= 2) {
                const auto [lo, hi] = std::minmax_element(pilot_roots.begin(), pilot_roots.end());
                const double mean =
                    std::accumulate(pilot_roots.begin(), pilot_roots.end(), 0.0) / static_cast<double>(pilot_roots.size());
                if (*hi - *lo > kPilotSpread * std::max(std::abs(mean), 1.0)) {
                    // Re-aim at the closest limit-state point found so far.
                    const auto closest = std::min_element(
                        pilot_points.begin(), pilot_points.end(),
                        [](const auto& a, const auto& b) { return norm(a) < norm(b); });
                    const double n = norm(*closest);
                    if (n > 0.0) {
                        std::vector<double> fresh(dim);
                        for (std::size_t i = 0; i < dim; ++i) fresh[i] = (*closest)[i] / n;
                        auto refreshed = run_lines(model, block, cfg, std::move(fresh), false);
                        refreshed.direction_refreshed = true;
                        return refreshed;
                    }
                }
            }
        }
    }

    const double count = static_cast<double>(probabilities.size());
    est.p = std::accumulate(probabilities.begin(), probabilities.end(), 0.0) / count;
    if (probabilities.size() > 1) {
        double ss = 0.0;
        for (double p : probabilities) ss += (p - est.p) * (p - est.p);
        est.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    return est;
}

}  // namespace

ProbabilityEstimate chi_failure(const ResponseFn& g, std::span<const double> z, const AleatoryBlock& block,
                                const EstimatorConfig& cfg) {
    cfg.validate();
    StandardSpaceModel model(g, z, block);
    const std::size_t dim = block.size();
    if (dim == 0) {
        std::vector<double> none;
        return {model(none) <= 0.0 ? 1.0 : 0.0, 0.0, 0, false};
    }

    if (cfg.method == EstimatorMethod::crude_mc) {
        std::uint64_t failures = 0;
        for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
            const auto u = draw_normal(cfg.seed, i, dim);
            if (model(u) <= 0.0) ++failures;
        }
        const double n = static_cast<double>(cfg.n_samples);
        const double p = static_cast<double>(failures) / n;
        return {p, std::sqrt(p * (1.0 - p) / n), 0, false};
    }

    auto alpha = important_direction(model, dim);
    if (dim > 1 && cfg.direction == LineDirection::design_point)
        alpha = design_point_direction(model, std::move(alpha), cfg.root_tolerance);
    if (dim == 1) {
        // Every line coincides with the axis: one root gives the exact answer.
        const std::vector<double> origin{0.0};
        const LineResult r = solve_line(model, origin, alpha, cfg.root_tolerance);
        return {r.p, 0.0, r.resolved ? 0u : cfg.n_lines, false};
    }
    return run_lines(model, block, cfg, std::move(alpha), true);
}

ExpectationEstimate chi_expectation(const ResponseFn& model, std::span<const double> z, const AleatoryBlock& block,
                                    const EstimatorConfig& cfg) {
    cfg.validate();
    std::vector<double> input(z.begin(), z.end());
    auto evaluate = [&](std::uint64_t sample) {
        const double value = model(input);
        if (!std::isfinite(value)) {
            std::ostringstream msg;
            msg << "non-finite model output at sample " << sample << ", z = [";
            for (std::size_t i = 0; i < input.size(); ++i) msg << (i ? ", " : "") << input[i];
            msg << "]";
            throw Error(msg.str());
        }
        return value;
    };
    if (block.size() == 0) return {evaluate(0), 0.0};

    // Welford accumulation keeps the variance exact for constant outputs.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
        const auto u = draw_normal(cfg.seed, i, block.size());
        for (std::size_t k = 0; k < block.size(); ++k)
            input[block.slots[k]] = block.distributions[k].from_standard_normal(u[k]);
        const double x = evaluate(i);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
    }
    const double n = static_cast<double>(cfg.n_samples);
    const double var = cfg.n_samples > 1 ? m2 / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace ouq
