#include "qadder/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qadder/optimizer.hpp"

namespace qadder {

const char *const kConjecturedConverse =
    "sum bound: conjectured converse (achievable by time sharing, optimality unproven)";

namespace {

constexpr double kFeasibleTol = 1e-9;
constexpr double kTieTol = 1e-12;
constexpr std::size_t kMaxSupport = 8;

double clean(double v) {
    return std::abs(v) < 1e-15 ? 0.0 : v;
}

std::vector<RatePoint> extract_vertices(const std::vector<Constraint> &user) {
    std::vector<Constraint> all = user;
    all.push_back({-1, 0, 0});
    all.push_back({0, -1, 0});

    std::vector<RatePoint> pts;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto &p = all[i];
            const auto &q = all[j];
            const double det = p.a * q.b - p.b * q.a;
            if (std::abs(det) < kTieTol) {
                continue;
            }
            const RatePoint x{clean((p.c * q.b - p.b * q.c) / det), clean((p.a * q.c - p.c * q.a) / det)};
            bool feasible = true;
            for (const auto &k : all) {
                if (k.a * x.r1 + k.b * x.r2 > k.c + kFeasibleTol) {
                    feasible = false;
                    break;
                }
            }
            if (!feasible) {
                continue;
            }
            const bool duplicate = std::any_of(pts.begin(), pts.end(), [&](const RatePoint &y) {
                return std::abs(y.r1 - x.r1) <= kTieTol && std::abs(y.r2 - x.r2) <= kTieTol;
            });
            if (!duplicate) {
                pts.push_back(x);
            }
        }
    }
    if (pts.size() < 2) {
        return pts;
    }
    double cx = 0;
    double cy = 0;
    for (const auto &p : pts) {
        cx += p.r1;
        cy += p.r2;
    }
    cx /= static_cast<double>(pts.size());
    cy /= static_cast<double>(pts.size());
    std::sort(pts.begin(), pts.end(), [&](const RatePoint &a, const RatePoint &b) {
        return std::atan2(a.r2 - cy, a.r1 - cx) < std::atan2(b.r2 - cy, b.r1 - cx);
    });
    const auto nearest = std::min_element(pts.begin(), pts.end(), [](const RatePoint &a, const RatePoint &b) {
        return std::hypot(a.r1, a.r2) < std::hypot(b.r1, b.r2);
    });
    std::rotate(pts.begin(), nearest, pts.end());
    return pts;
}

double cross(const RatePoint &o, const RatePoint &a, const RatePoint &b) {
    return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

// Andrew's monotone chain; collinear points are dropped.
std::vector<RatePoint> hull(std::vector<RatePoint> pts) {
    std::sort(pts.begin(), pts.end(),
              [](const RatePoint &a, const RatePoint &b) { return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2); });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const RatePoint &a, const RatePoint &b) {
                              return std::abs(a.r1 - b.r1) <= kTieTol && std::abs(a.r2 - b.r2) <= kTieTol;
                          }),
              pts.end());
    if (pts.size() < 3) {
        return pts;
    }
    std::vector<RatePoint> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto &p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= kTieTol) {
            --k;
        }
        h[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= kTieTol) {
            --k;
        }
        h[k++] = *it;
    }
    h.resize(k - 1);
    return h;
}

Constraint through(double nx, double ny, const RatePoint &p) {
    const double scale = std::max(std::abs(nx), std::abs(ny));
    nx /= scale;
    ny /= scale;
    return {clean(nx), clean(ny), clean(nx * p.r1 + ny * p.r2)};
}

bool implied_by_quadrant(const Constraint &c) {
    return c.a <= kTieTol && c.b <= kTieTol && c.c >= -kTieTol;
}

}  // namespace

RateRegion::RateRegion(std::vector<Constraint> constraints, std::vector<std::string> notes)
    : constraints_(std::move(constraints)), notes_(std::move(notes)) {
    for (const auto &c : constraints_) {
        if (!std::isfinite(c.a) || !std::isfinite(c.b) || !std::isfinite(c.c)) {
            throw std::invalid_argument("RateRegion: non-finite constraint");
        }
        if (c.c < -kFeasibleTol) {
            throw std::invalid_argument("RateRegion: constraint excludes the origin");
        }
    }
    vertices_ = extract_vertices(constraints_);
}

bool RateRegion::contains(RatePoint p, double tol) const {
    if (p.r1 < -tol || p.r2 < -tol) {
        return false;
    }
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const Constraint &c) { return c.a * p.r1 + c.b * p.r2 <= c.c + tol; });
}

double RateRegion::max_rate_sum() const {
    double best = 0;
    for (const auto &v : vertices_) {
        best = std::max(best, v.r1 + v.r2);
    }
    return best;
}

RateRegion pentagon(const ProductEnsemble &pe) {
    return RateRegion({{1, 0, conditional_holevo_1(pe)}, {0, 1, conditional_holevo_2(pe)}, {1, 1, joint_holevo(pe)}});
}

RateRegion convex_hull_union(const std::vector<RateRegion> &regions) {
    if (regions.empty()) {
        throw std::invalid_argument("convex_hull_union: no regions");
    }
    std::vector<RatePoint> pts;
    for (const auto &r : regions) {
        pts.insert(pts.end(), r.vertices().begin(), r.vertices().end());
    }
    const auto h = hull(std::move(pts));

    std::vector<Constraint> out;
    if (h.size() == 1) {
        out = {{1, 0, h[0].r1}, {0, 1, h[0].r2}};
    } else if (h.size() == 2) {
        const double dx = h[1].r1 - h[0].r1;
        const double dy = h[1].r2 - h[0].r2;
        out = {through(dy, -dx, h[0]), through(-dy, dx, h[0]), through(dx, dy, h[1]), through(-dx, -dy, h[0])};
    } else {
        for (std::size_t i = 0; i < h.size(); ++i) {
            const auto &p = h[i];
            const auto &q = h[(i + 1) % h.size()];
            out.push_back(through(q.r2 - p.r2, -(q.r1 - p.r1), p));
        }
    }
    std::erase_if(out, implied_by_quadrant);
    return RateRegion(std::move(out));
}

RateRegion named_region(const std::string &tag) {
    if (tag == "classical") {
        return RateRegion({{1, 0, 1}, {0, 1, 1}, {1, 1, 1.5}});
    }
    if (tag == "ghz") {
        return RateRegion({{1, 0, 2}, {0, 1, 2}, {1, 1, 2.5}});
    }
    if (tag == "two_ebit_unitary") {
        return RateRegion({{1, 0, 2}, {0, 1, 2}, {1, 1, 4 - binary_entropy(0.25)}},
                          {"sum bound holds for unitary encodings"});
    }
    if (tag == "ss_maximal") {
        return RateRegion({{1, 0, 2}, {0, 1, 2}, {1, 1, 2}});
    }
    throw std::invalid_argument("named_region: unknown tag '" + tag + "'");
}

TimeSharingParams time_sharing_params(double alpha) {
    if (!(alpha >= 1.0 / std::sqrt(2.0) - 1e-8 && alpha <= 1.0)) {
        throw std::invalid_argument("time_sharing_params: alpha must lie in [1/sqrt2, 1]");
    }
    const double a2 = std::clamp(alpha * alpha, 0.5, 1.0);
    return {alpha, 1.0 - a2, binary_entropy(a2)};
}

RateRegion time_sharing_region(const TimeSharingParams &t) {
    const double h = t.entropy;
    return RateRegion({{1, 0, 1 + h}, {0, 1, 1 + h}, {1, 1, 1.5 + 0.5 * h}}, {kConjecturedConverse});
}

double unassisted_upper_expr(const DensityMatrix &rho_p, const DensityMatrix &rho_q) {
    if (rho_p.dim() != 2 || rho_q.dim() != 2) {
        throw std::invalid_argument("unassisted_upper_expr: both states must be single-qubit");
    }
    ComplexMatrix sym = kron(rho_p.matrix(), rho_q.matrix()) + kron(rho_q.matrix(), rho_p.matrix());
    sym *= cd{0.5, 0};
    const double overlap = (rho_p.matrix() * rho_q.matrix()).trace().real();
    return von_neumann_entropy(DensityMatrix::unchecked(std::move(sym))) - 1.0 + overlap;
}

// ---------------------------------------------------------------------------
// Scenarios

namespace {

SharedResource resource_for(ScenarioTag tag, double alpha) {
    switch (tag) {
        case ScenarioTag::unassisted:
            return product_resource();
        case ScenarioTag::sender_sender:
            return partial_entangled_resource(alpha);
        case ScenarioTag::ghz:
            return ghz_state();
        case ScenarioTag::two_ebit:
            return max_entangled_resource();
    }
    throw std::invalid_argument("Scenario: unknown tag");
}

// Amplitudes with the two sender qubits exchanged.
std::vector<cd> swap_senders(std::span<const cd> psi, std::size_t receiver_dim) {
    std::vector<cd> out(psi.size());
    for (std::size_t b1 = 0; b1 < 2; ++b1) {
        for (std::size_t b2 = 0; b2 < 2; ++b2) {
            for (std::size_t r = 0; r < receiver_dim; ++r) {
                out[(b2 * 2 + b1) * receiver_dim + r] = psi[(b1 * 2 + b2) * receiver_dim + r];
            }
        }
    }
    return out;
}

// The single-qubit operator a label stands for; preparations act on |0>.
ComplexMatrix label_operator(const Scenario &s, const EncodingLabel &l) {
    switch (s.mode()) {
        case EncodingMode::prepare:
            if (const auto *b = std::get_if<BlochPoint>(&l)) {
                const auto v = bloch_state(*b);
                return ComplexMatrix(2, 2, {v[0], -std::conj(v[1]), v[1], std::conj(v[0])});
            }
            break;
        case EncodingMode::unitary:
            if (const auto *u = std::get_if<UnitaryAngles>(&l)) {
                return unitary_from_angles(*u);
            }
            break;
        case EncodingMode::pauli:
            if (const auto *p = std::get_if<PauliIndex>(&l)) {
                if (p->index > 3) {
                    throw std::invalid_argument("scenario_signal: Pauli index must be 0..3");
                }
                return pauli_matrices()[p->index];
            }
            break;
    }
    throw std::invalid_argument("scenario_signal: label kind does not match encoding mode " + to_string(s.mode()));
}

// (U (x) V (x) I) iota, with iota viewed as a 4 x r block.
std::vector<cd> encode(const ComplexMatrix &u, const ComplexMatrix &v, const SharedResource &iota) {
    const std::size_t r = iota.receiver_dim();
    const auto amps = iota.state().amplitudes();
    std::vector<cd> out(4 * r);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t a0 = 0; a0 < 2; ++a0) {
                for (std::size_t b0 = 0; b0 < 2; ++b0) {
                    const cd coeff = u(a, a0) * v(b, b0);
                    if (coeff == cd{}) {
                        continue;
                    }
                    for (std::size_t k = 0; k < r; ++k) {
                        out[(a * 2 + b) * r + k] += coeff * amps[(a0 * 2 + b0) * r + k];
                    }
                }
            }
        }
    }
    return out;
}

void check_weighted(const WeightedLabels &w, const char *who) {
    if (w.weights.size() != w.labels.size() || w.weights.empty()) {
        throw std::invalid_argument(std::string(who) + ": need one weight per label");
    }
}

}  // namespace

PureState bloch_state(const BlochPoint &b) {
    return PureState({std::cos(b.theta / 2), std::polar(1.0, b.phi) * std::sin(b.theta / 2)});
}

ComplexMatrix unitary_from_angles(const UnitaryAngles &u) {
    const double c = std::cos(u.theta / 2);
    const double s = std::sin(u.theta / 2);
    return ComplexMatrix(2, 2,
                         {c, -std::polar(s, u.lambda), std::polar(s, u.phi), std::polar(c, u.phi + u.lambda)});
}

Scenario::Scenario(ScenarioTag tag, EncodingMode mode, double alpha)
    : tag_(tag), mode_(mode), alpha_(alpha), resource_(resource_for(tag, alpha)) {
    const bool unassisted = tag == ScenarioTag::unassisted;
    if (unassisted != (mode == EncodingMode::prepare)) {
        throw std::invalid_argument("Scenario: mode " + to_string(mode) + " does not fit scenario " +
                                    to_string(tag));
    }
}

std::string to_string(ScenarioTag tag) {
    switch (tag) {
        case ScenarioTag::unassisted:
            return "unassisted";
        case ScenarioTag::sender_sender:
            return "sender_sender";
        case ScenarioTag::ghz:
            return "ghz";
        case ScenarioTag::two_ebit:
            return "two_ebit";
    }
    return "?";
}

std::string to_string(EncodingMode mode) {
    switch (mode) {
        case EncodingMode::prepare:
            return "prepare";
        case EncodingMode::unitary:
            return "unitary";
        case EncodingMode::pauli:
            return "pauli";
    }
    return "?";
}

PureState scenario_signal_vector(const Scenario &s, const EncodingLabel &l1, const EncodingLabel &l2) {
    return PureState::normalized(encode(label_operator(s, l1), label_operator(s, l2), s.resource()));
}

DensityMatrix scenario_signal(const Scenario &s, const EncodingLabel &l1, const EncodingLabel &l2) {
    const auto psi = scenario_signal_vector(s, l1, l2);
    const PureState swapped(swap_senders(psi.amplitudes(), s.resource().receiver_dim()));
    ComplexMatrix w = psi.projector() + swapped.projector();
    w *= cd{0.5, 0};
    return DensityMatrix::unchecked(std::move(w));
}

ProductEnsemble scenario_ensemble(const Scenario &s, const WeightedLabels &p, const WeightedLabels &q) {
    check_weighted(p, "scenario_ensemble");
    check_weighted(q, "scenario_ensemble");
    auto names = [&](const WeightedLabels &w) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < w.labels.size(); ++i) {
            if (const auto *pi = std::get_if<PauliIndex>(&w.labels[i]); pi && pi->index < 4) {
                out.push_back(std::string(1, "IXYZ"[pi->index]) + (i >= 4 ? std::to_string(i) : ""));
            } else {
                out.push_back(std::to_string(i));
            }
        }
        return out;
    };
    std::vector<DensityMatrix> signals;
    for (const auto &a : p.labels) {
        for (const auto &b : q.labels) {
            signals.push_back(scenario_signal(s, a, b));
        }
    }
    return ProductEnsemble({p.weights, names(p)}, {q.weights, names(q)}, std::move(signals));
}

double scenario_rate_sum(const Scenario &s, const WeightedLabels &p, const WeightedLabels &q) {
    check_weighted(p, "scenario_rate_sum");
    check_weighted(q, "scenario_rate_sum");
    std::vector<ComplexMatrix> ops1;
    std::vector<ComplexMatrix> ops2;
    for (const auto &l : p.labels) {
        ops1.push_back(label_operator(s, l));
    }
    for (const auto &l : q.labels) {
        ops2.push_back(label_operator(s, l));
    }
    const std::size_t r = s.resource().receiver_dim();
    const std::size_t dim = s.signal_dim();
    ComplexMatrix average(dim, dim);
    double signal_entropy = 0;
    for (std::size_t i = 0; i < ops1.size(); ++i) {
        for (std::size_t j = 0; j < ops2.size(); ++j) {
            const double w = p.weights[i] * q.weights[j];
            if (w <= 0) {
                continue;
            }
            const auto psi = encode(ops1[i], ops2[j], s.resource());
            const auto swapped = swap_senders(psi, r);
            cd overlap{};
            for (std::size_t k = 0; k < dim; ++k) {
                overlap += std::conj(psi[k]) * swapped[k];
            }
            const double t = std::min(1.0, std::abs(overlap));
            signal_entropy += w * binary_entropy((1.0 - t) / 2.0);
            for (std::size_t a = 0; a < dim; ++a) {
                const cd pa = 0.5 * w * psi[a];
                const cd sa = 0.5 * w * swapped[a];
                auto row = average.row(a);
                for (std::size_t b = 0; b < dim; ++b) {
                    row[b] += pa * std::conj(psi[b]) + sa * std::conj(swapped[b]);
                }
            }
        }
    }
    return std::max(0.0, entropy_of_spectrum(hermitian_eigenvalues(average)) - signal_entropy);
}

// ---------------------------------------------------------------------------
// Optimizer

std::size_t default_support(EncodingMode mode) {
    switch (mode) {
        case EncodingMode::prepare:
            return 2;
        case EncodingMode::unitary:
        case EncodingMode::pauli:
            return 4;
    }
    return 2;
}

namespace {

std::size_t angles_per_point(EncodingMode mode) {
    switch (mode) {
        case EncodingMode::prepare:
            return 2;
        case EncodingMode::unitary:
            return 3;
        case EncodingMode::pauli:
            return 0;
    }
    return 0;
}

// Parameter layout per sender: k raw weights, then the angles of each point.
WeightedLabels decode_sender(EncodingMode mode, std::size_t k, std::span<const double> x) {
    WeightedLabels out;
    out.weights = project_to_simplex(x.subspan(0, k));
    const std::size_t m = angles_per_point(mode);
    for (std::size_t i = 0; i < k; ++i) {
        const auto a = x.subspan(k + i * m, m);
        switch (mode) {
            case EncodingMode::prepare:
                out.labels.emplace_back(BlochPoint{a[0], a[1]});
                break;
            case EncodingMode::unitary:
                out.labels.emplace_back(UnitaryAngles{a[0], a[1], a[2]});
                break;
            case EncodingMode::pauli:
                out.labels.emplace_back(PauliIndex{static_cast<unsigned>(i)});
                break;
        }
    }
    return out;
}

}  // namespace

OptimizeResult optimize_rate_sum(const Scenario &s, const OptimizeOptions &opt) {
    if (opt.restarts == 0) {
        throw std::invalid_argument("optimize_rate_sum: need at least one restart");
    }
    const EncodingMode mode = s.mode();
    std::size_t k = opt.support == 0 ? default_support(mode) : opt.support;
    if (mode == EncodingMode::pauli) {
        k = 4;
    }
    if (k > kMaxSupport) {
        throw std::invalid_argument("optimize_rate_sum: support is capped at 8 points per sender");
    }
    const std::size_t m = angles_per_point(mode);
    const std::size_t per_sender = k + k * m;

    auto split = [&](std::span<const double> x) {
        return std::pair{decode_sender(mode, k, x.subspan(0, per_sender)),
                         decode_sender(mode, k, x.subspan(per_sender, per_sender))};
    };
    const Objective objective = [&](std::span<const double> x) {
        const auto [p, q] = split(x);
        return scenario_rate_sum(s, p, q);
    };

    std::vector<double> step(2 * per_sender);
    for (std::size_t sender = 0; sender < 2; ++sender) {
        for (std::size_t i = 0; i < per_sender; ++i) {
            step[sender * per_sender + i] = i < k ? 0.25 : 0.6;
        }
    }
    SearchOptions search;
    search.budget = opt.budget;
    search.step = step;

    double best_value = -std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    std::size_t best_restart = 0;
    std::size_t evaluations = 0;
    for (std::size_t r = 0; r < opt.restarts; ++r) {
        std::mt19937_64 rng(derive_seed(opt.seed, r));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::vector<double> x0(2 * per_sender);
        for (std::size_t sender = 0; sender < 2; ++sender) {
            double* base = x0.data() + sender * per_sender;
            for (std::size_t i = 0; i < k; ++i) {
                base[i] = r == 0 ? 1.0 / static_cast<double>(k) : 0.05 + unit(rng);
            }
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t a = 0; a < m; ++a) {
                    const double span = a == 0 ? std::numbers::pi : 2 * std::numbers::pi;
                    base[k + i * m + a] = span * unit(rng);
                }
            }
        }
        const auto found = nelder_mead_maximize(objective, x0, search);
        evaluations += found.evaluations;
        if (found.value > best_value) {
            best_value = found.value;
            best_x = found.x;
            best_restart = r;
        }
    }
    auto [p, q] = split(best_x);
    auto ensemble = scenario_ensemble(s, p, q);
    return {best_value, std::move(p), std::move(q), std::move(ensemble), evaluations, best_restart};
}

}  // namespace qadder
