#include "qadder/optimizer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qadder {

namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

class Budgeted {
   public:
    Budgeted(const Objective &f, std::size_t budget) : f_(f), budget_(budget) {}

    bool exhausted() const { return used_ >= budget_; }
    std::size_t used() const { return used_; }

    double operator()(const std::vector<double> &x) {
        ++used_;
        return f_(x);
    }

   private:
    const Objective &f_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

std::vector<Vertex> initial_simplex(const std::vector<double> &x0, const std::vector<double> &step,
                                    Budgeted &eval) {
    std::vector<Vertex> s;
    s.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < x0.size() && !eval.exhausted(); ++i) {
        auto x = x0;
        x[i] += step[i];
        s.push_back({x, eval(x)});
    }
    return s;
}

std::vector<double> along(const std::vector<double> &from, const std::vector<double> &to, double t) {
    std::vector<double> out(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        out[i] = from[i] + t * (to[i] - from[i]);
    }
    return out;
}

// One Nelder-Mead descent (on -f) until the simplex stalls or the budget ends.
void descend(std::vector<Vertex> &s, Budgeted &eval, double tol) {
    const std::size_t n = s.front().x.size();
    auto by_value = [](const Vertex &a, const Vertex &b) { return a.f > b.f; };
    while (!eval.exhausted()) {
        std::stable_sort(s.begin(), s.end(), by_value);
        if (s.front().f - s.back().f <= tol) {
            return;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v + 1 < s.size(); ++v) {
            for (std::size_t i = 0; i < n; ++i) {
                centroid[i] += s[v].x[i];
            }
        }
        for (double &c : centroid) {
            c /= static_cast<double>(s.size() - 1);
        }

        Vertex &worst = s.back();
        const auto xr = along(worst.x, centroid, 2.0);
        const double fr = eval(xr);
        if (fr > s.front().f && !eval.exhausted()) {
            const auto xe = along(worst.x, centroid, 3.0);
            const double fe = eval(xe);
            worst = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
            continue;
        }
        if (fr > s[s.size() - 2].f) {
            worst = {xr, fr};
            continue;
        }
        if (eval.exhausted()) {
            return;
        }
        // Contract toward the better of the worst point and its reflection.
        const bool outside = fr > worst.f;
        const auto xc = outside ? along(worst.x, centroid, 1.5) : along(worst.x, centroid, 0.5);
        const double fc = eval(xc);
        if (fc > std::max(fr, worst.f)) {
            worst = {xc, fc};
            continue;
        }
        for (std::size_t v = 1; v < s.size() && !eval.exhausted(); ++v) {
            s[v].x = along(s.front().x, s[v].x, 0.5);
            s[v].f = eval(s[v].x);
        }
    }
}

}  // namespace

SearchResult nelder_mead_maximize(const Objective &f, std::vector<double> x0, const SearchOptions &opt) {
    if (x0.empty()) {
        throw std::invalid_argument("nelder_mead_maximize: empty parameter vector");
    }
    if (opt.step.empty() || (opt.step.size() != 1 && opt.step.size() != x0.size())) {
        throw std::invalid_argument("nelder_mead_maximize: step must have 1 or n entries");
    }
    std::vector<double> step = opt.step;
    if (step.size() == 1) {
        step.assign(x0.size(), opt.step.front());
    }

    Budgeted eval(f, std::max<std::size_t>(opt.budget, 1));
    auto simplex = initial_simplex(x0, step, eval);
    Vertex best = *std::max_element(simplex.begin(), simplex.end(),
                                    [](const Vertex &a, const Vertex &b) { return a.f < b.f; });
    for (;;) {
        if (simplex.size() == x0.size() + 1) {
            descend(simplex, eval, opt.stall_tolerance);
        }
        const double previous = best.f;
        for (const auto &v : simplex) {
            if (v.f > best.f) {
                best = v;
            }
        }
        if (eval.exhausted() || best.f - previous <= opt.stall_tolerance) {
            break;
        }
        simplex = initial_simplex(best.x, step, eval);
    }
    return {best.x, best.f, eval.used()};
}

std::vector<double> project_to_simplex(std::span<const double> v) {
    if (v.empty()) {
        throw std::invalid_argument("project_to_simplex: empty vector");
    }
    std::vector<double> u(v.begin(), v.end());
    std::sort(u.begin(), u.end(), std::greater<>());
    double cumulative = 0;
    double theta = 0;
    for (std::size_t k = 0; k < u.size(); ++k) {
        cumulative += u[k];
        const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
        if (u[k] - t > 0) {
            theta = t;
        }
    }
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = std::max(v[i] - theta, 0.0);
    }
    return w;
}

}  // namespace qadder
