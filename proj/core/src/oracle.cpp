#include "qshift/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>

#include "qshift/equivalence.hpp"
#include "qshift/error.hpp"
#include "qshift/format.hpp"

namespace qshift {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const TridiagonalOperator& op) {
    return std::numeric_limits<double>::min() * std::max(1.0, op.off_diagonal * op.off_diagonal);
}

// LU factorization of (T - shift I) with partial pivoting, LAPACK dgttrf layout:
// U has diagonal d, first superdiagonal du and second superdiagonal du2.
class ShiftedTridiagonalLU {
public:
    ShiftedTridiagonalLU(const TridiagonalOperator& op, double shift) {
        const std::size_t n = op.size();
        d_.resize(n);
        for (std::size_t i = 0; i < n; ++i) d_[i] = op.diagonal[i] - shift;
        dl_.assign(n > 0 ? n - 1 : 0, op.off_diagonal);
        du_.assign(n > 0 ? n - 1 : 0, op.off_diagonal);
        du2_.assign(n > 1 ? n - 2 : 0, 0.0);
        swapped_.assign(n > 0 ? n - 1 : 0, false);

        // Zero pivots are replaced by a perturbation at roundoff scale of the
        // part of the matrix the low eigenvectors live on.
        const double tiny = kEps * (std::abs(shift) + 4.0 * std::abs(op.off_diagonal) + 1.0);

        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d_[i]) >= std::abs(dl_[i])) {
                if (d_[i] == 0.0) d_[i] = tiny;
                const double fact = dl_[i] / d_[i];
                dl_[i] = fact;
                d_[i + 1] -= fact * du_[i];
            } else {
                const double fact = d_[i] / dl_[i];
                d_[i] = dl_[i];
                dl_[i] = fact;
                const double temp = du_[i];
                du_[i] = d_[i + 1];
                d_[i + 1] = temp - fact * d_[i + 1];
                if (i + 2 < n) {
                    du2_[i] = du_[i + 1];
                    du_[i + 1] = -fact * du_[i + 1];
                }
                swapped_[i] = true;
            }
        }
        if (n > 0 && d_[n - 1] == 0.0) d_[n - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d_.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped_[i]) {
                b[i + 1] -= dl_[i] * b[i];
            } else {
                const double temp = b[i] - dl_[i] * b[i + 1];
                b[i] = b[i + 1];
                b[i + 1] = temp;
            }
        }
        if (n == 0) return;
        b[n - 1] /= d_[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
        for (std::size_t k = n - 2; k-- > 0;) {
            b[k] = (b[k] - du_[k] * b[k + 1] - du2_[k] * b[k + 2]) / d_[k];
        }
    }

private:
    std::vector<double> d_, dl_, du_, du2_;
    std::vector<bool> swapped_;
};

double norm2(std::span<const double> v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return 0.0;
    double sum = 0.0;
    for (double x : v) sum += (x / scale) * (x / scale);
    return scale * std::sqrt(sum);
}

void normalize(std::vector<double>& v) {
    const double nrm = norm2(v);
    if (nrm > 0.0) {
        for (double& x : v) x /= nrm;
    }
}

double bisect(const TridiagonalOperator& op, int k, double lo, double hi) {
    const double pivmin = pivot_floor(op);
    for (int it = 0; it < 4096; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivmin) break;
        if (sturm_count(op, mid) > k) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

Grid::Grid(double x_min, double x_max, int n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), h_(0.0) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
        throw ConfigurationError("grid needs finite x_min < x_max");
    }
    if (n_points < 3) throw ConfigurationError("grid needs at least 3 points");
    h_ = (x_max - x_min) / (n_points - 1);
}

TridiagonalOperator discretize(const PotentialFn& potential, const Grid& grid) {
    const double inv_h2 = 1.0 / (grid.h() * grid.h());
    TridiagonalOperator op{std::vector<double>(grid.interior_size()), -inv_h2};
    for (int k = 0; k < grid.interior_size(); ++k) {
        const double x = grid.interior_x(k);
        const double v = potential(x);
        if (!std::isfinite(v)) {
            throw DomainError("potential is not finite at grid node x = " + format_real(x));
        }
        op.diagonal[k] = 2.0 * inv_h2 + v;
    }
    return op;
}

int sturm_count(const TridiagonalOperator& op, double value) {
    const std::size_t n = op.size();
    if (n == 0) return 0;
    const double e2 = op.off_diagonal * op.off_diagonal;
    const double pivmin = pivot_floor(op);
    int count = 0;
    double t = op.diagonal[0] - value;
    if (std::abs(t) < pivmin) t = -pivmin;
    if (t < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        t = op.diagonal[i] - value - e2 / t;
        if (std::abs(t) < pivmin) t = -pivmin;
        if (t < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op) {
    if (op.size() == 0) return {0.0, 0.0};
    const double e = std::abs(op.off_diagonal);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < op.size(); ++i) {
        const double radius = (i == 0 || i + 1 == op.size()) ? e : 2.0 * e;
        lo = std::min(lo, op.diagonal[i] - radius);
        hi = std::max(hi, op.diagonal[i] + radius);
    }
    if (op.size() == 1) return {op.diagonal[0], op.diagonal[0]};
    return {lo, hi};
}

double kth_eigenvalue(const TridiagonalOperator& op, int k) {
    if (k < 0 || static_cast<std::size_t>(k) >= op.size()) {
        throw NoSuchLevelError("eigenvalue index " + std::to_string(k) + " out of range");
    }
    auto [lo, hi] = gershgorin_bounds(op);
    const double pad = kEps * std::max(std::abs(lo), std::abs(hi)) + pivot_floor(op);
    return bisect(op, k, lo - pad, hi + pad);
}

std::vector<double> eigenvalues_below(const TridiagonalOperator& op, double threshold) {
    const int m = sturm_count(op, threshold);
    std::vector<double> values;
    values.reserve(m);
    if (m == 0) return values;
    const double lo = gershgorin_bounds(op).first;
    const double pad = kEps * std::max(std::abs(lo), std::abs(threshold)) + pivot_floor(op);
    for (int k = 0; k < m; ++k) {
        const double start = values.empty() ? lo - pad : values.back();
        values.push_back(bisect(op, k, start - pad, threshold));
    }
    return values;
}

std::vector<double> lcg_start_vector(std::size_t n, std::uint64_t seed) {
    std::vector<double> v(n);
    std::uint64_t state = seed * 0x9E3779B97F4A7C15ull + 1;
    for (double& x : v) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x = 0.5 + static_cast<double>(state >> 11) * 0x1.0p-53;
    }
    return v;
}

double eigen_residual(const TridiagonalOperator& op, double lambda, std::span<const double> v) {
    const std::size_t n = op.size();
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        double av = (op.diagonal[i] - lambda) * v[i];
        if (i > 0) av += op.off_diagonal * v[i - 1];
        if (i + 1 < n) av += op.off_diagonal * v[i + 1];
        r[i] = av;
    }
    const double nv = norm2(v);
    return nv > 0.0 ? norm2(r) / nv : std::numeric_limits<double>::infinity();
}

std::vector<EigenPair> eigen_below(const TridiagonalOperator& op, double threshold) {
    const std::vector<double> values = eigenvalues_below(op, threshold);
    std::vector<EigenPair> pairs;
    pairs.reserve(values.size());

    constexpr int kMinIterations = 3;
    constexpr int kMaxIterations = 12;

    for (std::size_t j = 0; j < values.size(); ++j) {
        const double lambda = values[j];
        const ShiftedTridiagonalLU lu(op, lambda);
        std::vector<double> v = lcg_start_vector(op.size(), j);
        normalize(v);

        double residual = std::numeric_limits<double>::infinity();
        for (int it = 0; it < kMaxIterations; ++it) {
            lu.solve(v);
            for (std::size_t i = 0; i < j; ++i) {
                const double gap = std::abs(lambda - pairs[i].value);
                if (gap > 1e-10 * std::max(1.0, std::abs(lambda))) continue;
                const std::vector<double>& u = pairs[i].vector;
                const double dot = std::inner_product(v.begin(), v.end(), u.begin(), 0.0);
                for (std::size_t k = 0; k < v.size(); ++k) v[k] -= dot * u[k];
            }
            normalize(v);
            if (it + 1 >= kMinIterations) {
                residual = eigen_residual(op, lambda, v);
                if (residual <= kEigenResidualTol) break;
            }
        }
        if (!(residual <= kEigenResidualTol)) {
            throw ConvergenceError("inverse iteration for level " + std::to_string(j) +
                                   " did not converge: residual " + format_real(residual));
        }
        // Fix the sign so that the largest component is positive.
        const auto big = std::max_element(v.begin(), v.end(),
                                          [](double a, double b) { return std::abs(a) < std::abs(b); });
        if (big != v.end() && *big < 0.0) {
            for (double& x : v) x = -x;
        }
        pairs.push_back({lambda, std::move(v)});
    }
    return pairs;
}

void validate(const SolverConfig& config) {
    if (!(config.half_width_factor > 0.0) || !std::isfinite(config.half_width_factor)) {
        throw ConfigurationError("half_width_factor must be positive");
    }
    if (config.n_points < 3) throw ConfigurationError("n_points must be at least 3");
    if (!(config.boundary_amp_tol > 0.0)) throw ConfigurationError("boundary_amp_tol must be positive");
}

double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int it = 0; it < 400 && (b - a) > tol; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double potential_minimum(const PotentialSpec& spec) {
    validate(spec);
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    if (const auto* m = std::get_if<GeneralizedMorse>(&spec)) {
        if (m->V1 <= 0.0) {
            throw ConfigurationError("generalized_morse with V1 <= 0 is unbounded below");
        }
        if (m->V2 <= 0.0) return nan;
    }
    if (std::holds_alternative<FiveParamSuper>(spec)) {
        throw WrongFamilyError("five_param_super is a superpotential, not a potential");
    }

    const CanonicalMap map = canonicalize(spec);
    const double alpha = alpha_of(spec);
    double y = nan;
    if (const auto* rm = std::get_if<RosenMorseQ>(&map.plain_spec)) {
        // V' = alpha sech^2 (B + 2 C tanh)
        if (rm->U0 > 0.0 && std::abs(rm->B0) < 2.0 * rm->U0) y = std::atanh(-rm->B0 / (2.0 * rm->U0)) / alpha;
    } else if (const auto* st = std::get_if<ShiftedTanhQ>(&map.plain_spec)) {
        // dV/dt = V1/2 + V2 t / 2 with t = tanh
        if (st->V2 > 0.0 && std::abs(st->V1) < st->V2) y = std::atanh(-st->V1 / st->V2) / alpha;
    } else if (std::holds_alternative<GeneralizedMorse>(map.plain_spec)) {
        y = std::log(2.0) / alpha;
    }
    if (std::isnan(y)) return nan;

    const double guess = y + map.shift;
    auto v = [&spec](double x) { return eval_potential(spec, x); };
    return golden_section_minimize(v, guess - 1.0 / alpha, guess + 1.0 / alpha, 1e-10 / alpha);
}

BoundStates solve_bound_states_detailed(const PotentialFn& potential, double center, double half_width,
                                        double threshold, const SolverConfig& config) {
    validate(config);
    if (!std::isfinite(center) || !(half_width > 0.0)) {
        throw ConfigurationError("window must have a finite centre and positive half-width");
    }
    const Grid grid(center - half_width, center + half_width, config.n_points);
    BoundStates out{Spectrum{{}, threshold, SpectrumSource::numeric}, grid, {}, {}};

    const TridiagonalOperator op = discretize(potential, grid);
    const double cutoff = threshold - 1e-6 * (std::abs(threshold) + 1.0);
    std::vector<EigenPair> pairs = eigen_below(op, cutoff);

    for (std::size_t k = 1; k < pairs.size(); ++k) {
        const double gap = pairs[k].value - pairs[k - 1].value;
        if (gap < 1e-10 * std::max(1.0, std::abs(pairs[k].value))) {
            out.diagnostics.push_back("near-degenerate levels " + std::to_string(k - 1) + " and " +
                                      std::to_string(k) + " (gap " + format_real(gap) + ")");
        }
    }

    std::vector<int> kept;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const std::vector<double>& v = pairs[k].vector;
        double peak = 0.0;
        for (double x : v) peak = std::max(peak, x * x);
        const double edge = std::max(v.front() * v.front(), v.back() * v.back()) / peak;
        if (edge > config.boundary_amp_tol) {
            out.diagnostics.push_back("level " + std::to_string(k) + " discarded: boundary amplitude " +
                                      format_real(edge));
            continue;
        }
        kept.push_back(static_cast<int>(k));
    }

    std::optional<TridiagonalOperator> half_op;
    std::optional<TridiagonalOperator> quarter_op;
    if (config.refine && !kept.empty()) {
        half_op = discretize(potential, Grid(grid.x_min(), grid.x_max(), 2 * config.n_points - 1));
        quarter_op = discretize(potential, Grid(grid.x_min(), grid.x_max(), 4 * config.n_points - 3));
    }

    for (int k : kept) {
        Level level{k, pairs[k].value, 0.0};
        if (config.refine) {
            const double e1 = pairs[k].value;
            const double e2 = kth_eigenvalue(*half_op, k);
            const double e4 = kth_eigenvalue(*quarter_op, k);
            const double coarse = (4.0 * e2 - e1) / 3.0;
            const double fine = (4.0 * e4 - e2) / 3.0;
            // Storing 2/h^2 + V on the finest grid rounds V at the kEps * 4/h^2 level.
            const double h4 = quarter_op->off_diagonal;
            level.E = fine;
            level.err = std::abs(fine - coarse) / 15.0 + 4.0 * kEps * std::abs(h4);
        }
        out.spectrum.levels.push_back(level);
        out.vectors.push_back(std::move(pairs[k].vector));
    }
    return out;
}

BoundStates solve_bound_states_detailed(const PotentialSpec& spec, const SolverConfig& config) {
    validate(config);
    validate(spec);
    if (std::holds_alternative<FiveParamSuper>(spec)) {
        throw WrongFamilyError("five_param_super is a superpotential; solve its partner potentials instead");
    }
    const double alpha = alpha_of(spec);
    const double threshold = asymptotics(spec).continuum_threshold;
    const double center = potential_minimum(spec);
    const double half_width = config.half_width_factor / alpha;
    if (std::isnan(center)) {
        BoundStates empty{Spectrum{{}, threshold, SpectrumSource::numeric},
                          Grid(-half_width, half_width, config.n_points), {}, {}};
        empty.diagnostics.push_back("potential has no interior minimum; no bound states");
        return empty;
    }
    auto v = [&spec](double x) { return eval_potential(spec, x); };
    return solve_bound_states_detailed(v, center, half_width, threshold, config);
}

Spectrum solve_bound_states(const PotentialSpec& spec, const SolverConfig& config) {
    return solve_bound_states_detailed(spec, config).spectrum;
}

std::string eigenvector_csv(const BoundStates& states) {
    std::ostringstream os;
    os << 'x';
    for (const Level& level : states.spectrum.levels) os << ",psi_" << level.n;
    os << '\n';
    // Unit 2-norm vectors scaled by 1/sqrt(h) approximate L2-normalized psi.
    const double scale = 1.0 / std::sqrt(states.grid.h());
    for (int k = 0; k < states.grid.interior_size(); ++k) {
        os << format_real(states.grid.interior_x(k));
        for (const auto& v : states.vectors) os << ',' << format_real(v[k] * scale);
        os << '\n';
    }
    return os.str();
}

double schrodinger_residual(const PotentialFn& potential, const Grid& grid, std::span<const double> psi,
                            double E) {
    if (psi.size() != static_cast<std::size_t>(grid.n_points())) {
        throw DomainError("residual needs psi at every grid node");
    }
    const double inv = 1.0 / (12.0 * grid.h() * grid.h());
    std::vector<double> r;
    std::vector<double> kept;
    r.reserve(psi.size());
    kept.reserve(psi.size());
    for (std::size_t i = 2; i + 2 < psi.size(); ++i) {
        const double lap =
            (-psi[i - 2] + 16.0 * psi[i - 1] - 30.0 * psi[i] + 16.0 * psi[i + 1] - psi[i + 2]) * inv;
        r.push_back(-lap + (potential(grid.x(static_cast<int>(i))) - E) * psi[i]);
        kept.push_back(psi[i]);
    }
    const double np = norm2(kept);
    return np > 0.0 ? norm2(r) / np : std::numeric_limits<double>::infinity();
}

double overlap(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("overlap of vectors with different lengths");
    const double dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
    const double na = norm2(a);
    const double nb = norm2(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::abs(dot) / (na * nb);
}

} // namespace qshift
