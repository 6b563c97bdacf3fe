#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qshift/potential.hpp"
#include "qshift/spectrum.hpp"

namespace qshift {

/// Uniform grid including both Dirichlet boundary nodes.
class Grid {
public:
    Grid(double x_min, double x_max, int n_points);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    int n_points() const { return n_points_; }
    double h() const { return h_; }
    double x(int i) const { return x_min_ + i * h_; }
    /// Interior nodes only, i = 1 .. n_points - 2.
    int interior_size() const { return n_points_ - 2; }
    double interior_x(int k) const { return x(k + 1); }

private:
    double x_min_;
    double x_max_;
    int n_points_;
    double h_;
};

/// -d^2/dx^2 + V on the interior nodes: diagonal 2/h^2 + V(x_i), off-diagonal -1/h^2.
struct TridiagonalOperator {
    std::vector<double> diagonal;
    double off_diagonal;

    std::size_t size() const { return diagonal.size(); }
};

using PotentialFn = std::function<double(double)>;

/// Throws DomainError on a non-finite potential sample.
TridiagonalOperator discretize(const PotentialFn& potential, const Grid& grid);

/// Number of eigenvalues strictly below `value` (Sturm sequence sign count).
int sturm_count(const TridiagonalOperator& op, double value);

/// Gershgorin interval containing every eigenvalue.
std::pair<double, double> gershgorin_bounds(const TridiagonalOperator& op);

/// k-th smallest eigenvalue (k = 0 is the lowest) by Sturm bisection.
double kth_eigenvalue(const TridiagonalOperator& op, int k);

/// All eigenvalues below `threshold`, increasing.
std::vector<double> eigenvalues_below(const TridiagonalOperator& op, double threshold);

struct EigenPair {
    double value;
    std::vector<double> vector; // unit 2-norm, interior nodes
};

/// Eigenvalues below `threshold` with inverse-iteration eigenvectors.
/// Throws ConvergenceError if a residual stays above kEigenResidualTol.
std::vector<EigenPair> eigen_below(const TridiagonalOperator& op, double threshold);

inline constexpr double kEigenResidualTol = 1e-9;

/// ||A v - lambda v||_2 / ||v||_2
double eigen_residual(const TridiagonalOperator& op, double lambda, std::span<const double> v);

/// Deterministic start vector for inverse iteration (64-bit LCG).
std::vector<double> lcg_start_vector(std::size_t n, std::uint64_t seed);

struct SolverConfig {
    double half_width_factor = 30.0; // window = centre +- factor / alpha
    int n_points = 6001;
    bool refine = true;
    double boundary_amp_tol = 1e-8;
};

void validate(const SolverConfig& config);

/// Numeric bound states with the coarse-grid eigenvectors kept for
/// overlap and residual checks.
struct BoundStates {
    Spectrum spectrum;
    Grid grid;                               // coarse grid the vectors live on
    std::vector<std::vector<double>> vectors; // one per level, interior nodes
    std::vector<std::string> diagnostics;
};

/// Golden-section minimizer of f on [lo, hi] to absolute tolerance tol.
double golden_section_minimize(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

/// Finite-difference bound states of a potential family.
///
/// The grid is centred at the potential minimum. Levels whose edge amplitude
/// |psi(edge)|^2 / max|psi|^2 exceeds boundary_amp_tol, or that lie within
/// 1e-6 (|threshold| + 1) of the continuum threshold, are discarded. With
/// refine set, each level is re-solved with h/2 and h/4; the reported energy
/// is the Richardson extrapolation from the two finer grids and err is the
/// difference between the two extrapolations divided by 15, plus the
/// roundoff floor 4 eps / h_finest^2.
BoundStates solve_bound_states_detailed(const PotentialSpec& spec, const SolverConfig& config);

Spectrum solve_bound_states(const PotentialSpec& spec, const SolverConfig& config);

/// Same procedure for an arbitrary potential centred at `center` with the
/// given continuum threshold and window half-width.
BoundStates solve_bound_states_detailed(const PotentialFn& potential, double center,
                                        double half_width, double threshold,
                                        const SolverConfig& config);

/// Location of the potential minimum, or NaN when V has no interior minimum.
double potential_minimum(const PotentialSpec& spec);

/// CSV "x,psi_0,psi_1,..." of the coarse-grid eigenvectors.
std::string eigenvector_csv(const BoundStates& states);

} // namespace qshift

namespace qshift {

/// ||H psi - E psi|| / ||psi|| over the grid nodes, with H discretized by the
/// fourth-order five-point Laplacian. `psi` holds values at every grid node.
double schrodinger_residual(const PotentialFn& potential, const Grid& grid,
                            std::span<const double> psi, double E);

/// |<a, b>| / (||a|| ||b||)
double overlap(std::span<const double> a, std::span<const double> b);

} // namespace qshift
