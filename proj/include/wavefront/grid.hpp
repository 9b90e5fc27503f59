#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace wavefront {

// Uniform 1-D grid x_i = x_min + i*dx, i = 0..n-1.
struct Grid {
    double x_min = 0.0;
    double dx = 1.0;
    int n = 3;

    double x_max() const { return x_min + (n - 1) * dx; }
    double x(int i) const { return x_min + i * dx; }
    bool contains_zero() const { return x_min <= 0.0 && x_max() >= 0.0; }
    bool operator==(const Grid&) const = default;
};

// Builds the grid covering [x_min, x_max]; throws on bad extents.
Grid make_grid(double x_min, double x_max, double dx);
void validate(const Grid& g);

enum class Extension { EdgeConstant, Zero };

// Behavior of a sampled function beyond the grid; part of the value,
// it encodes the limits at +-infinity (e.g. a wave with W(-inf)=0 carries
// Zero on the left and EdgeConstant on the right).
struct ExtensionPolicy {
    Extension left = Extension::EdgeConstant;
    Extension right = Extension::EdgeConstant;
    bool operator==(const ExtensionPolicy&) const = default;
};

// Immutable sample of a bounded continuous function on a Grid, evaluated
// off-node by linear interpolation and beyond the grid by the extension
// policy.
class GridFunction {
  public:
    GridFunction() : GridFunction(Grid{}, {0.0, 0.0, 0.0}) {}
    GridFunction(Grid grid, std::vector<double> values, ExtensionPolicy policy = {});

    static GridFunction constant(const Grid& g, double v, ExtensionPolicy policy = {});

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const ExtensionPolicy& policy() const { return policy_; }
    int size() const { return grid_.n; }

    double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

    // Linear interpolation inside [x_min, x_max], extension value outside.
    double value_at(double x) const;

    double left_extension_value() const;
    double right_extension_value() const;

    double min_value() const;
    double max_value() const;
    double sup_abs() const;

    // True when nondecreasing in x up to `slack` per adjacent pair.
    bool is_nondecreasing(double slack = 0.0) const;

    GridFunction with_values(std::vector<double> values) const {
        return GridFunction(grid_, std::move(values), policy_);
    }
    GridFunction with_policy(ExtensionPolicy p) const {
        return GridFunction(grid_, values_, p);
    }

  private:
    Grid grid_;
    std::vector<double> values_;
    ExtensionPolicy policy_;
};

enum class Ordering { Equal, Leq, Geq, Incomparable };

// T_y[u](x) = u(x - y), resampled on u's grid. Exact for y an integer
// multiple of dx; linear interpolation otherwise.
GridFunction translate(const GridFunction& u, double y);

// sum_{m=1..N_max} 2^-m sup_{|x|<=m} |u(x)|, N_max = ceil(max(|x_min|, x_max)).
// Requires a grid containing 0.
double weighted_sup_norm(const GridFunction& u);

// Exact pointwise order classification; throws on grid mismatch.
Ordering compare(const GridFunction& u, const GridFunction& v);

// max_i |u_i - v_i| (same grid required).
double sup_abs_diff(const GridFunction& u, const GridFunction& v);

// max_i (u_i - v_i): positive when u exceeds v somewhere.
double max_excess(const GridFunction& u, const GridFunction& v);

}  // namespace wavefront
