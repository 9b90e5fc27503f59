#pragma once

#include <vector>

#include "wavefront/grid.hpp"

namespace wavefront {

enum class KernelKind { Dirac, Gaussian, Tabulated };

// Symmetric unit-mass dispersal kernel. The dirac kernel is represented
// exactly (convolution is the identity); gaussian and tabulated kernels are
// discretized on the target grid step with weights renormalized to mass
// exactly 1, so constants are exact fixed points of the convolution.
class Kernel {
  public:
    static Kernel dirac();
    // k(x) = exp(-x^2/(4 alpha)) / sqrt(4 pi alpha); cutoff 8*sqrt(2 alpha).
    static Kernel gaussian(double alpha);
    // Half table {k(0), k(dx), ..., k(M dx)}, mirrored to negative x.
    static Kernel tabulated(double dx, std::vector<double> half_values);

    KernelKind kind() const { return kind_; }
    bool is_dirac() const { return kind_ == KernelKind::Dirac; }
    double cutoff() const { return cutoff_; }
    double alpha() const { return alpha_; }

    // Normalized discrete weights at offsets -M..M on step dx (odd length).
    // Tabulated kernels require a matching step.
    std::vector<double> weights(double dx) const;

    // Exponential moment khat(rho) = integral of e^{rho y} k(y) dy.
    double khat(double rho) const;

    // Pointwise density (gaussian/tabulated); throws for dirac.
    double density(double x) const;

  private:
    Kernel() = default;
    KernelKind kind_ = KernelKind::Dirac;
    double alpha_ = 0.0;
    double cutoff_ = 0.0;
    double table_dx_ = 0.0;
    std::vector<double> table_;  // half table for Tabulated
};

// Trapezoid-rule convolution (k * u) on u's grid; samples of u beyond the
// grid take the extension value. Requires cutoff <= grid half-width.
GridFunction convolve(const Kernel& k, const GridFunction& u);

enum class HeatMode { DirichletHalfLine, Shifted, WholeLine };

// Applies the heat semigroup kernels of the Dirichlet half-line problem:
// S_mu(t) (image charges about 0, zero for x < 0), S_{mu,z}(t) (images about
// -z, zero for x < -z), or S_{mu,inf}(t) (whole-line gaussian). z is ignored
// except in Shifted mode. t = 0 returns phi.
GridFunction heat_apply(HeatMode mode, double z, double mu, double d, double t,
                        const GridFunction& phi);

}  // namespace wavefront
