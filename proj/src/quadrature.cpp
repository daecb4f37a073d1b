#include "genhilbert/quadrature.hpp"

#include "genhilbert/special.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace genhilbert
{

GaussRule gauss_jacobi(Eigen::Index points, double a, double b)
{
    if (points < 1)
    {
        throw std::invalid_argument("gauss_jacobi: need at least one point");
    }
    if (!(a > -1.0) || !(b > -1.0))
    {
        throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    }

    // Three-term recurrence of the monic Jacobi polynomials.
    Eigen::VectorXd diag(points);
    Eigen::VectorXd sub(points > 1 ? points - 1 : 0);
    const double ab = a + b;
    diag[0]         = (b - a) / (ab + 2.0);
    for (Eigen::Index k = 1; k < points; ++k)
    {
        const double kk = static_cast<double>(k);
        const double s  = 2.0 * kk + ab;
        diag[k]         = (b * b - a * a) / (s * (s + 2.0));
        double beta_k;
        if (k == 1)
        {
            beta_k = 4.0 * (1.0 + a) * (1.0 + b) /
                     ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        }
        else
        {
            beta_k = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) /
                     (s * s * (s + 1.0) * (s - 1.0));
        }
        sub[k - 1] = std::sqrt(beta_k);
    }

    const double mass0 = std::exp((ab + 1.0) * std::log(2.0) +
                                  log_beta(a + 1.0, b + 1.0));

    GaussRule rule;
    if (points == 1)
    {
        rule.nodes   = diag;
        rule.weights = Eigen::VectorXd::Constant(1, mass0);
        return rule;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success)
    {
        throw std::runtime_error("gauss_jacobi: eigensolver failed");
    }
    rule.nodes   = solver.eigenvalues();
    rule.weights = mass0 * solver.eigenvectors().row(0).transpose().array().square();
    return rule;
}

} // namespace genhilbert
