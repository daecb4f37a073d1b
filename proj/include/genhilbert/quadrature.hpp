#ifndef GENHILBERT_QUADRATURE_HPP
#define GENHILBERT_QUADRATURE_HPP

#include <Eigen/Core>

namespace genhilbert
{

/// Nodes and weights of an n-point Gauss rule on [-1, 1].
struct GaussRule
{
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};

///
/// Gauss-Jacobi rule for the weight (1 - x)^a (1 + x)^b on [-1, 1], a, b > -1,
/// by the Golub-Welsch eigenvalue method. a = b = 0 is Gauss-Legendre.
///
GaussRule gauss_jacobi(Eigen::Index points, double a, double b);

} // namespace genhilbert

#endif
