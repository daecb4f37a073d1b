#ifndef GENHILBERT_SEQUENCE_HPP
#define GENHILBERT_SEQUENCE_HPP

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace genhilbert
{

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

///
/// ### SequenceVector
///
/// Leading terms a_0 .. a_{K-1} of a sequence; terms past the end are zero.
/// When `nonneg` is set every stored value is >= 0.
///
struct SequenceVector
{
    Vector<double> values;
    bool nonneg = false;

    SequenceVector() = default;

    explicit SequenceVector(Vector<double> v, bool require_nonneg = false)
        : values(std::move(v)), nonneg(require_nonneg)
    {
        if (nonneg && (values.array() < 0.0).any())
        {
            throw std::invalid_argument(
                "sequence flagged nonnegative has a negative entry");
        }
    }

    Eigen::Index size() const noexcept { return values.size(); }
    double operator[](Eigen::Index i) const { return values[i]; }
};

///
/// l^p norm of a finite vector for real p >= 1; p = +infinity gives the max
/// norm. Terms are scaled by the largest magnitude so the p-th powers
/// neither overflow nor underflow.
///
template <typename Derived>
typename Derived::Scalar lp_norm(const Eigen::MatrixBase<Derived> &x, double p)
{
    using Scalar       = typename Derived::Scalar;
    const Scalar scale = x.size() == 0 ? Scalar(0) : x.cwiseAbs().maxCoeff();
    if (!(scale > 0) || std::isinf(p))
    {
        return scale;
    }
    if (!std::isfinite(scale))
    {
        return std::numeric_limits<Scalar>::infinity();
    }
    if (p == 1.0)
    {
        return x.cwiseAbs().sum();
    }
    if (p == 2.0)
    {
        return scale * (x / scale).norm();
    }
    Scalar acc = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i)
    {
        acc += std::pow(std::abs(x[i]) / scale, Scalar(p));
    }
    return scale * std::pow(acc, Scalar(1) / Scalar(p));
}

} // namespace genhilbert

#endif
