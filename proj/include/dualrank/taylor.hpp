#pragma once

// Second-order forward-mode jets in several variables.
//
// A Taylor2 carries f, grad f and the Hessian of f with respect to d seed
// variables. Arithmetic propagates the truncated Taylor expansion exactly, so
// first and second derivatives are correct to rounding. An empty gradient marks
// a constant that broadcasts against jets of any dimension.

#include <Eigen/Dense>

#include <cmath>

namespace dualrank {

class Taylor2 {
public:
    Taylor2() = default;
    Taylor2(double value) : value_{value} {} // NOLINT: implicit constants keep chart formulas readable

    static Taylor2 variable(double value, Eigen::Index dim, Eigen::Index which)
    {
        Taylor2 t{value};
        t.grad_ = Eigen::VectorXd::Zero(dim);
        t.grad_[which] = 1.0;
        t.hess_ = Eigen::MatrixXd::Zero(dim, dim);
        return t;
    }

    double value() const { return value_; }
    bool is_constant() const { return grad_.size() == 0; }
    Eigen::Index dim() const { return grad_.size(); }

    Eigen::VectorXd gradient(Eigen::Index dim) const
    {
        return is_constant() ? Eigen::VectorXd::Zero(dim) : grad_;
    }
    Eigen::MatrixXd hessian(Eigen::Index dim) const
    {
        return is_constant() ? Eigen::MatrixXd::Zero(dim, dim) : hess_;
    }

    Taylor2 operator-() const
    {
        Taylor2 r{-value_};
        if (!is_constant()) {
            r.grad_ = -grad_;
            r.hess_ = -hess_;
        }
        return r;
    }

    Taylor2& operator+=(const Taylor2& o)
    {
        value_ += o.value_;
        if (!o.is_constant()) {
            if (is_constant()) {
                grad_ = o.grad_;
                hess_ = o.hess_;
            } else {
                grad_ += o.grad_;
                hess_ += o.hess_;
            }
        }
        return *this;
    }
    Taylor2& operator-=(const Taylor2& o) { return *this += -o; }

    Taylor2& operator*=(const Taylor2& o)
    {
        *this = mul(*this, o);
        return *this;
    }
    Taylor2& operator/=(const Taylor2& o)
    {
        *this = mul(*this, reciprocal(o));
        return *this;
    }

    friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
    friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
    friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) { return mul(a, b); }
    friend Taylor2 operator/(const Taylor2& a, const Taylor2& b) { return mul(a, reciprocal(b)); }

    /// g(f) for scalar g with g(v) = d0, g'(v) = d1, g''(v) = d2.
    Taylor2 compose(double d0, double d1, double d2) const
    {
        Taylor2 r{d0};
        if (!is_constant()) {
            r.grad_ = d1 * grad_;
            r.hess_ = d1 * hess_ + d2 * (grad_ * grad_.transpose());
        }
        return r;
    }

private:
    static Taylor2 mul(const Taylor2& a, const Taylor2& b)
    {
        Taylor2 r{a.value_ * b.value_};
        if (a.is_constant() && b.is_constant()) {
            return r;
        }
        if (a.is_constant()) {
            r.grad_ = a.value_ * b.grad_;
            r.hess_ = a.value_ * b.hess_;
            return r;
        }
        if (b.is_constant()) {
            r.grad_ = b.value_ * a.grad_;
            r.hess_ = b.value_ * a.hess_;
            return r;
        }
        r.grad_ = a.value_ * b.grad_ + b.value_ * a.grad_;
        // a_i b_j + b_i a_j is symmetric in floating point as well
        r.hess_ = a.value_ * b.hess_ + b.value_ * a.hess_ + a.grad_ * b.grad_.transpose()
                + b.grad_ * a.grad_.transpose();
        return r;
    }

    static Taylor2 reciprocal(const Taylor2& b)
    {
        const double v = b.value_;
        return b.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
    }

    double value_{0.0};
    Eigen::VectorXd grad_;
    Eigen::MatrixXd hess_;
};

inline Taylor2 sin(const Taylor2& x)
{
    const double s = std::sin(x.value());
    const double c = std::cos(x.value());
    return x.compose(s, c, -s);
}

inline Taylor2 cos(const Taylor2& x)
{
    const double s = std::sin(x.value());
    const double c = std::cos(x.value());
    return x.compose(c, -s, -c);
}

inline Taylor2 sqrt(const Taylor2& x)
{
    const double r = std::sqrt(x.value());
    return x.compose(r, 0.5 / r, -0.25 / (r * x.value()));
}

inline double value_of(double x) { return x; }
inline double value_of(const Taylor2& x) { return x.value(); }

} // namespace dualrank
