#pragma once

// Truncated two-variable Taylor arithmetic.
//
// A jet of order d at a base point (x0, y0) stores the Taylor coefficients
// c(i, j) = (d^i/dx^i d^j/dy^j u)(x0, y0) / (i! j!) for i + j <= d. Products
// are truncated convolutions, so every construction built from jets carries
// exact derivatives up to its order.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include <Eigen/Core>

#include <superconf/errors.hpp>

namespace superconf {

inline constexpr int kMaxJetOrder = 8;

namespace detail {

constexpr int jet_size(int order) { return (order + 1) * (order + 2) / 2; }

constexpr int jet_index(int i, int j)
{
    const int k = i + j;
    return k * (k + 1) / 2 + j;
}

inline double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k) {
        f *= k;
    }
    return f;
}

} // namespace detail

template <typename T>
class BasicJet {
public:
    using value_type = T;
    static constexpr int kCapacity = detail::jet_size(kMaxJetOrder);

    BasicJet() : BasicJet(0) {}

    explicit BasicJet(int order, T value = T{}) : order_(std::clamp(order, 0, kMaxJetOrder))
    {
        c_.fill(T{});
        c_[0] = value;
    }

    static BasicJet variable_x(int order, T x0)
    {
        BasicJet j(order, x0);
        if (j.order_ >= 1) {
            j.c_[detail::jet_index(1, 0)] = T(1);
        }
        return j;
    }

    static BasicJet variable_y(int order, T y0)
    {
        BasicJet j(order, y0);
        if (j.order_ >= 1) {
            j.c_[detail::jet_index(0, 1)] = T(1);
        }
        return j;
    }

    int order() const { return order_; }
    int size() const { return detail::jet_size(order_); }
    T value() const { return c_[0]; }

    T coeff(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > order_) {
            return T{};
        }
        return c_[static_cast<std::size_t>(detail::jet_index(i, j))];
    }

    void set_coeff(int i, int j, T v)
    {
        if (i >= 0 && j >= 0 && i + j <= order_) {
            c_[static_cast<std::size_t>(detail::jet_index(i, j))] = v;
        }
    }

    void add_coeff(int i, int j, T v)
    {
        if (i >= 0 && j >= 0 && i + j <= order_) {
            c_[static_cast<std::size_t>(detail::jet_index(i, j))] += v;
        }
    }

    /// Partial derivative d^i/dx^i d^j/dy^j at the base point.
    T derivative(int i, int j) const { return coeff(i, j) * (detail::factorial(i) * detail::factorial(j)); }

    BasicJet dx() const
    {
        BasicJet out(std::max(order_ - 1, 0));
        if (order_ == 0) {
            return out;
        }
        for (int k = 0; k <= out.order_; ++k) {
            for (int j = 0; j <= k; ++j) {
                const int i = k - j;
                out.c_[static_cast<std::size_t>(detail::jet_index(i, j))] = coeff(i + 1, j) * T(i + 1);
            }
        }
        return out;
    }

    BasicJet dy() const
    {
        BasicJet out(std::max(order_ - 1, 0));
        if (order_ == 0) {
            return out;
        }
        for (int k = 0; k <= out.order_; ++k) {
            for (int j = 0; j <= k; ++j) {
                const int i = k - j;
                out.c_[static_cast<std::size_t>(detail::jet_index(i, j))] = coeff(i, j + 1) * T(j + 1);
            }
        }
        return out;
    }

    BasicJet truncated(int order) const
    {
        BasicJet out = *this;
        out.lower_order(std::min(order, order_));
        return out;
    }

    BasicJet &operator+=(const BasicJet &o)
    {
        lower_order(std::min(order_, o.order_));
        for (int k = 0; k < size(); ++k) {
            c_[static_cast<std::size_t>(k)] += o.c_[static_cast<std::size_t>(k)];
        }
        return *this;
    }

    BasicJet &operator-=(const BasicJet &o)
    {
        lower_order(std::min(order_, o.order_));
        for (int k = 0; k < size(); ++k) {
            c_[static_cast<std::size_t>(k)] -= o.c_[static_cast<std::size_t>(k)];
        }
        return *this;
    }

    BasicJet &operator+=(T s)
    {
        c_[0] += s;
        return *this;
    }

    BasicJet &operator-=(T s)
    {
        c_[0] -= s;
        return *this;
    }

    BasicJet &operator*=(T s)
    {
        for (int k = 0; k < size(); ++k) {
            c_[static_cast<std::size_t>(k)] *= s;
        }
        return *this;
    }

    BasicJet &operator*=(const BasicJet &o)
    {
        *this = *this * o;
        return *this;
    }

    friend BasicJet operator*(const BasicJet &a, const BasicJet &b)
    {
        BasicJet out(std::min(a.order_, b.order_));
        const int d = out.order_;
        for (int ia = 0; ia <= d; ++ia) {
            for (int ja = 0; ia + ja <= d; ++ja) {
                const T av = a.c_[static_cast<std::size_t>(detail::jet_index(ia, ja))];
                if (av == T{}) {
                    continue;
                }
                for (int ib = 0; ia + ja + ib <= d; ++ib) {
                    for (int jb = 0; ia + ja + ib + jb <= d; ++jb) {
                        out.c_[static_cast<std::size_t>(detail::jet_index(ia + ib, ja + jb))] +=
                            av * b.c_[static_cast<std::size_t>(detail::jet_index(ib, jb))];
                    }
                }
            }
        }
        return out;
    }

    friend BasicJet operator+(BasicJet a, const BasicJet &b) { return a += b; }
    friend BasicJet operator-(BasicJet a, const BasicJet &b) { return a -= b; }
    friend BasicJet operator+(BasicJet a, T s) { return a += s; }
    friend BasicJet operator+(T s, BasicJet a) { return a += s; }
    friend BasicJet operator-(BasicJet a, T s) { return a -= s; }
    friend BasicJet operator-(T s, BasicJet a)
    {
        a *= T(-1);
        return a += s;
    }
    friend BasicJet operator*(BasicJet a, T s) { return a *= s; }
    friend BasicJet operator*(T s, BasicJet a) { return a *= s; }
    friend BasicJet operator/(BasicJet a, T s) { return a *= (T(1) / s); }
    friend BasicJet operator-(BasicJet a) { return a *= T(-1); }

    friend BasicJet operator/(const BasicJet &a, const BasicJet &b) { return a * recip(b); }

private:
    void lower_order(int order)
    {
        if (order < order_) {
            for (int k = detail::jet_size(order); k < size(); ++k) {
                c_[static_cast<std::size_t>(k)] = T{};
            }
            order_ = order;
        }
    }

    int order_;
    std::array<T, kCapacity> c_;
};

using Jet = BasicJet<double>;
using CJet = BasicJet<std::complex<double>>;

/// u(a) for a scalar function u with Taylor coefficients taylor[k] = u^(k)(a0)/k!
/// at a0 = a.value(). Needs taylor.size() > a.order().
template <typename T>
BasicJet<T> compose(const BasicJet<T> &a, std::span<const T> taylor)
{
    BasicJet<T> h = a;
    h.set_coeff(0, 0, T{});
    const int d = a.order();
    BasicJet<T> r(d, taylor[static_cast<std::size_t>(d)]);
    for (int k = d - 1; k >= 0; --k) {
        r = r * h;
        r += taylor[static_cast<std::size_t>(k)];
    }
    return r;
}

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double> &v) { return std::abs(v); }

/// Taylor coefficients of t^p at t0: binom(p, k) t0^(p-k).
template <typename T>
std::vector<T> power_series(T t0, double p, int order)
{
    std::vector<T> out(static_cast<std::size_t>(order) + 1);
    T base = std::pow(t0, p);
    double binom = 1.0;
    for (int k = 0; k <= order; ++k) {
        out[static_cast<std::size_t>(k)] = binom * base;
        binom *= (p - k) / (k + 1.0);
        base /= t0;
    }
    return out;
}

} // namespace detail

template <typename T>
BasicJet<T> recip(const BasicJet<T> &a)
{
    if (detail::magnitude(a.value()) == 0.0) {
        throw GeometryError(ErrorKind::DegenerateJet, "reciprocal of a jet with zero value");
    }
    std::vector<T> s(static_cast<std::size_t>(a.order()) + 1);
    T inv = T(1) / a.value();
    T p = inv;
    for (int k = 0; k <= a.order(); ++k) {
        s[static_cast<std::size_t>(k)] = (k % 2 == 0 ? p : -p);
        p *= inv;
    }
    return compose<T>(a, s);
}

inline Jet sqrt(const Jet &a)
{
    if (!(a.value() > 0.0)) {
        throw GeometryError(ErrorKind::DegenerateJet, "square root of a jet with non-positive value");
    }
    const auto s = detail::power_series(a.value(), 0.5, a.order());
    return compose<double>(a, s);
}

/// a^p on the principal branch; a.value() must be nonzero.
template <typename T>
BasicJet<T> pow(const BasicJet<T> &a, double p)
{
    if (detail::magnitude(a.value()) == 0.0) {
        throw GeometryError(ErrorKind::DegenerateJet, "power of a jet with zero value");
    }
    const auto s = detail::power_series(a.value(), p, a.order());
    return compose<T>(a, s);
}

inline Jet real(const CJet &a)
{
    Jet out(a.order());
    for (int k = 0; k <= a.order(); ++k) {
        for (int j = 0; j <= k; ++j) {
            out.set_coeff(k - j, j, a.coeff(k - j, j).real());
        }
    }
    return out;
}

inline Jet imag(const CJet &a)
{
    Jet out(a.order());
    for (int k = 0; k <= a.order(); ++k) {
        for (int j = 0; j <= k; ++j) {
            out.set_coeff(k - j, j, a.coeff(k - j, j).imag());
        }
    }
    return out;
}

/// Vector of jets sharing a base point. All arithmetic truncates to the
/// smallest participating order.
class JetVec {
public:
    JetVec() = default;
    JetVec(int dim, int order) : comps_(static_cast<std::size_t>(dim), Jet(order)) {}
    explicit JetVec(std::vector<Jet> comps) : comps_(std::move(comps)) {}

    /// Constant jet vector of the given order.
    static JetVec constant(const Eigen::VectorXd &v, int order)
    {
        JetVec out(static_cast<int>(v.size()), order);
        for (int k = 0; k < out.dim(); ++k) {
            out[k] = Jet(order, v[k]);
        }
        return out;
    }

    int dim() const { return static_cast<int>(comps_.size()); }
    int order() const
    {
        int d = kMaxJetOrder;
        for (const auto &c : comps_) {
            d = std::min(d, c.order());
        }
        return comps_.empty() ? 0 : d;
    }

    Jet &operator[](int k) { return comps_[static_cast<std::size_t>(k)]; }
    const Jet &operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }

    Eigen::VectorXd value() const
    {
        Eigen::VectorXd v(dim());
        for (int k = 0; k < dim(); ++k) {
            v[k] = comps_[static_cast<std::size_t>(k)].value();
        }
        return v;
    }

    /// Vector of the partial derivatives d^i/dx^i d^j/dy^j at the base point.
    Eigen::VectorXd derivative(int i, int j) const
    {
        Eigen::VectorXd v(dim());
        for (int k = 0; k < dim(); ++k) {
            v[k] = comps_[static_cast<std::size_t>(k)].derivative(i, j);
        }
        return v;
    }

    JetVec dx() const
    {
        JetVec out = *this;
        for (auto &c : out.comps_) {
            c = c.dx();
        }
        return out;
    }

    JetVec dy() const
    {
        JetVec out = *this;
        for (auto &c : out.comps_) {
            c = c.dy();
        }
        return out;
    }

    JetVec truncated(int order) const
    {
        JetVec out = *this;
        for (auto &c : out.comps_) {
            c = c.truncated(order);
        }
        return out;
    }

    JetVec &operator+=(const JetVec &o)
    {
        check_dim(o);
        for (int k = 0; k < dim(); ++k) {
            (*this)[k] += o[k];
        }
        return *this;
    }

    JetVec &operator-=(const JetVec &o)
    {
        check_dim(o);
        for (int k = 0; k < dim(); ++k) {
            (*this)[k] -= o[k];
        }
        return *this;
    }

    JetVec &operator*=(const Jet &s)
    {
        for (auto &c : comps_) {
            c *= s;
        }
        return *this;
    }

    JetVec &operator*=(double s)
    {
        for (auto &c : comps_) {
            c *= s;
        }
        return *this;
    }

    friend JetVec operator+(JetVec a, const JetVec &b) { return a += b; }
    friend JetVec operator-(JetVec a, const JetVec &b) { return a -= b; }
    friend JetVec operator*(JetVec a, const Jet &s) { return a *= s; }
    friend JetVec operator*(const Jet &s, JetVec a) { return a *= s; }
    friend JetVec operator*(JetVec a, double s) { return a *= s; }
    friend JetVec operator*(double s, JetVec a) { return a *= s; }
    friend JetVec operator-(JetVec a) { return a *= -1.0; }

    /// Adds the constant vector v to the order-0 coefficients.
    JetVec &add_constant(const Eigen::VectorXd &v)
    {
        if (v.size() != dim()) {
            throw std::invalid_argument("JetVec: dimension mismatch");
        }
        for (int k = 0; k < dim(); ++k) {
            (*this)[k] += v[k];
        }
        return *this;
    }

private:
    void check_dim(const JetVec &o) const
    {
        if (o.dim() != dim()) {
            throw std::invalid_argument("JetVec: dimension mismatch");
        }
    }

    std::vector<Jet> comps_;
};

/// Euclidean inner product as a jet.
inline Jet dot(const JetVec &u, const JetVec &v)
{
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    Jet acc(std::min(u.order(), v.order()));
    for (int k = 0; k < u.dim(); ++k) {
        acc += u[k] * v[k];
    }
    return acc;
}

inline Jet norm_sq(const JetVec &u) { return dot(u, u); }

/// Classical Gram-Schmidt on jet vectors. The output is orthonormal as a jet
/// identity. Throws RankDeficient when an order-0 residual falls below
/// rel_tol times the largest input norm.
inline std::vector<JetVec> gram_schmidt(std::span<const JetVec> vectors, double rel_tol = 1e-9)
{
    double scale = 0.0;
    for (const auto &v : vectors) {
        scale = std::max(scale, v.value().norm());
    }
    std::vector<JetVec> out;
    out.reserve(vectors.size());
    for (const auto &v : vectors) {
        JetVec w = v;
        for (const auto &q : out) {
            w -= dot(v, q) * q;
        }
        const Jet n2 = norm_sq(w);
        if (!(n2.value() > 0.0) || std::sqrt(n2.value()) <= rel_tol * scale) {
            throw GeometryError(ErrorKind::RankDeficient, "gram_schmidt: inputs are dependent at order 0");
        }
        out.push_back(w * recip(sqrt(n2)));
    }
    return out;
}

} // namespace superconf
