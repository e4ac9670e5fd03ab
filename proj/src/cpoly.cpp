#include <superconf/cpoly.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace superconf {

CPoly::CPoly(std::vector<complex> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

CPoly::CPoly(std::initializer_list<complex> coeffs) : coeffs_(coeffs) { normalize(); }

CPoly CPoly::constant(complex c) { return CPoly({c}); }

CPoly CPoly::monomial(int k, complex c)
{
    std::vector<complex> v(static_cast<std::size_t>(k) + 1, complex{});
    v.back() = c;
    return CPoly(std::move(v));
}

void CPoly::normalize()
{
    while (!coeffs_.empty() && coeffs_.back() == complex{}) {
        coeffs_.pop_back();
    }
}

complex CPoly::coeff(int k) const
{
    if (k < 0 || k >= static_cast<int>(coeffs_.size())) {
        return {};
    }
    return coeffs_[static_cast<std::size_t>(k)];
}

complex CPoly::operator()(complex z) const
{
    complex acc{};
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

CPoly CPoly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return {};
    }
    std::vector<complex> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        out[k - 1] = coeffs_[k] * static_cast<double>(k);
    }
    return CPoly(std::move(out));
}

CPoly CPoly::integral() const
{
    if (coeffs_.empty()) {
        return {};
    }
    std::vector<complex> out(coeffs_.size() + 1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        out[k + 1] = coeffs_[k] / static_cast<double>(k + 1);
    }
    return CPoly(std::move(out));
}

std::vector<complex> CPoly::taylor_at(complex z0, int order) const
{
    // Repeated synthetic division by (z - z0) yields the shifted coefficients.
    std::vector<complex> work = coeffs_;
    std::vector<complex> out(static_cast<std::size_t>(order) + 1, complex{});
    const int n = static_cast<int>(work.size());
    for (int k = 0; k <= order && k < n; ++k) {
        for (int j = n - 2; j >= k; --j) {
            work[static_cast<std::size_t>(j)] += z0 * work[static_cast<std::size_t>(j) + 1];
        }
        out[static_cast<std::size_t>(k)] = work[static_cast<std::size_t>(k)];
    }
    return out;
}

double CPoly::max_abs_coeff() const
{
    double m = 0.0;
    for (const auto &c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

CPoly &CPoly::operator+=(const CPoly &o)
{
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] += o.coeffs_[k];
    }
    normalize();
    return *this;
}

CPoly &CPoly::operator-=(const CPoly &o)
{
    if (o.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(o.coeffs_.size());
    }
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
        coeffs_[k] -= o.coeffs_[k];
    }
    normalize();
    return *this;
}

CPoly &CPoly::operator*=(complex s)
{
    for (auto &c : coeffs_) {
        c *= s;
    }
    normalize();
    return *this;
}

CPoly operator*(const CPoly &a, const CPoly &b)
{
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<complex> out(a.coeffs_.size() + b.coeffs_.size() - 1, complex{});
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return CPoly(std::move(out));
}

bool CVecPoly::is_zero() const
{
    return std::all_of(comps_.begin(), comps_.end(), [](const CPoly &p) { return p.is_zero(); });
}

int CVecPoly::degree() const
{
    int d = -1;
    for (const auto &p : comps_) {
        d = std::max(d, p.degree());
    }
    return d;
}

double CVecPoly::max_abs_coeff() const
{
    double m = 0.0;
    for (const auto &p : comps_) {
        m = std::max(m, p.max_abs_coeff());
    }
    return m;
}

CVecPoly CVecPoly::derivative() const
{
    std::vector<CPoly> out;
    out.reserve(comps_.size());
    for (const auto &p : comps_) {
        out.push_back(p.derivative());
    }
    return CVecPoly(std::move(out));
}

CVecPoly CVecPoly::integral() const
{
    std::vector<CPoly> out;
    out.reserve(comps_.size());
    for (const auto &p : comps_) {
        out.push_back(p.integral());
    }
    return CVecPoly(std::move(out));
}

Eigen::VectorXcd CVecPoly::operator()(complex z) const
{
    Eigen::VectorXcd v(dim());
    for (int k = 0; k < dim(); ++k) {
        v[k] = comps_[static_cast<std::size_t>(k)](z);
    }
    return v;
}

CVecPoly CVecPoly::transformed(const Eigen::MatrixXd &q) const
{
    if (q.cols() != dim()) {
        throw std::invalid_argument("transformed: matrix columns do not match curve dimension");
    }
    std::vector<CPoly> out(static_cast<std::size_t>(q.rows()));
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (int j = 0; j < dim(); ++j) {
            if (q(i, j) != 0.0) {
                out[static_cast<std::size_t>(i)] += comps_[static_cast<std::size_t>(j)] * complex(q(i, j));
            }
        }
    }
    return CVecPoly(std::move(out));
}

CVecPoly CVecPoly::scaled(const CPoly &s) const
{
    std::vector<CPoly> out;
    out.reserve(comps_.size());
    for (const auto &p : comps_) {
        out.push_back(s * p);
    }
    return CVecPoly(std::move(out));
}

CPoly dot(const CVecPoly &u, const CVecPoly &v)
{
    if (u.dim() != v.dim()) {
        throw std::invalid_argument("dot: dimension mismatch");
    }
    CPoly acc;
    for (int k = 0; k < u.dim(); ++k) {
        acc += u[k] * v[k];
    }
    return acc;
}

} // namespace superconf
