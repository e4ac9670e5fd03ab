#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace superconf {

using complex = std::complex<double>;

/// Complex polynomial in one variable z. Coefficient k multiplies z^k.
/// Trailing exact zeros are stripped, so the zero polynomial has no
/// coefficients and degree -1.
class CPoly {
public:
    CPoly() = default;
    explicit CPoly(std::vector<complex> coeffs);
    CPoly(std::initializer_list<complex> coeffs);

    static CPoly constant(complex c);
    static CPoly monomial(int k, complex c = 1.0);

    const std::vector<complex> &coeffs() const { return coeffs_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    complex coeff(int k) const;

    complex operator()(complex z) const;

    CPoly derivative() const;
    /// Antiderivative with zero constant term.
    CPoly integral() const;

    /// Taylor coefficients at z0: p(z0 + h) = sum_k out[k] h^k, k <= order.
    std::vector<complex> taylor_at(complex z0, int order) const;

    /// Largest coefficient modulus; 0 for the zero polynomial.
    double max_abs_coeff() const;

    CPoly &operator+=(const CPoly &o);
    CPoly &operator-=(const CPoly &o);
    CPoly &operator*=(complex s);

    friend CPoly operator+(CPoly a, const CPoly &b) { return a += b; }
    friend CPoly operator-(CPoly a, const CPoly &b) { return a -= b; }
    friend CPoly operator*(const CPoly &a, const CPoly &b);
    friend CPoly operator*(CPoly a, complex s) { return a *= s; }
    friend CPoly operator*(complex s, CPoly a) { return a *= s; }
    friend CPoly operator-(CPoly a) { return a *= -1.0; }
    friend bool operator==(const CPoly &, const CPoly &) = default;

private:
    void normalize();

    std::vector<complex> coeffs_;
};

/// A holomorphic curve z -> (p_1(z), ..., p_k(z)) in C^k with polynomial
/// components. Dimension zero is allowed.
class CVecPoly {
public:
    CVecPoly() = default;
    explicit CVecPoly(std::vector<CPoly> comps) : comps_(std::move(comps)) {}
    CVecPoly(std::initializer_list<CPoly> comps) : comps_(comps) {}

    int dim() const { return static_cast<int>(comps_.size()); }
    const CPoly &operator[](int k) const { return comps_[static_cast<std::size_t>(k)]; }
    CPoly &operator[](int k) { return comps_[static_cast<std::size_t>(k)]; }
    const std::vector<CPoly> &components() const { return comps_; }

    bool is_zero() const;
    int degree() const;
    double max_abs_coeff() const;

    CVecPoly derivative() const;
    CVecPoly integral() const;
    Eigen::VectorXcd operator()(complex z) const;

    /// Real-linear change of coordinates: component i becomes sum_j q(i,j) p_j.
    /// For real orthogonal q this rotates the real surface Re(curve).
    CVecPoly transformed(const Eigen::MatrixXd &q) const;

    CVecPoly scaled(const CPoly &s) const;

    friend bool operator==(const CVecPoly &, const CVecPoly &) = default;

private:
    std::vector<CPoly> comps_;
};

/// Bilinear sum of products sum_k u_k v_k (no conjugation).
/// Throws std::invalid_argument on a dimension mismatch.
CPoly dot(const CVecPoly &u, const CVecPoly &v);

} // namespace superconf
