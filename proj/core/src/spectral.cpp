#include "traj_manifold/spectral.hpp"

#include "traj_manifold/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace traj_manifold {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form with the
// accumulated transformation left in v; d receives the diagonal and e the
// subdiagonal. Classic tred2 scheme.
void tridiagonalize(Eigen::MatrixXd& v, Eigen::VectorXd& d, Eigen::VectorXd& e) {
    const int n = static_cast<int>(v.rows());
    for (int j = 0; j < n; ++j) {
        d(j) = v(n - 1, j);
    }

    for (int i = n - 1; i > 0; --i) {
        double scale = 0.0;
        double h = 0.0;
        for (int k = 0; k < i; ++k) {
            scale += std::abs(d(k));
        }
        if (scale == 0.0) {
            e(i) = d(i - 1);
            for (int j = 0; j < i; ++j) {
                d(j) = v(i - 1, j);
                v(i, j) = 0.0;
                v(j, i) = 0.0;
            }
        } else {
            for (int k = 0; k < i; ++k) {
                d(k) /= scale;
                h += d(k) * d(k);
            }
            double f = d(i - 1);
            double g = std::sqrt(h);
            if (f > 0.0) {
                g = -g;
            }
            e(i) = scale * g;
            h -= f * g;
            d(i - 1) = f - g;
            for (int j = 0; j < i; ++j) {
                e(j) = 0.0;
            }

            for (int j = 0; j < i; ++j) {
                f = d(j);
                v(j, i) = f;
                g = e(j) + v(j, j) * f;
                for (int k = j + 1; k <= i - 1; ++k) {
                    g += v(k, j) * d(k);
                    e(k) += v(k, j) * f;
                }
                e(j) = g;
            }
            f = 0.0;
            for (int j = 0; j < i; ++j) {
                e(j) /= h;
                f += e(j) * d(j);
            }
            const double hh = f / (h + h);
            for (int j = 0; j < i; ++j) {
                e(j) -= hh * d(j);
            }
            for (int j = 0; j < i; ++j) {
                f = d(j);
                g = e(j);
                for (int k = j; k <= i - 1; ++k) {
                    v(k, j) -= f * e(k) + g * d(k);
                }
                d(j) = v(i - 1, j);
                v(i, j) = 0.0;
            }
        }
        d(i) = h;
    }

    // Accumulate the Householder transformations.
    for (int i = 0; i < n - 1; ++i) {
        v(n - 1, i) = v(i, i);
        v(i, i) = 1.0;
        const double h = d(i + 1);
        if (h != 0.0) {
            for (int k = 0; k <= i; ++k) {
                d(k) = v(k, i + 1) / h;
            }
            for (int j = 0; j <= i; ++j) {
                double g = 0.0;
                for (int k = 0; k <= i; ++k) {
                    g += v(k, i + 1) * v(k, j);
                }
                for (int k = 0; k <= i; ++k) {
                    v(k, j) -= g * d(k);
                }
            }
        }
        for (int k = 0; k <= i; ++k) {
            v(k, i + 1) = 0.0;
        }
    }
    for (int j = 0; j < n; ++j) {
        d(j) = v(n - 1, j);
        v(n - 1, j) = 0.0;
    }
    v(n - 1, n - 1) = 1.0;
    e(0) = 0.0;
}

// Implicit-shift QL iteration on the tridiagonal form, rotations accumulated
// into v. Returns the number of QL sweeps performed.
int diagonalize(Eigen::MatrixXd& v, Eigen::VectorXd& d, Eigen::VectorXd& e) {
    const int n = static_cast<int>(v.rows());
    for (int i = 1; i < n; ++i) {
        e(i - 1) = e(i);
    }
    e(n - 1) = 0.0;

    double f = 0.0;
    double tst1 = 0.0;
    const double eps = std::ldexp(1.0, -52);
    int total_sweeps = 0;

    for (int l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d(l)) + std::abs(e(l)));
        int m = l;
        while (m < n && std::abs(e(m)) > eps * tst1) {
            ++m;
        }

        if (m > l) {
            int sweeps = 0;
            do {
                if (++sweeps > 64) {
                    throw NumericalError("symmetric eigensolver failed to converge");
                }
                ++total_sweeps;

                double g = d(l);
                double p = (d(l + 1) - g) / (2.0 * e(l));
                double r = std::hypot(p, 1.0);
                if (p < 0.0) {
                    r = -r;
                }
                d(l) = e(l) / (p + r);
                d(l + 1) = e(l) * (p + r);
                const double dl1 = d(l + 1);
                double h = g - d(l);
                for (int i = l + 2; i < n; ++i) {
                    d(i) -= h;
                }
                f += h;

                p = d(m);
                double c = 1.0;
                double c2 = c;
                double c3 = c;
                const double el1 = e(l + 1);
                double s = 0.0;
                double s2 = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e(i);
                    h = c * p;
                    r = std::hypot(p, e(i));
                    e(i + 1) = s * r;
                    s = e(i) / r;
                    c = p / r;
                    p = c * d(i) - s * g;
                    d(i + 1) = h + s * (c * g + s * d(i));
                    for (int k = 0; k < n; ++k) {
                        h = v(k, i + 1);
                        v(k, i + 1) = s * v(k, i) + c * h;
                        v(k, i) = c * v(k, i) - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e(l) / dl1;
                e(l) = s * p;
                d(l) = c * p;
            } while (std::abs(e(l)) > eps * tst1);
        }
        d(l) += f;
        e(l) = 0.0;
    }
    return total_sweeps;
}

} // namespace

SpectralResult symmetric_eigendecomposition(const Eigen::MatrixXd& matrix) {
    const Eigen::Index n = matrix.rows();
    if (n == 0 || matrix.cols() != n) {
        throw ParameterError("eigendecomposition needs a nonempty square matrix");
    }
    if (!matrix.allFinite()) {
        throw ParameterError("eigendecomposition input contains non-finite entries");
    }
    if (matrix != matrix.transpose()) {
        throw ParameterError("eigendecomposition input is not symmetric");
    }

    Eigen::MatrixXd v = matrix;
    Eigen::VectorXd d(n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);

    SpectralResult result;
    if (n == 1) {
        result.eigenvalues = d;
        result.eigenvalues(0) = matrix(0, 0);
        result.eigenvectors = Eigen::MatrixXd::Identity(1, 1);
        result.iterations = 0;
        return result;
    }

    tridiagonalize(v, d, e);
    result.iterations = diagonalize(v, d, e);

    // Order eigenpairs by nonincreasing eigenvalue (stable for ties).
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return d(a) > d(b); });

    result.eigenvalues.resize(n);
    result.eigenvectors.resize(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        result.eigenvalues(c) = d(order[static_cast<std::size_t>(c)]);
        result.eigenvectors.col(c) = v.col(order[static_cast<std::size_t>(c)]);
    }

    // Orient each eigenvector so its entry of largest magnitude is positive.
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index arg = 0;
        double best = std::abs(result.eigenvectors(0, c));
        for (Eigen::Index r = 1; r < n; ++r) {
            const double mag = std::abs(result.eigenvectors(r, c));
            if (mag > best) {
                best = mag;
                arg = r;
            }
        }
        if (result.eigenvectors(arg, c) < 0.0) {
            result.eigenvectors.col(c) = -result.eigenvectors.col(c);
        }
    }
    return result;
}

} // namespace traj_manifold
