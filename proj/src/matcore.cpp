#include "tiso/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace tiso {

namespace {

constexpr int kMaxSweeps = 80;

void require_same_shape(const Mat& a, const Mat& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + describe_shape(a) +
                             " vs " + describe_shape(b));
    }
}

// Parameters (c, s) of the real rotation that diagonalizes [[a, g], [g, d]],
// g > 0, using the smaller rotation angle.
std::pair<double, double> jacobi_rotation(double a, double d, double g) {
    const double zeta = (d - a) / (2.0 * g);
    const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
    const double c = 1.0 / std::hypot(1.0, t);
    return {c, c * t};
}

void rotate_columns(Mat& m, std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const Complex mp = m(i, p);
        const Complex mq = m(i, q);
        m(i, p) = c * mp - s * mq;
        m(i, q) = s * mp + c * mq;
    }
}

void rotate_rows(Mat& m, std::size_t p, std::size_t q, double c, double s) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Complex mp = m(p, j);
        const Complex mq = m(q, j);
        m(p, j) = c * mp - s * mq;
        m(q, j) = s * mp + c * mq;
    }
}

void scale_column(Mat& m, std::size_t j, Complex z) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= z;
}

void scale_row(Mat& m, std::size_t i, Complex z) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= z;
}

double rank_threshold(const std::vector<double>& values, const Tol& tol) {
    const double top = values.empty() ? 0.0 : values.front();
    return tol.eps_rank * std::max(1.0, top);
}

}  // namespace

void Tol::validate() const {
    if (!(eps_rank >= 0.0) || !(eps_residual >= 0.0) || !(eps_eq >= 0.0)) {
        throw ContractError("tolerances must be nonnegative");
    }
}

NotNilpotent::NotNilpotent(double power_norm)
    : std::runtime_error("matrix is not numerically nilpotent: |T^n| = " + std::to_string(power_norm)),
      power_norm_(power_norm) {}

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("expected " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(data_.size()));
    }
    if (!all_finite()) throw ContractError("matrix entries must be finite");
}

Mat Mat::identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(std::span<const Complex> d) {
    Mat m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw DimensionError("ragged row list");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return Mat(r, c, std::move(entries));
}

Mat Mat::from_columns(const std::vector<std::vector<Complex>>& cols, std::size_t rows) {
    Mat m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
    return m;
}

std::vector<Complex> Mat::column(std::size_t j) const {
    std::vector<Complex> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_column(std::size_t j, std::span<const Complex> v) {
    if (v.size() != rows_) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::adjoint() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

Mat Mat::transpose() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Mat Mat::conj() const {
    Mat m = *this;
    for (auto& z : m.data_) z = std::conj(z);
    return m;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_) throw DimensionError("block out of range");
    Mat m(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i)
        for (std::size_t j = 0; j < ncols; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

bool Mat::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

Mat& Mat::operator+=(const Mat& other) {
    require_same_shape(*this, other, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& other) {
    require_same_shape(*this, other, "sub");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Mat& Mat::operator*=(Complex c) {
    for (auto& z : data_) z *= c;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }
Mat operator-(Mat a) { return a *= -1.0; }
Mat operator*(Complex c, Mat a) { return a *= c; }
Mat operator*(Mat a, Complex c) { return a *= c; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("mul: shape mismatch " + describe_shape(a) + " * " + describe_shape(b));
    }
    Mat m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
        }
    return m;
}

std::vector<Complex> operator*(const Mat& a, std::span<const Complex> x) {
    if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

Complex trace(const Mat& a) {
    if (!a.is_square()) throw DimensionError("trace of non-square matrix " + describe_shape(a));
    Complex t{};
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double frobenius_norm(const Mat& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

Mat power(const Mat& a, std::size_t k) {
    if (!a.is_square()) throw DimensionError("power of non-square matrix");
    Mat result = Mat::identity(a.rows());
    for (std::size_t i = 0; i < k; ++i) result = result * a;
    return result;
}

Mat block_matrix(std::span<const Mat> blocks, std::size_t k) {
    if (blocks.size() != k * k || k == 0) throw DimensionError("block_matrix needs k*k blocks");
    const std::size_t br = blocks[0].rows();
    const std::size_t bc = blocks[0].cols();
    Mat m(k * br, k * bc);
    for (std::size_t bi = 0; bi < k; ++bi)
        for (std::size_t bj = 0; bj < k; ++bj) {
            const Mat& b = blocks[bi * k + bj];
            if (b.rows() != br || b.cols() != bc) throw DimensionError("block_matrix: unequal blocks");
            for (std::size_t i = 0; i < br; ++i)
                for (std::size_t j = 0; j < bc; ++j) m(bi * br + i, bj * bc + j) = b(i, j);
        }
    return m;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw DimensionError("inner product length mismatch");
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double vector_norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

Svd svd(const Mat& a) {
    // One-sided (Hestenes) Jacobi: orthogonalize the columns of W = A V.
    const std::size_t n = a.cols();
    Mat w = a;
    Mat v = Mat::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();
    // Columns below this squared norm are round-off; rotating them only
    // degrades V (their phases lose unit modulus).
    const double negligible = std::pow(eps * frobenius_norm(a), 2);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = 0.0, beta = 0.0;
                Complex gamma{};
                for (std::size_t i = 0; i < w.rows(); ++i) {
                    alpha += std::norm(w(i, p));
                    beta += std::norm(w(i, q));
                    gamma += std::conj(w(i, p)) * w(i, q);
                }
                const double g = std::abs(gamma);
                if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
                if (std::min(alpha, beta) <= negligible) continue;
                rotated = true;
                Complex phase = std::conj(gamma) / g;
                phase /= std::abs(phase);
                scale_column(w, q, phase);
                scale_column(v, q, phase);
                const auto [c, s] = jacobi_rotation(alpha, beta, g);
                rotate_columns(w, p, q, c, s);
                rotate_columns(v, p, q, c, s);
            }
        }
        if (!rotated) break;
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < w.rows(); ++i) s += std::norm(w(i, j));
        norms[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    Svd out{std::vector<double>(n), Mat(a.rows(), n), Mat(n, n)};
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = order[jj];
        out.values[jj] = norms[j];
        for (std::size_t i = 0; i < n; ++i) out.v(i, jj) = v(i, j);
        if (norms[j] > 0.0)
            for (std::size_t i = 0; i < a.rows(); ++i) out.u(i, jj) = w(i, j) / norms[j];
    }
    return out;
}

std::vector<double> svd_values(const Mat& a) {
    auto values = svd(a).values;
    values.resize(std::min(a.rows(), a.cols()));
    return values;
}

double operator_norm(const Mat& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    return svd(a).values.front();
}

HermitianEigen hermitian_eigen(const Mat& h, const Tol& tol) {
    if (!h.is_square()) throw DimensionError("hermitian_eigen of non-square matrix " + describe_shape(h));
    const Mat hstar = h.adjoint();
    const double asym = frobenius_norm(h - hstar);
    if (asym > tol.eps_eq * std::max(1.0, frobenius_norm(h))) {
        throw ContractError("matrix is not Hermitian: |H - H*|_F = " + std::to_string(asym));
    }
    const std::size_t n = h.rows();
    Mat a = 0.5 * (h + hstar);
    Mat v = Mat::identity(n);
    const double eps = std::numeric_limits<double>::epsilon();

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double g = std::abs(a(p, q));
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                if (g == 0.0 || g <= eps * std::sqrt(std::abs(app * aqq)) * 0.5 ||
                    (std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq))) {
                    continue;
                }
                rotated = true;
                // Make the (p, q) entry real positive, then rotate.
                const Complex phase = std::conj(a(p, q)) / g;
                scale_column(a, q, phase);
                scale_row(a, q, std::conj(phase));
                scale_column(v, q, phase);
                const auto [c, s] = jacobi_rotation(app, aqq, g);
                rotate_columns(a, p, q, c, s);
                rotate_rows(a, p, q, c, s);
                rotate_columns(v, p, q, c, s);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
        if (!rotated) break;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    HermitianEigen out{std::vector<double>(n), Mat(n, n)};
    for (std::size_t jj = 0; jj < n; ++jj) {
        out.values[jj] = a(order[jj], order[jj]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, jj) = v(i, order[jj]);
    }
    return out;
}

std::vector<double> hermitian_eigs(const Mat& h, const Tol& tol) { return hermitian_eigen(h, tol).values; }

Mat nullspace_basis(const Mat& a, const Tol& tol) {
    const Svd s = svd(a);
    const double thr = rank_threshold(s.values, tol);
    std::vector<std::vector<Complex>> cols;
    for (std::size_t j = 0; j < s.values.size(); ++j)
        if (s.values[j] <= thr) cols.push_back(s.v.column(j));
    return Mat::from_columns(cols, a.cols());
}

Mat range_basis(const Mat& a, const Tol& tol) {
    const Svd s = svd(a);
    const double thr = rank_threshold(s.values, tol);
    std::vector<std::vector<Complex>> cols;
    for (std::size_t j = 0; j < s.values.size(); ++j)
        if (s.values[j] > thr) cols.push_back(s.u.column(j));
    return Mat::from_columns(cols, a.rows());
}

std::size_t rank_eps(const Mat& a, const Tol& tol) {
    const auto values = svd_values(a);
    const double thr = rank_threshold(values, tol);
    return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [&](double s) { return s > thr; }));
}

Mat orthogonal_complement(const Mat& b, const Tol& tol) {
    if (b.cols() == 0) return Mat::identity(b.rows());
    return nullspace_basis(b.adjoint(), tol);
}

SchurForm schur_strict_upper(const Mat& t, const Tol& tol) {
    if (!t.is_square()) throw DimensionError("schur_strict_upper of non-square matrix " + describe_shape(t));
    const std::size_t n = t.rows();
    const double norm_t = operator_norm(t);
    if (norm_t == 0.0) return {Mat::identity(n), Mat(n, n)};

    const double power_norm = operator_norm(power(t, n));
    if (power_norm > tol.eps_residual * std::pow(norm_t, static_cast<double>(n))) throw NotNilpotent(power_norm);

    // Grow an orthonormal basis of ker T^j one level at a time:
    // ker T^j = ker((I - P_{j-1}) T) where P_{j-1} projects onto ker T^{j-1}.
    Mat basis(n, 0);
    while (basis.cols() < n) {
        const Mat complement = orthogonal_complement(basis, tol);
        const Mat proj = Mat::identity(n) - basis * basis.adjoint();
        const Mat restricted = proj * t * complement;
        const Mat z = nullspace_basis(restricted, tol);
        if (z.cols() == 0) throw NotNilpotent(power_norm);
        const Mat fresh = complement * z;
        Mat grown(n, basis.cols() + fresh.cols());
        for (std::size_t j = 0; j < basis.cols(); ++j) grown.set_column(j, basis.column(j));
        for (std::size_t j = 0; j < fresh.cols(); ++j) grown.set_column(basis.cols() + j, fresh.column(j));
        basis = std::move(grown);
    }

    Mat q = normalize_phase(basis, tol.eps_eq).first;
    Mat r = q.adjoint() * t * q;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) r(i, j) = 0.0;
    const double residual = frobenius_norm(q * r * q.adjoint() - t);
    if (residual > tol.eps_residual * std::max(1.0, frobenius_norm(t))) throw NotNilpotent(power_norm);
    return {std::move(q), std::move(r)};
}

Defect is_unitary(const Mat& u, const Tol& tol) {
    if (!u.is_square()) throw DimensionError("is_unitary of non-square matrix " + describe_shape(u));
    const double defect = frobenius_norm(u.adjoint() * u - Mat::identity(u.rows()));
    return {defect <= tol.eps_residual, defect};
}

Defect is_partial_isometry(const Mat& a, const Tol& tol) {
    const double defect = frobenius_norm(a * a.adjoint() * a - a);
    return {defect <= tol.eps_residual * std::max(1.0, frobenius_norm(a)), defect};
}

bool subspace_contained(const Mat& b1, const Mat& b2, const Tol& tol) {
    if (b1.rows() != b2.rows()) throw DimensionError("subspace_contained: ambient dimension mismatch");
    for (const Mat* b : {&b1, &b2}) {
        const double defect = frobenius_norm(b->adjoint() * *b - Mat::identity(b->cols()));
        if (defect > tol.eps_residual) {
            throw ContractError("subspace_contained: columns not orthonormal (defect " + std::to_string(defect) + ")");
        }
    }
    if (b1.cols() == 0) return true;
    const Mat residual = b1 - b2 * (b2.adjoint() * b1);
    return operator_norm(residual) <= tol.eps_residual;
}

std::pair<Mat, Complex> normalize_phase(const Mat& u, double eps_eq) {
    for (std::size_t i = 0; i < u.rows() && u.cols() > 0; ++i) {
        const Complex z = u(i, 0);
        if (std::abs(z) > eps_eq) {
            const Complex factor = std::conj(z) / std::abs(z);
            return {factor * u, factor};
        }
    }
    return {u, Complex{1.0, 0.0}};
}

std::pair<double, Complex> phase_aligned_distance(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("phase_aligned_distance: shape mismatch");
    Complex overlap{};  // <b, a>
    for (std::size_t i = 0; i < a.entries().size(); ++i) overlap += std::conj(b.entries()[i]) * a.entries()[i];
    const Complex factor = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    return {frobenius_norm(a - factor * b), factor};
}

std::string describe_shape(const Mat& a) {
    std::ostringstream os;
    os << a.rows() << "x" << a.cols();
    return os.str();
}

}  // namespace tiso
