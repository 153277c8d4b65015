#include "qjump/linops.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace qjump {

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector vec(const Matrix& m) {
    Vector v(m.size());
    for (Index c = 0; c < m.cols(); ++c)
        v.segment(c * m.rows(), m.rows()) = m.col(c);
    return v;
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
    if (v.size() != rows * cols)
        throw DimensionError("unvec: vector length " + std::to_string(v.size()) +
                             " != " + std::to_string(rows) + "x" + std::to_string(cols));
    Matrix m(rows, cols);
    for (Index c = 0; c < cols; ++c)
        m.col(c) = v.segment(c * rows, rows);
    return m;
}

namespace {

double norm1(const Matrix& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

// Diagonal Pade approximant of order m for exp(A). Coefficients and theta
// bounds from Higham, "The scaling and squaring method for the matrix
// exponential revisited" (2005).
Matrix pade(const Matrix& a, int order) {
    static const std::vector<double> b3  = {120, 60, 12, 1};
    static const std::vector<double> b5  = {30240, 15120, 3360, 420, 30, 1};
    static const std::vector<double> b7  = {17297280, 8648640, 1995840, 277200, 25200, 1512, 56, 1};
    static const std::vector<double> b9  = {17643225600., 8821612800., 2075673600., 302702400.,
                                            30270240., 2162160., 110880., 3960., 90., 1.};
    static const std::vector<double> b13 = {64764752532480000., 32382376266240000., 7771770303897600.,
                                            1187353796428800., 129060195264000., 10559470521600.,
                                            670442572800., 33522128640., 1323241920., 40840800.,
                                            960960., 16380., 182., 1.};

    const Index n = a.rows();
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    Matrix u, v;

    if (order == 13) {
        const Matrix a4 = a2 * a2;
        const Matrix a6 = a2 * a4;
        u = a * (a6 * (b13[13] * a6 + b13[11] * a4 + b13[9] * a2) +
                 b13[7] * a6 + b13[5] * a4 + b13[3] * a2 + b13[1] * id);
        v = a6 * (b13[12] * a6 + b13[10] * a4 + b13[8] * a2) +
            b13[6] * a6 + b13[4] * a4 + b13[2] * a2 + b13[0] * id;
    } else {
        const std::vector<double>& b = order == 3 ? b3 : order == 5 ? b5 : order == 7 ? b7 : b9;
        std::vector<Matrix> pow;  // even powers: I, A^2, A^4, ...
        pow.push_back(id);
        pow.push_back(a2);
        for (int k = 4; k <= order - 1; k += 2) pow.push_back(pow.back() * a2);
        Matrix usum = Matrix::Zero(n, n), vsum = Matrix::Zero(n, n);
        for (int k = 0; k <= order; ++k) {
            if (k % 2 == 1) usum += b[k] * pow[(k - 1) / 2];
            else            vsum += b[k] * pow[k / 2];
        }
        u = a * usum;
        v = vsum;
    }

    // exp(A) ~ (V - U)^{-1} (V + U)
    return (v - u).partialPivLu().solve(v + u);
}

} // namespace

Matrix expm(const Matrix& m) {
    if (m.rows() != m.cols())
        throw DimensionError("expm: input is not square");
    if (!all_finite(m))
        throw NumericalError("expm: non-finite input");

    const double nrm = norm1(m);
    Matrix result;
    if (nrm <= 1.495585217958292e-2) result = pade(m, 3);
    else if (nrm <= 2.539398330063230e-1) result = pade(m, 5);
    else if (nrm <= 9.504178996162932e-1) result = pade(m, 7);
    else if (nrm <= 2.097847961257068e0) result = pade(m, 9);
    else {
        const double theta13 = 5.371920351148152;
        int s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        if (s < 0) s = 0;
        if (s > 63)
            throw NumericalError("expm: scaling 2^" + std::to_string(s) + " out of range");
        result = pade(m * std::ldexp(1.0, -s), 13);
        for (int i = 0; i < s; ++i) result = result * result;
    }
    if (!all_finite(result))
        throw NumericalError("expm: overflow (non-finite entries in result)");
    return result;
}

Matrix expm(const Matrix& m, double t) {
    if (!std::isfinite(t))
        throw NumericalError("expm: non-finite time");
    return expm(Matrix(m * t));
}

NullVectorResult null_vector(const Matrix& m, double tol) {
    if (m.rows() != m.cols())
        throw DimensionError("null_vector: input is not square");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();  // descending
    const Index n = sv.size();
    const double sigma_min = sv(n - 1);
    const double sigma_next = n >= 2 ? sv(n - 2) : 0.0;
    if (sigma_min > tol)
        throw NumericalError("null_vector: smallest singular value " +
                             std::to_string(sigma_min) + " exceeds tolerance");
    NullVectorResult res;
    res.vector = svd.matrixV().col(n - 1);
    res.sigma_min = sigma_min;
    res.gap = sigma_next / std::max(sigma_min, 1e-300);
    return res;
}

Matrix partial_trace_x(const Matrix& rho, Index dim_x, Index dim_y) {
    if (rho.rows() != dim_x * dim_y || rho.cols() != dim_x * dim_y)
        throw DimensionError("partial_trace_x: dimension mismatch");
    Matrix out = Matrix::Zero(dim_y, dim_y);
    for (Index x = 0; x < dim_x; ++x)
        out += rho.block(x * dim_y, x * dim_y, dim_y, dim_y);
    return out;
}

} // namespace qjump
