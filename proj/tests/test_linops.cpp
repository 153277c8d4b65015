#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "qjump/linops.hpp"
#include "support.hpp"

using namespace qjump;
using qtest::max_abs_diff;
using qtest::random_hermitian;
using qtest::random_matrix;

TEST_CASE("kron: identities and hand-expanded products") {
    const Matrix i2 = Matrix::Identity(2, 2);
    CHECK(max_abs_diff(kron(i2, i2), Matrix::Identity(4, 4)) == 0);

    Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
    d1.diagonal() << 1, 2;
    d2.diagonal() << 3, 4;
    Matrix expected = Matrix::Zero(4, 4);
    expected.diagonal() << 3, 4, 6, 8;
    CHECK(max_abs_diff(kron(d1, d2), expected) == 0);

    // single-entry factors: a(0,1) = 1, b(1,0) = 1 land at row 0*2+1, col 1*2+0
    Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
    a(0, 1) = 1;
    b(1, 0) = 1;
    const Matrix k = kron(a, b);
    CHECK(k(1, 2) == Complex(1, 0));
    CHECK(k.cwiseAbs().sum() == 1.0);
}

TEST_CASE("vec: column stacking and the kron identity") {
    Matrix m(2, 2);
    m << Complex(1, 0), Complex(3, 0), Complex(2, 0), Complex(4, 0);  // [[1,3],[2,4]]
    const Vector v = vec(m);
    CHECK(v(0) == Complex(1, 0));
    CHECK(v(1) == Complex(2, 0));
    CHECK(v(2) == Complex(3, 0));
    CHECK(v(3) == Complex(4, 0));

    CHECK((vec(Matrix::Identity(2, 2)) - Vector(Vector::Map(
              std::array<Complex, 4>{Complex(1), Complex(0), Complex(0), Complex(1)}.data(), 4)))
              .norm() == 0);

    for (Index n : {Index(2), Index(4)}) {
        for (int trial = 0; trial < 10; ++trial) {
            const std::uint64_t s = 100 * n + trial;
            const Matrix a = random_matrix(n, n, s), rho = random_matrix(n, n, s + 40),
                         b = random_matrix(n, n, s + 80);
            const Vector lhs = vec(Matrix(a * rho * b));
            const Vector rhs = kron(Matrix(b.transpose()), a) * vec(rho);
            CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("unvec: round trip and shape checks") {
    Vector v(4);
    v << 1, 0, 0, 1;
    CHECK(max_abs_diff(unvec(v, 2, 2), Matrix::Identity(2, 2)) == 0);

    const Matrix m = random_matrix(4, 4, 7);
    CHECK(max_abs_diff(unvec(vec(m), 4, 4), m) == 0);

    Vector v16 = vec(qtest::random_density(4, 8));
    const Matrix rho = unvec(v16, 4, 4);
    CHECK(rho.rows() == 4);
    CHECK(rho.cols() == 4);

    CHECK_THROWS_AS(unvec(v, 3, 2), DimensionError);
}

TEST_CASE("expm: exact special cases") {
    const Matrix m = random_matrix(5, 5, 11);
    CHECK(max_abs_diff(expm(m, 0.0), Matrix::Identity(5, 5)) < 1e-15);

    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << Complex(0.3, 0), Complex(-1.2, 0);
    const double t = 0.77;
    Matrix expected = Matrix::Zero(2, 2);
    expected.diagonal() << std::exp(0.3 * t), std::exp(-1.2 * t);
    CHECK(max_abs_diff(expm(d, t), expected) < 1e-15);

    CHECK_THROWS_AS(expm(random_matrix(3, 4, 1)), DimensionError);
}

TEST_CASE("expm: agrees with the eigendecomposition for normal matrices") {
    for (std::uint64_t s : {21, 22, 23}) {
        const Matrix h = random_hermitian(6, s);
        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const Matrix ref = es.eigenvectors() *
                           es.eigenvalues().array().exp().matrix().asDiagonal() *
                           es.eigenvectors().adjoint();
        const Matrix got = expm(h);
        CHECK(max_abs_diff(got, ref) / ref.cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("expm: semigroup property on random non-Hermitian 16x16") {
    for (std::uint64_t seed : {31, 32, 33}) {
        Matrix m = random_matrix(16, 16, seed);
        m /= m.cwiseAbs().colwise().sum().maxCoeff();  // ||M|| ~ 1
        const double s = 0.63, t = 1.41;
        const Matrix lhs = expm(m, s) * expm(m, t);
        const Matrix rhs = expm(m, s + t);
        CHECK(max_abs_diff(lhs, rhs) / rhs.cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("expm: derivative limit (expm(M,h) - I)/h -> M") {
    const Matrix m = random_matrix(6, 6, 41);
    const double h = 1e-6;
    const Matrix approx = (expm(m, h) - Matrix::Identity(6, 6)) / h;
    // first-order error bound ~ h ||M||^2
    const double bound = 10 * h * m.cwiseAbs().maxCoeff() * m.cwiseAbs().maxCoeff() * 6;
    CHECK(max_abs_diff(approx, m) < bound);
}

TEST_CASE("expm: large scaling still accurate, absurd scaling rejected") {
    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << Complex(-3e6, 0), Complex(-1e6, 0);
    const Matrix got = expm(d, 1e-5);  // needs ~2^12 squarings worth of scaling
    CHECK(std::abs(got(0, 0).real() - std::exp(-30.0)) < 1e-12);
    CHECK(std::abs(got(1, 1).real() - std::exp(-10.0)) < 1e-12);

    Matrix huge = Matrix::Zero(2, 2);
    huge.diagonal() << Complex(1e300, 0), Complex(1e300, 0);
    CHECK_THROWS_AS(expm(huge), NumericalError);
}

TEST_CASE("null_vector: diagonal case, error case, gap") {
    Matrix d = Matrix::Zero(3, 3);
    d.diagonal() << 0, 1, 2;
    const auto res = null_vector(d, 1e-9);
    CHECK(std::abs(std::abs(res.vector(0)) - 1.0) < 1e-12);
    CHECK(std::abs(res.vector(1)) < 1e-12);
    CHECK(res.gap > 1e8);

    CHECK_THROWS_AS(null_vector(Matrix::Identity(3, 3), 1e-9), NumericalError);
    CHECK_THROWS_AS(null_vector(random_matrix(2, 3, 3)), DimensionError);
}

TEST_CASE("partial_trace_x: product states, maximally mixed, trace preservation") {
    // |g,0><g,0| = basis index 0 of the 4-state space
    Matrix rho = Matrix::Zero(4, 4);
    rho(0, 0) = 1;
    Matrix reduced = partial_trace_x(rho, 2, 2);
    CHECK(reduced(0, 0) == Complex(1, 0));
    CHECK(std::abs(reduced(1, 1)) == 0);

    reduced = partial_trace_x(Matrix(Matrix::Identity(4, 4) / 4.0), 2, 2);
    CHECK(max_abs_diff(reduced, Matrix(Matrix::Identity(2, 2) / 2.0)) < 1e-15);

    for (std::uint64_t s : {51, 52, 53}) {
        const Matrix r = qtest::random_density(4, s);
        // index-sum oracle: rho_Y(y,y') = sum_x rho[(x,y),(x,y')]
        Matrix direct = Matrix::Zero(2, 2);
        for (int y = 0; y < 2; ++y)
            for (int y2 = 0; y2 < 2; ++y2)
                for (int x = 0; x < 2; ++x) direct(y, y2) += r(2 * x + y, 2 * x + y2);
        CHECK(max_abs_diff(partial_trace_x(r, 2, 2), direct) < 1e-14);
        CHECK(std::abs(partial_trace_x(r, 2, 2).trace() - r.trace()) < 1e-14);
        // positivity on positive inputs
        Eigen::SelfAdjointEigenSolver<Matrix> es(partial_trace_x(r, 2, 2));
        CHECK(es.eigenvalues().minCoeff() > -1e-14);
    }

    CHECK_THROWS_AS(partial_trace_x(random_matrix(4, 4, 5), 3, 2), DimensionError);
}
