#pragma once

// Riemann theta functions with integer characteristics,
//
//   theta[eps; eps'](z, tau) = sum_{n in Z^g} e( 1/2 (n + eps/2) tau (n + eps/2)
//                                              + (n + eps/2).(z + eps'/2) ),
//
// with e(x) = exp(2 pi i x), evaluated by a truncated lattice sum.

#include "integer_symplectic.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetaweber
{
    using Complex = std::complex<double>;

    /// Symmetric complex g x g matrix with positive definite imaginary part.
    class RiemannMatrix
    {
    public:
        explicit RiemannMatrix(Eigen::MatrixXcd tau) : tau_(std::move(tau))
        {
            if (tau_.rows() != tau_.cols() || tau_.rows() < 1)
                throw std::domain_error("RiemannMatrix: tau must be square");
            check_genus(genus());
            const double asym = (tau_ - tau_.transpose()).cwiseAbs().maxCoeff();
            if (asym >= 1e-12)
                throw std::domain_error("RiemannMatrix: tau is not symmetric (deviation " +
                                        std::to_string(asym) + ")");
            const Eigen::MatrixXd im = tau_.imag();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig((im + im.transpose()) / 2.0);
            y_min_ = eig.eigenvalues().minCoeff();
            if (!(y_min_ > 0.0))
                throw std::domain_error("RiemannMatrix: imaginary part is not positive definite");
            im_inverse_ = im.inverse();
        }

        int genus() const noexcept { return static_cast<int>(tau_.rows()); }
        const Eigen::MatrixXcd &tau() const noexcept { return tau_; }
        /// Smallest eigenvalue of Im tau.
        double y_min() const noexcept { return y_min_; }
        const Eigen::MatrixXd &im_inverse() const noexcept { return im_inverse_; }

    private:
        Eigen::MatrixXcd tau_;
        double y_min_{0.0};
        Eigen::MatrixXd im_inverse_;
    };

    struct ThetaEvalConfig
    {
        /// Lattice truncation radius R; 0 selects it from target_tail.
        int radius{0};
        double target_tail{1e-16};
        /// Throw when an explicit radius is below the one target_tail requires.
        bool strict{false};
    };

    /// Smallest R >= 1 with exp(-pi y_min (R-1)^2) (2R+1)^g < tail.
    inline int required_radius(double y_min, int g, double tail)
    {
        if (!(tail > 0.0))
            throw std::invalid_argument("required_radius: tail must be positive");
        for (int r = 1; r < 10000; ++r)
        {
            const double bound = std::exp(-std::numbers::pi * y_min * (r - 1.0) * (r - 1.0)) *
                                 std::pow(2.0 * r + 1.0, g);
            if (bound < tail)
                return r;
        }
        throw std::domain_error("required_radius: y_min too small for the requested tail");
    }

    inline int effective_radius(const RiemannMatrix &tau, const ThetaEvalConfig &cfg)
    {
        const int needed = required_radius(tau.y_min(), tau.genus(), cfg.target_tail);
        if (cfg.radius <= 0)
            return needed;
        if (cfg.strict && cfg.radius < needed)
            throw std::domain_error("theta: radius " + std::to_string(cfg.radius) +
                                    " is below the " + std::to_string(needed) +
                                    " needed for tail " + std::to_string(cfg.target_tail));
        return cfg.radius;
    }

    namespace detail
    {
        /// Neumaier-compensated complex accumulator; the result does not depend
        /// on how the caller groups its terms beyond rounding of the compensation.
        struct CompensatedSum
        {
            double re{0}, im{0}, re_c{0}, im_c{0};

            static void add(double &s, double &c, double x)
            {
                const double t = s + x;
                if (std::abs(s) >= std::abs(x))
                    c += (s - t) + x;
                else
                    c += (x - t) + s;
                s = t;
            }
            void add(const Complex &z)
            {
                add(re, re_c, z.real());
                add(im, im_c, z.imag());
            }
            Complex value() const { return {re + re_c, im + im_c}; }
        };

        struct LatticeSum
        {
            Complex value;
            Eigen::VectorXcd gradient;
        };

        /// Sum over n + r/2 where r = eps mod 2, after peeling off the sign
        /// (-1)^{n'.eps} from eps' = r' + 2 n'. The box is centred on the lattice
        /// point nearest -Y^{-1} Im z, where the terms peak.
        inline LatticeSum lattice_sum(const IntCharacteristic &q, const Eigen::VectorXcd &z,
                                      const RiemannMatrix &tau, const ThetaEvalConfig &cfg, bool with_gradient)
        {
            const int g = tau.genus();
            if (q.genus() != g || z.size() != g)
                throw std::invalid_argument("theta: dimension mismatch between characteristic, z and tau");
            const int radius = effective_radius(tau, cfg);
            const Eigen::MatrixXcd &t = tau.tau();

            std::vector<double> shift(g);
            Eigen::VectorXcd zz(g);
            std::int64_t sign_exponent = 0;
            for (int i = 0; i < g; ++i)
            {
                const std::int64_t r = mod2(q.eps(i));
                const std::int64_t rp = mod2(q.eps_prime(i));
                shift[i] = 0.5 * static_cast<double>(r);
                zz(i) = z(i) + 0.5 * static_cast<double>(rp);
                sign_exponent += ((q.eps_prime(i) - rp) / 2) * r;
            }
            const double sign = mod2(sign_exponent) ? -1.0 : 1.0;

            const Eigen::VectorXd centre_real = -(tau.im_inverse() * z.imag());
            std::vector<std::int64_t> centre(g), k(g);
            for (int i = 0; i < g; ++i)
            {
                centre[i] = static_cast<std::int64_t>(std::llround(centre_real(i)));
                k[i] = centre[i] - radius;
            }

            const Complex two_pi_i(0.0, 2.0 * std::numbers::pi);
            const Complex pi_i(0.0, std::numbers::pi);
            CompensatedSum value;
            std::vector<CompensatedSum> grad(with_gradient ? g : 0);
            std::vector<double> w(g);

            while (true)
            {
                for (int i = 0; i < g; ++i)
                    w[i] = static_cast<double>(k[i]) + shift[i];
                Complex quad = 0.0, lin = 0.0;
                for (int i = 0; i < g; ++i)
                {
                    Complex row = t(i, i) * w[i];
                    for (int j = i + 1; j < g; ++j)
                        row += 2.0 * t(i, j) * w[j];
                    quad += w[i] * row;
                    lin += w[i] * zz(i);
                }
                const Complex term = std::exp(pi_i * quad + two_pi_i * lin);
                value.add(term);
                for (int i = 0; i < static_cast<int>(grad.size()); ++i)
                    grad[i].add(two_pi_i * w[i] * term);

                int pos = 0;
                while (pos < g && k[pos] == centre[pos] + radius)
                {
                    k[pos] = centre[pos] - radius;
                    ++pos;
                }
                if (pos == g)
                    break;
                ++k[pos];
            }

            LatticeSum out{sign * value.value(), Eigen::VectorXcd::Zero(g)};
            for (int i = 0; i < static_cast<int>(grad.size()); ++i)
                out.gradient(i) = sign * grad[i].value();
            return out;
        }
    } // namespace detail

    inline Complex theta(const IntCharacteristic &q, const Eigen::VectorXcd &z, const RiemannMatrix &tau,
                         const ThetaEvalConfig &cfg = {})
    {
        return detail::lattice_sum(q, z, tau, cfg, false).value;
    }

    /// Thetanullwert theta[q](0, tau); q must be even.
    inline Complex theta_null(const IntCharacteristic &q, const RiemannMatrix &tau, const ThetaEvalConfig &cfg = {})
    {
        if (is_odd(q.reduce()))
            throw std::invalid_argument("theta_null: characteristic is odd");
        return theta(q, Eigen::VectorXcd::Zero(tau.genus()), tau, cfg);
    }

    /// Gradient in z at z = 0, by term-wise differentiation.
    inline Eigen::VectorXcd theta_grad(const IntCharacteristic &q, const RiemannMatrix &tau,
                                       const ThetaEvalConfig &cfg = {})
    {
        return detail::lattice_sum(q, Eigen::VectorXcd::Zero(tau.genus()), tau, cfg, true).gradient;
    }

    /// Gradient in z at an arbitrary z.
    inline Eigen::VectorXcd theta_grad_at(const IntCharacteristic &q, const Eigen::VectorXcd &z,
                                          const RiemannMatrix &tau, const ThetaEvalConfig &cfg = {})
    {
        return detail::lattice_sum(q, z, tau, cfg, true).gradient;
    }

    /// pi^{-g} det(d theta[q_j] / d z_i (0))_{i,j}.
    inline Complex jacobian_nullwert(std::span<const IntCharacteristic> qs, const RiemannMatrix &tau,
                                     const ThetaEvalConfig &cfg = {})
    {
        const int g = tau.genus();
        if (static_cast<int>(qs.size()) != g)
            throw std::invalid_argument("jacobian_nullwert: need exactly g characteristics");
        Eigen::MatrixXcd m(g, g);
        for (int j = 0; j < g; ++j)
        {
            if (is_even(qs[j].reduce()))
                throw std::invalid_argument("jacobian_nullwert: characteristic " + std::to_string(j + 1) +
                                            " is even");
            m.col(j) = theta_grad(qs[j], tau, cfg);
        }
        return m.determinant() / std::pow(std::numbers::pi, g);
    }

} // namespace thetaweber
