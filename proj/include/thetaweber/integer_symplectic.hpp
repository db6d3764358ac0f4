#pragma once

// Integer characteristics [eps; eps'] in Z^g + Z^g and Sp_{2g}(Z) acting on
// them, following the classical theta transformation formula.

#include "f2.hpp"
#include "symplectic_f2.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace thetaweber
{
    using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
    using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

    inline std::int64_t mod2(std::int64_t x) noexcept { return ((x % 2) + 2) % 2; }

    struct IntCharacteristic
    {
        IntVector eps;
        IntVector eps_prime;

        IntCharacteristic() = default;
        IntCharacteristic(IntVector e, IntVector ep) : eps(std::move(e)), eps_prime(std::move(ep))
        {
            if (eps.size() != eps_prime.size() || eps.size() < 1)
                throw std::invalid_argument("IntCharacteristic: eps and eps' must have equal positive length");
            check_genus(genus());
        }

        int genus() const noexcept { return static_cast<int>(eps.size()); }

        /// Lift with entries in {0, 1}.
        static IntCharacteristic canonical(const QuadForm &q)
        {
            IntVector e(q.g), ep(q.g);
            for (int i = 0; i < q.g; ++i)
            {
                e(i) = (q.eps >> i) & 1;
                ep(i) = (q.eps_prime >> i) & 1;
            }
            return {e, ep};
        }

        QuadForm reduce() const
        {
            Bits e = 0, ep = 0;
            for (int i = 0; i < genus(); ++i)
            {
                e |= static_cast<Bits>(mod2(eps(i))) << i;
                ep |= static_cast<Bits>(mod2(eps_prime(i))) << i;
            }
            return {genus(), e, ep};
        }

        bool operator==(const IntCharacteristic &o) const
        {
            return eps == o.eps && eps_prime == o.eps_prime;
        }
    };

    /// Sum of integer characteristics, entry-wise.
    inline IntCharacteristic operator+(const IntCharacteristic &x, const IntCharacteristic &y)
    {
        require_same_genus(x.genus(), y.genus());
        return {x.eps + y.eps, x.eps_prime + y.eps_prime};
    }

    /// The diagonal of m n^t as a column.
    inline IntVector diag_mult_transpose(const IntMatrix &m, const IntMatrix &n)
    {
        return m.cwiseProduct(n).rowwise().sum();
    }

    class SymplecticMapZ
    {
    public:
        /// Validates a^t c, b^t d symmetric and a^t d - c^t b = 1.
        SymplecticMapZ(IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d)
            : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
        {
            const auto g = a_.rows();
            if (g < 1 || a_.cols() != g || b_.rows() != g || b_.cols() != g || c_.rows() != g ||
                c_.cols() != g || d_.rows() != g || d_.cols() != g)
                throw std::invalid_argument("SymplecticMapZ: blocks must be square of equal size");
            check_genus(static_cast<int>(g));
            if (!blocks_symplectic(a_, b_, c_, d_))
                throw std::invalid_argument("SymplecticMapZ: blocks are not symplectic over Z");
        }

        static bool blocks_symplectic(const IntMatrix &a, const IntMatrix &b, const IntMatrix &c,
                                      const IntMatrix &d)
        {
            const IntMatrix ac = a.transpose() * c;
            const IntMatrix bd = b.transpose() * d;
            const IntMatrix id = IntMatrix::Identity(a.rows(), a.rows());
            return ac == ac.transpose() && bd == bd.transpose() &&
                   IntMatrix(a.transpose() * d - c.transpose() * b) == id;
        }

        static SymplecticMapZ identity(int g)
        {
            return {IntMatrix::Identity(g, g), IntMatrix::Zero(g, g), IntMatrix::Zero(g, g),
                    IntMatrix::Identity(g, g)};
        }

        /// x -> x + k * omega(x, v) v with omega(x, y) = lambda_x.mu_y - mu_x.lambda_y.
        static SymplecticMapZ transvection(const IntVector &lambda, const IntVector &mu, std::int64_t k = 1)
        {
            const auto g = lambda.size();
            IntVector v(2 * g);
            v << lambda, mu;
            // omega(x, v) = x^t J v with J = [[0, 1], [-1, 0]]
            IntVector jv(2 * g);
            jv << mu, -lambda;
            const IntMatrix full = IntMatrix::Identity(2 * g, 2 * g) + k * v * jv.transpose();
            return from_full(full);
        }

        static SymplecticMapZ from_full(const IntMatrix &m)
        {
            const auto g = m.rows() / 2;
            return {m.topLeftCorner(g, g), m.topRightCorner(g, g), m.bottomLeftCorner(g, g),
                    m.bottomRightCorner(g, g)};
        }

        IntMatrix full() const
        {
            const auto g = a_.rows();
            IntMatrix m(2 * g, 2 * g);
            m << a_, b_, c_, d_;
            return m;
        }

        int genus() const noexcept { return static_cast<int>(a_.rows()); }
        const IntMatrix &a() const noexcept { return a_; }
        const IntMatrix &b() const noexcept { return b_; }
        const IntMatrix &c() const noexcept { return c_; }
        const IntMatrix &d() const noexcept { return d_; }

        SymplecticMapZ compose(const SymplecticMapZ &other) const { return from_full(full() * other.full()); }

        SymplecticMapF2 reduce() const
        {
            const int g = genus();
            auto to_bits = [g](const IntMatrix &m) {
                BitMatrix out(g);
                for (int i = 0; i < g; ++i)
                    for (int j = 0; j < g; ++j)
                        out.set(i, j, static_cast<int>(mod2(m(i, j))));
                return out;
            };
            return {to_bits(a_), to_bits(b_), to_bits(c_), to_bits(d_)};
        }

        /// (a tau + b)(c tau + d)^{-1}
        Eigen::MatrixXcd act_on_tau(const Eigen::MatrixXcd &tau) const
        {
            const Eigen::MatrixXcd a = a_.cast<double>().cast<std::complex<double>>();
            const Eigen::MatrixXcd b = b_.cast<double>().cast<std::complex<double>>();
            const Eigen::MatrixXcd c = c_.cast<double>().cast<std::complex<double>>();
            const Eigen::MatrixXcd d = d_.cast<double>().cast<std::complex<double>>();
            const Eigen::MatrixXcd den = c * tau + d;
            // X den = num  <=>  den^t X^t = num^t
            const Eigen::MatrixXcd num = a * tau + b;
            Eigen::MatrixXcd out = den.transpose().partialPivLu().solve(num.transpose()).transpose();
            return (out + out.transpose()) / 2.0;
        }

        bool operator==(const SymplecticMapZ &o) const
        {
            return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
        }

    private:
        IntMatrix a_, b_, c_, d_;
    };

    /// sigma.[eps; eps'] = [[d, -c], [-b, a]] (eps; eps') + ((c d^t)_0; (a b^t)_0).
    inline IntCharacteristic act_z(const SymplecticMapZ &sigma, const IntCharacteristic &q)
    {
        require_same_genus(sigma.genus(), q.genus());
        const IntVector nu = sigma.d() * q.eps - sigma.c() * q.eps_prime + diag_mult_transpose(sigma.c(), sigma.d());
        const IntVector nu_p = -sigma.b() * q.eps + sigma.a() * q.eps_prime + diag_mult_transpose(sigma.a(), sigma.b());
        return {nu, nu_p};
    }

    /// An exact rational with denominator 8.
    struct Eighths
    {
        std::int64_t numerator{0};

        double value() const noexcept { return static_cast<double>(numerator) / 8.0; }
        friend bool operator==(const Eighths &, const Eighths &) = default;
    };

    /// phi_[q](sigma) = -1/8 (e^t b^t d e - 2 e^t b^t c e' + e'^t a^t c e' - 2 (a b^t)_0^t (d e - c e'))
    /// for e = eps, e' = eps' taken as columns.
    inline Eighths phi(const IntCharacteristic &q, const SymplecticMapZ &sigma)
    {
        require_same_genus(sigma.genus(), q.genus());
        const IntMatrix &a = sigma.a();
        const IntMatrix &b = sigma.b();
        const IntMatrix &c = sigma.c();
        const IntMatrix &d = sigma.d();
        const IntVector &e = q.eps;
        const IntVector &ep = q.eps_prime;
        const std::int64_t t1 = e.dot(b.transpose() * d * e);
        const std::int64_t t2 = e.dot(b.transpose() * c * ep);
        const std::int64_t t3 = ep.dot(a.transpose() * c * ep);
        const std::int64_t t4 = diag_mult_transpose(a, b).dot(d * e - c * ep);
        return {-(t1 - 2 * t2 + t3 - 2 * t4)};
    }

    /// Integer symplectic matrix reducing to sigma mod 2.
    ///
    /// sigma is written as a product of F2 transvections by carrying e_k and f_k
    /// back to themselves one pair at a time, each step using transvections
    /// along vectors orthogonal to the pairs already fixed. Every factor lifts
    /// to the integer transvection along the 0/1 lift of its vector.
    inline SymplecticMapZ lift_sp(const SymplecticMapF2 &sigma)
    {
        const int g = sigma.genus();
        if (g > 8)
            throw std::invalid_argument("lift_sp: genus > 8 not supported");

        std::vector<F2Vector> factors;
        SymplecticMapF2 m = sigma;
        auto push = [&](const F2Vector &v) {
            factors.push_back(v);
            m = SymplecticMapF2::transvection(v).compose(m);
        };
        auto find_z = [&](int k, auto &&accept) -> F2Vector {
            for (std::size_t idx = 1; idx < form_count(g); ++idx)
            {
                const F2Vector z = F2Vector::from_index(g, idx);
                bool orth = true;
                for (int j = 1; j < k && orth; ++j)
                    orth = pairing(z, F2Vector::e(g, j)) == 0 && pairing(z, F2Vector::f(g, j)) == 0;
                if (orth && accept(z))
                    return z;
            }
            throw std::logic_error("lift_sp: no intermediate vector found");
        };

        for (int k = 1; k <= g; ++k)
        {
            const F2Vector ek = F2Vector::e(g, k);
            const F2Vector fk = F2Vector::f(g, k);

            const F2Vector x = m.apply(ek);
            if (x != ek)
            {
                if (pairing(x, ek) == 1)
                    push(x + ek);
                else
                {
                    const F2Vector z = find_z(k, [&](const F2Vector &z) {
                        return pairing(x, z) == 1 && pairing(ek, z) == 1;
                    });
                    push(x + z);
                    push(z + ek);
                }
            }

            const F2Vector y = m.apply(fk);
            if (y != fk)
            {
                if (pairing(y, fk) == 1)
                    push(y + fk);
                else
                {
                    const F2Vector z = find_z(k, [&](const F2Vector &z) {
                        return pairing(z, ek) == 1 && pairing(y, z) == 1 && pairing(z, fk) == 1;
                    });
                    push(y + z);
                    push(z + fk);
                }
            }
        }
        if (!(m == SymplecticMapF2::identity(g)))
            throw std::logic_error("lift_sp: reduction to the identity failed");

        // t_m ... t_1 sigma = 1 and each t_i is an involution, so sigma = t_1 ... t_m.
        SymplecticMapZ lifted = SymplecticMapZ::identity(g);
        for (const F2Vector &v : factors)
        {
            IntVector lam(g), mu(g);
            for (int i = 0; i < g; ++i)
            {
                lam(i) = (v.lambda >> i) & 1;
                mu(i) = (v.mu >> i) & 1;
            }
            lifted = lifted.compose(SymplecticMapZ::transvection(lam, mu));
        }
        if (!(lifted.reduce() == sigma))
            throw std::logic_error("lift_sp: lift does not reduce to the input");
        return lifted;
    }

    /// Product of `steps` integer transvections along random vectors with entries in {-1, 0, 1}.
    template <class Rng>
    SymplecticMapZ random_symplectic_z(int g, Rng &rng, int steps = 5)
    {
        std::uniform_int_distribution<int> entry(-1, 1);
        std::uniform_int_distribution<int> sign(0, 1);
        SymplecticMapZ sigma = SymplecticMapZ::identity(g);
        for (int s = 0; s < steps; ++s)
        {
            IntVector lam(g), mu(g);
            for (int i = 0; i < g; ++i)
            {
                lam(i) = entry(rng);
                mu(i) = entry(rng);
            }
            sigma = SymplecticMapZ::transvection(lam, mu, sign(rng) ? 1 : -1).compose(sigma);
        }
        return sigma;
    }

} // namespace thetaweber
