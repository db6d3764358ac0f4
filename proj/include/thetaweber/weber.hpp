#pragma once

// Genus-3 verification of the Riemann-Jacobi identity, the reference sign
// iota(N_0) and Weber's bitangent formula for the quotient of two
// Thetanullwerte.

#include "fundamental.hpp"
#include "integer_symplectic.hpp"
#include "theta.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetaweber
{
    /// Raised when a numerical identity misses its tolerance.
    class VerificationError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Raised when tau is too close to the locus where an even Thetanullwert vanishes.
    class TauRejected : public std::runtime_error
    {
    public:
        TauRejected(const std::string &what, QuadForm q) : std::runtime_error(what), vanishing(q) {}
        QuadForm vanishing;
    };

    inline constexpr double kDefaultNullThreshold = 1e-6;
    inline constexpr double kDefaultTolerance = 1e-6;

    inline std::vector<QuadForm> forms_with_parity(int g, int a)
    {
        std::vector<QuadForm> out;
        for (std::size_t idx = 0; idx < form_count(g); ++idx)
        {
            QuadForm q = QuadForm::from_index(g, idx);
            if (arf(q) == a)
                out.push_back(q);
        }
        return out;
    }

    inline std::vector<QuadForm> even_forms(int g) { return forms_with_parity(g, 0); }
    inline std::vector<QuadForm> odd_forms(int g) { return forms_with_parity(g, 1); }

    struct TauValidation
    {
        bool ok{false};
        double min_abs_null{0.0};
        QuadForm weakest;
        std::string reason;
    };

    /// All 36 even Thetanullwerte must exceed `threshold` in absolute value.
    inline TauValidation validate_tau(const RiemannMatrix &tau, const ThetaEvalConfig &cfg = {},
                                      double threshold = kDefaultNullThreshold)
    {
        if (tau.genus() != 3)
            throw std::invalid_argument("validate_tau: genus 3 expected");
        TauValidation out;
        out.min_abs_null = INFINITY;
        for (const QuadForm &q : even_forms(3))
        {
            const double m = std::abs(theta_null(IntCharacteristic::canonical(q), tau, cfg));
            if (m < out.min_abs_null)
            {
                out.min_abs_null = m;
                out.weakest = q;
            }
        }
        out.ok = out.min_abs_null > threshold;
        if (!out.ok)
            out.reason = "even Thetanullwert of index " + std::to_string(out.weakest.index()) +
                         " has modulus " + std::to_string(out.min_abs_null) + " <= " + std::to_string(threshold);
        return out;
    }

    inline void require_valid_tau(const RiemannMatrix &tau, const ThetaEvalConfig &cfg = {},
                                  double threshold = kDefaultNullThreshold)
    {
        const TauValidation v = validate_tau(tau, cfg, threshold);
        if (!v.ok)
            throw TauRejected("tau rejected: " + v.reason, v.weakest);
    }

    /// Coefficient rows beta[q] = grad theta[q](0, tau) . omega1^{-1} for the 28 odd forms.
    class BitangentFrame
    {
    public:
        using Row = Eigen::RowVector3cd;

        BitangentFrame(const RiemannMatrix &tau, const Eigen::Matrix3cd &omega1, const ThetaEvalConfig &cfg = {})
            : tau_(tau), omega1_(omega1), beta_(form_count(3))
        {
            if (tau.genus() != 3)
                throw std::invalid_argument("BitangentFrame: genus 3 expected");
            Eigen::FullPivLU<Eigen::Matrix3cd> lu(omega1_);
            if (!lu.isInvertible())
                throw std::invalid_argument("BitangentFrame: omega1 is singular");
            const Eigen::Matrix3cd inv = lu.inverse();
            for (const QuadForm &q : odd_forms(3))
            {
                const Eigen::VectorXcd grad = theta_grad(IntCharacteristic::canonical(q), tau, cfg);
                if (grad.norm() < 1e-12)
                    throw std::domain_error("BitangentFrame: vanishing gradient for odd form " +
                                            std::to_string(q.index()));
                beta_[q.index()] = Row(grad.transpose()) * inv;
            }
        }

        const RiemannMatrix &tau() const noexcept { return tau_; }
        const Eigen::Matrix3cd &omega1() const noexcept { return omega1_; }

        const Row &beta(const QuadForm &q) const
        {
            if (q.g != 3 || !is_odd(q))
                throw std::invalid_argument("BitangentFrame: beta requested for a non-odd form");
            return *beta_[q.index()];
        }

        /// Copy with beta[q] multiplied by `factor`.
        BitangentFrame rescaled(const QuadForm &q, Complex factor) const
        {
            BitangentFrame out = *this;
            out.beta_.at(q.index()) = beta(q) * factor;
            return out;
        }

    private:
        RiemannMatrix tau_;
        Eigen::Matrix3cd omega1_;
        std::vector<std::optional<Row>> beta_;
    };

    inline BitangentFrame bitangent_frame(const RiemannMatrix &tau,
                                          const Eigen::Matrix3cd &omega1 = Eigen::Matrix3cd::Identity(),
                                          const ThetaEvalConfig &cfg = {})
    {
        require_valid_tau(tau, cfg);
        return BitangentFrame(tau, omega1, cfg);
    }

    /// [beta_a, beta_b, beta_c]: determinant with the coefficient rows stacked in order.
    /// Repeated forms give 0.
    inline Complex det3(const BitangentFrame &frame, const QuadForm &qa, const QuadForm &qb, const QuadForm &qc)
    {
        Eigen::Matrix3cd m;
        m.row(0) = frame.beta(qa);
        m.row(1) = frame.beta(qb);
        m.row(2) = frame.beta(qc);
        if (qa == qb || qa == qc || qb == qc)
            return 0.0;
        return m.determinant();
    }

    struct JacobiCheckResult
    {
        FundamentalSystem system;
        Complex s_value;
        int sign{0};
        double residual{0.0};
    };

    /// S([P], tau) = [p_1, p_2, p_3](tau) / prod_{i=4..8} theta[p_i](tau) with {0,1} lifts.
    inline Complex jacobi_quotient(const FundamentalSystem &system, const RiemannMatrix &tau,
                                   const ThetaEvalConfig &cfg = {})
    {
        if (system.genus() != 3 || tau.genus() != 3)
            throw std::invalid_argument("jacobi_quotient: genus 3 expected");
        const auto &p = system.forms();
        const std::array<IntCharacteristic, 3> odd{IntCharacteristic::canonical(p[0]),
                                                   IntCharacteristic::canonical(p[1]),
                                                   IntCharacteristic::canonical(p[2])};
        Complex den = 1.0;
        for (std::size_t i = 3; i < 8; ++i)
            den *= theta_null(IntCharacteristic::canonical(p[i]), tau, cfg);
        return jacobian_nullwert(odd, tau, cfg) / den;
    }

    inline JacobiCheckResult jacobi_check(const FundamentalSystem &system, const RiemannMatrix &tau,
                                          const ThetaEvalConfig &cfg = {}, double tolerance = kDefaultTolerance)
    {
        const Complex s = jacobi_quotient(system, tau, cfg);
        const int sign = s.real() >= 0.0 ? 1 : -1;
        JacobiCheckResult out{system, s, sign, std::abs(s - static_cast<double>(sign))};
        if (!(out.residual < tolerance))
            throw VerificationError("jacobi_check: |S - (" + std::to_string(sign) + ")| = " +
                                    std::to_string(out.residual) + " exceeds tolerance");
        return out;
    }

    struct IotaResult
    {
        Complex value;
        int sign{0};
        double residual{0.0};
    };

    /// iota = prod_{i=0..3} S([P_i], tau) / S([P'_i], tau).
    inline IotaResult iota(const WeberFamily &family, const RiemannMatrix &tau, const ThetaEvalConfig &cfg = {},
                           double tolerance = kDefaultTolerance)
    {
        Complex value = 1.0;
        for (std::size_t i = 0; i < 4; ++i)
            value *= jacobi_quotient(family.numerators[i], tau, cfg) /
                     jacobi_quotient(family.denominators[i], tau, cfg);
        const int sign = value.real() >= 0.0 ? 1 : -1;
        IotaResult out{value, sign, std::abs(value - static_cast<double>(sign))};
        if (!(out.residual < tolerance))
            throw VerificationError("iota: |iota - (" + std::to_string(sign) + ")| = " +
                                    std::to_string(out.residual) + " exceeds tolerance");
        return out;
    }

    /// (-1)^{a(q_0 + q_S + q_T)}
    inline int weber_sign(const QuadForm &q_s, const QuadForm &q_t)
    {
        require_same_genus(q_s.g, q_t.g);
        if (q_s == q_t)
            throw std::invalid_argument("weber_sign: q_S and q_T must differ");
        if (!is_even(q_s) || !is_even(q_t))
            throw std::invalid_argument("weber_sign: q_S and q_T must be even");
        return arf(sum3(QuadForm::zero(q_s.g), q_s, q_t)) ? -1 : 1;
    }

    /// (-1)^{8 phi_[n'_8](sigma) - 8 phi_[n_8](sigma)} for sigma an integer lift of
    /// the F2 map carrying N_0 onto p0. Predicts iota(p0) from iota(N_0) = 1.
    inline int transported_sign(const FundamentalSystem &p0)
    {
        const FundamentalSystem n0 = reference_system_n0();
        const WeberFamily n_family = weber_family(n0);
        const SymplecticMapZ sigma = lift_sp(find_sigma(n0, p0));
        const Eighths top = phi(IntCharacteristic::canonical(n_family.denominators[0].last()), sigma);
        const Eighths bottom = phi(IntCharacteristic::canonical(n0.last()), sigma);
        return mod2(top.numerator - bottom.numerator) ? -1 : 1;
    }

    /// All 288 genus-3 Aronhold sets, computed once.
    inline const std::vector<std::vector<QuadForm>> &aronhold_sets_g3()
    {
        static const std::vector<std::vector<QuadForm>> sets = enumerate_aronhold_sets(3);
        return sets;
    }

    /// Every Aronhold basis summing to q_S, ordered so that q_1 + q_2 + q_3 = q_T.
    inline std::vector<AronholdBasis> aronhold_bases_for(const QuadForm &q_s, const QuadForm &q_t)
    {
        if (q_s == q_t || !is_even(q_s) || !is_even(q_t) || q_s.g != 3 || q_t.g != 3)
            throw std::invalid_argument("aronhold_bases_for: need distinct even genus-3 forms");
        std::vector<AronholdBasis> out;
        for (const auto &set : aronhold_sets_g3())
            if (sum_forms(set) == q_s)
                out.push_back(order_for_target(set, q_t));
        if (out.empty())
            throw std::logic_error("aronhold_bases_for: no Aronhold set sums to q_S");
        return out;
    }

    struct WeberResult
    {
        QuadForm q_s;
        QuadForm q_t;
        Complex lhs;
        Complex rhs;
        int sign{0};
        double relative_error{0.0};
    };

    /// The eight bitangent determinants of the formula, numerator then denominator.
    struct WeberDeterminants
    {
        std::array<Complex, 4> numerator;
        std::array<Complex, 4> denominator;

        Complex quotient() const
        {
            Complex num = 1.0, den = 1.0;
            for (std::size_t i = 0; i < 4; ++i)
            {
                num *= numerator[i];
                den *= denominator[i];
            }
            return num / den;
        }
    };

    inline WeberDeterminants weber_determinants(const BitangentFrame &frame, const AronholdBasis &basis)
    {
        const QuadForm q1 = basis.q(1), q2 = basis.q(2), q3 = basis.q(3);
        const QuadForm q12 = aronhold_pair_form(basis, 1, 2);
        const QuadForm q13 = aronhold_pair_form(basis, 1, 3);
        const QuadForm q23 = aronhold_pair_form(basis, 2, 3);
        return {{det3(frame, q1, q2, q3), det3(frame, q1, q12, q13), det3(frame, q12, q2, q23),
                 det3(frame, q13, q23, q3)},
                {det3(frame, q23, q13, q12), det3(frame, q23, q3, q2), det3(frame, q3, q13, q1),
                 det3(frame, q2, q1, q12)}};
    }

    /// Compares (theta[q_S]/theta[q_T])^4 with the signed determinant quotient for
    /// the given basis (sum q_S, first three summing to q_T).
    inline WeberResult weber_verify_basis(const AronholdBasis &basis, const BitangentFrame &frame,
                                          const ThetaEvalConfig &cfg = {}, double tolerance = kDefaultTolerance)
    {
        const QuadForm q_s = basis.sum();
        const QuadForm q_t = sum3(basis.q(1), basis.q(2), basis.q(3));
        const int sign = weber_sign(q_s, q_t);
        const Complex ratio = theta_null(IntCharacteristic::canonical(q_s), frame.tau(), cfg) /
                              theta_null(IntCharacteristic::canonical(q_t), frame.tau(), cfg);
        const Complex lhs = std::pow(ratio, 4);
        const Complex rhs = static_cast<double>(sign) * weber_determinants(frame, basis).quotient();
        WeberResult out{q_s, q_t, lhs, rhs, sign, std::abs(lhs - rhs) / std::abs(lhs)};
        if (!(out.relative_error < tolerance))
            throw VerificationError("weber_verify: relative error " + std::to_string(out.relative_error) +
                                    " exceeds tolerance");
        return out;
    }

    inline WeberResult weber_verify(const QuadForm &q_s, const QuadForm &q_t, const BitangentFrame &frame,
                                    const ThetaEvalConfig &cfg = {}, double tolerance = kDefaultTolerance)
    {
        return weber_verify_basis(aronhold_bases_for(q_s, q_t).front(), frame, cfg, tolerance);
    }

    inline WeberResult weber_verify(const QuadForm &q_s, const QuadForm &q_t, const RiemannMatrix &tau,
                                    const ThetaEvalConfig &cfg = {}, double tolerance = kDefaultTolerance)
    {
        return weber_verify(q_s, q_t, bitangent_frame(tau, Eigen::Matrix3cd::Identity(), cfg), cfg, tolerance);
    }

} // namespace thetaweber
