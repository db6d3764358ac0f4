#include <thetaweber/io.hpp>
#include <thetaweber/sampling.hpp>
#include <thetaweber/weber.hpp>

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace thetaweber;

namespace
{
    const RiemannMatrix &tau_a()
    {
        static const RiemannMatrix t = load_tau(THETAWEBER_DATA_DIR "/sample_tau.json");
        return t;
    }

    const RiemannMatrix &tau_b()
    {
        static const RiemannMatrix t = load_tau(THETAWEBER_DATA_DIR "/sample_tau_2.json");
        return t;
    }

    const BitangentFrame &frame_a()
    {
        static const BitangentFrame f = bitangent_frame(tau_a());
        return f;
    }

    const BitangentFrame &frame_b()
    {
        static const BitangentFrame f = bitangent_frame(tau_b());
        return f;
    }

    /// tau_a moved along E (all off-diagonal entries 1) to within a factor 1e-8 of a
    /// zero of its weakest even Thetanullwert, located by Newton's method.
    RiemannMatrix near_vanishing_tau()
    {
        const RiemannMatrix &t0 = tau_a();
        const auto q = IntCharacteristic::canonical(validate_tau(t0).weakest);
        Eigen::MatrixXcd e(3, 3);
        e << 0, 1, 1, 1, 0, 1, 1, 1, 0;
        auto f = [&](Complex t) { return theta_null(q, RiemannMatrix(t0.tau() + t * e)); };
        Complex t = 0.0;
        for (int it = 0; it < 50; ++it)
        {
            const Complex h = 1e-6;
            const Complex step = f(t) / ((f(t + h) - f(t - h)) / (2.0 * h));
            t -= step;
            if (std::abs(step) < 1e-15)
                break;
        }
        EXPECT_LT(std::abs(f(t)), 1e-12);
        return RiemannMatrix(t0.tau() + t * (1.0 - 1e-8) * e);
    }

    std::vector<std::pair<QuadForm, QuadForm>> random_pairs(std::size_t count, std::uint64_t seed)
    {
        std::mt19937_64 rng(seed);
        const auto even = even_forms(3);
        std::uniform_int_distribution<std::size_t> pick(0, even.size() - 1);
        std::vector<std::pair<QuadForm, QuadForm>> out;
        while (out.size() < count)
        {
            const QuadForm a = even[pick(rng)], b = even[pick(rng)];
            if (a == b || std::find(out.begin(), out.end(), std::make_pair(a, b)) != out.end())
                continue;
            out.emplace_back(a, b);
        }
        return out;
    }
}

TEST(ValidateTau, SampleFilesPass)
{
    EXPECT_TRUE(validate_tau(tau_a()).ok);
    EXPECT_TRUE(validate_tau(tau_b()).ok);
    EXPECT_NO_THROW(require_valid_tau(tau_a()));
}

TEST(ValidateTau, DiagonalTauRejected)
{
    const RiemannMatrix diag(Eigen::MatrixXcd::Identity(3, 3) * Complex(0.0, 1.0));
    const TauValidation v = validate_tau(diag);
    EXPECT_FALSE(v.ok);
    EXPECT_LT(v.min_abs_null, 1e-12);
    // The vanishing null has an odd genus-1 factor [1; 1].
    EXPECT_NE(v.weakest.eps & v.weakest.eps_prime, 0u);
    try
    {
        require_valid_tau(diag);
        FAIL() << "expected TauRejected";
    }
    catch (const TauRejected &e)
    {
        EXPECT_EQ(e.vanishing, v.weakest);
    }
}

TEST(ValidateTau, NearVanishingLocusRejected)
{
    const RiemannMatrix near = near_vanishing_tau();
    const TauValidation v = validate_tau(near);
    EXPECT_FALSE(v.ok);
    EXPECT_EQ(v.weakest, validate_tau(tau_a()).weakest);
    EXPECT_THROW(bitangent_frame(near), TauRejected);
    // Only one even null is small there, so this is not a decomposable point.
    int small = 0;
    for (const QuadForm &q : even_forms(3))
        small += std::abs(theta_null(IntCharacteristic::canonical(q), near)) < 1e-6;
    EXPECT_EQ(small, 1);
}

TEST(ValidateTau, RandomTauUsuallyPasses)
{
    std::mt19937_64 rng(30);
    int ok = 0;
    for (int trial = 0; trial < 10; ++trial)
        ok += validate_tau(random_riemann_matrix(3, rng)).ok;
    EXPECT_GE(ok, 9);
    const RiemannMatrix g2(Eigen::MatrixXcd::Identity(2, 2) * Complex(0.0, 1.0));
    EXPECT_THROW(validate_tau(g2), std::invalid_argument);
}

TEST(Frame, IdentityOmegaGivesGradientRows)
{
    for (const QuadForm &q : odd_forms(3))
    {
        const Eigen::VectorXcd grad = theta_grad(IntCharacteristic::canonical(q), tau_a());
        const auto &beta = frame_a().beta(q);
        for (int i = 0; i < 3; ++i)
            EXPECT_EQ(beta(i), grad(i));
        EXPECT_GT(beta.norm(), 1e-3);
    }
    EXPECT_THROW(frame_a().beta(QuadForm::zero(3)), std::invalid_argument);
    EXPECT_THROW(BitangentFrame(tau_a(), Eigen::Matrix3cd::Zero()), std::invalid_argument);
}

TEST(Det3, RepeatsSwapsAndJacobian)
{
    const auto odd = odd_forms(3);
    const QuadForm a = odd[0], b = odd[5], c = odd[11];
    const Complex v = det3(frame_a(), a, b, c);
    EXPECT_EQ(det3(frame_a(), a, a, c), Complex(0.0));
    EXPECT_LT(std::abs(det3(frame_a(), b, a, c) + v), 1e-14 * std::abs(v));
    EXPECT_LT(std::abs(det3(frame_a(), a, c, b) + v), 1e-14 * std::abs(v));
    const std::array<IntCharacteristic, 3> chars{IntCharacteristic::canonical(a), IntCharacteristic::canonical(b),
                                                 IntCharacteristic::canonical(c)};
    const Complex jn = std::pow(std::numbers::pi, 3) * jacobian_nullwert(chars, tau_a());
    EXPECT_LT(std::abs(v - jn), 1e-12 * std::abs(v));
}

TEST(Jacobi, N0AtBothTau)
{
    const auto n0 = reference_system_n0();
    const auto ra = jacobi_check(n0, tau_a());
    const auto rb = jacobi_check(n0, tau_b());
    EXPECT_LT(ra.residual, 1e-6);
    EXPECT_LT(rb.residual, 1e-6);
    EXPECT_EQ(ra.sign, rb.sign);
    EXPECT_TRUE(ra.sign == 1 || ra.sign == -1);
}

TEST(Jacobi, SwappingOddSlotsFlipsSign)
{
    auto forms = reference_system_n0().forms();
    std::swap(forms[0], forms[1]);
    const FundamentalSystem swapped(forms);
    const Complex s0 = jacobi_quotient(reference_system_n0(), tau_a());
    const Complex s1 = jacobi_quotient(swapped, tau_a());
    EXPECT_LT(std::abs(s0 + s1), 1e-12);
}

TEST(Jacobi, RandomSystemsSignIndependentOfTau)
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial)
    {
        const FundamentalSystem p = random_fundamental_system(rng);
        const auto ra = jacobi_check(p, tau_a());
        const auto rb = jacobi_check(p, tau_b());
        ASSERT_EQ(ra.sign, rb.sign);
    }
}

TEST(Jacobi, ToleranceFailureThrows)
{
    EXPECT_THROW(jacobi_check(reference_system_n0(), tau_a(), {}, 1e-30), VerificationError);
}

TEST(Iota, N0IsPlusOneAtBothTau)
{
    const WeberFamily fam = weber_family(reference_system_n0());
    const IotaResult a = iota(fam, tau_a());
    const IotaResult b = iota(fam, tau_b());
    EXPECT_EQ(a.sign, 1);
    EXPECT_EQ(b.sign, 1);
    EXPECT_LT(a.residual, 1e-6);
    EXPECT_LT(b.residual, 1e-6);
}

TEST(Iota, MatchesParityFormulaAndTransport)
{
    std::mt19937_64 rng(32);
    const auto &sets = aronhold_sets_g3();
    const auto even = even_forms(3);
    std::uniform_int_distribution<std::size_t> pick_set(0, sets.size() - 1), pick_even(0, even.size() - 1);
    int checked = 0;
    while (checked < 10)
    {
        const auto &set = sets[pick_set(rng)];
        const QuadForm qs = sum_forms(set), qt = even[pick_even(rng)];
        if (qs == qt)
            continue;
        const FundamentalSystem p0 = aronhold_to_fundamental(order_for_target(set, qt));
        const IotaResult r = iota(weber_family(p0), tau_a());
        EXPECT_EQ(r.sign, weber_sign(qs, qt));
        EXPECT_EQ(transported_sign(p0), weber_sign(qs, qt));
        EXPECT_EQ(iota(weber_family(p0), tau_b()).sign, r.sign);
        ++checked;
    }
    EXPECT_EQ(transported_sign(reference_system_n0()), 1);
}

TEST(WeberSign, DefinitionAndSymmetry)
{
    const QuadForm q0 = QuadForm::zero(3);
    const QuadForm qs(3, 0b001, 0b000), qt(3, 0b000, 0b001);
    // q0 + qs + qt = [1 0 0; 1 0 0], odd
    EXPECT_EQ(weber_sign(qs, qt), -1);
    EXPECT_EQ(weber_sign(q0, qs), 1);
    for (const auto &a : even_forms(3))
    {
        for (const auto &b : even_forms(3))
        {
            if (a != b)
            {
                ASSERT_EQ(weber_sign(a, b), weber_sign(b, a));
            }
        }
    }
    EXPECT_THROW(weber_sign(qs, qs), std::invalid_argument);
    EXPECT_THROW(weber_sign(qs, QuadForm(3, 1, 1)), std::invalid_argument);
}

TEST(Weber, RandomPairsAtTwoTau)
{
    for (const auto *frame : {&frame_a(), &frame_b()})
        for (const auto &[qs, qt] : random_pairs(10, 33))
        {
            const WeberResult r = weber_verify(qs, qt, *frame);
            EXPECT_LT(r.relative_error, 1e-6);
            EXPECT_EQ(r.sign, weber_sign(qs, qt));
            EXPECT_NEAR(r.relative_error, std::abs(r.lhs - r.rhs) / std::abs(r.lhs), 1e-18);
        }
}

TEST(Weber, SwapInvertsBothSides)
{
    for (const auto &[qs, qt] : random_pairs(5, 34))
    {
        const WeberResult st = weber_verify(qs, qt, frame_a());
        const WeberResult ts = weber_verify(qt, qs, frame_a());
        EXPECT_LT(std::abs(st.lhs * ts.lhs - 1.0), 1e-10);
        EXPECT_LT(std::abs(st.rhs * ts.rhs - 1.0), 1e-6);
    }
}

TEST(Weber, InvariantUnderOmegaChange)
{
    std::mt19937_64 rng(35);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Eigen::Matrix3cd omega;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            omega(i, j) = Complex(u(rng), u(rng));
    const BitangentFrame changed(tau_a(), omega);
    for (const auto &[qs, qt] : random_pairs(5, 36))
    {
        const AronholdBasis basis = aronhold_bases_for(qs, qt).front();
        const Complex base = weber_determinants(frame_a(), basis).quotient();
        const Complex moved = weber_determinants(changed, basis).quotient();
        EXPECT_LT(std::abs(base - moved), 1e-8 * std::abs(base));
    }
}

TEST(Weber, InvariantUnderBitangentRescaling)
{
    const auto [qs, qt] = random_pairs(1, 37).front();
    const AronholdBasis basis = aronhold_bases_for(qs, qt).front();
    const Complex base = weber_determinants(frame_a(), basis).quotient();
    for (const QuadForm &q : odd_forms(3))
    {
        const BitangentFrame scaled = frame_a().rescaled(q, Complex(2.5, -1.25));
        const Complex moved = weber_determinants(scaled, basis).quotient();
        ASSERT_LT(std::abs(base - moved), 1e-8 * std::abs(base));
    }
}

TEST(Weber, InvariantUnderBasisChange)
{
    for (const auto &[qs, qt] : random_pairs(5, 38))
    {
        const auto bases = aronhold_bases_for(qs, qt);
        ASSERT_EQ(bases.size(), 8u);
        const Complex first = weber_determinants(frame_a(), bases.front()).quotient();
        for (const auto &b : bases)
            ASSERT_LT(std::abs(weber_determinants(frame_a(), b).quotient() - first), 1e-8 * std::abs(first));
    }
}

TEST(Weber, AllPairsAtSampleTau)
{
    double worst = 0.0;
    for (const auto &qs : even_forms(3))
        for (const auto &qt : even_forms(3))
            if (qs != qt)
                worst = std::max(worst, weber_verify(qs, qt, frame_a()).relative_error);
    EXPECT_LT(worst, 1e-6);
}

TEST(Weber, BadInputs)
{
    const QuadForm q0 = QuadForm::zero(3);
    EXPECT_THROW(aronhold_bases_for(q0, q0), std::invalid_argument);
    EXPECT_THROW(aronhold_bases_for(q0, QuadForm(3, 1, 1)), std::invalid_argument);
}
