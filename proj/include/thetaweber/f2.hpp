#pragma once

// Vectors of the symplectic space F2^{2g} and quadratic forms on it.
//
// A vector w = (lambda, mu) is stored as two packed bit-vectors of length g in
// the fixed symplectic basis (e_1..e_g, f_1..f_g); bit i holds coordinate i+1.
// A quadratic form q = [eps; eps'] is the theta characteristic mod 2 with
//
//   q(w) = eps.lambda + eps'.mu + lambda.mu,
//
// so eps_i = q(e_i), eps'_i = q(f_i) and the Arf invariant is eps.eps'.

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace thetaweber
{
    using Bits = std::uint32_t;

    inline constexpr int kMaxGenus = 16;

    inline int parity(Bits x) noexcept { return std::popcount(x) & 1; }

    inline Bits low_mask(int g) noexcept
    {
        return g >= 32 ? ~Bits{0} : ((Bits{1} << g) - 1);
    }

    inline void check_genus(int g)
    {
        if (g < 1 || g > kMaxGenus)
            throw std::invalid_argument("genus must lie in [1, " + std::to_string(kMaxGenus) +
                                        "], got " + std::to_string(g));
    }

    inline void require_same_genus(int g1, int g2)
    {
        if (g1 != g2)
            throw std::invalid_argument("genus mismatch: " + std::to_string(g1) + " vs " +
                                        std::to_string(g2));
    }

    struct F2Vector
    {
        int g{1};
        Bits lambda{0};
        Bits mu{0};

        F2Vector() = default;
        F2Vector(int genus, Bits lam, Bits m) : g(genus), lambda(lam), mu(m)
        {
            check_genus(g);
            if ((lambda | mu) & ~low_mask(g))
                throw std::invalid_argument("F2Vector: bits beyond genus");
        }

        static F2Vector zero(int g) { return {g, 0, 0}; }
        /// e_i, 1-based.
        static F2Vector e(int g, int i) { return {g, Bits{1} << (i - 1), 0}; }
        /// f_i, 1-based.
        static F2Vector f(int g, int i) { return {g, 0, Bits{1} << (i - 1)}; }

        /// Dense index lambda | mu << g, in [0, 4^g).
        std::size_t index() const noexcept { return lambda | (std::size_t{mu} << g); }
        static F2Vector from_index(int g, std::size_t idx)
        {
            return {g, static_cast<Bits>(idx & low_mask(g)), static_cast<Bits>(idx >> g)};
        }

        bool is_zero() const noexcept { return lambda == 0 && mu == 0; }

        friend bool operator==(const F2Vector &, const F2Vector &) = default;
        friend auto operator<=>(const F2Vector &, const F2Vector &) = default;
    };

    inline F2Vector operator+(const F2Vector &u, const F2Vector &v)
    {
        require_same_genus(u.g, v.g);
        return {u.g, u.lambda ^ v.lambda, u.mu ^ v.mu};
    }

    /// Symplectic pairing <u,v> = lambda_u.mu_v + mu_u.lambda_v.
    inline int pairing(const F2Vector &u, const F2Vector &v)
    {
        require_same_genus(u.g, v.g);
        return parity((u.lambda & v.mu) ^ (u.mu & v.lambda));
    }

    struct QuadForm
    {
        int g{1};
        Bits eps{0};
        Bits eps_prime{0};

        QuadForm() = default;
        QuadForm(int genus, Bits e, Bits ep) : g(genus), eps(e), eps_prime(ep)
        {
            check_genus(g);
            if ((eps | eps_prime) & ~low_mask(g))
                throw std::invalid_argument("QuadForm: bits beyond genus");
        }

        /// q_0(w) = lambda.mu
        static QuadForm zero(int g) { return {g, 0, 0}; }

        /// Dense index eps | eps' << g, in [0, 4^g). At g=3 this numbers the 64 forms.
        std::size_t index() const noexcept { return eps | (std::size_t{eps_prime} << g); }
        static QuadForm from_index(int g, std::size_t idx)
        {
            return {g, static_cast<Bits>(idx & low_mask(g)), static_cast<Bits>(idx >> g)};
        }

        friend bool operator==(const QuadForm &, const QuadForm &) = default;
        friend auto operator<=>(const QuadForm &, const QuadForm &) = default;
    };

    inline std::size_t form_count(int g) { return std::size_t{1} << (2 * g); }

    inline int evaluate_form(const QuadForm &q, const F2Vector &w)
    {
        require_same_genus(q.g, w.g);
        return parity((q.eps & w.lambda) ^ (q.eps_prime & w.mu) ^ (w.lambda & w.mu));
    }

    inline int arf(const QuadForm &q) noexcept { return parity(q.eps & q.eps_prime); }
    inline bool is_even(const QuadForm &q) noexcept { return arf(q) == 0; }
    inline bool is_odd(const QuadForm &q) noexcept { return arf(q) == 1; }

    /// q + v, i.e. u -> q(u) + <v,u>. In coordinates [eps + mu; eps' + lambda].
    inline QuadForm add_vector(const QuadForm &q, const F2Vector &v)
    {
        require_same_genus(q.g, v.g);
        return {q.g, q.eps ^ v.mu, q.eps_prime ^ v.lambda};
    }

    /// The unique v with q + v = q2.
    inline F2Vector diff_forms(const QuadForm &q, const QuadForm &q2)
    {
        require_same_genus(q.g, q2.g);
        return {q.g, q.eps_prime ^ q2.eps_prime, q.eps ^ q2.eps};
    }

    inline QuadForm sum3(const QuadForm &q1, const QuadForm &q2, const QuadForm &q3)
    {
        require_same_genus(q1.g, q2.g);
        require_same_genus(q1.g, q3.g);
        return {q1.g, q1.eps ^ q2.eps ^ q3.eps, q1.eps_prime ^ q2.eps_prime ^ q3.eps_prime};
    }

    /// a(q + q' + q''), computed from the invariants of the summands and one pairing.
    inline int arf_sum3(const QuadForm &q, const QuadForm &q1, const QuadForm &q2)
    {
        return arf(q) ^ arf(q1) ^ arf(q2) ^ pairing(diff_forms(q, q1), diff_forms(q, q2));
    }

    /// q evaluated at the vector q' + q''.
    inline int eval_at_formsum(const QuadForm &q, const QuadForm &q1, const QuadForm &q2)
    {
        return arf(sum3(q, q1, q2)) ^ arf(q);
    }

    /// Sum of an odd number of forms, XOR of the packed bits.
    template <class Range>
    QuadForm sum_forms(const Range &forms)
    {
        auto it = std::begin(forms);
        if (it == std::end(forms))
            throw std::invalid_argument("sum_forms: empty range");
        QuadForm acc = *it;
        std::size_t n = 1;
        for (++it; it != std::end(forms); ++it, ++n)
        {
            require_same_genus(acc.g, it->g);
            acc.eps ^= it->eps;
            acc.eps_prime ^= it->eps_prime;
        }
        if (n % 2 == 0)
            throw std::invalid_argument("sum_forms: an even number of forms sums to a vector");
        return acc;
    }

} // namespace thetaweber
