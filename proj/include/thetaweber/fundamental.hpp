#pragma once

// Azygetic families, Aronhold bases and fundamental systems, plus the
// constructions that move between them.

#include "f2.hpp"
#include "symplectic_f2.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetaweber
{
    /// True iff <q_1 + q_i, q_1 + q_j> = 1 for all 2 <= i < j.
    inline bool is_azygetic(std::span<const QuadForm> forms)
    {
        if (forms.size() < 3)
            throw std::invalid_argument("is_azygetic: need at least 3 forms");
        std::vector<F2Vector> diffs;
        diffs.reserve(forms.size() - 1);
        for (std::size_t k = 1; k < forms.size(); ++k)
            diffs.push_back(diff_forms(forms[0], forms[k]));
        for (std::size_t i = 0; i < diffs.size(); ++i)
            for (std::size_t j = i + 1; j < diffs.size(); ++j)
                if (pairing(diffs[i], diffs[j]) != 1)
                    return false;
        return true;
    }

    /// Offset added to (#q - 1)/2 in the Aronhold parity rule.
    inline int aronhold_offset(int g) { return (g % 4 == 2 || g % 4 == 3) ? 1 : 0; }

    /// Checks every odd-weight 0/1 combination of the 2g+1 forms: the Arf rule
    /// holds and the 4^g sums are pairwise distinct (so they exhaust QV).
    inline bool is_aronhold(std::span<const QuadForm> forms)
    {
        if (forms.empty())
            throw std::invalid_argument("is_aronhold: empty set");
        const int g = forms[0].g;
        if (forms.size() != static_cast<std::size_t>(2 * g + 1))
            throw std::invalid_argument("is_aronhold: expected 2g+1 = " + std::to_string(2 * g + 1) +
                                        " forms, got " + std::to_string(forms.size()));
        for (const auto &q : forms)
            require_same_genus(g, q.g);

        const int offset = aronhold_offset(g);
        const std::uint32_t n = static_cast<std::uint32_t>(forms.size());
        std::vector<bool> seen(form_count(g), false);
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask)
        {
            const int weight = std::popcount(mask);
            if (weight % 2 == 0)
                continue;
            Bits e = 0, ep = 0;
            for (std::uint32_t i = 0; i < n; ++i)
                if ((mask >> i) & 1)
                {
                    e ^= forms[i].eps;
                    ep ^= forms[i].eps_prime;
                }
            const QuadForm q(g, e, ep);
            if (seen[q.index()])
                return false;
            seen[q.index()] = true;
            if (arf(q) != ((weight - 1) / 2 + offset) % 2)
                return false;
        }
        return true;
    }

    inline bool is_fundamental(std::span<const QuadForm> forms)
    {
        if (forms.empty())
            return false;
        const int g = forms[0].g;
        if (forms.size() != static_cast<std::size_t>(2 * g + 2))
            return false;
        for (std::size_t i = 0; i < forms.size(); ++i)
        {
            if (forms[i].g != g)
                return false;
            if (arf(forms[i]) != (i < static_cast<std::size_t>(g) ? 1 : 0))
                return false;
        }
        return is_azygetic(forms);
    }

    /// Ordered Aronhold set (q_1, ..., q_{2g+1}).
    class AronholdBasis
    {
    public:
        explicit AronholdBasis(std::vector<QuadForm> forms) : forms_(std::move(forms))
        {
            if (!is_aronhold(forms_))
                throw std::invalid_argument("AronholdBasis: forms do not form an Aronhold set");
        }

        int genus() const noexcept { return forms_.front().g; }
        const std::vector<QuadForm> &forms() const & noexcept { return forms_; }
        std::vector<QuadForm> forms() && { return std::move(forms_); }
        /// 1-based access, matching q_1..q_{2g+1}.
        const QuadForm &q(int i) const { return forms_.at(static_cast<std::size_t>(i - 1)); }
        /// q_S, the sum of all members.
        QuadForm sum() const { return sum_forms(forms_); }

        friend bool operator==(const AronholdBasis &, const AronholdBasis &) = default;

    private:
        std::vector<QuadForm> forms_;
    };

    /// (p_1, ..., p_{2g+2}): first g odd, remaining g+2 even, azygetic.
    class FundamentalSystem
    {
    public:
        explicit FundamentalSystem(std::vector<QuadForm> forms) : forms_(std::move(forms))
        {
            if (!is_fundamental(forms_))
                throw std::invalid_argument("FundamentalSystem: forms are not a fundamental system");
        }

        int genus() const noexcept { return forms_.front().g; }
        std::size_t size() const noexcept { return forms_.size(); }
        const std::vector<QuadForm> &forms() const & noexcept { return forms_; }
        std::vector<QuadForm> forms() && { return std::move(forms_); }
        const QuadForm &p(int i) const { return forms_.at(static_cast<std::size_t>(i - 1)); }
        const QuadForm &last() const { return forms_.back(); }

        friend bool operator==(const FundamentalSystem &, const FundamentalSystem &) = default;

    private:
        std::vector<QuadForm> forms_;
    };

    /// (q_1..q_g, q_{g+1}+v, ..., q_{2g+1}+v, q_S) with v = q_{g+1} + ... + q_{2g+1}.
    inline FundamentalSystem aronhold_to_fundamental(const AronholdBasis &s)
    {
        const int g = s.genus();
        if (g % 4 != 3)
            throw std::invalid_argument("aronhold_to_fundamental: requires g = 3 mod 4");
        const auto &q = s.forms();
        // v is a sum of g+1 (even count) forms, hence a vector.
        F2Vector v = diff_forms(q[g], q[g + 1]);
        for (int i = g + 2; i + 1 <= 2 * g; i += 2)
            v = v + diff_forms(q[i], q[i + 1]);

        std::vector<QuadForm> out;
        out.reserve(2 * g + 2);
        for (int i = 0; i < g; ++i)
            out.push_back(q[i]);
        for (int i = g; i <= 2 * g; ++i)
            out.push_back(add_vector(q[i], v));
        out.push_back(s.sum());
        return FundamentalSystem(std::move(out));
    }

    /// v_i + P: add v_i = p_i + p_{2g+2} to every member, then swap slots i and 2g+2.
    inline FundamentalSystem shift_system(const FundamentalSystem &system, int i)
    {
        const int g = system.genus();
        if (i < 1 || i > g)
            throw std::out_of_range("shift_system: index must lie in [1, g]");
        const F2Vector v = diff_forms(system.p(i), system.last());
        std::vector<QuadForm> out;
        out.reserve(system.size());
        for (const auto &p : system.forms())
            out.push_back(add_vector(p, v));
        std::swap(out[static_cast<std::size_t>(i - 1)], out.back());
        return FundamentalSystem(std::move(out));
    }

    /// q_ij = q_S + q_i + q_j.
    inline QuadForm aronhold_pair_form(const AronholdBasis &s, int i, int j)
    {
        return sum3(s.sum(), s.q(i), s.q(j));
    }

    /// Genus 3: (q_1..q_7) with q_1+q_2+q_3 = q_T  ->  (q_23, q_13, q_12, q_4, ..., q_7),
    /// an Aronhold basis summing to q_T whose first three members sum to q_S.
    inline AronholdBasis aronhold_conjugate(const AronholdBasis &s)
    {
        if (s.genus() != 3)
            throw std::invalid_argument("aronhold_conjugate: genus 3 only");
        const QuadForm q_t = sum3(s.q(1), s.q(2), s.q(3));
        if (!is_even(q_t) || q_t == s.sum())
            throw std::invalid_argument("aronhold_conjugate: q1+q2+q3 must be even and differ from q_S");
        return AronholdBasis({aronhold_pair_form(s, 2, 3), aronhold_pair_form(s, 1, 3),
                              aronhold_pair_form(s, 1, 2), s.q(4), s.q(5), s.q(6), s.q(7)});
    }

    /// The eight systems P_0..P_3 (numerators) and P'_0..P'_3 (denominators).
    struct WeberFamily
    {
        std::array<FundamentalSystem, 4> numerators;
        std::array<FundamentalSystem, 4> denominators;
    };

    /// Builds the family from P_0 alone: P'_0 = (p_23, p_13, p_12, p_4..p_7, p_1+p_2+p_3)
    /// with p_ij = p_8 + p_i + p_j, and P_i = v_i + P_0, P'_i = v_i + P'_0.
    inline WeberFamily weber_family(const FundamentalSystem &p0)
    {
        if (p0.genus() != 3)
            throw std::invalid_argument("weber_family: genus 3 only");
        const auto &p = p0.forms();
        FundamentalSystem p0_conj({sum3(p[7], p[1], p[2]), sum3(p[7], p[0], p[2]), sum3(p[7], p[0], p[1]),
                                   p[3], p[4], p[5], p[6], sum3(p[0], p[1], p[2])});
        return WeberFamily{
            {p0, shift_system(p0, 1), shift_system(p0, 2), shift_system(p0, 3)},
            {p0_conj, shift_system(p0_conj, 1), shift_system(p0_conj, 2), shift_system(p0_conj, 3)}};
    }

    /// Genus 3, S ordered with q_1+q_2+q_3 = q_T.
    inline WeberFamily weber_systems(const AronholdBasis &s)
    {
        if (s.genus() != 3)
            throw std::invalid_argument("weber_systems: genus 3 only");
        const QuadForm q_t = sum3(s.q(1), s.q(2), s.q(3));
        if (q_t == s.sum())
            throw std::invalid_argument("weber_systems: q1+q2+q3 must differ from q_S");
        return weber_family(aronhold_to_fundamental(s));
    }

    namespace detail
    {
        /// Inverse of a square matrix over F2 given as rows of n <= 32 bits.
        inline std::vector<std::uint32_t> invert_f2(std::vector<std::uint32_t> rows)
        {
            const std::size_t n = rows.size();
            std::vector<std::uint32_t> inv(n);
            for (std::size_t i = 0; i < n; ++i)
                inv[i] = std::uint32_t{1} << i;
            for (std::size_t col = 0; col < n; ++col)
            {
                std::size_t pivot = col;
                while (pivot < n && !((rows[pivot] >> col) & 1))
                    ++pivot;
                if (pivot == n)
                    throw std::domain_error("invert_f2: singular matrix");
                std::swap(rows[pivot], rows[col]);
                std::swap(inv[pivot], inv[col]);
                for (std::size_t r = 0; r < n; ++r)
                    if (r != col && ((rows[r] >> col) & 1))
                    {
                        rows[r] ^= rows[col];
                        inv[r] ^= inv[col];
                    }
            }
            return inv;
        }
    } // namespace detail

    /// sigma in Sp_{2g}(F2) with sigma.n_i = p_i for every slot.
    ///
    /// The vectors x_i = n_i + n_{2g+2} (i <= 2g) form an azygetic basis, as do
    /// y_i = p_i + p_{2g+2}; both Gram matrices are J - I, so the linear map
    /// x_i -> y_i is symplectic. It sends n_{2g+2} to p_{2g+2} because
    /// n_{2g+2}(x_i) = a(n_i) + a(n_{2g+2}) = a(p_i) + a(p_{2g+2}) = p_{2g+2}(y_i).
    inline SymplecticMapF2 find_sigma(const FundamentalSystem &from, const FundamentalSystem &to)
    {
        const int g = from.genus();
        require_same_genus(g, to.genus());
        const int n = 2 * g;

        std::vector<F2Vector> xs, ys;
        for (int i = 1; i <= n; ++i)
        {
            xs.push_back(diff_forms(from.p(i), from.last()));
            ys.push_back(diff_forms(to.p(i), to.last()));
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (pairing(xs[i], xs[j]) != pairing(ys[i], ys[j]))
                    throw std::logic_error("find_sigma: Gram matrices differ");

        // Row r of X holds coordinate r of every x_i.
        std::vector<std::uint32_t> x_rows(static_cast<std::size_t>(n), 0);
        for (int i = 0; i < n; ++i)
        {
            const std::size_t word = xs[i].index();
            for (int r = 0; r < n; ++r)
                x_rows[r] |= static_cast<std::uint32_t>((word >> r) & 1) << i;
        }
        const auto x_inv = detail::invert_f2(x_rows);

        // unit_r = sum_i (X^{-1})_{i r} x_i, so sigma(unit_r) = sum_i (X^{-1})_{i r} y_i.
        std::vector<F2Vector> columns;
        for (int r = 0; r < n; ++r)
        {
            F2Vector image = F2Vector::zero(g);
            for (int i = 0; i < n; ++i)
                if ((x_inv[i] >> r) & 1)
                    image = image + ys[i];
            columns.push_back(image);
        }
        SymplecticMapF2 sigma = SymplecticMapF2::from_columns(g, columns);

        for (std::size_t i = 0; i < from.size(); ++i)
            if (sigma.apply(from.forms()[i]) != to.forms()[i])
                throw std::logic_error("find_sigma: constructed map does not carry the system");
        return sigma;
    }

    /// The fundamental system N_0 used as the sign reference in genus 3.
    inline FundamentalSystem reference_system_n0()
    {
        // [eps; eps'] with bit i = coordinate i+1.
        return FundamentalSystem({QuadForm(3, 0b001, 0b001), QuadForm(3, 0b010, 0b011),
                                  QuadForm(3, 0b100, 0b111), QuadForm(3, 0b001, 0b000),
                                  QuadForm(3, 0b010, 0b001), QuadForm(3, 0b100, 0b011),
                                  QuadForm(3, 0b000, 0b111), QuadForm(3, 0b000, 0b000)});
    }

    /// All Aronhold sets for g <= 3, each sorted by form index, list sorted.
    ///
    /// Depth-first over candidate members with the single-form parity fixed by
    /// the Arf rule; every new member must give each triple the parity required
    /// for weight 3. Complete sets are confirmed with is_aronhold.
    inline std::vector<std::vector<QuadForm>> enumerate_aronhold_sets(int g)
    {
        check_genus(g);
        if (g > 3)
            throw std::invalid_argument("enumerate_aronhold_sets: genus > 3 is out of reach");
        const int offset = aronhold_offset(g);
        const int single_parity = offset % 2;
        const int triple_parity = (1 + offset) % 2;
        const std::size_t size = static_cast<std::size_t>(2 * g + 1);

        std::vector<QuadForm> candidates;
        for (std::size_t idx = 0; idx < form_count(g); ++idx)
        {
            QuadForm q = QuadForm::from_index(g, idx);
            if (arf(q) == single_parity)
                candidates.push_back(q);
        }

        std::vector<std::vector<QuadForm>> found;
        std::vector<QuadForm> current;
        auto recurse = [&](auto &&self, std::size_t start) -> void {
            if (current.size() == size)
            {
                if (is_aronhold(current))
                    found.push_back(current);
                return;
            }
            for (std::size_t k = start; k < candidates.size(); ++k)
            {
                if (candidates.size() - k < size - current.size())
                    break;
                const QuadForm &x = candidates[k];
                bool ok = true;
                for (std::size_t i = 0; ok && i < current.size(); ++i)
                    for (std::size_t j = i + 1; ok && j < current.size(); ++j)
                        ok = arf(sum3(x, current[i], current[j])) == triple_parity;
                if (!ok)
                    continue;
                current.push_back(x);
                self(self, k + 1);
                current.pop_back();
            }
        };
        recurse(recurse, 0);
        std::sort(found.begin(), found.end());
        return found;
    }

    /// Reorders an Aronhold set so that q_1 + q_2 + q_3 = q_T (genus 3). Any even
    /// q_T other than q_S is the sum of exactly one triple.
    inline AronholdBasis order_for_target(std::span<const QuadForm> set, const QuadForm &q_t)
    {
        if (set.size() != 7)
            throw std::invalid_argument("order_for_target: genus 3 Aronhold set expected");
        for (std::size_t i = 0; i < 7; ++i)
            for (std::size_t j = i + 1; j < 7; ++j)
                for (std::size_t k = j + 1; k < 7; ++k)
                    if (sum3(set[i], set[j], set[k]) == q_t)
                    {
                        std::vector<QuadForm> ordered{set[i], set[j], set[k]};
                        for (std::size_t m = 0; m < 7; ++m)
                            if (m != i && m != j && m != k)
                                ordered.push_back(set[m]);
                        return AronholdBasis(std::move(ordered));
                    }
        throw std::invalid_argument("order_for_target: no triple of the set sums to q_T");
    }

} // namespace thetaweber
