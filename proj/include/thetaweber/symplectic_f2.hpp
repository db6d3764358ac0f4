#pragma once

// Sp_{2g}(F2) acting on F2^{2g} and on quadratic forms.
//
// sigma = [[a, b], [c, d]] acts on column vectors (lambda; mu). The induced
// action on forms, (sigma.q)(v) = q(sigma^{-1} v), is in characteristic
// coordinates
//
//   [nu; nu'] = [[d, c], [b, a]] [eps; eps'] + [(c d^t)_0; (a b^t)_0]
//
// where (m)_0 is the diagonal of m.

#include "f2.hpp"

#include <random>
#include <utility>
#include <string>
#include <vector>

namespace thetaweber
{
    /// Square g x g matrix over F2, row i packed in rows[i] (bit j = column j).
    struct BitMatrix
    {
        int n{0};
        std::vector<Bits> rows;

        BitMatrix() = default;
        explicit BitMatrix(int size) : n(size), rows(static_cast<std::size_t>(size), 0) {}

        static BitMatrix identity(int size)
        {
            BitMatrix m(size);
            for (int i = 0; i < size; ++i)
                m.rows[i] = Bits{1} << i;
            return m;
        }

        int at(int i, int j) const { return (rows[i] >> j) & 1; }
        void set(int i, int j, int value)
        {
            rows[i] = value ? (rows[i] | (Bits{1} << j)) : (rows[i] & ~(Bits{1} << j));
        }

        Bits apply(Bits x) const
        {
            Bits out = 0;
            for (int i = 0; i < n; ++i)
                out |= static_cast<Bits>(parity(rows[i] & x)) << i;
            return out;
        }

        BitMatrix transpose() const
        {
            BitMatrix t(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    t.set(j, i, at(i, j));
            return t;
        }

        /// Column vector of diagonal entries.
        Bits diagonal() const
        {
            Bits out = 0;
            for (int i = 0; i < n; ++i)
                out |= static_cast<Bits>(at(i, i)) << i;
            return out;
        }

        bool is_symmetric() const { return *this == transpose(); }

        friend bool operator==(const BitMatrix &, const BitMatrix &) = default;
    };

    inline BitMatrix operator*(const BitMatrix &x, const BitMatrix &y)
    {
        BitMatrix out(x.n);
        for (int i = 0; i < x.n; ++i)
        {
            Bits acc = 0;
            for (int k = 0; k < x.n; ++k)
                if (x.at(i, k))
                    acc ^= y.rows[k];
            out.rows[i] = acc;
        }
        return out;
    }

    inline BitMatrix operator+(const BitMatrix &x, const BitMatrix &y)
    {
        BitMatrix out(x.n);
        for (int i = 0; i < x.n; ++i)
            out.rows[i] = x.rows[i] ^ y.rows[i];
        return out;
    }

    /// (m n^t)_0: entry i is the dot product of row i of m with row i of n.
    inline Bits diag_of_product_transpose(const BitMatrix &m, const BitMatrix &n)
    {
        Bits out = 0;
        for (int i = 0; i < m.n; ++i)
            out |= static_cast<Bits>(parity(m.rows[i] & n.rows[i])) << i;
        return out;
    }

    class SymplecticMapF2
    {
    public:
        /// Validates the block relations; throws std::invalid_argument otherwise.
        SymplecticMapF2(BitMatrix a, BitMatrix b, BitMatrix c, BitMatrix d)
            : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d))
        {
            g_ = a_.n;
            check_genus(g_);
            if (b_.n != g_ || c_.n != g_ || d_.n != g_)
                throw std::invalid_argument("SymplecticMapF2: block sizes differ");
            if (!blocks_symplectic(a_, b_, c_, d_))
                throw std::invalid_argument("SymplecticMapF2: blocks are not symplectic");
        }

        static SymplecticMapF2 identity(int g)
        {
            return {BitMatrix::identity(g), BitMatrix(g), BitMatrix(g), BitMatrix::identity(g)};
        }

        /// Builds sigma from the images of e_1..e_g, f_1..f_g (its columns).
        static SymplecticMapF2 from_columns(int g, const std::vector<F2Vector> &columns)
        {
            if (static_cast<int>(columns.size()) != 2 * g)
                throw std::invalid_argument("from_columns: need 2g columns");
            BitMatrix a(g), b(g), c(g), d(g);
            for (int j = 0; j < g; ++j)
            {
                const F2Vector &ce = columns[j];
                const F2Vector &cf = columns[g + j];
                require_same_genus(g, ce.g);
                require_same_genus(g, cf.g);
                for (int i = 0; i < g; ++i)
                {
                    a.set(i, j, (ce.lambda >> i) & 1);
                    c.set(i, j, (ce.mu >> i) & 1);
                    b.set(i, j, (cf.lambda >> i) & 1);
                    d.set(i, j, (cf.mu >> i) & 1);
                }
            }
            return {a, b, c, d};
        }

        /// x -> x + <x,v> v
        static SymplecticMapF2 transvection(const F2Vector &v)
        {
            const int g = v.g;
            std::vector<F2Vector> cols;
            cols.reserve(2 * g);
            for (int j = 1; j <= g; ++j)
            {
                F2Vector x = F2Vector::e(g, j);
                cols.push_back(pairing(x, v) ? x + v : x);
            }
            for (int j = 1; j <= g; ++j)
            {
                F2Vector x = F2Vector::f(g, j);
                cols.push_back(pairing(x, v) ? x + v : x);
            }
            return from_columns(g, cols);
        }

        static bool blocks_symplectic(const BitMatrix &a, const BitMatrix &b, const BitMatrix &c,
                                      const BitMatrix &d)
        {
            const int g = a.n;
            return a.transpose() * d + c.transpose() * b == BitMatrix::identity(g) &&
                   (a.transpose() * c).is_symmetric() && (b.transpose() * d).is_symmetric();
        }

        int genus() const noexcept { return g_; }
        const BitMatrix &a() const noexcept { return a_; }
        const BitMatrix &b() const noexcept { return b_; }
        const BitMatrix &c() const noexcept { return c_; }
        const BitMatrix &d() const noexcept { return d_; }

        F2Vector apply(const F2Vector &v) const
        {
            require_same_genus(g_, v.g);
            return {g_, a_.apply(v.lambda) ^ b_.apply(v.mu), c_.apply(v.lambda) ^ d_.apply(v.mu)};
        }

        QuadForm apply(const QuadForm &q) const
        {
            require_same_genus(g_, q.g);
            const Bits nu = d_.apply(q.eps) ^ c_.apply(q.eps_prime) ^ diag_of_product_transpose(c_, d_);
            const Bits nu_p = b_.apply(q.eps) ^ a_.apply(q.eps_prime) ^ diag_of_product_transpose(a_, b_);
            return {g_, nu, nu_p};
        }

        /// (this o other)(x) = this(other(x)).
        SymplecticMapF2 compose(const SymplecticMapF2 &other) const
        {
            require_same_genus(g_, other.g_);
            return {a_ * other.a_ + b_ * other.c_, a_ * other.b_ + b_ * other.d_,
                    c_ * other.a_ + d_ * other.c_, c_ * other.b_ + d_ * other.d_};
        }

        friend bool operator==(const SymplecticMapF2 &, const SymplecticMapF2 &) = default;

    private:
        int g_{1};
        BitMatrix a_, b_, c_, d_;
    };

    inline QuadForm act_f2(const SymplecticMapF2 &sigma, const QuadForm &q) { return sigma.apply(q); }
    inline F2Vector act_f2_vec(const SymplecticMapF2 &sigma, const F2Vector &v) { return sigma.apply(v); }

    /// Product of `steps` transvections along uniformly random nonzero vectors.
    template <class Rng>
    SymplecticMapF2 random_symplectic_f2(int g, Rng &rng, int steps = 24)
    {
        std::uniform_int_distribution<std::size_t> pick(1, form_count(g) - 1);
        SymplecticMapF2 sigma = SymplecticMapF2::identity(g);
        for (int s = 0; s < steps; ++s)
            sigma = SymplecticMapF2::transvection(F2Vector::from_index(g, pick(rng))).compose(sigma);
        return sigma;
    }

} // namespace thetaweber
