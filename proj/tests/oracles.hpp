#pragma once

// Deliberately naive reference computations used as test oracles. Nothing here
// calls into the library beyond plain data conversion.

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace oracle
{
    using Complex = std::complex<double>;
    using Vec = std::vector<long long>;
    using Mat = std::vector<Vec>;

    struct Char
    {
        Vec e, ep;
    };

    inline Char unpack(int g, unsigned eps, unsigned eps_prime)
    {
        Char c{Vec(g), Vec(g)};
        for (int i = 0; i < g; ++i)
        {
            c.e[i] = (eps >> i) & 1u;
            c.ep[i] = (eps_prime >> i) & 1u;
        }
        return c;
    }

    inline long long mod2(long long x) { return ((x % 2) + 2) % 2; }

    inline int arf(const Char &c)
    {
        long long s = 0;
        for (std::size_t i = 0; i < c.e.size(); ++i)
            s += c.e[i] * c.ep[i];
        return static_cast<int>(mod2(s));
    }

    /// q(lambda, mu) = eps.lambda + eps'.mu + lambda.mu
    inline int form_value(const Char &c, const Vec &lambda, const Vec &mu)
    {
        long long s = 0;
        for (std::size_t i = 0; i < c.e.size(); ++i)
            s += c.e[i] * lambda[i] + c.ep[i] * mu[i] + lambda[i] * mu[i];
        return static_cast<int>(mod2(s));
    }

    inline Char add(const Char &x, const Char &y)
    {
        Char out = x;
        for (std::size_t i = 0; i < x.e.size(); ++i)
        {
            out.e[i] = mod2(x.e[i] + y.e[i]);
            out.ep[i] = mod2(x.ep[i] + y.ep[i]);
        }
        return out;
    }

    /// a(x) + a(y) + a(z) + a(x + y + z) = 1
    inline bool azygetic_triple(const Char &x, const Char &y, const Char &z)
    {
        return mod2(arf(x) + arf(y) + arf(z) + arf(add(add(x, y), z))) == 1;
    }

    inline bool azygetic(const std::vector<Char> &fam)
    {
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (std::size_t j = i + 1; j < fam.size(); ++j)
                for (std::size_t k = j + 1; k < fam.size(); ++k)
                    if (!azygetic_triple(fam[i], fam[j], fam[k]))
                        return false;
        return true;
    }

    inline Mat zeros(std::size_t n) { return Mat(n, Vec(n, 0)); }

    inline Mat mul(const Mat &x, const Mat &y)
    {
        Mat out = zeros(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                for (std::size_t k = 0; k < x.size(); ++k)
                    out[i][j] += x[i][k] * y[k][j];
        return out;
    }

    inline Mat transpose(const Mat &x)
    {
        Mat out = zeros(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < x.size(); ++j)
                out[j][i] = x[i][j];
        return out;
    }

    inline Vec apply(const Mat &m, const Vec &v)
    {
        Vec out(m.size(), 0);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                out[i] += m[i][j] * v[j];
        return out;
    }

    inline long long dot(const Vec &x, const Vec &y)
    {
        long long s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += x[i] * y[i];
        return s;
    }

    inline Vec diag(const Mat &m)
    {
        Vec out(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            out[i] = m[i][i];
        return out;
    }

    /// 8 phi, term by term with explicit loops.
    inline long long eight_phi(const Char &q, const Mat &a, const Mat &b, const Mat &c, const Mat &d)
    {
        const Vec &e = q.e;
        const Vec &ep = q.ep;
        const long long t1 = dot(e, apply(mul(transpose(b), d), e));
        const long long t2 = dot(e, apply(mul(transpose(b), c), ep));
        const long long t3 = dot(ep, apply(mul(transpose(a), c), ep));
        const Vec ab0 = diag(mul(a, transpose(b)));
        Vec de_minus_cep = apply(d, e);
        const Vec cep = apply(c, ep);
        for (std::size_t i = 0; i < e.size(); ++i)
            de_minus_cep[i] -= cep[i];
        const long long t4 = dot(ab0, de_minus_cep);
        return -(t1 - 2 * t2 + t3 - 2 * t4);
    }

    /// sigma.[e; e'] = (d e - c e' + (c d^t)_0 ; -b e + a e' + (a b^t)_0)
    inline Char act(const Char &q, const Mat &a, const Mat &b, const Mat &c, const Mat &d)
    {
        const Vec de = apply(d, q.e), cep = apply(c, q.ep), be = apply(b, q.e), aep = apply(a, q.ep);
        const Vec cd0 = diag(mul(c, transpose(d))), ab0 = diag(mul(a, transpose(b)));
        Char out{Vec(q.e.size()), Vec(q.e.size())};
        for (std::size_t i = 0; i < q.e.size(); ++i)
        {
            out.e[i] = de[i] - cep[i] + cd0[i];
            out.ep[i] = -be[i] + aep[i] + ab0[i];
        }
        return out;
    }

    /// Genus-1 theta with characteristic, plain symmetric partial sum.
    inline Complex theta1(long long e, long long ep, Complex z, Complex tau, int radius = 40)
    {
        const Complex i2pi(0.0, 2.0 * std::numbers::pi);
        Complex s = 0.0;
        for (int n = -radius; n <= radius; ++n)
        {
            const double w = n + 0.5 * static_cast<double>(e);
            s += std::exp(i2pi * (0.5 * w * w * tau + w * (z + 0.5 * static_cast<double>(ep))));
        }
        return s;
    }

    /// Derivative of theta1 in z.
    inline Complex theta1_prime(long long e, long long ep, Complex z, Complex tau, int radius = 40)
    {
        const Complex i2pi(0.0, 2.0 * std::numbers::pi);
        Complex s = 0.0;
        for (int n = -radius; n <= radius; ++n)
        {
            const double w = n + 0.5 * static_cast<double>(e);
            s += i2pi * w * std::exp(i2pi * (0.5 * w * w * tau + w * (z + 0.5 * static_cast<double>(ep))));
        }
        return s;
    }

    /// Raw genus-g series on the box [-radius, radius]^g, with the characteristic
    /// used exactly as given (no reduction, no sign normalization).
    inline Complex theta_raw(const Vec &e, const Vec &ep, const std::vector<Complex> &z,
                             const std::vector<std::vector<Complex>> &tau, int radius)
    {
        const std::size_t g = e.size();
        const Complex i2pi(0.0, 2.0 * std::numbers::pi);
        std::vector<int> n(g, -radius);
        Complex s = 0.0;
        while (true)
        {
            std::vector<double> w(g);
            for (std::size_t i = 0; i < g; ++i)
                w[i] = n[i] + 0.5 * static_cast<double>(e[i]);
            Complex expo = 0.0;
            for (std::size_t i = 0; i < g; ++i)
            {
                for (std::size_t j = 0; j < g; ++j)
                    expo += 0.5 * w[i] * tau[i][j] * w[j];
                expo += w[i] * (z[i] + 0.5 * static_cast<double>(ep[i]));
            }
            s += std::exp(i2pi * expo);
            std::size_t pos = 0;
            while (pos < g && n[pos] == radius)
                n[pos++] = -radius;
            if (pos == g)
                break;
            ++n[pos];
        }
        return s;
    }

} // namespace oracle
