#pragma once

// Random inputs for tests and the CLI: Riemann matrices near i*I and random
// fundamental systems.

#include "fundamental.hpp"
#include "theta.hpp"

#include <algorithm>
#include <random>

namespace thetaweber
{
    /// tau = i*I + scale * S, S complex symmetric with entries uniform in [-1, 1] + i[-1, 1].
    /// Resamples until Im tau has smallest eigenvalue >= 0.5.
    template <class Rng>
    RiemannMatrix random_riemann_matrix(int g, Rng &rng, double scale = 0.1)
    {
        std::uniform_real_distribution<double> unit(-1.0, 1.0);
        while (true)
        {
            Eigen::MatrixXcd tau = Eigen::MatrixXcd::Identity(g, g) * Complex(0.0, 1.0);
            for (int i = 0; i < g; ++i)
                for (int j = i; j < g; ++j)
                {
                    const Complex s(unit(rng), unit(rng));
                    tau(i, j) += scale * s;
                    if (i != j)
                        tau(j, i) = tau(i, j);
                }
            RiemannMatrix out(tau);
            if (out.y_min() >= 0.5)
                return out;
        }
    }

    /// sigma . N_0 for a random sigma, with the odd slots and the even slots
    /// independently permuted.
    template <class Rng>
    FundamentalSystem random_fundamental_system(Rng &rng)
    {
        const SymplecticMapF2 sigma = random_symplectic_f2(3, rng);
        const FundamentalSystem n0 = reference_system_n0();
        std::vector<QuadForm> forms;
        for (const QuadForm &n : n0.forms())
            forms.push_back(sigma.apply(n));
        std::shuffle(forms.begin(), forms.begin() + 3, rng);
        std::shuffle(forms.begin() + 3, forms.end(), rng);
        return FundamentalSystem(std::move(forms));
    }

} // namespace thetaweber
