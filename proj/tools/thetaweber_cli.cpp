// thetaweber: command-line front end for the characteristic calculus and the
// genus-3 theta verifications.
//
// Exit codes: 0 all checks pass, 1 verification failure, 2 invalid input,
// 3 tau rejected by validate_tau.

#include <thetaweber/thetaweber.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <string>

namespace tw = thetaweber;
using nlohmann::json;

namespace
{
    constexpr int kExitPass = 0;
    constexpr int kExitFail = 1;
    constexpr int kExitInput = 2;
    constexpr int kExitRejected = 3;

    constexpr double kNoTolerance = std::numeric_limits<double>::infinity();

    struct RunConfig
    {
        int genus{3};
        std::string tau_path;
        double tolerance{tw::kDefaultTolerance};
        int radius{0};
        double tail{1e-16};
        std::uint64_t seed{1};
        std::string output_path;

        tw::ThetaEvalConfig theta() const { return {radius, tail, false}; }

        void check() const
        {
            if (!(tolerance > 0.0))
                throw tw::ParseError("--tol must be positive");
            if (!(tail > 0.0))
                throw tw::ParseError("--tail must be positive");
            if (radius < 0)
                throw tw::ParseError("--radius must be non-negative");
            if (genus < 1)
                throw tw::ParseError("--genus must be at least 1");
        }
    };

    void emit(const RunConfig &cfg, const json &report)
    {
        if (!cfg.output_path.empty())
            tw::write_json_file(cfg.output_path, report);
        std::cout << report.dump(2) << '\n';
    }

    tw::RiemannMatrix load_checked_tau(const RunConfig &cfg)
    {
        if (cfg.tau_path.empty())
            throw tw::ParseError("--tau is required");
        tw::RiemannMatrix tau = tw::load_tau(cfg.tau_path);
        if (tau.genus() != 3)
            throw tw::ParseError("tau must have genus 3 for this command");
        tw::require_valid_tau(tau, cfg.theta());
        return tau;
    }

    int cmd_chars(const RunConfig &cfg)
    {
        if (cfg.genus > 5)
            throw tw::ParseError("chars: genus " + std::to_string(cfg.genus) + " exceeds the listing limit 5");
        json list = json::array();
        std::size_t even = 0, odd = 0;
        for (std::size_t idx = 0; idx < tw::form_count(cfg.genus); ++idx)
        {
            const tw::QuadForm q = tw::QuadForm::from_index(cfg.genus, idx);
            const bool is_even = tw::is_even(q);
            (is_even ? even : odd) += 1;
            list.push_back({{"char", tw::format_form(q)}, {"parity", is_even ? "even" : "odd"}});
        }
        const std::size_t g = static_cast<std::size_t>(cfg.genus);
        const std::size_t half = std::size_t{1} << (g - 1);
        const std::size_t full = std::size_t{1} << g;
        const bool ok = even == half * (full + 1) && odd == half * (full - 1);
        emit(cfg, {{"g", cfg.genus}, {"even", even}, {"odd", odd}, {"characteristics", list}});
        return ok ? kExitPass : kExitFail;
    }

    int cmd_aronhold(const RunConfig &cfg)
    {
        if (cfg.genus > 3)
            throw tw::ParseError("aronhold: genus must be at most 3");
        const auto sets = tw::enumerate_aronhold_sets(cfg.genus);
        const json doc = tw::aronhold_sets_to_json(sets);
        if (!cfg.output_path.empty())
            tw::write_json_file(cfg.output_path, doc);

        // Round trip through the text format; aronhold_sets_from_json rejects
        // anything that is not an Aronhold set.
        const auto reloaded = tw::aronhold_sets_from_json(json::parse(doc.dump()));
        bool ok = reloaded == sets;
        for (const auto &s : reloaded)
            ok = ok && tw::is_azygetic(s);
        std::cout << sets.size() << '\n';
        return ok ? kExitPass : kExitFail;
    }

    int cmd_jacobi(const RunConfig &cfg, const std::string &system_path, int random_count)
    {
        const tw::RiemannMatrix tau = load_checked_tau(cfg);
        std::vector<tw::FundamentalSystem> systems;
        if (!system_path.empty())
            systems.push_back(tw::system_from_json(tw::read_json_file(system_path)));
        else if (random_count > 0)
        {
            std::mt19937_64 rng(cfg.seed);
            for (int i = 0; i < random_count; ++i)
                systems.push_back(tw::random_fundamental_system(rng));
        }
        else
            systems.push_back(tw::reference_system_n0());

        json report = json::array();
        bool ok = true;
        for (const auto &p : systems)
        {
            const tw::JacobiCheckResult r = tw::jacobi_check(p, tau, cfg.theta(), kNoTolerance);
            ok = ok && r.residual < cfg.tolerance;
            report.push_back(tw::to_json(r));
        }
        emit(cfg, report);
        return ok ? kExitPass : kExitFail;
    }

    int cmd_weber(const RunConfig &cfg, const std::string &qs_text, const std::string &qt_text)
    {
        if (qs_text.empty() != qt_text.empty())
            throw tw::ParseError("weber: give both --qs and --qt, or neither for all pairs");
        std::vector<std::pair<tw::QuadForm, tw::QuadForm>> pairs;
        if (!qs_text.empty())
        {
            const tw::QuadForm qs = tw::parse_form(qs_text, 3);
            const tw::QuadForm qt = tw::parse_form(qt_text, 3);
            if (!tw::is_even(qs) || !tw::is_even(qt) || qs == qt)
                throw tw::ParseError("weber: q_S and q_T must be distinct even characteristics");
            pairs.emplace_back(qs, qt);
        }
        else
        {
            for (const auto &qs : tw::even_forms(3))
                for (const auto &qt : tw::even_forms(3))
                    if (qs != qt)
                        pairs.emplace_back(qs, qt);
        }

        const tw::RiemannMatrix tau = load_checked_tau(cfg);
        const tw::BitangentFrame frame(tau, Eigen::Matrix3cd::Identity(), cfg.theta());
        json report = json::array();
        bool ok = true;
        for (const auto &[qs, qt] : pairs)
        {
            const tw::WeberResult r = tw::weber_verify(qs, qt, frame, cfg.theta(), kNoTolerance);
            ok = ok && r.relative_error < cfg.tolerance;
            report.push_back(tw::to_json(r));
        }
        emit(cfg, report);
        return ok ? kExitPass : kExitFail;
    }

    int cmd_sign(const RunConfig &cfg, const std::string &qs_text, const std::string &qt_text)
    {
        if (qs_text.empty() || qt_text.empty())
            throw tw::ParseError("sign: --qs and --qt are required");
        const tw::QuadForm qs = tw::parse_form(qs_text);
        const tw::QuadForm qt = tw::parse_form(qt_text, qs.g);
        const int s = tw::weber_sign(qs, qt);
        if (!cfg.output_path.empty())
            tw::write_json_file(cfg.output_path, {{"qS", tw::format_form(qs)}, {"qT", tw::format_form(qt)}, {"sign", s}});
        std::cout << s << '\n';
        return kExitPass;
    }

    int cmd_iota(const RunConfig &cfg, int index, const std::string &qt_text)
    {
        const auto &sets = tw::aronhold_sets_g3();
        if (index < 0 || index >= static_cast<int>(sets.size()))
            throw tw::ParseError("iota: --index must lie in [0, " + std::to_string(sets.size() - 1) + "]");
        if (qt_text.empty())
            throw tw::ParseError("iota: --qt is required");
        const tw::QuadForm qt = tw::parse_form(qt_text, 3);
        const auto &set = sets[static_cast<std::size_t>(index)];
        const tw::QuadForm qs = tw::sum_forms(set);
        if (!tw::is_even(qt) || qt == qs)
            throw tw::ParseError("iota: q_T must be even and differ from the set's sum " + tw::format_form(qs));

        const tw::RiemannMatrix tau = load_checked_tau(cfg);
        const tw::AronholdBasis basis = tw::order_for_target(set, qt);
        const tw::FundamentalSystem p0 = tw::aronhold_to_fundamental(basis);
        const tw::IotaResult r = tw::iota(tw::weber_family(p0), tau, cfg.theta(), kNoTolerance);
        const int predicted = tw::weber_sign(qs, qt);
        const int transported = tw::transported_sign(p0);
        const bool ok = r.residual < cfg.tolerance && r.sign == predicted && transported == predicted;
        emit(cfg, {{"index", index},
                   {"qS", tw::format_form(qs)},
                   {"qT", tw::format_form(qt)},
                   {"system", tw::forms_to_json(p0.forms())},
                   {"iota_re", r.value.real()},
                   {"iota_im", r.value.imag()},
                   {"residual", r.residual},
                   {"sign", r.sign},
                   {"weber_sign", predicted},
                   {"transported_sign", transported}});
        return ok ? kExitPass : kExitFail;
    }

    /// tau = i I + 0.1 S, resampled until every even Thetanullwert clears the threshold.
    int cmd_gen_tau(const RunConfig &cfg)
    {
        std::mt19937_64 rng(cfg.seed);
        while (true)
        {
            const tw::RiemannMatrix tau = tw::random_riemann_matrix(3, rng, 0.1);
            if (tw::validate_tau(tau, cfg.theta()).ok)
            {
                emit(cfg, tw::tau_to_json(tau));
                return kExitPass;
            }
        }
    }

    void add_common(CLI::App *sub, RunConfig &cfg, bool with_tau)
    {
        if (with_tau)
        {
            sub->add_option("--tau", cfg.tau_path, "Riemann matrix JSON file {\"g\",\"re\",\"im\"}");
            sub->add_option("--tol", cfg.tolerance, "Tolerance for residuals and relative errors");
            sub->add_option("--radius", cfg.radius, "Lattice radius (0 chooses it from --tail)");
            sub->add_option("--tail", cfg.tail, "Target truncation tail");
        }
        sub->add_option("--seed", cfg.seed, "Seed for random systems and matrices");
        sub->add_option("--out", cfg.output_path, "Also write the report to this file");
    }
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Theta characteristics, Aronhold sets and genus-3 theta identities"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string qs_text, qt_text, system_path;
    int random_count = 0;
    int index = 0;

    auto *chars = app.add_subcommand("chars", "List characteristics with their parity");
    chars->add_option("--genus,-g", cfg.genus, "Genus (at most 5)")->default_val(3);
    add_common(chars, cfg, false);

    auto *aronhold = app.add_subcommand("aronhold", "Enumerate Aronhold sets and print their number");
    aronhold->add_option("--genus,-g", cfg.genus, "Genus (at most 3)")->default_val(3);
    add_common(aronhold, cfg, false);

    auto *jacobi = app.add_subcommand("jacobi", "Check S([P], tau) = +-1 (default P = N_0)");
    jacobi->add_option("--system", system_path, "JSON array of eight characteristics");
    jacobi->add_option("--random", random_count, "Check this many random fundamental systems");
    add_common(jacobi, cfg, true);

    auto *weber = app.add_subcommand("weber", "Check Weber's formula for one pair or all pairs");
    weber->add_option("--qs", qs_text, "q_S, e.g. \"[1 0 0; 1 0 0]\" or 100/100");
    weber->add_option("--qt", qt_text, "q_T");
    add_common(weber, cfg, true);

    auto *sign = app.add_subcommand("sign", "Print (-1)^{a(q_0 + q_S + q_T)}");
    sign->add_option("--qs", qs_text, "q_S")->required();
    sign->add_option("--qt", qt_text, "q_T")->required();
    add_common(sign, cfg, false);

    auto *iota = app.add_subcommand("iota", "Compute iota for the family built from an Aronhold set");
    iota->add_option("--index", index, "Index into the sorted list of 288 Aronhold sets")->required();
    iota->add_option("--qt", qt_text, "q_T")->required();
    add_common(iota, cfg, true);

    auto *gen_tau = app.add_subcommand("gen-tau", "Write a validated random genus-3 tau");
    add_common(gen_tau, cfg, true);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitInput;
    }

    try
    {
        cfg.check();
        if (*chars)
            return cmd_chars(cfg);
        if (*aronhold)
            return cmd_aronhold(cfg);
        if (*jacobi)
            return cmd_jacobi(cfg, system_path, random_count);
        if (*weber)
            return cmd_weber(cfg, qs_text, qt_text);
        if (*sign)
            return cmd_sign(cfg, qs_text, qt_text);
        if (*iota)
            return cmd_iota(cfg, index, qt_text);
        if (*gen_tau)
            return cmd_gen_tau(cfg);
    }
    catch (const tw::TauRejected &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRejected;
    }
    catch (const tw::VerificationError &e)
    {
        std::cerr << "verification failed: " << e.what() << '\n';
        return kExitFail;
    }
    catch (const std::invalid_argument &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const std::out_of_range &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const std::domain_error &e)
    {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInput;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitInput;
}
