#pragma once

// Text and JSON formats: characteristics as `[1 0 0; 1 0 0]` (or `100/100`),
// tau as {"g", "re", "im"}, fundamental systems and the Aronhold cache as JSON
// arrays of characteristic strings.

#include "fundamental.hpp"
#include "integer_symplectic.hpp"
#include "theta.hpp"
#include "weber.hpp"

#include <nlohmann/json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetaweber
{
    class ParseError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    namespace detail
    {
        inline std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r\n");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r\n");
            return s.substr(b, e - b + 1);
        }

        inline std::vector<std::int64_t> parse_integers(const std::string &s, const std::string &whole)
        {
            std::vector<std::int64_t> out;
            std::istringstream in(s);
            std::string tok;
            while (in >> tok)
            {
                std::size_t used = 0;
                std::int64_t v = 0;
                try
                {
                    v = std::stoll(tok, &used);
                }
                catch (const std::exception &)
                {
                    throw ParseError("bad entry '" + tok + "' in characteristic '" + whole + "'");
                }
                if (used != tok.size())
                    throw ParseError("bad entry '" + tok + "' in characteristic '" + whole + "'");
                out.push_back(v);
            }
            return out;
        }
    } // namespace detail

    /// Accepts `[e1 .. eg; e1' .. eg']` (integers) or the compact `e1..eg/e1'..eg'` (bits).
    inline IntCharacteristic parse_int_characteristic(const std::string &text)
    {
        const std::string s = detail::trim(text);
        std::vector<std::int64_t> top, bottom;
        if (!s.empty() && s.front() == '[')
        {
            if (s.back() != ']')
                throw ParseError("characteristic '" + text + "' lacks a closing bracket");
            const std::string body = s.substr(1, s.size() - 2);
            const auto semi = body.find(';');
            if (semi == std::string::npos || body.find(';', semi + 1) != std::string::npos)
                throw ParseError("characteristic '" + text + "' needs exactly one ';'");
            top = detail::parse_integers(body.substr(0, semi), text);
            bottom = detail::parse_integers(body.substr(semi + 1), text);
        }
        else
        {
            const auto slash = s.find('/');
            if (slash == std::string::npos)
                throw ParseError("characteristic '" + text + "' is neither [..;..] nor bits/bits");
            for (std::size_t i = 0; i < s.size(); ++i)
            {
                if (i == slash)
                    continue;
                if (s[i] != '0' && s[i] != '1')
                    throw ParseError("characteristic '" + text + "' has a non-bit character");
                (i < slash ? top : bottom).push_back(s[i] - '0');
            }
        }
        if (top.empty() || top.size() != bottom.size())
            throw ParseError("characteristic '" + text + "' has rows of different or zero length");
        if (top.size() > static_cast<std::size_t>(kMaxGenus))
            throw ParseError("characteristic '" + text + "' exceeds the maximum genus");
        IntVector e(static_cast<Eigen::Index>(top.size())), ep(static_cast<Eigen::Index>(top.size()));
        for (std::size_t i = 0; i < top.size(); ++i)
        {
            e(static_cast<Eigen::Index>(i)) = top[i];
            ep(static_cast<Eigen::Index>(i)) = bottom[i];
        }
        return {e, ep};
    }

    /// Like parse_int_characteristic but entries must be 0 or 1.
    inline QuadForm parse_form(const std::string &text, int expected_genus = 0)
    {
        const IntCharacteristic c = parse_int_characteristic(text);
        for (int i = 0; i < c.genus(); ++i)
            if (c.eps(i) < 0 || c.eps(i) > 1 || c.eps_prime(i) < 0 || c.eps_prime(i) > 1)
                throw ParseError("characteristic '" + text + "' must have 0/1 entries");
        if (expected_genus > 0 && c.genus() != expected_genus)
            throw ParseError("characteristic '" + text + "' has genus " + std::to_string(c.genus()) +
                             ", expected " + std::to_string(expected_genus));
        return c.reduce();
    }

    inline std::string format_characteristic(const IntCharacteristic &c)
    {
        std::ostringstream out;
        out << '[';
        for (int i = 0; i < c.genus(); ++i)
            out << (i ? " " : "") << c.eps(i);
        out << ';';
        for (int i = 0; i < c.genus(); ++i)
            out << ' ' << c.eps_prime(i);
        out << ']';
        return out.str();
    }

    inline std::string format_form(const QuadForm &q)
    {
        return format_characteristic(IntCharacteristic::canonical(q));
    }

    inline nlohmann::json forms_to_json(std::span<const QuadForm> forms)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &q : forms)
            arr.push_back(format_form(q));
        return arr;
    }

    inline std::vector<QuadForm> forms_from_json(const nlohmann::json &arr, int expected_genus = 0)
    {
        if (!arr.is_array())
            throw ParseError("expected a JSON array of characteristic strings");
        std::vector<QuadForm> out;
        for (const auto &item : arr)
        {
            if (!item.is_string())
                throw ParseError("expected a characteristic string, got " + item.dump());
            out.push_back(parse_form(item.get<std::string>(), expected_genus));
        }
        return out;
    }

    inline FundamentalSystem system_from_json(const nlohmann::json &arr)
    {
        auto forms = forms_from_json(arr);
        if (forms.empty() || !is_fundamental(forms))
            throw ParseError("forms " + arr.dump() + " are not a fundamental system");
        return FundamentalSystem(std::move(forms));
    }

    inline nlohmann::json tau_to_json(const RiemannMatrix &tau)
    {
        const int g = tau.genus();
        nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
        for (int i = 0; i < g; ++i)
        {
            nlohmann::json rr = nlohmann::json::array(), ir = nlohmann::json::array();
            for (int j = 0; j < g; ++j)
            {
                rr.push_back(tau.tau()(i, j).real());
                ir.push_back(tau.tau()(i, j).imag());
            }
            re.push_back(rr);
            im.push_back(ir);
        }
        return {{"g", g}, {"re", re}, {"im", im}};
    }

    inline RiemannMatrix tau_from_json(const nlohmann::json &j)
    {
        try
        {
            const int g = j.at("g").get<int>();
            check_genus(g);
            const auto &re = j.at("re");
            const auto &im = j.at("im");
            if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(g) ||
                im.size() != static_cast<std::size_t>(g))
                throw ParseError("tau: 're' and 'im' must be g x g arrays");
            Eigen::MatrixXcd tau(g, g);
            for (int r = 0; r < g; ++r)
            {
                if (re[r].size() != static_cast<std::size_t>(g) || im[r].size() != static_cast<std::size_t>(g))
                    throw ParseError("tau: row " + std::to_string(r) + " has the wrong length");
                for (int c = 0; c < g; ++c)
                    tau(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
            }
            return RiemannMatrix(tau);
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ParseError(std::string("tau: malformed JSON object: ") + e.what());
        }
    }

    inline nlohmann::json read_json_file(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ParseError("cannot open " + path.string());
        try
        {
            return nlohmann::json::parse(in);
        }
        catch (const nlohmann::json::parse_error &e)
        {
            throw ParseError(path.string() + ": " + e.what());
        }
    }

    inline void write_json_file(const std::filesystem::path &path, const nlohmann::json &j)
    {
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << j.dump(2) << '\n';
    }

    inline RiemannMatrix load_tau(const std::filesystem::path &path) { return tau_from_json(read_json_file(path)); }

    inline nlohmann::json aronhold_sets_to_json(const std::vector<std::vector<QuadForm>> &sets)
    {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &s : sets)
            arr.push_back(forms_to_json(s));
        return arr;
    }

    /// Every entry must pass is_aronhold.
    inline std::vector<std::vector<QuadForm>> aronhold_sets_from_json(const nlohmann::json &arr)
    {
        if (!arr.is_array())
            throw ParseError("Aronhold cache: expected a JSON array");
        std::vector<std::vector<QuadForm>> out;
        for (const auto &item : arr)
        {
            auto forms = forms_from_json(item);
            if (forms.empty() || forms.size() != static_cast<std::size_t>(2 * forms[0].g + 1) || !is_aronhold(forms))
                throw ParseError("Aronhold cache: entry " + item.dump() + " is not an Aronhold set");
            out.push_back(std::move(forms));
        }
        return out;
    }

    /// Reads the enumeration from `path` if present, otherwise enumerates and writes it.
    inline std::vector<std::vector<QuadForm>> load_or_enumerate_aronhold(const std::filesystem::path &path, int g = 3)
    {
        if (std::filesystem::exists(path))
            return aronhold_sets_from_json(read_json_file(path));
        auto sets = enumerate_aronhold_sets(g);
        write_json_file(path, aronhold_sets_to_json(sets));
        return sets;
    }

    inline nlohmann::json to_json(const WeberResult &r)
    {
        return {{"qS", format_form(r.q_s)},          {"qT", format_form(r.q_t)},
                {"lhs_re", r.lhs.real()},            {"lhs_im", r.lhs.imag()},
                {"rhs_re", r.rhs.real()},            {"rhs_im", r.rhs.imag()},
                {"sign", r.sign},                    {"relative_error", r.relative_error}};
    }

    inline nlohmann::json to_json(const JacobiCheckResult &r)
    {
        return {{"system", forms_to_json(r.system.forms())},
                {"s_re", r.s_value.real()},
                {"s_im", r.s_value.imag()},
                {"sign", r.sign},
                {"residual", r.residual}};
    }

} // namespace thetaweber
