/**
 * @file cli.hpp
 * @brief Command-line front end: `mgn <command> [flags]`.
 *
 * Exit status: 0 on success (or a passing certificate), 1 on a mathematical
 * failure (a failing certificate, no rigid component), 2 on usage errors.
 * Results go to `out`, diagnostics to `err`. Every command is a pure function
 * of its flags.
 */
#pragma once

#include "mgn/bigness.hpp"
#include "mgn/intersection.hpp"
#include "mgn/picard.hpp"
#include "mgn/pullback.hpp"
#include "mgn/reid_tai.hpp"
#include "mgn/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mgn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFail = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) throw std::invalid_argument(std::string("malformed ") + what + " '" + text + "'");
        out.push_back(v);
    }
    return out;
}

inline std::vector<std::string> split(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

/// rigid-component builds the full canonical class only up to this many markings.
inline constexpr int kRigidFullBasisMarkings = 10;

/// Which class a command operates on.
struct ClassSpec {
    std::string name;
    std::string input;
    int g = 3;
    int n = 0;
    int j = 1;
    int i = 1;
    std::string set;
    int r = 3;
    bool symmetric = false;

    void add_options(CLI::App* app, bool with_genus = true) {
        app->add_option("--name", name,
                        "canonical|kappa1|lambda|psi|psi_total|delta_irr|delta|omega|omega_total|hyperelliptic|"
                        "coarse_boundary|farkas");
        app->add_option("--input", input, "read a class from a JSON file ('-' is not supported)");
        if (with_genus) app->add_option("--g", g, "genus")->capture_default_str();
        app->add_option("--n", n, "number of markings")->capture_default_str();
        app->add_option("--j", j, "marking for psi/omega")->capture_default_str();
        app->add_option("--i", i, "genus side for coarse_boundary")->capture_default_str();
        app->add_option("--set", set, "markings for coarse_boundary, e.g. 1,2");
        app->add_option("--r", r, "r for the farkas divisor")->capture_default_str();
        app->add_flag("--symmetric", symmetric, "use the S_n-symmetric representation");
    }

    Json read_input() const {
        std::ifstream in(input);
        if (!in) throw std::invalid_argument("cannot open " + input);
        return Json::parse(in);
    }

    /// Symmetric when asked for, when the full basis would be too large, or when the input file is symmetric.
    bool wants_sym() const {
        if (!input.empty()) return symmetric || is_symmetric_json(read_input());
        return symmetric || n > kMaxFullBasisMarkings;
    }

    DivisorClass full() const {
        if (!input.empty()) return divisor_class_from_json(read_input());
        const ModuliIndex idx{g, n};
        if (name == "canonical") return canonical_class(g, n);
        if (name == "kappa1") return kappa1(g, n);
        if (name == "lambda") return lambda_class(idx);
        if (name == "psi") return psi_class(j, idx);
        if (name == "psi_total") return psi_total(idx);
        if (name == "delta_irr") return delta_irr_class(idx);
        if (name == "delta") return delta_total(idx);
        if (name == "omega") return omega_class(j, g, n);
        if (name == "omega_total") return omega_total(g, n);
        if (name == "hyperelliptic") return hyperelliptic_class();
        if (name == "coarse_boundary") return coarse_boundary_class(i, MarkingSet::of(parse_int_list(set, "marking set")), g, n);
        if (name == "farkas") return farkas_class(g, r).known;
        throw std::invalid_argument("unknown class name '" + name + "'");
    }

    SymDivisorClass sym() const {
        if (!input.empty()) {
            Json j = read_input();
            return is_symmetric_json(j) ? sym_class_from_json(j) : symmetrize(divisor_class_from_json(j));
        }
        const ModuliIndex idx{g, n};
        if (name == "canonical") return sym::canonical_class(g, n);
        if (name == "kappa1") return sym::kappa1(g, n);
        if (name == "omega_total") return sym::omega_total(g, n);
        if (name == "hyperelliptic") return sym::hyperelliptic_class();
        if (name == "farkas") return farkas_class_sym(g, r).known;
        if (name == "delta") return sym::delta_total(idx);
        SymDivisorClass c(idx);
        if (name == "lambda") return c.add(SymKey::lambda(), 1);
        if (name == "psi_total") return c.add(SymKey::psi(), 1);
        if (name == "delta_irr") return c.add(SymKey::delta_irr(), 1);
        throw std::invalid_argument("class '" + name + "' has no symmetric form");
    }
};

inline void print_table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t width = 0;
    for (const auto& [k, v] : rows) width = std::max(width, k.size());
    for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << "\n";
}

inline void print_class(std::ostream& out, const DivisorClass& c, bool json) {
    if (json) {
        out << to_json(c).dump() << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows{{"M_{g,n}", c.index().to_string()}};
    for (const auto& [e, r] : c.terms()) rows.emplace_back(e.name(), to_string(r));
    print_table(out, rows);
}

inline void print_class(std::ostream& out, const SymDivisorClass& c, bool json) {
    if (json) {
        out << to_json(c).dump() << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows{{"M_{g,n}", c.index().to_string() + " symmetric"}};
    for (const auto& [k, r] : c.terms()) rows.emplace_back(k.name(), to_string(r));
    print_table(out, rows);
}

inline std::string verdict_name(Verdict v) { return v == Verdict::Pass ? "pass" : "fail"; }

inline Json certificate_json(const BignessCertificate& c) {
    Json j;
    j["n"] = c.n;
    j["s"] = to_string(c.s);
    j["t"] = to_string(c.t);
    j["epsilon_max"] = c.epsilon_max ? Json(to_string(*c.epsilon_max)) : Json(nullptr);
    Json coeffs = Json::object();
    for (const auto& [k, r] : c.boundary_coefficients) coeffs[k.name()] = to_string(r);
    j["coefficients"] = std::move(coeffs);
    j["delta_1"] = to_string(c.delta1_aggregate);
    j["verdict"] = verdict_name(c.verdict);
    j["binding"] = c.binding;
    j["binding_value"] = to_string(c.binding_value);
    if (c.verdict == Verdict::Pass) {
        j["lambda_residual"] = to_string(c.lambda_residual);
        j["psi_residual"] = to_string(c.psi_residual);
    }
    j["assumptions"] = c.assumptions;
    return j;
}

inline void print_certificate_table(std::ostream& out, const BignessCertificate& c) {
    std::vector<std::pair<std::string, std::string>> rows{
        {"n", std::to_string(c.n)},
        {"s", to_string(c.s)},
        {"t", to_string(c.t)},
        {"verdict", verdict_name(c.verdict)},
        {"binding", c.binding + " = " + to_string(c.binding_value)},
        {"epsilon_max", c.epsilon_max ? to_string(*c.epsilon_max) : "none"},
        {"delta_1 (aggregate)", to_string(c.delta1_aggregate)},
    };
    if (c.verdict == Verdict::Pass) {
        rows.emplace_back("lambda at epsilon_max", to_string(c.lambda_residual));
        rows.emplace_back("psi at epsilon_max", to_string(c.psi_residual));
    }
    for (const auto& [k, r] : c.boundary_coefficients) rows.emplace_back(k.name(), to_string(r));
    print_table(out, rows);
}

inline std::string vanishing_phrase(const Rational& beta) {
    if (beta == 0) return "b1 >= 0";
    if (beta == 1) return "b1 >= m";
    return "b1 >= " + to_string(beta) + "*m";
}

inline Json action_json(const reid_tai::CyclicAction& a) {
    Json j;
    j["order"] = a.order();
    j["exponents"] = a.exponents();
    return j;
}

inline Json juniors_json(const std::vector<reid_tai::JuniorElement>& js) {
    Json arr = Json::array();
    for (const auto& e : js) {
        Json x;
        x["power"] = e.power;
        x["age"] = to_string(e.age);
        arr.push_back(std::move(x));
    }
    return arr;
}

}  // namespace detail

/// Runs one command; argv excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Exact divisor class and quotient singularity calculator for moduli of pointed curves", "mgn"};
    app.require_subcommand(1);
    std::string format = "table";
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json|table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
    };

    // class
    ClassSpec class_spec;
    auto* cmd_class = app.add_subcommand("class", "print a named class");
    class_spec.add_options(cmd_class);
    add_format(cmd_class);

    // pullback
    ClassSpec pull_spec;
    int pull_to = 0;
    std::string pull_kept;
    auto* cmd_pull = app.add_subcommand("pullback", "pull a class back along a forgetful map");
    pull_spec.add_options(cmd_pull);
    cmd_pull->add_option("--to", pull_to, "number of markings on the source")->required();
    cmd_pull->add_option("--kept", pull_kept, "source markings carrying target markings 1..m (default 1..m)");
    add_format(cmd_pull);

    // intersect-gamma
    ClassSpec gamma_spec;
    std::string gamma_mult = "1";
    auto* cmd_gamma = app.add_subcommand("intersect-gamma", "intersect a class on M_{3,n} with the elliptic-tail curve");
    gamma_spec.add_options(cmd_gamma, false);
    cmd_gamma->add_option("--m", gamma_mult, "rational multiplier")->capture_default_str();
    add_format(cmd_gamma);

    // rigid-component
    int rigid_n = 0;
    std::string rigid_m = "1";
    int rigid_i = 1;
    std::string rigid_set;
    auto* cmd_rigid = app.add_subcommand("rigid-component", "fixed multiple of a coarse boundary divisor in |mK|");
    cmd_rigid->add_option("--n", rigid_n, "number of markings")->required();
    cmd_rigid->add_option("--m", rigid_m, "multiple of K")->capture_default_str();
    cmd_rigid->add_option("--i", rigid_i, "boundary divisor genus side")->capture_default_str();
    cmd_rigid->add_option("--set", rigid_set, "boundary divisor markings (default empty)");
    add_format(cmd_rigid);

    // bigness-certify
    int cert_n = 0;
    auto* cmd_cert = app.add_subcommand("bigness-certify", "certify that K on M_{3,n} is big");
    cmd_cert->add_option("--n", cert_n, "number of markings (>= 14)")->required();
    add_format(cmd_cert);

    // bigness-sweep
    int sweep_from = 14, sweep_to = kDefaultSweepUpperBound;
    bool strict = false;
    auto* cmd_sweep = app.add_subcommand("bigness-sweep", "certificates for a range of n");
    cmd_sweep->add_option("--from", sweep_from)->capture_default_str();
    cmd_sweep->add_option("--to", sweep_to)->capture_default_str();
    cmd_sweep->add_flag("--strict", strict, "exit 1 if any certificate fails");
    add_format(cmd_sweep);

    // reid-tai-classify
    int rt_order = 0;
    std::string rt_exponents, rt_vanishing;
    int rt_m = 1;
    auto* cmd_rt = app.add_subcommand("reid-tai-classify", "classify a diagonal cyclic quotient singularity");
    cmd_rt->add_option("--order", rt_order, "group order k")->required();
    cmd_rt->add_option("--exponents", rt_exponents, "a1,a2,... (eigenvalue exp(2 pi i a_j/k))")->required();
    cmd_rt->add_option("--vanishing", rt_vanishing, "b1,b2,... vanishing orders along the coordinate hyperplanes");
    cmd_rt->add_option("--m", rt_m, "pluricanonical weight")->capture_default_str();
    add_format(cmd_rt);

    // elliptic-tail-classify
    std::string tail_eigs;
    auto* cmd_tail = app.add_subcommand("elliptic-tail-classify", "classify an elliptic-tail automorphism");
    cmd_tail->add_option("--eigenvalues", tail_eigs, "comma list of 1, -1, i, -i or turn fractions p/q")->required();
    add_format(cmd_tail);

    // table1
    auto* cmd_table1 = app.add_subcommand("table1", "junior automorphisms of smooth pointed curves");
    add_format(cmd_table1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    const bool json = format == "json";

    try {
        if (cmd_class->parsed()) {
            if (class_spec.wants_sym())
                print_class(out, class_spec.sym(), json);
            else
                print_class(out, class_spec.full(), json);
            return kExitOk;
        }

        if (cmd_pull->parsed()) {
            if (pull_spec.wants_sym()) {
                print_class(out, average_pullback(pull_spec.sym(), pull_to), json);
                return kExitOk;
            }
            DivisorClass c = pull_spec.full();
            std::vector<int> kept = parse_int_list(pull_kept, "kept list");
            if (kept.empty())
                for (int a = 1; a <= c.index().n; ++a) kept.push_back(a);
            print_class(out, pullback_multi(c, pull_to, kept), json);
            return kExitOk;
        }

        if (cmd_gamma->parsed()) {
            gamma_spec.g = kTestCurveGenus;
            Rational mult = parse_rational(gamma_mult);
            Rational value = gamma_spec.wants_sym() ? gamma_dot(gamma_spec.sym()) : gamma_dot(gamma_spec.full());
            value *= mult;
            if (json) {
                Json j;
                j["n"] = gamma_spec.n;
                j["gamma_dot"] = to_string(value);
                out << j.dump() << "\n";
            } else {
                out << to_string(value) << "\n";
            }
            return kExitOk;
        }

        if (cmd_rigid->parsed()) {
            Rational m = parse_rational(rigid_m);
            auto divisor = CoarseBoundaryDivisor::separating(rigid_i, MarkingSet::of(parse_int_list(rigid_set, "marking set")));
            std::optional<Rational> coeff = rigid_n > kRigidFullBasisMarkings
                                                ? rigid_component(m * sym::canonical_class(3, rigid_n), divisor)
                                                : rigid_component(m * canonical_class(3, rigid_n), divisor);
            if (json) {
                Json j;
                j["n"] = rigid_n;
                j["m"] = to_string(m);
                j["divisor"] = divisor.name();
                j["coefficient"] = coeff ? Json(to_string(*coeff)) : Json(nullptr);
                out << j.dump() << "\n";
            } else {
                out << (coeff ? to_string(*coeff) : std::string("none")) << "\n";
            }
            return coeff ? kExitOk : kExitMathFail;
        }

        if (cmd_cert->parsed()) {
            auto cert = certify(cert_n);
            if (json)
                out << certificate_json(cert).dump() << "\n";
            else
                print_certificate_table(out, cert);
            return cert.verdict == Verdict::Pass ? kExitOk : kExitMathFail;
        }

        if (cmd_sweep->parsed()) {
            auto certs = sweep(sweep_from, sweep_to);
            bool all_pass = true;
            if (json) {
                Json arr = Json::array();
                for (const auto& c : certs) arr.push_back(certificate_json(c));
                out << arr.dump() << "\n";
            }
            for (const auto& c : certs) {
                all_pass &= c.verdict == Verdict::Pass;
                if (!json)
                    out << "n=" << c.n << " " << verdict_name(c.verdict) << " " << c.binding << "="
                        << to_string(c.binding_value) << "\n";
            }
            return (strict && !all_pass) ? kExitMathFail : kExitOk;
        }

        if (cmd_rt->parsed()) {
            using namespace reid_tai;
            CyclicAction action(rt_order, parse_int_list(rt_exponents, "exponent list"));
            auto red = reduce_quasi_reflections(action);
            auto juniors = junior_elements(red.reduced);
            bool canonical = juniors.empty();
            std::optional<Rational> beta;
            if (!canonical) beta = minimal_relative_vanishing(red.reduced, 0);
            std::string summary;
            std::string route;
            if (canonical) {
                summary = "canonical";
                route = has_quasi_reflections(action) ? "no junior element after removing quasi-reflections"
                                                      : "no junior element";
            } else if (beta) {
                summary = "non-canonical; lifts given vanishing " + vanishing_phrase(*beta);
                route = "junior element of age " + to_string(juniors.front().age) +
                        " after removing quasi-reflections; lifting inequality with vanishing along x1";
            } else {
                summary = "non-canonical; vanishing along x1 alone does not make forms lift";
                route = "junior element with trivial action on x1";
            }
            std::optional<bool> lift_result;
            std::vector<int> b = parse_int_list(rt_vanishing, "vanishing list");
            if (!b.empty()) lift_result = reduce_then_lift(action, rt_m, b).lifts;

            if (json) {
                Json j = action_json(action);
                j["quasi_reflections"] = has_quasi_reflections(action);
                j["reduced"] = action_json(red.reduced);
                j["lambdas"] = red.lambdas;
                j["quasi_reflection_powers"] = red.quasi_reflection_powers;
                j["juniors"] = juniors_json(juniors);
                j["canonical"] = canonical;
                j["required_vanishing_b1_over_m"] = beta ? Json(to_string(*beta)) : Json(nullptr);
                j["summary"] = summary;
                j["route"] = route;
                if (lift_result) {
                    j["m"] = rt_m;
                    j["vanishing"] = b;
                    j["lifts"] = *lift_result;
                    j["vanishing_convention"] = "carried unchanged to the quotient coordinates";
                }
                out << j.dump() << "\n";
            } else {
                out << summary << " (" << route << ")\n";
                std::vector<std::pair<std::string, std::string>> rows{
                    {"action", action.to_string()},
                    {"reduced", red.reduced.to_string()},
                };
                std::string lam;
                for (std::size_t k = 0; k < red.lambdas.size(); ++k) lam += (k ? "," : "") + std::to_string(red.lambdas[k]);
                rows.emplace_back("lambdas", lam);
                for (const auto& jr : juniors) rows.emplace_back("junior power " + std::to_string(jr.power), to_string(jr.age));
                if (lift_result)
                    rows.emplace_back("lifts (m=" + std::to_string(rt_m) + ", vanishing carried unchanged)",
                                      *lift_result ? "yes" : "no");
                print_table(out, rows);
            }
            return kExitOk;
        }

        if (cmd_tail->parsed()) {
            using namespace reid_tai;
            std::vector<RootOfUnity> pattern;
            for (const auto& s : split(tail_eigs)) pattern.push_back(parse_root(s));
            auto c = classify_elliptic_tail(pattern);
            std::string summary = to_string(c.verdict);
            if (c.required_vanishing && c.verdict == TailVerdict::LiftsGivenVanishing)
                summary += " " + vanishing_phrase(*c.required_vanishing);
            if (json) {
                Json j;
                j["verdict"] = summary;
                j["route"] = to_string(c.route);
                j["action"] = action_json(c.action);
                j["reduced"] = action_json(c.reduction.reduced);
                j["juniors"] = juniors_json(c.juniors);
                j["j0_signature"] = c.j0_signature;
                out << j.dump() << "\n";
            } else {
                out << summary << " (" << to_string(c.route) << ")\n";
                if (c.j0_signature) out << "non-canonical signature of the j=0 elliptic tail locus\n";
            }
            return kExitOk;
        }

        if (cmd_table1->parsed()) {
            auto rows = reid_tai::table1_catalog();
            if (json) {
                Json arr = Json::array();
                for (const auto& r : rows) {
                    Json j;
                    j["case"] = r.case_number;
                    j["g"] = r.genus;
                    j["r"] = r.fixed_points;
                    j["s"] = r.swapped_pairs;
                    j["curve"] = r.curve;
                    j["automorphism"] = r.automorphism;
                    j["order"] = r.order;
                    std::vector<std::string> eigs;
                    for (const auto& z : r.eigenvalues) eigs.push_back(z.to_string());
                    j["eigenvalues"] = eigs;
                    j["age"] = to_string(r.age());
                    arr.push_back(std::move(j));
                }
                out << arr.dump() << "\n";
            } else {
                for (const auto& r : rows) {
                    std::string eigs;
                    for (std::size_t k = 0; k < r.eigenvalues.size(); ++k)
                        eigs += (k ? "," : "") + r.eigenvalues[k].to_string();
                    out << "(" << r.case_number << ") g=" << r.genus << " r=" << r.fixed_points << " s=" << r.swapped_pairs
                        << " curve: " << r.curve << "; " << r.automorphism << "; eigenvalues " << eigs
                        << "; age " << to_string(r.age()) << "\n";
                }
            }
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace mgn::cli
