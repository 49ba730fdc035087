#include "k3stab/cli.hpp"

#include "k3stab/charge.hpp"
#include "k3stab/error.hpp"
#include "k3stab/surface.hpp"
#include "k3stab/transport.hpp"
#include "k3stab/twist.hpp"
#include "k3stab/walls.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <ostream>

#ifndef K3STAB_DATA_DIR
#define K3STAB_DATA_DIR ""
#endif

namespace k3stab::cli {

namespace {

using json = nlohmann::ordered_json;

/// Thrown for malformed command-line values; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename F>
auto parse_arg(const std::string& flag, const std::string& text, F&& parser)
{
    try {
        return parser(text);
    } catch (const Error& ex) {
        throw UsageError(flag + ": " + ex.what());
    }
}

Rational rational_arg(const std::string& flag, const std::string& text)
{
    return parse_arg(flag, text, [](const std::string& s) { return parse_rational(s); });
}

DivisorClass class_arg(const std::string& flag, const std::string& text, const IntersectionLattice& lattice)
{
    DivisorClass d = parse_arg(flag, text, [](const std::string& s) { return parse_divisor(s); });
    if (d.size() != lattice.rank())
        throw UsageError(flag + ": expected " + std::to_string(lattice.rank()) + " coordinates, got " +
                         std::to_string(d.size()));
    return d;
}

MukaiVector mukai_arg(const std::string& flag, const std::string& text, const IntersectionLattice& lattice)
{
    MukaiVector v = parse_arg(flag, text, [](const std::string& s) { return parse_mukai(s); });
    if (v.c1.size() != lattice.rank())
        throw UsageError(flag + ": c1 needs " + std::to_string(lattice.rank()) + " coordinates");
    return v;
}

ChernCharacter chern_arg(const std::string& flag, const std::string& text, const IntersectionLattice& lattice)
{
    ChernCharacter ch = parse_arg(flag, text, [](const std::string& s) { return parse_chern(s); });
    if (ch.ch1.size() != lattice.rank())
        throw UsageError(flag + ": ch1 needs " + std::to_string(lattice.rank()) + " coordinates");
    return ch;
}

std::string resolve_surface_path(const std::string& path)
{
    namespace fs = std::filesystem;
    if (fs::exists(path))
        return path;
    for (const char* dir : {static_cast<const char*>(std::getenv("K3STAB_DATA_DIR")), K3STAB_DATA_DIR}) {
        if (!dir || !*dir)
            continue;
        const fs::path candidate = fs::path(dir) / path;
        if (fs::exists(candidate))
            return candidate.string();
    }
    return path;
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

json phase_json(const Phase& p)
{
    json j;
    if (p.exactness == PhaseExactness::Exact) {
        // Exact phases are k/4; print them as rationals.
        Rational quarter(static_cast<long>(p.value * 4), 4);
        quarter.canonicalize();
        j["phase"] = to_string(quarter);
        j["exact"] = true;
    } else {
        j["phase"] = format_double(p.value);
        j["exact"] = false;
    }
    return j;
}

json g_json(const Gl2Factor& g)
{
    return json::array({json::array({to_string(g.a()), to_string(g.b())}),
                        json::array({to_string(g.c()), to_string(g.d())})});
}

json threshold_json(const RankThreshold& t)
{
    json j;
    switch (t.kind) {
    case RankThreshold::Kind::Value:
        j["kind"] = "value";
        j["V"] = to_string(t.value);
        break;
    case RankThreshold::Kind::None:
        j["kind"] = "none";
        break;
    case RankThreshold::Kind::Unbounded:
        j["kind"] = "unbounded";
        break;
    }
    j["supremum"] = to_string(t.supremum);
    return j;
}

json error_json(const Error& ex)
{
    json values = json::object();
    for (const auto& [k, v] : ex.values())
        values[k] = v;
    return {{"error", {{"code", std::string(code_name(ex.code()))}, {"clause", ex.clause()}, {"values", values}}}};
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows)
{
    if (j.is_object()) {
        if (j.empty())
            rows.emplace_back(prefix, "{}");
        for (const auto& item : j.items())
            flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), rows);
    } else if (j.is_array()) {
        if (j.empty())
            rows.emplace_back(prefix, "[]");
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else if (j.is_string()) {
        rows.emplace_back(prefix, j.get<std::string>());
    } else {
        rows.emplace_back(prefix, j.dump());
    }
}

void emit(const json& j, bool as_json, std::ostream& out)
{
    if (as_json) {
        out << j.dump() << '\n';
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(j, "", rows);
    std::size_t width = 0;
    for (const auto& row : rows)
        width = std::max(width, row.first.size());
    for (const auto& [key, value] : rows)
        out << key << std::string(width - key.size() + 2, ' ') << value << '\n';
}

/// Options shared by every command that reads a surface file.
struct SurfaceOption {
    std::string path;
    bool allow_invalid = false;

    void attach(CLI::App* app)
    {
        app->add_option("--surface", path, "Surface file (JSON)")->required();
    }

    SurfaceModel load() const { return load_surface_file(resolve_surface_path(path), allow_invalid); }
};

struct Command {
    CLI::App* app;
    std::function<json()> handler;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Numerical stability-condition toolkit for K3 surfaces with a (-2)-curve", "k3stab"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format;
    app.add_option("--format", format, "Output format: table or json (default from K3STAB_FORMAT, else table)")
        ->check(CLI::IsMember({"table", "json"}));
    bool allow_invalid = false;
    app.add_flag("--allow-invalid", allow_invalid, "Load surface files even if they fail validation");

    std::vector<Command> commands;
    // Options are captured by reference in the handlers; the storage lives in this frame.
    SurfaceOption surface_opt;
    std::string s_mukai, s_t = "0", s_ch, s_v, s_nu, s_b, s_alpha, s_a, s_b2, s_kind = "rank2";
    std::string s_p, s_omega_c, s_dbar, s_ubar, s_omega, s_vbar, s_omegabar, s_bbar, s_g, s_r = "2";
    std::string s_n, s_c, s_d, s_s, s_kernel_phase;
    long q = 4, y = 2, height = 6, hom_a = 0, hom_b = 0;
    bool on_curve = false, inverse = false, sigma_b = false, with_d = false;

    auto t_value = [&] {
        return parse_arg("--t", s_t, [](const std::string& s) {
            const Rational r = parse_rational(s);
            if (r.get_den() != 1 || !r.get_num().fits_slong_p())
                throw Error(ErrorCode::ParseError, "expected an integer", {{"text", s}});
            return r.get_num().get_si();
        });
    };
    auto params_from = [&](const SurfaceModel& m, const std::string& v, const std::string& nu, const std::string& b,
                           const char* vflag, const char* nuflag, const char* bflag) {
        const Rational vv = rational_arg(vflag, v);
        DivisorClass nuc = nu.empty() ? m.nu : class_arg(nuflag, nu, m.lattice);
        DivisorClass bc = b.empty() ? DivisorClass::zero(m.lattice.rank()) : class_arg(bflag, b, m.lattice);
        return ChargeParams(vv, std::move(nuc), std::move(bc));
    };

    // ---- surface ----
    auto* surface = app.add_subcommand("surface", "Surface models")->require_subcommand(1);
    {
        auto* validate = surface->add_subcommand("validate", "Check every surface invariant");
        surface_opt.attach(validate);
        commands.push_back({validate, [&] {
            const SurfaceModel m = load_surface_file(resolve_surface_path(surface_opt.path), true);
            const auto violations = validate_surface(m);
            json viol = json::array();
            for (const auto& v : violations)
                viol.push_back({{"clause", v.clause}, {"message", v.message}});
            json j;
            j["name"] = m.name;
            j["valid"] = violations.empty();
            j["violations"] = viol;
            return j;
        }});

        auto* example = surface->add_subcommand("example", "Emit a bundled example surface file");
        example->add_option("--kind", s_kind, "rank2 | rank3 | rank3-touching | minimal")
            ->check(CLI::IsMember({"rank2", "rank3", "rank3-touching", "minimal"}));
        example->add_option("--q", q, "C1.C2 for rank2");
        example->add_option("--y", y, "Even positive scale for rank2");
        example->add_flag("--with-d", with_d, "Fill in D = (nu - C)/2 (requires nu^2 = 2)");
        commands.push_back({example, [&] {
            SurfaceModel m = s_kind == "rank2"            ? build_example_rank2(q, y)
                             : s_kind == "rank3"          ? build_example_rank3()
                             : s_kind == "rank3-touching" ? build_example_rank3_touching()
                                                          : build_example_minimal();
            if (with_d)
                m = with_d_class(std::move(m));
            return json::parse(save_surface(m));
        }});

        auto* dclass = surface->add_subcommand("d-class", "D = (nu - C)/e for a surface with nu^2 = 2");
        surface_opt.attach(dclass);
        commands.push_back({dclass, [&] {
            const SurfaceModel m = surface_opt.load();
            return json{{"D", to_string(build_d_class(m))}};
        }});
    }

    // ---- twist ----
    auto* twist = app.add_subcommand("twist", "Spherical twist by O_C(t) (default action: mukai)");
    twist->require_subcommand(0, 1);
    auto twist_mukai_handler = [&] {
        const SurfaceModel m = surface_opt.load();
        const MukaiVector v = mukai_arg("--mukai", s_mukai, m.lattice);
        const auto tw = TwistParams::for_curve(m.lattice, m.curve_c, t_value());
        return json{{"mukai", to_string(twist_mukai(m.lattice, v, tw))}};
    };
    {
        twist->add_option("--surface", surface_opt.path, "Surface file (JSON)");
        twist->add_option("--mukai", s_mukai, "Mukai vector r,(c1),s");
        twist->add_option("--t", s_t, "Twist O_C(t)");
        commands.push_back({twist, twist_mukai_handler});

        auto* mukai = twist->add_subcommand("mukai", "Reflect a Mukai vector");
        surface_opt.attach(mukai);
        mukai->add_option("--mukai", s_mukai, "Mukai vector r,(c1),s")->required();
        mukai->add_option("--t", s_t, "Twist O_C(t)");
        commands.push_back({mukai, twist_mukai_handler});

        auto* inv = twist->add_subcommand("invariants", "Closed-form (n, c, d, s) after the twist");
        inv->add_option("--n", s_n, "Rank n")->required();
        inv->add_option("--c", s_c, "c1.C")->required();
        inv->add_option("--d", s_d, "c1.D")->required();
        inv->add_option("--s", s_s, "Mukai degree s")->required();
        inv->add_option("--t", s_t, "Twist O_C(t)");
        commands.push_back({inv, [&] {
            const CurveInvariants out = twist_invariants(
                {rational_arg("--n", s_n), rational_arg("--c", s_c), rational_arg("--d", s_d), rational_arg("--s", s_s)},
                t_value());
            return json{{"n", to_string(out.n)}, {"c", to_string(out.c)}, {"d", to_string(out.d)}, {"s", to_string(out.s)}};
        }});

        auto* sky = twist->add_subcommand("skyscraper", "Cohomology sheaves of the twisted skyscraper O_p");
        sky->add_flag("--on-curve", on_curve, "p lies on C");
        sky->add_flag("--inverse", inverse, "Use the inverse twist");
        sky->add_option("--t", s_t, "Twist O_C(t)");
        sky->add_option("--surface", surface_opt.path, "Optional surface; adds the alternating Mukai sum");
        commands.push_back({sky, [&] {
            const CohomologyTable table =
                skyscraper_twist(on_curve, t_value(), inverse ? TwistDirection::Inverse : TwistDirection::Forward);
            json rows = json::array();
            for (const auto& [deg, label] : table)
                rows.push_back({{"degree", deg}, {"sheaf", to_string(label)}});
            json j{{"cohomology", rows}};
            if (!surface_opt.path.empty()) {
                const SurfaceModel m = surface_opt.load();
                j["mukai_sum"] = to_string(alternating_mukai_sum(table, m.curve_c));
            }
            return j;
        }});
    }

    // ---- charge ----
    auto* charge = app.add_subcommand("charge", "Central charges, phases and slopes")->require_subcommand(1);
    {
        auto charge_leaf = [&](const char* name, const char* desc) {
            auto* sub = charge->add_subcommand(name, desc);
            surface_opt.attach(sub);
            sub->add_option("--V", s_v, "V > 0")->required();
            sub->add_option("--nu", s_nu, "Divisor class (default: the surface nu)");
            sub->add_option("--B", s_b, "B-field class (default 0)");
            auto* ch = sub->add_option("--ch", s_ch, "Chern character ch0,(ch1),ch2");
            auto* mk = sub->add_option("--mukai", s_mukai, "Mukai vector r,(c1),s");
            ch->excludes(mk);
            return sub;
        };
        auto input_ch = [&](const SurfaceModel& m) {
            if (!s_ch.empty())
                return chern_arg("--ch", s_ch, m.lattice);
            if (!s_mukai.empty())
                return chern_from_mukai(mukai_arg("--mukai", s_mukai, m.lattice));
            throw UsageError("one of --ch or --mukai is required");
        };

        auto* eval = charge_leaf("eval", "Z_{V,nu,B}");
        commands.push_back({eval, [&] {
            const SurfaceModel m = surface_opt.load();
            const auto p = params_from(m, s_v, s_nu, s_b, "--V", "--nu", "--B");
            const ComplexExact z = central_charge(m.lattice, p, input_ch(m));
            return json{{"re", to_string(z.re)}, {"im", to_string(z.im)}};
        }});

        auto* ph = charge_leaf("phase", "(1/pi) arg Z");
        ph->add_option("--kernel-phase", s_kernel_phase, "Phase assigned when Z = 0 (rational in (0,1])");
        ph->add_flag("--sigma-b", sigma_b, "Assign 1/2 to positive multiples of ch(O_C(-1))");
        commands.push_back({ph, [&] {
            const SurfaceModel m = surface_opt.load();
            const auto p = params_from(m, s_v, s_nu, s_b, "--V", "--nu", "--B");
            const ChernCharacter ch = input_ch(m);
            std::optional<Phase> rule;
            if (!s_kernel_phase.empty()) {
                const Rational k = rational_arg("--kernel-phase", s_kernel_phase);
                if (k <= 0 || k > 1)
                    throw UsageError("--kernel-phase must lie in (0, 1]");
                rule = Phase{to_double(k), PhaseExactness::Exact};
            } else if (sigma_b) {
                rule = sigma_b_kernel_phase(ch, m.curve_c);
            }
            return phase_json(phase(m.lattice, p, ch, rule));
        }});

        auto* sl = charge_leaf("slope", "rho = -Re Z / Im Z");
        commands.push_back({sl, [&] {
            const SurfaceModel m = surface_opt.load();
            const auto p = params_from(m, s_v, s_nu, s_b, "--V", "--nu", "--B");
            return json{{"slope", to_string(slope(m.lattice, p, input_ch(m)))}};
        }});

        auto* ker = charge_leaf("kernel", "Does Z vanish?");
        commands.push_back({ker, [&] {
            const SurfaceModel m = surface_opt.load();
            const auto p = params_from(m, s_v, s_nu, s_b, "--V", "--nu", "--B");
            return json{{"kernel", kernel_contains(m.lattice, p, input_ch(m))}};
        }});

        auto* lim = charge->add_subcommand("limit-phase", "(1/pi) arccot(2p/(omega.C))");
        lim->add_option("--p", s_p, "Ratio u/epsilon (rational, +inf or -inf)")->required();
        lim->add_option("--omega-c", s_omega_c, "omega.C > 0")->required();
        commands.push_back({lim, [&] {
            const ExtendedRational p = parse_arg("--p", s_p, [](const std::string& s) { return parse_extended(s); });
            return phase_json(limit_phase(p, rational_arg("--omega-c", s_omega_c)));
        }});
    }

    // ---- transport ----
    auto* transport = app.add_subcommand("transport", "Charge transport under ST_{O_C(t)}")->require_subcommand(1);
    {
        auto* c1 = transport->add_subcommand("case1", "t = -1, B = 0: solve D_omega from D_bar");
        c1->add_option("--D-bar", s_dbar, "D-coordinate of omega_bar, > -1")->required();
        commands.push_back({c1, [&] {
            const auto sol = solve_case_one(rational_arg("--D-bar", s_dbar));
            return json{{"D_omega", to_string(sol.d_omega)}, {"g", g_json(sol.g)}};
        }});

        auto* c2 = transport->add_subcommand("case2", "D_bar = 0: B = -(t+1)C");
        surface_opt.attach(c2);
        c2->add_option("--t", s_t, "Twist O_C(t)");
        commands.push_back({c2, [&] {
            const SurfaceModel m = surface_opt.load();
            const auto sol = solve_case_two(m.curve_c, t_value());
            return json{{"B", to_string(sol.b)}, {"g", g_json(sol.g)}};
        }});

        auto* c3 = transport->add_subcommand("case3", "t = -1, D_bar = 0, B_bar = u_bar C: u = -u_bar");
        c3->add_option("--u-bar", s_ubar, "B_bar = u_bar C")->required();
        commands.push_back({c3, [&] {
            const auto sol = solve_case_three(rational_arg("--u-bar", s_ubar));
            return json{{"u", to_string(sol.u)}, {"g", g_json(sol.g)}};
        }});

        auto* ver = transport->add_subcommand("verify", "Check Z(ST(E)) = g Z_bar(E) on a spanning set");
        surface_opt.attach(ver);
        ver->add_option("--t", s_t, "Twist O_C(t)");
        ver->add_option("--V", s_v, "V > 0 after the twist")->required();
        ver->add_option("--omega", s_omega, "omega after the twist")->required();
        ver->add_option("--B", s_b, "B after the twist (default 0)");
        ver->add_option("--V-bar", s_vbar, "V_bar > 0")->required();
        ver->add_option("--omega-bar", s_omegabar, "omega_bar")->required();
        ver->add_option("--B-bar", s_bbar, "B_bar (default 0)");
        ver->add_option("--g", s_g, "a,b,c,d (row-major)")->required();
        commands.push_back({ver, [&] {
            const SurfaceModel m = surface_opt.load();
            const auto p = params_from(m, s_v, s_omega, s_b, "--V", "--omega", "--B");
            const auto pb = params_from(m, s_vbar, s_omegabar, s_bbar, "--V-bar", "--omega-bar", "--B-bar");
            const DivisorClass gd = parse_arg("--g", s_g, [](const std::string& s) { return parse_divisor(s); });
            if (gd.size() != 4)
                throw UsageError("--g needs four entries a,b,c,d");
            const Gl2Factor g(gd[0], gd[1], gd[2], gd[3]);
            return json{{"holds", verify_transport(m.lattice, m.curve_c, p, pb, g, t_value())}};
        }});

        auto* nn = transport->add_subcommand("non-nef", "b = -a/(a+1)");
        nn->add_option("--a", s_a, "a > 0")->required();
        nn->add_option("--surface", surface_opt.path, "Optional surface with D; adds nu_b and nu_b.C");
        commands.push_back({nn, [&] {
            const Rational b = non_nef_image(rational_arg("--a", s_a));
            json j{{"b", to_string(b)}};
            if (!surface_opt.path.empty()) {
                const SurfaceModel m = surface_opt.load();
                const DivisorClass d = m.d_class ? *m.d_class : build_d_class(m);
                const DivisorClass nu_b = m.nu + b * d;
                j["nu_b"] = to_string(nu_b);
                j["nu_b.C"] = to_string(m.lattice.pair(nu_b, m.curve_c));
            }
            return j;
        }});

        auto* co = transport->add_subcommand("coords", "D_omega, G_omega, psi of a class omega");
        surface_opt.attach(co);
        co->add_option("--omega", s_omega, "Divisor class with C-coefficient 1")->required();
        commands.push_back({co, [&] {
            const SurfaceModel m = surface_opt.load();
            const DivisorClass d = m.d_class ? *m.d_class : build_d_class(m);
            const CurveFrame frame = CurveFrame::make(m.lattice, m.curve_c, d);
            const OmegaCoords c = coords_from_divisor(m.lattice, frame, class_arg("--omega", s_omega, m.lattice));
            return json{{"D_omega", to_string(c.d_omega)}, {"G_omega", to_string(c.g_omega)}, {"psi", to_string(c.psi)}};
        }});
    }

    // ---- walls ----
    auto* walls = app.add_subcommand("walls", "Walls along the V-ray and the rank bound")->require_subcommand(1);
    {
        auto* val = walls->add_subcommand("value", "V where Z(A) and Z(L) align");
        surface_opt.attach(val);
        val->add_option("--A", s_a, "Mukai vector of the subobject")->required();
        val->add_option("--L", s_b2, "Mukai vector of the line bundle")->required();
        val->add_option("--nu", s_nu, "Divisor class (default: the surface nu)");
        commands.push_back({val, [&] {
            const SurfaceModel m = surface_opt.load();
            const DivisorClass nu = s_nu.empty() ? m.nu : class_arg("--nu", s_nu, m.lattice);
            const auto w = wall_value(m.lattice, mukai_arg("--A", s_a, m.lattice), mukai_arg("--L", s_b2, m.lattice), nu);
            if (!w)
                return json{{"kind", "none"}};
            if (w->kind == WallKind::DegenerateAllV)
                return json{{"kind", "degenerate-all-V"}};
            return json{{"kind", "proper"}, {"V", to_string(w->v_value)}};
        }});

        auto* rb = walls->add_subcommand("rank-bound", "Upper bound on ch0 of a destabilizing subobject");
        surface_opt.attach(rb);
        rb->add_option("--alpha", s_alpha, "c1(L)")->required();
        rb->add_option("--V", s_v, "V > 0")->required();
        rb->add_option("--nu", s_nu, "Divisor class (default: the surface nu)");
        commands.push_back({rb, [&] {
            const SurfaceModel m = surface_opt.load();
            const DivisorClass nu = s_nu.empty() ? m.nu : class_arg("--nu", s_nu, m.lattice);
            const auto res = rank_bound(m.lattice, class_arg("--alpha", s_alpha, m.lattice), nu, rational_arg("--V", s_v));
            json j{{"bound", to_string(res.bound)}};
            if (!res.bound.is_rational())
                j["approx"] = format_double(res.bound.to_double());
            return j;
        }});

        auto* th = walls->add_subcommand("threshold", "sup{V : bound(V) >= r}");
        surface_opt.attach(th);
        th->add_option("--alpha", s_alpha, "c1(L)")->required();
        th->add_option("--r", s_r, "Rank r >= 1 (default 2)");
        th->add_option("--nu", s_nu, "Divisor class (default: the surface nu)");
        commands.push_back({th, [&] {
            const SurfaceModel m = surface_opt.load();
            const DivisorClass nu = s_nu.empty() ? m.nu : class_arg("--nu", s_nu, m.lattice);
            const Rational r = rational_arg("--r", s_r);
            if (r.get_den() != 1 || !r.get_num().fits_slong_p())
                throw UsageError("--r must be an integer");
            return threshold_json(rank_threshold(m.lattice, class_arg("--alpha", s_alpha, m.lattice), nu, r.get_num().get_si()));
        }});

        auto* bg = walls->add_subcommand("bg", "<v,v> + 2");
        surface_opt.attach(bg);
        bg->add_option("--mukai", s_mukai, "Mukai vector r,(c1),s")->required();
        commands.push_back({bg, [&] {
            const SurfaceModel m = surface_opt.load();
            const Rational d = bg_discriminant(m.lattice, mukai_arg("--mukai", s_mukai, m.lattice));
            return json{{"discriminant", to_string(d)}, {"admissible", d >= 0}};
        }});

        auto* hit = walls->add_subcommand("hit", "ch2 <= ch1^2/(2ch0) <= (nu.ch1)^2/(2ch0 nu^2)");
        surface_opt.attach(hit);
        hit->add_option("--ch", s_ch, "Chern character ch0,(ch1),ch2 with ch0 > 0")->required();
        hit->add_option("--nu", s_nu, "Divisor class (default: the surface nu)");
        commands.push_back({hit, [&] {
            const SurfaceModel m = surface_opt.load();
            const DivisorClass nu = s_nu.empty() ? m.nu : class_arg("--nu", s_nu, m.lattice);
            const HitChain c = hit_bound_chain(m.lattice, chern_arg("--ch", s_ch, m.lattice), nu);
            return json{{"ch2", to_string(c.ch2)}, {"bg_bound", to_string(c.bg_bound)},
                        {"hit_bound", to_string(c.hit_bound)}, {"holds", c.holds()}};
        }});
    }

    // ---- screen ----
    auto* screen = app.add_subcommand("screen", "Semistability screen for a line bundle with alpha.C = 0");
    surface_opt.attach(screen);
    screen->add_option("--alpha", s_alpha, "c1(L)")->required();
    screen->add_option("--height", height, "Enumeration height for curve classes")->check(CLI::NonNegativeNumber);
    commands.push_back({screen, [&] {
        const SurfaceModel m = surface_opt.load();
        const ScreenReport rep =
            semistable_screen(m, class_arg("--alpha", s_alpha, m.lattice), static_cast<unsigned>(height));
        const ScreenCertificate& cert = rep.certificate;
        json gens = json::array();
        for (const auto& g : cert.generator_intersections)
            gens.push_back({{"generator", to_string(g.generator)}, {"dot_C", to_string(g.dot_c)}});
        json survivors = json::array();
        for (const auto& s : cert.survivors)
            survivors.push_back(to_string(s.curve));
        json j;
        j["verdict"] = to_string(rep.verdict);
        if (rep.failing_clause)
            j["failing_clause"] = std::string(1, *rep.failing_clause);
        j["reason"] = rep.reason;
        j["certificate"] = {{"generator_intersections", gens},
                            {"survivors", survivors},
                            {"slope_gap", to_string(cert.slope_gap)},
                            {"higher_rank", threshold_json(cert.higher_rank)},
                            {"higher_rank_status", to_string(cert.higher_rank_status)},
                            {"modeling_note", cert.modeling_note}};
        return j;
    }});

    // ---- ext ----
    auto* ext = app.add_subcommand("ext", "Ext groups on the (-2)-curve")->require_subcommand(1);
    {
        auto* oc = ext->add_subcommand("on-curve", "dim Ext^i(O_C(a), O_C(b))");
        oc->add_option("--a", hom_a, "First twist a in O_C(a)")->required();
        oc->add_option("--b", hom_b, "Second twist b in O_C(b)")->required();
        commands.push_back({oc, [&] {
            const HomExtOnCurve h = hom_ext_on_c(hom_a, hom_b);
            return json{{"hom", h.hom}, {"ext1", h.ext1}, {"ext2", h.ext2}, {"chi", h.hom - h.ext1 + h.ext2}};
        }});
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return Success;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return Success;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return UsageFailure;
    }

    bool as_json = false;
    if (format.empty()) {
        const char* env = std::getenv("K3STAB_FORMAT");
        const std::string env_format = env ? env : "";
        if (!env_format.empty() && env_format != "table" && env_format != "json") {
            err << "K3STAB_FORMAT must be table or json, got " << env_format << '\n';
            return UsageFailure;
        }
        as_json = env_format == "json";
    } else {
        as_json = format == "json";
    }
    surface_opt.allow_invalid = allow_invalid;

    // Deepest parsed command wins (a parent with a default action is listed before its children).
    const Command* chosen = nullptr;
    for (const auto& cmd : commands)
        if (cmd.app->parsed())
            chosen = &cmd;
    if (!chosen) {
        err << "no command selected\n";
        return UsageFailure;
    }
    if (chosen->app == twist && (s_mukai.empty() || surface_opt.path.empty())) {
        err << "twist: --surface and --mukai are required\n";
        return UsageFailure;
    }

    try {
        emit(chosen->handler(), as_json, out);
        return Success;
    } catch (const UsageError& e) {
        err << e.what() << '\n';
        return UsageFailure;
    } catch (const Error& e) {
        emit(error_json(e), as_json, out);
        return DomainFailure;
    }
}

}  // namespace k3stab::cli
