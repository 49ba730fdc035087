#include "k3stab/charge.hpp"
#include "k3stab/error.hpp"
#include "k3stab/lattice.hpp"
#include "k3stab/mukai.hpp"
#include "k3stab/surface.hpp"
#include "k3stab/transport.hpp"
#include "k3stab/twist.hpp"
#include "k3stab/walls.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <limits>

namespace py = pybind11;

// Rationals cross the boundary as fractions.Fraction. Integers and strings such
// as "3/2" are accepted on input; floats are rejected so nothing inexact slips in.
namespace pybind11::detail {

template <>
struct type_caster<k3stab::Rational> {
    PYBIND11_TYPE_CASTER(k3stab::Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool)
    {
        if (!src || PyFloat_Check(src.ptr()) || PyBool_Check(src.ptr()))
            return false;
        try {
            if (py::isinstance<py::str>(src)) {
                value = k3stab::parse_rational(src.cast<std::string>());
                return true;
            }
            if (!py::hasattr(src, "numerator") || !py::hasattr(src, "denominator"))
                return false;
            const std::string num = py::str(src.attr("numerator"));
            const std::string den = py::str(src.attr("denominator"));
            value = k3stab::parse_rational(num + "/" + den);
            return true;
        } catch (const k3stab::Error&) {
            return false;
        }
    }

    static handle cast(const k3stab::Rational& q, return_value_policy, handle)
    {
        static py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(k3stab::to_string(q)).release();
    }
};

template <>
struct type_caster<k3stab::DivisorClass> {
    PYBIND11_TYPE_CASTER(k3stab::DivisorClass, const_name("list[fractions.Fraction]"));

    bool load(handle src, bool convert)
    {
        if (!src || !py::isinstance<py::sequence>(src) || py::isinstance<py::str>(src))
            return false;
        std::vector<k3stab::Rational> coords;
        for (handle item : py::reinterpret_borrow<py::sequence>(src)) {
            make_caster<k3stab::Rational> inner;
            if (!inner.load(item, convert))
                return false;
            coords.push_back(cast_op<k3stab::Rational&&>(std::move(inner)));
        }
        value = k3stab::DivisorClass(std::move(coords));
        return true;
    }

    static handle cast(const k3stab::DivisorClass& d, return_value_policy policy, handle parent)
    {
        py::list out;
        for (const auto& q : d.coords())
            out.append(py::reinterpret_steal<py::object>(make_caster<k3stab::Rational>::cast(q, policy, parent)));
        return out.release();
    }
};

// Extended rationals map to Fraction when finite and to +/- math.inf otherwise.
template <>
struct type_caster<k3stab::ExtendedRational> {
    PYBIND11_TYPE_CASTER(k3stab::ExtendedRational, const_name("fractions.Fraction | float"));

    bool load(handle src, bool convert)
    {
        if (src && PyFloat_Check(src.ptr())) {
            const double x = PyFloat_AsDouble(src.ptr());
            if (!std::isinf(x))
                return false;
            value = x > 0 ? k3stab::ExtendedRational::plus_infinity() : k3stab::ExtendedRational::minus_infinity();
            return true;
        }
        make_caster<k3stab::Rational> inner;
        if (!inner.load(src, convert))
            return false;
        value = k3stab::ExtendedRational(cast_op<k3stab::Rational&&>(std::move(inner)));
        return true;
    }

    static handle cast(const k3stab::ExtendedRational& q, return_value_policy policy, handle parent)
    {
        if (!q.is_finite())
            return PyFloat_FromDouble(q.infinity_sign() * std::numeric_limits<double>::infinity());
        return make_caster<k3stab::Rational>::cast(q.value(), policy, parent);
    }
};

}  // namespace pybind11::detail

namespace {

using namespace k3stab;

py::dict phase_dict(const Phase& p)
{
    py::dict out;
    out["value"] = p.value;
    out["exact"] = p.exactness == PhaseExactness::Exact;
    return out;
}

py::tuple complex_tuple(const ComplexExact& z) { return py::make_tuple(z.re, z.im); }

ChargeParams make_params(const Rational& v, const DivisorClass& nu, const std::optional<DivisorClass>& b)
{
    return b ? ChargeParams(v, nu, *b) : ChargeParams(v, nu);
}

Gl2Factor make_gl2(const std::tuple<Rational, Rational, Rational, Rational>& m)
{
    return {std::get<0>(m), std::get<1>(m), std::get<2>(m), std::get<3>(m)};
}

py::dict gl2_dict(const Gl2Factor& g)
{
    py::dict out;
    out["matrix"] = py::make_tuple(g.a(), g.b(), g.c(), g.d());
    out["text"] = to_string(g);
    return out;
}

py::dict threshold_dict(const RankThreshold& t)
{
    py::dict out;
    switch (t.kind) {
    case RankThreshold::Kind::Value: out["kind"] = "value"; out["value"] = t.value; break;
    case RankThreshold::Kind::None: out["kind"] = "none"; out["value"] = py::none(); break;
    case RankThreshold::Kind::Unbounded: out["kind"] = "unbounded"; out["value"] = py::none(); break;
    }
    out["supremum"] = t.supremum;
    return out;
}

py::dict screen_dict(const ScreenReport& report)
{
    const auto& cert = report.certificate;
    py::list gens;
    for (const auto& g : cert.generator_intersections) {
        py::dict row;
        row["generator"] = g.generator;
        row["dot_c"] = g.dot_c;
        gens.append(row);
    }
    py::list survivors;
    for (const auto& s : cert.survivors) {
        py::dict row;
        row["curve"] = s.curve;
        row["coefficients"] = s.coefficients;
        survivors.append(row);
    }
    py::dict certificate;
    certificate["generator_intersections"] = gens;
    certificate["survivors"] = survivors;
    certificate["slope_gap"] = cert.slope_gap;
    certificate["higher_rank"] = threshold_dict(cert.higher_rank);
    certificate["higher_rank_status"] = to_string(cert.higher_rank_status);
    certificate["modeling_note"] = cert.modeling_note;

    py::dict out;
    out["verdict"] = to_string(report.verdict);
    out["failing_clause"] = report.failing_clause ? py::object(py::str(std::string(1, *report.failing_clause)))
                                                  : py::object(py::none());
    out["reason"] = report.reason;
    out["certificate"] = certificate;
    return out;
}

}  // namespace

PYBIND11_MODULE(_k3stab, m)
{
    m.doc() = "Exact numerics for stability conditions on K3 surfaces with a (-2)-curve.";

    // The exception type lives as long as the interpreter, so the handle is kept without a reference count.
    static py::handle error_type = py::exception<Error>(m, "K3StabError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error_type)(e.what());
            exc.attr("code") = std::string(code_name(e.code()));
            exc.attr("clause") = e.clause();
            py::dict values;
            for (const auto& [k, v] : e.values())
                values[py::str(k)] = v;
            exc.attr("values") = values;
            PyErr_SetObject(error_type.ptr(), exc.ptr());
        }
    });

    // Lattice and vectors.
    py::class_<IntersectionLattice>(m, "IntersectionLattice")
        .def(py::init<std::vector<std::string>, std::vector<std::vector<std::int64_t>>>(), py::arg("basis_names"),
             py::arg("gram"))
        .def_property_readonly("rank", &IntersectionLattice::rank)
        .def_property_readonly("basis_names", &IntersectionLattice::basis_names)
        .def_property_readonly("gram", &IntersectionLattice::gram_rows)
        .def("pair", &IntersectionLattice::pair, py::arg("a"), py::arg("b"))
        .def("square", &IntersectionLattice::square, py::arg("a"))
        .def("__eq__", [](const IntersectionLattice& a, const IntersectionLattice& b) { return a == b; });

    py::class_<MukaiVector>(m, "MukaiVector")
        .def(py::init([](Rational r, DivisorClass c1, Rational s) { return MukaiVector{r, c1, s}; }), py::arg("r"),
             py::arg("c1"), py::arg("s"))
        .def_readwrite("r", &MukaiVector::r)
        .def_readwrite("c1", &MukaiVector::c1)
        .def_readwrite("s", &MukaiVector::s)
        .def("__eq__", [](const MukaiVector& a, const MukaiVector& b) { return a == b; })
        .def("__repr__", [](const MukaiVector& v) { return "MukaiVector(" + to_string(v) + ")"; })
        .def("__str__", [](const MukaiVector& v) { return to_string(v); });

    py::class_<ChernCharacter>(m, "ChernCharacter")
        .def(py::init([](Rational ch0, DivisorClass ch1, Rational ch2) { return ChernCharacter{ch0, ch1, ch2}; }),
             py::arg("ch0"), py::arg("ch1"), py::arg("ch2"))
        .def_readwrite("ch0", &ChernCharacter::ch0)
        .def_readwrite("ch1", &ChernCharacter::ch1)
        .def_readwrite("ch2", &ChernCharacter::ch2)
        .def("__eq__", [](const ChernCharacter& a, const ChernCharacter& b) { return a == b; })
        .def("__repr__", [](const ChernCharacter& ch) { return "ChernCharacter(" + to_string(ch) + ")"; })
        .def("__str__", [](const ChernCharacter& ch) { return to_string(ch); });

    m.def("mukai_from_chern", &mukai_from_chern, py::arg("ch"));
    m.def("chern_from_mukai", &chern_from_mukai, py::arg("v"));
    m.def("mukai_pairing", &mukai_pairing, py::arg("lattice"), py::arg("v"), py::arg("w"));
    m.def("euler_chi", &euler_chi, py::arg("lattice"), py::arg("v"), py::arg("w"));
    m.def("is_spherical", &is_spherical, py::arg("lattice"), py::arg("v"));
    m.def("twisted_chern", &twisted_chern, py::arg("lattice"), py::arg("ch"), py::arg("b"));
    m.def(
        "hom_ext_on_c",
        [](long a, long b) {
            const auto h = hom_ext_on_c(a, b);
            return py::make_tuple(h.hom, h.ext1, h.ext2);
        },
        py::arg("a"), py::arg("b"));

    // Surfaces.
    py::class_<SurfaceModel>(m, "SurfaceModel")
        .def_readonly("name", &SurfaceModel::name)
        .def_readonly("lattice", &SurfaceModel::lattice)
        .def_readonly("curve_c", &SurfaceModel::curve_c)
        .def_readonly("nu", &SurfaceModel::nu)
        .def_readonly("effective_generators", &SurfaceModel::effective_generators)
        .def_readonly("e", &SurfaceModel::e)
        .def_readonly("d_class", &SurfaceModel::d_class);

    m.def("load_surface", &load_surface, py::arg("text"), py::arg("allow_invalid") = false);
    m.def("load_surface_file", &load_surface_file, py::arg("path"), py::arg("allow_invalid") = false);
    m.def("save_surface", &save_surface, py::arg("surface"));
    m.def(
        "validate_surface",
        [](const SurfaceModel& s) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : validate_surface(s))
                out.emplace_back(v.clause, v.message);
            return out;
        },
        py::arg("surface"));
    m.def("build_example_rank2", &build_example_rank2, py::arg("q"), py::arg("y"));
    m.def("build_example_rank3", &build_example_rank3);
    m.def("build_example_rank3_touching", &build_example_rank3_touching);
    m.def("build_example_minimal", &build_example_minimal);
    m.def("build_d_class", &build_d_class, py::arg("surface"));
    m.def("with_d_class", &with_d_class, py::arg("surface"));

    // Twists.
    m.def(
        "twist_mukai",
        [](const IntersectionLattice& lat, const MukaiVector& v, const DivisorClass& c, long t) {
            return twist_mukai(lat, v, TwistParams::for_curve(lat, c, t));
        },
        py::arg("lattice"), py::arg("v"), py::arg("curve_c"), py::arg("t"));
    m.def(
        "twist_invariants",
        [](Rational n, Rational c, Rational d, Rational s, long t) {
            const auto out = twist_invariants({n, c, d, s}, t);
            return py::make_tuple(out.n, out.c, out.d, out.s);
        },
        py::arg("n"), py::arg("c"), py::arg("d"), py::arg("s"), py::arg("t"));
    m.def(
        "skyscraper_twist",
        [](bool on_curve, long t, bool inverse) {
            std::map<int, std::string> out;
            for (const auto& [deg, label] :
                 skyscraper_twist(on_curve, t, inverse ? TwistDirection::Inverse : TwistDirection::Forward))
                out[deg] = to_string(label);
            return out;
        },
        py::arg("on_curve"), py::arg("t"), py::arg("inverse") = false);

    // Central charges.
    m.def(
        "central_charge",
        [](const IntersectionLattice& lat, const Rational& v, const DivisorClass& nu, const ChernCharacter& ch,
           const std::optional<DivisorClass>& b) { return complex_tuple(central_charge(lat, make_params(v, nu, b), ch)); },
        py::arg("lattice"), py::arg("V"), py::arg("nu"), py::arg("ch"), py::arg("B") = py::none());
    m.def(
        "phase",
        [](const IntersectionLattice& lat, const Rational& v, const DivisorClass& nu, const ChernCharacter& ch,
           const std::optional<DivisorClass>& b) { return phase_dict(phase(lat, make_params(v, nu, b), ch)); },
        py::arg("lattice"), py::arg("V"), py::arg("nu"), py::arg("ch"), py::arg("B") = py::none());
    m.def(
        "slope",
        [](const IntersectionLattice& lat, const Rational& v, const DivisorClass& nu, const ChernCharacter& ch,
           const std::optional<DivisorClass>& b) { return slope(lat, make_params(v, nu, b), ch); },
        py::arg("lattice"), py::arg("V"), py::arg("nu"), py::arg("ch"), py::arg("B") = py::none());
    m.def(
        "kernel_contains",
        [](const IntersectionLattice& lat, const Rational& v, const DivisorClass& nu, const ChernCharacter& ch,
           const std::optional<DivisorClass>& b) { return kernel_contains(lat, make_params(v, nu, b), ch); },
        py::arg("lattice"), py::arg("V"), py::arg("nu"), py::arg("ch"), py::arg("B") = py::none());
    m.def(
        "limit_phase",
        [](const ExtendedRational& p, const Rational& omega_dot_c) { return phase_dict(limit_phase(p, omega_dot_c)); },
        py::arg("p"), py::arg("omega_dot_c"));

    // Transport.
    m.def(
        "solve_case_one",
        [](const Rational& d_bar) {
            const auto s = solve_case_one(d_bar);
            py::dict out;
            out["d_omega"] = s.d_omega;
            out["g"] = gl2_dict(s.g);
            return out;
        },
        py::arg("d_bar"));
    m.def(
        "solve_case_two",
        [](const DivisorClass& c, long t) {
            const auto s = solve_case_two(c, t);
            py::dict out;
            out["B"] = s.b;
            out["g"] = gl2_dict(s.g);
            return out;
        },
        py::arg("curve_c"), py::arg("t"));
    m.def(
        "solve_case_three",
        [](const Rational& u_bar) {
            const auto s = solve_case_three(u_bar);
            py::dict out;
            out["u"] = s.u;
            out["g"] = gl2_dict(s.g);
            return out;
        },
        py::arg("u_bar"));
    m.def(
        "verify_transport",
        [](const IntersectionLattice& lat, const DivisorClass& c, long t, const Rational& v, const DivisorClass& omega,
           const DivisorClass& b, const Rational& v_bar, const DivisorClass& omega_bar, const DivisorClass& b_bar,
           const std::tuple<Rational, Rational, Rational, Rational>& g) {
            return verify_transport(lat, c, ChargeParams(v, omega, b), ChargeParams(v_bar, omega_bar, b_bar),
                                    make_gl2(g), t);
        },
        py::arg("lattice"), py::arg("curve_c"), py::arg("t"), py::arg("V"), py::arg("omega"), py::arg("B"),
        py::arg("V_bar"), py::arg("omega_bar"), py::arg("B_bar"), py::arg("g"));
    m.def("non_nef_image", &non_nef_image, py::arg("a"));

    // Walls and screens.
    m.def(
        "wall_value",
        [](const IntersectionLattice& lat, const MukaiVector& a, const MukaiVector& l,
           const DivisorClass& nu) -> py::object {
            const auto w = wall_value(lat, a, l, nu);
            if (!w)
                return py::none();
            py::dict out;
            out["kind"] = w->kind == WallKind::Proper ? "proper" : "degenerate_all_v";
            out["V"] = w->kind == WallKind::Proper ? py::cast(w->v_value) : py::object(py::none());
            out["candidate"] = w->candidate;
            return out;
        },
        py::arg("lattice"), py::arg("A"), py::arg("L"), py::arg("nu"));
    m.def(
        "rank_bound",
        [](const IntersectionLattice& lat, const DivisorClass& alpha, const DivisorClass& nu, const Rational& v) {
            const auto r = rank_bound(lat, alpha, nu, v);
            py::dict out;
            out["rational_part"] = r.bound.rational_part();
            out["radical_coeff"] = r.bound.radical_coeff();
            out["radicand"] = r.bound.radicand();
            out["text"] = to_string(r.bound);
            out["value"] = r.bound.to_double();
            return out;
        },
        py::arg("lattice"), py::arg("alpha"), py::arg("nu"), py::arg("V"));
    m.def("rank_bound_supremum", &rank_bound_supremum, py::arg("lattice"), py::arg("alpha"), py::arg("nu"));
    m.def(
        "rank_threshold",
        [](const IntersectionLattice& lat, const DivisorClass& alpha, const DivisorClass& nu, long r) {
            return threshold_dict(rank_threshold(lat, alpha, nu, r));
        },
        py::arg("lattice"), py::arg("alpha"), py::arg("nu"), py::arg("r"));
    m.def("bg_discriminant", &bg_discriminant, py::arg("lattice"), py::arg("v"));
    m.def("hit_bound_check", &hit_bound_check, py::arg("lattice"), py::arg("ch"), py::arg("nu"));
    m.def("slope_compare_twist", &slope_compare_twist, py::arg("surface"), py::arg("alpha"), py::arg("n_points"));
    m.def(
        "semistable_screen",
        [](const SurfaceModel& s, const DivisorClass& alpha, unsigned height) {
            return screen_dict(semistable_screen(s, alpha, height));
        },
        py::arg("surface"), py::arg("alpha"), py::arg("height") = 6);
}
