#include "k3stab/surface.hpp"

#include "k3stab/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace k3stab {

namespace {

bool proportional(const DivisorClass& a, const DivisorClass& b)
{
    // a = lambda * b for some rational lambda (b nonzero).
    std::optional<Rational> lambda;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (b[i] == 0) {
            if (a[i] != 0)
                return false;
            continue;
        }
        const Rational ratio = a[i] / b[i];
        if (lambda && *lambda != ratio)
            return false;
        lambda = ratio;
    }
    return lambda.has_value();
}

}  // namespace

std::vector<Violation> validate_surface(const SurfaceModel& model)
{
    std::vector<Violation> out;
    const IntersectionLattice& lat = model.lattice;
    const std::size_t rank = lat.rank();

    auto fits = [&](const DivisorClass& d, const std::string& what) {
        if (d.size() == rank)
            return true;
        out.push_back({"dimension", what + " has " + std::to_string(d.size()) + " coordinates, lattice rank is " +
                                        std::to_string(rank)});
        return false;
    };

    if (model.e != 2)
        out.push_back({"e_value", "e = " + std::to_string(model.e) + ", expected 2"});

    const bool c_ok = fits(model.curve_c, "curve_C");
    const bool nu_ok = fits(model.nu, "nu");

    if (c_ok) {
        const Rational cc = lat.square(model.curve_c);
        if (cc != -model.e)
            out.push_back({"curve_c_square", "curve_c^2 = " + to_string(cc) + " != -e"});
    }
    if (c_ok && nu_ok) {
        const Rational nc = lat.pair(model.nu, model.curve_c);
        if (nc != 0)
            out.push_back({"nu_dot_c", "nu.C = " + to_string(nc) + " != 0"});
    }
    if (nu_ok) {
        const Rational nn = lat.square(model.nu);
        if (nn <= 0)
            out.push_back({"nu_square", "nu^2 = " + to_string(nn) + " is not positive"});
    }
    for (std::size_t i = 0; i < model.effective_generators.size(); ++i) {
        const DivisorClass& g = model.effective_generators[i];
        const std::string label = "effective_generators[" + std::to_string(i) + "]";
        if (!fits(g, label) || !nu_ok || !c_ok)
            continue;
        if (proportional(g, model.curve_c))
            continue;
        const Rational ng = lat.pair(model.nu, g);
        if (ng <= 0)
            out.push_back({"nu_positive_on_generators", "nu." + label + " = " + to_string(ng) + " is not positive"});
    }
    if (model.d_class && fits(*model.d_class, "D") && c_ok) {
        const Rational dc = lat.pair(*model.d_class, model.curve_c);
        const Rational dd = lat.square(*model.d_class);
        if (dc != 1)
            out.push_back({"d_class_dot_c", "D.C = " + to_string(dc) + " != 1"});
        if (dd != 0)
            out.push_back({"d_class_square", "D^2 = " + to_string(dd) + " != 0"});
    }
    return out;
}

SurfaceModel build_example_rank2(long q, long y)
{
    if (q <= 2)
        throw Error(ErrorCode::NotAK3Configuration, "q > 2 is needed for an ample class to exist",
                    {{"q", std::to_string(q)}});
    if (y <= 0 || y % 2 != 0)
        throw Error(ErrorCode::OutOfDomain, "y must be an even positive integer", {{"y", std::to_string(y)}});
    SurfaceModel m{
        "rank2-q" + std::to_string(q) + "-y" + std::to_string(y),
        IntersectionLattice({"C1", "C2"}, {{-2, q}, {q, -2}}),
        DivisorClass{1, 0},
        DivisorClass{Rational(Rational(q * y) / 2), Rational(y)},
        {DivisorClass{1, 0}, DivisorClass{0, 1}},
        2,
        std::nullopt,
    };
    return m;
}

SurfaceModel build_example_rank3()
{
    return {
        "rank3-pairwise3",
        IntersectionLattice({"C1", "C2", "C3"}, {{-2, 3, 3}, {3, -2, 3}, {3, 3, -2}}),
        DivisorClass{1, 0, 0},
        DivisorClass{3, 1, 1},
        {DivisorClass{1, 0, 0}, DivisorClass{0, 1, 0}, DivisorClass{0, 0, 1}},
        2,
        std::nullopt,
    };
}

SurfaceModel build_example_rank3_touching()
{
    return {
        "rank3-touching",
        IntersectionLattice({"C1", "C2", "C3"}, {{-2, 2, 3}, {2, -2, 3}, {3, 3, -2}}),
        DivisorClass{1, 0, 0},
        DivisorClass{3, 0, 2},
        {DivisorClass{1, 0, 0}, DivisorClass{0, 1, 0}, DivisorClass{0, 0, 1}},
        2,
        std::nullopt,
    };
}

SurfaceModel build_example_minimal()
{
    return {
        "minimal",
        IntersectionLattice({"C", "D0"}, {{-2, 1}, {1, 0}}),
        DivisorClass{1, 0},
        DivisorClass{1, 2},
        {DivisorClass{1, 0}},
        2,
        DivisorClass{0, 1},
    };
}

DivisorClass build_d_class(const SurfaceModel& model)
{
    const Rational nn = model.lattice.square(model.nu);
    if (nn != 2)
        throw Error(ErrorCode::DClassUnavailable, "D = (nu - C)/e needs nu^2 = 2", {{"nu^2", to_string(nn)}});
    return Rational(Rational(1) / model.e) * (model.nu - model.curve_c);
}

SurfaceModel with_d_class(SurfaceModel model)
{
    model.d_class = build_d_class(model);
    return model;
}

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw Error(ErrorCode::ParseError, what, {{"field", field}});
}

Rational rational_field(const json& j, const std::string& field)
{
    if (j.is_number_integer())
        return Rational(mpz_class(j.dump(), 10));
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error&) {
            field_error(field, "malformed rational \"" + j.get<std::string>() + "\"");
        }
    }
    field_error(field, "expected an integer or a \"p/q\" string");
}

DivisorClass class_field(const json& j, const std::string& field, const IntersectionLattice& lattice,
                         bool allow_label)
{
    if (allow_label && j.is_string())
        return lattice.basis_class(lattice.index_of(j.get<std::string>()));
    if (!j.is_array())
        field_error(field, allow_label ? "expected a basis label or a coordinate vector" : "expected a coordinate vector");
    std::vector<Rational> coords;
    for (std::size_t i = 0; i < j.size(); ++i)
        coords.push_back(rational_field(j[i], field + "[" + std::to_string(i) + "]"));
    if (coords.size() != lattice.rank())
        field_error(field, "expected " + std::to_string(lattice.rank()) + " coordinates, got " +
                               std::to_string(coords.size()));
    return DivisorClass(std::move(coords));
}

ordered_json rational_json(const Rational& q)
{
    if (q.get_den() == 1 && q.get_num().fits_slong_p())
        return q.get_num().get_si();
    return to_string(q);
}

ordered_json class_json(const DivisorClass& d)
{
    ordered_json arr = ordered_json::array();
    for (const auto& q : d.coords())
        arr.push_back(rational_json(q));
    return arr;
}

}  // namespace

SurfaceModel load_surface(std::string_view text, bool allow_invalid)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& ex) {
        const std::size_t upto = std::min<std::size_t>(ex.byte, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw Error(ErrorCode::ParseError, "malformed JSON",
                    {{"line", std::to_string(line)}, {"byte", std::to_string(ex.byte)}, {"detail", ex.what()}});
    }
    if (!doc.is_object())
        field_error("<root>", "surface file must be a JSON object");

    static const std::set<std::string> known = {"name", "basis", "gram", "curve_C", "nu",
                                                "effective_generators", "D", "e"};
    for (const auto& item : doc.items())
        if (!known.count(item.key()))
            field_error(item.key(), "unknown field");
    for (const char* required : {"name", "basis", "gram", "curve_C", "nu", "effective_generators"})
        if (!doc.contains(required))
            field_error(required, "missing required field");

    if (!doc["name"].is_string())
        field_error("name", "expected a string");
    if (!doc["basis"].is_array())
        field_error("basis", "expected a list of labels");
    std::vector<std::string> basis;
    for (std::size_t i = 0; i < doc["basis"].size(); ++i) {
        if (!doc["basis"][i].is_string())
            field_error("basis[" + std::to_string(i) + "]", "expected a string label");
        basis.push_back(doc["basis"][i].get<std::string>());
    }
    if (std::set<std::string>(basis.begin(), basis.end()).size() != basis.size())
        field_error("basis", "duplicate labels");

    const json& gram_j = doc["gram"];
    if (!gram_j.is_array())
        field_error("gram", "expected an integer matrix");
    std::vector<std::vector<std::int64_t>> gram;
    for (std::size_t i = 0; i < gram_j.size(); ++i) {
        if (!gram_j[i].is_array())
            field_error("gram[" + std::to_string(i) + "]", "expected a row of integers");
        std::vector<std::int64_t> row;
        for (std::size_t k = 0; k < gram_j[i].size(); ++k) {
            if (!gram_j[i][k].is_number_integer())
                field_error("gram[" + std::to_string(i) + "][" + std::to_string(k) + "]", "expected an integer");
            row.push_back(gram_j[i][k].get<std::int64_t>());
        }
        gram.push_back(std::move(row));
    }

    SurfaceModel model{doc["name"].get<std::string>(), IntersectionLattice(std::move(basis), std::move(gram)), {}, {},
                       {}, 2, std::nullopt};
    model.curve_c = class_field(doc["curve_C"], "curve_C", model.lattice, true);
    model.nu = class_field(doc["nu"], "nu", model.lattice, false);
    if (!doc["effective_generators"].is_array())
        field_error("effective_generators", "expected a list of classes");
    for (std::size_t i = 0; i < doc["effective_generators"].size(); ++i)
        model.effective_generators.push_back(class_field(doc["effective_generators"][i],
                                                         "effective_generators[" + std::to_string(i) + "]",
                                                         model.lattice, true));
    if (doc.contains("D"))
        model.d_class = class_field(doc["D"], "D", model.lattice, true);
    if (doc.contains("e")) {
        if (!doc["e"].is_number_integer())
            field_error("e", "expected an integer");
        model.e = doc["e"].get<long>();
    }

    if (!allow_invalid) {
        const auto violations = validate_surface(model);
        if (!violations.empty()) {
            Error::Values values;
            for (const auto& v : violations)
                values.emplace_back(v.clause, v.message);
            throw Error(ErrorCode::InvalidSurface, "surface \"" + model.name + "\" fails validation",
                        std::move(values));
        }
    }
    return model;
}

SurfaceModel load_surface_file(const std::string& path, bool allow_invalid)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::ParseError, "cannot open surface file", {{"path", path}});
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_surface(buf.str(), allow_invalid);
}

std::string save_surface(const SurfaceModel& model)
{
    ordered_json doc;
    doc["name"] = model.name;
    doc["basis"] = model.lattice.basis_names();
    doc["gram"] = model.lattice.gram_rows();
    doc["curve_C"] = class_json(model.curve_c);
    doc["nu"] = class_json(model.nu);
    ordered_json gens = ordered_json::array();
    for (const auto& g : model.effective_generators)
        gens.push_back(class_json(g));
    doc["effective_generators"] = std::move(gens);
    if (model.d_class)
        doc["D"] = class_json(*model.d_class);
    doc["e"] = model.e;
    return doc.dump(2) + "\n";
}

}  // namespace k3stab
