#include "flattrace/bundle_io.hpp"

#include <fstream>

namespace flattrace {

namespace {

Json int_to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

Int int_from_json(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw std::invalid_argument("expected an integer (number or string)");
}

Json rat_to_json(const Rat& q) { return Json(rat_to_string(q)); }

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(long(j.get<long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw std::invalid_argument("expected a rational (\"p/q\" string or integer)");
}

}  // namespace

Json elem_to_json(const Elem& e) {
    Json j;
    j["h"] = e.h;
    Json m = Json::array();
    for (const auto& x : e.m) m.push_back(int_to_json(x));
    j["m"] = m;
    return j;
}

Elem elem_from_json(const Json& j) {
    Elem e;
    e.h = j.at("h").get<int>();
    for (const auto& x : j.at("m")) e.m.push_back(int_from_json(x));
    return e;
}

Json matrix_to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

IntMatrix matrix_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a non-empty array of rows");
    int rows = int(j.size());
    int cols = int(j.at(0).size());
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (int(j.at(size_t(i)).size()) != cols) throw std::invalid_argument("ragged matrix rows");
        for (int c = 0; c < cols; ++c) m.at(i, c) = int_from_json(j.at(size_t(i)).at(size_t(c)));
    }
    return m;
}

Json vecq_to_json(const VecQ& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(rat_to_json(q));
    return a;
}

VecQ vecq_from_json(const Json& j) {
    VecQ v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

Json group_to_json(const Group& g) {
    Json j;
    if (g.is_finite_table()) {
        const auto& f = g.finite();
        j["order"] = f.order();
        Json table = Json::array();
        for (int a = 0; a < f.order(); ++a) {
            Json row = Json::array();
            for (int b = 0; b < f.order(); ++b) row.push_back(f.mul(a, b));
            table.push_back(row);
        }
        j["table"] = table;
        Json names = Json::array();
        for (int a = 0; a < f.order(); ++a) names.push_back(f.name_of(a));
        j["names"] = names;
        return j;
    }
    const auto& c = g.cryst();
    j["dimension"] = c.dim();
    Json hol;
    hol["order"] = c.holonomy().order();
    Json table = Json::array();
    for (int a = 0; a < c.holonomy().order(); ++a) {
        Json row = Json::array();
        for (int b = 0; b < c.holonomy().order(); ++b) row.push_back(c.holonomy().mul(a, b));
        table.push_back(row);
    }
    hol["table"] = table;
    Json names = Json::array();
    for (int a = 0; a < c.holonomy().order(); ++a) names.push_back(c.holonomy().name_of(a));
    hol["names"] = names;
    j["holonomy"] = hol;
    Json rots = Json::array(), trans = Json::array();
    for (int h = 0; h < c.holonomy().order(); ++h) {
        rots.push_back(matrix_to_json(c.rotation(h)));
        trans.push_back(vecq_to_json(c.translation(h)));
    }
    j["rotation_parts"] = rots;
    j["translation_parts"] = trans;
    if (!(c.lattice() == Sublattice::standard(c.dim()))) j["lattice"] = matrix_to_json(c.lattice().basis());
    if (!c.name().empty()) j["name"] = c.name();
    return j;
}

Group group_from_json(const Json& j) {
    if (j.contains("builtin")) return catalog_group(j.at("builtin").get<std::string>());
    if (j.contains("order")) {
        int order = j.at("order").get<int>();
        std::vector<int> table;
        for (const auto& row : j.at("table"))
            for (const auto& x : row) table.push_back(x.get<int>());
        std::vector<std::string> names;
        if (j.contains("names"))
            for (const auto& n : j.at("names")) names.push_back(n.get<std::string>());
        FiniteGroup g(order, std::move(table), std::move(names));
        if (auto v = g.validate(); !v.ok) throw std::invalid_argument("invalid finite group: " + v.error);
        return Group(std::move(g));
    }
    int dim = j.at("dimension").get<int>();
    const Json& hol = j.at("holonomy");
    int horder = hol.at("order").get<int>();
    std::vector<int> table;
    for (const auto& row : hol.at("table"))
        for (const auto& x : row) table.push_back(x.get<int>());
    std::vector<std::string> names;
    if (hol.contains("names"))
        for (const auto& n : hol.at("names")) names.push_back(n.get<std::string>());
    FiniteGroup h(horder, std::move(table), std::move(names));

    std::vector<IntMatrix> rots;
    for (const auto& r : j.at("rotation_parts")) rots.push_back(matrix_from_json(r));
    std::vector<VecQ> trans;
    for (const auto& t : j.at("translation_parts")) trans.push_back(vecq_from_json(t));
    Sublattice lattice = Sublattice::standard(dim);
    if (j.contains("lattice")) lattice = Sublattice(matrix_from_json(j.at("lattice")));
    std::string name = j.value("name", std::string{});
    CrystGroup c(dim, std::move(h), std::move(rots), std::move(trans), std::move(lattice), name);
    if (auto v = c.validate(); !v.ok) throw std::invalid_argument("invalid crystallographic group: " + v.error);
    return Group(std::move(c));
}

Json hom_to_json(const GroupHom& h) {
    Json j;
    switch (h.kind()) {
        case GroupHom::Kind::FiniteMap:
            j["images"] = h.finite_images();
            break;
        case GroupHom::Kind::Affine:
            j["linear"] = matrix_to_json(h.linear());
            j["translation"] = vecq_to_json(h.translation());
            j["holonomy_map"] = h.holonomy_map();
            break;
        case GroupHom::Kind::ElemImages: {
            Json imgs = Json::array();
            for (const auto& e : h.elem_image_list()) imgs.push_back(elem_to_json(e));
            j["elem_images"] = imgs;
            break;
        }
        case GroupHom::Kind::ThroughQuotient: {
            j["via_lattice"] = matrix_to_json(h.via()->sub().lattice().basis());
            j["images"] = h.via_images();
            break;
        }
    }
    return j;
}

GroupHom hom_from_json(const Json& j, const Group& source, const Group& target) {
    GroupHom h = [&] {
        if (j.contains("linear")) {
            return GroupHom::affine(source, target, matrix_from_json(j.at("linear")),
                                    vecq_from_json(j.at("translation")),
                                    j.at("holonomy_map").get<std::vector<int>>());
        }
        if (j.contains("elem_images")) {
            std::vector<Elem> imgs;
            for (const auto& e : j.at("elem_images")) imgs.push_back(elem_from_json(e));
            return GroupHom::elem_images(source, target, std::move(imgs));
        }
        if (j.contains("via_lattice")) {
            auto via = std::make_shared<GroupQuotient>(
                source, Subgroup::of_lattice(Sublattice(matrix_from_json(j.at("via_lattice")))));
            return GroupHom::through_quotient(source, target, via, j.at("images").get<std::vector<int>>());
        }
        return GroupHom::finite_map(source, target, j.at("images").get<std::vector<int>>());
    }();
    if (auto v = h.validate(); !v.ok) throw std::invalid_argument("invalid homomorphism: " + v.error);
    return h;
}

Json map_to_json(const AffineMapSpec& m) {
    Json j;
    j["linear"] = matrix_to_json(m.linear);
    j["translation"] = vecq_to_json(m.translation);
    j["holonomy_map"] = m.holonomy_map;
    return j;
}

AffineMapSpec map_from_json(const Json& j, const Group& source, const Group& target) {
    AffineMapSpec m{source, target, matrix_from_json(j.at("linear")), vecq_from_json(j.at("translation")),
                    j.at("holonomy_map").get<std::vector<int>>()};
    if (auto v = m.validate(); !v.ok) throw std::invalid_argument("invalid map: " + v.error);
    return m;
}

Json subgroup_to_json(const Subgroup& s) {
    Json j;
    if (s.is_lattice())
        j["lattice"] = matrix_to_json(s.lattice().basis());
    else
        j["elements"] = s.elements();
    return j;
}

Subgroup subgroup_from_json(const Json& j) {
    if (j.contains("lattice")) return Subgroup::of_lattice(Sublattice(matrix_from_json(j.at("lattice"))));
    return Subgroup::of_elements(j.at("elements").get<std::vector<int>>());
}

Json bundle_to_json(const ExampleBundle& b) {
    Json j;
    j["name"] = b.name;
    j["description"] = b.description;
    j["mode"] = b.geometric ? "geometric" : "algebraic";
    j["pi1"] = group_to_json(b.pi1);
    j["pi2"] = group_to_json(b.pi2);
    if (b.geometric) {
        j["f"] = map_to_json(*b.f);
        j["g"] = map_to_json(*b.g);
    } else {
        j["phi"] = hom_to_json(b.phi);
        j["psi"] = hom_to_json(b.psi);
    }
    j["gamma1"] = subgroup_to_json(b.gamma1);
    j["gamma2"] = subgroup_to_json(b.gamma2);
    if (b.index_table) {
        Json cosets = Json::array();
        for (const auto& entries : b.index_table->per_coset) {
            Json list = Json::array();
            for (const auto& [cls, idx] : entries) {
                Json e;
                e["class"] = elem_to_json(cls);
                e["index"] = int_to_json(idx);
                list.push_back(e);
            }
            cosets.push_back(list);
        }
        j["index_table"] = cosets;
    }
    if (b.lhs_table) {
        Json list = Json::array();
        for (const auto& [cls, idx] : *b.lhs_table) {
            Json e;
            e["class"] = elem_to_json(cls);
            e["index"] = int_to_json(idx);
            list.push_back(e);
        }
        j["lhs_table"] = list;
    }
    return j;
}

ExampleBundle bundle_from_json(const Json& j) {
    ExampleBundle b;
    b.name = j.value("name", std::string("bundle"));
    b.description = j.value("description", std::string{});
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "geometric" && mode != "algebraic")
        throw std::invalid_argument("mode must be \"geometric\" or \"algebraic\"");
    b.geometric = mode == "geometric";
    b.pi1 = group_from_json(j.at("pi1"));
    b.pi2 = group_from_json(j.at("pi2"));
    if (b.geometric) {
        b.f = map_from_json(j.at("f"), b.pi1, b.pi2);
        b.g = map_from_json(j.at("g"), b.pi1, b.pi2);
        b.phi = b.f->induced();
        b.psi = b.g->induced();
    } else {
        b.phi = hom_from_json(j.at("phi"), b.pi1, b.pi2);
        b.psi = hom_from_json(j.at("psi"), b.pi1, b.pi2);
    }
    b.gamma1 = subgroup_from_json(j.at("gamma1"));
    b.gamma2 = subgroup_from_json(j.at("gamma2"));
    if (j.contains("index_table")) {
        IndexTable t;
        for (const auto& list : j.at("index_table")) {
            std::vector<std::pair<Elem, Int>> entries;
            for (const auto& e : list)
                entries.push_back({elem_from_json(e.at("class")), int_from_json(e.at("index"))});
            t.per_coset.push_back(std::move(entries));
        }
        b.index_table = std::move(t);
    }
    if (j.contains("lhs_table")) {
        std::vector<std::pair<Elem, Int>> entries;
        for (const auto& e : j.at("lhs_table"))
            entries.push_back({elem_from_json(e.at("class")), int_from_json(e.at("index"))});
        b.lhs_table = std::move(entries);
    }
    return b;
}

ExampleBundle load_bundle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open bundle file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("parse error in " + path + ": " + e.what());
    }
    return bundle_from_json(j);
}

void save_bundle_file(const ExampleBundle& b, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << bundle_to_json(b).dump(2) << "\n";
}

Json region_to_json(const Region& r) {
    Json j;
    j["dim"] = r.dim;
    Json boxes = Json::array();
    for (const auto& b : r.boxes) {
        Json box;
        box["lo"] = vecq_to_json(b.lo);
        box["hi"] = vecq_to_json(b.hi);
        boxes.push_back(box);
    }
    j["boxes"] = boxes;
    return j;
}

Region region_from_json(const Json& j) {
    Region r;
    r.dim = j.at("dim").get<int>();
    for (const auto& box : j.at("boxes")) {
        Region::Box b;
        b.lo = vecq_from_json(box.at("lo"));
        b.hi = vecq_from_json(box.at("hi"));
        r.boxes.push_back(std::move(b));
    }
    if (auto v = r.validate(); !v.ok) throw std::invalid_argument("invalid region: " + v.error);
    return r;
}

Json trace_to_json(const TraceVector& t) {
    Json list = Json::array();
    for (const auto& [cls, c] : t.coefficients()) {
        Json e;
        e["class"] = elem_to_json(cls);
        e["coefficient"] = int_to_json(c);
        list.push_back(e);
    }
    return list;
}

Json averaging_report_to_json(const AveragingReport& r) {
    Json j;
    j["lhs"] = trace_to_json(r.lhs);
    Json summands = Json::array();
    for (const auto& [beta, t] : r.summands) {
        Json s;
        s["coset_rep"] = elem_to_json(beta);
        s["pushforward"] = trace_to_json(t);
        summands.push_back(s);
    }
    j["summands"] = summands;
    j["raw_sum"] = trace_to_json(r.raw_sum);
    j["divisor"] = int_to_json(r.divisor);
    j["divisible"] = r.divisible;
    j["rhs"] = trace_to_json(r.rhs);
    j["equal"] = r.equal;
    return j;
}

}  // namespace flattrace
