#include "darboux/surface.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace darboux {

namespace {

SurfaceDef make_plane() {
    SurfaceDef def;
    def.name = "plane";
    def.x1 = parse_expression("u");
    def.x2 = parse_expression("v");
    def.x3 = parse_expression("0");
    def.u_min = -4.0;
    def.u_max = 4.0;
    def.v_min = -4.0;
    def.v_max = 4.0;
    def.preset = ChartPreset::plane;
    return def;
}

SurfaceDef make_sphere_stereo() {
    SurfaceDef def;
    def.name = "sphere-stereo";
    def.x1 = parse_expression("2*u/(u^2+v^2+1)");
    def.x2 = parse_expression("2*v/(u^2+v^2+1)");
    def.x3 = parse_expression("(u^2+v^2-1)/(u^2+v^2+1)");
    def.u_min = -4.0;
    def.u_max = 4.0;
    def.v_min = -4.0;
    def.v_max = 4.0;
    // n1 and n2 vanish on the coordinate axes; the reduction needs both
    // nonzero, so grids must stay inside one quadrant.
    def.excluded_lines = {{'u', 0.0}, {'v', 0.0}};
    def.preset = ChartPreset::sphere_stereo;
    return def;
}

SurfaceDef make_helicoid_catenoid() {
    SurfaceDef def;
    def.name = "helicoid-catenoid";
    def.params["t"] = M_PI / 4.0;
    def.x1 = parse_expression("cos(t)*sin(u)*sinh(v) + sin(t)*cos(u)*cosh(v)");
    def.x2 = parse_expression("-cos(t)*cos(u)*sinh(v) + sin(t)*sin(u)*cosh(v)");
    def.x3 = parse_expression("u*cos(t) + v*sin(t)");
    def.u_min = 0.0;
    def.u_max = 2.0 * M_PI;
    def.v_min = -2.0;
    def.v_max = 2.0;
    // n1 = 0 on cos(u) = 0 and n2 = 0 on sin(u) = 0.
    for (int k = 0; k <= 4; ++k)
        def.excluded_lines.push_back({'u', k * M_PI / 2.0});
    def.preset = ChartPreset::helicoid_catenoid;
    return def;
}

} // namespace

SurfaceDef make_preset(const std::string& name) {
    if (name == "plane") return make_plane();
    if (name == "sphere-stereo") return make_sphere_stereo();
    if (name == "helicoid-catenoid") return make_helicoid_catenoid();
    throw PreconditionError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() {
    return {"plane", "sphere-stereo", "helicoid-catenoid"};
}

SurfaceDef load_surface_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open surface file '" + path + "'", 0);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("surface file: ") + e.what(), e.byte);
    }

    SurfaceDef def;
    try {
        def.name = j.at("name").get<std::string>();
        if (j.contains("params"))
            for (const auto& [key, value] : j.at("params").items())
                def.params[key] = value.get<double>();
        const auto& x = j.at("x");
        if (!x.is_array() || x.size() != 3)
            throw ParseError("surface file: 'x' must be an array of 3 expressions", 0);
        def.x1 = parse_expression(x.at(0).get<std::string>());
        def.x2 = parse_expression(x.at(1).get<std::string>());
        def.x3 = parse_expression(x.at(2).get<std::string>());
        const auto& dom = j.at("domain");
        if (!dom.is_array() || dom.size() != 4)
            throw ParseError("surface file: 'domain' must be [u_min, u_max, v_min, v_max]", 0);
        def.u_min = dom.at(0).get<double>();
        def.u_max = dom.at(1).get<double>();
        def.v_min = dom.at(2).get<double>();
        def.v_max = dom.at(3).get<double>();
        if (j.contains("excluded_lines")) {
            for (const auto& line : j.at("excluded_lines")) {
                if (line.contains("u")) def.excluded_lines.push_back({'u', line.at("u").get<double>()});
                else if (line.contains("v")) def.excluded_lines.push_back({'v', line.at("v").get<double>()});
                else throw ParseError("surface file: excluded line needs a 'u' or 'v' key", 0);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("surface file: ") + e.what(), 0);
    }
    if (!(def.u_min < def.u_max) || !(def.v_min < def.v_max))
        throw PreconditionError("surface domain rectangle is degenerate");
    return def;
}

SurfaceJet chart_jets(const SurfaceDef& def, double u, double v) {
    return {eval_jet(def.x1, u, v, def.params), eval_jet(def.x2, u, v, def.params),
            eval_jet(def.x3, u, v, def.params)};
}

FieldJet eval_field_jet(const Expr& f1, const Expr& f2, const Expr& f3, double u, double v,
                        const ParamMap& params) {
    return {eval_jet(f1, u, v, params), eval_jet(f2, u, v, params), eval_jet(f3, u, v, params)};
}

std::array<Expr, 3> associate_family_velocity() {
    return {parse_expression("-sin(t)*sin(u)*sinh(v) + cos(t)*cos(u)*cosh(v)"),
            parse_expression("sin(t)*cos(u)*sinh(v) + cos(t)*sin(u)*cosh(v)"),
            parse_expression("-u*sin(t) + v*cos(t)")};
}

} // namespace darboux
