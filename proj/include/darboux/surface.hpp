#pragma once

#include <array>
#include <string>
#include <vector>

#include "darboux/expr.hpp"

namespace darboux {

enum class ChartPreset { custom, plane, sphere_stereo, helicoid_catenoid };

// A coordinate line u = value or v = value that analyses must avoid
// (hypothesis-violating sets of the reduction, chart seams, ...).
struct ExcludedLine {
    char axis; // 'u' or 'v'
    double value;
};

// A chart x = (x1, x2, x3) : [u_min,u_max] x [v_min,v_max] -> R^3 given in
// closed form, with named scalar parameters fixed per run.
struct SurfaceDef {
    std::string name;
    ParamMap params;
    Expr x1, x2, x3;
    double u_min = 0.0, u_max = 1.0;
    double v_min = 0.0, v_max = 1.0;
    std::vector<ExcludedLine> excluded_lines;
    ChartPreset preset = ChartPreset::custom;

    bool in_domain(double u, double v) const {
        return u >= u_min && u <= u_max && v >= v_min && v <= v_max;
    }

    bool near_excluded_line(double u, double v, double tol) const {
        for (const auto& line : excluded_lines) {
            const double coord = (line.axis == 'u') ? u : v;
            if (std::abs(coord - line.value) <= tol) return true;
        }
        return false;
    }
};

// Chart components as jets sharing one base point.
struct SurfaceJet {
    Jet3 x1, x2, x3;
};

// Candidate vector field (rotation field y or bending field z) as jets.
struct FieldJet {
    Jet3 f1, f2, f3;
};

// Built-in charts: "plane", "sphere-stereo", "helicoid-catenoid".
SurfaceDef make_preset(const std::string& name);
std::vector<std::string> preset_names();

// Surface definition from a JSON file with fields
//   name, params (object), x (array of 3 expression strings),
//   domain ([u_min, u_max, v_min, v_max]),
//   excluded_lines (array of {"u": val} / {"v": val}, optional).
SurfaceDef load_surface_json(const std::string& path);

SurfaceJet chart_jets(const SurfaceDef& def, double u, double v);

FieldJet eval_field_jet(const Expr& f1, const Expr& f2, const Expr& f3, double u, double v,
                        const ParamMap& params = {});

// Velocity of the helicoid-to-catenoid isometric deformation with respect to
// the family parameter t: the t-derivative of the "helicoid-catenoid" chart.
// Evaluated at a surface's own t value it is an infinitesimal bending field
// of that surface.
std::array<Expr, 3> associate_family_velocity();

} // namespace darboux
