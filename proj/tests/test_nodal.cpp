#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>

#include "darboux/nodal.hpp"

using namespace darboux;

TEST_CASE("single straight zero line") {
    const GridSpec grid{-1.0, 1.0, -1.0, 1.0, 19, 19};
    const ZeroCurveSet set =
        scan_zero_curves([](double u, double) { return u; }, grid, "f");
    REQUIRE(set.polylines.size() == 1);
    CHECK_FALSE(set.identically_zero);
    CHECK(set.isolated_zero_suspects.empty());
    const auto& line = set.polylines[0];
    CHECK(line.size() >= static_cast<std::size_t>(grid.total_v() - 1));
    double v_lo = 1e9, v_hi = -1e9;
    for (const auto& p : line) {
        CHECK(std::abs(p[0]) < 1e-12);
        v_lo = std::min(v_lo, p[1]);
        v_hi = std::max(v_hi, p[1]);
    }
    // Spans the whole rectangle.
    CHECK(v_lo == doctest::Approx(-1.0));
    CHECK(v_hi == doctest::Approx(1.0));
}

TEST_CASE("vertex invariant: bracketing nodes have opposite signs and bound the value") {
    const GridSpec grid{-2.0, 2.0, -2.0, 2.0, 30, 30};
    auto field = [](double u, double v) { return std::sin(u) * std::cos(v) + 0.3; };
    const ZeroCurveSet set = scan_zero_curves(field, grid, "wavy");
    REQUIRE(set.polylines.size() >= 1);
    std::size_t checked = 0;
    for (const auto& line : set.polylines) {
        for (const auto& p : line) {
            // Locate the grid edge carrying this vertex: one coordinate is a
            // grid coordinate, the other is interpolated.
            const double fu = (p[0] - grid.u0) / grid.hu();
            const double fv = (p[1] - grid.v0) / grid.hv();
            const bool on_u_node = std::abs(fu - std::round(fu)) < 1e-9;
            const bool on_v_node = std::abs(fv - std::round(fv)) < 1e-9;
            REQUIRE((on_u_node || on_v_node));
            double fa, fb;
            if (on_u_node && !on_v_node) {
                const int iu = static_cast<int>(std::round(fu));
                fa = field(grid.u_at(iu), grid.v_at(static_cast<int>(std::floor(fv))));
                fb = field(grid.u_at(iu), grid.v_at(static_cast<int>(std::ceil(fv))));
            } else if (on_v_node && !on_u_node) {
                const int iv = static_cast<int>(std::round(fv));
                fa = field(grid.u_at(static_cast<int>(std::floor(fu))), grid.v_at(iv));
                fb = field(grid.u_at(static_cast<int>(std::ceil(fu))), grid.v_at(iv));
            } else {
                continue; // vertex on a node: crossing degenerated to an endpoint
            }
            CHECK(fa * fb <= 0.0);
            CHECK(std::abs(field(p[0], p[1])) <= std::max(std::abs(fa), std::abs(fb)) + 1e-12);
            ++checked;
        }
    }
    CHECK(checked > 50);
}

TEST_CASE("helicoid normal component n1: lines near the cos u zeros") {
    SurfaceDef heli = make_preset("helicoid-catenoid");
    heli.params["t"] = M_PI / 4.0;
    const GridSpec grid{0.1, 2.0 * M_PI - 0.1, -1.0, 1.0, 60, 20};
    const ZeroCurveSet set =
        scan_zero_curves(frame_field_sampler(heli, "n1"), grid, "n1");
    REQUIRE(set.polylines.size() == 2);
    const double hu = grid.hu();
    std::vector<double> centers;
    for (const auto& line : set.polylines) {
        double mean = 0.0;
        for (const auto& p : line) {
            const double dist = std::min(std::abs(p[0] - M_PI / 2.0),
                                         std::abs(p[0] - 3.0 * M_PI / 2.0));
            CHECK(dist <= hu); // within one cell of the true line
            mean += p[0];
        }
        centers.push_back(mean / line.size());
    }
    std::sort(centers.begin(), centers.end());
    CHECK(centers[0] == doctest::Approx(M_PI / 2.0).epsilon(0.01));
    CHECK(centers[1] == doctest::Approx(3.0 * M_PI / 2.0).epsilon(0.01));
}

TEST_CASE("sphere elimination determinant: isolated zero at the origin, no curves") {
    const SurfaceDef sphere = make_preset("sphere-stereo");
    const GridSpec grid{-1.0, 1.0, -1.0, 1.0, 21, 21}; // origin not a node
    const ZeroCurveSet set = scan_zero_curves(frame_field_sampler(sphere, "d"), grid, "d");
    CHECK(set.polylines.empty());
    REQUIRE(set.isolated_zero_suspects.size() >= 1);
    for (const auto& p : set.isolated_zero_suspects) {
        CHECK(std::abs(p[0]) <= grid.hu());
        CHECK(std::abs(p[1]) <= grid.hv());
    }
}

TEST_CASE("identically zero fields are flagged, not traced") {
    const SurfaceDef plane = make_preset("plane");
    const GridSpec grid{-1.0, 1.0, -1.0, 1.0, 10, 10};
    for (const char* which : {"n1", "n2", "d"}) {
        const ZeroCurveSet set =
            scan_zero_curves(frame_field_sampler(plane, which), grid, which);
        CHECK(set.identically_zero);
        CHECK(set.polylines.empty());
        CHECK(set.isolated_zero_suspects.empty());
    }
    CHECK_THROWS_AS(frame_field_sampler(plane, "n3"), PreconditionError);
}

TEST_CASE("saddle cells are resolved by the center sample") {
    // f = u*v has a saddle at the origin; curves must follow the axes.
    const GridSpec grid{-1.05, 0.95, -1.05, 0.95, 20, 20}; // axes between nodes
    const ZeroCurveSet set =
        scan_zero_curves([](double u, double v) { return u * v; }, grid, "saddle");
    CHECK(set.polylines.size() >= 2);
    for (const auto& line : set.polylines)
        for (const auto& p : line)
            CHECK(std::min(std::abs(p[0]), std::abs(p[1])) < grid.hu());
}

TEST_CASE("refinement stability: curves move by at most a coarse cell diagonal") {
    SurfaceDef heli = make_preset("helicoid-catenoid");
    heli.params["t"] = M_PI / 3.0;
    const FieldSampler sampler = frame_field_sampler(heli, "n1");
    const GridSpec coarse{0.2, 6.0, -1.0, 1.0, 24, 12};
    const GridSpec fine{0.2, 6.0, -1.0, 1.0, 49, 25};
    const ZeroCurveSet a = scan_zero_curves(sampler, coarse, "n1");
    const ZeroCurveSet b = scan_zero_curves(sampler, fine, "n1");
    REQUIRE(!a.polylines.empty());
    REQUIRE(!b.polylines.empty());
    const double diag = std::hypot(coarse.hu(), coarse.hv());
    for (const auto& line : a.polylines) {
        for (const auto& p : line) {
            double best = 1e300;
            for (const auto& fline : b.polylines)
                for (const auto& q : fline)
                    best = std::min(best, std::hypot(p[0] - q[0], p[1] - q[1]));
            CHECK(best <= diag);
        }
    }
}

TEST_CASE("curve csv export") {
    const GridSpec grid{-1.0, 1.0, -1.0, 1.0, 9, 9};
    const ZeroCurveSet set =
        scan_zero_curves([](double u, double) { return u - 0.05; }, grid, "f");
    const char* path = "/tmp/darboux_test_curves.csv";
    write_curves_csv(path, set);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "curve_id,u,v");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == set.vertex_count());
}
