#pragma once

#include <string>
#include <vector>

#include "darboux/errors.hpp"

namespace darboux {

// Rectangular sample lattice: nu x nv interior nodes plus a boundary ring.
struct GridSpec {
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
    int nu = 3, nv = 3; // interior counts, >= 3

    double hu() const { return (u1 - u0) / (nu + 1); }
    double hv() const { return (v1 - v0) / (nv + 1); }
    double u_at(int iu) const { return u0 + iu * hu(); } // iu in 0..nu+1
    double v_at(int iv) const { return v0 + iv * hv(); }
    int total_u() const { return nu + 2; }
    int total_v() const { return nv + 2; }

    void validate() const {
        if (!(u0 < u1) || !(v0 < v1)) throw PreconditionError("grid rectangle is degenerate");
        if (nu < 3 || nv < 3) throw PreconditionError("grid needs at least 3 interior points per side");
    }
};

// Scalar samples on the lattice, boundary ring included.
struct GridField {
    GridSpec spec;
    std::vector<double> values; // indexed iv*(nu+2) + iu

    static GridField zeros(const GridSpec& spec) {
        GridField f;
        f.spec = spec;
        f.values.assign(static_cast<std::size_t>(spec.total_u()) * spec.total_v(), 0.0);
        return f;
    }

    double& at(int iu, int iv) { return values[static_cast<std::size_t>(iv) * spec.total_u() + iu]; }
    double at(int iu, int iv) const {
        return values[static_cast<std::size_t>(iv) * spec.total_u() + iu];
    }

    bool is_boundary(int iu, int iv) const {
        return iu == 0 || iv == 0 || iu == spec.total_u() - 1 || iv == spec.total_v() - 1;
    }
};

// CSV dump: header "u,v,value,residual" with one row per node; residual is
// empty for ring nodes (and everywhere when residual == nullptr).
void write_grid_csv(const std::string& path, const GridField& field,
                    const GridField* residual = nullptr);

} // namespace darboux
