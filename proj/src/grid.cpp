#include "darboux/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace darboux {

void write_grid_csv(const std::string& path, const GridField& field, const GridField* residual) {
    std::ofstream out(path);
    if (!out) throw NumericalError("cannot open '" + path + "' for writing");
    out << "u,v,value,residual\n";
    char buf[80];
    const GridSpec& spec = field.spec;
    for (int iv = 0; iv < spec.total_v(); ++iv) {
        for (int iu = 0; iu < spec.total_u(); ++iu) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,", spec.u_at(iu), spec.v_at(iv),
                          field.at(iu, iv));
            out << buf;
            if (residual != nullptr && !std::isnan(residual->at(iu, iv))) {
                std::snprintf(buf, sizeof buf, "%.17g", residual->at(iu, iv));
                out << buf;
            }
            out << '\n';
        }
    }
}

} // namespace darboux
