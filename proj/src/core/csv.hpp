#pragma once

#include <string>

#include "core/spectrum.hpp"
#include "core/surface.hpp"

namespace fpcav {

// Spectrum files: header "x,signal", one point per row, LF endings. The x
// unit is declared out-of-band (CLI flag), hence the axis kind parameter.
Spectrum read_spectrum_csv(const std::string& path, AxisKind axis);
void write_spectrum_csv(const Spectrum& spec, const std::string& path);

// Surface files: header "x_um,y_um,z_um".
SurfaceMap read_surface_csv(const std::string& path);
void write_surface_csv(const SurfaceMap& map, const std::string& path);

} // namespace fpcav
