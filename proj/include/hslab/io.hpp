#pragma once

// File formats:
//   curve JSON      {"markers": [[x,y],...]}, implicit closure
//   grid CSV        header "nx,ny,h,ox,oy" then row-major values
//   Schwarz JSON    {"a":[re,im],"tail":[[re,im],...],"curve":...,"g":[[re,im],...]}
//   quadrature JSON {"nodes":[[re,im],...],"mult":[...],"coeffs":[[[re,im],...],...]}
//   moments CSV     columns t,k,re,im, one row per (t,k)
//   frame JSON      {"t":...,"boundary":{curve}|null,"area":...}
//   SVG             boundary overlays of an evolution

#include <string>

#include "hslab/cauchy.hpp"
#include "hslab/core.hpp"
#include "hslab/moments.hpp"
#include "hslab/quadrature.hpp"

namespace hs::io {

std::string curve_to_json(const MarkerCurve& curve);
MarkerCurve curve_from_json(const std::string& text);
MarkerCurve load_curve(const std::string& path);
void save_curve(const MarkerCurve& curve, const std::string& path);

std::string grid_to_csv(const ScalarGrid& grid);
ScalarGrid grid_from_csv(const std::string& text);
ScalarGrid load_grid(const std::string& path);
void save_grid(const ScalarGrid& grid, const std::string& path);

std::string schwarz_to_json(const cauchy::SchwarzData& sd);
cauchy::SchwarzData schwarz_from_json(const std::string& text);

std::string quadrature_to_json(const quad::QuadratureData& qd);
quad::QuadratureData quadrature_from_json(const std::string& text);

std::string moments_to_csv(const moments::MomentSeries& series);
moments::MomentSeries moments_from_csv(const std::string& text);

std::string frame_to_json(double t, const MarkerCurve* boundary);

/// Overlay of boundary curves, one polyline per frame.
std::string frames_to_svg(const std::vector<std::pair<double, const MarkerCurve*>>& frames,
                          const Box& box);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hs::io
