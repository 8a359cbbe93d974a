#pragma once

#include <ostream>
#include <span>
#include <string>

#include "kicktop/experiments.hpp"

namespace kicktop::csv {

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

inline constexpr const char* kSweepHeader = "scenario,state,axis,j,kappa0,n,T,metric,mean,second_moment";
inline constexpr const char* kGridHeader = "scenario,t_alpha,kappa0,metric,value";
inline constexpr const char* kCurveHeader = "scenario,kappa0,metric,value";
inline constexpr const char* kMarkerHeader = "scenario,kind,index,kappa0";
inline constexpr const char* kOrbitHeader = "scenario,orbit,kappa0,step,X,Y,Z";

void write_sweep(std::ostream& os, std::span<const SweepRow> rows);
void write_grid(std::ostream& os, std::span<const GridRow> rows);
void write_curve(std::ostream& os, const std::string& scenario, std::span<const CurveRow> rows);
void write_markers(std::ostream& os, const std::string& scenario, std::span<const MarkerRow> rows);
void write_orbits(std::ostream& os, const std::string& scenario, std::span<const OrbitRow> rows);

}  // namespace kicktop::csv
