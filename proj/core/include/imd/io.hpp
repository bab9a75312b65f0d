#pragma once

// CSV and JSON serialization of the library's result types.
//
// CSV: comma-separated, header row always present, reals printed with 17
// significant digits. JSON: one top-level object per document.

#include <ostream>
#include <span>
#include <string>

#include "imd/exact.hpp"
#include "imd/limits.hpp"
#include "imd/phase.hpp"

namespace imd::io {

std::string format_real(double value);

// One row of a phase-diagram sweep. Points inside a near-degenerate band carry
// regime "ambiguous" and NaN densities.
struct PhaseSample {
  double h;
  double J;
  std::string regime;
  double m1;
  double m2;
};

PhaseSample phase_sample(const phase::PhaseReport& report, const ModelParams& params);

// k,S,log_weight,probability
void write_csv(std::ostream& out, const exact::MonomerLaw& law);
// S,position,probability
void write_csv(std::ostream& out, const limits::ScaledLaw& law);
// J,h,m1,m2,lambda1,lambda2,rho1,rho2
void write_csv(std::ostream& out, std::span<const phase::GammaPoint> points);
// N,ks,flag
void write_csv(std::ostream& out, const limits::ConvergenceStudy& study);
// h,J,regime,m1,m2 (single row)
void write_csv(std::ostream& out, const phase::PhaseReport& report, const ModelParams& params);
// h,J,regime,m1,m2
void write_csv(std::ostream& out, std::span<const PhaseSample> samples);

std::string to_json(const exact::MonomerLaw& law);
std::string to_json(const limits::ScaledLaw& law);
std::string to_json(std::span<const phase::GammaPoint> points);
std::string to_json(const limits::ConvergenceStudy& study);
std::string to_json(const phase::CriticalPoint& point);
std::string to_json(const phase::PhaseReport& report, const ModelParams& params);
std::string to_json(std::span<const PhaseSample> samples);

}  // namespace imd::io
