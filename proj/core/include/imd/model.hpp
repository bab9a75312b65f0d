#pragma once

#include <cmath>
#include <string>

#include "imd/error.hpp"

namespace imd {

// Coordinates (h, J) of the imitative monomer-dimer model: external field h
// and imitative coupling J >= 0.
class ModelParams {
 public:
  ModelParams(double h, double J) : h_(h), J_(J) {
    if (!std::isfinite(h)) throw DomainError("ModelParams: field h must be finite");
    if (!std::isfinite(J) || J < 0.0) {
      throw DomainError("ModelParams: coupling J must be finite and >= 0, got " +
                        std::to_string(J));
    }
  }

  double h() const { return h_; }
  double J() const { return J_; }

  // Same coupling, different field.
  ModelParams with_field(double h) const { return {h, J_}; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double h_;
  double J_;
};

inline void require_density(double m, const char* where) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw DomainError(std::string(where) + ": density must lie in [0, 1], got " +
                      std::to_string(m));
  }
}

}  // namespace imd
