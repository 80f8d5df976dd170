#pragma once

#include <string>
#include <vector>

#include "holderlab/common.hpp"

namespace holderlab {

// Named closed-form functions on C^n used as boundary data and densities.
//   zero, const:c, linear:v1,...,v2n, quad (|z|^2), abspow:a (|Re z_1|^{1+a}),
//   radialpow:b (|z|^b), toric-slice (|z_1|^2), anglepow:a (|arg z_1 / pi|^a)
struct Preset {
  std::string spec;  // canonical text, e.g. "abspow:0.5"
  std::string name;
  std::vector<double> params;
  ScalarField value;
  VectorField gradient;  // empty where the function is not differentiable everywhere
  bool pluriharmonic = false;
};

// Throws InputError naming the offending preset.
Preset make_preset(const std::string& spec, int n);

bool is_known_preset(const std::string& name);

// The problem data f_root = f^{1/n} for a density preset; negative samples of f
// are rejected when evaluated.
ScalarField density_root(const Preset& f, int n);

}  // namespace holderlab
