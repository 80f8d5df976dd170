#include "holderlab/presets.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "holderlab/csv.hpp"

namespace holderlab {

namespace {

constexpr std::array<const char*, 8> kNames{"zero",      "const",      "linear",      "quad",
                                            "abspow",    "radialpow",  "toric-slice", "anglepow"};

std::vector<double> parse_params(const std::string& spec, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used == 0 || used != item.size() || !std::isfinite(v)) {
      throw InputError("preset '" + spec + "': bad parameter '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

void expect_params(const std::string& spec, const std::vector<double>& p, std::size_t count) {
  if (p.size() != count) {
    throw InputError("preset '" + spec + "' takes " + std::to_string(count) + " parameter(s)");
  }
}

}  // namespace

bool is_known_preset(const std::string& name) {
  for (const char* k : kNames) {
    if (name == k) return true;
  }
  return false;
}

Preset make_preset(const std::string& spec, int n) {
  if (n < 1) throw InputError("preset needs n >= 1");
  const int dim = 2 * n;
  Preset p;
  const auto colon = spec.find(':');
  p.name = spec.substr(0, colon);
  if (!is_known_preset(p.name)) throw InputError("unknown preset '" + p.name + "'");
  if (colon != std::string::npos) p.params = parse_params(spec, spec.substr(colon + 1));
  p.spec = p.name;
  for (std::size_t i = 0; i < p.params.size(); ++i) p.spec += (i == 0 ? ":" : ",") + fmt_num(p.params[i]);

  const auto& q = p.params;
  if (p.name == "zero" || p.name == "const") {
    expect_params(spec, q, p.name == "zero" ? 0 : 1);
    const double c = p.name == "zero" ? 0.0 : q[0];
    p.value = [c](const Vec&) { return c; };
    p.gradient = [dim](const Vec&) -> Vec { return Vec::Zero(dim); };
    p.pluriharmonic = true;
  } else if (p.name == "linear") {
    if (q.empty() || q.size() > static_cast<std::size_t>(dim)) {
      throw InputError("preset '" + spec + "' takes 1 to " + std::to_string(dim) + " coefficients");
    }
    Vec v = Vec::Zero(dim);
    for (std::size_t i = 0; i < q.size(); ++i) v(static_cast<Eigen::Index>(i)) = q[i];
    p.value = [v](const Vec& x) { return v.dot(x); };
    p.gradient = [v](const Vec&) -> Vec { return v; };
    p.pluriharmonic = true;
  } else if (p.name == "quad") {
    expect_params(spec, q, 0);
    p.value = [](const Vec& x) { return x.squaredNorm(); };
    p.gradient = [](const Vec& x) -> Vec { return 2.0 * x; };
  } else if (p.name == "abspow") {
    expect_params(spec, q, 1);
    const double a = q[0];
    if (!(a > 0.0 && a <= 1.0)) throw InputError("preset '" + spec + "': exponent must lie in (0, 1]");
    p.value = [a](const Vec& x) { return std::pow(std::abs(x(0)), 1.0 + a); };
    p.gradient = [a, dim](const Vec& x) -> Vec {
      Vec g = Vec::Zero(dim);
      g(0) = (1.0 + a) * std::pow(std::abs(x(0)), a) * (x(0) < 0.0 ? -1.0 : 1.0);
      return g;
    };
  } else if (p.name == "radialpow") {
    expect_params(spec, q, 1);
    const double b = q[0];
    if (!(b > 0.0)) throw InputError("preset '" + spec + "': exponent must be positive");
    p.value = [b](const Vec& x) { return std::pow(x.norm(), b); };
    if (b >= 1.0) {
      p.gradient = [b, dim](const Vec& x) -> Vec {
        const double s = x.norm();
        if (s == 0.0) return b == 1.0 ? Vec(Vec::Constant(dim, std::nan(""))) : Vec(Vec::Zero(dim));
        return b * std::pow(s, b - 2.0) * x;
      };
    }
  } else if (p.name == "toric-slice") {
    expect_params(spec, q, 0);
    p.value = [](const Vec& x) { return x(0) * x(0) + x(1) * x(1); };
    p.gradient = [dim](const Vec& x) -> Vec {
      Vec g = Vec::Zero(dim);
      g(0) = 2.0 * x(0);
      g(1) = 2.0 * x(1);
      return g;
    };
  } else {
    expect_params(spec, q, 1);
    const double a = q[0];
    if (!(a > 0.0 && a <= 1.0)) throw InputError("preset '" + spec + "': exponent must lie in (0, 1]");
    p.value = [a](const Vec& x) { return std::pow(std::abs(std::atan2(x(1), x(0))) / std::numbers::pi, a); };
  }
  return p;
}

ScalarField density_root(const Preset& f, int n) {
  return [value = f.value, n, spec = f.spec](const Vec& x) {
    const double v = value(x);
    if (v < 0.0) {
      if (v < -1e-14) throw DomainError("density '" + spec + "' is negative at a sample");
      return 0.0;
    }
    return n == 1 ? v : std::pow(v, 1.0 / n);
  };
}

}  // namespace holderlab
