#include "stable_spectra/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "stable_spectra/errors.hpp"

namespace stable_spectra::io {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string(where) + ": missing \"" + key + "\"");
  }
  return j.at(key);
}

double as_double(const json& j, const char* where) {
  if (!j.is_number()) throw ValidationError(std::string(where) + ": expected a number");
  return j.get<double>();
}

std::vector<double> as_doubles(const json& j, const char* where) {
  if (!j.is_array()) throw ValidationError(std::string(where) + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_double(v, where));
  return out;
}

std::complex<double> as_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_object()) {
    const double re = j.contains("re") ? as_double(j.at("re"), "F entry") : 0.0;
    const double im = j.contains("im") ? as_double(j.at("im"), "F entry") : 0.0;
    return {re, im};
  }
  throw ValidationError("F entry: expected {\"re\": .., \"im\": ..} or a number");
}

json complex_json(std::complex<double> z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

DiscreteSpectralMeasure measure_from_json(const json& j) {
  const auto& mode_j = require(j, "mode", "measure");
  if (!mode_j.is_string()) throw ValidationError("measure: \"mode\" must be a string");
  const std::string mode_s = mode_j.get<std::string>();
  Mode mode;
  if (mode_s == "real") {
    mode = Mode::real;
  } else if (mode_s == "complex") {
    mode = Mode::complex;
  } else {
    throw ValidationError("measure: unknown mode \"" + mode_s + "\"");
  }
  const auto& dim_j = require(j, "dimension", "measure");
  if (!dim_j.is_number_integer() || dim_j.get<long long>() < 1) {
    throw ValidationError("measure: \"dimension\" must be a positive integer");
  }
  const auto d = static_cast<std::size_t>(dim_j.get<long long>());
  const auto& atoms_j = require(j, "atoms", "measure");
  if (!atoms_j.is_array()) throw ValidationError("measure: \"atoms\" must be an array");
  std::vector<Atom> atoms;
  for (const auto& a : atoms_j) {
    Atom atom;
    atom.point = as_doubles(require(a, "point", "atom"), "atom point");
    atom.weight = as_double(require(a, "weight", "atom"), "atom weight");
    double norm = 0.0;
    for (double x : atom.point) norm += x * x;
    norm = std::sqrt(norm);
    if (std::abs(norm - 1.0) > 1e-6) {
      std::ostringstream msg;
      msg << "measure: atom point has norm " << norm << ", not within 1e-6 of 1";
      throw ValidationError(msg.str());
    }
    for (double& x : atom.point) x /= norm;
    atoms.push_back(std::move(atom));
  }
  return DiscreteSpectralMeasure(mode, d, std::move(atoms));
}

json to_json(const DiscreteSpectralMeasure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back({{"point", a.point}, {"weight", a.weight}});
  return json{{"mode", to_string(m.mode())}, {"dimension", m.dimension()}, {"atoms", atoms}};
}

DiscreteBimeasure bimeasure_from_json(const json& j) {
  DiscreteBimeasure b;
  b.frequencies = as_doubles(require(j, "frequencies", "bimeasure"), "bimeasure frequencies");
  const auto& rows = require(j, "F", "bimeasure");
  const std::size_t n = b.frequencies.size();
  if (!rows.is_array() || rows.size() != n) {
    throw ValidationError("bimeasure: \"F\" must be an n x n array for n frequencies");
  }
  b.F = ComplexMatrix(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (!rows[r].is_array() || rows[r].size() != n) {
      throw ValidationError("bimeasure: \"F\" must be an n x n array for n frequencies");
    }
    for (std::size_t c = 0; c < n; ++c) b.F(r, c) = as_complex(rows[r][c]);
  }
  return b;
}

json to_json(const DiscreteBimeasure& b) {
  json rows = json::array();
  for (std::size_t r = 0; r < b.size(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < b.size(); ++c) row.push_back(complex_json(b.F(r, c)));
    rows.push_back(row);
  }
  return json{{"frequencies", b.frequencies}, {"F", rows}};
}

IncrementLaw increment_law_from_json(const json& j, const double* fallback_alpha) {
  double alpha = 0.0;
  if (j.is_object() && j.contains("alpha")) {
    alpha = as_double(j.at("alpha"), "increment law alpha");
  } else if (fallback_alpha != nullptr) {
    alpha = *fallback_alpha;
  } else {
    throw ValidationError("increment law: missing \"alpha\"");
  }
  auto freqs = as_doubles(require(j, "frequencies", "increment law"), "increment law frequencies");
  auto joint = measure_from_json(require(j, "joint_measure", "increment law"));
  return IncrementLaw(std::move(freqs), std::move(joint), Alpha(alpha));
}

json to_json(const IncrementLaw& law) {
  return json{{"alpha", law.alpha().value()},
              {"frequencies", law.frequencies()},
              {"joint_measure", to_json(law.joint_measure())}};
}

HarmonisableModel model_from_json(const json& j) {
  const double alpha = as_double(require(j, "alpha", "model"), "model alpha");
  auto freqs = as_doubles(require(j, "frequencies", "model"), "model frequencies");
  std::optional<IncrementLaw> law;
  if (j.contains("increments") && !j.at("increments").is_null()) {
    law = increment_law_from_json(j.at("increments"), &alpha);
  }
  const bool has_bimeasure = j.contains("bimeasure") && !j.at("bimeasure").is_null();
  if (has_bimeasure) {
    auto b = bimeasure_from_json(j.at("bimeasure"));
    if (b.frequencies != freqs) {
      throw ValidationError("model: bimeasure frequencies differ from the model's");
    }
    return HarmonisableModel(Alpha(alpha), std::move(freqs), std::move(b.F), std::move(law));
  }
  if (!law) throw ValidationError("model: needs a \"bimeasure\" or \"increments\"");
  if (law->frequencies() != freqs) {
    throw ValidationError("model: increment law frequencies differ from the model's");
  }
  return HarmonisableModel(*law);
}

json to_json(const HarmonisableModel& m) {
  DiscreteBimeasure b{m.frequencies(), m.F(), std::nullopt};
  json out{{"alpha", m.alpha().value()}, {"frequencies", m.frequencies()}, {"bimeasure", to_json(b)}};
  out["increments"] = m.increments() ? to_json(*m.increments()) : json(nullptr);
  return out;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string format_number(double x) {
  if (x == 0.0) return "0";  // also folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

void write_paths_csv(std::ostream& out, const PathMatrix& paths) {
  out << "path,t,re,im\n";
  for (std::size_t p = 0; p < paths.n_paths; ++p) {
    for (std::size_t i = 0; i < paths.times.size(); ++i) {
      const auto v = paths.at(p, i);
      out << p << ',' << format_number(paths.times[i]) << ',' << format_number(v.real()) << ','
          << format_number(v.imag()) << '\n';
    }
  }
}

}  // namespace stable_spectra::io
