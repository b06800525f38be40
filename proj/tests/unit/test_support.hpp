#pragma once

#include <string>

#include "stable_spectra/io.hpp"

namespace test_support {

inline std::string data_path(const std::string& name) {
  return std::string(STABLE_SPECTRA_TEST_DATA) + "/" + name;
}

inline stable_spectra::DiscreteSpectralMeasure load_measure(const std::string& name) {
  return stable_spectra::io::measure_from_json(stable_spectra::io::read_json_file(data_path(name)));
}

inline stable_spectra::HarmonisableModel load_model(const std::string& name) {
  return stable_spectra::io::model_from_json(stable_spectra::io::read_json_file(data_path(name)));
}

}  // namespace test_support
