#include <gtest/gtest.h>

#include <sstream>

#include "stable_spectra/errors.hpp"
#include "stable_spectra/io.hpp"
#include "test_support.hpp"

using namespace stable_spectra;
using nlohmann::json;

TEST(Io, MeasureRoundTrip) {
  for (const char* name : {"axes_d4.json", "complex_mixed.json", "tilted_triple.json"}) {
    const auto m = test_support::load_measure(name);
    const auto back = io::measure_from_json(io::to_json(m));
    EXPECT_EQ(back.mode(), m.mode());
    EXPECT_EQ(back.dimension(), m.dimension());
    ASSERT_EQ(back.atoms().size(), m.atoms().size());
    for (std::size_t i = 0; i < m.atoms().size(); ++i) {
      EXPECT_EQ(back.atoms()[i].point, m.atoms()[i].point);
      EXPECT_EQ(back.atoms()[i].weight, m.atoms()[i].weight);
    }
  }
}

TEST(Io, ModelRoundTrip) {
  for (const char* name : {"model_diagonal.json", "model_lattice.json", "model_mixed.json"}) {
    const auto m = test_support::load_model(name);
    const auto back = io::model_from_json(io::to_json(m));
    EXPECT_EQ(back.frequencies(), m.frequencies());
    EXPECT_EQ(back.increments().has_value(), m.increments().has_value());
    for (std::size_t j = 0; j < m.size(); ++j) {
      for (std::size_t k = 0; k < m.size(); ++k) EXPECT_EQ(back.F()(j, k), m.F()(j, k));
    }
  }
}

TEST(Io, BimeasureAcceptsPlainNumbers) {
  const json j = {{"frequencies", {0.0, 1.0}}, {"F", {{1.0, 0.5}, {{{"re", 0.5}, {"im", 0.0}}, 2.0}}}};
  const auto b = io::bimeasure_from_json(j);
  EXPECT_EQ(b.F(0, 1), std::complex<double>(0.5, 0.0));
  EXPECT_EQ(b.F(1, 1), std::complex<double>(2.0, 0.0));
}

TEST(Io, MalformedInput) {
  EXPECT_THROW(io::measure_from_json(json{{"mode", "real"}}), ValidationError);
  EXPECT_THROW(io::measure_from_json(json{{"mode", "quaternion"}, {"dimension", 1}, {"atoms", json::array()}}),
               ValidationError);
  const json bad_f = {{"frequencies", {0.0, 1.0}}, {"F", {{1.0}}}};
  EXPECT_THROW(io::bimeasure_from_json(bad_f), ValidationError);
  EXPECT_THROW(io::read_json_file(test_support::data_path("does_not_exist.json")), ValidationError);
  const json no_law = {{"alpha", 1.5}, {"frequencies", {0.0}}, {"bimeasure", nullptr}, {"increments", nullptr}};
  EXPECT_THROW(io::model_from_json(no_law), ValidationError);
}

TEST(Io, NumberFormatting) {
  EXPECT_EQ(io::format_number(-0.0), "0");
  EXPECT_EQ(io::format_number(0.1), "0.1");
  EXPECT_EQ(io::format_number(1.0 / 3.0), "0.333333333333333");
}

TEST(Io, PathsCsv) {
  PathMatrix p;
  p.times = {0.0, 1.5};
  p.n_paths = 1;
  p.values = {{1.0, -2.0}, {0.25, 0.0}};
  std::ostringstream out;
  io::write_paths_csv(out, p);
  EXPECT_EQ(out.str(), "path,t,re,im\n0,0,1,-2\n0,1.5,0.25,0\n");
}
