// Copyright 2026 The traversim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the traversim core.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>
#include <sstream>

#include "traversim/action_space.hpp"
#include "traversim/dataset.hpp"
#include "traversim/errors.hpp"
#include "traversim/map_io.hpp"
#include "traversim/metrics.hpp"
#include "traversim/opensimplex.hpp"
#include "traversim/raster.hpp"
#include "traversim/robot.hpp"
#include "traversim/sbt_io.hpp"
#include "traversim/terrain.hpp"
#include "traversim/traverse.hpp"

namespace py = pybind11;
using namespace traversim;

namespace
{

py::array_t<double> map_to_array(const ElevationMap & map)
{
  const py::ssize_t n = map.side_cells();
  py::array_t<double> out({n, n});
  std::memcpy(out.mutable_data(), map.cells().data(), map.cells().size() * sizeof(double));
  return out;
}

ElevationMap map_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a,
  double cell_size, double origin_x, double origin_y)
{
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) {
    throw InvalidParams("elevation array must be square");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  std::vector<double> cells(a.data(), a.data() + n * n);
  return ElevationMap(static_cast<int>(n), cell_size, origin_x, origin_y, std::move(cells));
}

py::array_t<float> tensor_to_array(const SampleTensor & t)
{
  const py::ssize_t n = t.side;
  py::array_t<float> out({py::ssize_t{3}, n, n});
  std::memcpy(out.mutable_data(), t.data.data(), t.data.size() * sizeof(float));
  return out;
}

py::array_t<double> waypoints_array(const Trajectory & t)
{
  py::array_t<double> out({static_cast<py::ssize_t>(t.waypoints.size()), py::ssize_t{4}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
    const auto & w = t.waypoints[i];
    v(i, 0) = w.x;
    v(i, 1) = w.y;
    v(i, 2) = w.heading;
    v(i, 3) = w.s;
  }
  return out;
}

py::dict scores_dict(const EventScores & s)
{
  py::dict d;
  auto put = [&](const char * k, const std::optional<double> & v) {
    d[k] = v ? py::cast(*v) : py::none();
  };
  put("accuracy", s.accuracy);
  put("recall", s.recall);
  put("precision", s.precision);
  put("f1", s.f1);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
  m.doc() = "traversim core: terrain, traverse simulation, rasterization and metrics";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def("noise2", [](std::int64_t seed, double x, double y) { return NoiseSource(seed).noise2d(x, y); },
    py::arg("seed"), py::arg("x"), py::arg("y"));
  m.def("intrp", &intrp, py::arg("v"), py::arg("u"), py::arg("d"));

  py::class_<TerrainParams>(m, "TerrainParams")
    .def(py::init<>())
    .def_readwrite("alpha_m", &TerrainParams::alpha_m)
    .def_readwrite("beta_m", &TerrainParams::beta_m)
    .def_readwrite("gamma_m", &TerrainParams::gamma_m)
    .def_readwrite("alpha_p", &TerrainParams::alpha_p)
    .def_readwrite("beta_p", &TerrainParams::beta_p)
    .def_readwrite("gamma_p", &TerrainParams::gamma_p)
    .def_readwrite("delta", &TerrainParams::delta)
    .def_readwrite("alpha_w", &TerrainParams::alpha_w)
    .def_readwrite("beta_w", &TerrainParams::beta_w)
    .def_readwrite("gamma_w", &TerrainParams::gamma_w)
    .def_readwrite("u", &TerrainParams::u)
    .def_readwrite("d", &TerrainParams::d)
    .def_readwrite("strict_plain_base", &TerrainParams::strict_plain_base)
    .def_readwrite("seed_m", &TerrainParams::seed_m)
    .def_readwrite("seed_p", &TerrainParams::seed_p)
    .def_readwrite("seed_w", &TerrainParams::seed_w)
    .def("set_seeds", &TerrainParams::set_seeds, py::arg("master"), py::arg("shared") = false);

  m.def(
    "generate_map",
    [](const TerrainParams & p, int side, double cell, double ox, double oy) {
      return map_to_array(generate_map(p, side, cell, ox, oy));
    },
    py::arg("params"), py::arg("side_cells") = kDefaultSideCells, py::arg("cell_size") = kDefaultCellSize,
    py::arg("origin_x") = 0.0, py::arg("origin_y") = 0.0,
    "Elevation grid (row 0 = max y) as a float64 array.");
  m.def("list_presets", [] { return list_presets(preset_directory()); });
  m.def("preset_params", [](const std::string & name) { return find_preset(preset_directory(), name).params; },
    py::arg("name"));
  m.def(
    "preset_map",
    [](const std::string & name, std::int64_t seed) {
      return map_to_array(generate_preset_map(find_preset(preset_directory(), name), seed));
    },
    py::arg("name"), py::arg("seed"));
  m.def("map_seed", &map_seed, py::arg("master"), py::arg("index"));

  m.def("read_emap", [](const std::filesystem::path & p) {
    const ElevationMap map = read_emap(p);
    return py::make_tuple(map_to_array(map), map.cell_size(), map.origin_x(), map.origin_y());
  });
  m.def(
    "write_emap",
    [](const std::filesystem::path & p, py::array_t<double, py::array::c_style | py::array::forcecast> z,
      double cell, double ox, double oy) { write_emap(p, map_from_array(z, cell, ox, oy)); },
    py::arg("path"), py::arg("elevation"), py::arg("cell_size") = kDefaultCellSize, py::arg("origin_x") = 0.0,
    py::arg("origin_y") = 0.0);

  py::class_<RobotConfig>(m, "RobotConfig")
    .def(py::init<>())
    .def_readwrite("wheelbase", &RobotConfig::wheelbase)
    .def_readwrite("wheel_track", &RobotConfig::wheel_track)
    .def_readwrite("wheel_width", &RobotConfig::wheel_width)
    .def_readwrite("body_length", &RobotConfig::body_length)
    .def_readwrite("body_width", &RobotConfig::body_width)
    .def_readwrite("ride_height", &RobotConfig::ride_height)
    .def_readwrite("max_step", &RobotConfig::max_step)
    .def_readwrite("max_tilt", &RobotConfig::max_tilt);

  py::class_<PrimitiveSpec>(m, "PrimitiveSpec")
    .def(py::init<>())
    .def_readwrite("rotation_index", &PrimitiveSpec::rotation_index)
    .def_readwrite("rotation", &PrimitiveSpec::rotation)
    .def_readwrite("rotation_deg", &PrimitiveSpec::rotation_deg)
    .def_readwrite("curvature1", &PrimitiveSpec::curvature1)
    .def_readwrite("curvature2", &PrimitiveSpec::curvature2)
    .def_readwrite("arc_length", &PrimitiveSpec::arc_length);

  m.def("action_space", [] { return build_action_space(ActionSpaceConfig{}); },
    "The default 3042 primitives in trajectory-id order.");
  m.def(
    "waypoints",
    [](const PrimitiveSpec & spec, double spacing) { return waypoints_array(discretize(spec, spacing)); },
    py::arg("spec"), py::arg("spacing") = 0.06, "Columns x, y, heading, s.");

  m.def(
    "simulate",
    [](py::array_t<double, py::array::c_style | py::array::forcecast> z, double cell, const RobotConfig & cfg,
      unsigned workers) {
      const ElevationMap map = map_from_array(z, cell, 0.0, 0.0);
      const auto trajs = discretize_all(build_action_space(ActionSpaceConfig{}), 0.06);
      const auto results = simulate_all(cfg, map, trajs, workers);
      py::array_t<std::uint8_t> out({static_cast<py::ssize_t>(results.size()), py::ssize_t{4}});
      auto v = out.mutable_unchecked<2>();
      for (std::size_t i = 0; i < results.size(); ++i) {
        v(i, 0) = results[i].label.step;
        v(i, 1) = results[i].label.obstacle;
        v(i, 2) = results[i].label.tilt;
        v(i, 3) = results[i].valid;
      }
      return out;
    },
    py::arg("elevation"), py::arg("cell_size") = kDefaultCellSize, py::arg("robot") = RobotConfig{},
    py::arg("workers") = 1, "Per-trajectory (step, obstacle, tilt, valid) flags over the default action space.");

  m.def(
    "rasterize",
    [](py::array_t<double, py::array::c_style | py::array::forcecast> z, double cell, const PrimitiveSpec & spec,
      const RobotConfig & cfg) {
      const ElevationMap map = map_from_array(z, cell, 0.0, 0.0);
      return tensor_to_array(rasterize(cfg, map, discretize(spec, 0.06)));
    },
    py::arg("elevation"), py::arg("cell_size"), py::arg("spec"), py::arg("robot") = RobotConfig{},
    "3x129x129 float32 tensor: elevation, trajectory, wheel trace.");

  m.def(
    "read_sbt",
    [](const std::filesystem::path & p) {
      const auto samples = read_sbt(p);
      const py::ssize_t n = static_cast<py::ssize_t>(samples.size());
      const py::ssize_t side = samples.empty() ? read_sbt_header(p).side : samples.front().side;
      py::array_t<float> x({n, py::ssize_t{3}, side, side});
      py::array_t<std::uint8_t> y({n, py::ssize_t{3}});
      py::array_t<std::uint32_t> keys({n, py::ssize_t{2}});
      auto yv = y.mutable_unchecked<2>();
      auto kv = keys.mutable_unchecked<2>();
      const std::size_t per = static_cast<std::size_t>(3 * side * side);
      for (py::ssize_t i = 0; i < n; ++i) {
        const auto & s = samples[i];
        std::memcpy(x.mutable_data() + i * per, s.data.data(), per * sizeof(float));
        yv(i, 0) = s.label.step;
        yv(i, 1) = s.label.obstacle;
        yv(i, 2) = s.label.tilt;
        kv(i, 0) = s.map_id;
        kv(i, 1) = s.traj_id;
      }
      return py::make_tuple(x, y, keys);
    },
    py::arg("path"), "Returns (tensors, labels, (map_id, traj_id) keys).");

  m.def(
    "scores",
    [](std::uint64_t tp, std::uint64_t fp, std::uint64_t tn, std::uint64_t fn) {
      return scores_dict(scores(ConfusionMatrix{tp, fp, tn, fn}));
    },
    py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"));
  m.def(
    "evaluate",
    [](const std::filesystem::path & predictions, const std::filesystem::path & labels, double threshold) {
      const auto report = evaluate(read_predictions_csv(predictions), read_labels_csv(labels), threshold);
      std::ostringstream text;
      write_report_text(text, report);
      return text.str();
    },
    py::arg("predictions"), py::arg("labels"), py::arg("threshold") = 0.5, "Text metrics report.");
}
