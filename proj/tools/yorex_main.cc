/*
 * Copyright 2026 The yorex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


// yorex command line: explain, bench, heatmap-score, make-scene and
// serve-synthetic.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "yorex/bench.h"
#include "yorex/client.h"
#include "yorex/engine.h"
#include "yorex/image_io.h"
#include "yorex/metrics.h"
#include "yorex/report.h"
#include "yorex/scene.h"
#include "yorex/synthetic_detector.h"

namespace {

using namespace yorex;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitDetector = 2;

std::vector<int> ParseInts(const std::string& text, size_t expected,
                           const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument(std::string("bad ") + what + ": " + text);
    }
    out.push_back(v);
  }
  if (expected && out.size() != expected) {
    throw std::invalid_argument(std::string("bad ") + what + ": " + text);
  }
  return out;
}

Rgb ParseRgb(const std::string& text) {
  const auto v = ParseInts(text, 3, "color");
  for (int c : v) {
    if (c < 0 || c > 255) throw std::invalid_argument("color out of range: " + text);
  }
  return {static_cast<uint8_t>(v[0]), static_cast<uint8_t>(v[1]),
          static_cast<uint8_t>(v[2])};
}

nlohmann::json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

Scene LoadScene(const std::string& path) { return SceneFromJson(ReadJsonFile(path)); }

// Boxes from a JSON array of [x0,y0,x1,y1] or of objects carrying "box", or
// from a run report.
std::vector<Box> LoadBoxes(const std::string& path) {
  nlohmann::json doc = ReadJsonFile(path);
  if (doc.is_object() && doc.contains("detections")) doc = doc["detections"];
  if (!doc.is_array()) throw std::invalid_argument(path + ": expected an array of boxes");
  std::vector<Box> out;
  for (const auto& item : doc) {
    const auto& b = item.is_object() ? item.at("box") : item;
    if (!b.is_array() || b.size() != 4) {
      throw std::invalid_argument(path + ": box must be [x0,y0,x1,y1]");
    }
    out.push_back(EnclosingBox(b[0].get<double>(), b[1].get<double>(),
                               b[2].get<double>(), b[3].get<double>()));
  }
  return out;
}

struct ExplainArgs {
  std::string image;
  std::string detector;
  std::string scene;
  std::string dist = "uniform";
  std::string mask = "0,0,0";
  std::string mode = "yorex";
  std::string crop;
  std::string out = "yorex_out";
  double min_visible = 0.25;
  double timeout_s = 60.0;
  bool by_path = false;
  RunConfig config;
};

int RunExplain(const ExplainArgs& a) {
  RunConfig config = a.config;
  config.distribution = SplitDistribution::Parse(a.dist);
  config.mask_value = ParseRgb(a.mask);
  config.mode = ParseMode(a.mode);
  config.Validate();

  Raster image = ReadImage(a.image);
  if (!a.crop.empty()) {
    const auto c = ParseInts(a.crop, 4, "crop");
    const Box box{c[0], c[1], c[2], c[3]};
    if (!box.FitsIn(image.width(), image.height())) {
      throw std::invalid_argument("crop " + box.ToString() + " outside the image");
    }
    image = image.Crop(box);
  }

  std::unique_ptr<Detector> detector;
  if (a.detector == "synthetic") {
    Raster reference = image;
    std::vector<BlobClass> classes = DefaultPalette(a.min_visible);
    if (!a.scene.empty()) {
      const Scene scene = LoadScene(a.scene);
      classes = scene.Classes();
      if (a.crop.empty()) reference = scene.Render();
    }
    detector = std::make_unique<SyntheticBlobDetector>(reference, classes);
  } else {
    ClientOptions options;
    options.timeout = std::chrono::milliseconds(static_cast<int64_t>(a.timeout_s * 1000));
    if (a.by_path) {
      options.payload_by_path = true;
      options.payload_dir = (std::filesystem::path(a.out) / "payload").string();
      std::filesystem::create_directories(options.payload_dir);
    }
    auto client = ProtocolClient::Connect(a.detector, options);
    if (config.max_batch == 0) config.max_batch = client->max_batch();
    detector = std::move(client);
  }

  const ExplainResult result = Explain(image, *detector, config);
  WriteRunArtifacts(result, a.out);
  const RunReport& r = result.report;
  std::printf("%s: %zu objects, %lld queries (initial %lld, search %lld, extraction %lld)\n",
              ModeName(r.mode), r.object_count, static_cast<long long>(r.ledger.total()),
              static_cast<long long>(r.ledger.initial),
              static_cast<long long>(r.ledger.level_search),
              static_cast<long long>(r.ledger.extraction));
  if (!r.complete) {
    std::fprintf(stderr, "detector failure: %s\n", r.error.c_str());
    return kExitDetector;
  }
  return kExitOk;
}

struct BenchArgs {
  std::string objects = "1,5,10,20";
  std::string modes = "yorex,baseline";
  std::string out;
  std::string dist = "uniform";
  bool overlap = false;
  BenchOptions options;
};

int RunBenchCommand(BenchArgs a) {
  a.options.objects = ParseInts(a.objects, 0, "object list");
  for (int n : a.options.objects) {
    if (n < 0) throw std::invalid_argument("negative object count");
  }
  a.options.modes.clear();
  std::stringstream ss(a.modes);
  for (std::string m; std::getline(ss, m, ',');) a.options.modes.push_back(ParseMode(m));
  if (a.options.trials < 1) throw std::invalid_argument("trials must be >= 1");
  a.options.config.distribution = SplitDistribution::Parse(a.dist);
  a.options.config.Validate();
  a.options.scene.allow_overlap = a.overlap;

  const auto rows = RunBench(a.options);
  if (!a.out.empty()) {
    std::ofstream out(a.out);
    if (!out) throw std::invalid_argument("cannot write " + a.out);
    WriteBenchCsv(out, rows);
  } else {
    WriteBenchCsv(std::cout, rows);
  }

  std::printf("%8s", "objects");
  for (RunMode m : a.options.modes) std::printf(" %12s", ModeName(m));
  std::printf("\n");
  std::vector<std::vector<double>> totals;
  for (RunMode m : a.options.modes) {
    totals.push_back(MeanTotals(rows, a.options.objects, m));
  }
  for (size_t i = 0; i < a.options.objects.size(); ++i) {
    std::printf("%8d", a.options.objects[i]);
    for (const auto& t : totals) std::printf(" %12.1f", t[i]);
    std::printf("\n");
  }
  for (const BenchRow& r : rows) {
    if (!r.complete) return kExitDetector;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-object causal explanations for black-box object detectors"};
  app.require_subcommand(1);

  ExplainArgs ex;
  auto* explain = app.add_subcommand("explain", "Explain every detection of an image");
  explain->add_option("--image", ex.image, "PNG or PPM input")->required();
  explain->add_option("--detector", ex.detector,
                      "Detector command, tcp:HOST:PORT, or 'synthetic'")
      ->envname(kDetectorCmdEnv);
  explain->add_option("--scene", ex.scene, "Scene JSON for the synthetic detector (implies --detector synthetic)");
  explain->add_option("--min-visible", ex.min_visible,
                      "Synthetic detector visibility fraction");
  explain->add_option("--iterations", ex.config.iterations, "Iterations k");
  explain->add_option("--parts", ex.config.parts, "Parts per region s");
  explain->add_option("--dist", ex.dist, "uniform or betabin:A,B");
  explain->add_option("--mask", ex.mask, "Masking color R,G,B");
  explain->add_option("--min-region", ex.config.min_region,
                      "Stop refining parts of at most this many pixels");
  explain->add_option("--iou", ex.config.iou_threshold, "IoU match threshold");
  explain->add_option("--seed", ex.config.seed, "Master seed");
  explain->add_option("--mode", ex.mode, "yorex or baseline");
  explain->add_option("--max-batch", ex.config.max_batch,
                      "Images per detector request (0: detector's limit)");
  explain->add_option("--timeout", ex.timeout_s, "Seconds to wait for a response");
  explain->add_flag("--payload-by-path", ex.by_path,
                    "Pass images as files instead of inline base64");
  explain->add_option("--crop", ex.crop, "Run on the sub-image x0,y0,x1,y1");
  explain->add_option("--out", ex.out, "Output directory");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Query counts against object count");
  bench_cmd->add_option("--objects", bench.objects, "Comma-separated object counts");
  bench_cmd->add_option("--trials", bench.options.trials, "Scenes per object count");
  bench_cmd->add_option("--seed", bench.options.seed, "Master seed");
  bench_cmd->add_option("--modes", bench.modes, "Comma-separated modes");
  bench_cmd->add_option("--iterations", bench.options.config.iterations, "Iterations k");
  bench_cmd->add_option("--parts", bench.options.config.parts, "Parts per region s");
  bench_cmd->add_option("--dist", bench.dist, "uniform or betabin:A,B");
  bench_cmd->add_option("--min-region", bench.options.config.min_region, "Refinement floor");
  bench_cmd->add_option("--min-size", bench.options.scene.min_size, "Smallest blob side");
  bench_cmd->add_option("--max-size", bench.options.scene.max_size, "Largest blob side");
  bench_cmd->add_option("--min-visible", bench.options.scene.min_visible_fraction,
                        "Synthetic detector visibility fraction");
  bench_cmd->add_flag("--overlap", bench.overlap, "Let blobs overlap");
  bench_cmd->add_option("--out", bench.out, "CSV path (default stdout)");

  std::string heatmap, boxes_path;
  int threshold = -1;
  auto* score = app.add_subcommand("heatmap-score", "Hot pixels outside the boxes");
  score->add_option("--heatmap", heatmap, "Heatmap PNG or PPM")->required();
  score->add_option("--boxes", boxes_path, "JSON boxes or a run report")->required();
  score->add_option("--threshold", threshold, "Hot intensity, 0..255")->required();

  SceneOptions scene_opts;
  std::string scene_out, scene_image;
  auto* make_scene = app.add_subcommand("make-scene", "Generate a blob scene");
  make_scene->add_option("--objects", scene_opts.objects, "Number of blobs");
  make_scene->add_option("--seed", scene_opts.seed, "Seed");
  make_scene->add_option("--min-size", scene_opts.min_size, "Smallest blob side");
  make_scene->add_option("--max-size", scene_opts.max_size, "Largest blob side");
  make_scene->add_option("--min-visible", scene_opts.min_visible_fraction,
                         "Visibility fraction");
  make_scene->add_flag("--overlap", scene_opts.allow_overlap, "Let blobs overlap");
  make_scene->add_option("--out", scene_out, "Scene JSON path")->required();
  make_scene->add_option("--image", scene_image, "Also write the rendered image");

  std::string serve_scene;
  int port = -1;
  uint32_t serve_batch = 64;
  auto* serve = app.add_subcommand("serve-synthetic",
                                   "Serve a scene's synthetic detector over the wire protocol");
  serve->add_option("--scene", serve_scene, "Scene JSON")->required();
  serve->add_option("--port", port, "TCP port on 127.0.0.1 (default: stdin/stdout)");
  serve->add_option("--max-batch", serve_batch, "Advertised batch limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*explain) {
      if (ex.detector.empty() && !ex.scene.empty()) ex.detector = "synthetic";
      if (ex.detector.empty()) {
        throw std::invalid_argument("no detector: pass --detector or set " +
                                    std::string(kDetectorCmdEnv));
      }
      return RunExplain(ex);
    }
    if (*bench_cmd) return RunBenchCommand(bench);
    if (*score) {
      if (threshold < 0 || threshold > 255) {
        throw std::invalid_argument("threshold must be in 0..255");
      }
      const GrayImage h = ReadGrayImage(heatmap);
      const auto boxes = LoadBoxes(boxes_path);
      std::printf("%.6f\n", HotOutside(h, boxes, static_cast<uint8_t>(threshold)));
      return kExitOk;
    }
    if (*make_scene) {
      const Scene scene = MakeScene(scene_opts);
      std::ofstream out(scene_out);
      if (!out) throw std::invalid_argument("cannot write " + scene_out);
      out << SceneToJson(scene).dump(2) << "\n";
      if (!scene_image.empty()) {
        const Raster img = scene.Render();
        if (scene_image.ends_with(".ppm")) {
          WritePpm(scene_image, img);
        } else {
          WritePng(scene_image, img);
        }
      }
      return kExitOk;
    }
    if (*serve) {
      const Scene scene = LoadScene(serve_scene);
      SyntheticBlobDetector detector(scene.Render(), scene.Classes());
      if (port >= 0) {
        ServeDetectorTcp(detector, static_cast<uint16_t>(port), serve_batch,
                         [](uint16_t p) { std::fprintf(stderr, "listening %u\n", p); });
      } else {
        FdChannel channel(0, 1, false);
        ServeDetector(detector, channel, serve_batch);
      }
      return kExitOk;
    }
  } catch (const DetectorError& e) {
    std::fprintf(stderr, "detector failure: %s\n", e.what());
    return kExitDetector;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvalid;
  }
  return kExitInvalid;
}
