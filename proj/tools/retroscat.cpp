#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "retroscat/commands.hpp"

namespace {

int parse_threads(const std::string& text) {
  if (text == "auto") return 0;
  std::size_t used = 0;
  const int n = std::stoi(text, &used);
  if (used != text.size() || n < 1) throw std::invalid_argument(text);
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace retroscat;
  CLI::App app{"Phaseless monostatic imaging with transported amplitudes"};
  app.require_subcommand(1);

  std::string config, out, measurements, map, threads_text = "auto";
  double level = 0.0;
  double perturbation = 0.0;

  auto* forward = app.add_subcommand("forward", "synthesize the two-line measurement CSV");
  forward->add_option("--config", config, "experiment config (JSON)")->required();
  forward->add_option("--out", out, "measurement CSV to write")->required();
  forward->add_option("--threads", threads_text, "worker threads, or auto");

  auto* image = app.add_subcommand("image", "compute the d-map and render it");
  image->add_option("--config", config, "experiment config (JSON)")->required();
  image->add_option("--measurements", measurements, "measurement CSV")->required();
  image->add_option("--out", out, "output prefix for .csv and .pgm")->required();
  image->add_option("--threads", threads_text, "worker threads, or auto");

  auto* levelset = app.add_subcommand("levelset", "extract a contour from a d-map CSV");
  levelset->add_option("--map", map, "d-map CSV written by image")->required();
  levelset->add_option("--level", level, "contour level d0")->required();
  levelset->add_option("--out", out, "segment CSV to write")->required();

  auto* validate = app.add_subcommand("validate", "run the numerical self-checks");
  validate->add_option("--inject-modal-perturbation", perturbation)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitBadInput;
  }

  int threads = 0;
  try {
    threads = parse_threads(threads_text);
  } catch (const std::exception&) {
    std::cerr << "error: --threads expects a positive integer or auto\n";
    return kExitBadInput;
  }

  const Streams io{std::cout, std::cerr};
  if (*forward) return cmd_forward(config, out, threads, io);
  if (*image) return cmd_image(config, measurements, out, threads, io);
  if (*levelset) return cmd_levelset(map, level, out, io);
  return cmd_validate({perturbation}, io);
}
