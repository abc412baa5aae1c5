// beadpath command line: generate | render | analyze | gcode

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "beadpath/analysis.hpp"
#include "beadpath/io.hpp"
#include "beadpath/pipeline.hpp"

namespace fs = std::filesystem;
using namespace beadpath;

namespace {

struct SchemeFlags {
  std::string scheme;
  double w_star = 0, alpha_max = 0, d_discretization = 0, retreat = 0;
  int n = 0, c = 0, shell = 0;
  std::vector<double> widening;
};

void add_scheme_flags(CLI::App* app, SchemeFlags& f) {
  app->add_option("--scheme", f.scheme, "uniform|outer|constant|evenly|centered|inward")
      ->check(CLI::IsMember({"uniform", "outer", "constant", "evenly", "centered", "inward"}));
  app->add_option("--w-star", f.w_star, "preferred bead width, mm")->check(CLI::PositiveNumber);
  app->add_option("--alpha-max", f.alpha_max, "significance angle, degrees");
  app->add_option("--d-discretization", f.d_discretization, "edge discretization step, mm")
      ->check(CLI::PositiveNumber);
  app->add_option("--n", f.n, "inward scheme: beads kept at w*");
  app->add_option("--c", f.c, "constant scheme: bead count");
  app->add_option("--shell", f.shell, "outer walls kept at w*");
  app->add_option("--widening", f.widening, "minimum feature width and radius: w_min r_min")->expected(2);
  app->add_option("--retreat", f.retreat, "retreat ratio at intersections");
}

// Layer config first, explicit flags on top.
PipelineConfig resolve(const CLI::App* app, const SchemeFlags& f, const LayerFile& layer) {
  PipelineConfig cfg;
  apply_layer_config(layer, cfg);
  auto given = [&](const char* name) { return app->count(name) > 0; };
  if (given("--scheme")) cfg.scheme.name = f.scheme;
  if (given("--w-star")) cfg.scheme.w_star = f.w_star;
  if (given("--alpha-max")) cfg.alpha_max_deg = f.alpha_max;
  if (given("--d-discretization")) cfg.d_discretization = f.d_discretization;
  if (given("--n")) cfg.scheme.n = f.n;
  if (given("--c")) cfg.scheme.c = f.c;
  if (given("--shell")) cfg.scheme.shell = f.shell;
  if (given("--widening")) {
    cfg.scheme.widening = true;
    cfg.scheme.w_min = f.widening[0];
    cfg.scheme.r_min = f.widening[1];
  }
  if (given("--retreat")) cfg.retreat_ratio = f.retreat;
  return cfg;
}

std::string output_for(const std::string& input, const std::string& out, std::size_t n_inputs) {
  if (n_inputs == 1 && !out.empty()) return out;
  fs::path in(input);
  fs::path name = in.stem().string() + ".toolpaths.json";
  if (out.empty()) return (in.parent_path() / name).string();
  return (fs::path(out) / name).string();
}

int run_generate(const CLI::App* app, const SchemeFlags& f, const std::vector<std::string>& inputs,
                 const std::string& out, int jobs) {
  if (inputs.size() > 1 && !out.empty()) fs::create_directories(out);
  std::atomic<std::size_t> next{0};
  std::atomic<int> status{0};
  std::mutex err_mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < inputs.size(); i = next++) {
      try {
        LayerFile layer = read_layer(inputs[i]);
        PipelineConfig cfg = resolve(app, f, layer);
        auto lines = generate_toolpaths(layer.outline, cfg);
        write_file(output_for(inputs[i], out, inputs.size()), toolpaths_to_json(lines));
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(err_mu);
        std::cerr << "beadpath generate: " << inputs[i] << ": " << e.what() << "\n";
        status = 1;
      }
    }
  };
  int n = std::max(1, std::min<int>(jobs, int(inputs.size())));
  std::vector<std::thread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return status;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive bead width toolpath generator"};
  app.require_subcommand(1);

  SchemeFlags sf;
  std::vector<std::string> inputs;
  std::string out;
  int jobs = 1;
  auto* gen = app.add_subcommand("generate", "layer outline -> toolpaths");
  gen->add_option("input", inputs, "layer file(s)")->required()->check(CLI::ExistingFile);
  gen->add_option("-o,--output", out, "toolpath file, or directory for several inputs");
  gen->add_option("--jobs", jobs, "worker threads over input files")->check(CLI::PositiveNumber);
  add_scheme_flags(gen, sf);

  std::string toolpaths, outline_path;
  double w_star = 0.4;
  bool overlay = false;
  auto* render = app.add_subcommand("render", "toolpaths -> SVG");
  render->add_option("toolpaths", toolpaths)->required()->check(CLI::ExistingFile);
  render->add_option("--outline", outline_path, "layer file")->check(CLI::ExistingFile);
  render->add_option("-o,--output", out);
  render->add_option("--w-star", w_star, "width drawn gray, mm")->check(CLI::PositiveNumber);
  render->add_flag("--overlay", overlay, "draw overfill (orange) and underfill (azure)");

  auto* analyze = app.add_subcommand("analyze", "toolpaths + outline -> accuracy report");
  analyze->add_option("toolpaths", toolpaths)->required()->check(CLI::ExistingFile);
  analyze->add_option("--outline", outline_path, "layer file")->required()->check(CLI::ExistingFile);
  analyze->add_option("-o,--output", out);

  GcodeOptions go;
  std::vector<double> start;
  auto* gcode = app.add_subcommand("gcode", "toolpaths -> G-code");
  gcode->add_option("toolpaths", toolpaths)->required()->check(CLI::ExistingFile);
  gcode->add_option("-o,--output", out);
  gcode->add_option("--k", go.model.k, "back-pressure coefficient, mm^3/s");
  gcode->add_option("--v0", go.model.v0, "speed at w0, mm/s")->check(CLI::PositiveNumber);
  gcode->add_option("--w0", go.model.w0, "reference width, mm")->check(CLI::PositiveNumber);
  gcode->add_option("--layer-height", go.model.h, "mm")->check(CLI::PositiveNumber);
  gcode->add_option("--flow-factor", go.model.flow_factor)->check(CLI::PositiveNumber);
  gcode->add_flag("--clamp-min-flow", go.model.clamp_min_flow, "clamp flow to 5% of f0 instead of failing");
  gcode->add_option("--start", start, "initial nozzle position x y, mm")->expected(2);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_generate(gen, sf, inputs, out, jobs);
    if (render->parsed()) {
      auto lines = read_toolpaths(toolpaths);
      PolygonSet outline;
      if (!outline_path.empty()) outline = read_layer(outline_path).outline;
      SvgOptions opt;
      opt.w_star = w_star;
      AccuracyReport acc;
      if (overlay) {
        if (outline.empty()) throw std::runtime_error("--overlay needs --outline");
        acc = compute_accuracy(lines, outline);
        opt.overlay = &acc;
      }
      emit(out, render_svg(lines, outline, opt));
      return 0;
    }
    if (analyze->parsed()) {
      auto lines = read_toolpaths(toolpaths);
      PolygonSet outline = read_layer(outline_path).outline;
      emit(out, report_to_json(compute_accuracy(lines, outline), compute_statistics(lines)));
      return 0;
    }
    if (gcode->parsed()) {
      auto lines = read_toolpaths(toolpaths);
      if (start.size() == 2) go.start_x = start[0], go.start_y = start[1];
      emit(out, emit_gcode(order_greedy(lines, go.start_x, go.start_y), go));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "beadpath " << app.get_subcommands().front()->get_name() << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
