#include "afd2d/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "afd2d/bounds.hpp"
#include "afd2d/errors.hpp"
#include "afd2d/io.hpp"
#include "afd2d/metrics.hpp"
#include "afd2d/real_pipeline.hpp"

namespace fs = std::filesystem;

namespace afd2d {

namespace {

constexpr EngineKind kAllEngines[] = {EngineKind::fd, EngineKind::ga,
                                      EngineKind::oga, EngineKind::afd,
                                      EngineKind::preoga};

fs::path ensure_out_dir(const std::string& out) {
  if (out.empty())
    throw std::invalid_argument("an output directory is required (--out)");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out);
  return fs::path(out);
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

int int_sqrt_floor(int v) {
  int r = static_cast<int>(std::sqrt(static_cast<double>(v)));
  while ((r + 1) * (r + 1) <= v) ++r;
  while (r * r > v) --r;
  return r;
}

/// Native step count whose expansion is complete at `terms` terms: the last
/// filled square level for the square engines, `terms` itself otherwise.
int completed_level(EngineKind kind, int terms) {
  return is_square_engine(kind) ? int_sqrt_floor(terms) : terms;
}

double residual_energy_at(const EngineResult& result, int native_level) {
  const std::vector<double>& hist = residual_energies(result);
  if (hist.empty() || native_level < 1) return result_input_energy(result);
  const int idx = std::min<int>(native_level, static_cast<int>(hist.size()));
  return hist[idx - 1];
}

void write_terms_csv(const fs::path& path, const EngineResult& result) {
  std::ofstream out = open_csv(path);
  out << "step,a_re,a_im,b_re,b_im,ma,mb,coeff_re,coeff_im,residual_energy\n";
  if (const auto* square = std::get_if<ProductAfdResult>(&result)) {
    for (int k = 0; k < square->steps(); ++k) {
      const DiscPoint& a = square->a_seq.seq[k];
      const DiscPoint& b = square->b_seq.seq[k];
      const Complex c = square->coeffs(k, k);
      out << k + 1 << ',' << format_float(a.re) << ',' << format_float(a.im)
          << ',' << format_float(b.re) << ',' << format_float(b.im) << ",1,1,"
          << format_float(c.real()) << ',' << format_float(c.imag()) << ','
          << format_float(square->residual_energy[k]) << '\n';
    }
  } else {
    const auto& state = std::get<GreedyState>(result);
    for (int k = 0; k < state.steps(); ++k) {
      const AtomRef& atom = state.atoms[k];
      const Complex c = state.coeffs[k];
      out << k + 1 << ',' << format_float(atom.a.re) << ','
          << format_float(atom.a.im) << ',' << format_float(atom.b.re) << ','
          << format_float(atom.b.im) << ',' << atom.ma << ',' << atom.mb << ','
          << format_float(c.real()) << ',' << format_float(c.imag()) << ','
          << format_float(state.history[k]) << '\n';
    }
  }
  if (!out) throw IoError("failed writing " + path.string());
}

void write_coeffs_csv(const fs::path& path, const ProductAfdResult& result) {
  std::ofstream out = open_csv(path);
  out << "k,l,coeff_re,coeff_im\n";
  for (int k = 0; k < result.steps(); ++k)
    for (int l = 0; l < result.steps(); ++l)
      out << k + 1 << ',' << l + 1 << ','
          << format_float(result.coeffs(k, l).real()) << ','
          << format_float(result.coeffs(k, l).imag()) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

/// bhattacharyya,psnr_db,mssim cells; mssim needs an 11x11 window to fit.
std::string metric_cells(const RMatrix& ref, const RMatrix& test, int bins) {
  const Histogram h1 = image_histogram(ref, bins);
  const Histogram h2 = image_histogram(test, bins);
  std::string cells = format_float(bhattacharyya(h1, h2));
  cells += ',' + format_float(psnr(ref, test));
  cells += ',';
  if (ref.rows() >= 11 && ref.cols() >= 11)
    cells += format_float(mssim(ref, test));
  else
    cells += "nan";
  return cells;
}

RMatrix rescale_for_image(const RMatrix& img, double lo, double hi) {
  if (!(hi > lo)) return RMatrix::Zero(img.rows(), img.cols());
  return (img.array() - lo) * (255.0 / (hi - lo));
}

RMatrix magnitude_map(const CMatrix& diff) {
  const RMatrix mag = diff.cwiseAbs();
  const double peak = mag.maxCoeff();
  return peak > 0.0 ? RMatrix(mag * (255.0 / peak)) : RMatrix::Zero(mag.rows(), mag.cols());
}

GreedyOptions greedy_options(const RunConfig& config) {
  GreedyOptions options;
  options.in_span_tol = config.tol;
  options.max_multiplicity = config.max_multiplicity;
  options.t_seq = config.t_seq;
  options.threads = config.threads;
  return options;
}

EngineConfig engine_config(const RunConfig& config, EngineKind kind, int terms) {
  EngineConfig ec;
  ec.grid = restrict_radius(build_parameter_grid(config.grid_nt, config.grid_ns),
                            config.rmax);
  ec.steps = native_steps_for_terms(kind, terms);
  ec.options = greedy_options(config);
  return ec;
}

bool has_extension(const std::string& path, const char* ext) {
  std::string got = fs::path(path).extension().string();
  std::transform(got.begin(), got.end(), got.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return got == ext;
}

int decompose_image(const RunConfig& config, const fs::path& out_dir) {
  const RMatrix image = read_pgm(config.input);
  const TorusGrid grid(static_cast<int>(image.rows()),
                       static_cast<int>(image.cols()), config.offset);
  const Signal2D f(grid, image.cast<Complex>());
  const EngineConfig ec = engine_config(config, config.engine, config.terms);
  const RealDecomposition dec = decompose_real(f, config.engine, ec);

  write_terms_csv(out_dir / "terms.csv", dec.lift_result);
  write_terms_csv(out_dir / "terms_flip.csv", dec.flip_result);
  if (is_square_engine(config.engine)) {
    write_coeffs_csv(out_dir / "terms_coeffs.csv",
                     std::get<ProductAfdResult>(dec.lift_result));
    write_coeffs_csv(out_dir / "terms_flip_coeffs.csv",
                     std::get<ProductAfdResult>(dec.flip_result));
  }

  std::ofstream metrics = open_csv(out_dir / "metrics.csv");
  metrics << "level,bhattacharyya,psnr_db,mssim\n";
  for (const int level : config.levels) {
    const Signal2D recon =
        reconstruct_real(dec, native_steps_for_terms(config.engine, level));
    const RMatrix rimg = recon.values().real();
    write_pgm(out_dir / ("recon_L" + std::to_string(level) + ".pgm"), rimg);
    metrics << level << ',' << metric_cells(image, rimg, config.bins) << '\n';
  }

  const Signal2D full = reconstruct_real(dec, ec.steps);
  write_pgm(out_dir / "residual_map.pgm",
            magnitude_map(f.values() - full.values()));
  return 0;
}

int decompose_complex(const RunConfig& config, const fs::path& out_dir) {
  const Signal2D f = read_signal_csv(config.input);
  const EngineConfig ec = engine_config(config, config.engine, config.terms);
  const EngineResult result = run_engine(f, config.engine, ec);

  write_terms_csv(out_dir / "terms.csv", result);
  if (const auto* square = std::get_if<ProductAfdResult>(&result))
    write_coeffs_csv(out_dir / "terms_coeffs.csv", *square);

  const double peak = f.values().cwiseAbs().maxCoeff();
  const double scale = peak > 0.0 ? 255.0 / peak : 1.0;
  const RMatrix ref_img = f.values().cwiseAbs() * scale;

  std::ofstream metrics = open_csv(out_dir / "metrics.csv");
  metrics << "level,bhattacharyya,psnr_db,mssim\n";
  for (const int level : config.levels) {
    const Signal2D recon = reconstruct_engine(
        result, f.grid(), native_steps_for_terms(config.engine, level));
    write_signal_csv(out_dir / ("recon_L" + std::to_string(level) + ".csv"),
                     recon);
    const RMatrix test_img = recon.values().cwiseAbs() * scale;
    metrics << level << ',' << metric_cells(ref_img, test_img, config.bins)
            << '\n';
  }

  const Signal2D full = reconstruct_engine(result, f.grid(), ec.steps);
  write_pgm(out_dir / "residual_map.pgm",
            magnitude_map(f.values() - full.values()));
  return 0;
}

}  // namespace

int cmd_decompose(const RunConfig& config) {
  if (config.input.empty())
    throw std::invalid_argument("decompose requires --input");
  const fs::path out_dir = ensure_out_dir(config.out_dir);
  if (has_extension(config.input, ".pgm"))
    return decompose_image(config, out_dir);
  if (has_extension(config.input, ".csv"))
    return decompose_complex(config, out_dir);
  throw std::invalid_argument(
      "unsupported input type (expected .pgm image or .csv complex signal): " +
      config.input);
}

int cmd_toy(const RunConfig& config) {
  const fs::path out_dir = ensure_out_dir(config.out_dir);
  const TorusGrid grid(128, 128, 0.5);
  const Signal2D f = sample_toy_signal(grid);
  const ParameterGrid pg = build_parameter_grid(8, 8);
  constexpr int kTerms = 25;

  GreedyOptions options;
  options.threads = config.threads;

  std::vector<std::pair<EngineKind, EngineResult>> runs;
  for (const EngineKind kind : kAllEngines) {
    EngineConfig ec;
    ec.grid = pg;
    ec.steps = native_steps_for_terms(kind, kTerms);
    ec.options = options;
    runs.emplace_back(kind, run_engine(f, kind, ec));
  }

  const double f_norm = norm(f);
  std::ofstream errors = open_csv(out_dir / "error_db.csv");
  errors << "terms,fd,ga,oga,afd,preoga\n";
  for (int terms = 1; terms <= kTerms; ++terms) {
    errors << terms;
    for (const auto& [kind, result] : runs) {
      const double rel = std::sqrt(residual_energy_at(
                             result, completed_level(kind, terms))) /
                         f_norm;
      errors << ',' << format_float(20.0 * std::log10(rel));
    }
    errors << '\n';
  }
  errors.close();

  std::ofstream first = open_csv(out_dir / "first_selection.csv");
  first << "engine,a_re,a_im,b_re,b_im\n";
  for (const auto& [kind, result] : runs) {
    if (kind == EngineKind::fd) continue;
    DiscPoint a;
    DiscPoint b;
    if (const auto* square = std::get_if<ProductAfdResult>(&result)) {
      a = square->a_seq.seq.front();
      b = square->b_seq.seq.front();
    } else {
      const auto& state = std::get<GreedyState>(result);
      a = state.atoms.front().a;
      b = state.atoms.front().b;
    }
    first << engine_name(kind) << ',' << format_float(a.re) << ','
          << format_float(a.im) << ',' << format_float(b.re) << ','
          << format_float(b.im) << '\n';
  }
  first.close();

  const RMatrix ref_real = f.values().real();
  const double lo = ref_real.minCoeff();
  const double hi = ref_real.maxCoeff();
  write_pgm(out_dir / "original.pgm", rescale_for_image(ref_real, lo, hi));
  for (const auto& [kind, result] : runs) {
    const std::string name = engine_name(kind);
    Signal2D recon;
    for (const int terms : {1, 9, 25}) {
      recon = reconstruct_engine(result, grid, completed_level(kind, terms));
      write_pgm(out_dir / (name + "_F" + std::to_string(terms) + ".pgm"),
                rescale_for_image(recon.values().real(), lo, hi));
    }
    const RMatrix remainder = (f.values() - recon.values()).real();
    write_pgm(out_dir / (name + "_r25.pgm"),
              rescale_for_image(remainder, lo, hi));
  }
  return 0;
}

int cmd_compare(const RunConfig& config) {
  if (config.input.empty())
    throw std::invalid_argument("compare requires --input");
  const fs::path out_dir = ensure_out_dir(config.out_dir);
  const RMatrix image = read_pgm(config.input);
  const TorusGrid grid(static_cast<int>(image.rows()),
                       static_cast<int>(image.cols()), config.offset);
  const Signal2D f(grid, image.cast<Complex>());
  const int max_terms =
      *std::max_element(config.levels.begin(), config.levels.end());

  std::ofstream metrics = open_csv(out_dir / "metrics.csv");
  metrics << "engine,level,bhattacharyya,psnr_db,mssim\n";
  std::ofstream residuals = open_csv(out_dir / "compare_residuals.csv");
  residuals << "engine,level,residual_energy\n";

  for (const EngineKind kind : kAllEngines) {
    const EngineConfig ec = engine_config(config, kind, max_terms);
    const RealDecomposition dec = decompose_real(f, kind, ec);
    const std::string name = engine_name(kind);
    for (const int level : config.levels) {
      const int native = native_steps_for_terms(kind, level);
      const Signal2D recon = reconstruct_real(dec, native);
      const RMatrix rimg = recon.values().real();
      write_pgm(out_dir / (name + "_L" + std::to_string(level) + ".pgm"), rimg);
      metrics << name << ',' << level << ','
              << metric_cells(image, rimg, config.bins) << '\n';
      residuals << name << ',' << level << ','
                << format_float(residual_energy_at(dec.lift_result, native) +
                                residual_energy_at(dec.flip_result, native))
                << '\n';
    }
  }
  return 0;
}

int cmd_bounds(const RunConfig& config) {
  const fs::path out_dir = ensure_out_dir(config.out_dir);
  const TorusGrid grid(32, 32, config.offset);
  const ParameterGrid pg = restrict_radius(
      build_parameter_grid(config.grid_nt, config.grid_ns), config.rmax);
  const int pcount = static_cast<int>(pg.points.size());
  if (config.atoms > pcount)
    throw std::invalid_argument(
        "--atoms exceeds the candidate count of the parameter grid");

  CMatrix values = CMatrix::Zero(grid.m, grid.n);
  std::vector<Signal2D> representing;
  double m_budget = 0.0;
  for (int j = 0; j < config.atoms; ++j) {
    const int ia = static_cast<int>(
        (static_cast<long long>(j) * pcount) / config.atoms);
    const int ib = static_cast<int>((ia * 31LL + 17LL) % pcount);
    const AtomRef atom{pg.points[ia], pg.points[ib], 1, 1};
    const double mag = std::pow(config.decay, j);
    const Complex c = std::polar(mag, 2.0 * M_PI * j / config.atoms);
    representing.push_back(normalized_atom(atom, grid));
    values += c * representing.back().values();
    m_budget += mag;
  }
  const Signal2D f(grid, values);

  GreedyOptions options = greedy_options(config);
  options.t_seq.clear();  // the guarantee curves assume strict selection
  const int steps = config.terms;
  const GreedyState oga = run_oga(f, pg, steps, options);
  const GreedyState pre = run_preoga(f, pg, steps, options);

  const std::vector<double> t_ones(steps, 1.0);
  const std::vector<double> r_seq = rn_curve(pre.ortho, representing, steps);
  const std::vector<double> obs_oga = observed_residual_norms(oga);
  const std::vector<double> obs_pre = observed_residual_norms(pre);

  std::ofstream out = open_csv(out_dir / "bounds.csv");
  out << "n,oga_residual,preoga_residual,oga_bound_basic,oga_bound_posteriori,"
         "preoga_bound_posteriori,preoga_bound_completed\n";
  for (int n = 1; n <= steps + 1; ++n) {
    out << n << ',' << format_float(obs_oga[n - 1]) << ','
        << format_float(obs_pre[n - 1]) << ','
        << format_float(woga_apriori_bound(m_budget, t_ones, n)) << ','
        << format_float(woga_posteriori_bound(m_budget, t_ones, oga.v_seq, n))
        << ','
        << format_float(wpreoga_posteriori_bound(m_budget, t_ones, r_seq, n))
        << ',' << format_float(preoga_completed_bound(m_budget, n)) << '\n';
  }
  return 0;
}

int run_cli(int argc, const char* const* argv) {
  RunConfig config;
  std::string engine_str = "preoga";

  CLI::App app{
      "adaptive rational decomposition of 2D signals over a product "
      "Szego dictionary"};
  app.require_subcommand(1);
  app.set_config("--config");

  const std::vector<std::string> engine_names = {"fd", "ga", "oga", "afd",
                                                 "preoga"};
  auto add_engine = [&](CLI::App* cmd) {
    cmd->add_option("--engine", engine_str, "decomposition engine")
        ->check(CLI::IsMember(engine_names))
        ->capture_default_str();
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--grid-nt", config.grid_nt,
                    "radial lattice density of the candidate grid")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--grid-ns", config.grid_ns,
                    "second-axis lattice density of the candidate grid")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--rmax", config.rmax,
                    "drop candidates with modulus above this")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
  };
  auto add_run = [&](CLI::App* cmd) {
    cmd->add_option("--terms", config.terms, "expansion terms to compute")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--offset", config.offset, "fractional grid-node offset")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--tol", config.tol, "linear-dependence tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--max-mult", config.max_multiplicity,
                    "per-axis kernel multiplicity cap")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tseq", config.t_seq,
                    "per-step weakness factors in (0,1], comma separated")
        ->delimiter(',');
  };
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", config.threads, "scan worker threads")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };
  auto add_levels = [&](CLI::App* cmd) {
    cmd->add_option("--levels", config.levels,
                    "term counts to reconstruct at, comma separated")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
  };
  auto add_io = [&](CLI::App* cmd, bool need_input) {
    if (need_input)
      cmd->add_option("--input", config.input, "input file")->required();
    cmd->add_option("--out", config.out_dir, "output directory")->required();
    cmd->add_option("--bins", config.bins, "histogram bins")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  };

  CLI::App* decompose = app.add_subcommand(
      "decompose", "decompose one input and write terms, images, metrics");
  add_engine(decompose);
  add_grid(decompose);
  add_run(decompose);
  add_threads(decompose);
  add_levels(decompose);
  add_io(decompose, true);

  CLI::App* toy = app.add_subcommand(
      "toy", "reproduce the 128x128 tensor-product test-signal experiment");
  toy->add_option("--out", config.out_dir, "output directory")->required();
  add_threads(toy);

  CLI::App* compare = app.add_subcommand(
      "compare", "run all five engines on one image and tabulate metrics");
  add_grid(compare);
  add_run(compare);
  add_threads(compare);
  add_levels(compare);
  add_io(compare, true);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "check observed residual decay against the guarantee curves");
  add_grid(bounds);
  add_run(bounds);
  add_threads(bounds);
  bounds->add_option("--atoms", config.atoms, "synthesis atom count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bounds->add_option("--decay", config.decay,
                     "geometric decay of the synthesis coefficients")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  bounds->add_option("--out", config.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  config.engine = *parse_engine(engine_str);
  try {
    if (app.got_subcommand(decompose)) return cmd_decompose(config);
    if (app.got_subcommand(toy)) return cmd_toy(config);
    if (app.got_subcommand(compare)) return cmd_compare(config);
    return cmd_bounds(config);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace afd2d
