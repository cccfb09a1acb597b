// gramspec command-line tool: eigenvalue tables, theorem verification
// reports, majorization-bound curves, and the three spectral methods.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gramspec/gramspec.hpp"
#include "gramspec/json_io.hpp"

namespace {

using namespace gramspec;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

#ifndef GRAMSPEC_DATA_DIR
#define GRAMSPEC_DATA_DIR "data"
#endif

std::string fmt(real v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct InputOptions {
  std::string dataset;  // "iris" or "banana"
  std::string input_path;
  bool has_labels = false;
  std::string kernel = "linear";
  std::string centering = "mean";
  std::string weights_path;
  std::uint64_t seed = 1;
  index_t banana_n = 200;
  real banana_noise = 0.2;
};

struct OutputOptions {
  std::string path;  // empty -> stdout
  std::string format = "csv";
};

void add_input_flags(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--dataset", in.dataset, "builtin dataset: iris | banana");
  cmd->add_option("--input", in.input_path, "CSV file, one sample per row");
  cmd->add_flag("--has-labels", in.has_labels, "last CSV column holds integer labels");
  cmd->add_option("--kernel", in.kernel,
                  "kernel: linear | poly:c:p | gaussian:sigma | sqdist (default linear)");
  cmd->add_option("--centering", in.centering, "centering: mean | none | weighted");
  cmd->add_option("--weights", in.weights_path, "weights file for --centering weighted");
  cmd->add_option("--seed", in.seed, "seed for the banana generator");
  cmd->add_option("--banana-n", in.banana_n, "banana sample count");
  cmd->add_option("--banana-noise", in.banana_noise, "banana noise standard deviation");
}

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("-o,--output", out.path, "output file (default: stdout)");
  cmd->add_option("--format", out.format, "output format: csv | json");
}

KernelSpec parse_kernel(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw std::invalid_argument("empty kernel spec");
  const std::string& name = parts[0];
  if (name == "linear") {
    return KernelSpec::linear();
  } else if (name == "gaussian") {
    if (parts.size() != 2) throw std::invalid_argument("gaussian kernel needs gaussian:sigma");
    return KernelSpec::gaussian(std::stod(parts[1]));
  } else if (name == "poly") {
    if (parts.size() != 3) throw std::invalid_argument("polynomial kernel needs poly:c:p");
    return KernelSpec::polynomial(std::stod(parts[1]), std::stoi(parts[2]));
  } else if (name == "sqdist") {
    return KernelSpec::negative_half_sqdist();
  }
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

std::vector<real> read_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CsvError(CsvErrorKind::io, "cannot open weights file '" + path + "'");
  std::vector<real> w;
  std::string cell;
  while (in) {
    int c = in.get();
    if (c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t' || c == EOF) {
      if (!cell.empty()) {
        w.push_back(std::stod(cell));
        cell.clear();
      }
      continue;
    }
    cell.push_back(static_cast<char>(c));
  }
  return w;
}

Dataset resolve_dataset(const InputOptions& in) {
  if (!in.dataset.empty() && !in.input_path.empty())
    throw std::invalid_argument("give either --dataset or --input, not both");
  if (in.dataset == "iris") {
    const char* env = std::getenv("GRAMSPEC_DATA_DIR");
    const std::string dir = env ? env : GRAMSPEC_DATA_DIR;
    return load_iris(dir + "/iris.csv");
  }
  if (in.dataset == "banana") return banana(in.banana_n, in.banana_noise, in.seed);
  if (!in.dataset.empty())
    throw std::invalid_argument("unknown dataset '" + in.dataset + "' (iris | banana)");
  if (in.input_path.empty()) throw std::invalid_argument("no input: give --dataset or --input");
  return load_csv(in.input_path, in.has_labels);
}

CenteringScheme resolve_centering(const InputOptions& in, index_t n) {
  if (in.centering == "none") return CenteringScheme::none();
  if (in.centering == "mean") return CenteringScheme::mean();
  if (in.centering == "weighted") {
    if (in.weights_path.empty())
      throw std::invalid_argument("--centering weighted needs --weights FILE");
    std::vector<real> w = read_weights(in.weights_path);
    if (w.size() != n)
      throw std::invalid_argument("weights file has " + std::to_string(w.size()) +
                                  " entries, dataset has " + std::to_string(n));
    return CenteringScheme::weighted(WeightVector(w));  // validates the sum
  }
  throw std::invalid_argument("unknown centering '" + in.centering + "'");
}

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::map<std::string, real> parse_tolerance_overrides(const std::vector<std::string>& raw) {
  std::map<std::string, real> out;
  for (const auto& s : raw) {
    const auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("tolerance override must be NAME=VALUE, got '" + s + "'");
    out[s.substr(0, eq)] = std::stod(s.substr(eq + 1));
  }
  return out;
}

int cmd_eigen(const InputOptions& in, const OutputOptions& outopt) {
  const Dataset ds = resolve_dataset(in);
  const KernelSpec kspec = parse_kernel(in.kernel);
  const CenteringScheme scheme = resolve_centering(in, ds.samples());
  const GramMatrix k = gram_matrix(ds.x, kspec);
  const GramMatrix kc = double_center(k, scheme);
  const EigenDecomposition raw = sym_eigen(k.matrix);
  const EigenDecomposition centered = sym_eigen(kc.matrix);

  OutputFile out(outopt.path);
  if (outopt.format == "json") {
    ordered_json j{{"dataset", ds.name},
                   {"kernel", kspec.name()},
                   {"n", ds.samples()},
                   {"eigenvalues",
                    {{"raw", raw.eigenvalues}, {"centered", centered.eigenvalues}}}};
    out.stream() << j.dump(2) << "\n";
  } else {
    out.stream() << "j,lambda,lambda_c\n";
    for (index_t j = 0; j < raw.size(); ++j)
      out.stream() << (j + 1) << "," << fmt(raw.eigenvalues[j]) << ","
                   << fmt(centered.eigenvalues[j]) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const InputOptions& in, const OutputOptions& outopt,
               const std::vector<std::string>& tol_raw) {
  const Dataset ds = resolve_dataset(in);
  const KernelSpec kspec = parse_kernel(in.kernel);
  const CenteringScheme scheme = resolve_centering(in, ds.samples());
  ReportOptions opts;
  opts.dataset_id = ds.name;
  opts.tolerance_overrides = parse_tolerance_overrides(tol_raw);
  const SpectralReport report = full_report(ds.x, kspec, scheme, opts);

  OutputFile out(outopt.path);
  out.stream() << to_json(report).dump(2) << "\n";
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

int cmd_bounds(const InputOptions& in, const OutputOptions& outopt) {
  const Dataset ds = resolve_dataset(in);
  const KernelSpec kspec = parse_kernel(in.kernel);
  const GramMatrix k = gram_matrix(ds.x, kspec);
  const GramMatrix kc = double_center(k, CenteringScheme::mean());
  const EigenPairSet raw = analyze_gram(k, EigenSource::gram_raw);
  const EigenPairSet centered = analyze_gram(kc, EigenSource::gram_centered);
  const auto entries = schur_horn_dprime_gram(raw, mean_norm_sq_from_gram(k),
                                              centered.decomposition.eigenvalues);

  OutputFile out(outopt.path);
  out.stream() << "t,cum_dprime,cum_lambda_c\n";
  for (index_t t = 0; t < entries.size(); ++t)
    out.stream() << (t + 1) << "," << fmt(entries[t].cumulative_d) << ","
                 << fmt(entries[t].cumulative_lambda_c) << "\n";
  return kExitOk;
}

Normalization parse_normalization(const std::string& s) {
  if (s == "vp" || s == "variance_preserving") return Normalization::variance_preserving;
  if (s == "uv" || s == "unit_variance") return Normalization::unit_variance;
  throw std::invalid_argument("unknown normalization '" + s + "' (vp | uv)");
}

int cmd_kpca(const InputOptions& in, const OutputOptions& outopt, index_t m,
             const std::string& norm_str, index_t grid, const std::string& model_out) {
  const Dataset ds = resolve_dataset(in);
  const KernelSpec kspec = parse_kernel(in.kernel);
  const CenteringScheme scheme = resolve_centering(in, ds.samples());
  const Normalization norm = parse_normalization(norm_str);
  const GramMatrix k = gram_matrix(ds.x, kspec);
  const ComponentSet model = kpca_fit(k, scheme, m, norm);

  if (!model_out.empty()) {
    std::ofstream mf(model_out, std::ios::binary);
    if (!mf) throw std::invalid_argument("cannot open '" + model_out + "'");
    mf << to_json(model).dump(2) << "\n";
  }

  OutputFile out(outopt.path);
  if (grid > 0) {
    if (ds.dims() != 2)
      throw std::invalid_argument("--grid needs 2-dimensional data, got d=" +
                                  std::to_string(ds.dims()));
    // contour grid over the bounding box with a 10% margin, for both the
    // requested centering and the non-centered variant
    const ComponentSet raw_model = kpca_fit(k, CenteringScheme::none(), m, norm);
    real xmin = ds.x(0, 0), xmax = ds.x(0, 0), ymin = ds.x(1, 0), ymax = ds.x(1, 0);
    for (index_t j = 0; j < ds.samples(); ++j) {
      xmin = std::min(xmin, ds.x(0, j));
      xmax = std::max(xmax, ds.x(0, j));
      ymin = std::min(ymin, ds.x(1, j));
      ymax = std::max(ymax, ds.x(1, j));
    }
    const real mx = 0.1 * (xmax - xmin), my = 0.1 * (ymax - ymin);
    xmin -= mx; xmax += mx; ymin -= my; ymax += my;

    out.stream() << "x,y";
    for (index_t c = 0; c < m; ++c) out.stream() << ",centered_" << (c + 1);
    for (index_t c = 0; c < m; ++c) out.stream() << ",raw_" << (c + 1);
    out.stream() << "\n";

    std::vector<std::vector<real>> cols(ds.samples());
    for (index_t j = 0; j < ds.samples(); ++j) cols[j] = ds.x.column(j);
    const real g1 = static_cast<real>(grid - 1);
    for (index_t iy = 0; iy < grid; ++iy) {
      const real y = grid == 1 ? ymin : ymin + (ymax - ymin) * static_cast<real>(iy) / g1;
      for (index_t ix = 0; ix < grid; ++ix) {
        const real x = grid == 1 ? xmin : xmin + (xmax - xmin) * static_cast<real>(ix) / g1;
        const std::vector<real> p{x, y};
        std::vector<real> col(ds.samples());
        for (index_t j = 0; j < ds.samples(); ++j) col[j] = kernel_eval(kspec, p, cols[j]);
        const auto sc = kpca_project(model, col);
        const auto sr = kpca_project(raw_model, col);
        out.stream() << fmt(x) << "," << fmt(y);
        for (real v : sc) out.stream() << "," << fmt(v);
        for (real v : sr) out.stream() << "," << fmt(v);
        out.stream() << "\n";
      }
    }
    return kExitOk;
  }

  const Matrix scores = kpca_training_scores(model);
  out.stream() << "sample";
  for (index_t c = 0; c < m; ++c) out.stream() << ",score_" << (c + 1);
  out.stream() << "\n";
  for (index_t i = 0; i < scores.rows(); ++i) {
    out.stream() << (i + 1);
    for (index_t c = 0; c < m; ++c) out.stream() << "," << fmt(scores(i, c));
    out.stream() << "\n";
  }
  return kExitOk;
}

int cmd_keca(const InputOptions& in, const OutputOptions& outopt, index_t m) {
  const Dataset ds = resolve_dataset(in);
  const KernelSpec kspec = parse_kernel(in.kernel);
  const GramMatrix k = gram_matrix(ds.x, kspec);
  const EntropyDecomposition dec = keca_decompose(k);
  const EigenPairSet pairs = analyze_gram(k, EigenSource::gram_raw);

  std::vector<bool> sel(dec.terms.size(), false);
  for (index_t r = 0; r < std::min<index_t>(m, dec.selected.size()); ++r)
    sel[dec.selected[r]] = true;

  OutputFile out(outopt.path);
  if (outopt.format == "json") {
    ordered_json j = to_json(dec);
    j["m"] = m;
    j["selected_top_m"] = [&] {
      std::vector<index_t> top(dec.selected.begin(),
                               dec.selected.begin() + std::min<index_t>(m, dec.selected.size()));
      return top;
    }();
    out.stream() << j.dump(2) << "\n";
  } else {
    out.stream() << "i,lambda,term,selected\n";
    for (index_t i = 0; i < dec.terms.size(); ++i)
      out.stream() << (i + 1) << "," << fmt(pairs.lambda(i)) << "," << fmt(dec.terms[i]) << ","
                   << (sel[i] ? 1 : 0) << "\n";
  }
  if (dec.near_zero_total)
    std::cerr << "warning: entropy total is numerically zero; the kernel matrix looks centered\n";
  return kExitOk;
}

int cmd_mds(const InputOptions& in, const OutputOptions& outopt, const std::string& dist_path,
            index_t m, const std::string& report_path) {
  SymmetricMatrix distances;
  std::string name;
  if (!dist_path.empty()) {
    const Dataset d = load_csv(dist_path);
    detail::require(d.x.rows() == d.x.cols(), "mds: distance matrix must be square");
    distances = SymmetricMatrix::symmetrized(d.x.transposed());
    name = dist_path;
  } else {
    const Dataset ds = resolve_dataset(in);
    distances = pairwise_distances(ds.x);
    name = ds.name;
  }

  const Embedding emb = mds_embed(distances, m);
  OutputFile out(outopt.path);
  out.stream() << "sample";
  for (index_t c = 0; c < emb.dims(); ++c) out.stream() << ",y_" << (c + 1);
  out.stream() << "\n";
  for (index_t j = 0; j < emb.samples(); ++j) {
    out.stream() << (j + 1);
    for (index_t c = 0; c < emb.dims(); ++c) out.stream() << "," << fmt(emb.points(c, j));
    out.stream() << "\n";
  }

  if (!report_path.empty()) {
    const GramMatrix delta = distance_matrix_to_delta(distances);
    const GramMatrix kc = double_center(delta, CenteringScheme::mean());
    const EigenPairSet delta_pairs = analyze_gram(delta, EigenSource::gram_raw);
    const EigenPairSet kc_pairs = analyze_gram(kc, EigenSource::gram_centered);
    ordered_json j{{"dataset", name},
                   {"n", distances.size()},
                   {"m", emb.dims()},
                   {"round_trip_error", mds_round_trip_error(distances, emb)},
                   {"discarded_negative_mass", emb.discarded_negative_mass},
                   {"clamped", emb.clamped},
                   {"retained_eigenvalues", emb.retained_eigenvalues},
                   {"checks",
                    {to_json(check_delta_trace_zero(delta, delta_pairs)),
                     to_json(mds_separation_check(delta, kc)),
                     to_json(mds_bound_check(delta, delta_pairs, kc_pairs.lambda(0)))}}};
    std::ofstream rf(report_path, std::ios::binary);
    if (!rf) throw std::invalid_argument("cannot open '" + report_path + "'");
    rf << j.dump(2) << "\n";
  }
  if (emb.clamped)
    std::cerr << "warning: requested m exceeded the positive spectrum; embedding clamped to "
              << emb.dims() << " axes\n";
  return kExitOk;
}

int cmd_banana_gen(const InputOptions& in, const OutputOptions& outopt) {
  const Dataset ds = banana(in.banana_n, in.banana_noise, in.seed);
  OutputFile out(outopt.path);
  out.stream() << "x,y\n";
  for (index_t j = 0; j < ds.samples(); ++j)
    out.stream() << fmt(ds.x(0, j)) << "," << fmt(ds.x(1, j)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral analysis of centered and non-centered Gram matrices"};
  app.require_subcommand(1);

  InputOptions in;
  OutputOptions out;
  std::vector<std::string> tol_raw;
  index_t m = 2;
  index_t grid = 0;
  std::string norm_str = "vp";
  std::string model_out, dist_path, report_path;

  auto* eigen_cmd = app.add_subcommand("eigen", "eigenvalues of K and Kc side by side");
  add_input_flags(eigen_cmd, in);
  add_output_flags(eigen_cmd, out);

  auto* verify_cmd = app.add_subcommand("verify", "run every applicable check, JSON report");
  add_input_flags(verify_cmd, in);
  add_output_flags(verify_cmd, out);
  verify_cmd->add_option("--tol", tol_raw, "tolerance override NAME=VALUE (repeatable)");

  auto* bounds_cmd =
      app.add_subcommand("bounds", "cumulative d' versus cumulative lambda_c curve");
  add_input_flags(bounds_cmd, in);
  add_output_flags(bounds_cmd, out);

  auto* kpca_cmd = app.add_subcommand("kpca", "kernel principal component analysis");
  add_input_flags(kpca_cmd, in);
  add_output_flags(kpca_cmd, out);
  kpca_cmd->add_option("-m,--components", m, "number of components");
  kpca_cmd->add_option("--normalization", norm_str, "vp (variance preserving) | uv (unit variance)");
  auto* grid_opt = kpca_cmd->add_option("--grid", grid,
                                        "emit projection values on a GxG grid (2-d data; "
                                        "default resolution 100)");
  grid_opt->expected(0, 1);
  kpca_cmd->add_option("--model-out", model_out, "write the fitted model as JSON");

  auto* keca_cmd = app.add_subcommand("keca", "entropy decomposition and component selection");
  add_input_flags(keca_cmd, in);
  add_output_flags(keca_cmd, out);
  keca_cmd->add_option("-m,--components", m, "number of selected components");

  auto* mds_cmd = app.add_subcommand("mds", "classical multidimensional scaling");
  add_input_flags(mds_cmd, in);
  add_output_flags(mds_cmd, out);
  mds_cmd->add_option("--distances", dist_path, "distance matrix CSV (square, zero diagonal)");
  mds_cmd->add_option("-m,--components", m, "embedding dimension");
  mds_cmd->add_option("--report", report_path, "write round-trip / check report as JSON");

  auto* banana_cmd = app.add_subcommand("banana-gen", "write a banana-shaped dataset as CSV");
  add_input_flags(banana_cmd, in);
  add_output_flags(banana_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  if (grid_opt->count() > 0 && grid == 0) grid = 100;

  try {
    if (eigen_cmd->parsed()) return cmd_eigen(in, out);
    if (verify_cmd->parsed()) return cmd_verify(in, out, tol_raw);
    if (bounds_cmd->parsed()) return cmd_bounds(in, out);
    if (kpca_cmd->parsed()) return cmd_kpca(in, out, m, norm_str, grid, model_out);
    if (keca_cmd->parsed()) return cmd_keca(in, out, m);
    if (mds_cmd->parsed()) return cmd_mds(in, out, dist_path, m, report_path);
    if (banana_cmd->parsed()) return cmd_banana_gen(in, out);
  } catch (const EigenFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
