// blockspec: command-line surface over the block-symbol calculus. Every
// artifact embeds the full configuration and the library version, carries
// no timestamps, and is byte-identical for a fixed configuration and seed.

#include "blockspec/dixmier.hpp"
#include "blockspec/generators.hpp"
#include "blockspec/reduction.hpp"
#include "blockspec/schatten.hpp"
#include "blockspec/serialization.hpp"
#include "blockspec/symbol.hpp"
#include "blockspec/tensor.hpp"
#include "blockspec/version.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

namespace {

using namespace blockspec;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_artifact(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open output file '" + path + "'");
  out << content;
}

std::string json_artifact(const Json& config, const Json& result) {
  Json doc;
  doc["version"] = kVersion;
  doc["config"] = config;
  doc["result"] = result;
  return doc.dump(2) + "\n";
}

std::string csv_preamble(const Json& config) {
  std::ostringstream out;
  out << "# version=" << kVersion << "\n";
  out << "# config=" << config.dump() << "\n";
  return out.str();
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  Json doc;
  in >> doc;
  return doc;
}

TruncationPolicy policy_from(Index l_max, double tail_tol, Index min_blocks) {
  TruncationPolicy t{l_max, tail_tol, min_blocks};
  t.validate();
  return t;
}

// ---------------------------------------------------------------------------
// norm

int run_norm(const std::string& symbol_path, double p, const std::string& op,
             Index l_max, double tail_tol, Index min_blocks,
             const std::string& output) {
  const Json config{{"subcommand", "norm"},   {"symbol", symbol_path},
                    {"p", p},                 {"op", op},
                    {"lmax", l_max},          {"tail_tol", tail_tol},
                    {"min_blocks", min_blocks}};
  const auto symbol = load_symbol(load_json_file(symbol_path));
  const auto t = policy_from(l_max, tail_tol, min_blocks);

  Json result;
  if (op == "schatten") {
    result = to_json(schatten_norm(symbol, p, t));
  } else if (op == "trace") {
    result = to_json(trace(symbol, t));
  } else if (op == "operator") {
    result = to_json(operator_norm(symbol, t));
  } else {
    throw DomainError("unknown op '" + op + "'");
  }
  write_artifact(output, json_artifact(config, result));
  return 0;
}

// ---------------------------------------------------------------------------
// tensor-check: randomized self-check of the multiplicativity identities

Matrix random_block(std::mt19937_64& rng, Index d) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Matrix m(d, d);
  for (Index r = 0; r < d; ++r)
    for (Index c = 0; c < d; ++c) m(r, c) = Complex(dist(rng), dist(rng));
  return m;
}

MatrixSymbol random_explicit_symbol(std::mt19937_64& rng, Index max_blocks,
                                    Index max_dim) {
  std::uniform_int_distribution<Index> nblocks(1, max_blocks);
  std::uniform_int_distribution<Index> dim(1, max_dim);
  std::vector<Matrix> blocks;
  const Index n = nblocks(rng);
  for (Index l = 0; l < n; ++l) blocks.push_back(random_block(rng, dim(rng)));
  return MatrixSymbol::from_blocks(std::move(blocks));
}

int run_tensor_check(std::uint64_t seed, const std::vector<double>& ps,
                     int pairs, Index max_blocks, Index max_dim,
                     const std::string& output) {
  const Json config{{"subcommand", "tensor-check"}, {"seed", seed},
                    {"p", ps},                      {"pairs", pairs},
                    {"max_blocks", max_blocks},     {"max_dim", max_dim}};
  std::mt19937_64 rng(seed);
  const TruncationPolicy t{std::max<Index>(max_blocks, 1), 0.0, 1};

  double worst_product = 0.0;
  double worst_direct = 0.0;
  for (int i = 0; i < pairs; ++i) {
    const auto a = random_explicit_symbol(rng, max_blocks, max_dim);
    const auto b = random_explicit_symbol(rng, max_blocks, max_dim);
    const auto ts = tensor_symbols({a, b});
    const Index na = static_cast<Index>(a.explicit_blocks()->size());
    const Index nb = static_cast<Index>(b.explicit_blocks()->size());
    for (double p : ps) {
      const auto est = tensor_schatten_norm(ts, p, t);
      const double product =
          schatten_norm(a, p, t).value * schatten_norm(b, p, t).value;
      worst_product = std::max(
          worst_product, std::abs(est.combined.value - product) / product);

      // direct multi-index route through the materialized kron blocks
      NeumaierSum direct;
      for (Index j = 0; j < na; ++j)
        for (Index k = 0; k < nb; ++k) {
          const RealVector sv =
              singular_values_block(ts.block({j, k}));
          for (Index v = 0; v < sv.size(); ++v)
            direct.add(std::pow(sv[v], p));
        }
      const double direct_value = std::pow(direct.value(), 1.0 / p);
      worst_direct = std::max(
          worst_direct,
          std::abs(est.combined.value - direct_value) / direct_value);
    }
  }

  const bool pass = worst_product <= 1e-10 && worst_direct <= 1e-10;
  Json result{{"pairs", pairs},
              {"max_rel_error_product_form", worst_product},
              {"max_rel_error_direct_sum", worst_direct},
              {"tolerance", 1e-10},
              {"pass", pass}};
  write_artifact(output, json_artifact(config, result));
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// su2-table

int run_su2_table(double alpha, double beta, double p, Index l_max,
                  double tail_tol, Index min_blocks,
                  const std::string& output) {
  const Json config{{"subcommand", "su2-table"}, {"alpha", alpha},
                    {"beta", beta},              {"p", p},
                    {"lmax", l_max},             {"tail_tol", tail_tol},
                    {"min_blocks", min_blocks}};
  const auto t = policy_from(l_max, tail_tol, min_blocks);
  const auto est = su2_tensor_norm(alpha, beta, p, t);

  const auto sa = su2_laplacian_power_symbol(alpha);
  const auto sb = su2_laplacian_power_symbol(beta);
  const Index used_a = est.factors[0].blocks_used;
  const Index used_b = est.factors[1].blocks_used;

  std::ostringstream csv;
  csv << csv_preamble(config);
  csv << "index,ell,term_alpha,partial_alpha,term_beta,partial_beta,"
         "norm_product\n";
  NeumaierSum partial_a, partial_b;
  const Index rows = std::max(used_a, used_b);
  for (Index i = 0; i < rows; ++i) {
    double term_a = 0.0, term_b = 0.0;
    if (i < used_a) {
      term_a = static_cast<double>(sa.multiplicity(i)) *
               std::pow(std::abs(sa.block(i)(0, 0)), p);
      partial_a.add(term_a);
    }
    if (i < used_b) {
      term_b = static_cast<double>(sb.multiplicity(i)) *
               std::pow(std::abs(sb.block(i)(0, 0)), p);
      partial_b.add(term_b);
    }
    const double norm_product =
        std::pow(partial_a.value() * partial_b.value(), 1.0 / p);
    csv << i << "," << sa.partition().label(i) << "," << format_double(term_a)
        << "," << format_double(partial_a.value()) << ","
        << format_double(term_b) << "," << format_double(partial_b.value())
        << "," << format_double(norm_product) << "\n";
  }
  csv << "# final_value=" << format_double(est.combined.value)
      << " converged=" << (est.combined.converged ? "true" : "false") << "\n";
  write_artifact(output, csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// so3-symbol

int run_so3_symbol(double gamma, Index l_max, const std::string& output) {
  const Json config{
      {"subcommand", "so3-symbol"}, {"gamma", gamma}, {"lmax", l_max}};
  const auto s = so3_schrodinger_symbol(gamma);
  std::ostringstream csv;
  csv << csv_preamble(config);
  csv << "l,m,value\n";
  for (Index l = 0; l <= l_max; ++l) {
    const Matrix b = s.block(l);
    for (Index i = 0; i < b.rows(); ++i)
      csv << l << "," << (i - l) << "," << format_double(b(i, i).real())
          << "\n";
  }
  write_artifact(output, csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// anharmonic

int run_anharmonic(long k, long ell, Index points, double extent, Index count,
                   const std::string& output) {
  const Json config{{"subcommand", "anharmonic"}, {"k", k},
                    {"ell", ell},                 {"points", points},
                    {"extent", extent},           {"count", count}};
  AnharmonicSpec spec;
  spec.k = k;
  spec.l = ell;
  spec.grid.points = points;
  spec.grid.extent = extent;
  const auto res = anharmonic_galerkin_spectrum(spec, count);

  std::ostringstream csv;
  csv << csv_preamble(config);
  csv << "m,E_m\n";
  for (size_t m = 0; m < res.eigenvalues.size(); ++m)
    csv << m << "," << format_double(res.eigenvalues[m]) << "\n";
  write_artifact(output, csv.str());
  return 0;
}

// ---------------------------------------------------------------------------
// decay-fit

int run_decay_fit(const std::string& input, double mu, double p,
                  const std::string& output) {
  const Json config{{"subcommand", "decay-fit"},
                    {"input", input},
                    {"mu", mu},
                    {"p", p}};
  std::ifstream in(input);
  if (!in) throw DomainError("cannot open '" + input + "'");
  std::vector<double> energies;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    try {
      energies.push_back(std::stod(line.substr(comma + 1)));
    } catch (...) {
      continue;  // header row
    }
  }
  std::vector<double> lambda;
  lambda.reserve(energies.size());
  for (double e : energies) lambda.push_back(std::pow(1.0 + e, -mu));

  const auto fit = decay_exponent_fit(lambda);
  const double threshold = -1.0 / p;
  Json result{{"fitted_slope", fit.slope},
              {"half_width", fit.half_width},
              {"threshold_slope", threshold},
              {"pass", fit.slope + fit.half_width < threshold}};
  write_artifact(output, json_artifact(config, result));
  return 0;
}

// ---------------------------------------------------------------------------
// dixmier

int run_dixmier(const std::string& beta_spec, const std::string& a_hat_text,
                double p0, int halvings, long J, int copies,
                const std::string& output, const std::string& csv_path) {
  const Json config{{"subcommand", "dixmier"}, {"beta", beta_spec},
                    {"a_hat", a_hat_text},     {"p0", p0},
                    {"halvings", halvings},    {"J", J},
                    {"copies", copies}};
  if (copies < 1) throw DomainError("copies must be >= 1");

  const MultiplierBeta beta = parse_beta(beta_spec);
  const TrigPolynomial a = a_hat_text.empty()
                               ? TrigPolynomial::constant(1.0)
                               : parse_a_hat(Json::parse(a_hat_text));
  const SeparableSymbol symbol(a, beta);
  const std::vector<SeparableSymbol> symbols(static_cast<size_t>(copies),
                                             symbol);
  const auto grid = geometric_p_grid(p0, halvings);
  const auto est = dixmier_estimate(symbols, grid, J);
  const auto hyp = hypothesis_check(symbols, grid, J);

  Json result;
  result["estimate"] = to_json(est);
  result["hypothesis"] = to_json(hyp);
  write_artifact(output, json_artifact(config, result));

  if (!csv_path.empty()) {
    std::ostringstream csv;
    csv << csv_preamble(config);
    csv << "p,g,h\n";
    for (size_t k = 0; k < grid.size(); ++k)
      csv << format_double(est.p_grid[k]) << ","
          << format_double(est.g_values[k]) << ","
          << format_double(est.h_values[k]) << "\n";
    write_artifact(csv_path, csv.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"block-symbol calculus: Schatten norms, tensor identities, "
               "symbol generators, spectra and Dixmier-trace estimates"};
  app.require_subcommand(1);

  // norm
  auto* norm = app.add_subcommand(
      "norm", "Schatten norm, trace or operator norm of a symbol document");
  std::string norm_symbol, norm_op = "schatten", norm_output = "-";
  double norm_p = 2.0, norm_tail = 1e-10;
  Index norm_lmax = 200, norm_min = 3;
  norm->add_option("--symbol", norm_symbol, "symbol JSON document")
      ->required();
  norm->add_option("--p", norm_p, "Schatten exponent");
  norm->add_option("--op", norm_op, "schatten | trace | operator");
  norm->add_option("--lmax", norm_lmax, "largest block index scanned");
  norm->add_option("--tail-tol", norm_tail, "relative tail tolerance");
  norm->add_option("--min-blocks", norm_min, "consecutive quiet blocks");
  norm->add_option("--output", norm_output, "output path or -");

  // tensor-check
  auto* tc = app.add_subcommand(
      "tensor-check", "randomized self-check of the product identities");
  std::uint64_t tc_seed = 0;
  std::vector<double> tc_p{1.0, 2.0};
  int tc_pairs = 50;
  Index tc_blocks = 8, tc_dim = 4;
  std::string tc_output = "-";
  tc->add_option("--seed", tc_seed, "RNG seed")->required();
  tc->add_option("--p", tc_p, "exponents to test")->delimiter(',');
  tc->add_option("--pairs", tc_pairs, "number of random pairs");
  tc->add_option("--max-blocks", tc_blocks, "blocks per symbol at most");
  tc->add_option("--max-dim", tc_dim, "block dimension at most");
  tc->add_option("--output", tc_output, "output path or -");

  // su2-table
  auto* su2 = app.add_subcommand(
      "su2-table", "partial sums of the SU(2) Laplacian-power series");
  double su2_alpha = 4.0, su2_beta = 4.0, su2_p = 1.0, su2_tail = 1e-8;
  Index su2_lmax = 400, su2_min = 3;
  std::string su2_output = "-";
  su2->add_option("--alpha", su2_alpha, "first exponent")->required();
  su2->add_option("--beta", su2_beta, "second exponent")->required();
  su2->add_option("--p", su2_p, "Schatten exponent");
  su2->add_option("--lmax", su2_lmax, "largest block index scanned");
  su2->add_option("--tail-tol", su2_tail, "relative tail tolerance");
  su2->add_option("--min-blocks", su2_min, "consecutive quiet blocks");
  su2->add_option("--output", su2_output, "output path or -");

  // so3-symbol
  auto* so3 = app.add_subcommand("so3-symbol",
                                 "diagonal of the SO(3) Schroedinger symbol");
  double so3_gamma = 1.0;
  Index so3_lmax = 10;
  std::string so3_output = "-";
  so3->add_option("--gamma", so3_gamma, "coupling parameter")->required();
  so3->add_option("--lmax", so3_lmax, "largest block index");
  so3->add_option("--output", so3_output, "output path or -");

  // anharmonic
  auto* anh = app.add_subcommand("anharmonic",
                                 "Galerkin spectrum of (-d2/dx2)^l + |x|^2k");
  long anh_k = 1, anh_ell = 1;
  Index anh_points = 2000, anh_count = 20;
  double anh_extent = 12.0;
  std::string anh_output = "-";
  anh->add_option("--k", anh_k, "potential exponent (|x|^2k)");
  anh->add_option("--ell", anh_ell, "Laplacian power");
  anh->add_option("--points", anh_points, "grid resolution");
  anh->add_option("--extent", anh_extent, "half-width of the box");
  anh->add_option("--count", anh_count, "number of eigenvalues");
  anh->add_option("--output", anh_output, "output path or -");

  // decay-fit
  auto* fit = app.add_subcommand(
      "decay-fit", "decay exponent of (1+E_m)^-mu from a spectrum CSV");
  std::string fit_input, fit_output = "-";
  double fit_mu = 1.0, fit_p = 1.0;
  fit->add_option("--input", fit_input, "spectrum CSV (m,E_m)")->required();
  fit->add_option("--mu", fit_mu, "inverse power");
  fit->add_option("--p", fit_p, "target Schatten exponent");
  fit->add_option("--output", fit_output, "output path or -");

  // dixmier
  auto* dix = app.add_subcommand(
      "dixmier", "Dixmier-trace estimate for separable torus symbols");
  std::string dix_beta = "inv-sqrt-quadratic", dix_a_hat, dix_output = "-",
              dix_csv;
  double dix_p0 = 1.5;
  int dix_halvings = 6, dix_copies = 1;
  long dix_J = 1000000;
  dix->add_option("--beta", dix_beta,
                  "inv-sqrt-quadratic | inv-power:<s> | inline JSON table");
  dix->add_option("--a-hat", dix_a_hat,
                  "inline JSON of Fourier coefficients, default a = 1");
  dix->add_option("--p0", dix_p0, "top of the geometric grid");
  dix->add_option("--halvings", dix_halvings, "number of grid halvings");
  dix->add_option("--J", dix_J, "frequency truncation radius");
  dix->add_option("--copies", dix_copies, "number of identical factors");
  dix->add_option("--output", dix_output, "output path or -");
  dix->add_option("--csv", dix_csv, "also write (p, g, h) rows here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*norm)
      return run_norm(norm_symbol, norm_p, norm_op, norm_lmax, norm_tail,
                      norm_min, norm_output);
    if (*tc)
      return run_tensor_check(tc_seed, tc_p, tc_pairs, tc_blocks, tc_dim,
                              tc_output);
    if (*su2)
      return run_su2_table(su2_alpha, su2_beta, su2_p, su2_lmax, su2_tail,
                           su2_min, su2_output);
    if (*so3) return run_so3_symbol(so3_gamma, so3_lmax, so3_output);
    if (*anh)
      return run_anharmonic(anh_k, anh_ell, anh_points, anh_extent, anh_count,
                            anh_output);
    if (*fit) return run_decay_fit(fit_input, fit_mu, fit_p, fit_output);
    if (*dix)
      return run_dixmier(dix_beta, dix_a_hat, dix_p0, dix_halvings, dix_J,
                         dix_copies, dix_output, dix_csv);
  } catch (const Error& e) {
    Json err{{"error", {{"type", "domain"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    Json err{{"error", {{"type", "json"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 2;
}
