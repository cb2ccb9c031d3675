#include "roeflow_cli/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "roeflow/roeflow.hpp"

namespace roeflow::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) fail(where, "unknown field '" + item.key() + "'");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, "expected a finite number");
  return d;
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  const json* v = find(obj, key);
  return v ? number(*v, where + "." + key) : fallback;
}

double required_number(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) fail(where, std::string("missing field '") + key + "'");
  return number(*v, where + "." + key);
}

std::uint64_t count(const json& v, const std::string& where) {
  if (!v.is_number_unsigned()) fail(where, "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::uint64_t count_or(const json& obj, const char* key, std::uint64_t fallback,
                       const std::string& where) {
  const json* v = find(obj, key);
  return v ? count(*v, where + "." + key) : fallback;
}

std::uint64_t required_count(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) fail(where, std::string("missing field '") + key + "'");
  return count(*v, where + "." + key);
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json* v = find(obj, key);
  if (!v) fail(where, std::string("missing field '") + key + "'");
  if (!v->is_string()) fail(where + "." + key, "expected a string");
  return v->get<std::string>();
}

std::vector<double> numbers(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t j = 0; j < v.size(); ++j) out.push_back(number(v[j], where + "[" + std::to_string(j) + "]"));
  return out;
}

std::vector<std::string> strings(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) fail(where, "expected an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

bool needs_time_grid(const std::string& subcommand) {
  return subcommand == "flow-profile" || subcommand == "cocycle-verify" ||
         subcommand == "expander-preflow" || subcommand == "rigidity-probe";
}

constexpr std::size_t kMaxGridPoints = 100000;

std::vector<double> time_grid(const json& g) {
  const std::string where = "time_grid";
  std::vector<double> times;
  if (const json* values = g.is_object() ? find(g, "values") : nullptr) {
    check_keys(g, {"values"}, where);
    times = numbers(*values, where + ".values");
  } else {
    check_keys(g, {"start", "stop", "step"}, where);
    const double start = required_number(g, "start", where);
    const double stop = required_number(g, "stop", where);
    const double step = required_number(g, "step", where);
    if (!(step > 0.0)) fail(where + ".step", "must be positive");
    if (stop >= start) {
      const double span = (stop - start) / step;
      if (span >= static_cast<double>(kMaxGridPoints)) fail(where, "too many grid points");
      const auto points = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
      for (std::size_t j = 0; j < points; ++j) times.push_back(start + static_cast<double>(j) * step);
    }
  }
  if (times.empty()) fail(where, "grid is empty");
  if (times.size() > kMaxGridPoints) fail(where, "too many grid points");
  for (std::size_t j = 1; j < times.size(); ++j) {
    if (!(times[j] > times[j - 1])) fail(where, "times must be strictly increasing");
  }
  return times;
}

// ---------------------------------------------------------------------------
// Building spaces and operators from their specs.

struct Context {
  const ExperimentConfig& config;
  Rng rng;
  SpacePtr space;
  std::optional<BlockFamily> family;
  std::vector<double> times;
};

FiniteSpace build_metric(const json& spec, const Context& ctx, const std::string& where) {
  const std::string type = string_field(spec, "type", where);
  if (type == "path" || type == "cycle" || type == "complete") {
    check_keys(spec, {"type", "n"}, where);
    const auto n = required_count(spec, "n", where);
    if (n == 0) fail(where + ".n", "must be positive");
    if (type == "path") return path_space(n);
    if (type == "cycle") {
      if (n < 3) fail(where + ".n", "a cycle needs at least 3 points");
      return cycle_space(n);
    }
    return complete_space(n);
  }
  if (type == "edge_list") {
    check_keys(spec, {"type", "path"}, where);
    const fs::path file = ctx.config.base_dir / string_field(spec, "path", where);
    std::ifstream in(file);
    if (!in) fail(where + ".path", "cannot open " + file.string());
    return read_edge_list(in);
  }
  if (type == "union") {
    check_keys(spec, {"type", "blocks"}, where);
    const json* blocks = find(spec, "blocks");
    if (!blocks || !blocks->is_array() || blocks->empty()) {
      fail(where + ".blocks", "expected a nonempty array of spaces");
    }
    std::vector<FiniteSpace> parts;
    for (std::size_t j = 0; j < blocks->size(); ++j) {
      parts.push_back(build_metric((*blocks)[j], ctx, where + ".blocks[" + std::to_string(j) + "]"));
    }
    return coarse_union(parts);
  }
  if (type == "expander") fail(where, "an expander family is only allowed as the top-level space");
  fail(where + ".type", "unknown space type '" + type + "'");
}

BlockFamily build_family(const json& spec, const Context& ctx) {
  const std::string where = "space";
  check_keys(spec, {"type", "n_blocks", "degree", "sizes", "weights", "weight_scale", "seed"}, where);
  const auto n_blocks = required_count(spec, "n_blocks", where);
  const auto degree = required_count(spec, "degree", where);
  if (n_blocks == 0) fail(where + ".n_blocks", "must be positive");
  const json* sizes_json = find(spec, "sizes");
  if (!sizes_json || !sizes_json->is_array() || sizes_json->empty()) {
    fail(where + ".sizes", "expected a nonempty array of block sizes");
  }
  std::vector<std::size_t> sizes;
  for (const auto& s : *sizes_json) sizes.push_back(count(s, where + ".sizes"));
  if (sizes.size() != 1 && sizes.size() != n_blocks) {
    fail(where + ".sizes", "expected one size or one per block");
  }

  const double scale = number_or(spec, "weight_scale", 1.0, where);
  std::vector<double> weights;
  const json* w = find(spec, "weights");
  if (!w) {
    weights = preset_weights(WeightPreset::quadratic, n_blocks, scale);
  } else if (w->is_string()) {
    weights = preset_weights(parse_weight_preset(w->get<std::string>()), n_blocks, scale);
  } else {
    weights = numbers(*w, where + ".weights");
    if (weights.size() != n_blocks) fail(where + ".weights", "expected one weight per block");
    for (double& x : weights) x *= scale;
  }
  const auto seed = count_or(spec, "seed", ctx.config.seed, where);
  return make_regular_family(n_blocks, degree, sizes, seed, weights);
}

std::vector<PartialTranslation::Pair> pairs_from(const json& v, std::size_t n,
                                                 const std::string& where) {
  if (!v.is_array()) fail(where, "expected an array of [source, target] pairs");
  std::vector<PartialTranslation::Pair> pairs;
  for (const auto& p : v) {
    if (!p.is_array() || p.size() != 2) fail(where, "expected an array of [source, target] pairs");
    const auto x = count(p[0], where), y = count(p[1], where);
    if (x >= n || y >= n) fail(where, "point index out of range");
    pairs.emplace_back(x, y);
  }
  return pairs;
}

std::vector<PartialTranslation::Pair> consecutive_pairs(std::size_t n) {
  std::vector<PartialTranslation::Pair> pairs;
  for (std::size_t x = 0; x + 1 < n; ++x) pairs.emplace_back(x, x + 1);
  return pairs;
}

OperatorMatrix build_operator(const json& spec, Context& ctx, const std::string& where) {
  const std::string type = string_field(spec, "type", where);
  const auto& space = ctx.space;
  const std::size_t n = space->size();
  if (type == "identity" || type == "zero") {
    check_keys(spec, {"type"}, where);
    return type == "identity" ? OperatorMatrix::identity(space) : OperatorMatrix::zero(space);
  }
  if (type == "diagonal") {
    check_keys(spec, {"type", "values"}, where);
    const json* v = find(spec, "values");
    if (!v) fail(where, "missing field 'values'");
    const auto values = numbers(*v, where + ".values");
    if (values.size() != n) fail(where + ".values", "expected one value per point");
    return OperatorMatrix::diagonal(space, values);
  }
  if (type == "diagonal-from-distance") {
    check_keys(spec, {"type", "origin", "scale"}, where);
    const auto origin = count_or(spec, "origin", 0, where);
    if (origin >= n) fail(where + ".origin", "point index out of range");
    return OperatorMatrix::diagonal(
        space, distance_function(*space, origin, number_or(spec, "scale", 1.0, where)));
  }
  if (type == "random-hermitian-banded") {
    check_keys(spec, {"type", "band", "scale"}, where);
    const double band = number_or(spec, "band", 1.0, where);
    if (band < 0.0) fail(where + ".band", "must be nonnegative");
    return random_hermitian_banded(space, band, ctx.rng, number_or(spec, "scale", 1.0, where));
  }
  if (type == "file") {
    check_keys(spec, {"type", "path"}, where);
    const fs::path file = ctx.config.base_dir / string_field(spec, "path", where);
    std::ifstream in(file);
    if (!in) fail(where + ".path", "cannot open " + file.string());
    return read_matrix(in, space);
  }
  if (type == "translation") {
    check_keys(spec, {"type", "pairs"}, where);
    const json* p = find(spec, "pairs");
    return to_matrix(PartialTranslation(
        space, p ? pairs_from(*p, n, where + ".pairs") : consecutive_pairs(n)));
  }
  if (type == "expander-h" || type == "halfsplit-projection") {
    check_keys(spec, {"type"}, where);
    if (!ctx.family) fail(where, "'" + type + "' requires an expander space");
    return type == "expander-h" ? preflow_generator(*ctx.family) : halfsplit_projection(*ctx.family);
  }
  if (type == "sum") {
    check_keys(spec, {"type", "terms"}, where);
    const json* terms = find(spec, "terms");
    if (!terms || !terms->is_array() || terms->empty()) {
      fail(where + ".terms", "expected a nonempty array of operators");
    }
    auto total = OperatorMatrix::zero(space);
    for (std::size_t j = 0; j < terms->size(); ++j) {
      total += build_operator((*terms)[j], ctx, where + ".terms[" + std::to_string(j) + "]");
    }
    return total;
  }
  fail(where + ".type", "unknown operator type '" + type + "'");
}

OperatorMatrix required_operator(const char* key, Context& ctx) {
  const json* spec = find(ctx.config.doc, key);
  if (!spec) fail(key, "missing (this subcommand needs it)");
  return build_operator(*spec, ctx, key);
}

// ---------------------------------------------------------------------------
// Output.

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Table {
 public:
  Table(const ExperimentConfig& config, std::string name, const std::string& units,
        const std::string& columns)
      : name_(std::move(name)) {
    body_ << "# roeflow " << config.subcommand << " config_hash=" << config_hash(config)
          << " seed=" << config.seed << " units: " << units << '\n'
          << columns << '\n';
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((body_ << (first ? "" : ",") << cell(cells), first = false), ...);
    body_ << '\n';
  }

  std::ostream& raw() { return body_; }

  fs::path write(const fs::path& dir) const { return write_file(dir / name_, body_.str()); }

  static fs::path write_file(const fs::path& file, const std::string& content) {
    std::ofstream out(file, std::ios::binary);
    out << content;
    out.close();
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return file;
  }

 private:
  static std::string cell(double v) { return fmt(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }
  static std::string cell(const char* v) { return v; }

  std::string name_;
  std::ostringstream body_;
};

const json& params_of(const ExperimentConfig& config) {
  static const json empty = json::object();
  const json* p = find(config.doc, "params");
  return p ? *p : empty;
}

std::vector<double> radii_or_distance_set(const json& params, const FiniteSpace& space) {
  const json* r = find(params, "radii");
  if (!r) return space.distance_set();
  auto radii = numbers(*r, "params.radii");
  if (radii.empty()) fail("params.radii", "must not be empty");
  for (double x : radii) {
    if (x < 0.0) fail("params.radii", "radii must be nonnegative");
  }
  return radii;
}

double tolerance(const ExperimentConfig& config, const char* key, double fallback) {
  const json* t = find(config.doc, "tolerances");
  return t ? number_or(*t, key, fallback, "tolerances") : fallback;
}

// ---------------------------------------------------------------------------
// Subcommands.

std::vector<fs::path> coarse_check(Context& ctx, const fs::path& dir) {
  const auto& params = params_of(ctx.config);
  check_keys(params, {"radii", "modes", "max_points"}, "params");
  const auto h = required_operator("operator", ctx);
  const auto radii = radii_or_distance_set(params, *ctx.space);
  const json* m = find(params, "modes");
  const auto modes = m ? strings(*m, "params.modes") : std::vector<std::string>{"exact", "heuristic"};
  const auto max_points = count_or(params, "max_points", kTranslationGuard, "params");

  Table table(ctx.config, "coarse_check.csv", "r [distance]; modulus [operator norm]",
              "r,mode,modulus");
  for (const auto& mode : modes) {
    if (mode != "exact" && mode != "heuristic") fail("params.modes", "unknown mode '" + mode + "'");
  }
  for (double r : radii) {
    for (const auto& mode : modes) {
      const auto cm = mode == "exact" ? CoarsenessMode::exact : CoarsenessMode::heuristic;
      table.row(r, mode, coarseness_modulus(h, r, cm, max_points));
    }
  }
  return {table.write(dir)};
}

std::vector<fs::path> ql_profile_cmd(Context& ctx, const fs::path& dir) {
  const auto& params = params_of(ctx.config);
  check_keys(params, {"radii", "modes", "max_points"}, "params");
  const auto a = required_operator("operator", ctx);
  const auto radii = radii_or_distance_set(params, *ctx.space);
  const json* m = find(params, "modes");
  const auto modes = m ? strings(*m, "params.modes") : std::vector<std::string>{"exact", "lower"};
  const auto max_points = count_or(params, "max_points", kQuasiLocalityGuard, "params");

  std::vector<QLProfile> profiles;
  for (const auto& mode : modes) {
    if (mode != "exact" && mode != "lower") fail("params.modes", "unknown mode '" + mode + "'");
  }
  for (const auto& mode : modes) {
    profiles.push_back(ql_profile(a, mode == "exact" ? QLMode::exact : QLMode::lower, radii,
                                  max_points, ctx.config.threads));
  }
  std::ostringstream csv;
  write_profile_csv(csv, profiles);
  std::ostringstream header;
  header << "# roeflow " << ctx.config.subcommand << " config_hash=" << config_hash(ctx.config)
         << " seed=" << ctx.config.seed
         << " units: radius [distance]; value [operator norm]\n";
  return {Table::write_file(dir / "ql_profile.csv", header.str() + csv.str())};
}

std::vector<fs::path> flow_profile(Context& ctx, const fs::path& dir) {
  const auto& params = params_of(ctx.config);
  check_keys(params, {"observable", "translation", "deltas"}, "params");
  const auto h = required_operator("operator", ctx);
  const std::size_t n = ctx.space->size();
  const json* obs = find(params, "observable");
  const auto a = obs ? build_operator(*obs, ctx, "params.observable")
                     : to_matrix(PartialTranslation(ctx.space, consecutive_pairs(n)));
  const json* tr = find(params, "translation");
  const PartialTranslation f(ctx.space, tr ? pairs_from(*tr, n, "params.translation")
                                           : consecutive_pairs(n));
  std::vector<double> deltas;
  if (const json* d = find(params, "deltas")) {
    deltas = numbers(*d, "params.deltas");
    if (deltas.empty()) fail("params.deltas", "must not be empty");
    for (double x : deltas) {
      if (!(x > 0.0)) fail("params.deltas", "must be positive");
    }
  } else {
    for (int j = 0; j < 8; ++j) deltas.push_back(std::ldexp(0.1, -j));
  }

  const UnitaryGroup group(h);
  const auto& times = ctx.times;
  const auto norms = flow_displacement_norms(group, a, times);
  Table profile(ctx.config, "flow_profile.csv",
                "t [time]; displacement, modulus [operator norm]", "t,displacement,modulus");
  for (std::size_t j = 0; j < times.size(); ++j) {
    double modulus = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (std::abs(times[i]) <= std::abs(times[j])) modulus = std::max(modulus, norms[i]);
    }
    profile.row(times[j], norms[j], modulus);
  }

  Table derivative(ctx.config, "flow_derivative.csv",
                   "delta [time]; residual, generator_check [operator norm]",
                   "delta,residual,generator_check");
  for (double delta : deltas) {
    derivative.row(delta, flow_derivative_residual(h, f, delta), generator_check(h, delta));
  }
  return {profile.write(dir), derivative.write(dir)};
}

std::vector<fs::path> cocycle_verify(Context& ctx, const fs::path& dir) {
  check_keys(params_of(ctx.config), {}, "params");
  const auto h = required_operator("operator", ctx);
  const auto k = required_operator("perturbed", ctx);
  const double cocycle_tol = tolerance(ctx.config, "cocycle", 1e-9);
  const double lambda_tol = tolerance(ctx.config, "lambda", 1e-9);
  const auto& times = ctx.times;

  const auto u = cocycle_from_generators(h, k, times);
  Table grid(ctx.config, "cocycle.csv", "t, s [time]; residual [operator norm]", "t,s,residual");
  double worst = 0.0;
  for (double t : times) {
    for (double s : times) {
      const double r = cocycle_residual(u, t, s);
      worst = std::max(worst, r);
      grid.row(t, s, r);
    }
  }

  // lambda_t is scalar for the comparison family w_{h,k}(t) = e^{ith} e^{-itk}
  const auto w = cocycle_from_generators(k, h, times);
  Table lambda(ctx.config, "lambda.csv", "t [time]; lambda_residual [operator norm]",
               "t,lambda_residual");
  double worst_lambda = 0.0;
  for (double t : times) {
    const double r = lambda_scalar_residual(h, k, w, t);
    worst_lambda = std::max(worst_lambda, r);
    lambda.row(t, r);
  }
  std::vector<fs::path> files{grid.write(dir), lambda.write(dir)};
  if (worst > cocycle_tol) {
    throw NumericError("cocycle residual " + fmt(worst) + " exceeds tolerance " + fmt(cocycle_tol));
  }
  if (worst_lambda > lambda_tol) {
    throw NumericError("lambda residual " + fmt(worst_lambda) + " exceeds tolerance " +
                       fmt(lambda_tol));
  }
  return files;
}

std::vector<fs::path> diagonalize(Context& ctx, const fs::path& dir) {
  const auto& params = params_of(ctx.config);
  check_keys(params, {"r", "max_points"}, "params");
  const auto h = required_operator("operator", ctx);
  const double r = required_number(params, "r", "params");
  if (r < 0.0) fail("params.r", "must be nonnegative");
  const auto max_points = count_or(params, "max_points", kSignAverageGuard, "params");
  const auto report = extract_finite_prop(h, r, truncation_selector(), max_points);

  Table table(ctx.config, "diagonalize.csv",
              "r, propagation [distance]; defect, max_remainder, diagonal_residual [operator norm]",
              "r,defect,max_remainder,diagonal_residual,propagation");
  table.row(r, report.defect, report.max_remainder, report.diagonal_residual, report.propagation);
  std::ostringstream matrix;
  write_matrix(matrix, report.h_prime);
  return {table.write(dir), Table::write_file(dir / "h_prime.txt", matrix.str())};
}

std::vector<fs::path> expander_preflow(Context& ctx, const fs::path& dir) {
  const auto& params = params_of(ctx.config);
  check_keys(params, {"k"}, "params");
  if (!ctx.family) fail("space", "expander-preflow requires a space of type 'expander'");
  const auto& fam = *ctx.family;
  const std::string k_mode = find(params, "k") ? string_field(params, "k", "params") : "zero";
  std::vector<double> k(fam.union_space->size(), 0.0);
  if (k_mode == "expectation") {
    const auto h = preflow_generator(fam);
    for (std::size_t x = 0; x < k.size(); ++x) k[x] = h(x, x).real();
  } else if (k_mode != "zero") {
    fail("params.k", "expected 'zero' or 'expectation'");
  }

  Table blocks(ctx.config, "blocks.csv",
               "size [points]; weight [energy]; spectral_gap, split_factor, halfsplit_norm "
               "[dimensionless]",
               "block,size,weight,spectral_gap,split_factor,halfsplit_norm");
  for (std::size_t n = 0; n < fam.block_count(); ++n) {
    blocks.row(n, fam.blocks[n].size(), fam.weights[n], fam.spectral_gaps[n],
               halfsplit_factor(fam, n), halfsplit_commutator_norm(fam, n));
  }

  const auto sweep = discontinuity_sweep(fam, ctx.times);
  Table profile(ctx.config, "discontinuity.csv",
                "t [time]; measured, closed_form [operator norm]; block_of_max [0-based index]",
                "t,measured,closed_form,block_of_max");
  for (const auto& row : sweep) profile.row(row.t, row.measured, row.closed_form, row.block_of_max);

  const auto bounds = wmap_lower_bound_sweep(fam, k, ctx.times);
  Table wmap(ctx.config, "wmap.csv", "t [time]; lhs, rhs [operator norm]", "t,lhs,rhs");
  for (const auto& row : bounds) wmap.row(row.t, row.lhs, row.rhs);
  return {profile.write(dir), wmap.write(dir), blocks.write(dir)};
}

std::vector<fs::path> rigidity_probe(Context& ctx, const fs::path& dir) {
  check_keys(params_of(ctx.config), {}, "params");
  const auto h = required_operator("operator", ctx);
  const auto samples = flow_displacement_sweep(h, ctx.times, ctx.config.threads);
  Table table(ctx.config, "rigidity.csv",
              "t [time]; delta [dimensionless]; displacement [distance]", "t,delta,displacement");
  for (const auto& s : samples) table.row(s.t, s.report.delta, s.report.displacement);
  return {table.write(dir)};
}

}  // namespace

ExperimentConfig parse_config(json doc, fs::path base_dir,
                              std::optional<std::uint64_t> seed_override) {
  check_keys(doc,
             {"subcommand", "seed", "threads", "output", "space", "operator", "perturbed",
              "time_grid", "tolerances", "params", "description"},
             "config");
  ExperimentConfig config;
  config.subcommand = string_field(doc, "subcommand", "config");
  if (std::none_of(std::begin(kSubcommands), std::end(kSubcommands),
                   [&](const char* s) { return config.subcommand == s; })) {
    fail("config.subcommand", "unknown subcommand '" + config.subcommand + "'");
  }
  if (seed_override) doc["seed"] = *seed_override;
  config.seed = count_or(doc, "seed", 0, "config");
  doc["seed"] = config.seed;
  const auto threads = count_or(doc, "threads", 1, "config");
  if (threads == 0 || threads > 1024) fail("config.threads", "must be in [1, 1024]");
  config.threads = static_cast<unsigned>(threads);

  if (!find(doc, "space")) fail("config", "missing field 'space'");
  if (const json* tol = find(doc, "tolerances")) {
    if (!tol->is_object()) fail("tolerances", "expected an object");
    for (const auto& item : tol->items()) {
      if (!(number(item.value(), "tolerances." + item.key()) > 0.0)) {
        fail("tolerances." + item.key(), "must be strictly positive");
      }
    }
  }
  if (const json* params = find(doc, "params"); params && !params->is_object()) {
    fail("params", "expected an object");
  }
  if (needs_time_grid(config.subcommand)) {
    const json* grid = find(doc, "time_grid");
    if (!grid) fail("config", "missing field 'time_grid'");
    time_grid(*grid);
  }
  config.doc = std::move(doc);
  config.base_dir = std::move(base_dir);
  return config;
}

ExperimentConfig load_config(const fs::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(std::move(doc), path.parent_path(), seed_override);
}

std::string config_hash(const ExperimentConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.doc.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<fs::path> run(const ExperimentConfig& config, const fs::path& out_dir) {
  Context ctx{config, Rng(config.seed), nullptr, std::nullopt, {}};
  try {
    const json& space = config.doc.at("space");
    if (space.is_object() && find(space, "type") && space.at("type") == "expander") {
      ctx.family = build_family(space, ctx);
      ctx.space = ctx.family->union_space;
    } else {
      ctx.space = make_space(build_metric(space, ctx, "space"));
    }
    if (needs_time_grid(config.subcommand)) ctx.times = time_grid(config.doc.at("time_grid"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  fs::create_directories(out_dir);
  const std::string& cmd = config.subcommand;
  try {
    if (cmd == "coarse-check") return coarse_check(ctx, out_dir);
    if (cmd == "ql-profile") return ql_profile_cmd(ctx, out_dir);
    if (cmd == "flow-profile") return flow_profile(ctx, out_dir);
    if (cmd == "cocycle-verify") return cocycle_verify(ctx, out_dir);
    if (cmd == "diagonalize") return diagonalize(ctx, out_dir);
    if (cmd == "expander-preflow") return expander_preflow(ctx, out_dir);
    if (cmd == "rigidity-probe") return rigidity_probe(ctx, out_dir);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  fail("config.subcommand", "unknown subcommand '" + cmd + "'");
}

}  // namespace roeflow::cli
