#include "amoeba/commands.hpp"

#include "amoeba/errors.hpp"
#include "amoeba/families.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace amoeba::cli {

namespace {

nlohmann::ordered_json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

nlohmann::ordered_json basis_json(const Subspace& s) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& b : s.basis()) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& x : b) row.push_back(integer_json(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t parse_count(const std::string& text, const char* what) {
  std::size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || value < 0) throw ParseError(std::string(what) + " must be a nonnegative integer");
  return static_cast<std::size_t>(value);
}

void require_params(const std::string& family, const std::vector<std::string>& params, std::size_t count,
                    const char* usage) {
  if (params.size() != count) throw ValidationError("gen " + family + " expects: " + usage);
}

struct StrategyFlags {
  std::string name;
  std::optional<std::size_t> cap;
  std::optional<int> height;

  void attach(CLI::App& cmd) {
    cmd.add_option("--strategy", name, "Candidate family")->check(CLI::IsMember({"lattice", "exhaustive", "combined"}));
    cmd.add_option("--cap", cap, "Lattice closure size limit (default 10000)");
    cmd.add_option("--height", height, "Exhaustive generator entry bound (default 1)");
  }

  Strategy resolve(std::size_t ambient_dim) const {
    Strategy s = name.empty() ? Strategy::default_for(ambient_dim)
                 : name == "lattice"    ? Strategy::lattice()
                 : name == "exhaustive" ? Strategy::exhaustive(1)
                                        : Strategy::combined(10000, 1);
    if (cap) s.cap = *cap;
    if (height) s.height = *height;
    return s;
  }
};

struct EstimatorFlags {
  std::string kind;
  EstimatorOptions options;

  void attach(CLI::App& cmd) {
    cmd.add_option("--kind", kind, "Variety file kind")->required()->check(CLI::IsMember({"param", "implicit"}));
    cmd.add_option("--trials", options.trials, "Number of random samples")->capture_default_str();
    cmd.add_option("--tol", options.tol, "Relative singular value cutoff")->capture_default_str();
    cmd.add_option("--seed", options.seed, "Random seed")->capture_default_str();
  }

  VarietyKind variety_kind() const { return kind == "param" ? VarietyKind::param : VarietyKind::implicit; }
};

void emit(const nlohmann::ordered_json& doc, const std::string& output, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(output, std::ios::binary);
  if (!file) throw ValidationError("cannot write output file '" + output + "'");
  file << text;
}

}  // namespace

nlohmann::ordered_json to_json(const SearchResult& result) {
  nlohmann::ordered_json doc;
  doc["value"] = result.value;
  doc["lower_bound"] = result.lower_bound;
  doc["upper_bound"] = result.upper_bound;
  doc["certified"] = result.certified;
  doc["witness_S"] = basis_json(result.witness_S);
  doc["witness_T"] = basis_json(result.witness_T);
  doc["strategy"] = result.strategy;
  doc["candidates_evaluated"] = result.candidates_evaluated;
  return doc;
}

nlohmann::ordered_json to_json(const RankEstimate& estimate) {
  nlohmann::ordered_json doc;
  doc["rank"] = estimate.rank;
  doc["samples_used"] = estimate.samples_used;
  doc["singular_value_gap"] = estimate.singular_value_gap;
  doc["per_sample_ranks"] = estimate.per_sample_ranks;
  return doc;
}

nlohmann::ordered_json to_json(const Verdict& verdict) {
  nlohmann::ordered_json doc;
  doc["combinatorial"] = verdict.combinatorial;
  doc["numerical"] = verdict.numerical;
  doc["certified"] = verdict.certified;
  doc["verdict"] = verdict.agree ? "agree" : "mismatch";
  return doc;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<IntegerVector> parse_vector_list(std::string_view text, std::size_t n) {
  std::vector<IntegerVector> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto stop = std::min(text.find(';', start), text.size());
    std::string item(text.substr(start, stop - start));
    std::erase_if(item, [](unsigned char c) { return std::isspace(c) != 0; });
    if (!item.empty()) {
      if (item[0] == 'e') {
        out.push_back(families::unit_vector(n, parse_count(item.substr(1), "unit vector index")));
      } else {
        RationalVector v;
        std::size_t from = 0;
        while (from <= item.size()) {
          const auto comma = std::min(item.find(',', from), item.size());
          v.push_back(parse_rational(item.substr(from, comma - from)));
          from = comma + 1;
        }
        if (v.size() != n) {
          throw ParseError("vector '" + item + "' has " + std::to_string(v.size()) + " entries, expected " +
                           std::to_string(n));
        }
        out.push_back(primitive_integer_row(v));
      }
    }
    start = stop + 1;
  }
  return out;
}

SpanComplex generate_family(const std::string& family, const std::vector<std::string>& params) {
  if (family == "hyperplane") {
    require_params(family, params, 1, "N");
    return families::tropical_hyperplane(parse_count(params[0], "N"));
  }
  if (family == "orbit") {
    require_params(family, params, 2, "N VECTORS");
    const auto n = parse_count(params[0], "N");
    return families::orbit_subspace(n, parse_vector_list(params[1], n));
  }
  if (family == "curve") {
    require_params(family, params, 2, "N RAYS");
    const auto n = parse_count(params[0], "N");
    return families::curve_fan(n, parse_vector_list(params[1], n));
  }
  if (family == "torus_invariant") {
    require_params(family, params, 2, "BASE_FAN VECTORS");
    const auto base = parse_complex(read_file(params[0]));
    const auto n = base.ambient_dim();
    return families::torus_invariant(base, Subspace::span(n, parse_vector_list(params[1], n)));
  }
  if (family == "product") {
    require_params(family, params, 2, "FAN FAN");
    return product(parse_complex(read_file(params[0])), parse_complex(read_file(params[1])));
  }
  throw ValidationError("unknown family '" + family + "' (hyperplane, orbit, curve, torus_invariant, product)");
}

RankEstimate estimate_file(const std::string& path, VarietyKind kind, const EstimatorOptions& options) {
  const auto text = read_file(path);
  if (kind == VarietyKind::param) return estimate_rank(parse_parametrization(text), options);
  return estimate_rank_implicit(parse_implicit(text), options);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Amoeba dimension from tropical span complexes"};
  app.require_subcommand(1);
  std::string output;

  auto* dim_cmd = app.add_subcommand("dim", "Minimize 2 dim(S + fan) - dim S over candidate subspaces");
  std::string fan_path;
  StrategyFlags strategy_flags;
  dim_cmd->add_option("fan", fan_path, "Fan file")->required();
  strategy_flags.attach(*dim_cmd);
  dim_cmd->add_option("--output", output, "Write JSON here instead of standard output");

  auto* gen_cmd = app.add_subcommand("gen", "Emit a fan file for an example family");
  std::string family;
  std::vector<std::string> params;
  gen_cmd->add_option("family", family, "hyperplane | orbit | curve | torus_invariant | product")->required();
  gen_cmd->add_option("params", params, "Family parameters");
  gen_cmd->add_option("--output", output, "Write the fan file here instead of standard output");

  auto* est_cmd = app.add_subcommand("estimate", "Numerical rank of the Log Jacobian on random samples");
  std::string variety_path;
  EstimatorFlags estimator_flags;
  est_cmd->add_option("variety", variety_path, "Parametrization or implicit hypersurface file")->required();
  estimator_flags.attach(*est_cmd);
  est_cmd->add_option("--output", output, "Write JSON here instead of standard output");

  auto* verify_cmd = app.add_subcommand("verify", "Compare the combinatorial value with the numerical estimate");
  verify_cmd->add_option("fan", fan_path, "Fan file")->required();
  verify_cmd->add_option("variety", variety_path, "Variety file")->required();
  strategy_flags.attach(*verify_cmd);
  estimator_flags.attach(*verify_cmd);
  verify_cmd->add_option("--output", output, "Write JSON here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (dim_cmd->parsed()) {
      const auto complex = parse_complex(read_file(fan_path));
      emit(to_json(amoeba_dim(complex, strategy_flags.resolve(complex.ambient_dim()))), output, out);
      return kOk;
    }
    if (gen_cmd->parsed()) {
      const std::string text = format_complex(generate_family(family, params));
      emit(nlohmann::ordered_json::parse(text), output, out);
      return kOk;
    }
    if (est_cmd->parsed()) {
      emit(to_json(estimate_file(variety_path, estimator_flags.variety_kind(), estimator_flags.options)), output, out);
      return kOk;
    }
    if (verify_cmd->parsed()) {
      const auto complex = parse_complex(read_file(fan_path));
      const auto estimate = estimate_file(variety_path, estimator_flags.variety_kind(), estimator_flags.options);
      const auto verdict = cross_check(complex, estimate, strategy_flags.resolve(complex.ambient_dim()));
      emit(to_json(verdict), output, out);
      if (!verdict.agree) {
        err << "mismatch: combinatorial " << verdict.combinatorial << (verdict.certified ? " (certified)" : " (upper bound)")
            << " vs numerical " << verdict.numerical << "\n";
        return kMismatch;
      }
      return kOk;
    }
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const SamplingError& e) {
    err << "error: " << e.what() << "\n";
    return kSamplingFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace amoeba::cli
