#include "manin/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kUsageError = 2;

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::set<int> parse_root_set(const std::string& s, std::size_t n) {
  std::set<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int i = 0;
    try {
      std::size_t used = 0;
      i = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("--I expects a comma-separated list of simple-root indices, got '" + item + "'");
    }
    if (i < 1 || i >= static_cast<int>(n))
      throw std::invalid_argument("simple-root index " + item + " out of range 1.." + std::to_string(n - 1));
    out.insert(i);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for Manin triples, double Poisson structures and weak splittings"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 1;
  bool parallel = false, lenient = false, allow_large = false;
  std::string format = "text", variant, case_name = "gxt", roots, input;
  std::size_t n = 2, samples = 5;

  app.add_option("--seed", seed, "Seed for sampled points (MANIN_SEED overrides)");
  app.add_flag("--parallel", parallel, "Run independent representatives concurrently");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("input", input, "Input spec (JSON file, or - for stdin)")->required();
    sub->add_flag("--lenient", lenient, "Ignore unknown fields in the input");
  };
  auto* validate = app.add_subcommand("validate", "Validate the quadratic Lie algebra, triple and representation");
  with_input(validate);
  auto* rmatrix = app.add_subcommand("rmatrix", "Dual bases, r-matrix and the Schouten check");
  with_input(rmatrix);
  auto* biv = app.add_subcommand("bivector-at", "Double Poisson bivectors at the listed points");
  with_input(biv);
  biv->add_option("--variant", variant, "drinfeld or heisenberg (default: both)");
  auto* section = app.add_subcommand("check-section", "Section conditions and weak-section verification");
  with_input(section);
  section->add_option("--samples", samples, "Points per section, identity included");
  auto* split = app.add_subcommand("check-splitting", "Weak splitting check for a representative list");
  with_input(split);
  split->add_option("--samples", samples, "Points per representative, identity included");
  auto* suite = app.add_subcommand("flag-suite", "Built-in suites over SL_n");
  suite->add_option("--case", case_name, "gxt or gxg")->check(CLI::IsMember({"gxt", "gxg"}));
  suite->add_option("--n", n, "Rank parameter n of SL_n");
  suite->add_option("--variant", variant, "drinfeld or heisenberg (default: drinfeld for gxt, heisenberg for gxg)");
  suite->add_option("--samples", samples, "Points per cell, identity included");
  suite->add_flag("--allow-large", allow_large, "Permit n above 4");
  auto* coset = app.add_subcommand("coset-reps", "Minimal-length coset representatives W^I in S_n");
  coset->add_option("--n", n, "n of S_n");
  coset->add_option("--I", roots, "Comma-separated simple roots generating W_I");
  auto* normalize = app.add_subcommand("normalize", "Print an input spec in canonical form");
  with_input(normalize);
  auto* dump = app.add_subcommand("dump-case", "Print a built-in triple as an input spec");
  dump->add_option("--case", case_name, "gxt or gxg")->check(CLI::IsMember({"gxt", "gxg"}));
  dump->add_option("--n", n, "Rank parameter n of SL_n");
  dump->add_option("--variant", variant, "Also emit the built-in splitting for this variant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (const char* env = std::getenv("MANIN_SEED")) {
    try {
      seed = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: MANIN_SEED must be a non-negative integer\n";
      return kUsageError;
    }
  }

  CLI::App* cmd = app.get_subcommands().front();
  try {
    if (cmd == dump) {
      auto fc = manin::standard_case(manin::parse_case_kind(case_name), n);
      auto spec = manin::input_spec_from_case(fc);
      if (!variant.empty()) spec.splitting = manin::splitting_input_from_case(fc, manin::parse_variant(variant));
      std::cout << manin::pretty_json(manin::serialize_input_spec(spec));
      return 0;
    }
    if (cmd == normalize) {
      auto spec = manin::parse_input_spec(read_file(input), !lenient);
      std::cout << manin::pretty_json(manin::serialize_input_spec(spec));
      return 0;
    }
    manin::RunOptions opt;
    opt.seed = seed;
    opt.parallel = parallel;
    opt.n = n;
    opt.allow_large = allow_large;
    opt.samples = samples;
    opt.case_kind = manin::parse_case_kind(case_name);
    if (!variant.empty()) {
      opt.variant = manin::parse_variant(variant);
      opt.variant_given = true;
    }
    if (cmd == coset) opt.simple_roots = parse_root_set(roots, n);

    std::optional<manin::InputSpec> spec;
    if (!input.empty()) spec = manin::parse_input_spec(read_file(input), !lenient);
    auto result = manin::execute_command(cmd->get_name(), spec, opt);
    if (format == "json") std::cout << manin::pretty_json(result.report);
    else std::cout << manin::report_text(result.report);
    return result.exit_code;
  } catch (const manin::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
