// dilatelab: batch front-end for deciding, constructing and verifying
// minimal isometric dilations of commuting contraction tuples.
//
// Reports go to stdout as JSON; a one-line human summary goes to stderr
// unless --quiet. Exit codes: 0 pass, 1 fail, 2 input error, 3 numerical
// error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dilatelab/fixtures.hpp"
#include "dilatelab/pipeline.hpp"

namespace {

using namespace dilatelab;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct CommonFlags {
  bool quiet = false;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> atol;
  int jobs = 1;
};

void apply_env(CommonFlags& flags) {
  if (const char* s = std::getenv("DILATELAB_SEED")) flags.seed = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("DILATELAB_ATOL")) flags.atol = std::strtod(s, nullptr);
}

void emit(const RunReport& rep, const CommonFlags& flags) {
  std::cout << report_to_json(rep).dump(2) << "\n";
  if (!flags.quiet) {
    std::cerr << rep.pipeline << " " << rep.input_name << ": "
              << (rep.pass ? "pass" : "fail");
    if (rep.expected_match) std::cerr << (rep.expected_match.value() ? " (as expected)" : " (UNEXPECTED)");
    std::cerr << "\n";
  }
}

int severity(const RunReport& rep) { return rep.pass ? kExitPass : kExitFail; }

template <typename Fn>
int run_files(const std::vector<std::string>& files, const CommonFlags& flags, Fn&& fn) {
  std::vector<RunReport> reports(files.size());
  std::vector<int> codes(files.size(), kExitPass);
  std::vector<std::string> errors(files.size());
#pragma omp parallel for schedule(dynamic) num_threads(flags.jobs) if (flags.jobs > 1)
  for (long long i = 0; i < static_cast<long long>(files.size()); ++i) {
    try {
      const TupleDocument doc = load_tuple_document(files[i]);
      reports[i] = fn(doc);
      codes[i] = severity(reports[i]);
    } catch (const InputError& e) {
      codes[i] = kExitInput;
      errors[i] = e.what();
    } catch (const Error& e) {
      codes[i] = kExitNumeric;
      errors[i] = e.what();
    }
  }
  int worst = kExitPass;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!errors[i].empty()) {
      nlohmann::json j = {{"schema", kReportSchema},
                          {"input_name", files[i]},
                          {"error", errors[i]},
                          {"verdict", "error"}};
      std::cout << j.dump(2) << "\n";
      if (!flags.quiet) std::cerr << files[i] << ": error: " << errors[i] << "\n";
    } else {
      emit(reports[i], flags);
    }
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimal isometric dilations of commuting contraction tuples"};
  app.require_subcommand(1);

  CommonFlags flags;
  apply_env(flags);
  app.add_flag("--quiet", flags.quiet, "suppress the stderr summary");
  app.add_option("--seed", flags.seed, "seed for randomized checks");
  app.add_option("--atol", flags.atol, "default tolerance (documents may override)");
  app.add_option("--jobs", flags.jobs, "parallelize multi-file batches")->default_val(1);

  std::vector<std::string> files;
  std::string space = "defect-of-T";
  std::string conditions = "main";
  std::size_t degree = 5;
  std::size_t trunc = 0;
  std::string fixture_id;
  std::size_t gen_rank = 1, gen_n = 2, gen_degree = 2;
  std::string gen_out;

  auto add_files = [&](CLI::App* cmd) {
    cmd->fallthrough();  // accept the global flags after the subcommand
    cmd->add_option("files", files, "tuple documents (JSON; '-' for stdin)")->required();
  };

  auto* validate = app.add_subcommand("validate", "schema + tuple validation");
  add_files(validate);
  auto* extract = app.add_subcommand("extract", "extract candidate (U_i, P_i)");
  add_files(extract);
  extract->add_option("--space", space, "defect-of-T | defect-of-T-adjoint");
  auto* verify = app.add_subcommand("verify", "verify a condition set");
  add_files(verify);
  verify->add_option("--conditions", conditions, "main | coromain | pure | bdf");
  verify->add_option("--space", space, "defect-of-T | defect-of-T-adjoint");
  auto* dilate = app.add_subcommand("dilate", "build and check the Schaffer dilation");
  add_files(dilate);
  dilate->add_option("--degree", degree, "max total multi-index degree");
  auto* model = app.add_subcommand("model", "functional-model verification");
  add_files(model);
  model->add_option("--trunc", trunc, "truncation degree (0 = auto)");
  auto* classify = app.add_subcommand("classify", "class membership report");
  add_files(classify);
  auto* demo = app.add_subcommand("demo", "run a built-in fixture");
  demo->fallthrough();
  demo->add_option("example_id", fixture_id, "fixture id")->required();
  auto* gen = app.add_subcommand("gen", "generate a compressed model tuple");
  gen->fallthrough();
  gen->add_option("--rank", gen_rank, "defect rank")->required();
  gen->add_option("--n", gen_n, "tuple size")->required();
  gen->add_option("--degree", gen_degree, "truncation degree m")->required();
  gen->add_option("--out", gen_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  PipelineOptions opts;
  opts.seed = flags.seed;
  opts.atol_override = flags.atol;
  opts.degree = degree;
  opts.trunc = trunc;
  opts.conditions = conditions;
  if (space == "defect-of-T")
    opts.space = DilationSpace::DefectOfT;
  else if (space == "defect-of-T-adjoint")
    opts.space = DilationSpace::DefectOfTAdjoint;
  else {
    std::cerr << "unknown space: " << space << "\n";
    return kExitInput;
  }

  try {
    if (validate->parsed())
      return run_files(files, flags, [&](const TupleDocument& d) { return run_validate(d, opts); });
    if (extract->parsed())
      return run_files(files, flags, [&](const TupleDocument& d) { return run_extract(d, opts); });
    if (verify->parsed())
      return run_files(files, flags, [&](const TupleDocument& d) { return run_verify(d, opts); });
    if (dilate->parsed())
      return run_files(files, flags, [&](const TupleDocument& d) { return run_dilate(d, opts); });
    if (model->parsed())
      return run_files(files, flags, [&](const TupleDocument& d) { return run_model(d, opts); });
    if (classify->parsed())
      return run_files(files, flags, [&](const TupleDocument& d) { return run_classify(d, opts); });
    if (demo->parsed()) {
      const RunReport rep = run_demo(fixture_id, opts);
      emit(rep, flags);
      return severity(rep);
    }
    if (gen->parsed()) {
      const TupleDocument doc = run_gen(gen_rank, gen_n, gen_degree, flags.seed);
      const std::string body = to_json(doc).dump(2) + "\n";
      if (gen_out.empty()) {
        std::cout << body;
      } else {
        std::ofstream out(gen_out);
        if (!out) {
          std::cerr << "cannot write " << gen_out << "\n";
          return kExitInput;
        }
        out << body;
      }
      if (!flags.quiet) std::cerr << "gen " << doc.name << "\n";
      return kExitPass;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitInput;
}
