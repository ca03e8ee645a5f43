#include "ptreal/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "ptreal/antiunitary.hpp"
#include "ptreal/oscillator_basis.hpp"
#include "ptreal/potential.hpp"
#include "ptreal/realify.hpp"
#include "ptreal/serialize.hpp"
#include "ptreal/spectra.hpp"

namespace ptreal::cli {
namespace {

struct RunConfig {
  std::string potential_path;
  std::string matrix_path;
  std::string antiunitary_path;
  int n_basis = 0;
  std::string recipe;
  double tol_reality = kDefaultRealityTolerance;
  double tol_classify = kDefaultClassifyTolerance;
  std::string output_path;
  std::string n_list;
  int m_track = 1;
  std::string group;
};

/// Carries an exit code through the command implementations.
struct Exit {
  int code;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input:
      return kUsage;
    case ErrorKind::io:
      return kIo;
    case ErrorKind::incomplete_basis:
      return kIncompleteBasis;
    case ErrorKind::reality_violation:
      return kRealityViolation;
    case ErrorKind::non_convergence:
      return kNonConvergence;
    case ErrorKind::closure_violation:
      return kClosureViolation;
  }
  return kUsage;
}

class Commands {
 public:
  Commands(const RunConfig& cfg, std::ostream& out, std::ostream& err, const VerifyHooks& hooks)
      : cfg_(cfg), out_(out), err_(err), hooks_(hooks) {}

  int build() {
    require(!cfg_.potential_path.empty(), "build needs --potential");
    const auto h = load_hamiltonian();
    const double violation = check_a_symmetry(h, pt_ho(h.n_basis));
    if (!cfg_.output_path.empty()) write_text_file(cfg_.output_path, operator_matrix_to_json(h) + "\n");
    out_ << "A-symmetry violation: " << format_double(violation) << "\n";
    return kOk;
  }

  int realify_cmd() {
    const auto real = realified();
    if (!cfg_.output_path.empty()) write_text_file(cfg_.output_path, real_matrix_to_json(real) + "\n");
    out_ << "imag_residual: " << format_double(real.imag_residual) << "\n";
    return kOk;
  }

  int spectrum() {
    const auto real = realified();
    const auto report = spectrum_report(real.entries, cfg_.tol_classify);
    if (!cfg_.output_path.empty()) write_text_file(cfg_.output_path, spectrum_report_to_json(report) + "\n");
    out_ << "real eigenvalues: " << report.real_set.size()
         << ", conjugate pairs: " << report.pairs.size() << "\n";
    if (!report.real_set.empty()) out_ << "lowest real eigenvalue: " << format_double(report.real_set.front()) << "\n";
    out_ << "backward error: " << format_double(report.backward_error) << "\n";
    return kOk;
  }

  int sweep() {
    require(!cfg_.potential_path.empty(), "sweep needs --potential");
    require(!cfg_.n_list.empty(), "sweep needs --n-list");
    const auto sizes = parse_int_list(cfg_.n_list);
    require(std::is_sorted(sizes.begin(), sizes.end()) &&
                std::adjacent_find(sizes.begin(), sizes.end()) == sizes.end(),
            "--n-list must be strictly ascending");
    const auto p = load_potential();
    const auto csv = sweep_to_csv(convergence_sweep(p, sizes, cfg_.m_track));
    if (cfg_.output_path.empty()) {
      out_ << csv;
    } else {
      write_text_file(cfg_.output_path, csv);
      out_ << "wrote " << sizes.size() * static_cast<std::size_t>(cfg_.m_track) << " rows\n";
    }
    return kOk;
  }

  int verify() {
    const auto results = run_verify(cfg_.group, hooks_);
    const InvariantResult* first_failure = nullptr;
    for (const auto& r : results) {
      out_ << (r.passed ? "[PASS] " : "[FAIL] ") << r.group << ": " << r.name << " (" << r.detail << ")\n";
      if (!r.passed && first_failure == nullptr) first_failure = &r;
    }
    if (first_failure != nullptr) {
      err_ << "verify failed: " << first_failure->name << " [" << first_failure->group << "]\n";
      return kVerifyFailed;
    }
    out_ << results.size() << " invariants passed\n";
    return kOk;
  }

 private:
  void require(bool ok, const std::string& message) {
    if (!ok) {
      err_ << "error: " << message << "\n";
      throw Exit{kUsage};
    }
  }

  static std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(ErrorKind::invalid_input, "--n-list: '" + item + "' is not an integer");
      }
    }
    return values;
  }

  PotentialSpec load_potential() {
    const auto p = parse_potential(read_text_file(cfg_.potential_path));
    if (auto warning = confinement_warning(p)) err_ << "warning: " << *warning << "\n";
    return p;
  }

  OperatorMatrix load_hamiltonian() {
    require(cfg_.potential_path.empty() != cfg_.matrix_path.empty(),
            "exactly one of --potential and --matrix is required");
    if (!cfg_.potential_path.empty()) {
      require(cfg_.n_basis >= 2, "--n must be at least 2");
      return hamiltonian_matrix(load_potential(), cfg_.n_basis);
    }
    auto h = operator_matrix_from_json(read_text_file(cfg_.matrix_path));
    h.label = cfg_.matrix_path;
    require(cfg_.n_basis == 0 || cfg_.n_basis == h.n_basis,
            "--n " + std::to_string(cfg_.n_basis) + " does not match the matrix size " +
                std::to_string(h.n_basis));
    return h;
  }

  RealMatrix realified() {
    const auto h = load_hamiltonian();
    std::optional<AntiunitaryRep> a;
    if (!cfg_.antiunitary_path.empty()) {
      a = antiunitary_from_json(read_text_file(cfg_.antiunitary_path));
    } else {
      require(h.basis == BasisTag::ho, "a raw-basis matrix needs --antiunitary");
      a = pt_ho(h.n_basis);
    }
    require(a->n_basis() == h.n_basis, "antiunitary and matrix sizes differ");

    const double scale = std::max(max_abs(h.entries), std::numeric_limits<double>::min());
    const double violation = check_a_symmetry(h, *a);
    if (violation > cfg_.tol_reality * scale) {
      err_ << "error: matrix is not A-symmetric (max violation " << format_double(violation)
           << ", allowed " << format_double(cfg_.tol_reality * scale) << ")\n";
      throw Exit{kRealityViolation};
    }

    std::string recipe = cfg_.recipe;
    if (recipe.empty()) recipe = a->tag() == AntiunitaryTag::pt_ho ? "phase_unitary" : "projector_phase";

    if (recipe == "phase_unitary") {
      require(a->tag() == AntiunitaryTag::pt_ho, "phase_unitary requires the oscillator-basis PT operator");
      return realify(h, hooks_.phase_unitary(h.n_basis), cfg_.tol_reality);
    }
    Recipe r;
    if (recipe == "projector_phase") r = Recipe::projector_phase();
    else if (recipe == "phase_power") r = Recipe::phase_power();
    else if (recipe == "porter") r = Recipe::porter(cplx(0.5, 0.5));
    else if (recipe == "bender") r = Recipe::bender();
    else require(false, "unknown recipe '" + recipe + "'");

    const auto basis = adapted_basis(*a, r);
    if (r.kind == RecipeKind::bender) {
      out_ << "rank " << basis.rank << " of " << basis.n_basis() << ", " << basis.dropped
           << " columns dropped\n";
    }
    return realify(h, basis, cfg_.tol_reality);
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  const VerifyHooks& hooks_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const VerifyHooks& hooks) {
  RunConfig cfg;
  CLI::App app{"Real matrix representations and spectra of PT-symmetric Hamiltonians", "ptreal"};
  app.require_subcommand(1);

  auto add_input = [&cfg](CLI::App* sub) {
    sub->add_option("--potential", cfg.potential_path, "potential JSON file");
    sub->add_option("--matrix", cfg.matrix_path, "operator matrix JSON file");
    sub->add_option("--n", cfg.n_basis, "basis size");
  };
  auto add_realify = [&cfg](CLI::App* sub) {
    sub->add_option("--antiunitary", cfg.antiunitary_path, "custom antiunitary JSON file");
    sub->add_option("--recipe", cfg.recipe,
                    "phase_unitary | projector_phase | phase_power | porter | bender");
    sub->add_option("--tol-reality", cfg.tol_reality, "reality tolerance relative to max|entry|")
        ->check(CLI::PositiveNumber);
  };

  auto* build = app.add_subcommand("build", "write the oscillator-basis Hamiltonian matrix");
  build->add_option("--potential", cfg.potential_path, "potential JSON file")->required();
  build->add_option("--n", cfg.n_basis, "basis size")->required();
  build->add_option("--out", cfg.output_path, "output JSON file");

  auto* realify_sub = app.add_subcommand("realify", "transform to a real matrix");
  add_input(realify_sub);
  add_realify(realify_sub);
  realify_sub->add_option("--out", cfg.output_path, "output JSON file");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and their classification");
  add_input(spectrum);
  add_realify(spectrum);
  spectrum->add_option("--tol-classify", cfg.tol_classify, "classification tolerance")
      ->check(CLI::PositiveNumber);
  spectrum->add_option("--out", cfg.output_path, "output JSON file");

  auto* sweep = app.add_subcommand("sweep", "truncation convergence table");
  sweep->add_option("--potential", cfg.potential_path, "potential JSON file")->required();
  sweep->add_option("--n-list", cfg.n_list, "ascending basis sizes, comma separated")->required();
  sweep->add_option("--m-track", cfg.m_track, "number of levels to track");
  sweep->add_option("--out", cfg.output_path, "output CSV file");

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--group", cfg.group, "run a single invariant group");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  Commands commands(cfg, out, err, hooks);
  try {
    if (build->parsed()) return commands.build();
    if (realify_sub->parsed()) return commands.realify_cmd();
    if (spectrum->parsed()) return commands.spectrum();
    if (sweep->parsed()) return commands.sweep();
    if (verify->parsed()) return commands.verify();
  } catch (const Exit& e) {
    return e.code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  return kUsage;
}

}  // namespace ptreal::cli
