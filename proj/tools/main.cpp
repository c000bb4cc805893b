// rankone: command-line front end for the rank-one perturbation library.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using rankone::cli::Format;
using rankone::cli::OutputRecord;

void add_format(CLI::App* sub, Format& format) {
  sub->add_option("--format", format, "Output format: csv or json (default csv)")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}},
                                          CLI::ignore_case)
                      .description(""))
      ->option_text("FORMAT");
}

rankone::Complex parse_z_flag(const std::string& text) {
  try {
    return rankone::cli::parse_complex(text);
  } catch (const rankone::Error& e) {
    throw CLI::ValidationError("--z", e.what());
  }
}

int emit(const OutputRecord& record, Format format) {
  if (format == Format::json) {
    std::cout << rankone::cli::to_json(record);
  } else if (record.ok() || record.exit_code == rankone::cli::kInvariantFailure) {
    std::cout << rankone::cli::to_csv(record);
    for (const auto& [key, value] : record.summary) {
      std::cerr << "# " << key << "=";
      std::visit([](const auto& v) { std::cerr << v; }, value);
      std::cerr << "\n";
    }
  }
  if (!record.ok()) std::cerr << "error: " << record.error_message << "\n";
  return record.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-one perturbations: inverses, resolvents and the Dirichlet/Neumann Laplacian testbed"};
  app.require_subcommand(1);

  Format format = Format::csv;

  rankone::cli::GreensOptions greens;
  std::string greens_z;
  auto* g = app.add_subcommand("greens", "Sample a static or spectral Green's function on an m x m grid");
  g->add_option("--which", greens.which, "dd, dn or diff")->check(CLI::IsMember({"dd", "dn", "diff"}))->capture_default_str();
  g->add_option("--z", greens_z, "Spectral parameter RE[,IM]; omit for the static kernel");
  g->add_option("--grid-m", greens.grid_m, "Grid points per axis")->check(CLI::Range(2, 100000))->capture_default_str();
  add_format(g, format);

  rankone::cli::EigsOptions eigs;
  int eigs_n = 0;
  auto* e = app.add_subcommand("eigs", "Eigenvalues of the Dirichlet/Neumann operator");
  e->add_option("--count", eigs.count, "Number of eigenvalues")->check(CLI::PositiveNumber)->capture_default_str();
  e->add_option("--method", eigs.method, "analytic, denominator or discrete")
      ->check(CLI::IsMember({"analytic", "denominator", "discrete"}))
      ->capture_default_str();
  auto* eigs_n_opt = e->add_option("--n", eigs_n, "Interior nodes (discrete method)")->check(CLI::Range(2, 100000));
  add_format(e, format);

  rankone::cli::ResolventDiffOptions rdiff;
  std::string rdiff_z = "1";
  auto* r = app.add_subcommand("resolvent-diff", "Resolvent difference (z - T_DN)^-1 - (z - T_DD)^-1");
  r->add_option("--z", rdiff_z, "Spectral parameter RE[,IM]")->capture_default_str();
  r->add_option("--source", rdiff.source, "analytic or discrete")
      ->check(CLI::IsMember({"analytic", "discrete"}))
      ->capture_default_str();
  r->add_option("--n", rdiff.n, "Interior nodes (discrete source)")->check(CLI::Range(2, 100000))->capture_default_str();
  r->add_option("--grid-m", rdiff.grid_m, "Sample points per axis")->check(CLI::Range(2, 100000))->capture_default_str();
  add_format(r, format);

  rankone::cli::PerturbOptions perturb;
  std::string matrix_file;
  bool use_random = false;
  auto* p = app.add_subcommand("perturb", "Inverse of A - |f><l| from A^-1, with residual checks");
  auto* file_opt = p->add_option("--matrix-file", matrix_file, "Matrix file (see README)");
  auto* random_flag = p->add_flag("--random", use_random, "Generate a seeded random instance");
  file_opt->excludes(random_flag);
  p->add_option("--dim", perturb.dim, "Dimension of the random instance")->check(CLI::Range(1, 4096))->capture_default_str();
  p->add_option("--seed", perturb.seed, "Random seed")->capture_default_str();
  p->add_flag("--singular", perturb.singular, "Rescale l so that 1 - <l|A^-1 f> = 0");
  add_format(p, format);

  rankone::cli::RecoverOptions recover;
  auto* rc = app.add_subcommand("recover", "Recover rank-one factors of T_DN^-1 - T_DD^-1 by probing");
  rc->add_option("--n", recover.n, "Interior nodes")->check(CLI::Range(2, 100000))->capture_default_str();
  add_format(rc, format);

  rankone::cli::VerifyOptions verify;
  auto* v = app.add_subcommand("verify", "Run the invariant suite; exit 0 iff every invariant holds");
  v->add_option("--seed", verify.seed, "Random seed")->capture_default_str();
  add_format(v, format);

  try {
    app.parse(argc, argv);
    if (g->parsed() && !greens_z.empty()) greens.z = parse_z_flag(greens_z);
    if (r->parsed()) rdiff.z = parse_z_flag(rdiff_z);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return rankone::cli::kInputError;
  }

  if (g->parsed()) return emit(rankone::cli::cmd_greens(greens), format);
  if (e->parsed()) {
    if (*eigs_n_opt) eigs.n = eigs_n;
    return emit(rankone::cli::cmd_eigs(eigs), format);
  }
  if (r->parsed()) return emit(rankone::cli::cmd_resolvent_diff(rdiff), format);
  if (p->parsed()) {
    if (*file_opt) perturb.matrix_file = matrix_file;
    return emit(rankone::cli::cmd_perturb(perturb), format);
  }
  if (rc->parsed()) return emit(rankone::cli::cmd_recover(recover), format);
  return emit(rankone::cli::cmd_verify(verify), format);
}
