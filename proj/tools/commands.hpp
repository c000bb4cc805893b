#pragma once

// Implementation of the `rankone` subcommands. Each command returns an
// OutputRecord; main() only parses flags and prints.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rankone/operator_core.hpp"

namespace rankone::cli {

enum ExitCode : int {
  kOk = 0,
  kInvariantFailure = 1,
  kSpectralPole = 2,
  kInputError = 3,
};

using Cell = std::variant<std::int64_t, double, std::string>;

struct OutputRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
  int exit_code = kOk;
  std::string error_message;

  bool ok() const noexcept { return exit_code == kOk; }
};

enum class Format { csv, json };

/// Header row plus data rows, 17 significant digits. Summary and status are
/// not part of the table.
std::string to_csv(const OutputRecord& record);
/// The full record: command, parameters, columns, rows, summary, status.
std::string to_json(const OutputRecord& record);

/// "RE" or "RE,IM". Throws InvalidArgument.
Complex parse_complex(const std::string& text);

struct GreensOptions {
  std::string which = "dd";  // dd | dn | diff
  std::optional<Complex> z;
  int grid_m = 11;
};

struct EigsOptions {
  int count = 3;
  std::string method = "analytic";  // analytic | denominator | discrete
  std::optional<int> n;
};

struct ResolventDiffOptions {
  Complex z{1.0, 0.0};
  std::string source = "analytic";  // analytic | discrete
  int n = 200;
  int grid_m = 5;
};

struct PerturbOptions {
  std::optional<std::string> matrix_file;
  int dim = 8;
  std::uint64_t seed = 7;
  bool singular = false;
};

struct RecoverOptions {
  int n = 200;
};

struct VerifyOptions {
  std::uint64_t seed = 20240611;
};

OutputRecord cmd_greens(const GreensOptions& opts);
OutputRecord cmd_eigs(const EigsOptions& opts);
OutputRecord cmd_resolvent_diff(const ResolventDiffOptions& opts);
OutputRecord cmd_perturb(const PerturbOptions& opts);
OutputRecord cmd_recover(const RecoverOptions& opts);
OutputRecord cmd_verify(const VerifyOptions& opts);

/// Parsed contents of a matrix file for `perturb`.
struct MatrixFile {
  DenseOperator a;
  std::optional<Vector> f;
  std::optional<Functional> l;
};

/// Format: first line the dimension n, then n rows of n values, then an
/// optional line of n values for f and one for l. Values are "RE" or
/// "RE,IM"; blank lines and lines starting with '#' are skipped.
/// Throws InvalidArgument on malformed input.
MatrixFile parse_matrix_file(const std::string& text);

}  // namespace rankone::cli
