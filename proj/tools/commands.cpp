#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "rankone/discretize_oracle.hpp"
#include "rankone/factor_recovery.hpp"
#include "rankone/krein_resolvent.hpp"
#include "rankone/laplace_testbed.hpp"
#include "rankone/random.hpp"
#include "rankone/rank_one_inverse.hpp"
#include "rankone/verify.hpp"

namespace rankone::cli {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

nlohmann::ordered_json json_cell(const Cell& c) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, c);
}

std::string format_complex(Complex z) { return format_double(z.real()) + "," + format_double(z.imag()); }

// Runs a command body and folds library errors into the record's status.
OutputRecord guarded(OutputRecord record, const std::function<void(OutputRecord&)>& body) {
  try {
    body(record);
  } catch (const PoleError& e) {
    record.exit_code = kSpectralPole;
    record.error_message = e.what();
  } catch (const EigenvalueHit& e) {
    record.exit_code = kSpectralPole;
    record.error_message = e.what();
  } catch (const SpectrumHit& e) {
    record.exit_code = kSpectralPole;
    record.error_message = e.what();
  } catch (const Error& e) {
    record.exit_code = kInputError;
    record.error_message = e.what();
  }
  if (!record.ok()) {
    record.rows.clear();
    record.summary.clear();
  }
  return record;
}

std::vector<double> unit_grid(int m) {
  if (m < 2) throw InvalidArgument("grid size must be at least 2");
  std::vector<double> g(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (m - 1);
  return g;
}

// `m` node indices spread evenly over 0..n-1.
std::vector<Index> node_sample(Index n, int m) {
  if (m < 2) throw InvalidArgument("grid size must be at least 2");
  std::vector<Index> idx;
  for (int a = 0; a < m; ++a) {
    const auto i = static_cast<Index>(std::llround(static_cast<double>(a) * static_cast<double>(n - 1) / (m - 1)));
    if (idx.empty() || idx.back() != i) idx.push_back(i);
  }
  return idx;
}

double max_abs_diff(const DenseOperator& a, const DenseOperator& b) {
  return (a.matrix() - b.matrix()).cwiseAbs().maxCoeff();
}

Complex parse_value(const std::string& token) {
  try {
    return parse_complex(token);
  } catch (const InvalidArgument&) {
    throw InvalidArgument("malformed value '" + token + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------- formatting

std::string to_csv(const OutputRecord& record) {
  std::string out;
  for (std::size_t i = 0; i < record.columns.size(); ++i) out += (i ? "," : "") + record.columns[i];
  out += '\n';
  for (const auto& row : record.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(row[i]);
    out += '\n';
  }
  return out;
}

std::string to_json(const OutputRecord& record) {
  nlohmann::ordered_json j;
  j["command"] = record.command;
  auto& params = j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.parameters) params[k] = v;
  j["columns"] = record.columns;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : record.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) r.push_back(json_cell(c));
    rows.push_back(std::move(r));
  }
  auto& summary = j["summary"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : record.summary) summary[k] = json_cell(v);
  if (record.ok()) {
    j["status"] = {{"state", "ok"}};
  } else {
    j["status"] = {{"state", "error"}, {"code", record.exit_code}, {"message", record.error_message}};
  }
  return j.dump(2) + "\n";
}

Complex parse_complex(const std::string& text) {
  auto parse_real = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("cannot parse number '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw InvalidArgument("cannot parse number '" + s + "'");
    return v;
  };
  const auto comma = text.find(',');
  if (comma == std::string::npos) return {parse_real(text), 0.0};
  return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

MatrixFile parse_matrix_file(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    lines.push_back(std::move(tokens));
  }
  if (lines.empty() || lines[0].size() != 1) throw InvalidArgument("matrix file: first line must hold the dimension");
  long long n = 0;
  try {
    std::size_t used = 0;
    n = std::stoll(lines[0][0], &used);
    if (used != lines[0][0].size()) throw InvalidArgument("");
  } catch (const std::exception&) {
    throw InvalidArgument("matrix file: bad dimension '" + lines[0][0] + "'");
  }
  if (n < 1) throw InvalidArgument("matrix file: dimension must be positive");
  const auto dim = static_cast<std::size_t>(n);
  if (lines.size() != 1 + dim && lines.size() != 3 + dim) {
    throw InvalidArgument("matrix file: expected " + std::to_string(n) + " matrix rows, optionally followed by f and l");
  }
  auto row_values = [&](std::size_t li) {
    if (lines[li].size() != dim) {
      throw InvalidArgument("matrix file: line " + std::to_string(li + 1) + " needs " + std::to_string(n) + " values");
    }
    Eigen::VectorXcd v(n);
    for (std::size_t j = 0; j < dim; ++j) v(static_cast<Index>(j)) = parse_value(lines[li][j]);
    return v;
  };
  Eigen::MatrixXcd a(n, n);
  for (std::size_t i = 0; i < dim; ++i) a.row(static_cast<Index>(i)) = row_values(1 + i).transpose();
  MatrixFile out{DenseOperator(std::move(a)), std::nullopt, std::nullopt};
  if (lines.size() == 3 + dim) {
    out.f = Vector(row_values(1 + dim));
    out.l = Functional(row_values(2 + dim).transpose());
  }
  return out;
}

// ---------------------------------------------------------------- commands

OutputRecord cmd_greens(const GreensOptions& opts) {
  OutputRecord rec;
  rec.command = "greens";
  rec.parameters = {{"which", opts.which},
                    {"z", opts.z ? format_complex(*opts.z) : "none"},
                    {"grid_m", std::to_string(opts.grid_m)}};
  rec.columns = {"x", "xi", "value_re", "value_im"};
  return guarded(std::move(rec), [&](OutputRecord& r) {
    using Kind = laplace::AnalyticKernel::Kind;
    Kind kind;
    if (opts.which == "dd") {
      kind = opts.z ? Kind::dd_spectral : Kind::dd_static;
    } else if (opts.which == "dn") {
      kind = opts.z ? Kind::dn_spectral : Kind::dn_static;
    } else if (opts.which == "diff") {
      kind = opts.z ? Kind::diff_spectral : Kind::diff_static;
    } else {
      throw InvalidArgument("greens: --which must be dd, dn or diff");
    }
    const laplace::AnalyticKernel kernel(kind);
    std::optional<SpectralPoint> s;
    if (opts.z) s = SpectralPoint::from_z(*opts.z);
    const auto grid = unit_grid(opts.grid_m);
    for (double x : grid) {
      for (double xi : grid) {
        const Complex v = kernel({x, xi}, s);
        r.rows.push_back({x, xi, v.real(), v.imag()});
      }
    }
  });
}

OutputRecord cmd_eigs(const EigsOptions& opts) {
  OutputRecord rec;
  rec.command = "eigs";
  rec.parameters = {{"count", std::to_string(opts.count)},
                    {"method", opts.method},
                    {"n", opts.n ? std::to_string(*opts.n) : "none"}};
  rec.columns = {"n", "z_re", "z_im", "k_re", "k_im"};
  return guarded(std::move(rec), [&](OutputRecord& r) {
    if (opts.count < 1) throw InvalidArgument("eigs: --count must be at least 1");
    const auto count = static_cast<std::size_t>(opts.count);
    std::vector<SpectralPoint> points;

    if (opts.method == "analytic") {
      points = laplace::dn_eigenvalues(count);
    } else if (opts.method == "denominator") {
      // Exactly `count` roots of k cot k lie below ((count + 1/4) π)².
      const double pi = std::numbers::pi;
      const double hi = std::pow((static_cast<double>(count) + 0.25) * pi, 2);
      std::vector<double> poles;
      for (std::size_t m = 1; m <= count; ++m) poles.push_back(std::pow(static_cast<double>(m) * pi, 2));
      const auto found = find_new_eigenvalues(
          [](Complex z) { return laplace::krein_denominator_analytic(SpectralPoint::from_z(z)); }, 0.0, hi, count,
          poles);
      for (const auto& ep : found.pairs) points.push_back(SpectralPoint::from_z(ep.z));
      r.summary.push_back({"truncated", static_cast<std::int64_t>(found.truncated)});
    } else if (opts.method == "discrete") {
      if (!opts.n) throw InvalidArgument("eigs: --n is required for the discrete method");
      for (double z : discrete::discrete_new_eigenvalues(discrete::build_pair(*opts.n), count)) {
        points.push_back(SpectralPoint::from_z(z));
      }
    } else {
      throw InvalidArgument("eigs: --method must be analytic, denominator or discrete");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      r.rows.push_back({static_cast<std::int64_t>(i), p.z().real(), p.z().imag(), p.k().real(), p.k().imag()});
    }
  });
}

OutputRecord cmd_resolvent_diff(const ResolventDiffOptions& opts) {
  OutputRecord rec;
  rec.command = "resolvent-diff";
  rec.parameters = {{"z", format_complex(opts.z)},
                    {"source", opts.source},
                    {"n", std::to_string(opts.n)},
                    {"grid_m", std::to_string(opts.grid_m)}};
  return guarded(std::move(rec), [&](OutputRecord& r) {
    const auto s = SpectralPoint::from_z(opts.z);
    if (opts.source == "analytic") {
      r.columns = {"x", "xi", "value_re", "value_im"};
      const auto grid = unit_grid(opts.grid_m);
      for (double x : grid) {
        for (double xi : grid) {
          const Complex v = laplace::spectral_difference({x, xi}, s);
          r.rows.push_back({x, xi, v.real(), v.imag()});
        }
      }
      return;
    }
    if (opts.source != "discrete") throw InvalidArgument("resolvent-diff: --source must be analytic or discrete");

    const auto dp = discrete::build_pair(opts.n);
    const double h = dp.grid.h();
    const DenseOperator d = discrete::inverse_difference(dp);
    const Probe probe = choose_probe(d);
    const RankOneForm factors = recover_factors(d, probe);
    const DenseOperator r1 = discrete::resolvent(dp.t_dd, opts.z);
    const DenseOperator brute = discrete::resolvent(dp.t_dn, opts.z) - r1;
    const DenseOperator krein = resolvent_difference(r1, opts.z, factors).materialize();
    const DenseOperator factor_free = resolvent_difference_factor_free(r1, opts.z, d, probe).materialize();

    r.columns = {"i", "j", "x", "xi", "krein_re", "krein_im", "brute_re", "brute_im", "analytic_re", "analytic_im"};
    double analytic_dev = 0.0;
    const auto idx = node_sample(opts.n, opts.grid_m);
    for (Index i : idx) {
      for (Index j : idx) {
        const double x = dp.grid.node(i), xi = dp.grid.node(j);
        const Complex k = krein(i, j) / h, b = brute(i, j) / h;
        const Complex a = laplace::spectral_difference({x, xi}, s);
        analytic_dev = std::max(analytic_dev, std::abs(b - a));
        r.rows.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(j), x, xi, k.real(), k.imag(),
                          b.real(), b.imag(), a.real(), a.imag()});
      }
    }
    r.summary = {{"h", h},
                 {"max_deviation", max_abs_diff(krein, brute)},
                 {"max_deviation_factor_free", max_abs_diff(factor_free, brute)},
                 {"max_deviation_analytic_sampled", analytic_dev}};
  });
}

OutputRecord cmd_perturb(const PerturbOptions& opts) {
  OutputRecord rec;
  rec.command = "perturb";
  rec.parameters = {{"matrix_file", opts.matrix_file.value_or("random")},
                    {"dim", std::to_string(opts.dim)},
                    {"seed", std::to_string(opts.seed)},
                    {"singular", opts.singular ? "true" : "false"}};
  rec.columns = {"i", "value_re", "value_im"};
  return guarded(std::move(rec), [&](OutputRecord& r) {
    random::Engine rng(opts.seed);
    std::optional<DenseOperator> a;
    std::optional<Vector> f;
    std::optional<Functional> l;
    if (opts.matrix_file) {
      std::ifstream in(*opts.matrix_file);
      if (!in) throw InvalidArgument("perturb: cannot open " + *opts.matrix_file);
      std::stringstream buf;
      buf << in.rdbuf();
      auto parsed = parse_matrix_file(buf.str());
      a = std::move(parsed.a);
      f = std::move(parsed.f);
      l = std::move(parsed.l);
    } else {
      if (opts.dim < 1) throw InvalidArgument("perturb: --dim must be positive");
      a = random::well_conditioned_operator(rng, opts.dim);
    }
    const Index n = a->dimension();
    if (!f) f = random::vector(rng, n);
    if (!l) l = random::functional(rng, n);

    DenseOperator a_inv = [&] {
      try {
        return invert(*a);
      } catch (const SingularMatrix&) {
        throw InvalidArgument("perturb: A is singular");
      }
    }();
    if (opts.singular) {
      const Complex c = pair(*l, a_inv * *f);
      if (std::abs(c) == 0.0) throw InvalidArgument("perturb: cannot make this instance singular");
      l = *l / c;
    }
    const RankOneForm p(*f, *l);
    const DenseOperator b = *a - p.materialize();
    const auto result = perturbed_inverse(a_inv, p);
    const Complex denom = rankone::denominator(a_inv, p);
    r.summary = {{"dim", static_cast<std::int64_t>(n)}, {"denominator_re", denom.real()}, {"denominator_im", denom.imag()}};

    if (const auto* reg = std::get_if<RegularInverse>(&result)) {
      const Vector w = random::vector(rng, n);
      const Vector v = solve_perturbed(a_inv, p, w);
      const double inverse_residual =
          ((b * reg->inverse(a_inv)).matrix() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
      r.summary.push_back({"branch", std::string("regular")});
      r.summary.push_back({"inverse_residual", inverse_residual});
      r.summary.push_back({"solve_residual", (b * v - w).max_norm()});
      for (Index i = 0; i < n; ++i) r.rows.push_back({static_cast<std::int64_t>(i), v[i].real(), v[i].imag()});
    } else {
      const auto& sing = std::get<SingularInverse>(result);
      const Vector& nv = sing.null_vector;
      r.summary.push_back({"branch", std::string("singular")});
      r.summary.push_back({"null_residual", (b * nv).norm() / (b.frobenius_norm() * nv.norm())});
      r.summary.push_back(
          {"certificate", static_cast<std::int64_t>(null_space_certificate(a_inv, p, nv))});
      for (Index i = 0; i < n; ++i) r.rows.push_back({static_cast<std::int64_t>(i), nv[i].real(), nv[i].imag()});
    }
  });
}

OutputRecord cmd_recover(const RecoverOptions& opts) {
  OutputRecord rec;
  rec.command = "recover";
  rec.parameters = {{"n", std::to_string(opts.n)}};
  rec.columns = {"i", "x", "f_re", "f_im", "l_over_h_re", "l_over_h_im"};
  return guarded(std::move(rec), [&](OutputRecord& r) {
    const auto dp = discrete::build_pair(opts.n);
    const double h = dp.grid.h();
    const DenseOperator d = discrete::inverse_difference(dp);
    const Probe probe = choose_probe(d);
    const RankOneForm factors = recover_factors(d, probe);
    const double residual = max_abs_diff(factors.materialize(), d) / d.max_norm();

    // Fix the gauge so that f takes the value x_n at the last node.
    const Index last = dp.grid.n() - 1;
    const Complex c = dp.grid.node(last) / factors.f()[last];
    const Vector f = c * factors.f();
    const Functional l = factors.l() / c;
    double f_dev = 0.0, l_dev = 0.0;
    for (Index i = 0; i <= last; ++i) {
      const double x = dp.grid.node(i);
      const Complex lh = l[i] / h;
      f_dev = std::max(f_dev, std::abs(f[i] - x));
      l_dev = std::max(l_dev, std::abs(lh - x));
      r.rows.push_back({static_cast<std::int64_t>(i), x, f[i].real(), f[i].imag(), lh.real(), lh.imag()});
    }
    r.summary = {{"h", h},
                 {"probe_pairing", probe.pairing.real()},
                 {"reconstruction_residual", residual},
                 {"f_shape_deviation", f_dev},
                 {"l_shape_deviation", l_dev}};
  });
}

OutputRecord cmd_verify(const VerifyOptions& opts) {
  OutputRecord rec;
  rec.command = "verify";
  rec.parameters = {{"seed", std::to_string(opts.seed)}};
  rec.columns = {"invariant", "passed", "measured", "threshold"};
  const auto results = verify::run_invariant_suite(opts.seed);
  std::int64_t passed = 0;
  for (const auto& res : results) {
    passed += res.passed;
    rec.rows.push_back({res.name, static_cast<std::int64_t>(res.passed), res.measured, res.threshold});
  }
  rec.summary = {{"invariants", static_cast<std::int64_t>(results.size())}, {"passed", passed}};
  if (passed != static_cast<std::int64_t>(results.size())) {
    rec.exit_code = kInvariantFailure;
    rec.error_message = std::to_string(results.size() - static_cast<std::size_t>(passed)) + " invariant(s) failed";
  }
  return rec;
}

}  // namespace rankone::cli
