#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <thread>

#include "asymq/activation.hpp"
#include "asymq/asymptotics.hpp"
#include "asymq/csv.hpp"
#include "asymq/errors.hpp"
#include "asymq/info_spectrum.hpp"
#include "asymq/schur_weyl.hpp"
#include "asymq/verify.hpp"

namespace asymq::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Global {
  std::string base = "e";
  int jobs = 1;
  std::string out = "-";

  LogBase log_base() const { return base == "2" ? LogBase::two : LogBase::e; }
};

struct Tuple {
  long n = 0, m = 0, k = 0, l = 0;
  Params validated() const { return validate_params(n, m, k, l); }
};

void add_tuple(CLI::App* cmd, Tuple& t) {
  cmd->add_option("--n", t.n, "number of qubits")->required();
  cmd->add_option("--m", t.m, "total number of ones")->required();
  cmd->add_option("--k", t.k, "length of the bit-string block")->required();
  cmd->add_option("--l", t.l, "ones inside the bit-string block")->required();
}

void add_out(CLI::App* cmd, Global& g) {
  cmd->add_option("--out", g.out, "output file, - for stdout")->capture_default_str();
}

// Rows are computed on up to `jobs` threads and returned in index order.
template <class Row>
std::vector<Row> parallel_rows(size_t count, int jobs, const std::function<Row(size_t)>& fn) {
  std::vector<Row> rows(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < count; i = next++) {
      try {
        rows[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DomainError("cannot open output file: " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::vector<long> sorted_list(std::vector<long> v, const char* what) {
  if (v.empty()) throw DomainError(std::string(what) + ": empty --n-list");
  for (long n : v) {
    if (n < 1) throw DomainError(std::string(what) + ": n must be positive");
  }
  if (!std::is_sorted(v.begin(), v.end())) throw DomainError(std::string(what) + ": --n-list must be ascending");
  return v;
}

// ---- commands --------------------------------------------------------------------

void cmd_pmf(const Tuple& t, bool exact, bool floating, const Global& g, std::ostream& out) {
  const Params p = t.validated();
  Pmf dist = [&] {
    if (exact) {
      if (p.k() == p.l() && p.m() <= p.n() - p.m() && p.n() <= max_exact_n()) {
        return pmf_closed_kl(p, Arithmetic::exact);
      }
      if (p.n() > max_exact_n()) {
        throw ResourceCapExceeded("pmf --exact: n = " + std::to_string(p.n()) + " exceeds the exact cap " +
                                  std::to_string(max_exact_n()) + " (set ASYMQ_MAX_N to raise)");
      }
      return pmf(p);
    }
    if (floating && p.k() == p.l() && p.m() <= p.n() - p.m()) return pmf_closed_kl(p, Arithmetic::floating);
    return pmf_auto(p);
  }();
  Output o(g.out, out);
  if (floating && dist.is_exact()) {
    CsvWriter w(o.stream(), {"x", "p_float"});
    for (int x = dist.x_min(); x <= dist.x_max(); ++x) {
      w.cell(x).cell(dist.prob(x));
      w.end_row();
    }
    return;
  }
  write_pmf_csv(o.stream(), dist);
}

void cmd_entropy(const Tuple& t, const Global& g, std::ostream& out) {
  const Params p = t.validated();
  const double s = avg_entropy(p, g.log_base());
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "m", "k", "l", "base", "entropy"});
  w.cell(p.n()).cell(p.m()).cell(p.k()).cell(p.l()).cell(to_string(g.log_base())).cell(s);
  w.end_row();
}

void cmd_decohered(const Tuple& t, const Global& g, std::ostream& out) {
  const Params p = t.validated();
  const double d = decohered_asymmetry(p, g.log_base());
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "m", "k", "l", "base", "decohered"});
  w.cell(p.n()).cell(p.m()).cell(p.k()).cell(p.l()).cell(to_string(g.log_base())).cell(d);
  w.end_row();
}

struct Type1Row {
  long n = 0;
  double s = 0, a = 0, scaled_dist = 0, dec = 0, dec_lim = 0, logm = 0;
};

void cmd_type1_scan(double xi, int k, int l, double eps, const std::vector<long>& ns, const Global& g,
                    std::ostream& out) {
  const auto r = TypeIRatios::make(xi, k, l);
  const auto q = typeI_q_pmf(r);
  const LogBase b = g.log_base();
  auto rows = parallel_rows<Type1Row>(ns.size(), g.jobs, [&](size_t i) {
    const long n = ns[i];
    const Params p = validate_params(n, std::lround(xi * static_cast<double>(n)), k, l);
    const Pmf dist = pmf_auto(p);
    double worst = 0.0;
    for (int x = 0; x <= k; ++x) worst = std::max(worst, std::fabs(dist.prob(x) - q[static_cast<size_t>(x)]));
    return Type1Row{n,
                    avg_entropy(dist, p.n(), b),
                    typeI_entropy_approx(n, r, b).value,
                    static_cast<double>(n) * worst,
                    decohered_asymmetry(p, b),
                    decohered_typeI(r, b),
                    typeI_logM(n, r, eps, b)};
  });
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "S_exact", "a_n", "n_max_abs_p_minus_q", "decohered_exact", "decohered_limit",
                           "logM_typeI"});
  for (const auto& row : rows) {
    w.cell(row.n).cell(row.s).cell(row.a).cell(row.scaled_dist).cell(row.dec).cell(row.dec_lim).cell(row.logm);
    w.end_row();
  }
}

struct Type2Row {
  long n = 0, m = 0, k = 0, l = 0;
  double s = 0, lead = 0, refined = 0, dec = 0, dec_exp = 0;
};

void cmd_type2_scan(double alpha, double beta, double gamma, double delta, const std::vector<long>& ns,
                    const Global& g, std::ostream& out) {
  const auto ratios = typeII_from_ratios(alpha, beta, gamma, delta);
  const LogBase b = g.log_base();
  std::optional<RefinedConstants> refined;
  if (gamma == 0.0 && ratios.xi > 0.0 && ratios.xi <= 0.5 && alpha > 0.0 && beta > 0.0 && delta > 0.0) {
    refined = typeII_refined_constants(ratios, b);
  }
  auto rows = parallel_rows<Type2Row>(ns.size(), g.jobs, [&](size_t i) {
    const long n = ns[i];
    const double nn = static_cast<double>(n);
    const long l = std::lround(alpha * nn);
    const long m = l + std::lround(beta * nn);
    const long k = l + std::lround(gamma * nn);
    const Params p = validate_params(n, m, k, l);
    Type2Row row{n, m, k, l};
    row.s = avg_entropy(p, b);
    row.lead = typeII_entropy_leading(ratios, n, b).value;
    row.refined = refined ? refined->prediction(n) : kNaN;
    row.dec = decohered_asymmetry(p, b);
    row.dec_exp = beta > 0.0 && delta > 0.0 ? decohered_typeII(ratios, n, b) : kNaN;
    return row;
  });
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "m", "k", "l", "S_exact", "leading", "refined", "decohered_exact",
                           "decohered_expansion"});
  for (const auto& r : rows) {
    w.cell(r.n).cell(r.m).cell(r.k).cell(r.l).cell(r.s).cell(r.lead).cell(r.refined).cell(r.dec).cell(r.dec_exp);
    w.end_row();
  }
}

void cmd_clt(double alpha, double xi, double tail_eps, const std::vector<long>& ns, const Global& g,
             std::ostream& out) {
  const auto ratios = typeII_from_ratios(alpha, xi - alpha, 0.0, 1.0 - xi);
  std::vector<Params> seq;
  for (long n : ns) seq.push_back(kl_slice_params(n, alpha, xi));
  // Rows are independent except for the slope column, which the report fills in order.
  const auto rep = clt_empirical_check(seq, ratios, tail_eps);
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "sup_cdf_dist", "mean_err", "var_err", "tail_log_slope"});
  for (const auto& r : rep.rows) {
    w.cell(r.n).cell(r.sup_cdf_dist).cell(r.mean_err).cell(r.var_err).cell(r.tail_log_slope);
    w.end_row();
  }
}

void cmd_fig1(double xi, int k, int l, const std::vector<long>& ns, const Global& g, std::ostream& out) {
  if (k == 0 && l == 0) throw DomainError("fig1: k = l = 0 gives a degenerate figure");
  if (k > 6) throw DomainError("fig1: requires k <= 6");
  const auto r = TypeIRatios::make(xi, k, l);
  const double u = typeI_expectation(r);
  auto rows = parallel_rows<std::array<double, 2>>(ns.size(), g.jobs, [&](size_t i) {
    const long n = ns[i];
    if (n < 2) throw DomainError("fig1: n >= 2");
    const double logn = std::log(static_cast<double>(n));
    const Params p = validate_params(n, std::lround(xi * static_cast<double>(n)), k, l);
    return std::array<double, 2>{avg_entropy(p) / logn, typeI_entropy_approx(n, r).value / logn};
  });
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "S_exact_over_logn", "a_over_logn", "u"});
  for (size_t i = 0; i < ns.size(); ++i) {
    w.cell(ns[i]).cell(rows[i][0]).cell(rows[i][1]).cell(u);
    w.end_row();
  }
}

void cmd_fig2(double xi, int steps, const Global& g, std::ostream& out) {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("fig2: requires 0 < xi < 1");
  if (steps < 1) throw DomainError("fig2: requires --steps >= 1");
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"kappa", "h_mu_bits", "kappa_h_xi_bits"});
  for (int i = 0; i <= steps; ++i) {
    const double kappa = static_cast<double>(i) / steps;
    const auto p = nma_slice(xi, kappa);
    w.cell(kappa).cell(binary_entropy(p.mu, LogBase::two)).cell(kappa * binary_entropy(xi, LogBase::two));
    w.end_row();
  }
}

void cmd_logm_bounds(const Tuple& t, double eps, double d1, double d2, const Global& g, std::ostream& out) {
  const Params p = t.validated();
  const auto b = m_bounds(p, eps, d1, d2, g.log_base());
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"n", "m", "k", "l", "eps", "delta1", "delta2", "lower", "upper"});
  w.cell(p.n()).cell(p.m()).cell(p.k()).cell(p.l()).cell(eps).cell(d1).cell(d2).cell(b.lower).cell(b.upper);
  w.end_row();
}

void cmd_antisym(long n, long d, bool scan, const Global& g, std::ostream& out) {
  std::vector<long> ds;
  if (scan) {
    if (n < 1) throw DomainError("activation-antisym: requires n >= 1");
    for (long v = n; v <= std::max(4 * n, 50L); ++v) ds.push_back(v);
  } else {
    if (d < 0) throw DomainError("activation-antisym: --d or --scan is required");
    ds.push_back(d);
  }
  auto rows = parallel_rows<double>(ds.size(), g.jobs, [&](size_t i) { return antisym_activation(n, ds[i]); });
  Output o(g.out, out);
  CsvWriter w(o.stream(), {"d", "value_bits", "value_nats"});
  for (size_t i = 0; i < ds.size(); ++i) {
    w.cell(ds[i]).cell(in_base(rows[i], LogBase::two)).cell(rows[i]);
    w.end_row();
  }
}

int cmd_verify(const std::string& suite, const Global& g, std::ostream& out) {
  const auto results = run_suite(suite);
  Output o(g.out, out);
  std::ostream& os = o.stream();
  int failed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name;
    if (!r.detail.empty()) os << " [" << r.detail << "]";
    os << "\n";
    if (!r.passed) ++failed;
  }
  os << "summary: " << results.size() - static_cast<size_t>(failed) << "/" << results.size() << " passed\n";
  if (failed > 0) {
    os << "failed checks:\n";
    for (const auto& r : results) {
      if (!r.passed) os << "  " << r.suite << ": " << r.name << "\n";
    }
  }
  return failed == 0 ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permutation-asymmetry toolkit: Schur-Weyl outcome distributions and their limits", "asymq"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--base", g.base, "log base for reported quantities")
      ->check(CLI::IsMember({"e", "2"}))
      ->capture_default_str();
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber)->capture_default_str();

  Tuple t;
  bool exact = false, floating = false;
  auto* pmf_cmd = app.add_subcommand("pmf", "distribution of the Schur-Weyl outcome x");
  add_tuple(pmf_cmd, t);
  auto* exact_flag = pmf_cmd->add_flag("--exact", exact, "exact rationals (n capped)");
  pmf_cmd->add_flag("--float", floating, "floating point only")->excludes(exact_flag);
  add_out(pmf_cmd, g);

  auto* entropy_cmd = app.add_subcommand("entropy", "entropy of the permutation-averaged state");
  add_tuple(entropy_cmd, t);
  add_out(entropy_cmd, g);

  auto* dec_cmd = app.add_subcommand("decohered", "asymmetry after decohering the Dicke block");
  add_tuple(dec_cmd, t);
  add_out(dec_cmd, g);

  double xi = 0.5, eps = 0.5;
  int k = 2, l = 1;
  std::vector<long> ns;
  auto* t1 = app.add_subcommand("type1-scan", "fixed k, l with m = xi n");
  t1->add_option("--xi", xi)->capture_default_str();
  t1->add_option("--k", k)->capture_default_str();
  t1->add_option("--l", l)->capture_default_str();
  t1->add_option("--eps", eps, "error level for the log M column")->capture_default_str();
  t1->add_option("--n-list", ns)->required()->delimiter(',');
  add_out(t1, g);

  double alpha = 0.2, beta = 0.3, gamma = 0.0, delta = 0.5;
  auto* t2 = app.add_subcommand("type2-scan", "m, k, l linear in n");
  t2->add_option("--alpha", alpha)->capture_default_str();
  t2->add_option("--beta", beta)->capture_default_str();
  t2->add_option("--gamma", gamma)->capture_default_str();
  t2->add_option("--delta", delta)->capture_default_str();
  t2->add_option("--n-list", ns)->required()->delimiter(',');
  add_out(t2, g);

  double tail_eps = 0.05;
  auto* clt = app.add_subcommand("clt-check", "Gaussian-limit diagnostics on the k = l slice");
  clt->add_option("--alpha", alpha)->capture_default_str();
  clt->add_option("--xi", xi)->capture_default_str();
  clt->add_option("--tail-eps", tail_eps)->capture_default_str();
  clt->add_option("--n-list", ns)->required()->delimiter(',');
  add_out(clt, g);

  auto* fig1 = app.add_subcommand("fig1", "S/log n and a(n)/log n against n");
  fig1->add_option("--xi", xi)->capture_default_str();
  fig1->add_option("--k", k)->capture_default_str();
  fig1->add_option("--l", l)->capture_default_str();
  fig1->add_option("--n-list", ns)->delimiter(',');
  add_out(fig1, g);

  double xi2 = 0.3;
  int steps = 200;
  auto* fig2 = app.add_subcommand("fig2", "h(mu) against kappa h(xi), base 2");
  fig2->add_option("--xi", xi2)->capture_default_str();
  fig2->add_option("--steps", steps)->capture_default_str();
  add_out(fig2, g);

  double d1 = 0.1, d2 = 0.1;
  auto* lb = app.add_subcommand("logm-bounds", "one-shot bounds on the number of distinguishable states");
  add_tuple(lb, t);
  lb->add_option("--eps", eps)->capture_default_str();
  lb->add_option("--delta1", d1)->capture_default_str();
  lb->add_option("--delta2", d2)->capture_default_str();
  add_out(lb, g);

  long an = 2, ad = -1;
  bool scan = false;
  auto* anti = app.add_subcommand("activation-antisym", "activation of the antisymmetric-subspace example");
  anti->add_option("--n", an)->required();
  anti->add_option("--d", ad);
  anti->add_flag("--scan", scan, "scan d over [n, max(4n, 50)]");
  add_out(anti, g);

  std::string suite;
  auto* ver = app.add_subcommand("verify", "run a named verification suite");
  ver->add_option("--suite", suite, "pmf-oracle, typeI, typeII, refined, infospec, activation, all")->required();
  add_out(ver, g);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*pmf_cmd) cmd_pmf(t, exact, floating, g, out);
    else if (*entropy_cmd) cmd_entropy(t, g, out);
    else if (*dec_cmd) cmd_decohered(t, g, out);
    else if (*t1) cmd_type1_scan(xi, k, l, eps, sorted_list(ns, "type1-scan"), g, out);
    else if (*t2) cmd_type2_scan(alpha, beta, gamma, delta, sorted_list(ns, "type2-scan"), g, out);
    else if (*clt) cmd_clt(alpha, xi, tail_eps, sorted_list(ns, "clt-check"), g, out);
    else if (*fig1) {
      if (ns.empty()) ns = {100, 1000, 10000};
      cmd_fig1(xi, k, l, sorted_list(ns, "fig1"), g, out);
    } else if (*fig2) cmd_fig2(xi2, steps, g, out);
    else if (*lb) cmd_logm_bounds(t, eps, d1, d2, g, out);
    else if (*anti) cmd_antisym(an, ad, scan, g, out);
    else if (*ver) {
      if (!is_known_suite(suite)) {
        err << "unknown suite '" << suite << "'; expected one of: ";
        for (const auto& s : suite_names()) err << s << ", ";
        err << "all\n";
        return kUsage;
      }
      return cmd_verify(suite, g, out);
    }
  } catch (const ConstraintViolation& e) {
    err << "error: parameters violate " << e.violated() << ": " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResourceCap;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kOk;
}

}  // namespace asymq::cli
