#include "psl2lab/cli.hpp"

#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "psl2lab/error.hpp"
#include "psl2lab/geodesics.hpp"
#include "psl2lab/lefschetz.hpp"
#include "psl2lab/mellin.hpp"
#include "psl2lab/quadform.hpp"
#include "psl2lab/quadrature.hpp"
#include "psl2lab/replab.hpp"
#include "psl2lab/report.hpp"
#include "psl2lab/selberg.hpp"

namespace psl2lab::cli {

namespace {

using nlohmann::json;
using report::Cell;
using report::Table;

struct Config {
  double xmax = 1e6;
  int decades = 3;
  double beta = 4.0;
  int k = 3;
  double T = 1.0;
  double C = 1.25;
  double H = 0.0;
  double X = 1e5;
  int K = -1;
  std::int64_t D = 5;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double s_re = 2.0;
  double s_im = 0.0;
  int nmax = 3;
  std::vector<double> s_values;
  std::string zeros;
  std::string cache_dir;
  std::string out_dir;
  std::string format;
  bool overwrite = false;
  bool no_cache = false;
};

json to_json(const Config& c, const std::string& command) {
  json j;
  j["command"] = command;
  j["xmax"] = c.xmax;
  j["decades"] = c.decades;
  j["beta"] = c.beta;
  j["k"] = c.k;
  j["T"] = c.T;
  j["C"] = c.C;
  j["H"] = c.H;
  j["X"] = c.X;
  j["K"] = c.K;
  j["D"] = c.D;
  j["s"] = {c.s_re, c.s_im};
  j["nmax"] = c.nmax;
  j["s_values"] = c.s_values;
  j["zeros"] = c.zeros;
  j["cache_dir"] = c.cache_dir;
  j["out"] = c.out_dir;
  j["format"] = c.format;
  j["overwrite"] = c.overwrite;
  j["no_cache"] = c.no_cache;
  return j;
}

json complex_json(std::complex<double> z) {
  return {{"re", report::round12(z.real())}, {"im", report::round12(z.imag())}};
}

constexpr const char* kConventions = R"(Conventions (see README, "Conventions"):
  N(gamma0) = eps+(D)^2, eps+ = (x + y sqrt D)/2 with x^2 - D y^2 = 4 minimal;
    every valid D carries h+(D) primitive classes of that norm.
  L(gamma) = log N(gamma0) / (1 - 1/N(gamma)); Psi(X) sums log N(gamma0)
    over all classes with N(gamma) <= X, powers included.
  psi(t) = (t/T)^-beta (1 - T/t)^k on [T, inf); phi(diag(t,1/t)) = psi(t^-2).
  H^0 of delta_{2n-1} has weight (2n-2) rho, so L_{(2n-2)rho}(delta_{2n-1}) = -1.
  Tail estimates assume Psi(x) ~ x; they are reported, not certified.
Exit status: 0 ok, 1 precondition or input error, 2 usage error.)";

class Runner {
 public:
  Runner(Config cfg, std::ostream& out) : cfg_(std::move(cfg)), out_(out) {}

  geodesics::FamilyList families(double X) const {
    if (cfg_.no_cache) return geodesics::enumerate_primitive_families(X);
    return geodesics::SpectrumCache(cfg_.cache_dir).families(X, cfg_.overwrite);
  }

  void emit(const std::string& command, const std::string& text, report::Format fmt) const {
    out_ << text;
    if (cfg_.out_dir.empty()) return;
    std::filesystem::create_directories(cfg_.out_dir);
    const auto path = std::filesystem::path(cfg_.out_dir) / (command + (fmt == report::Format::csv ? ".csv" : ".json"));
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) throw std::runtime_error("cannot write " + path.string());
  }

  void emit_table(const std::string& command, const Table& t, const std::string& default_fmt) const {
    const auto fmt = report::parse_format(cfg_.format.empty() ? default_fmt : cfg_.format);
    emit(command, report::emit_report(t, fmt), fmt);
  }

  void emit_object(const std::string& command, const json& j) const {
    if (!cfg_.format.empty() && cfg_.format != "json") {
      report::parse_format(cfg_.format);  // rejects unknown names
      throw precondition_error("'" + command + "' only supports json output");
    }
    emit(command, report::emit_json(j), report::Format::json);
  }

  void enumerate() const {
    const auto classes = geodesics::enumerate_classes(families(cfg_.X), cfg_.X);
    Table t{{"D", "n", "multiplicity", "log_norm", "norm", "local_lefschetz", "h_index"}, {}};
    for (const auto& c : classes) {
      t.rows.push_back({Cell{c.family->D}, Cell{std::int64_t{c.n}}, Cell{std::int64_t{c.multiplicity()}},
                        Cell{c.log_norm()}, Cell{std::exp(c.log_norm())}, Cell{geodesics::local_lefschetz(c)},
                        Cell{geodesics::h_index(c)}});
    }
    emit_table("enumerate", t, "csv");
  }

  void classnum() const {
    std::vector<std::int64_t> ds;
    if (cfg_.lo > 0 || cfg_.hi > 0) {
      ds = quadform::valid_discriminants(cfg_.lo, cfg_.hi);
    } else {
      ds = {cfg_.D};
    }
    Table t{{"D", "h_narrow", "h_wide", "unit_norm"}, {}};
    for (auto D : ds) {
      const auto rec = quadform::make_record(D);
      t.rows.push_back({Cell{D}, Cell{std::int64_t{rec.h_narrow}}, Cell{std::int64_t{rec.h_wide}},
                        Cell{std::int64_t{rec.unit_norm}}});
    }
    emit_table("classnum", t, "csv");
  }

  void pell() const {
    const auto rec = quadform::make_record(cfg_.D);
    Table t{{"D", "x", "y", "unit_norm", "log_eps_fund", "log_eps_plus"}, {}};
    t.rows.push_back({Cell{rec.D}, Cell{rec.pell_x.get_str()}, Cell{rec.pell_y.get_str()},
                      Cell{std::int64_t{rec.unit_norm}}, Cell{rec.log_eps_fund}, Cell{rec.log_eps_plus}});
    emit_table("pell", t, "csv");
  }

  void zeta() const {
    const std::complex<double> s(cfg_.s_re, cfg_.s_im);
    const auto fams = families(cfg_.X);
    const std::optional<int> K = cfg_.K >= 0 ? std::optional<int>(cfg_.K) : std::nullopt;
    const auto lz = selberg::log_zeta(fams, s, cfg_.X, K);
    const auto ld = selberg::zeta_logderiv(fams, s, cfg_.X);
    json j;
    j["s"] = complex_json(s);
    j["X"] = cfg_.X;
    j["K"] = K ? *K : selberg::default_k_cutoff(fams, s);
    j["log_zeta"] = complex_json(lz.value);
    j["log_zeta_tail"] = report::round12(lz.tail_estimate);
    j["logderiv"] = complex_json(ld.value);
    j["logderiv_tail"] = report::round12(ld.tail_estimate);
    emit_object("zeta", j);
  }

  void mellin_check() const {
    const mellin::TestFunction psi = mellin::ReferenceTestFunction(cfg_.beta, cfg_.k, cfg_.T);
    Table t{{"s_re", "s_im", "closed_re", "closed_im", "quadrature_re", "quadrature_im", "rel_err"}, {}};
    for (double re : {0.0, 1.0}) {
      if (!(re < cfg_.beta)) continue;
      for (double im = -20.0; im <= 20.0; im += 5.0) {
        const std::complex<double> s(re, im);
        const auto closed = mellin::mellin(psi, s);
        const auto quad = mellin::mellin_quadrature(psi, s);
        t.rows.push_back({Cell{re}, Cell{im}, Cell{closed.real()}, Cell{closed.imag()}, Cell{quad.real()},
                          Cell{quad.imag()}, Cell{std::abs(quad - closed) / std::abs(closed)}});
      }
    }
    emit_table("mellin-check", t, "csv");
  }

  void verify() const {
    const mellin::TestFunction psi = mellin::ReferenceTestFunction(cfg_.beta, cfg_.k, cfg_.T);
    const auto fams = families(cfg_.X);
    const double geometric = lefschetz::geometric_side(psi, fams, cfg_.X);
    const auto contour = lefschetz::contour_side(psi, cfg_.C, cfg_.H, fams, cfg_.X);
    std::vector<selberg::ZeroDatum> zeros;
    if (!cfg_.zeros.empty()) {
      std::ifstream in(cfg_.zeros);
      if (!in) throw precondition_error("cannot open zero data file " + cfg_.zeros);
      zeros = selberg::load_zero_data(in);
    } else {
      std::istringstream none;
      zeros = selberg::load_zero_data(none);
    }
    const double residue = lefschetz::residue_side(psi, zeros);
    // omitted geometric terms ~ int_X^inf psi(x) dx (class density ~ dx)
    const auto tail_integrand = [&](double u) { return std::exp(u) * psi(std::exp(u)); };
    const double geometric_tail =
        quadrature::integrate<double>(tail_integrand, std::log(cfg_.X), std::log(cfg_.X) + 60.0 / (cfg_.beta - 1.0),
                                      1e-10, 16)
            .value;
    json j;
    j["psi_params"] = {{"beta", cfg_.beta}, {"k", cfg_.k}, {"T", cfg_.T}};
    j["C"] = cfg_.C;
    j["H"] = report::round12(contour.height);
    j["X"] = cfg_.X;
    j["geometric"] = report::round12(geometric);
    j["contour"] = report::round12(contour.value);
    j["residue_partial"] = report::round12(residue);
    j["rel_err_geom_contour"] = report::round12(std::abs(contour.value - geometric) / std::abs(geometric));
    j["tail_estimates"] = {{"geometric", report::round12(geometric_tail)},
                           {"logderiv_on_line", report::round12(std::pow(cfg_.X, 1.0 - cfg_.C) / (cfg_.C - 1.0))}};
    emit_object("verify", j);
  }

  void pgt() const {
    if (cfg_.decades < 1) throw precondition_error("--decades must be >= 1");
    const auto fams = families(cfg_.xmax);
    Table t{{"X", "psi", "ratio"}, {}};
    for (int i = cfg_.decades - 1; i >= 0; --i) {
      const double X = cfg_.xmax / std::pow(10.0, i);
      const double psi = lefschetz::psi_counting(fams, X);
      t.rows.push_back({Cell{X}, Cell{psi}, Cell{psi / X}});
    }
    emit_table("pgt", t, "csv");
  }

  void classsum() const {
    const double via_records = lefschetz::class_number_form(cfg_.X);
    const double via_classes = lefschetz::psi_counting(families(cfg_.X), cfg_.X);
    Table t{{"X", "class_number_form", "psi_counting", "rel_diff"}, {}};
    t.rows.push_back({Cell{cfg_.X}, Cell{via_records}, Cell{via_classes},
                      Cell{std::abs(via_records - via_classes) / std::max(1e-300, std::abs(via_classes))}});
    emit_table("classsum", t, "csv");
  }

  void replab() const {
    using namespace psl2lab::replab;
    std::vector<AdmissibleRep> reps;
    for (double s : cfg_.s_values) reps.push_back(PrincipalSeries{s});
    for (int n = 1; n <= cfg_.nmax; ++n) {
      reps.push_back(FiniteDim{n});
      reps.push_back(DiscreteSeries{n, +1});
      reps.push_back(DiscreteSeries{n, -1});
    }
    json arr = json::array();
    for (const auto& rep : reps) {
      for (const auto& w : weyl_support(rep)) {
        arr.push_back({{"rep", describe(rep)},
                       {"lambda", complex_json(w.s)},
                       {"L", lefschetz_number(rep, w)}});
      }
    }
    emit_object("replab", arr);
  }

  void cache() const {
    const geodesics::SpectrumCache cache(cfg_.cache_dir);
    const auto fams = cache.families(cfg_.xmax, cfg_.overwrite);
    json j;
    j["cache_file"] = cache.find_covering(cfg_.xmax).string();
    j["families"] = fams.size();
    j["xmax"] = cfg_.xmax;
    emit_object("cache", j);
  }

 private:
  Config cfg_;
  std::ostream& out_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  cfg.cache_dir = geodesics::SpectrumCache::default_dir().string();

  CLI::App app{"psl2lab: geodesics, Selberg zeta and Lefschetz-formula checks for PSL2(Z)", "psl2lab"};
  app.require_subcommand(1, 1);
  app.set_help_all_flag("--help-all", "Expand all help");

  app.footer(kConventions);
  const auto add_common = [&](CLI::App* sub) {
    sub->footer(kConventions);
    sub->add_option("--cache-dir", cfg.cache_dir,
                    std::string("Spectrum cache directory (default: $") + geodesics::kCacheDirEnv +
                        ", else ./.psl2lab-cache)");
    sub->add_flag("--overwrite", cfg.overwrite, "Rebuild and replace cached spectra");
    sub->add_flag("--no-cache", cfg.no_cache, "Enumerate in memory; never read or write the cache");
    sub->add_option("--out", cfg.out_dir, "Also write the report into this directory");
    sub->add_option("--format", cfg.format, "Report format: csv or json");
  };
  const auto add_psi = [&](CLI::App* sub) {
    sub->add_option("--beta", cfg.beta, "Decay exponent of the reference test function")->capture_default_str();
    sub->add_option("--k", cfg.k, "Vanishing order at the support edge")->capture_default_str();
    sub->add_option("--T", cfg.T, "Support edge / scale")->capture_default_str();
  };

  auto* enumerate = app.add_subcommand("enumerate", "List hyperbolic classes with norm <= X");
  enumerate->add_option("--X", cfg.X, "Norm bound")->capture_default_str();
  add_common(enumerate);

  auto* classnum = app.add_subcommand("classnum", "Narrow and wide class numbers");
  classnum->add_option("--D", cfg.D, "Discriminant")->capture_default_str();
  classnum->add_option("--lo", cfg.lo, "Range start (with --hi)");
  classnum->add_option("--hi", cfg.hi, "Range end (with --lo)");
  add_common(classnum);

  auto* pell = app.add_subcommand("pell", "Fundamental solution of x^2 - D y^2 = 4 and units");
  pell->add_option("--D", cfg.D, "Discriminant")->capture_default_str();
  add_common(pell);

  auto* zeta = app.add_subcommand("zeta", "Truncated log Z(s) and Z'/Z(s), Re s > 1");
  zeta->add_option("--re", cfg.s_re, "Re s")->capture_default_str();
  zeta->add_option("--im", cfg.s_im, "Im s")->capture_default_str();
  zeta->add_option("--X", cfg.X, "Norm bound")->capture_default_str();
  zeta->add_option("--K", cfg.K, "k cutoff of the Euler product (default: automatic)");
  add_common(zeta);

  auto* mellin_check = app.add_subcommand("mellin-check", "Closed-form vs quadrature Mellin transforms");
  add_psi(mellin_check);
  add_common(mellin_check);

  auto* verify = app.add_subcommand("verify", "Geometric vs contour vs residue sides");
  add_psi(verify);
  verify->add_option("--C", cfg.C, "Contour abscissa, 1 < C < beta")->capture_default_str();
  verify->add_option("--H", cfg.H, "Truncation height (0: adaptive)")->capture_default_str();
  verify->add_option("--X", cfg.X, "Norm bound")->capture_default_str();
  verify->add_option("--zeros", cfg.zeros, "Zero/pole CSV re,im,order[,label]");
  add_common(verify);

  auto* pgt = app.add_subcommand("pgt", "Prime geodesic counting Psi(X)/X by decade");
  pgt->add_option("--xmax", cfg.xmax, "Largest X")->capture_default_str();
  pgt->add_option("--decades", cfg.decades, "Number of decades ending at xmax")->capture_default_str();
  add_common(pgt);

  auto* classsum = app.add_subcommand("classsum", "Psi(X) from class numbers and regulators");
  classsum->add_option("--X", cfg.X, "Norm bound")->capture_default_str();
  add_common(classsum);

  auto* replab = app.add_subcommand("replab", "Lefschetz numbers L_lambda(pi) as JSON");
  replab->add_option("--nmax", cfg.nmax, "Largest n for delta_{2n-1} and D_{2n}")->capture_default_str();
  replab->add_option("--s", cfg.s_values, "Principal series parameters (lambda = s rho)");
  add_common(replab);

  auto* cache = app.add_subcommand("cache", "Build the spectrum cache up to xmax");
  cache->add_option("--xmax", cfg.xmax, "Norm bound")->capture_default_str();
  add_common(cache);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  err << "# config " << to_json(cfg, command).dump() << '\n';

  Runner runner(cfg, out);
  try {
    if (command == "enumerate") runner.enumerate();
    else if (command == "classnum") runner.classnum();
    else if (command == "pell") runner.pell();
    else if (command == "zeta") runner.zeta();
    else if (command == "mellin-check") runner.mellin_check();
    else if (command == "verify") runner.verify();
    else if (command == "pgt") runner.pgt();
    else if (command == "classsum") runner.classsum();
    else if (command == "replab") runner.replab();
    else if (command == "cache") runner.cache();
  } catch (const precondition_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const parse_error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace psl2lab::cli
