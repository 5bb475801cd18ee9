#include "commands.hpp"

#include <optional>
#include <sstream>

#include "chaoscode/correlation.hpp"
#include "chaoscode/dsss.hpp"
#include "chaoscode/dynamics.hpp"
#include "chaoscode/errors.hpp"
#include "chaoscode/random.hpp"
#include "chaoscode/seqgen.hpp"
#include "chaoscode/sequence_io.hpp"
#include "cli.hpp"
#include "output.hpp"

namespace chaoscode::cli {

namespace {

std::string meta_value(const ojson& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// CSV with `#` metadata lines ahead of the mandatory header row.
class Csv {
 public:
  Csv(std::string_view subcommand, const ojson& params) {
    os_ << "# tool=chaoscode " << version() << "\n# subcommand=" << subcommand << "\n";
    for (const auto& [k, v] : params.items()) meta(k, meta_value(v));
  }
  void meta(std::string_view key, std::string_view value) {
    os_ << "# " << key << "=" << value << "\n";
  }
  void header(std::initializer_list<std::string_view> cols) { line(cols); }
  void row(std::initializer_list<std::string> cols) { line(cols); }
  std::string str() const { return os_.str(); }

 private:
  template <class C>
  void line(const C& cols) {
    bool first = true;
    for (const auto& c : cols) {
      if (!first) os_ << ',';
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }
  std::ostringstream os_;
};

CLI::Option* add_count(CLI::App* app, const std::string& name, std::size_t& target,
                       const std::string& desc) {
  return app
      ->add_option_function<std::string>(
          name, [&target, name](const std::string& s) { target = parse_count(s, name); }, desc)
      ->default_str(std::to_string(target));
}

Command make_command(CLI::App& parent, const std::string& name, const std::string& desc) {
  Command c;
  c.app = parent.add_subcommand(name, desc);
  c.out_path = std::make_shared<std::string>();
  c.app->add_option("--out", *c.out_path, "Output file (default: stdout); also writes <out>.manifest.json");
  return c;
}

// x0 from --x0 when given, else drawn from --seed.
struct SeedOrX0 {
  std::optional<double> x0;
  std::uint64_t seed = 0;

  void add(CLI::App* app) {
    app->add_option("--x0", x0, "Initial condition in (0, 1); drawn from --seed if omitted");
    app->add_option("--seed", seed, "Generator seed")->capture_default_str();
  }
  double resolve(Emission& e) const {
    if (x0) return *x0;
    e.seeds["seed"] = seed;
    Rng rng(seed);
    return random_x0(rng);
  }
};

std::vector<double> two_mu(const std::vector<double>& v) {
  if (v.size() != 2) throw DomainError("--mu takes START END");
  return v;
}

// ---------------------------------------------------------------------------

Command bifurcation(CLI::App& parent) {
  struct Opts {
    std::vector<double> mu;
    double step = 1e-3;
    std::size_t transient = kDefaultTransient;
    std::size_t keep = kDefaultKeep;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "bifurcation", "Post-transient orbit samples across a mu grid");
  c.app->add_option("--mu", o->mu, "START END")->expected(2)->required();
  c.app->add_option("--step", o->step, "Grid step")->capture_default_str();
  add_count(c.app, "--transient", o->transient, "Discarded iterations per point");
  add_count(c.app, "--keep", o->keep, "Samples kept per point");
  c.app->add_option("--seed", o->seed, "Seed for per-point x0")->capture_default_str();
  c.app->add_option("--jobs", o->jobs, "Worker threads (0 = all cores)")->capture_default_str();
  c.run = [o] {
    const auto mu = two_mu(o->mu);
    Emission e;
    e.params = {{"mu_start", mu[0]}, {"mu_end", mu[1]}, {"step", o->step},
                {"n_transient", o->transient}, {"n_keep", o->keep}};
    e.seeds["seed"] = o->seed;
    const auto d = bifurcation_diagram(mu[0], mu[1], o->step, o->transient, o->keep, o->seed,
                                       o->jobs);
    Csv csv("bifurcation", e.params);
    csv.meta("seed", std::to_string(o->seed));
    csv.header({"mu", "x"});
    for (const auto& col : d.columns) {
      const auto m = fmt(col.mu);
      for (double x : col.samples) csv.row({m, fmt(x)});
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

Command lyapunov_cmd(CLI::App& parent) {
  struct Opts {
    std::vector<double> mu;
    double step = 1e-4;
    std::size_t transient = kDefaultTransient;
    std::size_t samples = 1000;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "lyapunov", "Lyapunov exponent at one mu or across a grid");
  c.app->add_option("--mu", o->mu, "START END (equal for a single point)")->expected(2)->required();
  c.app->add_option("--step", o->step, "Grid step")->capture_default_str();
  add_count(c.app, "--transient", o->transient, "Discarded iterations");
  add_count(c.app, "--samples", o->samples, "Averaged terms per point (accepts 1e5)");
  c.app->add_option("--seed", o->seed, "Seed for per-point x0")->capture_default_str();
  c.app->add_option("--jobs", o->jobs, "Worker threads (0 = all cores)")->capture_default_str();
  c.run = [o] {
    const auto mu = two_mu(o->mu);
    Emission e;
    e.params = {{"mu_start", mu[0]}, {"mu_end", mu[1]}, {"step", o->step},
                {"n_transient", o->transient}, {"n_samples", o->samples}};
    e.seeds["seed"] = o->seed;
    const auto est = lyapunov_sweep(mu[0], mu[1], o->step, o->transient, o->samples, o->seed,
                                    o->jobs);
    Csv csv("lyapunov", e.params);
    csv.meta("seed", std::to_string(o->seed));
    csv.header({"mu", "x0", "lambda", "n_samples", "n_transient", "clamped_terms"});
    for (const auto& r : est) {
      csv.row({fmt(r.mu), fmt(r.x0), fmt(r.lambda), std::to_string(r.n_samples),
               std::to_string(r.n_transient), std::to_string(r.clamped_terms)});
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

Command cascade(CLI::App& parent) {
  struct Opts {
    std::size_t K = 4;
    double tol = 1e-4;
    CascadeOptions cascade;
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "cascade", "Period-doubling onsets and Feigenbaum ratios");
  add_count(c.app, "-K,--levels", o->K, "Number of onsets mu_1..mu_K (2..7)");
  c.app->add_option("--tol", o->tol, "Bracket width per onset (>= 1e-6)")->capture_default_str();
  c.app->add_option("--x0", o->cascade.x0, "Initial condition")->capture_default_str();
  add_count(c.app, "--transient", o->cascade.n_transient, "Iterations before classifying");
  c.app->add_option("--period-tol", o->cascade.period_tol, "Cycle detection tolerance")
      ->capture_default_str();
  c.run = [o] {
    Emission e;
    e.params = {{"K", o->K}, {"tol", o->tol}, {"x0", o->cascade.x0},
                {"n_transient", o->cascade.n_transient}, {"period_tol", o->cascade.period_tol},
                {"mu_lo", o->cascade.mu_lo}, {"mu_hi", o->cascade.mu_hi}};
    const auto est = find_cascade(o->K, o->tol, o->cascade);
    Csv csv("cascade", e.params);
    csv.header({"k", "mu_k", "delta_k", "multiplier"});
    for (std::size_t i = 0; i < est.mu_k.size(); ++i) {
      const std::size_t k = i + 1;
      // delta_n[j] is delta_{j+2}.
      const std::string delta = k >= 2 && k - 2 < est.delta_n.size() ? fmt(est.delta_n[k - 2]) : "";
      csv.row({std::to_string(k), fmt(est.mu_k[i]), delta, fmt(est.multipliers[i])});
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

Command density(CLI::App& parent) {
  struct Opts {
    double mu = 4.0;
    SeedOrX0 start;
    std::size_t n = 10000;
    std::size_t bins = 50;
    std::size_t transient = kDefaultTransient;
    double alpha = 0.01;
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "density", "Orbit histogram against the arcsine law");
  c.app->add_option("--mu", o->mu, "Control parameter")->capture_default_str();
  o->start.add(c.app);
  add_count(c.app, "--n", o->n, "Orbit samples");
  add_count(c.app, "--bins", o->bins, "Histogram bins (>= 10)");
  add_count(c.app, "--transient", o->transient, "Discarded iterations");
  c.app->add_option("--alpha", o->alpha, "Chi-square significance level")->capture_default_str();
  c.run = [o] {
    Emission e;
    const double x0 = o->start.resolve(e);
    e.params = {{"mu", o->mu}, {"x0", x0}, {"n", o->n}, {"bins", o->bins},
                {"n_transient", o->transient}, {"alpha", o->alpha}};
    if (o->n == 0) throw DomainError("--n must be >= 1");
    const auto orb = orbit(MapParams::make(o->mu, x0), o->transient, o->n);
    const auto h = invariant_density(orb, o->bins);
    const auto chi = chi_square_fit(h, o->alpha);
    Csv csv("density", e.params);
    csv.meta("absorbed", orb.absorbed ? "true" : "false");
    csv.meta("chi_square", fmt(chi.statistic));
    csv.meta("dof", std::to_string(chi.dof));
    csv.meta("p_value", fmt(chi.p_value));
    csv.meta("critical_value", fmt(chi.critical_value));
    csv.meta("passes", chi.passes() ? "true" : "false");
    csv.header({"bin_lo", "bin_hi", "count", "empirical_mass", "analytic_mass"});
    const auto total = static_cast<double>(h.sample_size());
    for (std::size_t i = 0; i < h.n_bins(); ++i) {
      csv.row({fmt(h.bin_edges[i]), fmt(h.bin_edges[i + 1]), std::to_string(h.counts[i]),
               fmt(static_cast<double>(h.counts[i]) / total), fmt(h.analytic_mass[i])});
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

Command phase(CLI::App& parent) {
  struct Opts {
    double mu = 4.0;
    SeedOrX0 start;
    std::size_t n = 1000;
    std::size_t dim = 2;
    std::size_t transient = kDefaultTransient;
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "phase", "Delay-embedding tuples (x_n, x_n+1[, x_n+2])");
  c.app->add_option("--mu", o->mu, "Control parameter")->capture_default_str();
  o->start.add(c.app);
  add_count(c.app, "--n", o->n, "Orbit states");
  add_count(c.app, "--dim", o->dim, "Tuple size, 2 or 3");
  add_count(c.app, "--transient", o->transient, "Discarded iterations");
  c.run = [o] {
    Emission e;
    const double x0 = o->start.resolve(e);
    e.params = {{"mu", o->mu}, {"x0", x0}, {"n", o->n}, {"dim", o->dim},
                {"n_transient", o->transient}};
    if (o->dim != 2 && o->dim != 3) throw DomainError("--dim must be 2 or 3");
    if (o->n < o->dim) throw DomainError("--n must be >= --dim");
    const auto orb = orbit(MapParams::make(o->mu, x0), o->transient, o->n);
    Csv csv("phase", e.params);
    if (o->dim == 2) {
      csv.header({"x_n", "x_n1"});
    } else {
      csv.header({"x_n", "x_n1", "x_n2"});
    }
    const auto& s = orb.states;
    for (std::size_t k = 0; k + o->dim <= s.size(); ++k) {
      if (o->dim == 2) {
        csv.row({fmt(s[k]), fmt(s[k + 1])});
      } else {
        csv.row({fmt(s[k]), fmt(s[k + 1]), fmt(s[k + 2])});
      }
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

Command seq(CLI::App& parent) {
  struct Opts {
    std::string family = "chaotic";
    double mu = 4.0;
    SeedOrX0 start;
    std::size_t n = 1000;
    std::string rule = "mean";
    std::size_t transient = kDefaultTransient;
    std::size_t m = 5;
    std::vector<unsigned> taps;
    std::string state;
    std::size_t shift = 0;
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "seq", "Generate a binary spreading code");
  c.app->add_option("--family", o->family, "chaotic | mseq | gold")
      ->check(CLI::IsMember({"chaotic", "mseq", "gold"}))
      ->capture_default_str();
  c.app->add_option("--mu", o->mu, "chaotic: control parameter")->capture_default_str();
  o->start.add(c.app);
  add_count(c.app, "--n", o->n, "chaotic: sequence length");
  c.app->add_option("--rule", o->rule, "chaotic: threshold rule, fixed | mean")
      ->capture_default_str();
  add_count(c.app, "--transient", o->transient, "chaotic: discarded iterations");
  add_count(c.app, "--m", o->m, "mseq/gold: register length");
  c.app->add_option("--taps", o->taps, "mseq: polynomial exponents, highest first");
  c.app->add_option("--state", o->state, "mseq: initial register as a bit string (a_0 first)");
  add_count(c.app, "--shift", o->shift, "gold: relative shift of the second m-sequence");
  c.run = [o] {
    Emission e;
    BinarySequence s;
    if (o->family == "chaotic") {
      const double x0 = o->start.resolve(e);
      const auto rule = parse_rule(o->rule);
      e.params = {{"family", "chaotic"}, {"mu", o->mu}, {"x0", x0}, {"n", o->n},
                  {"rule", o->rule}, {"n_transient", o->transient}};
      if (o->n == 0) throw DomainError("--n must be >= 1");
      s = chaotic_sequence(MapParams::make(o->mu, x0), o->transient, o->n, rule);
    } else if (o->family == "mseq") {
      LfsrConfig cfg = o->taps.empty() ? primitive_lfsr(static_cast<unsigned>(o->m))
                                       : LfsrConfig{o->taps, 1u};
      if (!o->state.empty()) cfg.state = parse_lfsr_state(o->state);
      s = m_sequence(cfg);
      e.params = {{"family", "mseq"}, {"taps", cfg.taps}, {"state", lfsr_state_text(cfg)}};
    } else {
      if (o->m != 5) throw DomainError("gold: only the m = 5 preferred pair is shipped");
      const auto pair = preferred_pair_m5();
      s = gold_sequence(m_sequence(pair.a), m_sequence(pair.b), o->shift);
      e.params = {{"family", "gold"}, {"pair_id", pair.id}, {"shift", o->shift}};
    }
    e.body = format_sequence(s);
    return e;
  };
  return c;
}

Command corr(CLI::App& parent) {
  struct Opts {
    std::vector<std::string> in;
    bool autocorr = false;
    std::string cross;
    bool summary = false;
    std::string mode = "periodic";
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "corr", "Auto/cross-correlation of sequence files");
  c.app->add_option("--in", o->in, "Sequence file(s)")->required()->check(CLI::ExistingFile);
  auto* a = c.app->add_flag("--auto", o->autocorr, "Autocorrelation of the single --in file");
  auto* x = c.app->add_option("--cross", o->cross, "Cross-correlate --in against this file")
                ->check(CLI::ExistingFile);
  auto* s = c.app->add_flag("--summary", o->summary, "JSON summary over every --in file");
  a->excludes(x)->excludes(s);
  x->excludes(s);
  c.app->add_option("--mode", o->mode, "periodic | aperiodic")->capture_default_str();
  c.input_flags = {"--in", "--cross"};
  c.run = [o] {
    Emission e;
    const auto mode = parse_mode(o->mode);
    auto load = [&e](const std::string& path) {
      e.inputs.emplace_back(path);
      return parse_sequence(read_file(path));
    };
    std::vector<BinarySequence> seqs;
    for (const auto& p : o->in) seqs.push_back(load(p));

    if (o->summary) {
      e.params = {{"kind", "summary"}, {"mode", o->mode}, {"files", seqs.size()}};
      e.body = summary_to_json(correlation_summary(seqs, mode)) + "\n";
      return e;
    }
    if (seqs.size() != 1) throw DomainError("--auto/--cross take exactly one --in file");
    CorrelationSeries r;
    if (!o->cross.empty()) {
      e.params = {{"kind", "cross"}, {"mode", o->mode}, {"length", seqs[0].size()}};
      r = crosscorrelation(seqs[0], load(o->cross), mode);
    } else {
      e.params = {{"kind", "auto"}, {"mode", o->mode}, {"length", seqs[0].size()}};
      r = autocorrelation(seqs[0], mode);
    }
    Csv csv("corr", e.params);
    csv.header({"lag", "value"});
    for (std::size_t i = 0; i < r.lags.size(); ++i) {
      csv.row({std::to_string(r.lags[i]), fmt(r.values[i])});
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

Command ber(CLI::App& parent) {
  struct Opts {
    std::string config;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
    std::string format = "json";
  };
  auto o = std::make_shared<Opts>();
  auto c = make_command(parent, "ber", "Monte-Carlo DS-SS bit error rate from a link config");
  c.app->add_option("--config", o->config, "Link configuration JSON")
      ->required()
      ->check(CLI::ExistingFile);
  c.app->add_option("--seed", o->seed, "Override the config's noise_seed");
  c.app->add_option("--jobs", o->jobs, "Worker threads (0 = all cores)")->capture_default_str();
  c.app->add_option("--format", o->format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  c.input_flags = {"--config"};
  c.run = [o] {
    Emission e;
    e.inputs.emplace_back(o->config);
    auto cfg = parse_link_config(read_file(o->config));
    if (o->seed) cfg.noise_seed = *o->seed;
    e.params = {{"spreading_factor", cfg.spreading_factor},
                {"users", cfg.code_family.size()},
                {"n_bits", cfg.n_bits},
                {"noise_generator", std::string(kNoiseGenerator)}};
    e.seeds["noise_seed"] = cfg.noise_seed;
    const auto pts = ber_curve(cfg, o->jobs);
    if (o->format == "json") {
      e.body = ber_points_to_json(pts) + "\n";
      return e;
    }
    Csv csv("ber", e.params);
    csv.meta("noise_seed", std::to_string(cfg.noise_seed));
    csv.header({"ebn0_db", "errors", "bits", "ber"});
    for (const auto& p : pts) {
      csv.row({fmt(p.ebn0_db), std::to_string(p.errors), std::to_string(p.bits), fmt(p.ber)});
    }
    e.body = csv.str();
    return e;
  };
  return c;
}

}  // namespace

std::vector<Command> register_commands(CLI::App& app) {
  std::vector<Command> out;
  out.push_back(bifurcation(app));
  out.push_back(lyapunov_cmd(app));
  out.push_back(cascade(app));
  out.push_back(density(app));
  out.push_back(phase(app));
  out.push_back(seq(app));
  out.push_back(corr(app));
  out.push_back(ber(app));
  return out;
}

}  // namespace chaoscode::cli
