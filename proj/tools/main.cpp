#include <CLI11.hpp>
#include <array>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "mptcf/bench.hpp"
#include "mptcf/io.hpp"
#include "mptcf/pipeline.hpp"
#include "mptcf/plots.hpp"
#include "mptcf/synth.hpp"

namespace {

using namespace mptcf;

constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct SimulateArgs {
  std::string out_dir = "data";
  SynthConfig synth;
  bool full_universe = false;
};

void cmd_simulate(const SimulateArgs& args) {
  SynthConfig cfg = args.synth;
  if (args.full_universe) {
    cfg.holdings_min = cfg.n_assets;
    cfg.holdings_max = cfg.n_assets;
  }
  const ReturnHistory market = generate_market(cfg);

  // Prices first; the users are then built on moments derived from exactly the
  // closes that land in the file, so a later pipeline run sees the same numbers.
  const long T = market.periods();
  const long n = market.size();
  Mat closes(T + 1, n);
  closes.row(0).setConstant(100.0);
  for (long t = 0; t < T; ++t)
    closes.row(t + 1) = closes.row(t).array() * (1.0 + market.returns.row(t).array());
  std::vector<Date> price_dates;
  price_dates.push_back(cfg.start_date);
  price_dates.insert(price_dates.end(), market.dates.begin(), market.dates.end());

  ReturnHistory as_ingested = market;
  for (long t = 0; t < T; ++t)
    as_ingested.returns.row(t) =
        closes.row(t + 1).array() / closes.row(t).array() - 1.0;

  const fs::path dir(args.out_dir);
  io::write_prices(dir / "prices.csv", price_dates, market.assets, closes);
  const MomentEstimates moments = compute_moments(as_ingested, cfg.decay);
  const SynthUsers users = generate_users(cfg, moments);
  io::write_snapshots(dir / "snapshots.csv", users.store);
  io::write_gammas(dir / "true_gammas.csv", users.store.user_ids(), users.true_gammas.values);
  std::cout << "simulate: " << n << " assets, " << users.store.user_ids().size() << " users, "
            << T << " return periods -> " << dir.string() << "\n";
}

void cmd_moments(const std::string& prices, const std::string& out_dir, const DecayConfig& decay) {
  const ReturnHistory history = io::load_prices(prices);
  const MomentEstimates m = compute_moments(history, decay);
  const fs::path dir(out_dir);
  io::write_lines(dir / "assets.txt", m.assets);
  io::write_vector(dir / "mu.mat", m.mu);
  io::write_matrix(dir / "sigma.mat", m.sigma);
  std::cout << "moments: " << m.size() << " assets, " << history.periods() << " periods -> "
            << dir.string() << "\n";
}

MomentEstimates load_moments(const fs::path& dir) {
  MomentEstimates m;
  m.assets = io::read_lines(dir / "assets.txt");
  m.mu = io::read_vector(dir / "mu.mat");
  m.sigma = io::read_matrix(dir / "sigma.mat");
  if (m.mu.size() != static_cast<long>(m.assets.size()) || m.sigma.rows() != m.mu.size() ||
      m.sigma.cols() != m.mu.size())
    throw DimensionMismatch("moment artifacts in " + dir.string() + " disagree in size");
  return m;
}

std::vector<double> make_log_grid(double lo, double hi, long points) {
  std::vector<double> grid;
  const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
  for (long i = 0; i < points; ++i)
    grid.push_back(std::exp(std::log(lo) + step * static_cast<double>(i)));
  grid.back() = hi;
  return grid;
}

void cmd_frontier(const std::string& in_dir, const std::string& out_dir, long points,
                  const GammaBounds& bounds, bool svg, int threads) {
  const MomentEstimates m = load_moments(in_dir);
  const EfficientFrontier ef =
      compute_frontier(m, make_log_grid(bounds.lo, bounds.hi, points), {}, threads);
  const fs::path dir(out_dir);
  io::write_frontier(dir / "frontier.csv", dir / "frontier_weights.mat", ef);
  if (svg) {
    std::vector<std::pair<double, double>> curve;
    for (const auto& p : ef.points) curve.emplace_back(p.risk, p.expected_return);
    plots::risk_return(dir / "frontier_points.csv", dir / "frontier.svg", curve, {});
  }
  std::cout << "frontier: " << ef.points.size() << " points -> " << dir.string() << "\n";
}

void cmd_gamma(const std::string& snapshots, const std::string& in_dir,
               const std::string& out_dir, long window_days, const GammaBounds& bounds) {
  const MomentEstimates m = load_moments(in_dir);
  const SnapshotStore store = io::load_snapshots(snapshots);
  if (store.empty()) throw InvalidInput("snapshot file has no records");
  const DateRange window = DateRange::trailing(store.last_date(), static_cast<int>(window_days));

  std::unordered_map<std::string, long> col;
  for (std::size_t j = 0; j < m.assets.size(); ++j) col.emplace(m.assets[j], static_cast<long>(j));
  std::unordered_map<std::string, std::map<Date, Vec>> per_user;
  for (const auto& rec : store.records()) {
    if (!window.contains(rec.date)) continue;
    const auto it = col.find(rec.asset_id);
    if (it == col.end()) continue;
    auto& days = per_user[rec.user_id];
    auto [day, inserted] = days.try_emplace(rec.date);
    if (inserted) day->second = Vec::Zero(m.size());
    day->second[it->second] += rec.market_value;
  }

  FrontierRiskCurve curve(m, bounds);
  Vec gammas(static_cast<long>(store.user_ids().size()));
  long fallbacks = 0, clamped = 0;
  for (std::size_t i = 0; i < store.user_ids().size(); ++i) {
    const auto it = per_user.find(store.user_ids()[i]);
    bool ok = false;
    if (it != per_user.end()) {
      std::vector<DailyHolding> days;
      for (const auto& [date, values] : it->second) days.push_back(DailyHolding{date, values});
      try {
        const GammaEstimate est = estimate_user_gamma(days, m, bounds, &curve);
        gammas[static_cast<long>(i)] = est.gamma;
        clamped += est.clamped_days;
        ok = true;
      } catch (const NoValidDays&) {
      }
    }
    if (!ok) {
      gammas[static_cast<long>(i)] = bounds.fallback;
      ++fallbacks;
    }
  }
  io::write_gammas(fs::path(out_dir) / "gammas.csv", store.user_ids(), gammas);
  std::cout << "gamma: " << store.user_ids().size() << " users (" << fallbacks
            << " fallback, " << clamped << " clamped days) -> " << out_dir << "\n";
}

void cmd_cf(const std::string& snapshots, const std::string& in_dir, const std::string& out_dir,
            long tr_days, long tw_days, int threads) {
  const auto universe = io::read_lines(fs::path(in_dir) / "assets.txt");
  const SnapshotStore store = io::load_snapshots(snapshots);
  if (store.empty()) throw InvalidInput("snapshot file has no records");
  const Date anchor = store.last_date();
  const BinaryHoldings r =
      build_R(store, DateRange::trailing(anchor, static_cast<int>(tr_days)), universe);
  const PortfolioMatrix w =
      build_W(store, DateRange::trailing(anchor, static_cast<int>(tw_days)), universe);
  const Mat cocounts = cocount(r);
  const TransitionMatrix c = transition(cocounts);
  const ScoreMatrix y_cf = cf_scores(w, c, threads);
  const fs::path dir(out_dir);
  io::write_lines(dir / "users.txt", store.user_ids());
  io::write_matrix(dir / "R.mat", r.values);
  io::write_matrix(dir / "W.mat", w.values);
  io::write_matrix(dir / "C_tilde.mat", cocounts);
  io::write_matrix(dir / "C.mat", c.values);
  io::write_matrix(dir / "Y_cf.mat", y_cf.values);
  std::cout << "cf: " << store.user_ids().size() << "x" << universe.size() << " -> "
            << dir.string() << "\n";
}

void cmd_score(const std::string& in_dir, const std::string& gammas_file,
               const std::string& out_dir, const std::string& method, double fallback,
               int threads) {
  const fs::path dir(in_dir);
  const MomentEstimates m = load_moments(dir);
  const auto users = io::read_lines(dir / "users.txt");
  PortfolioMatrix w{io::read_matrix(dir / "W.mat"), DateRange{}};
  if (w.values.rows() != static_cast<long>(users.size()))
    throw DimensionMismatch("W.mat rows do not match users.txt");

  std::unordered_map<std::string, double> from_file;
  for (const auto& [id, g] : io::read_gammas(gammas_file)) from_file[id] = g;
  Vec gammas(w.values.rows());
  for (std::size_t i = 0; i < users.size(); ++i) {
    const auto it = from_file.find(users[i]);
    gammas[static_cast<long>(i)] = it == from_file.end() ? fallback : it->second;
  }

  const ReplacementWeights wr = replacement_weights(w);
  const ScoreMatrix y = method == "naive"
                            ? score_naive(w, wr, GammaVector{gammas}, m, threads)
                            : score_vectorized(w, wr, GammaVector{gammas}, m, threads);
  io::write_matrix(fs::path(out_dir) / "Y_mpt.mat", y.values);
  std::cout << "score(" << method << "): " << y.users() << "x" << y.items() << " -> "
            << out_dir << "\n";
}

void cmd_recommend(const std::string& in_dir, const std::string& method, long k, long top,
                   bool mask_held, std::uint64_t seed, const std::string& out_file) {
  const fs::path dir(in_dir);
  const auto users = io::read_lines(dir / "users.txt");
  const auto assets = io::read_lines(dir / "assets.txt");
  const ScoreMatrix y_cf{io::read_matrix(dir / "Y_cf.mat"), ScoreKind::CF};
  const ScoreMatrix y_mpt{io::read_matrix(dir / "Y_mpt.mat"), ScoreKind::MPT};
  const Mat w = io::read_matrix(dir / "W.mat");

  const long n = static_cast<long>(assets.size());
  const long k_eff = std::min<long>(k, n);
  const long top_eff = std::min<long>(top, n);
  const ScoreMatrix* rank = nullptr;
  ScoreMatrix generated;
  if (method == "random") {
    generated = ScoreMatrix{random_score_values(y_cf.users(), y_cf.items(), seed), ScoreKind::CF};
    rank = &generated;
  } else if (method == "cf") {
    rank = &y_cf;
  } else if (method == "mpt") {
    rank = &y_mpt;
  } else if (method == "hybrid") {
    generated = hybrid_scores(y_cf, y_mpt, k_eff);
    rank = &generated;
  } else {
    throw InvalidInput("method must be cf|mpt|hybrid|random");
  }
  const auto lists = make_recommendations(*rank, y_mpt, y_cf, users, assets, top_eff, k_eff,
                                          mask_held ? &w : nullptr);
  const fs::path out = out_file.empty() ? dir / ("recommendations_" + method + ".csv")
                                        : fs::path(out_file);
  io::write_recommendations(out, lists);
  std::cout << "recommend(" << method << "): top-" << top_eff << " of k=" << k_eff << " -> "
            << out.string() << "\n";
}

void cmd_bench(const std::vector<long>& ms, const std::vector<long>& ns,
               const std::vector<std::string>& methods, std::uint64_t seed, int reps,
               const std::string& out_file) {
  const auto rows = run_scaling_bench(ms, ns, methods, seed, reps);
  std::ostringstream body;
  body << "m,n,method,seconds\n";
  for (const auto& r : rows)
    body << r.m << ',' << r.n << ',' << r.method << ',' << io::format_double(r.seconds) << '\n';
  if (out_file.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_file);
    if (!out) throw Error("cannot open for writing: " + out_file);
    out << body.str();
  }
}

std::vector<std::array<double, 4>> read_frontier_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path.string());
  std::vector<std::array<double, 4>> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<double, 4> row{};
    std::istringstream ls(line);
    std::string tok;
    for (auto& cell : row) {
      if (!std::getline(ls, tok, ',')) throw Error(path.string() + ": short frontier row");
      cell = std::strtod(tok.c_str(), nullptr);
    }
    rows.push_back(row);
  }
  return rows;
}

void cmd_plot(const std::string& in_dir, const std::string& out_dir, const std::string& user_id,
              const std::string& method, long top, const GammaBounds& bounds) {
  const fs::path dir(in_dir);
  const fs::path out = out_dir.empty() ? dir / "plots" : fs::path(out_dir);

  // Histogram of the estimated risk aversions (log bins).
  std::vector<double> gammas;
  std::vector<std::pair<std::string, double>> per_user;
  if (fs::exists(dir / "gammas.csv")) {
    per_user = io::read_gammas(dir / "gammas.csv");
    for (const auto& [id, g] : per_user) gammas.push_back(g);
  }
  plots::gamma_histogram(out / "gamma_hist.csv", out / "gamma_hist.svg", gammas, bounds.lo,
                         bounds.hi);

  // Movement of one user's portfolio in the risk-return plane.
  const auto frontier_rows = read_frontier_csv(dir / "frontier.csv");
  std::vector<std::pair<double, double>> curve;
  for (const auto& row : frontier_rows) curve.emplace_back(row[1], row[2]);
  std::vector<plots::Marker> markers;
  if (!per_user.empty()) {
    const MomentEstimates m = load_moments(dir);
    const auto users = io::read_lines(dir / "eval_users.txt");
    const auto all_users = io::read_lines(dir / "users.txt");
    const Mat w_all = io::read_matrix(dir / "W.mat");
    std::string chosen = user_id.empty() ? users.front() : user_id;
    long full_row = -1;
    for (std::size_t i = 0; i < all_users.size(); ++i)
      if (all_users[i] == chosen) full_row = static_cast<long>(i);
    if (full_row < 0) throw InvalidInput("user '" + chosen + "' not found in users.txt");
    double gamma_user = bounds.fallback;
    for (const auto& [id, g] : per_user)
      if (id == chosen) gamma_user = g;

    const Vec w = w_all.row(full_row).transpose();
    const double w_sum = w.sum();
    if (w_sum > 0.0) {
      const Vec wn = w / w_sum;
      markers.push_back(plots::Marker{"user", chosen,
                                      std::sqrt(std::max(0.0, wn.dot(m.sigma * wn))),
                                      m.mu.dot(wn)});
      const FrontierPoint best = optimal_portfolio(m, gamma_user);
      markers.push_back(plots::Marker{"optimal", "", best.risk, best.expected_return});

      // Post-addition positions for the user's top recommendations.
      PortfolioMatrix single{wn.transpose(), DateRange{}};
      const double wr = replacement_weights(single).values[0];
      std::ifstream recs(dir / ("recommendations_" + method + ".csv"));
      if (recs) {
        std::string line;
        std::getline(recs, line);
        long added = 0;
        while (std::getline(recs, line) && added < top) {
          std::istringstream ls(line);
          std::string uid, rank, asset;
          std::getline(ls, uid, ',');
          std::getline(ls, rank, ',');
          std::getline(ls, asset, ',');
          if (uid != chosen) continue;
          long j = -1;
          for (std::size_t a = 0; a < m.assets.size(); ++a)
            if (m.assets[a] == asset) j = static_cast<long>(a);
          if (j < 0) continue;
          markers.push_back(plots::Marker{"stock", asset, std::sqrt(m.sigma(j, j)), m.mu[j]});
          Vec v = (1.0 - wr) * wn;
          v[j] += wr;
          markers.push_back(plots::Marker{"post_addition", asset + "+",
                                          std::sqrt(std::max(0.0, v.dot(m.sigma * v))),
                                          m.mu.dot(v)});
          ++added;
        }
      }
    }
  }
  plots::risk_return(out / "risk_return.csv", out / "risk_return.svg", curve, markers);
  std::cout << "plot: " << gammas.size() << " gammas, " << markers.size() << " markers -> "
            << out.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid mean-variance / collaborative-filtering stock recommender"};
  app.require_subcommand(1);

  // simulate
  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic market and user base");
  simulate->add_option("--out-dir", sim.out_dir);
  simulate->add_option("--seed", sim.synth.seed);
  simulate->add_option("--assets", sim.synth.n_assets);
  simulate->add_option("--users", sim.synth.n_users);
  simulate->add_option("--days", sim.synth.n_days);
  simulate->add_option("--snapshot-days", sim.synth.n_snapshot_days);
  simulate->add_option("--factors", sim.synth.n_factors);
  simulate->add_option("--noise", sim.synth.noise_scale);
  simulate->add_option("--popularity", sim.synth.popularity_exponent);
  simulate->add_option("--holdings-min", sim.synth.holdings_min);
  simulate->add_option("--holdings-max", sim.synth.holdings_max);
  simulate->add_option("--gamma-median", sim.synth.gamma_law.median);
  simulate->add_option("--gamma-log-std", sim.synth.gamma_law.log_std);
  simulate->add_option("--half-life", sim.synth.decay.half_life);
  simulate->add_option("--ridge", sim.synth.decay.ridge_epsilon);
  simulate->add_flag("--full-universe", sim.full_universe,
                     "every user holds the whole universe (round-trip validation)");

  // moments
  std::string prices_file, in_dir = "out", out_dir = "out";
  DecayConfig decay;
  auto* moments = app.add_subcommand("moments", "Estimate exponentially weighted moments");
  moments->add_option("--prices", prices_file)->required();
  moments->add_option("--out-dir", out_dir);
  moments->add_option("--half-life", decay.half_life);
  moments->add_option("--ridge", decay.ridge_epsilon);

  // frontier
  long frontier_points = 50;
  GammaBounds bounds;
  bool frontier_svg = false;
  int threads = 1;
  auto* frontier = app.add_subcommand("frontier", "Trace the efficient frontier");
  frontier->add_option("--in-dir", in_dir);
  frontier->add_option("--out-dir", out_dir);
  frontier->add_option("--points", frontier_points)->check(CLI::Range(2L, 100000L));
  frontier->add_option("--gamma-min", bounds.lo);
  frontier->add_option("--gamma-max", bounds.hi);
  frontier->add_option("--threads", threads);
  frontier->add_flag("--svg", frontier_svg);

  // gamma
  std::string snapshots_file;
  long gamma_window = 30;
  auto* gamma = app.add_subcommand("gamma", "Estimate per-user risk aversion");
  gamma->add_option("--snapshots", snapshots_file)->required();
  gamma->add_option("--in-dir", in_dir);
  gamma->add_option("--out-dir", out_dir);
  gamma->add_option("--window-days", gamma_window);
  gamma->add_option("--gamma-min", bounds.lo);
  gamma->add_option("--gamma-max", bounds.hi);
  gamma->add_option("--gamma-default", bounds.fallback);

  // cf
  long tr_days = 183, tw_days = 1;
  auto* cf = app.add_subcommand("cf", "Build holdings matrices and CF scores");
  cf->add_option("--snapshots", snapshots_file)->required();
  cf->add_option("--in-dir", in_dir);
  cf->add_option("--out-dir", out_dir);
  cf->add_option("--tr-days", tr_days);
  cf->add_option("--tw-days", tw_days);
  cf->add_option("--threads", threads);

  // score
  std::string gammas_file, score_method = "vectorized";
  auto* score = app.add_subcommand("score", "Compute the MPT scoring matrix");
  score->add_option("--in-dir", in_dir);
  score->add_option("--out-dir", out_dir);
  score->add_option("--gammas", gammas_file)->required();
  score->add_option("--method", score_method)->check(CLI::IsMember({"naive", "vectorized"}));
  score->add_option("--gamma-default", bounds.fallback);
  score->add_option("--threads", threads);

  // recommend
  std::string rec_method = "hybrid", rec_out;
  long cutoff_k = 20, top_n = 5;
  bool mask_held = true;
  std::uint64_t seed = 42;
  auto* recommend = app.add_subcommand("recommend", "Emit ranked recommendation lists");
  recommend->add_option("--in-dir", in_dir);
  recommend->add_option("--method", rec_method)
      ->check(CLI::IsMember({"cf", "mpt", "hybrid", "random"}));
  recommend->add_option("--k", cutoff_k);
  recommend->add_option("--top-n", top_n);
  recommend->add_flag("--mask-held,!--no-mask-held", mask_held);
  recommend->add_option("--seed", seed);
  recommend->add_option("--out", rec_out);

  // bench
  std::vector<long> bench_ms{200}, bench_ns{250, 500};
  std::vector<std::string> bench_methods{"vectorized", "naive"};
  int bench_reps = 3;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "Scoring scalability benchmark");
  bench->add_option("--m", bench_ms);
  bench->add_option("--n", bench_ns);
  bench->add_option("--methods", bench_methods);
  bench->add_option("--reps", bench_reps);
  bench->add_option("--seed", seed);
  bench->add_option("--out", bench_out);

  // plot
  std::string plot_user, plot_method = "hybrid", plot_out;
  long plot_top = 2;
  auto* plot = app.add_subcommand("plot", "Emit gamma histogram and risk-return plots");
  plot->add_option("--in-dir", in_dir);
  plot->add_option("--out-dir", plot_out);
  plot->add_option("--user", plot_user);
  plot->add_option("--method", plot_method);
  plot->add_option("--top", plot_top);
  plot->add_option("--gamma-min", bounds.lo);
  plot->add_option("--gamma-max", bounds.hi);

  // pipeline
  std::string config_file;
  bool seed_set = false, out_set = false, threads_set = false;
  auto* pipeline = app.add_subcommand("pipeline", "Run the full recommendation pipeline");
  pipeline->add_option("--config", config_file)->required();
  pipeline->add_option("--seed", seed)->trigger_on_parse()->each([&](const std::string&) {
    seed_set = true;
  });
  pipeline->add_option("--out-dir", out_dir)->trigger_on_parse()->each([&](const std::string&) {
    out_set = true;
  });
  pipeline->add_option("--threads", threads)->trigger_on_parse()->each([&](const std::string&) {
    threads_set = true;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (simulate->parsed()) {
      cmd_simulate(sim);
    } else if (moments->parsed()) {
      cmd_moments(prices_file, out_dir, decay);
    } else if (frontier->parsed()) {
      cmd_frontier(in_dir, out_dir, frontier_points, bounds, frontier_svg, threads);
    } else if (gamma->parsed()) {
      cmd_gamma(snapshots_file, in_dir, out_dir, gamma_window, bounds);
    } else if (cf->parsed()) {
      cmd_cf(snapshots_file, in_dir, out_dir, tr_days, tw_days, threads);
    } else if (score->parsed()) {
      cmd_score(in_dir, gammas_file, out_dir, score_method, bounds.fallback, threads);
    } else if (recommend->parsed()) {
      cmd_recommend(in_dir, rec_method, cutoff_k, top_n, mask_held, seed, rec_out);
    } else if (bench->parsed()) {
      cmd_bench(bench_ms, bench_ns, bench_methods, seed, bench_reps, bench_out);
    } else if (plot->parsed()) {
      cmd_plot(in_dir, plot_out, plot_user, plot_method, plot_top, bounds);
    } else if (pipeline->parsed()) {
      PipelineConfig cfg = PipelineConfig::load(config_file);
      if (seed_set) cfg.seed = seed;
      if (out_set) cfg.out_dir = out_dir;
      if (threads_set) cfg.threads = threads;
      const PipelineResult result = run_pipeline(cfg);
      std::cout << "pipeline: " << result.n_assets << " assets, " << result.n_users
                << " users (" << result.n_eval_users << " scored) -> "
                << cfg.out_dir.string() << "\n";
    }
  } catch (const SolverDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InvalidCutoff& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const UniverseMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
