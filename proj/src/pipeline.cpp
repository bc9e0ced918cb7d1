#include "mptcf/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "mptcf/io.hpp"
#include "mptcf/rng.hpp"

namespace mptcf {

using nlohmann::json;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

WindowSpec window_from_json(const json& j) {
  WindowSpec w;
  if (j.contains("days")) w.trailing_days = j.at("days").get<long>();
  if (j.contains("from") || j.contains("to")) {
    w.range = DateRange(Date::parse(j.at("from").get<std::string>()),
                        Date::parse(j.at("to").get<std::string>()));
  }
  return w;
}

json window_to_json(const WindowSpec& w) {
  json j;
  if (w.range) {
    j["from"] = w.range->from.to_string();
    j["to"] = w.range->to.to_string();
  } else {
    j["days"] = w.trailing_days;
  }
  return j;
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const std::string& context) {
  for (const auto& [key, value] : j.items())
    if (!known.count(key))
      throw InvalidInput("unknown config key '" + key + "' in " + context);
}

std::vector<double> log_grid(double lo, double hi, long points) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double step = (std::log(hi) - std::log(lo)) / static_cast<double>(points - 1);
  for (long i = 0; i < points; ++i)
    grid.push_back(std::exp(std::log(lo) + step * static_cast<double>(i)));
  grid.back() = hi;
  return grid;
}

}  // namespace

void PipelineConfig::validate() const {
  decay.validate();
  gamma_bounds.validate();
  if (cutoff_k < 1) throw InvalidInput("k must be >= 1");
  if (top_n < 1) throw InvalidInput("top_n must be >= 1");
  if (frontier_points < 2) throw InvalidInput("frontier.points must be >= 2");
  if (threads < 1) throw InvalidInput("threads must be >= 1");
  if (scoring_method != "vectorized" && scoring_method != "naive")
    throw InvalidInput("scoring_method must be 'vectorized' or 'naive'");
  if (methods.empty()) throw InvalidInput("methods list is empty");
  for (const auto& m : methods)
    if (m != "random" && m != "mpt" && m != "cf" && m != "hybrid")
      throw InvalidInput("unknown method '" + m + "'");
  if (gamma_source.mode == GammaSourceConfig::Mode::Fixed && !(gamma_source.value > 0.0))
    throw InvalidInput("fixed gamma must be > 0");
}

PipelineConfig PipelineConfig::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), static_cast<long>(e.byte), e.what());
  }

  reject_unknown_keys(j, {"prices", "snapshots", "out_dir", "seed", "threads", "decay",
                          "gamma_bounds", "windows", "k", "top_n", "mask_held", "methods",
                          "gamma_source", "eval_users", "frontier", "scoring_method"},
                      path.string());

  PipelineConfig cfg;
  cfg.prices = j.at("prices").get<std::string>();
  cfg.snapshots = j.at("snapshots").get<std::string>();
  if (j.contains("out_dir")) cfg.out_dir = j.at("out_dir").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
  if (j.contains("decay")) {
    const auto& d = j.at("decay");
    reject_unknown_keys(d, {"half_life", "ridge_epsilon"}, "decay");
    if (d.contains("half_life")) cfg.decay.half_life = d.at("half_life").get<double>();
    if (d.contains("ridge_epsilon")) cfg.decay.ridge_epsilon = d.at("ridge_epsilon").get<double>();
  }
  if (j.contains("gamma_bounds")) {
    const auto& b = j.at("gamma_bounds");
    reject_unknown_keys(b, {"lo", "hi", "fallback"}, "gamma_bounds");
    if (b.contains("lo")) cfg.gamma_bounds.lo = b.at("lo").get<double>();
    if (b.contains("hi")) cfg.gamma_bounds.hi = b.at("hi").get<double>();
    if (b.contains("fallback")) cfg.gamma_bounds.fallback = b.at("fallback").get<double>();
  }
  if (j.contains("windows")) {
    const auto& w = j.at("windows");
    reject_unknown_keys(w, {"r", "w", "gamma"}, "windows");
    if (w.contains("r")) cfg.window_r = window_from_json(w.at("r"));
    if (w.contains("w")) cfg.window_w = window_from_json(w.at("w"));
    if (w.contains("gamma")) cfg.window_gamma = window_from_json(w.at("gamma"));
  }
  if (j.contains("k")) cfg.cutoff_k = j.at("k").get<long>();
  if (j.contains("top_n")) cfg.top_n = j.at("top_n").get<long>();
  if (j.contains("mask_held")) cfg.mask_held = j.at("mask_held").get<bool>();
  if (j.contains("methods")) cfg.methods = j.at("methods").get<std::vector<std::string>>();
  if (j.contains("gamma_source")) {
    const auto& g = j.at("gamma_source");
    reject_unknown_keys(g, {"mode", "file", "value"}, "gamma_source");
    const auto mode = g.at("mode").get<std::string>();
    if (mode == "estimate") {
      cfg.gamma_source.mode = GammaSourceConfig::Mode::Estimate;
    } else if (mode == "file") {
      cfg.gamma_source.mode = GammaSourceConfig::Mode::File;
      cfg.gamma_source.file = g.at("file").get<std::string>();
    } else if (mode == "fixed") {
      cfg.gamma_source.mode = GammaSourceConfig::Mode::Fixed;
      cfg.gamma_source.value = g.at("value").get<double>();
    } else {
      throw InvalidInput("gamma_source.mode must be estimate|file|fixed");
    }
  }
  if (j.contains("eval_users")) cfg.eval_users = fs::path(j.at("eval_users").get<std::string>());
  if (j.contains("frontier")) {
    const auto& f = j.at("frontier");
    reject_unknown_keys(f, {"points"}, "frontier");
    if (f.contains("points")) cfg.frontier_points = f.at("points").get<long>();
  }
  if (j.contains("scoring_method")) cfg.scoring_method = j.at("scoring_method").get<std::string>();
  cfg.validate();
  return cfg;
}

std::string PipelineConfig::to_json() const {
  json j;
  j["prices"] = prices.string();
  j["snapshots"] = snapshots.string();
  j["out_dir"] = out_dir.string();
  j["seed"] = seed;
  j["threads"] = threads;
  j["decay"] = {{"half_life", decay.half_life}, {"ridge_epsilon", decay.ridge_epsilon}};
  j["gamma_bounds"] = {{"lo", gamma_bounds.lo}, {"hi", gamma_bounds.hi},
                       {"fallback", gamma_bounds.fallback}};
  j["windows"] = {{"r", window_to_json(window_r)},
                  {"w", window_to_json(window_w)},
                  {"gamma", window_to_json(window_gamma)}};
  j["k"] = cutoff_k;
  j["top_n"] = top_n;
  j["mask_held"] = mask_held;
  j["methods"] = methods;
  switch (gamma_source.mode) {
    case GammaSourceConfig::Mode::Estimate:
      j["gamma_source"] = {{"mode", "estimate"}};
      break;
    case GammaSourceConfig::Mode::File:
      j["gamma_source"] = {{"mode", "file"}, {"file", gamma_source.file.string()}};
      break;
    case GammaSourceConfig::Mode::Fixed:
      j["gamma_source"] = {{"mode", "fixed"}, {"value", gamma_source.value}};
      break;
  }
  if (eval_users) j["eval_users"] = eval_users->string();
  j["frontier"] = {{"points", frontier_points}};
  j["scoring_method"] = scoring_method;
  return j.dump(2) + "\n";
}

Mat random_score_values(long rows, long cols, std::uint64_t seed) {
  Mat values(rows, cols);
  for (long i = 0; i < rows; ++i) {
    Rng rng(derive_seed(seed, 0x72616e64ull + static_cast<std::uint64_t>(i)));
    for (long j = 0; j < cols; ++j) values(i, j) = rng.uniform01();
  }
  return values;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  PipelineResult result;
  std::vector<StageTiming>& timings = result.timings;
  const auto run_start = std::chrono::steady_clock::now();
  auto stage_start = run_start;
  const auto end_stage = [&](const std::string& name) {
    timings.push_back(StageTiming{name, seconds_since(stage_start)});
    stage_start = std::chrono::steady_clock::now();
  };

  fs::create_directories(cfg.out_dir);

  // Ingestion.
  const ReturnHistory history = io::load_prices(cfg.prices);
  const std::vector<std::string>& universe = history.assets;
  const SnapshotStore store = io::load_snapshots(cfg.snapshots);
  {
    std::unordered_set<std::string> in_universe(universe.begin(), universe.end());
    bool overlap = false;
    for (const auto& a : store.asset_ids())
      if (in_universe.count(a)) {
        overlap = true;
        break;
      }
    if (!overlap)
      throw UniverseMismatch("price and snapshot files share no asset id");
  }
  result.dropped_off_universe = store.count_off_universe(universe);
  if (result.dropped_off_universe > 0)
    std::cerr << "warning: dropped " << result.dropped_off_universe
              << " snapshot records outside the pricing universe\n";
  result.n_assets = static_cast<long>(universe.size());
  result.n_users = static_cast<long>(store.user_ids().size());
  io::write_lines(cfg.out_dir / "assets.txt", universe);
  io::write_lines(cfg.out_dir / "users.txt", store.user_ids());
  end_stage("ingest");

  // Moments.
  const MomentEstimates moments = compute_moments(history, cfg.decay);
  io::write_vector(cfg.out_dir / "mu.mat", moments.mu);
  io::write_matrix(cfg.out_dir / "sigma.mat", moments.sigma);
  end_stage("moments");

  // Frontier.
  const EfficientFrontier frontier = compute_frontier(
      moments, log_grid(cfg.gamma_bounds.lo, cfg.gamma_bounds.hi, cfg.frontier_points), {},
      cfg.threads);
  io::write_frontier(cfg.out_dir / "frontier.csv", cfg.out_dir / "frontier_weights.mat", frontier);
  end_stage("frontier");

  // Holdings matrices over their windows (anchored at the last snapshot date).
  const Date anchor = store.last_date();
  const BinaryHoldings r = build_R(store, cfg.window_r.resolve(anchor), universe);
  const PortfolioMatrix w = build_W(store, cfg.window_w.resolve(anchor), universe);
  io::write_matrix(cfg.out_dir / "R.mat", r.values);
  io::write_matrix(cfg.out_dir / "W.mat", w.values);
  end_stage("holdings");

  // Evaluation subset (defaults to every user).
  std::vector<long> eval_rows;
  if (cfg.eval_users) {
    const auto wanted = io::read_lines(*cfg.eval_users);
    std::unordered_map<std::string, long> row_of;
    for (std::size_t i = 0; i < store.user_ids().size(); ++i)
      row_of.emplace(store.user_ids()[i], static_cast<long>(i));
    std::set<long> rows;
    for (const auto& id : wanted) {
      const auto it = row_of.find(id);
      if (it == row_of.end())
        throw InvalidInput("eval user '" + id + "' not present in snapshots");
      rows.insert(it->second);
    }
    eval_rows.assign(rows.begin(), rows.end());
  } else {
    eval_rows.resize(store.user_ids().size());
    for (std::size_t i = 0; i < eval_rows.size(); ++i) eval_rows[i] = static_cast<long>(i);
  }
  result.n_eval_users = static_cast<long>(eval_rows.size());
  std::vector<std::string> eval_ids;
  eval_ids.reserve(eval_rows.size());
  for (long row : eval_rows) eval_ids.push_back(store.user_ids()[static_cast<std::size_t>(row)]);
  PortfolioMatrix eval_w{Mat(static_cast<long>(eval_rows.size()), w.values.cols()), w.period};
  for (std::size_t i = 0; i < eval_rows.size(); ++i)
    eval_w.values.row(static_cast<long>(i)) = w.values.row(eval_rows[i]);
  io::write_lines(cfg.out_dir / "eval_users.txt", eval_ids);
  end_stage("eval_subset");

  // Per-user risk aversions.
  Vec gammas(static_cast<long>(eval_rows.size()));
  switch (cfg.gamma_source.mode) {
    case GammaSourceConfig::Mode::Fixed:
      gammas.setConstant(cfg.gamma_source.value);
      break;
    case GammaSourceConfig::Mode::File: {
      std::unordered_map<std::string, double> from_file;
      for (const auto& [id, g] : io::read_gammas(cfg.gamma_source.file)) from_file[id] = g;
      for (std::size_t i = 0; i < eval_ids.size(); ++i) {
        const auto it = from_file.find(eval_ids[i]);
        if (it == from_file.end()) {
          gammas[static_cast<long>(i)] = cfg.gamma_bounds.fallback;
          ++result.gamma_fallback_users;
        } else {
          gammas[static_cast<long>(i)] = it->second;
        }
      }
      break;
    }
    case GammaSourceConfig::Mode::Estimate: {
      const DateRange window = cfg.window_gamma.resolve(anchor);
      std::unordered_map<std::string, long> universe_col;
      for (std::size_t j = 0; j < universe.size(); ++j)
        universe_col.emplace(universe[j], static_cast<long>(j));
      // Group this user's records into per-day value vectors.
      std::unordered_map<std::string, std::map<Date, Vec>> per_user;
      for (const auto& rec : store.records()) {
        if (!window.contains(rec.date)) continue;
        const auto col = universe_col.find(rec.asset_id);
        if (col == universe_col.end()) continue;
        auto& days = per_user[rec.user_id];
        auto [it, inserted] = days.try_emplace(rec.date);
        if (inserted) it->second = Vec::Zero(static_cast<long>(universe.size()));
        it->second[col->second] += rec.market_value;
      }
      FrontierRiskCurve curve(moments, cfg.gamma_bounds);
      for (std::size_t i = 0; i < eval_ids.size(); ++i) {
        const auto it = per_user.find(eval_ids[i]);
        if (it == per_user.end()) {
          gammas[static_cast<long>(i)] = cfg.gamma_bounds.fallback;
          ++result.gamma_fallback_users;
          continue;
        }
        std::vector<DailyHolding> days;
        days.reserve(it->second.size());
        for (const auto& [date, values] : it->second) days.push_back(DailyHolding{date, values});
        try {
          const GammaEstimate est =
              estimate_user_gamma(days, moments, cfg.gamma_bounds, &curve);
          gammas[static_cast<long>(i)] = est.gamma;
          result.gamma_clamped_days += est.clamped_days;
        } catch (const NoValidDays&) {
          gammas[static_cast<long>(i)] = cfg.gamma_bounds.fallback;
          ++result.gamma_fallback_users;
        }
      }
      break;
    }
  }
  io::write_gammas(cfg.out_dir / "gammas.csv", eval_ids, gammas);
  end_stage("gamma");

  // MPT scores.
  const ReplacementWeights wr = replacement_weights(eval_w);
  const GammaVector gvec{gammas};
  const ScoreMatrix y_mpt = cfg.scoring_method == "naive"
                                ? score_naive(eval_w, wr, gvec, moments, cfg.threads)
                                : score_vectorized(eval_w, wr, gvec, moments, cfg.threads);
  io::write_matrix(cfg.out_dir / "Y_mpt.mat", y_mpt.values);
  end_stage("mpt_scores");

  // CF scores (co-counts over the full population, rows for the eval subset).
  const Mat cocounts = cocount(r);
  const TransitionMatrix c = transition(cocounts);
  io::write_matrix(cfg.out_dir / "C_tilde.mat", cocounts);
  io::write_matrix(cfg.out_dir / "C.mat", c.values);
  const ScoreMatrix y_cf = cf_scores(eval_w, c, cfg.threads);
  io::write_matrix(cfg.out_dir / "Y_cf.mat", y_cf.values);
  end_stage("cf_scores");

  // Hybrid re-ranking and per-method outputs.
  const long k = std::min<long>(cfg.cutoff_k, static_cast<long>(universe.size()));
  const ScoreMatrix y_hybrid = hybrid_scores(y_cf, y_mpt, k);
  io::write_matrix(cfg.out_dir / "Y_hybrid.mat", y_hybrid.values);
  const Mat* held = cfg.mask_held ? &eval_w.values : nullptr;
  const long top = std::min<long>(cfg.top_n, static_cast<long>(universe.size()));
  for (const auto& method : cfg.methods) {
    const ScoreMatrix* rank = nullptr;
    ScoreMatrix random_scores;
    if (method == "random") {
      random_scores = ScoreMatrix{
          random_score_values(eval_w.values.rows(), eval_w.values.cols(), cfg.seed),
          ScoreKind::CF};
      rank = &random_scores;
    } else if (method == "mpt") {
      rank = &y_mpt;
    } else if (method == "cf") {
      rank = &y_cf;
    } else {
      rank = &y_hybrid;
    }
    const auto lists =
        make_recommendations(*rank, y_mpt, y_cf, eval_ids, universe, top, k, held);
    io::write_recommendations(cfg.out_dir / ("recommendations_" + method + ".csv"), lists);
  }
  end_stage("recommend");

  // Manifest (timings make this file run-dependent; it documents the run and
  // is not part of the deterministic artifact set).
  json manifest;
  manifest["config"] = json::parse(cfg.to_json());
  manifest["seed"] = cfg.seed;
  manifest["n_assets"] = result.n_assets;
  manifest["n_users"] = result.n_users;
  manifest["n_eval_users"] = result.n_eval_users;
  manifest["dropped_off_universe"] = result.dropped_off_universe;
  manifest["gamma_fallback_users"] = result.gamma_fallback_users;
  manifest["gamma_clamped_days"] = result.gamma_clamped_days;
  json t = json::array();
  for (const auto& st : timings)
    t.push_back({{"stage", st.stage}, {"seconds", st.seconds}});
  manifest["timings"] = t;
  manifest["total_seconds"] = seconds_since(run_start);
  result.manifest_path = cfg.out_dir / "run_manifest.json";
  std::ofstream out(result.manifest_path);
  out << manifest.dump(2) << '\n';
  return result;
}

}  // namespace mptcf
