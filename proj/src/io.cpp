#include "mptcf/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace mptcf::io {

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open for reading: " + path.string());
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, const fs::path& path, long line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError(path.string(), line, "not a number: '" + s + "'");
  return v;
}

void expect_header(std::ifstream& in, const fs::path& path, const std::string& expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != expected)
    throw ParseError(path.string(), 1, "expected header '" + expected + "', got '" + line + "'");
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(const fs::path& path, const Mat& m) {
  auto out = open_out(path);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

Mat read_matrix(const fs::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string(), 1, "missing matrix header");
  long rows = 0, cols = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> rows >> cols) || rows < 0 || cols < 0)
      throw ParseError(path.string(), 1, "malformed matrix header '" + line + "'");
  }
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!std::getline(in, line))
      throw ParseError(path.string(), i + 2, "unexpected end of matrix");
    std::istringstream ls(line);
    std::string tok;
    for (long j = 0; j < cols; ++j) {
      if (!(ls >> tok))
        throw ParseError(path.string(), i + 2, "row has fewer than " + std::to_string(cols) + " values");
      m(i, j) = parse_double(tok, path, i + 2);
    }
    if (ls >> tok)
      throw ParseError(path.string(), i + 2, "row has more than " + std::to_string(cols) + " values");
  }
  return m;
}

void write_vector(const fs::path& path, const Vec& v) { write_matrix(path, v); }

Vec read_vector(const fs::path& path) {
  Mat m = read_matrix(path);
  if (m.cols() != 1) throw Error(path.string() + ": expected a single-column matrix");
  return m.col(0);
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  auto out = open_out(path);
  for (const auto& l : lines) out << l << '\n';
}

std::vector<std::string> read_lines(const fs::path& path) {
  auto in = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

ReturnHistory load_prices(const fs::path& path) {
  auto in = open_in(path);
  expect_header(in, path, "date,asset_id,close");

  std::map<Date, long> date_idx;
  std::map<std::string, long> asset_idx;
  struct Row {
    Date date;
    std::string asset;
    double close;
    long line;
  };
  std::vector<Row> rows;
  std::string line;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 3) throw ParseError(path.string(), lineno, "expected 3 fields");
    const auto date = Date::try_parse(f[0]);
    if (!date) throw ParseError(path.string(), lineno, "bad date '" + f[0] + "'");
    if (f[1].empty()) throw ParseError(path.string(), lineno, "empty asset_id");
    const double close = parse_double(f[2], path, lineno);
    if (!std::isfinite(close) || close <= 0.0)
      throw ParseError(path.string(), lineno, "close must be finite and > 0");
    date_idx.emplace(*date, 0);
    asset_idx.emplace(f[1], 0);
    rows.push_back(Row{*date, f[1], close, lineno});
  }
  long d = 0;
  for (auto& [date, idx] : date_idx) idx = d++;
  long a = 0;
  for (auto& [asset, idx] : asset_idx) idx = a++;

  const long n_dates = d;
  const long n_assets = a;
  constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
  Mat closes = Mat::Constant(n_dates, n_assets, kMissing);
  for (const auto& r : rows) {
    double& cell = closes(date_idx.at(r.date), asset_idx.at(r.asset));
    if (!std::isnan(cell))
      throw ParseError(path.string(), r.line,
                       "duplicate close for (" + r.date.to_string() + ", " + r.asset + ")");
    cell = r.close;
  }
  for (const auto& [date, di] : date_idx)
    for (const auto& [asset, ai] : asset_idx)
      if (std::isnan(closes(di, ai)))
        throw ParseError(path.string(), lineno,
                         "missing close for (" + date.to_string() + ", " + asset + ")");

  ReturnHistory history;
  history.assets.reserve(static_cast<std::size_t>(n_assets));
  for (const auto& [asset, ai] : asset_idx) history.assets.push_back(asset);
  history.dates.reserve(static_cast<std::size_t>(std::max<long>(0, n_dates - 1)));
  bool first = true;
  for (const auto& [date, di] : date_idx) {
    if (!first) history.dates.push_back(date);
    first = false;
  }
  history.returns.resize(std::max<long>(0, n_dates - 1), n_assets);
  for (long t = 0; t + 1 < n_dates; ++t)
    for (long j = 0; j < n_assets; ++j)
      history.returns(t, j) = closes(t + 1, j) / closes(t, j) - 1.0;
  history.validate();
  return history;
}

void write_prices(const fs::path& path, const std::vector<Date>& dates,
                  const std::vector<std::string>& assets, const Mat& closes) {
  if (closes.rows() != static_cast<long>(dates.size()) ||
      closes.cols() != static_cast<long>(assets.size()))
    throw DimensionMismatch("close matrix shape does not match date/asset lists");
  auto out = open_out(path);
  out << "date,asset_id,close\n";
  for (std::size_t t = 0; t < dates.size(); ++t)
    for (std::size_t j = 0; j < assets.size(); ++j)
      out << dates[t].to_string() << ',' << assets[j] << ','
          << format_double(closes(static_cast<long>(t), static_cast<long>(j))) << '\n';
}

SnapshotStore load_snapshots(const fs::path& path) {
  auto in = open_in(path);
  expect_header(in, path, "date,user_id,asset_id,market_value");
  std::vector<SnapshotRecord> records;
  std::string line;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 4) throw ParseError(path.string(), lineno, "expected 4 fields");
    const auto date = Date::try_parse(f[0]);
    if (!date) throw ParseError(path.string(), lineno, "bad date '" + f[0] + "'");
    if (f[1].empty()) throw ParseError(path.string(), lineno, "empty user_id");
    if (f[2].empty()) throw ParseError(path.string(), lineno, "empty asset_id");
    const double value = parse_double(f[3], path, lineno);
    if (!std::isfinite(value) || value < 0.0)
      throw ParseError(path.string(), lineno, "market_value must be finite and >= 0");
    records.push_back(SnapshotRecord{*date, f[1], f[2], value});
  }
  try {
    return SnapshotStore(std::move(records));
  } catch (const InvalidInput& e) {
    throw ParseError(path.string(), lineno, e.what());
  }
}

void write_snapshots(const fs::path& path, const SnapshotStore& store) {
  auto out = open_out(path);
  out << "date,user_id,asset_id,market_value\n";
  for (const auto& r : store.records())
    out << r.date.to_string() << ',' << r.user_id << ',' << r.asset_id << ','
        << format_double(r.market_value) << '\n';
}

void write_gammas(const fs::path& path, const std::vector<std::string>& user_ids,
                  const Vec& gammas) {
  if (static_cast<long>(user_ids.size()) != gammas.size())
    throw DimensionMismatch("user id list does not match gamma vector");
  auto out = open_out(path);
  out << "user_id,gamma\n";
  for (std::size_t i = 0; i < user_ids.size(); ++i)
    out << user_ids[i] << ',' << format_double(gammas[static_cast<long>(i)]) << '\n';
}

std::vector<std::pair<std::string, double>> read_gammas(const fs::path& path) {
  auto in = open_in(path);
  expect_header(in, path, "user_id,gamma");
  std::vector<std::pair<std::string, double>> out;
  std::string line;
  long lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 2) throw ParseError(path.string(), lineno, "expected 2 fields");
    const double g = parse_double(f[1], path, lineno);
    if (!std::isfinite(g) || g <= 0.0)
      throw ParseError(path.string(), lineno, "gamma must be finite and > 0");
    out.emplace_back(f[0], g);
  }
  return out;
}

void write_frontier(const fs::path& csv_path, const fs::path& weights_path,
                    const EfficientFrontier& ef) {
  auto out = open_out(csv_path);
  out << "gamma,risk,expected_return,utility\n";
  for (const auto& p : ef.points)
    out << format_double(p.gamma) << ',' << format_double(p.risk) << ','
        << format_double(p.expected_return) << ',' << format_double(p.utility_value) << '\n';

  const long n = ef.points.empty() ? 0 : ef.points.front().weights.weights.size();
  Mat w(static_cast<long>(ef.points.size()), n);
  for (std::size_t i = 0; i < ef.points.size(); ++i)
    w.row(static_cast<long>(i)) = ef.points[i].weights.weights.transpose();
  write_matrix(weights_path, w);
}

void write_recommendations(const fs::path& path,
                           const std::vector<RecommendationList>& lists) {
  auto out = open_out(path);
  out << "user_id,rank,asset_id,score_mpt,score_cf\n";
  for (const auto& list : lists)
    for (const auto& item : list.items)
      out << list.user_id << ',' << item.rank << ',' << item.asset_id << ','
          << format_double(item.mpt_score) << ',' << format_double(item.cf_score) << '\n';
}

}  // namespace mptcf::io
