#include "locpriv/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "locpriv/errors.hpp"

namespace locpriv {

int DiscretizedUser::active_steps() const {
  int n = 0;
  for (bool f : fill_mask) n += !f;
  return n;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t begin = 0;
  while (true) {
    const size_t end = line.find(sep, begin);
    if (end == std::string::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, end - begin));
    begin = end + 1;
  }
  return fields;
}

bool parse_ll(const std::string& s, long long& out) {
  const char* b = s.data();
  const char* e = s.data() + s.size();
  const auto res = std::from_chars(b, e, out);
  return res.ec == std::errc() && res.ptr == e && !s.empty();
}

// Header detection: a first line whose timestamp field is non-numeric and
// that names the three columns somewhere.
bool looks_like_header(const std::vector<std::string>& fields) {
  for (const auto& f : fields) {
    std::string lower(f);
    std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
    if (lower == "user_id" || lower == "location_id" || lower == "timestamp")
      return true;
  }
  return false;
}

}  // namespace

ParseResult parse_checkins(std::istream& in, CheckinFormat format,
                           ColumnSpec columns, double max_malformed_frac) {
  const char sep = format == CheckinFormat::Tsv ? '\t' : ',';
  ParseResult result;
  std::string line;
  bool first_line = true;
  const int max_col =
      std::max({columns.user, columns.location, columns.timestamp});

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line, sep);
    if (first_line) {
      first_line = false;
      if (looks_like_header(fields)) {
        for (int i = 0; i < static_cast<int>(fields.size()); ++i) {
          std::string lower(fields[i]);
          std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
          if (lower == "user_id") columns.user = i;
          if (lower == "location_id") columns.location = i;
          if (lower == "timestamp") columns.timestamp = i;
        }
        continue;
      }
    }
    ++result.total_lines;
    long long ts = 0;
    if (static_cast<int>(fields.size()) <= max_col ||
        !parse_ll(fields[columns.timestamp], ts) || ts < 0 ||
        fields[columns.user].empty() || fields[columns.location].empty()) {
      ++result.malformed;
      continue;
    }
    result.records.push_back(
        {fields[columns.user], fields[columns.location], ts});
  }

  if (result.total_lines == 0) throw EmptyInput("no data lines");
  if (static_cast<double>(result.malformed) >
      max_malformed_frac * static_cast<double>(result.total_lines))
    throw TooManyMalformed(std::to_string(result.malformed) + " of " +
                           std::to_string(result.total_lines) + " lines");
  return result;
}

DiscretizeResult discretize(const std::vector<CheckinRecord>& records,
                            long long window_seconds, int top_k,
                            int min_active) {
  if (window_seconds <= 0) throw ConfigError("window_seconds must be positive");
  if (top_k < 1) throw ConfigError("top_k must be >= 1");
  if (records.empty()) throw NoRecords("no check-in records");

  // Global venue popularity.
  std::map<std::string, long long> venue_counts;
  long long min_ts = records.front().timestamp;
  long long max_ts = records.front().timestamp;
  for (const auto& r : records) {
    ++venue_counts[r.location_id];
    min_ts = std::min(min_ts, r.timestamp);
    max_ts = std::max(max_ts, r.timestamp);
  }
  std::vector<std::pair<std::string, long long>> ranked(venue_counts.begin(),
                                                        venue_counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  DiscretizeResult out;
  const int k = std::min<int>(top_k, static_cast<int>(ranked.size()));
  out.m = k + 1;
  out.somewhere_else = k;
  out.window_seconds = window_seconds;
  out.t0 = min_ts;
  out.t_windows = static_cast<int>((max_ts - min_ts) / window_seconds) + 1;
  for (int i = 0; i < k; ++i) {
    out.location_map[ranked[i].first] = i;
    out.venue_of_index.push_back(ranked[i].first);
  }

  // Per user, per window, counts over retained venues only.
  std::map<std::string, std::map<int, std::map<int, int>>> per_user;
  for (const auto& r : records) {
    const auto it = out.location_map.find(r.location_id);
    if (it == out.location_map.end()) continue;
    const int w = static_cast<int>((r.timestamp - min_ts) / window_seconds);
    ++per_user[r.user_id][w][it->second];
  }

  for (auto& [user_id, windows] : per_user) {
    DiscretizedUser user;
    user.user_id = user_id;
    user.sequence.assign(out.t_windows, out.somewhere_else);
    user.fill_mask.assign(out.t_windows, true);
    for (const auto& [w, counts] : windows) {
      int best = -1, best_count = 0;
      for (const auto& [idx, count] : counts) {
        // Index order already encodes popularity-then-lex, so the smallest
        // index wins ties.
        if (count > best_count) {
          best_count = count;
          best = idx;
        }
      }
      user.sequence[w] = best;
      user.fill_mask[w] = false;
    }
    if (user.active_steps() >= min_active) out.users.push_back(std::move(user));
  }
  return out;  // per_user is a std::map, so users are sorted by user_id
}

MarkovPrior fit_transition(const std::vector<LocationId>& sequence, int m,
                           double alpha) {
  if (sequence.size() < 2) throw SequenceTooShort("need at least 2 steps");
  if (alpha < 0) throw ConfigError("alpha must be >= 0");
  for (LocationId x : sequence)
    if (x < 0 || x >= m) throw DimensionMismatch("location out of range");

  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(m, m);
  for (size_t i = 1; i < sequence.size(); ++i)
    counts(sequence[i - 1], sequence[i]) += 1.0;

  Eigen::MatrixXd p(m, m);
  for (int i = 0; i < m; ++i) {
    const double row_total = counts.row(i).sum() + alpha * m;
    if (row_total == 0.0) {
      p.row(i).setConstant(1.0 / m);
    } else {
      for (int j = 0; j < m; ++j) p(i, j) = (counts(i, j) + alpha) / row_total;
    }
  }

  Eigen::VectorXd pi;
  try {
    pi = stationary_distribution(p);
  } catch (const NoConvergence&) {
    pi = Eigen::VectorXd::Constant(m, 1.0 / m);
  }
  return validate_prior(pi, p);
}

std::pair<std::vector<LocationId>, Trajectory> split_train_eval(
    const DiscretizedUser& user, int eval_t) {
  const int len = static_cast<int>(user.sequence.size());
  if (eval_t < 1) throw ConfigError("eval_t must be >= 1");
  if (len <= eval_t)
    throw TooShort("sequence length " + std::to_string(len) +
                   " does not exceed eval_t=" + std::to_string(eval_t));
  std::vector<LocationId> train(user.sequence.begin(),
                                user.sequence.end() - eval_t);
  Trajectory eval(user.sequence.end() - eval_t, user.sequence.end());
  return {std::move(train), std::move(eval)};
}

}  // namespace locpriv
