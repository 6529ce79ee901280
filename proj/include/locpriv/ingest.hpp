#pragma once

#include <istream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "locpriv/markov.hpp"

namespace locpriv {

struct CheckinRecord {
  std::string user_id;
  std::string location_id;  // raw venue key
  long long timestamp = 0;  // unix seconds, UTC
};

enum class CheckinFormat { Tsv, Csv };

// Column positions within each line (0-based). A header line, when present,
// overrides these by name (user_id / location_id / timestamp).
struct ColumnSpec {
  int user = 0;
  int location = 1;
  int timestamp = 2;
};

struct ParseResult {
  std::vector<CheckinRecord> records;
  long long malformed = 0;
  long long total_lines = 0;
};

// One record per well-formed line; malformed lines are counted, not fatal,
// up to max_malformed_frac of all data lines.
// Throws EmptyInput, TooManyMalformed.
ParseResult parse_checkins(std::istream& in, CheckinFormat format,
                           ColumnSpec columns = {},
                           double max_malformed_frac = 0.01);

struct DiscretizedUser {
  std::string user_id;
  std::vector<LocationId> sequence;  // one entry per global time window
  std::vector<bool> fill_mask;       // steps filled by the somewhere-else rule
  int eval_suffix_len = 0;
  int active_steps() const;
};

struct DiscretizeResult {
  std::vector<DiscretizedUser> users;  // sorted by user_id
  int m = 0;                           // K + 1
  int somewhere_else = 0;              // always m - 1
  std::map<std::string, int> location_map;  // retained venue -> [0, K)
  std::vector<std::string> venue_of_index;
  long long window_seconds = 0;
  long long t0 = 0;  // window axis aligned to the earliest timestamp
  int t_windows = 0;
};

// Global contiguous window axis from min..max timestamp; per user per window
// the modal retained venue (ties: most globally visited, then lexicographic);
// windows without a retained check-in become "somewhere else". Users with
// fewer than min_active non-fill steps are dropped. Venue indices are
// assigned in (global count desc, key asc) order, so index 0 is the most
// visited venue.
// Throws NoRecords.
DiscretizeResult discretize(const std::vector<CheckinRecord>& records,
                            long long window_seconds, int top_k,
                            int min_active = 10);

// Additive-smoothed transition counts; zero-count rows fall back to uniform
// when alpha = 0; pi is the stationary distribution of the fitted P (uniform
// fallback if power iteration fails to converge).
// Throws SequenceTooShort.
MarkovPrior fit_transition(const std::vector<LocationId>& sequence, int m,
                           double alpha);

// Last eval_t steps become the evaluation trajectory, the rest the training
// sequence. Throws TooShort unless sequence length > eval_t.
std::pair<std::vector<LocationId>, Trajectory> split_train_eval(
    const DiscretizedUser& user, int eval_t);

}  // namespace locpriv
