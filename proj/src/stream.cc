// Copyright 2026 The dpb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dpb/stream.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpb/status_macros.h"

namespace dpb {
namespace {

absl::StatusOr<int64_t> ParseInt(const std::string& s, int line_no) {
  size_t pos = 0;
  int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (...) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("Line ", line_no, ": expected an integer, got '", s, "'"));
  }
  return v;
}

}  // namespace

absl::Status UpdateStream::Validate() const {
  if (universe_size < 1) {
    return absl::InvalidArgumentError("Stream universe must be nonempty");
  }
  for (size_t i = 0; i < updates.size(); ++i) {
    const Update& u = updates[i];
    if (u.item < 0 || u.item >= universe_size) {
      return absl::InvalidArgumentError(absl::StrCat(
          "Update ", i, " has item ", u.item, " outside [0, ", universe_size,
          ")"));
    }
    const bool legal = mode == StreamMode::kInsertOnly
                           ? u.delta == 1
                           : (u.delta == 1 || u.delta == -1);
    if (!legal) {
      return absl::InvalidArgumentError(
          absl::StrCat("Update ", i, " has illegal delta ", u.delta));
    }
  }
  return absl::OkStatus();
}

std::vector<int64_t> Frequencies(const UpdateStream& s) {
  return Frequencies(s, 0, s.length());
}

std::vector<int64_t> Frequencies(const UpdateStream& s, int64_t begin,
                                 int64_t end) {
  std::vector<int64_t> freq(s.universe_size, 0);
  begin = std::max<int64_t>(begin, 0);
  end = std::min(end, s.length());
  for (int64_t i = begin; i < end; ++i) {
    freq[s.updates[i].item] += s.updates[i].delta;
  }
  return freq;
}

double SecondMoment(const std::vector<int64_t>& freq) {
  double sum = 0;
  for (int64_t f : freq) sum += static_cast<double>(f) * static_cast<double>(f);
  return sum;
}

double L2Norm(const std::vector<int64_t>& freq) {
  return std::sqrt(SecondMoment(freq));
}

int64_t DistinctCount(const std::vector<int64_t>& freq) {
  return std::count_if(freq.begin(), freq.end(),
                       [](int64_t f) { return f != 0; });
}

absl::StatusOr<UpdateStream> ParseStream(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool have_header = false;
  int64_t m = 0;
  UpdateStream s;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream tok(line.substr(0, line.find('#')));
    std::vector<std::string> t;
    std::string w;
    while (tok >> w) t.push_back(w);
    if (t.empty()) continue;
    if (!have_header) {
      if (t.size() != 3) {
        return absl::InvalidArgumentError(
            "Stream header must be 'n m insert|turnstile'");
      }
      DPB_ASSIGN_OR_RETURN(s.universe_size, ParseInt(t[0], line_no));
      DPB_ASSIGN_OR_RETURN(m, ParseInt(t[1], line_no));
      if (t[2] == "insert") {
        s.mode = StreamMode::kInsertOnly;
      } else if (t[2] == "turnstile") {
        s.mode = StreamMode::kTurnstile;
      } else {
        return absl::InvalidArgumentError(
            absl::StrCat("Unknown stream mode '", t[2], "'"));
      }
      if (m < 0) return absl::InvalidArgumentError("Negative stream length");
      s.updates.reserve(static_cast<size_t>(std::min<int64_t>(m, 1 << 24)));
      have_header = true;
      continue;
    }
    if (t.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("Line ", line_no, ": expected 'item delta'"));
    }
    Update u;
    DPB_ASSIGN_OR_RETURN(u.item, ParseInt(t[0], line_no));
    DPB_ASSIGN_OR_RETURN(u.delta, ParseInt(t[1], line_no));
    s.updates.push_back(u);
  }
  if (!have_header) return absl::InvalidArgumentError("Empty stream file");
  if (s.length() != m) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Header announces ", m, " updates but ", s.length(), " were read"));
  }
  DPB_RETURN_IF_ERROR(s.Validate());
  return s;
}

absl::StatusOr<UpdateStream> LoadStream(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("Cannot open ", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  absl::StatusOr<UpdateStream> s = ParseStream(buf.str());
  if (!s.ok()) {
    return absl::Status(s.status().code(),
                        absl::StrCat(path, ": ", s.status().message()));
  }
  return s;
}

std::string SerializeStream(const UpdateStream& s) {
  std::string out = absl::StrCat(
      s.universe_size, " ", s.length(), " ",
      s.mode == StreamMode::kInsertOnly ? "insert" : "turnstile", "\n");
  for (const Update& u : s.updates) absl::StrAppend(&out, u.item, " ", u.delta, "\n");
  return out;
}

absl::StatusOr<UpdateStream> StreamNeighbor(const UpdateStream& s, Rng& rng) {
  if (s.updates.empty()) {
    return absl::InvalidArgumentError("A stream neighbor needs m >= 1");
  }
  const bool turnstile = s.mode == StreamMode::kTurnstile;
  const uint64_t legal = static_cast<uint64_t>(s.universe_size) *
                         (turnstile ? 2 : 1);
  if (legal < 2) {
    return absl::InvalidArgumentError(
        "A one-item insertion-only universe has no distinct neighbor");
  }
  UpdateStream out = s;
  const size_t idx = rng.UniformInt(s.updates.size());
  const Update old = s.updates[idx];
  // Draw uniformly among the legal updates other than the current one.
  const uint64_t old_code =
      static_cast<uint64_t>(old.item) * (turnstile ? 2 : 1) +
      (turnstile && old.delta < 0 ? 1 : 0);
  uint64_t code = rng.UniformInt(legal - 1);
  if (code >= old_code) ++code;
  Update repl;
  repl.item = static_cast<int64_t>(code / (turnstile ? 2 : 1));
  repl.delta = turnstile && code % 2 == 1 ? -1 : 1;
  out.updates[idx] = repl;
  return out;
}

UpdateStream ZipfStream(int64_t n, int64_t m, double exponent, Rng& rng) {
  std::vector<double> cdf(n);
  double acc = 0;
  for (int64_t i = 0; i < n; ++i) {
    acc += std::pow(static_cast<double>(i + 1), -exponent);
    cdf[i] = acc;
  }
  UpdateStream s;
  s.universe_size = n;
  s.mode = StreamMode::kInsertOnly;
  s.updates.reserve(m);
  for (int64_t j = 0; j < m; ++j) {
    const double u = rng.UniformOpen01() * acc;
    int64_t item = std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    s.updates.push_back({std::min(item, n - 1), 1});
  }
  return s;
}

UpdateStream UniformStream(int64_t n, int64_t m, Rng& rng) {
  UpdateStream s;
  s.universe_size = n;
  s.mode = StreamMode::kInsertOnly;
  s.updates.reserve(m);
  for (int64_t j = 0; j < m; ++j) {
    s.updates.push_back(
        {static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(n))), 1});
  }
  return s;
}

UpdateStream RandomTurnstileStream(int64_t n, int64_t m, Rng& rng) {
  UpdateStream s;
  s.universe_size = n;
  s.mode = StreamMode::kTurnstile;
  s.updates.reserve(m);
  for (int64_t j = 0; j < m; ++j) {
    const int64_t item = static_cast<int64_t>(rng.UniformInt(static_cast<uint64_t>(n)));
    s.updates.push_back({item, rng.Bernoulli(0.5) ? 1 : -1});
  }
  return s;
}

}  // namespace dpb
