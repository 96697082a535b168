#include "vpa/instance.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace vpa {

ParseError::ParseError(int line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

Instance::Instance(std::vector<Job> jobs, Flavor flavor, std::vector<Time> due_dates)
    : jobs_(std::move(jobs)), flavor_(flavor), due_(std::move(due_dates)) {
  if (jobs_.empty()) throw DomainError("empty instance");
  const int n = static_cast<int>(jobs_.size());
  pos_.assign(n + 1, -1);
  for (int k = 0; k < n; ++k) {
    const Job& j = jobs_[k];
    if (j.id < 1 || j.id > n) throw DomainError("job id " + std::to_string(j.id) + " out of range");
    if (pos_[j.id] != -1) throw DomainError("duplicate id " + std::to_string(j.id));
    if (j.p < 1) throw DomainError("non-positive p for job " + std::to_string(j.id));
    if (j.r < 0 || j.q < 0) throw DomainError("negative time for job " + std::to_string(j.id));
    pos_[j.id] = k;
  }
  if (flavor_ == Flavor::DueDates) {
    if (static_cast<int>(due_.size()) != n) throw DomainError("due dates missing");
    for (Time d : due_)
      if (d < 0) throw DomainError("negative due date");
  } else {
    due_.clear();
  }
}

Time Instance::d(int id) const {
  if (flavor_ != Flavor::DueDates) throw DomainError("instance has no due dates");
  return due_[pos_[id]];
}

Time Instance::max_q() const {
  Time m = 0;
  for (const Job& j : jobs_) m = std::max(m, j.q);
  return m;
}

Time Instance::max_d() const {
  Time m = 0;
  for (Time d : due_) m = std::max(m, d);
  return m;
}

Time Instance::total_p() const {
  Time s = 0;
  for (const Job& j : jobs_) s += j.p;
  return s;
}

namespace {

bool parse_int(const std::string& tok, Time& out) {
  if (tok.empty()) return false;
  std::size_t used = 0;
  try {
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) return false;
    out = v;
  } catch (...) {
    return false;
  }
  return true;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

Instance build(std::vector<Job> jobs, std::vector<Time> due, bool due_flavor,
               const std::vector<int>& lines) {
  const int n = static_cast<int>(jobs.size());
  std::vector<int> seen(n + 1, 0);
  for (int k = 0; k < n; ++k) {
    const Job& j = jobs[k];
    if (j.id < 1 || j.id > n) throw ParseError(lines[k], "job id must lie in [1.." + std::to_string(n) + "]");
    if (seen[j.id]) throw ParseError(lines[k], "duplicate id " + std::to_string(j.id));
    seen[j.id] = 1;
    if (j.p < 1) throw ParseError(lines[k], "non-positive p");
    if (j.r < 0) throw ParseError(lines[k], "negative r");
    if (due_flavor ? due[k] < 0 : j.q < 0) throw ParseError(lines[k], due_flavor ? "negative d" : "negative q");
  }
  if (!due_flavor) return Instance(std::move(jobs));
  Time D = 0;
  for (Time d : due) D = std::max(D, d);
  for (int k = 0; k < n; ++k) jobs[k].q = D - due[k];
  return Instance(std::move(jobs), Flavor::DueDates, std::move(due));
}

Instance parse_plain(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  bool due_flavor = false;
  int header_line = 0;
  std::vector<Job> jobs;
  std::vector<Time> due;
  std::vector<int> lines;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto first = line.find_first_not_of(" \t");
    if (line[first] == '#') continue;
    auto tok = split_ws(line);
    if (n < 0) {
      Time v = 0;
      if (tok.size() != 2 || !parse_int(tok[0], v) || (tok[1] != "q" && tok[1] != "d"))
        throw ParseError(lineno, "expected header '<n> q|d'");
      if (v < 0) throw ParseError(lineno, "negative job count");
      n = static_cast<int>(v);
      due_flavor = tok[1] == "d";
      header_line = lineno;
      continue;
    }
    if (static_cast<int>(jobs.size()) == n) throw ParseError(lineno, "more job lines than declared");
    Time v[4];
    if (tok.size() != 4) throw ParseError(lineno, "expected 'id r p " + std::string(due_flavor ? "d" : "q") + "'");
    for (int k = 0; k < 4; ++k)
      if (!parse_int(tok[k], v[k])) throw ParseError(lineno, "malformed integer '" + tok[k] + "'");
    if (v[0] < 1 || v[0] > std::numeric_limits<int>::max()) throw ParseError(lineno, "bad job id");
    jobs.push_back(Job{static_cast<int>(v[0]), v[1], v[2], due_flavor ? 0 : v[3]});
    if (due_flavor) due.push_back(v[3]);
    lines.push_back(lineno);
  }
  if (n < 0) throw ParseError(lineno, "empty instance");
  if (n == 0) throw ParseError(header_line, "empty instance");
  if (static_cast<int>(jobs.size()) != n)
    throw ParseError(lineno, "expected " + std::to_string(n) + " job lines, found " + std::to_string(jobs.size()));
  return build(std::move(jobs), std::move(due), due_flavor, lines);
}

Instance parse_structured(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, e.what());
  }
  if (!doc.is_object() || !doc.contains("flavor") || !doc.contains("jobs"))
    throw ParseError(1, "expected object with 'flavor' and 'jobs'");
  if (!doc["flavor"].is_string()) throw ParseError(1, "flavor must be \"q\" or \"d\"");
  std::string fl = doc["flavor"];
  if (fl != "q" && fl != "d") throw ParseError(1, "flavor must be \"q\" or \"d\"");
  bool due_flavor = fl == "d";
  const auto& arr = doc["jobs"];
  if (!arr.is_array()) throw ParseError(1, "'jobs' must be an array");
  if (arr.empty()) throw ParseError(1, "empty instance");
  std::vector<Job> jobs;
  std::vector<Time> due;
  std::vector<int> lines;
  const char* last = due_flavor ? "d" : "q";
  int idx = 0;
  for (const auto& o : arr) {
    ++idx;
    for (const char* key : {"id", "r", "p", last})
      if (!o.is_object() || !o.contains(key) || !o[key].is_number_integer())
        throw ParseError(idx, std::string("job entry lacks integer '") + key + "'");
    Time id = o["id"].get<Time>();
    if (id < 1 || id > std::numeric_limits<int>::max()) throw ParseError(idx, "bad job id");
    jobs.push_back(Job{static_cast<int>(id), o["r"].get<Time>(), o["p"].get<Time>(),
                       due_flavor ? 0 : o["q"].get<Time>()});
    if (due_flavor) due.push_back(o["d"].get<Time>());
    lines.push_back(idx);
  }
  return build(std::move(jobs), std::move(due), due_flavor, lines);
}

}  // namespace

Instance parse_instance(std::istream& in, Format format) {
  return format == Format::Plain ? parse_plain(in) : parse_structured(in);
}

Instance parse_instance_string(const std::string& text, Format format) {
  std::istringstream ss(text);
  return parse_instance(ss, format);
}

Instance load_instance(const std::string& path, Format format) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open " + path);
  return parse_instance(f, format);
}

void write_instance(std::ostream& out, const Instance& inst, Format format) {
  const bool due = inst.flavor() == Flavor::DueDates;
  if (format == Format::Plain) {
    out << inst.n() << ' ' << (due ? 'd' : 'q') << '\n';
    for (const Job& j : inst.jobs())
      out << j.id << ' ' << j.r << ' ' << j.p << ' ' << (due ? inst.d(j.id) : j.q) << '\n';
    return;
  }
  nlohmann::ordered_json doc;
  doc["flavor"] = due ? "d" : "q";
  doc["jobs"] = nlohmann::ordered_json::array();
  for (const Job& j : inst.jobs()) {
    nlohmann::ordered_json o;
    o["id"] = j.id;
    o["r"] = j.r;
    o["p"] = j.p;
    if (due)
      o["d"] = inst.d(j.id);
    else
      o["q"] = j.q;
    doc["jobs"].push_back(o);
  }
  out << doc.dump(2) << '\n';
}

std::string instance_to_string(const Instance& inst, Format format) {
  std::ostringstream ss;
  write_instance(ss, inst, format);
  return ss.str();
}

Instance deliveries_to_due_dates(const Instance& inst, std::optional<Time> K) {
  if (inst.flavor() != Flavor::DeliveryTimes) throw DomainError("instance already carries due dates");
  Time k = K.value_or(inst.max_q());
  if (k < inst.max_q()) throw DomainError("K must be at least max q");
  std::vector<Job> jobs = inst.jobs();
  std::vector<Time> due;
  for (Job& j : jobs) due.push_back(k - j.q);
  // q is re-derived from the due dates with D = max d
  Time D = 0;
  for (Time d : due) D = std::max(D, d);
  for (std::size_t i = 0; i < jobs.size(); ++i) jobs[i].q = D - due[i];
  return Instance(std::move(jobs), Flavor::DueDates, std::move(due));
}

Instance due_dates_to_deliveries(const Instance& inst, std::optional<Time> D) {
  if (inst.flavor() != Flavor::DueDates) throw DomainError("instance carries no due dates");
  Time dd = D.value_or(inst.max_d());
  if (dd < inst.max_d()) throw DomainError("D must be at least max d");
  std::vector<Job> jobs = inst.jobs();
  for (Job& j : jobs) j.q = dd - inst.d(j.id);
  return Instance(std::move(jobs));
}

Time order_makespan(const Instance& inst, const std::vector<int>& order) {
  Time t = 0, m = 0;
  for (int id : order) {
    t = std::max(t, inst.r(id)) + inst.p(id);
    m = std::max(m, t + inst.q(id));
  }
  return m;
}

Time order_max_lateness(const Instance& inst, const std::vector<int>& order) {
  Time t = 0, m = std::numeric_limits<Time>::min();
  for (int id : order) {
    t = std::max(t, inst.r(id)) + inst.p(id);
    m = std::max(m, t - inst.d(id));
  }
  return m;
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

Instance generate_instance(int n, std::uint64_t seed, const Ranges& ranges) {
  if (n < 1) throw DomainError("n must be positive");
  if (ranges.r_max < 0 || ranges.p_max < 1 || ranges.q_max < 0) throw DomainError("bad ranges");
  SplitMix64 rng(seed);
  std::vector<Job> jobs;
  jobs.reserve(n);
  for (int i = 1; i <= n; ++i) {
    Job j;
    j.id = i;
    j.r = rng.uniform(0, ranges.r_max);
    j.p = rng.uniform(1, ranges.p_max);
    j.q = rng.uniform(0, ranges.q_max);
    jobs.push_back(j);
  }
  return Instance(std::move(jobs));
}

Instance fixture13() {
  return Instance({{1, 0, 12, 11},
                   {2, 2, 2, 50},
                   {3, 5, 3, 48},
                   {4, 10, 5, 44},
                   {5, 13, 4, 43},
                   {6, 1, 7, 41},
                   {7, 32, 10, 3},
                   {8, 35, 7, 15},
                   {9, 37, 4, 12},
                   {10, 41, 3, 11},
                   {11, 45, 2, 11},
                   {12, 47, 1, 10},
                   {13, 58, 2, 2}});
}

}  // namespace vpa
