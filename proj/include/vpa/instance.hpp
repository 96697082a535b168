#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vpa {

using Time = std::int64_t;

struct Job {
  int id = 0;
  Time r = 0;
  Time p = 1;
  Time q = 0;
};

enum class Flavor { DeliveryTimes, DueDates };

enum class Format { Plain, Structured };

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Jobs are kept in file order. Ids are dense in [1..n].
// For the due-date flavor q is derived with D = max d.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Job> jobs, Flavor flavor = Flavor::DeliveryTimes,
           std::vector<Time> due_dates = {});

  int n() const { return static_cast<int>(jobs_.size()); }
  const std::vector<Job>& jobs() const { return jobs_; }
  Flavor flavor() const { return flavor_; }

  const Job& job(int id) const { return jobs_[pos_[id]]; }
  Time r(int id) const { return job(id).r; }
  Time p(int id) const { return job(id).p; }
  Time q(int id) const { return job(id).q; }
  // d of job id; only for the due-date flavor
  Time d(int id) const;
  const std::vector<Time>& due_dates() const { return due_; }

  Time max_q() const;
  Time max_d() const;
  Time total_p() const;

 private:
  std::vector<Job> jobs_;
  std::vector<int> pos_;
  Flavor flavor_ = Flavor::DeliveryTimes;
  std::vector<Time> due_;
};

Instance parse_instance(std::istream& in, Format format = Format::Plain);
Instance parse_instance_string(const std::string& text, Format format = Format::Plain);
Instance load_instance(const std::string& path, Format format = Format::Plain);

void write_instance(std::ostream& out, const Instance& inst, Format format = Format::Plain);
std::string instance_to_string(const Instance& inst, Format format = Format::Plain);

Instance deliveries_to_due_dates(const Instance& inst, std::optional<Time> K = std::nullopt);
Instance due_dates_to_deliveries(const Instance& inst, std::optional<Time> D = std::nullopt);

// Sequence evaluation in both objectives. The order is scheduled left-shifted.
Time order_makespan(const Instance& inst, const std::vector<int>& order);
Time order_max_lateness(const Instance& inst, const std::vector<int>& order);

struct Ranges {
  Time r_max = 100;
  Time p_max = 20;
  Time q_max = 100;
};

// splitmix64; fixed across platforms
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // uniform in [lo, hi], unbiased
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::uint64_t state_;
};

Instance generate_instance(int n, std::uint64_t seed, const Ranges& ranges = {});

Instance fixture13();

}  // namespace vpa
