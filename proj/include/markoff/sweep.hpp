#pragma once

// Per-prime verdicts for (1,1,1) and the running density of primes with
// (1,1,1) in the cage.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "markoff/pisano.hpp"
#include "markoff/rotation.hpp"

namespace markoff {

struct SweepRecord {
  u64 p = 0;
  u64 mod5 = 0;
  u64 pisano = 0;
  u64 ord111 = 0;
  CoordKind cls = CoordKind::Elliptic;  // class of the coordinate value 1 (Delta = 5)
  bool in_cage = false;
  int nu2 = 0;

  /// in_cage implies p = 2, 3 mod 5 and a non-hyperbolic coordinate.
  bool invariants_hold() const {
    if (!in_cage) return true;
    return (mod5 == 2 || mod5 == 3) && cls != CoordKind::Hyperbolic;
  }

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// Verdict for (1,1,1) at prime p > 5, with ord111 taken from the Pisano period.
inline SweepRecord make_sweep_record(u64 p, bool force = false) {
  if (p <= 5 || !is_prime(p)) throw PreconditionViolated("sweep records need a prime p > 5");
  const PisanoRecord pis = pisano(p, force);
  SweepRecord r;
  r.p = p;
  r.mod5 = p % 5;
  r.pisano = pis.period;
  r.ord111 = *pis.half_period;
  r.cls = classify(FpElement(1, Modulus(p))).kind;
  r.in_cage = r.ord111 == maximal_order(r.cls, p);
  r.nu2 = nu2(p + 1);
  return r;
}

struct DensityPoint {
  u64 p;
  double percent;
  friend bool operator==(const DensityPoint&, const DensityPoint&) = default;
};

struct DensitySummary {
  u64 bound = 0;
  u64 primes = 0;
  u64 in_cage = 0;
  u64 invariant_violations = 0;
  double max_running_density = 0;  // over running bounds >= 100; 0 if bound < 100

  double density() const { return primes == 0 ? 0.0 : static_cast<double>(in_cage) / static_cast<double>(primes); }
  bool ok() const { return invariant_violations == 0 && max_running_density <= 0.5; }
};

inline constexpr u64 kRunningDensityFloor = 100;

/// Folds records in prime order. Keeps a log-spaced sample of the running
/// density for plotting.
class DensityAccumulator {
 public:
  explicit DensityAccumulator(u64 bound = 0, int samples_per_decade = 400)
      : step_(1.0 / samples_per_decade) {
    summary_.bound = bound;
  }

  void add(const SweepRecord& r) {
    if (pending_ && r.p <= last_p_) throw InvalidArgument("records must arrive in increasing prime order");
    // The density after the previous record holds for bounds in [last_p, r.p).
    if (pending_ && r.p > kRunningDensityFloor) note_running();
    ++summary_.primes;
    if (r.in_cage) ++summary_.in_cage;
    if (!r.invariants_hold()) ++summary_.invariant_violations;
    last_p_ = r.p;
    pending_ = true;

    const double lp = std::log10(static_cast<double>(r.p));
    if (series_.empty() || lp - last_sample_log_ >= step_) {
      series_.push_back({r.p, 100.0 * summary_.density()});
      last_sample_log_ = lp;
      last_is_sample_ = true;
    } else {
      last_is_sample_ = false;
    }
  }

  DensitySummary summary() const {
    DensitySummary s = summary_;
    if (pending_ && std::max(s.bound, last_p_) >= kRunningDensityFloor) {
      s.max_running_density = std::max(s.max_running_density, s.density());
    }
    return s;
  }

  /// Sampled running density, always ending with the final record.
  std::vector<DensityPoint> series() const {
    std::vector<DensityPoint> out = series_;
    if (pending_ && !last_is_sample_) out.push_back({last_p_, 100.0 * summary_.density()});
    return out;
  }

 private:
  void note_running() { summary_.max_running_density = std::max(summary_.max_running_density, summary_.density()); }

  DensitySummary summary_;
  std::vector<DensityPoint> series_;
  double step_;
  double last_sample_log_ = 0;
  u64 last_p_ = 0;
  bool pending_ = false;
  bool last_is_sample_ = false;
};

inline constexpr u64 kDensityGuard = 1'000'000'000;

struct SweepOptions {
  unsigned workers = 1;
  bool force = false;
  std::size_t block = 1 << 14;  // primes per scheduling block
};

/// Records for every prime 5 < p <= bound, handed to `sink` in prime order.
/// Each block of primes is split into contiguous chunks across workers and
/// merged back in order, so output does not depend on the worker count.
inline void sweep_density(u64 bound, const SweepOptions& opt, const std::function<void(const SweepRecord&)>& sink) {
  if (bound == 0) throw InvalidArgument("density bound must be positive");
  if (!opt.force && bound > kDensityGuard) throw GuardExceeded("density sweep limited to bound <= 10^9 (use force)");
  const unsigned workers = std::max(1u, opt.workers);
  const std::vector<u64> primes = primes_in_range(7, bound);

  std::vector<SweepRecord> block;
  for (std::size_t start = 0; start < primes.size(); start += opt.block) {
    const std::size_t end = std::min(primes.size(), start + opt.block);
    block.assign(end - start, SweepRecord{});
    if (workers == 1) {
      for (std::size_t k = start; k < end; ++k) block[k - start] = make_sweep_record(primes[k], opt.force);
    } else {
      const std::size_t chunk = 64;
      std::atomic<std::size_t> next{start};
      std::vector<std::thread> pool;
      std::exception_ptr failure;
      std::mutex failure_mutex;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          try {
            for (std::size_t lo; (lo = next.fetch_add(chunk)) < end;) {
              for (std::size_t k = lo; k < std::min(end, lo + chunk); ++k)
                block[k - start] = make_sweep_record(primes[k], opt.force);
            }
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        });
      }
      for (auto& t : pool) t.join();
      if (failure) std::rethrow_exception(failure);
    }
    for (const auto& r : block) sink(r);
  }
}

inline std::vector<SweepRecord> sweep_density(u64 bound, const SweepOptions& opt = {}) {
  std::vector<SweepRecord> out;
  sweep_density(bound, opt, [&](const SweepRecord& r) { out.push_back(r); });
  return out;
}

inline DensitySummary summarize(const std::vector<SweepRecord>& records, u64 bound = 0) {
  DensityAccumulator acc(bound);
  for (const auto& r : records) acc.add(r);
  return acc.summary();
}

// ---------------------------------------------------------------------------
// CSV / JSON lines

inline constexpr const char* kSweepCsvHeader = "p,mod5,pisano,ord111,class,in_cage,nu2";

inline void write_csv_header(std::ostream& os) { os << kSweepCsvHeader << '\n'; }

inline void write_csv_row(const SweepRecord& r, std::ostream& os) {
  os << r.p << ',' << r.mod5 << ',' << r.pisano << ',' << r.ord111 << ',' << to_string(r.cls) << ','
     << (r.in_cage ? 1 : 0) << ',' << r.nu2 << '\n';
}

inline nlohmann::json to_json(const SweepRecord& r) {
  return {{"p", r.p},
          {"mod5", r.mod5},
          {"pisano", r.pisano},
          {"ord111", r.ord111},
          {"class", std::string(to_string(r.cls))},
          {"in_cage", r.in_cage},
          {"nu2", r.nu2}};
}

inline void write_jsonl_row(const SweepRecord& r, std::ostream& os) { os << to_json(r).dump() << '\n'; }

inline void write_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
  write_csv_header(os);
  for (const auto& r : records) write_csv_row(r, os);
}

inline void write_jsonl(const std::vector<SweepRecord>& records, std::ostream& os) {
  for (const auto& r : records) write_jsonl_row(r, os);
}

namespace detail {

inline CoordKind parse_kind_or_throw(const std::string& s) {
  auto k = parse_coord_kind(s);
  if (!k) throw InvalidArgument("unknown coordinate class '" + s + "'");
  return *k;
}

inline bool parse_bool(const std::string& s) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false") return false;
  throw InvalidArgument("bad boolean '" + s + "'");
}

}  // namespace detail

inline std::vector<SweepRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kSweepCsvHeader) throw InvalidArgument("missing sweep CSV header");
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 7) throw InvalidArgument("sweep CSV row needs 7 fields: " + line);
    SweepRecord r;
    r.p = std::stoull(f[0]);
    r.mod5 = std::stoull(f[1]);
    r.pisano = std::stoull(f[2]);
    r.ord111 = std::stoull(f[3]);
    r.cls = detail::parse_kind_or_throw(f[4]);
    r.in_cage = detail::parse_bool(f[5]);
    r.nu2 = std::stoi(f[6]);
    out.push_back(r);
  }
  return out;
}

inline SweepRecord from_json(const nlohmann::json& j) {
  SweepRecord r;
  r.p = j.at("p").get<u64>();
  r.mod5 = j.at("mod5").get<u64>();
  r.pisano = j.at("pisano").get<u64>();
  r.ord111 = j.at("ord111").get<u64>();
  r.cls = detail::parse_kind_or_throw(j.at("class").get<std::string>());
  r.in_cage = j.at("in_cage").get<bool>();
  r.nu2 = j.at("nu2").get<int>();
  return r;
}

inline std::vector<SweepRecord> read_jsonl(std::istream& is) {
  std::vector<SweepRecord> out;
  for (std::string line; std::getline(is, line);) {
    if (line.empty()) continue;
    out.push_back(from_json(nlohmann::json::parse(line)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

/// Line chart of the running density, log-scaled x axis, y in [0, 100].
inline void write_svg(const std::vector<DensityPoint>& series, std::ostream& os) {
  if (series.empty()) throw EmptyInput("no records to plot");
  constexpr double W = 800, H = 500, L = 70, R = 30, T = 40, B = 60;
  double lo = std::log10(static_cast<double>(series.front().p));
  double hi = std::log10(static_cast<double>(series.back().p));
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  auto sx = [&](double lp) { return L + (lp - lo) / (hi - lo) * (W - L - R); };
  auto sy = [&](double pct) { return T + (100.0 - pct) / 100.0 * (H - T - B); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
     << "Percent of primes p with (1,1,1) in the cage</text>\n";

  for (int pct = 0; pct <= 100; pct += 25) {
    os << "<line x1=\"" << num(L) << "\" y1=\"" << num(sy(pct)) << "\" x2=\"" << num(W - R) << "\" y2=\"" << num(sy(pct))
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << num(L - 8) << "\" y=\"" << num(sy(pct) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << pct << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(lo - 1e-9)); d <= static_cast<int>(std::floor(hi + 1e-9)); ++d) {
    os << "<line x1=\"" << num(sx(d)) << "\" y1=\"" << num(T) << "\" x2=\"" << num(sx(d)) << "\" y2=\"" << num(H - B)
       << "\" stroke=\"#ddd\"/>\n";
    os << "<text x=\"" << num(sx(d)) << "\" y=\"" << num(H - B + 18)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e" << d << "</text>\n";
  }
  os << "<line x1=\"" << num(L) << "\" y1=\"" << num(sy(50)) << "\" x2=\"" << num(W - R) << "\" y2=\"" << num(sy(50))
     << "\" stroke=\"#c33\" stroke-dasharray=\"6,4\"/>\n";
  os << "<rect x=\"" << num(L) << "\" y=\"" << num(T) << "\" width=\"" << num(W - L - R) << "\" height=\""
     << num(H - T - B) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">prime bound (log scale)</text>\n";
  os << "<text x=\"18\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
     << "transform=\"rotate(-90 18 " << H / 2 << ")\">percent in cage</text>\n";

  os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (k) os << ' ';
    os << num(sx(std::log10(static_cast<double>(series[k].p)))) << ',' << num(sy(series[k].percent));
  }
  os << "\"/>\n</svg>\n";
}

inline void emit_svg(const std::vector<SweepRecord>& records, std::ostream& os) {
  if (records.empty()) throw EmptyInput("no records to plot");
  DensityAccumulator acc;
  for (const auto& r : records) acc.add(r);
  write_svg(acc.series(), os);
}

}  // namespace markoff
