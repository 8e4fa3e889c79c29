#pragma once
// ============================================================================
// check.hpp
// Shared runner for the acceptance binaries.
// ============================================================================
//
// Each criterion is a pure function of fixed seeds. It returns a verdict
// (pass/fail plus a short detail string for the report line) and a metric
// payload: the exact text later written to the criterion's metric file.
// The runner times the function against its budget and prints one line:
//
//   [PASS] criterion 3: equilibrium first-order condition sweep (... ; 4.1s, limit 60s)
//
// The determinism criterion re-derives every payload from scratch and
// byte-compares the two passes before anything is written to disk.
// ============================================================================

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace acceptance {

struct Verdict {
  bool pass = false;
  std::string detail;   // short measured numbers for the report line
  std::string payload;  // metric file body (byte-compared across passes)
};

struct Outcome {
  int id = 0;
  std::string file;  // metric file name, empty when the criterion has none
  Verdict v;
  double seconds = 0.0;
};

class Runner {
 public:
  // Runs the criterion, enforces its runtime budget, prints the verdict line.
  const Outcome& run(int id, const std::string& name, const std::string& file,
                     double limit_s, const std::function<Verdict()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = fn();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (dt >= limit_s) v.pass = false;
    std::printf("[%s] criterion %d: %s (%s; %.1fs, limit %.0fs)\n",
                v.pass ? "PASS" : "FAIL", id, name.c_str(), v.detail.c_str(),
                dt, limit_s);
    std::fflush(stdout);
    if (!v.pass) ++failures_;
    outcomes_.push_back(Outcome{id, file, std::move(v), dt});
    return outcomes_.back();
  }

  // For criteria reported without the timer wrapper (the determinism check).
  void report(int id, const std::string& name, bool pass,
              const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures_;
  }

  int summary(const char* binary_name) const {
    std::printf("%s: %zu criteria checked, %d failed\n", binary_name,
                outcomes_.size() + extra_checked_, failures_);
    return failures_ == 0 ? 0 : 1;
  }

  void count_extra() { ++extra_checked_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  int failures() const { return failures_; }

 private:
  std::vector<Outcome> outcomes_;
  int failures_ = 0;
  std::size_t extra_checked_ = 0;
};

}  // namespace acceptance
