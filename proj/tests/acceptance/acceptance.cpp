// Runs every registered check, grouped by acceptance criterion, and prints one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <dunklkit/verify.hpp>

#include <chrono>
#include <cstdio>
#include <map>
#include <string>

using namespace dunklkit;

namespace {

struct Criterion {
  const char* title;
  double time_limit_s;  // 0 when the criterion states no runtime bound
};

const std::map<int, Criterion> criteria{
    {1, {"exact commutativity of Dunkl operators on z2, a1xa1, a2, b2", 30}},
    {2, {"exact Gaussian, pairing, transform and Heckman identities", 0}},
    {3, {"exact intertwiner identities", 0}},
    {4, {"kernel series against closed form and growth bounds", 0}},
    {5, {"Paley-Wiener support and forward profile, rank one", 300}},
    {6, {"radial reduction: Laguerre closed form and 1-D transform", 0}},
    {7, {"shift identity, symbolic and numeric", 0}},
    {8, {"Cherednik limit transition and Gamma-ratio limit", 0}},
    {9, {"numeric intertwiner round trip, intertwining and support shrink", 0}},
    {10, {"flat motion group: radial part, factorization, sphere average, Abel inversion", 120}},
};

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  const VerifyReport rep = run_verify("all", 0);
  const double total_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  struct Tally {
    std::size_t checks = 0, failed = 0;
    double seconds = 0;
    std::string first_failure;
  };
  std::map<int, Tally> by;
  for (const auto& c : rep.checks) {
    Tally& t = by[c.criterion];
    ++t.checks;
    t.seconds += c.runtime_ms / 1000;
    if (c.status != CheckStatus::pass) {
      ++t.failed;
      if (t.first_failure.empty())
        t.first_failure = c.id + " residual " + format_double(c.residual) + " tol " + format_double(c.tolerance) +
                          (c.witness.empty() ? "" : " [" + c.witness + "]");
    }
  }

  bool all_ok = true;
  for (const auto& [n, crit] : criteria) {
    const Tally& t = by[n];
    std::string why;
    if (t.checks == 0) why = "no checks registered";
    else if (t.failed) why = std::to_string(t.failed) + " failing, first " + t.first_failure;
    else if (crit.time_limit_s > 0 && t.seconds >= crit.time_limit_s)
      why = "runtime " + format_double(t.seconds) + " s exceeds " + format_double(crit.time_limit_s) + " s";
    const bool ok = why.empty();
    all_ok = all_ok && ok;
    std::printf("%s criterion %d: %s (%zu checks, %.2f s%s%s)\n", ok ? "PASS" : "FAIL", n, crit.title, t.checks,
                t.seconds, ok ? "" : "; ", why.c_str());
  }
  for (const auto& [n, t] : by)
    if (!criteria.count(n)) {
      std::printf("FAIL check ids mapped to unknown criterion %d\n", n);
      all_ok = false;
    }
  std::printf("%s: %zu checks in %.1f s\n", all_ok ? "ACCEPTED" : "REJECTED", rep.checks.size(), total_s);
  return all_ok ? 0 : 1;
}
