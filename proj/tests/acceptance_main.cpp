// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Tolerances and sample counts are pinned here on purpose; loosening them
// is a behavior change, not a test tweak.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfs/bipartite.hpp"
#include "wfs/generators.hpp"
#include "wfs/optimize.hpp"
#include "wfs/oracle.hpp"
#include "wfs/parallel.hpp"
#include "wfs/random.hpp"
#include "wfs/scenario.hpp"
#include "wfs/witness.hpp"

namespace {

constexpr double kTol = 1e-9;
constexpr double kOracleTol = 1e-12;
constexpr double kOptSlack = 1e-6;

int g_failures = 0;

void fail_if(bool cond, const std::string& msg) {
  if (cond) throw std::runtime_error(msg);
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void criterion(int index, const std::string& label, double time_limit_s,
               const std::function<std::string()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (ok && time_limit_s > 0.0 && secs > time_limit_s) {
    ok = false;
    detail = fmt("time limit %.0f s exceeded", time_limit_s);
  }
  if (!ok) ++g_failures;
  std::printf("%s criterion %d: %s (%s) [%.1f s]\n", ok ? "PASS" : "FAIL", index,
              label.c_str(), detail.c_str(), secs);
  std::fflush(stdout);
}

double reduce_max(const std::vector<double>& v) {
  double m = -1e300;
  for (double x : v) m = std::max(m, x);
  return m;
}

std::size_t count_bad(const std::vector<unsigned char>& v) {
  std::size_t n = 0;
  for (unsigned char b : v) n += b;
  return n;
}

wfs::QVector random_q(std::size_t d, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  wfs::QVector q;
  q.q.resize(d);
  double tot = 0.0;
  for (double& v : q.q) {
    v = expo(rng);
    tot += v;
  }
  for (double& v : q.q) v /= tot;
  return q;
}

}  // namespace

int main() {
  using namespace wfs;

  criterion(1, "reference construction gives T = 1 under NoM and T = 1/2 under AoM", 1.0,
            [] {
              Scenario s = violating_nom_realization(2, QVector::uniform(2));
              const double nom = eval_T(s, 1).value;
              s.dynamics = Dynamics::AoM;
              const double aom = eval_T(s, 1).value;
              fail_if(std::abs(nom - 1.0) > kTol, fmt("NoM value %.12g != 1", nom));
              fail_if(std::abs(aom - 0.5) > kTol, fmt("AoM value %.12g != 1/2", aom));
              return fmt("NoM T = %.12f, AoM T = %.12f", nom, aom);
            });

  criterion(2, "100000 Haar AoM scenarios respect T <= 1/2 and the rank-one bound", 120.0,
            [] {
              const std::size_t total = 100000;
              std::vector<double> tvals(total, -1e300);
              std::vector<unsigned char> bad(total, 0);
              parallel_for(total, [&](std::size_t i) {
                auto rng = make_stream(mix_seed(0xACCE7702ULL, i));
                const std::size_t d = 2 + i % 3;
                const Scenario sc =
                    random_scenario(d, 1, 2, Dynamics::AoM, OpsKind::BlockUnitary, rng);
                if (!check_rank1_bound(sc, 1, kTol)) bad[i] = 1;
                if (d == 2) {
                  const WitnessReport r = eval_T(sc, 1);
                  tvals[i] = r.value;
                  if (r.value > 0.5 + kTol) bad[i] = 1;
                }
              });
              const std::size_t violations = count_bad(bad);
              fail_if(violations != 0, fmt("%zu bound violations", violations));
              return fmt("max T = %.12f, violations = 0", reduce_max(tvals));
            });

  criterion(3, "100 random q: saturating AoM = max q, NoM = 1, optimizer stays below",
            300.0, [] {
              double worst_sat = 0.0, worst_nom = 0.0, worst_opt = -1e300;
              for (std::size_t i = 0; i < 100; ++i) {
                auto rng = make_stream(mix_seed(0xACCE7703ULL, i));
                const std::size_t d = 2 + i % 3;
                const QVector q = random_q(d, rng);
                const double sat =
                    eval_Tq(saturating_aom_realization(d, q), 1, q).value;
                const double nom =
                    eval_Tq(violating_nom_realization(d, q), 1, q).value;
                worst_sat = std::max(worst_sat, std::abs(sat - q.max()));
                worst_nom = std::max(worst_nom, std::abs(nom - 1.0));
                fail_if(std::abs(sat - q.max()) > kTol,
                        fmt("saturating value %.12g vs max q %.12g", sat, q.max()));
                fail_if(std::abs(nom - 1.0) > kTol, fmt("NoM value %.12g != 1", nom));
                MaximizeOptions opt;
                opt.budget = 4000;
                opt.seed = mix_seed(0xACCE7713ULL, i);
                opt.q = q;
                opt.dim = d;
                const MaximizeResult best = maximize_witness(WitnessKind::Tq, Dynamics::AoM, opt);
                worst_opt = std::max(worst_opt, best.report.value - q.max());
                fail_if(best.report.value > q.max() + kOptSlack,
                        fmt("optimizer reached %.12g above max q %.12g", best.report.value,
                            q.max()));
              }
              return fmt("|sat - max q| <= %.2e, |nom - 1| <= %.2e, opt excess <= %.2e",
                         worst_sat, worst_nom, worst_opt);
            });

  criterion(4, "1000 unital mixture channels keep T <= 1/2 under AoM", 60.0, [] {
    const std::size_t total = 1000;
    std::vector<double> tvals(total, -1e300);
    std::vector<unsigned char> bad(total, 0);
    parallel_for(total, [&](std::size_t i) {
      auto rng = make_stream(mix_seed(0xACCE7704ULL, i));
      const Scenario sc =
          random_scenario(2, 1, 2, Dynamics::AoM, OpsKind::MixtureChannel, rng);
      const WitnessReport r = eval_T(sc, 1);
      tvals[i] = r.value;
      if (r.value > 0.5 + kTol) bad[i] = 1;
    });
    const std::size_t violations = count_bad(bad);
    fail_if(violations != 0, fmt("%zu channel violations", violations));
    return fmt("max T = %.12f, violations = 0", reduce_max(tvals));
  });

  criterion(5, "matching NoM unitary reproduces 100 random AoM tables", 60.0, [] {
    std::vector<double> devs(100, 0.0);
    parallel_for(devs.size(), [&](std::size_t i) {
      auto rng = make_stream(mix_seed(0xACCE7705ULL, i));
      const std::size_t d = 2 + i % 3;
      const std::size_t n = 1 + i % 2;
      const std::size_t m = 2 + i % 2;
      const Scenario sc = random_scenario(d, n, m, Dynamics::AoM, OpsKind::BlockUnitary, rng);
      const Scenario ns = matching_nom_scenario(sc);
      double dev = 0.0;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t w = 0; w < m; ++w) {
          const OutcomeDistribution pa = run_trial(sc, x, w);
          const OutcomeDistribution pn = run_trial(ns, x, w);
          for (std::size_t k = 0; k < pa.p.size(); ++k)
            dev = std::max(dev, std::abs(pa.p[k] - pn.p[k]));
        }
      devs[i] = dev;
    });
    const double worst = reduce_max(devs);
    fail_if(worst > kTol, fmt("max table deviation %.3e", worst));
    return fmt("max table deviation = %.3e", worst);
  });

  criterion(6, "bipartite reference strategy hits P0 = 3/4, P1 = PS = cos^2(pi/8)", 5.0,
            [] {
              const BipartiteScenario bs = nom_violating_strategy();
              const JointTable t = joint_table(bs);
              const PSReport r = eval_P0_P1_PS(t);
              fail_if(std::abs(r.p0 - 0.75) > kTol, fmt("P0 = %.12g", r.p0));
              fail_if(std::abs(r.p1 - kTsirelson) > kTol, fmt("P1 = %.12g", r.p1));
              fail_if(std::abs(r.ps - kTsirelson) > kTol, fmt("PS = %.12g", r.ps));
              fail_if(!check_no_signalling(t, kTol), "no-signalling check failed");
              return fmt("P0 = %.9f, P1 = %.9f, PS = %.9f, no-signalling ok", r.p0, r.p1,
                         r.ps);
            });

  criterion(7, "10000 random AoM bipartite scenarios respect the PS and P1 caps", 300.0,
            [] {
              const std::size_t total = 10000;
              std::vector<double> ps_vals(total, -1e300);
              std::vector<unsigned char> bad(total, 0);
              parallel_for(total, [&](std::size_t i) {
                auto rng = make_stream(mix_seed(0xACCE7707ULL, i));
                const BipartiteScenario bs =
                    random_bipartite_scenario(Dynamics::AoM, rng);
                const PSReport r = eval_P0_P1_PS(bs);
                ps_vals[i] = r.ps;
                const double p1_cap =
                    std::min(kTsirelson, std::max(r.p0, 1.5 - r.p0));
                if (r.ps > 0.75 + kTol || r.p1 > p1_cap + kTol) bad[i] = 1;
                const ExtremalCheck ec = check_chsh_extremal_decomposition(bs, kTol);
                if (!ec.ok) bad[i] = 1;
                for (double g : ec.relabeled_chsh)
                  if (g > kTsirelson + kTol) bad[i] = 1;
              });
              const std::size_t violations = count_bad(bad);
              fail_if(violations != 0, fmt("%zu cap/enumeration violations", violations));
              return fmt("max PS = %.12f, violations = 0", reduce_max(ps_vals));
            });

  criterion(8, "oracle agreement within 1e-12 on 1000 + 1000 random scenarios", 600.0, [] {
    std::vector<double> single_dev(1000, 0.0);
    parallel_for(single_dev.size(), [&](std::size_t i) {
      auto rng = make_stream(mix_seed(0xACCE7708ULL, i));
      const OpsKind kind = i % 3 == 0   ? OpsKind::BlockUnitary
                           : i % 3 == 1 ? OpsKind::MixtureChannel
                                        : OpsKind::SinkhornChannel;
      const std::size_t d = 2 + i % 3;
      const std::size_t n = kind == OpsKind::SinkhornChannel ? 1 : 1 + i % 2;
      const Dynamics dyn = i % 2 == 0 ? Dynamics::AoM : Dynamics::NoM;
      const Scenario sc = random_scenario(d, n, 2, dyn, kind, rng);
      double dev = 0.0;
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t w = 0; w < 2; ++w) {
          const OutcomeDistribution fast = run_trial(sc, x, w);
          const OutcomeDistribution slow = oracle::trial(sc, x, w);
          for (std::size_t k = 0; k < fast.p.size(); ++k)
            dev = std::max(dev, std::abs(fast.p[k] - slow.p[k]));
        }
      single_dev[i] = dev;
    });
    const double worst_single = reduce_max(single_dev);
    fail_if(worst_single > kOracleTol, fmt("single-party deviation %.3e", worst_single));

    std::vector<double> bi_dev(1000, 0.0);
    parallel_for(bi_dev.size(), [&](std::size_t i) {
      auto rng = make_stream(mix_seed(0xACCE7718ULL, i));
      const Dynamics dyn = i % 2 == 0 ? Dynamics::AoM : Dynamics::NoM;
      const BipartiteScenario bs = i % 4 < 3
                                       ? random_bipartite_scenario(dyn, rng)
                                       : random_bipartite_channel_scenario(dyn, 3, rng);
      const JointTable fast = joint_table(bs);
      const JointTable slow = oracle::bipartite_table(bs);
      double dev = 0.0;
      for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
          for (std::size_t w = 0; w < 2; ++w)
            for (std::size_t a = 0; a < 2; ++a)
              for (std::size_t b = 0; b < 2; ++b)
                dev = std::max(dev, std::abs(fast.p(a, b, x, y, w) - slow.p(a, b, x, y, w)));
      bi_dev[i] = dev;
    });
    const double worst_bi = reduce_max(bi_dev);
    fail_if(worst_bi > kOracleTol, fmt("bipartite deviation %.3e", worst_bi));
    return fmt("single-party dev = %.3e, bipartite dev = %.3e", worst_single, worst_bi);
  });

  criterion(9, "sweep CSV output is byte-identical across thread counts", 120.0, [] {
    const auto run_all = [] {
      std::string out;
      out += sweep_csv(bound_falsification_sweep(WitnessKind::T, Dynamics::AoM, 200, 42));
      out += sweep_csv(bound_falsification_sweep(WitnessKind::Tq, Dynamics::NoM, 100, 43));
      out += sweep_csv(bound_falsification_sweep(WitnessKind::PS, Dynamics::AoM, 100, 44));
      out += region_csv(feasible_region_sweep(6, 45));
      return out;
    };
    setenv("WFS_THREADS", "1", 1);
    const std::string serial = run_all();
    setenv("WFS_THREADS", "4", 1);
    const std::string threaded = run_all();
    unsetenv("WFS_THREADS");
    fail_if(serial != threaded, "outputs differ between WFS_THREADS=1 and 4");
    return fmt("%zu bytes identical for WFS_THREADS = 1 and 4", serial.size());
  });

  if (g_failures == 0) {
    std::printf("all 9 criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
