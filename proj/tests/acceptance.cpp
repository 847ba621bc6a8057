// Acceptance suite: one line per criterion, exact rational checks, wall-clock
// limits enforced where stated. Exit status is the number of failures.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "coopetition/serialize.hpp"
#include "coopetition/sweep.hpp"
#include "lp_oracle.hpp"
#include "test_support.hpp"

using namespace coopetition;
using namespace coopetition::testing;

namespace {

struct Harness {
    int failures = 0;

    void run(int id, const std::string& name, double limit_seconds,
             const std::function<bool(std::string&)>& body) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = body(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (limit_seconds > 0 && elapsed > limit_seconds) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("over time limit");
        }
        std::ostringstream line;
        line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << name << " ("
             << elapsed << " s";
        if (limit_seconds > 0) line << ", limit " << limit_seconds << " s";
        line << ")";
        if (!ok && !detail.empty()) line << " -- " << detail;
        std::cout << line.str() << "\n";
        if (!ok) ++failures;
    }
};

bool expect(std::string& detail, bool ok, const std::string& what) {
    if (!ok) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
    return ok;
}

bool sweep_clean(std::string& detail, InstanceProfile profile, int count, int nplayers = 2,
                 std::uint64_t seed_start = 1) {
    SweepConfig config;
    config.profile = profile;
    config.count = count;
    config.seed_start = seed_start;
    config.nplayers = nplayers;
    const SweepSummary summary = run_sweep(config);
    if (summary.failed > 0) {
        for (const SweepOutcome& o : summary.outcomes) {
            if (!o.pass) {
                expect(detail, false,
                       instance_profile_name(profile) + " seed " + std::to_string(o.seed) +
                           ": " + o.detail);
                break;
            }
        }
        return false;
    }
    return true;
}

const Rat kA = rat(11, 20), kB = rat(5, 20), kC = rat(3, 20), kD = rat(1, 20);

}  // namespace

int main() {
    Harness h;

    h.run(1, "opening example reproduces exactly", 1.0, [](std::string& detail) {
        bool ok = true;
        const StrategyProfile dominant = intro_dominant();
        const ValidatedGame plain = validate_game(intro_spec(kA, kB, kC, kD, false));
        ok &= expect(detail,
                     expected_utilities(plain, dominant) ==
                         std::vector<Rat>{rat(17, 40), rat(21, 40)},
                     "unmediated payoffs without the competitor");
        const ValidatedGame with = validate_game(intro_spec(kA, kB, kC, kD, true));
        ok &= expect(detail,
                     expected_utilities(with, dominant) ==
                         std::vector<Rat>{rat(31, 120), rat(37, 120)},
                     "unmediated payoffs with the competitor");

        const MediatorSpec reveal_plain = equilibrium_revelation_mediator(plain, dominant);
        const std::vector<Rat> plain_utils =
            expected_utilities(plain, induced_game(plain, reveal_plain).obedient, &reveal_plain);
        ok &= expect(detail,
                     plain_utils == std::vector<Rat>{rat(17, 40) + kD / 2, rat(21, 40) + kD / 2},
                     "revealing mediator must add half the unserved mass each");
        const MediatorSpec reveal_with = equilibrium_revelation_mediator(with, dominant);
        const std::vector<Rat> with_utils =
            expected_utilities(with, induced_game(with, reveal_with).obedient, &reveal_with);
        ok &= expect(detail,
                     with_utils ==
                         std::vector<Rat>{rat(31, 120) + kD / 3, rat(37, 120) + kD / 3},
                     "revealing mediator must add a third of the unserved mass each");
        ok &= expect(detail, intro_example(kA, kB, kC, kD, false).all_pass,
                     "scenario claims without the competitor");
        ok &= expect(detail, intro_example(kA, kB, kC, kD, true).all_pass,
                     "scenario claims with the competitor");
        return ok;
    });

    h.run(2, "threshold mediators certify on 200-seed jointly complete sweeps", 30.0,
          [](std::string& detail) {
              bool ok = sweep_clean(detail, InstanceProfile::JciNoAmazon, 200);
              ok &= sweep_clean(detail, InstanceProfile::JciAmazon, 200);
              return ok;
          });

    h.run(3, "competitor-side mediators reveal fully and pin the binding player", 0,
          [](std::string& detail) {
              bool ok = true;
              for (std::uint64_t seed = 1; seed <= 200 && ok; ++seed) {
                  const RandomInstance inst = random_instance(seed, InstanceProfile::JciAmazon);
                  const ValidatedGame game = validate_game(inst.game);
                  const VerificationReport report =
                      verify_mediator(game, mediator_amazon(game, inst.v), inst.v);
                  ok &= expect(detail, !report.fully_revealing_to.empty(),
                               "seed " + std::to_string(seed) + ": nobody fully revealed");
                  if (3 * rmax(inst.v[0], inst.v[1]) > 1) {
                      bool binds = false;
                      for (PlayerId p : report.fully_revealing_to) {
                          if (report.ir_slacks[p] == 0) binds = true;
                      }
                      ok &= expect(detail, binds,
                                   "seed " + std::to_string(seed) + ": no binding slack");
                  }
              }
              return ok;
          });

    h.run(4, "segment-class sweeps: mixed ratio >= 3/4, balanced ratio = 1", 60.0,
          [](std::string& detail) {
              bool ok = sweep_clean(detail, InstanceProfile::NoJciMixed, 200);
              ok &= sweep_clean(detail, InstanceProfile::NoJciBalanced, 200);
              return ok;
          });

    h.run(5, "tightness families hit their exact ratios", 10.0, [](std::string& detail) {
        bool ok = true;
        for (const Rat eps : {rat(1, 4), rat(1, 10), rat(1, 100)}) {
            const ScenarioResult result = example_ir(eps);
            const Rat expected = (1 + eps) * 3 / 4;
            ok &= expect(detail,
                         result.all_pass &&
                             result.reports.front().second.ratio == expected,
                         "participation family at eps " + to_string(eps));
        }
        for (const Rat eps : {rat(1, 2), rat(1, 10)}) {
            const ScenarioResult result = example_ic(eps);
            const Rat expected = (Rat(2) + 4 * eps / 3) / (Rat(5) / 2 + eps);
            ok &= expect(detail,
                         result.all_pass &&
                             result.reports.front().second.ratio == expected,
                         "obedience family at eps " + to_string(eps));
        }
        const ScenarioResult tiny = example_ic(rat(1, 1000));
        const Rat gap = tiny.reports.front().second.ratio - rat(4, 5);
        ok &= expect(detail, tiny.all_pass && gap > 0 && gap < rat(1, 1000),
                     "obedience family limit at eps 1/1000");
        return ok;
    });

    h.run(6, "closed-form program optimum matches vertex enumeration on a 33x33 grid", 0,
          [](std::string& detail) {
              bool ok = true;
              for (long n1 = 0; n1 <= 32 && ok; ++n1) {
                  for (long n2 = 0; n2 <= 32 && ok; ++n2) {
                      const Rat v1 = rat(n1, 64), v2 = rat(n2, 64);
                      const auto oracle = lp_vertex_oracle(v1, v2);
                      const Rat vi = rmax(v1, v2), vj = rmin(v1, v2);
                      if (2 * vi + vj > 1) {
                          ok &= expect(detail, !oracle.has_value(),
                                       "oracle feasible where the closed form is not");
                          continue;
                      }
                      if (!expect(detail, oracle.has_value(), "oracle infeasible unexpectedly")) {
                          return false;
                      }
                      const LpSolution sol = lp_opt({v1, v2});
                      ok &= expect(detail, sol.value == *oracle,
                                   "mismatch at (" + to_string(v1) + ", " + to_string(v2) +
                                       "): " + to_string(sol.value) + " vs " +
                                       to_string(*oracle));
                  }
              }
              return ok;
          });

    h.run(7, "hypothetical-deviation inequalities hold across the competitor sweep", 0,
          [](std::string& detail) {
              bool ok = true;
              for (std::uint64_t seed = 1; seed <= 200 && ok; ++seed) {
                  const RandomInstance inst = random_instance(seed, InstanceProfile::JciAmazon);
                  const ValidatedGame game = validate_game(inst.game);
                  const HypotheticalChecks checks =
                      hypothetical_deviation_checks(game, mediator_amazon(game, inst.v));
                  ok &= expect(detail, checks.responder_not_better,
                               "seed " + std::to_string(seed) + ": responder gained");
                  ok &= expect(detail, checks.welfare_not_lower,
                               "seed " + std::to_string(seed) + ": welfare dropped");
              }
              return ok;
          });

    h.run(8, "sharing-direction orderings and strict-benefit verdicts", 0,
          [](std::string& detail) {
              bool ok = true;
              ok &= expect(detail,
                           sharing_comparison(SharingSetting::MoreSharingWithCompetitor).all_pass,
                           "orderings where the competitor invites sharing");
              ok &= expect(
                  detail,
                  sharing_comparison(SharingSetting::MoreSharingWithoutCompetitor).all_pass,
                  "orderings where the competitor suppresses sharing");
              const ValidatedGame plain =
                  validate_game(intro_spec(rat(3, 5), rat(1, 5), rat(1, 5), Rat(0), false));
              ok &= expect(detail, !strict_benefit(plain).beneficial,
                           "fully served market should not benefit");
              const ValidatedGame with =
                  validate_game(intro_spec(rat(3, 5), rat(1, 5), rat(1, 5), Rat(0), true));
              ok &= expect(detail, strict_benefit(with).beneficial,
                           "competitor-side benefit missing");
              const ValidatedGame default_plain =
                  validate_game(intro_spec(kA, kB, kC, kD, false));
              ok &= expect(detail, strict_benefit(default_plain).beneficial,
                           "default opening game should benefit");
              return ok;
          });

    h.run(9, "n-player revelation: sweeps, boundary certification", 30.0,
          [](std::string& detail) {
              bool ok = sweep_clean(detail, InstanceProfile::NPlayerJci, 30, 3);
              ok &= sweep_clean(detail, InstanceProfile::NPlayerJci, 30, 4, 1000);
              for (int n : {3, 4}) {
                  const Rat bound = rat(1, n + 1);
                  const ScenarioResult at = nplayer_claim(n, std::vector<Rat>(n, bound));
                  ok &= expect(detail, at.all_pass && at.reports.front().second.certified,
                               "boundary base values must certify (n=" + std::to_string(n) + ")");
                  const ScenarioResult above =
                      nplayer_claim(n, std::vector<Rat>(n, bound + rat(1, 100)));
                  ok &= expect(detail,
                               above.all_pass && !above.reports.front().second.certified,
                               "base values past the boundary must fail participation (n=" +
                                   std::to_string(n) + ")");
              }
              return ok;
          });

    h.run(10, "transfer mediators reach 2/3 with pointwise participation", 0,
          [](std::string& detail) {
              bool ok = true;
              for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
                  const RandomInstance inst =
                      random_instance(seed, InstanceProfile::TransferJciAmazon);
                  const ValidatedGame game = validate_game(inst.game);
                  ok &= expect(detail, rmax(inst.v[0], inst.v[1]) > rat(1, 3),
                               "generator must draw past the equal split");
                  const VerificationReport report =
                      verify_mediator(game, transfer_mediator(game, inst.v), inst.v);
                  ok &= expect(detail,
                               report.certified && report.welfare == rat(2, 3) &&
                                   report.ir_slacks[0] >= 0 && report.ir_slacks[1] >= 0,
                               "seed " + std::to_string(seed) + " not certified at 2/3");
              }
              return ok;
          });

    if (h.failures == 0) {
        std::cout << "all acceptance criteria pass\n";
    } else {
        std::cout << h.failures << " acceptance criteria FAILED\n";
    }
    return h.failures;
}
