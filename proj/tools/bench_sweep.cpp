// Times the serial reference against the OpenMP sweep runner on identical
// seed ranges and checks that the outcomes agree.

#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "coopetition/sweep.hpp"

using namespace coopetition;

namespace {

double run_timed(const SweepConfig& config, SweepSummary& summary) {
    const auto start = std::chrono::steady_clock::now();
    summary = run_sweep(config);
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs parallel sweep benchmark"};
    std::string profile_name = "jci_A";
    int count = 400;
    std::uint64_t seed = 1;
    app.add_option("--profile", profile_name);
    app.add_option("--count", count);
    app.add_option("--seed", seed);
    CLI11_PARSE(app, argc, argv);

    SweepConfig config;
    config.profile = parse_instance_profile(profile_name);
    config.seed_start = seed;
    config.count = count;
    config.nplayers = 3;

    config.parallel = false;
    SweepSummary serial;
    const double serial_s = run_timed(config, serial);

    config.parallel = true;
    SweepSummary parallel;
    const double parallel_s = run_timed(config, parallel);

    bool same = serial.outcomes.size() == parallel.outcomes.size();
    for (size_t k = 0; same && k < serial.outcomes.size(); ++k) {
        same = serial.outcomes[k].seed == parallel.outcomes[k].seed &&
               serial.outcomes[k].pass == parallel.outcomes[k].pass &&
               serial.outcomes[k].detail == parallel.outcomes[k].detail;
    }

    std::cout << "profile " << profile_name << ", " << count << " instances\n";
    std::cout << "  serial    " << serial_s << " s (" << serial.passed << " passed)\n";
    std::cout << "  parallel  " << parallel_s << " s (" << parallel.passed << " passed)\n";
    if (parallel_s > 0) std::cout << "  speedup   " << serial_s / parallel_s << "x\n";
    std::cout << "  outcomes  " << (same ? "identical" : "MISMATCH") << "\n";
    return same ? 0 : 1;
}
