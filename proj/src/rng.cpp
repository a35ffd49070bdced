#include "channelfield/rng.hpp"

#include <cmath>

namespace channelfield {

namespace {
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
}  // namespace

void Philox::refill() {
    std::array<std::uint32_t, 4> x = ctr_;
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            k[0] += kWeyl0;
            k[1] += kWeyl1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
        x = {static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1],
             static_cast<std::uint32_t>(p0)};
    }
    out_ = x;
    if (++ctr_[0] == 0) ++ctr_[1];
    idx_ = 0;
}

double Philox::exp1() { return -std::log(u01()); }

double Philox::pareto(double alpha) { return std::pow(u01(), -1.0 / alpha); }

std::uint64_t Philox::poisson(double mean) {
    const auto small = [this](double m) {
        const double limit = std::exp(-m);
        double prod = 1.0;
        std::uint64_t k = 0;
        do {
            ++k;
            prod *= u01();
        } while (prod > limit);
        return k - 1;
    };
    std::uint64_t total = 0;
    while (mean > 40.0) {
        total += small(40.0);
        mean -= 40.0;
    }
    if (mean > 0.0) total += small(mean);
    return total;
}

}  // namespace channelfield
