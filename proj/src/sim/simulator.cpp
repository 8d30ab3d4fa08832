#include <algorithm>
#include <random>

#include "trajplan/sim/scenario.hpp"

namespace trajplan::sim {

namespace {

constexpr int kMaxAttempts = 10000;
constexpr std::uint64_t kStreamSalt = 0x9E3779B97F4A7C15ULL;

// Uniform doubles from raw engine output; identical on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

bool at_least_as_good(mcda::Direction d, double a, double b) {
    return d == mcda::Direction::Benefit ? a >= b : a <= b;
}

bool dominates(const mcda::CriteriaSet& criteria, const std::vector<double>& a,
               const std::vector<double>& b) {
    bool strict = false;
    for (std::size_t j = 0; j < criteria.size(); ++j) {
        if (!at_least_as_good(criteria[j].direction, a[j], b[j])) return false;
        if (a[j] != b[j]) strict = true;
    }
    return strict;
}

bool anchor_holds(const mcda::DecisionMatrix& m, mcda::AlternativeId anchor) {
    const auto* top = m.find(anchor);
    for (const auto& a : m.alternatives())
        if (a.id != anchor && dominates(m.criteria(), a.values, top->values)) return false;
    try {
        return mcda::topsis(m).best_id == anchor;
    } catch (const mcda::AllInfeasibleError&) {
        return false;
    }
}

}  // namespace

mcda::DecisionMatrix final_matrix(const Scenario& scenario, std::uint64_t seed) {
    validate(scenario);
    const auto criteria = scenario.criteria_set();
    Rng rng(seed);

    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<mcda::Alternative> alts;
        for (std::size_t k = 1; k <= scenario.alternative_count; ++k) {
            const auto id = static_cast<mcda::AlternativeId>(k);
            const PinnedRow* pin = nullptr;
            for (const auto& p : scenario.pinned)
                if (p.id == id) pin = &p;
            mcda::Alternative alt{id, std::nullopt, std::vector<double>(criteria.size())};
            for (std::size_t j = 0; j < criteria.size(); ++j) {
                const auto& noise = scenario.noise.at(criteria[j].id);
                // always draw, so pinned cells do not shift the rest of the stream
                alt.values[j] = rng.uniform(noise.draw_lo, noise.draw_hi);
                if (pin) {
                    if (auto it = pin->values.find(criteria[j].id); it != pin->values.end())
                        alt.values[j] = it->second;
                }
            }
            alts.push_back(std::move(alt));
        }
        mcda::DecisionMatrix m(criteria, std::move(alts));
        if (!scenario.anchor || anchor_holds(m, *scenario.anchor)) return m;
    }
    throw Error(ErrorCode::InvalidScenarioFile,
                "scenario '" + scenario.name + "' cannot keep its anchor on top");
}

std::vector<telemetry::TelemetryFrame> generate_stream(const Scenario& scenario, std::uint64_t seed,
                                                       std::size_t frame_count,
                                                       const std::string& session_id,
                                                       Timestamp start_ts) {
    if (frame_count < 1) throw Error(ErrorCode::InvalidRequest, "frame count must be >= 1");
    const auto target = final_matrix(scenario, seed);
    const auto& criteria = target.criteria();
    Rng rng(seed ^ kStreamSalt);

    std::vector<telemetry::TelemetryFrame> frames;
    frames.reserve(frame_count);
    for (std::size_t k = 0; k < frame_count; ++k) {
        telemetry::TelemetryFrame frame{session_id, std::nullopt,
                                        start_ts + static_cast<Timestamp>(k) * scenario.frame_interval_ms,
                                        {}};
        const bool last = k + 1 == frame_count;
        const bool snapshot = k == 0 || last;
        const double decay =
            last ? 0.0 : static_cast<double>(frame_count - 1 - k) / static_cast<double>(frame_count - 1);

        for (const auto& alt : target.alternatives()) {
            for (std::size_t j = 0; j < criteria.size(); ++j) {
                const double pick = rng.uniform();
                const double u = rng.uniform(-1.0, 1.0);
                if (!snapshot && pick >= 0.3) continue;
                const auto& noise = scenario.noise.at(criteria[j].id);
                const double value =
                    std::clamp(alt.values[j] + noise.jitter * decay * u, noise.range_lo, noise.range_hi);
                frame.updates.push_back({alt.id, criteria[j].id, last ? alt.values[j] : value});
            }
        }
        if (frame.updates.empty()) {
            const auto& alt = target.alternatives().front();
            frame.updates.push_back({alt.id, criteria[0].id, alt.values[0]});
        }
        frames.push_back(std::move(frame));
    }
    return frames;
}

}  // namespace trajplan::sim
