#include "driftmeter/game.hpp"

#include "driftmeter/error.hpp"
#include "driftmeter/rng.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

namespace driftmeter::game {

namespace {

std::string subject_id(std::size_t i, std::size_t n) {
    std::string digits = std::to_string(i + 1);
    const std::size_t width = std::max<std::size_t>(3, std::to_string(n).size());
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return "subject" + digits;
}

// Tokens a conditional cooperator puts in regardless of belief.
constexpr double cooperator_base = 4.0;

int clamp_tokens(double x) {
    const double r = std::nearbyint(x);
    return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(endowment)));
}

std::size_t pick(const ArchetypeMix& mix, double u, std::size_t exclude = all_archetypes.size()) {
    double total = 0.0;
    for (std::size_t a = 0; a < mix.shares.size(); ++a)
        if (a != exclude) total += mix.shares[a];
    if (total <= 0.0) {
        // only the excluded kind has weight; fall back to uniform over the rest
        const std::size_t slot = static_cast<std::size_t>(u * 3.0);
        return slot < exclude ? slot : slot + 1;
    }
    double running = 0.0;
    std::size_t last = 0;
    for (std::size_t a = 0; a < mix.shares.size(); ++a) {
        if (a == exclude || mix.shares[a] <= 0.0) continue;
        running += mix.shares[a] / total;
        last = a;
        if (u < running) return a;
    }
    return last;
}

} // namespace

double payoff(int own, std::span<const int> all_contributions) {
    if (all_contributions.size() != group_size)
        throw Error(ErrorKind::InvalidConfig, "a group has exactly 4 players");
    long sum = 0;
    for (int g : all_contributions) {
        if (g < 0 || g > endowment)
            throw Error(ErrorKind::OutOfRangeContribution, "contribution " + std::to_string(g) + " outside [0, 20]");
        sum += g;
    }
    if (own < 0 || own > endowment)
        throw Error(ErrorKind::OutOfRangeContribution, "contribution " + std::to_string(own) + " outside [0, 20]");
    if (std::find(all_contributions.begin(), all_contributions.end(), own) == all_contributions.end())
        throw Error(ErrorKind::InvalidConfig, "own contribution must be part of the group's contributions");
    return static_cast<double>(5L * endowment - 5L * own + 2L * sum) / 5.0;
}

std::string_view to_string(Archetype a) noexcept {
    switch (a) {
    case Archetype::conditional_cooperator: return "conditional_cooperator";
    case Archetype::free_rider: return "free_rider";
    case Archetype::triangle: return "triangle";
    case Archetype::noisy: return "noisy";
    }
    return "unknown";
}

int StrategyArchetype::contribute(double belief, double noise) const {
    switch (kind) {
    case Archetype::conditional_cooperator: return clamp_tokens(cooperator_base + param * belief + noise);
    case Archetype::free_rider: return 0;
    case Archetype::triangle: {
        const double rise = belief <= param ? belief : param * (endowment - belief) / (endowment - param);
        return clamp_tokens(rise + noise);
    }
    case Archetype::noisy: return clamp_tokens(endowment / 2.0 + param * noise);
    }
    return 0;
}

void validate(const GameConfig& cfg) {
    double total = 0.0;
    for (double s : cfg.mix.shares) {
        if (!(s >= 0.0)) throw Error(ErrorKind::InvalidMix, "archetype shares must be non-negative");
        total += s;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorKind::InvalidMix, "archetype shares must sum to 1");
    if (cfg.n_players < 8 || cfg.n_players % group_size != 0)
        throw Error(ErrorKind::InvalidConfig, "players must be a multiple of 4 and at least 8");
    if (cfg.n_rounds < 2) throw Error(ErrorKind::InvalidConfig, "at least 2 rounds are needed");
    if (!(cfg.drift_rate >= 0.0 && cfg.drift_rate <= 1.0))
        throw Error(ErrorKind::InvalidConfig, "drift_rate must lie in [0, 1]");
    if (!(cfg.decay >= 0.0)) throw Error(ErrorKind::InvalidConfig, "decay must be non-negative");
    if (!(cfg.belief_weight > 0.0 && cfg.belief_weight <= 1.0))
        throw Error(ErrorKind::InvalidConfig, "belief_weight must lie in (0, 1]");
}

SimulatedGame simulate(const GameConfig& cfg) {
    validate(cfg);
    const std::size_t n = cfg.n_players;
    const std::size_t rounds = cfg.n_rounds;
    Rng rng(cfg.seed);

    struct Player {
        std::size_t kind = 0;
        std::array<double, 4> params{};
        double belief = 0.0;
    };
    std::vector<Player> players(n);
    for (auto& p : players) {
        p.kind = pick(cfg.mix, rng.uniform());
        p.params[0] = 0.6 + 0.4 * rng.uniform(); // cooperator slope
        p.params[2] = 8.0 + 4.0 * rng.uniform(); // triangle peak
        p.params[3] = 2.0 + 2.0 * rng.uniform(); // noise scale
        p.belief = std::clamp(10.0 + 3.0 * rng.normal(), 0.0, static_cast<double>(endowment));
    }

    std::vector<std::vector<Archetype>> archetypes;
    std::vector<std::vector<int>> contributions;
    std::vector<std::vector<double>> payoffs;
    std::vector<std::vector<std::size_t>> groups;
    std::vector<double> values(n * rounds * 2);
    std::vector<std::size_t> order(n);
    std::vector<int> contribution(n);
    std::vector<std::size_t> group_of(n);
    std::vector<int> prev(n);
    std::vector<std::size_t> prev_order(n);
    const std::size_t total_rounds = cfg.burn_in_rounds + rounds;
    for (std::size_t played = 0; played < total_rounds; ++played) {
        const bool recorded = played >= cfg.burn_in_rounds;
        const std::size_t r = recorded ? played - cfg.burn_in_rounds : 0;
        if (played > 0) {
            for (auto& p : players) {
                const double u_switch = rng.uniform();
                const double u_kind = rng.uniform();
                if (recorded && r > 0 && u_switch < cfg.drift_rate) p.kind = pick(cfg.mix, u_kind, p.kind);
            }
            // belief moves toward the other three members' mean in the previous round
            for (std::size_t g = 0; g < n; g += group_size) {
                int sum = 0;
                for (std::size_t m = 0; m < group_size; ++m) sum += prev[prev_order[g + m]];
                for (std::size_t m = 0; m < group_size; ++m) {
                    const std::size_t who = prev_order[g + m];
                    const double observed = static_cast<double>(sum - prev[who]) / 3.0;
                    players[who].belief += cfg.belief_weight * (observed - players[who].belief);
                }
            }
        }
        std::iota(order.begin(), order.end(), 0);
        for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[static_cast<std::size_t>(rng.below(i + 1))]);

        std::vector<Archetype> kinds(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = players[i];
            kinds[i] = all_archetypes[p.kind];
            const double noise = rng.normal();
            const StrategyArchetype strategy{kinds[i], p.params[p.kind]};
            contribution[i] = strategy.contribute(p.belief, noise);
            if (cfg.decay > 0.0) contribution[i] = clamp_tokens(contribution[i] - cfg.decay * static_cast<double>(r));
        }
        prev = contribution;
        prev_order = order;
        if (!recorded) continue;
        for (std::size_t i = 0; i < n; ++i) {
            values[(i * rounds + r) * 2] = contribution[i];
            values[(i * rounds + r) * 2 + 1] = players[i].belief;
        }

        std::vector<double> gains(n);
        for (std::size_t g = 0; g < n; g += group_size) {
            std::array<int, group_size> members{};
            for (std::size_t m = 0; m < group_size; ++m) members[m] = contribution[order[g + m]];
            [[maybe_unused]] double group_total = 0.0;
            for (std::size_t m = 0; m < group_size; ++m) {
                gains[order[g + m]] = payoff(members[m], members);
                group_total += gains[order[g + m]];
            }
            assert(std::abs(group_total - (80.0 + 0.6 * (members[0] + members[1] + members[2] + members[3]))) < 1e-9);
        }
        archetypes.push_back(std::move(kinds));
        contributions.push_back(contribution);
        payoffs.push_back(std::move(gains));
        groups.push_back(order);
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ids.push_back(subject_id(i, n));
    std::vector<TimeLabel> periods(rounds);
    std::iota(periods.begin(), periods.end(), TimeLabel{1});
    return SimulatedGame{
        TemporalDataset(std::move(ids), std::move(periods), {"contribution", "belief"}, std::move(values)),
        std::move(archetypes), std::move(contributions), std::move(payoffs), std::move(groups)};
}

} // namespace driftmeter::game
