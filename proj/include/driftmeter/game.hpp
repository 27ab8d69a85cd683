#pragma once

#include "driftmeter/dataset.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace driftmeter::game {

inline constexpr int endowment = 20;
inline constexpr std::size_t group_size = 4;

/// Tokens a player ends the round with: 20 - own + 0.4 * (sum of the group's
/// contributions, own included). Evaluated as (100 - 5 own + 2 sum) / 5 so
/// integer inputs give correctly rounded results. Throws
/// OutOfRangeContribution for a contribution outside [0, 20], InvalidConfig
/// when the group is not 4 players or `own` is not one of them.
double payoff(int own, std::span<const int> all_contributions);

enum class Archetype { conditional_cooperator, free_rider, triangle, noisy };

inline constexpr std::array<Archetype, 4> all_archetypes = {Archetype::conditional_cooperator, Archetype::free_rider,
                                                            Archetype::triangle, Archetype::noisy};

std::string_view to_string(Archetype a) noexcept;

/// A behavioural type with its kind-specific parameter: slope for a
/// conditional cooperator (who gives 4 tokens plus slope times belief), peak belief for a triangle contributor, noise
/// scale for a noisy player, unused for a free rider.
struct StrategyArchetype {
    Archetype kind = Archetype::free_rider;
    double param = 0.0;

    /// Contribution for a belief about the others' mean contribution.
    /// `noise` is a standard normal draw; the result is clamped to [0, 20].
    int contribute(double belief, double noise) const;
};

/// Population shares, indexed like all_archetypes.
struct ArchetypeMix {
    std::array<double, 4> shares = {0.5, 0.25, 0.15, 0.10};
};

struct GameConfig {
    std::size_t n_players = 140;
    std::size_t n_rounds = 10;
    ArchetypeMix mix;
    double drift_rate = 0.0; ///< per-player, per-round probability of switching archetype
    double decay = 0.0;      ///< tokens removed from every contribution per elapsed round
    std::size_t burn_in_rounds = 20; ///< unrecorded rounds played first so beliefs settle
    double belief_weight = 0.3;      ///< share of the newly observed group mean taken into the belief
    std::uint64_t seed = 0;
};

/// Throws InvalidMix for negative shares or shares not summing to 1, and
/// InvalidConfig for a player count below 8 or not a multiple of 4, fewer
/// than 2 rounds, drift_rate outside [0, 1], a negative decay or a
/// belief_weight outside (0, 1].
void validate(const GameConfig& cfg);

struct SimulatedGame {
    TemporalDataset dataset; ///< features: contribution, belief; ids subject001...; periods 1..n
    std::vector<std::vector<Archetype>> archetypes; ///< [round][player]
    std::vector<std::vector<int>> contributions;    ///< [round][player]
    std::vector<std::vector<double>> payoffs;       ///< [round][player]
    std::vector<std::vector<std::size_t>> groups;   ///< [round] player order; consecutive fours form groups
};

/// Repeated public goods game with random rematching into groups of four.
///
/// burn_in_rounds are played before the first recorded round; archetypes do
/// not switch during burn-in or before the second recorded round.
///
/// Setup draws per player, in order: one uniform for the archetype, one
/// uniform per archetype parameter (cooperator slope, triangle peak, noise
/// scale) and one normal for the initial belief. Each played round then
/// draws, per player, two uniforms (switch test, replacement archetype) from
/// the second played round on, a Fisher-Yates shuffle for the groups, and one
/// normal per player for contribution noise. Draws are made whether or not
/// they are used, so runs that differ only in drift_rate share their noise.
///
/// After each round a player's belief moves toward the mean contribution of
/// the other three members of their group:
/// belief += belief_weight * (observed - belief).
SimulatedGame simulate(const GameConfig& cfg);

} // namespace driftmeter::game
