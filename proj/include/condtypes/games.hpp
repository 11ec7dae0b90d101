#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "condtypes/cps.hpp"
#include "condtypes/space.hpp"
#include "condtypes/type_structure.hpp"

namespace condtypes {

// Finite extensive form with simultaneous moves: every non-terminal history
// carries one action set per player (singletons for the inactive), histories
// are sequences of action profiles, and information sets partition each
// player's active histories. Declared singleton-action information sets are
// allowed; histories left uncovered play their forced action implicitly.
struct game_data {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> payoff_types;  // per player, nonempty

  struct history_entry {
    std::vector<std::vector<std::string>> moves;  // action profiles, root = empty
    // per player action lists; absent entirely for terminal histories
    std::optional<std::vector<std::vector<std::string>>> actions;
  };
  std::vector<history_entry> histories;

  struct info_set {
    std::string label;
    std::vector<uint32_t> histories;
  };
  std::vector<std::vector<info_set>> info_sets;  // per player

  // (type-strategy profile key, payoff); keys are validated but payoffs are
  // otherwise inert data. Key syntax: "(th1,...,thn;strat1|...|stratn)" with
  // strategies rendered as their action labels joined by '.' ("-" when a
  // player has no information sets).
  std::vector<std::vector<std::pair<std::string, rat>>> utilities;  // per player
};

struct game_violation {
  std::string code;
  std::string detail;
};

std::vector<game_violation> validate_game(const game_data& g);

class game {
 public:
  // Throws condtypes::error(domain) carrying the first violation.
  static game create(game_data d);

  const game_data& data() const { return data_; }
  size_t player_count() const { return data_.players.size(); }
  size_t history_count() const { return data_.histories.size(); }
  bool is_terminal(uint32_t h) const { return !data_.histories[h].actions.has_value(); }
  uint32_t root() const { return root_; }

  // Declared info set covering (player, history), if any.
  std::optional<uint32_t> covering_info_set(uint32_t player, uint32_t h) const;

  size_t strategy_count(uint32_t player) const;
  // Action index per declared info set, mixed-radix enumeration (first info
  // set outermost).
  std::vector<uint32_t> strategy(uint32_t player, uint64_t index) const;
  std::string strategy_label(uint32_t player, uint64_t index) const;

  uint64_t profile_count() const;  // product of strategy counts

  // Histories visited when everyone follows the profile, root to terminal.
  std::vector<uint32_t> play(const std::vector<uint64_t>& profile) const;

  // All profiles (flattened, player 0 outermost) whose play reaches some
  // history of the info set; computed from path constraints, not play-out.
  std::vector<uint64_t> allowing_profiles(uint32_t player, uint32_t info_set) const;

  // Coordinate slices of a profile set.
  std::vector<uint64_t> project_player(const std::vector<uint64_t>& profiles,
                                       uint32_t player) const;
  std::vector<uint64_t> project_opponents(const std::vector<uint64_t>& profiles,
                                          uint32_t player) const;

  uint64_t opponent_profile_count(uint32_t player) const;

 private:
  game() = default;
  game_data data_;
  uint32_t root_ = 0;
  // child_[parent] maps encoded action profiles to successor history indices
  std::vector<std::vector<uint32_t>> child_;
  std::vector<std::vector<std::optional<uint32_t>>> covering_;  // [player][history]
  std::vector<uint64_t> strategy_counts_;

  uint64_t encode_profile_at(uint32_t h, const std::vector<uint32_t>& action_idx) const;
  friend struct game_access;
};

// One conditioning event of a player: the opponents' slice of the profiles
// allowing some information set (or the ex-ante event "@root"), tagged with
// every source that produced the same slice. The label is the
// lexicographically least source.
struct cond_event {
  std::string label;
  std::vector<std::string> sources;
  std::vector<uint64_t> opp_profiles;  // sorted S_{-i}(h), flattened
};

// The player's family in source order, ex-ante event first, set-equal
// duplicates merged. An unreachable information set is a domain error naming
// it.
std::vector<cond_event> conditioning_family(const game& g, uint32_t player);

// Conditional space over the type-strategy profiles: atoms enumerate
// Pi_i (Theta_i x S_i) (player-major, payoff type outer, strategy inner);
// the event family is the disjoint union of the players' conditioning
// families with labels "<player>/<event label>". Families of different
// players stay separate even when their member sets coincide.
struct game_space_result {
  space_ptr space;
  product_layout layout;  // factors "<p>.theta", "<p>.strategy" per player
  std::vector<std::vector<cond_event>> families;
};
game_space_result game_space(const game& g);

// Greatest belief-closed substructure inside the per-agent type restriction:
// prunes types whose beliefs charge excluded opponents until stable. The
// result can be empty (reported, not an error); otherwise the substructure
// and its inclusion are returned.
struct closure_result {
  std::vector<std::vector<uint32_t>> kept;  // sorted type indices per agent
  std::optional<type_structure> sub;
  std::optional<structure_morphism> inclusion;

  bool empty() const { return !sub.has_value(); }
};
closure_result belief_closed_substructure(const type_structure& s,
                                          std::vector<std::vector<uint32_t>> restriction);

// Conditioning by coalitions: atoms (member tag, payoff-type profile,
// carrier element), one conditioning event per nonempty coalition in
// ascending bitmask order. Player counts beyond max_players are rejected
// (the event family is exponential in them).
struct coalition_layout {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> payoff_types;
  std::vector<std::string> carrier;
  space_ptr space;
  product_layout layout;  // "tag", "theta.<p>"..., "carrier"
  std::vector<std::vector<uint32_t>> coalition_members;  // per event
};
coalition_layout coalition_space(std::vector<std::string> players,
                                 std::vector<std::vector<std::string>> payoff_types,
                                 std::vector<std::string> carrier, size_t max_players = 10);

// The carve-out predicate: conditional on each coalition event, the tag
// marginal must sit entirely on the coalition and the own-payoff-type
// marginal must be a point mass at one type-independent theta per type.
struct coalition_witness {
  uint32_t type;
  uint32_t coalition_event;
  std::string reason;
};
struct coalition_check_result {
  bool ok = false;
  std::optional<coalition_witness> witness;
};
coalition_check_result coalition_dirac_check(const coalition_layout& cl, uint32_t player,
                                             const std::vector<cps>& beliefs_per_type);

// Own-type-inclusive encoding: agent i's beliefs range over
// base x (T_1 x ... x T_n) including the own coordinate.
struct inclusive_structure {
  space_ptr base;
  std::vector<type_structure::agent> agents;
  std::vector<lifted_space> spaces;        // per agent
  std::vector<std::vector<cps>> beliefs;   // [agent][type]
};

// Pairs every belief with the own-type Dirac.
inclusive_structure lift_to_inclusive(const type_structure& s);

// True iff every agent is certain of the own coordinate: the own-type
// marginal of each conditional is the point mass at the type itself.
struct harsanyi_result {
  bool ok = false;
  std::optional<std::tuple<uint32_t, uint32_t, uint32_t>> witness;  // agent, type, event
};
harsanyi_result harsanyi_check(const inclusive_structure& s);

}  // namespace condtypes
