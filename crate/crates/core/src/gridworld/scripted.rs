//! Hand-written controllers for every action in the shipped tree.

use super::dynamics::PrimitiveAction;
use super::state::{Pos, WorldState};
use super::GridError;
use crate::names::normalize;

pub const SCRIPTED_ACTIONS: [&str; 8] = [
    "Escape from fire",
    "Defeat hostile",
    "Eat",
    "Pick Apple",
    "Kill Cow",
    "Craft sword",
    "Chase cow",
    "Search for cow",
];

pub fn scripted_policy(action: &str, s: &WorldState) -> Result<PrimitiveAction, GridError> {
    Ok(match normalize(action).as_str() {
        "escape from fire" => escape_fire(s),
        "defeat hostile" => {
            if !s.hostile.alive {
                PrimitiveAction::Wait
            } else if s.hostile.pos.chebyshev(s.agent.pos) <= 1 {
                PrimitiveAction::Attack
            } else {
                approach(s, s.hostile.pos)
            }
        }
        "chase cow" => {
            if s.cow.alive && s.cow.pos.chebyshev(s.agent.pos) > s.rules.close_radius {
                approach(s, s.cow.pos)
            } else {
                PrimitiveAction::Wait
            }
        }
        "search for cow" => approach(s, sweep_waypoint(s)),
        "kill cow" => PrimitiveAction::Attack,
        "eat" => PrimitiveAction::Eat,
        "pick apple" => PrimitiveAction::PickUp,
        "craft sword" => PrimitiveAction::Craft,
        _ => return Err(GridError::UnknownAction(action.to_string())),
    })
}

/// Step to the free non-fire neighbour with the fewest burning cells around it.
fn escape_fire(s: &WorldState) -> PrimitiveAction {
    PrimitiveAction::MOVES
        .iter()
        .filter_map(|&m| {
            let (dx, dy) = m.delta()?;
            let to = s.agent.pos.offset(dx, dy);
            (s.in_bounds(to) && !s.occupied(to) && !s.is_fire(to)).then(|| (s.fire_around(to), m))
        })
        .min_by_key(|&(n, _)| n)
        .map(|(_, m)| m)
        .unwrap_or(PrimitiveAction::Wait)
}

/// Greedy step along the longer axis first, falling back to the other axis
/// when the cell is blocked. Oblivious to fire and hostiles.
pub fn approach(s: &WorldState, target: Pos) -> PrimitiveAction {
    let me = s.agent.pos;
    let (dx, dy) = (target.x - me.x, target.y - me.y);
    let horizontal = match dx.signum() {
        1 => Some(PrimitiveAction::MoveE),
        -1 => Some(PrimitiveAction::MoveW),
        _ => None,
    };
    let vertical = match dy.signum() {
        1 => Some(PrimitiveAction::MoveS),
        -1 => Some(PrimitiveAction::MoveN),
        _ => None,
    };
    let order = if dx.abs() >= dy.abs() { [horizontal, vertical] } else { [vertical, horizontal] };
    order
        .into_iter()
        .flatten()
        .find(|m| {
            let (mx, my) = m.delta().expect("move has a delta");
            let to = me.offset(mx, my);
            s.in_bounds(to) && !s.occupied(to)
        })
        .unwrap_or(PrimitiveAction::Wait)
}

/// Corners of squares growing around the grid centre, visited in turn as
/// time advances.
fn sweep_waypoint(s: &WorldState) -> Pos {
    let (w, h) = (s.rules.width, s.rules.height);
    let c = Pos::new(w / 2, h / 2);
    let max_r = (w.max(h) / 2).max(1);
    let mut waypoints = Vec::new();
    for r in 1..=max_r {
        for (sx, sy) in [(-1, -1), (1, -1), (1, 1), (-1, 1)] {
            waypoints.push(Pos::new((c.x + sx * r).clamp(0, w - 1), (c.y + sy * r).clamp(0, h - 1)));
        }
    }
    let leg = (w.max(h) / 2).max(1) as u64;
    waypoints[((s.t / leg) as usize) % waypoints.len()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gridworld::{make_scenario, GridConfig};

    fn base() -> WorldState {
        let mut s = make_scenario(&GridConfig::open_field(12), 0, 0).unwrap();
        s.agent.pos = Pos::new(5, 5);
        s
    }

    #[test]
    fn chase_moves_toward_cow() {
        let mut s = base();
        s.cow.pos = Pos::new(9, 5);
        assert_eq!(scripted_policy("Chase cow", &s).unwrap(), PrimitiveAction::MoveE);
    }

    #[test]
    fn kill_cow_attacks() {
        let mut s = base();
        s.cow.pos = Pos::new(6, 5);
        assert_eq!(scripted_policy("Kill Cow", &s).unwrap(), PrimitiveAction::Attack);
    }

    #[test]
    fn escape_takes_the_only_way_out() {
        let mut s = base();
        s.fire = vec![Pos::new(4, 5), Pos::new(5, 5), Pos::new(5, 6), Pos::new(6, 5)];
        s.fire.sort();
        assert_eq!(scripted_policy("Escape from fire", &s).unwrap(), PrimitiveAction::MoveN);
    }

    #[test]
    fn every_listed_action_has_a_policy() {
        let s = base();
        for a in SCRIPTED_ACTIONS {
            scripted_policy(a, &s).unwrap();
        }
        assert!(matches!(scripted_policy("Dance", &s), Err(GridError::UnknownAction(_))));
    }

    #[test]
    fn search_is_deterministic() {
        let s = base();
        assert_eq!(scripted_policy("Search for cow", &s).unwrap(), scripted_policy("Search for cow", &s).unwrap());
    }
}
