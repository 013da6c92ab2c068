use rand::Rng;
use serde::{Deserialize, Serialize};

use super::state::{Pos, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PrimitiveAction {
    MoveN,
    MoveS,
    MoveE,
    MoveW,
    Attack,
    Eat,
    PickUp,
    Craft,
    Wait,
}

impl PrimitiveAction {
    /// Fixed enumeration order; greedy ties resolve to the earliest entry.
    pub const ALL: [PrimitiveAction; 9] = [
        PrimitiveAction::MoveN,
        PrimitiveAction::MoveS,
        PrimitiveAction::MoveE,
        PrimitiveAction::MoveW,
        PrimitiveAction::Attack,
        PrimitiveAction::Eat,
        PrimitiveAction::PickUp,
        PrimitiveAction::Craft,
        PrimitiveAction::Wait,
    ];

    pub const MOVES: [PrimitiveAction; 4] =
        [PrimitiveAction::MoveN, PrimitiveAction::MoveS, PrimitiveAction::MoveE, PrimitiveAction::MoveW];

    pub fn delta(self) -> Option<(i32, i32)> {
        match self {
            PrimitiveAction::MoveN => Some((0, -1)),
            PrimitiveAction::MoveS => Some((0, 1)),
            PrimitiveAction::MoveE => Some((1, 0)),
            PrimitiveAction::MoveW => Some((-1, 0)),
            _ => None,
        }
    }
}

/// One transition: the agent acts, then the cow and hostile move, then fire
/// burns, then time advances. Invalid actions are no-ops.
pub fn step<R: Rng + ?Sized>(state: &WorldState, action: PrimitiveAction, rng: &mut R) -> WorldState {
    let mut s = state.clone();
    if s.agent.alive {
        agent_acts(&mut s, action, rng);
        cow_wanders(&mut s, rng);
        hostile_acts(&mut s);
        if s.is_fire(s.agent.pos) {
            let dmg = s.rules.fire_damage;
            hurt_agent(&mut s, dmg);
        }
    }
    s.t += 1;
    s
}

fn hurt_agent(s: &mut WorldState, dmg: u32) {
    s.agent.hp = s.agent.hp.saturating_sub(dmg);
    s.agent.alive = s.agent.hp > 0;
}

fn agent_acts<R: Rng + ?Sized>(s: &mut WorldState, action: PrimitiveAction, rng: &mut R) {
    let me = s.agent.pos;
    match action {
        PrimitiveAction::MoveN | PrimitiveAction::MoveS | PrimitiveAction::MoveE | PrimitiveAction::MoveW => {
            let (dx, dy) = action.delta().expect("move has a delta");
            let to = me.offset(dx, dy);
            if s.in_bounds(to) && !s.occupied(to) {
                s.agent.pos = to;
            }
        }
        PrimitiveAction::Attack => {
            let dmg = if s.inventory.sword { s.rules.sword_damage } else { s.rules.unarmed_damage };
            if s.hostile.alive && s.hostile.pos.chebyshev(me) <= 1 {
                s.hostile.hp = s.hostile.hp.saturating_sub(dmg);
                if s.hostile.hp == 0 {
                    s.hostile.alive = false;
                    s.hostile.aggro = false;
                }
            } else if s.cow.alive && s.cow.pos.chebyshev(me) <= 1 {
                s.cow.hp = s.cow.hp.saturating_sub(dmg);
                if s.cow.hp == 0 {
                    s.cow.alive = false;
                    s.inventory.food += 1;
                }
            }
            if s.inventory.sword && rng.gen_bool(s.rules.sword_break_prob) {
                s.inventory.sword = false;
            }
        }
        PrimitiveAction::Eat => {
            if s.inventory.food > 0 {
                s.inventory.food -= 1;
                s.agent.hungry = false;
            }
        }
        PrimitiveAction::PickUp => {
            if s.apple.present && s.apple.pos.chebyshev(me) <= 1 {
                s.apple.present = false;
                s.inventory.food += 1;
            }
        }
        PrimitiveAction::Craft => {
            if s.inventory.materials && s.crafting_table.chebyshev(me) <= 1 {
                s.inventory.materials = false;
                s.inventory.sword = true;
            }
        }
        PrimitiveAction::Wait => {}
    }
}

fn cow_wanders<R: Rng + ?Sized>(s: &mut WorldState, rng: &mut R) {
    if !s.cow.alive || s.rules.cow_move_prob <= 0.0 || !rng.gen_bool(s.rules.cow_move_prob) {
        return;
    }
    let dir = PrimitiveAction::MOVES[rng.gen_range(0..4)];
    let (dx, dy) = dir.delta().expect("move has a delta");
    let to = s.cow.pos.offset(dx, dy);
    if s.in_bounds(to) && s.pasture.contains(to) && !s.is_fire(to) && !s.occupied(to) {
        s.cow.pos = to;
    }
}

fn hostile_acts(s: &mut WorldState) {
    if !s.hostile.alive || !s.agent.alive {
        return;
    }
    let d = s.hostile.pos.chebyshev(s.agent.pos);
    if !s.hostile.aggro && d <= s.rules.aggro_radius {
        s.hostile.aggro = true;
    } else if s.hostile.aggro && d > s.rules.deaggro_radius {
        s.hostile.aggro = false;
    }
    if !s.hostile.aggro {
        return;
    }
    if d <= 1 {
        hurt_agent(s, s.rules.hostile_damage);
        return;
    }
    // Greedy chase around fire.
    let target = s.agent.pos;
    let key = |p: Pos| (p.chebyshev(target), p.manhattan(target));
    let here = key(s.hostile.pos);
    let best = PrimitiveAction::MOVES
        .iter()
        .filter_map(|m| m.delta())
        .map(|(dx, dy)| s.hostile.pos.offset(dx, dy))
        .filter(|&p| s.in_bounds(p) && !s.occupied(p) && !s.is_fire(p))
        .min_by_key(|&p| key(p));
    if let Some(p) = best {
        if key(p) < here {
            s.hostile.pos = p;
        }
    }
}
