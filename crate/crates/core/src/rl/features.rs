use serde::{Deserialize, Serialize};

use crate::gridworld::{Pos, PrimitiveAction, WorldState};
use crate::names::normalize;

/// Bumped whenever an encoding changes; stored Q-tables must match.
pub const CODEC_VERSION: u32 = 1;

/// A discrete feature tuple; unused slots are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Features(pub [i8; 8]);

/// Offsets of far or absent objects.
const GONE: i8 = 5;
const NO_FIRE: i8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureCodec {
    ChaseCow,
    DefeatHostile,
}

const CHASE_ACTIONS: [PrimitiveAction; 5] = [
    PrimitiveAction::MoveN,
    PrimitiveAction::MoveS,
    PrimitiveAction::MoveE,
    PrimitiveAction::MoveW,
    PrimitiveAction::Wait,
];

const DEFEAT_ACTIONS: [PrimitiveAction; 6] = [
    PrimitiveAction::MoveN,
    PrimitiveAction::MoveS,
    PrimitiveAction::MoveE,
    PrimitiveAction::MoveW,
    PrimitiveAction::Attack,
    PrimitiveAction::Wait,
];

impl FeatureCodec {
    pub fn for_action(name: &str) -> Option<Self> {
        match normalize(name).as_str() {
            "chase cow" => Some(FeatureCodec::ChaseCow),
            "defeat hostile" => Some(FeatureCodec::DefeatHostile),
            _ => None,
        }
    }

    /// Primitive actions the learned policy chooses from, in tie-break order.
    pub fn actions(self) -> &'static [PrimitiveAction] {
        match self {
            FeatureCodec::ChaseCow => &CHASE_ACTIONS,
            FeatureCodec::DefeatHostile => &DEFEAT_ACTIONS,
        }
    }

    pub fn encode(self, s: &WorldState) -> Features {
        let me = s.agent.pos;
        let hostile = offset(me, s.hostile.alive.then_some(s.hostile.pos), 4);
        let fire = fire_offset(s, me);
        let mut f = [0i8; 8];
        match self {
            FeatureCodec::ChaseCow => {
                let cow = offset(me, s.cow.alive.then_some(s.cow.pos), 4);
                f[..7].copy_from_slice(&[cow.0, cow.1, hostile.0, hostile.1, fire.0, fire.1, s.inventory.sword as i8]);
            }
            FeatureCodec::DefeatHostile => {
                let hp = match s.hostile.hp {
                    0..=2 => 0,
                    3..=4 => 1,
                    _ => 2,
                };
                f[..5].copy_from_slice(&[hostile.0, hostile.1, fire.0, fire.1, hp]);
            }
        }
        Features(f)
    }
}

fn offset(me: Pos, target: Option<Pos>, clip: i32) -> (i8, i8) {
    match target {
        Some(p) => ((p.x - me.x).clamp(-clip, clip) as i8, (p.y - me.y).clamp(-clip, clip) as i8),
        None => (GONE, GONE),
    }
}

/// Nearest fire within two cells, or a sentinel.
fn fire_offset(s: &WorldState, me: Pos) -> (i8, i8) {
    match s.nearest_fire(me) {
        Some(p) if p.chebyshev(me) <= 2 => ((p.x - me.x) as i8, (p.y - me.y) as i8),
        _ => (NO_FIRE, NO_FIRE),
    }
}
